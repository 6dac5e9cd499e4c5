//! Exact computation of the signaling dimension of polytopic GPT systems.
//!
//! A system of a generalized probabilistic theory is described by a convex
//! set of admissible states; when that set is a rational polytope, every
//! quantity of interest here can be computed exactly. This crate provides
//! the full pipeline:
//!
//! * [`exact`] — arbitrary-precision rational scalars, vectors, and
//!   matrices, with division-free integer kernels (Gram matrices,
//!   fraction-free rank).
//! * [`lp`] — exact rational linear programming with certificates.
//! * [`polytope`] — V/H representations, the rational double description
//!   method, central symmetry, and the Minkowski measure of asymmetry.
//! * [`symmetry`] — branch-and-bound enumeration of all label permutations
//!   preserving the Gram matrix of a point set, congruence testing, and
//!   orbit computation.
//! * [`gpt`] — homogenized state spaces, the effect polytope under the
//!   no-restriction hypothesis, extremal measurements, and correlation
//!   matrices.
//! * [`sigdim`] — central-symmetry bounds, the two-dimensional closed form,
//!   support-constrained classical vertices, the LP simulability test, and
//!   the exact signaling-dimension driver.
//! * [`solids`] / [`report`] — built-in rational solid generators and
//!   table-style reports over the full pipeline.
//!
//! All arithmetic is exact; no tolerance parameter exists anywhere.

pub mod error;
pub mod exact;
pub mod gpt;
pub mod json;
pub mod lp;
pub mod polytope;
pub mod report;
pub mod sigdim;
pub mod solids;
pub mod symmetry;

pub use error::{Error, Result};
pub use exact::Rational;
