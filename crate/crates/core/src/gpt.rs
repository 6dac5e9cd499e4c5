//! The GPT layer: homogenized state spaces, the effect polytope under the
//! no-restriction hypothesis, extremal measurements, correlation matrices,
//! and the action of state-space symmetries on effects.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, integerize, rank_of_points, rref, Rational};
use crate::polytope::{self, HRep, VRep};
use crate::symmetry::{orbits, Orbit, Permutation, SymmetryGroup};

/// Homogenized state space: extremal states `(1, x_i)` spanning the linear
/// space, with unit effect `u = (1, 0, ..., 0)` so `u . w_i = 1` for all i.
#[derive(Clone, Debug)]
pub struct StateSpace {
    vrep: VRep,
    states: Vec<Vec<Rational>>,
    unit: Vec<Rational>,
    aff_dim: usize,
}

impl StateSpace {
    pub fn states(&self) -> &[Vec<Rational>] {
        &self.states
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    /// Number of extremal states.
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn aff_dim(&self) -> usize {
        self.aff_dim
    }

    pub fn lin_dim(&self) -> usize {
        self.aff_dim + 1
    }

    /// The de-homogenized vertex set.
    pub fn vrep(&self) -> &VRep {
        &self.vrep
    }
}

/// Embeds polytope vertices as homogenized states.
///
/// The vertex set must be full-dimensional in its ambient space so that the
/// homogenized states span; re-embed lower-dimensional input in coordinates
/// of its affine hull first.
pub fn homogenize(v: &VRep) -> Result<StateSpace> {
    let aff_dim = polytope::affine_dim(v);
    if aff_dim != v.dim() {
        return Err(Error::Degenerate(format!(
            "vertex set spans affine dimension {aff_dim} inside ambient dimension {}; \
             re-embed it in coordinates of its affine hull",
            v.dim()
        )));
    }
    let states: Vec<Vec<Rational>> = v
        .vertices()
        .iter()
        .map(|x| {
            let mut s = Vec::with_capacity(x.len() + 1);
            s.push(Rational::one());
            s.extend(x.iter().cloned());
            s
        })
        .collect();
    let mut unit = vec![Rational::zero(); aff_dim + 1];
    unit[0] = Rational::one();
    Ok(StateSpace {
        vrep: v.clone(),
        states,
        unit,
        aff_dim,
    })
}

/// An extremal effect: a vertex of the effect polytope together with its
/// evaluation row `(e . w_1, ..., e . w_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Effect {
    pub vector: Vec<Rational>,
    pub row: Vec<Rational>,
}

/// All extremal effects of a state space, with the trivial ones (zero and
/// the unit) singled out and the ray effects marked.
#[derive(Clone, Debug)]
pub struct EffectSet {
    effects: Vec<Effect>,
    zero_index: usize,
    unit_index: usize,
    ray_indices: Vec<usize>,
}

impl EffectSet {
    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn zero_index(&self) -> usize {
        self.zero_index
    }

    pub fn unit_index(&self) -> usize {
        self.unit_index
    }

    /// Indices of the effects other than zero and the unit.
    pub fn nontrivial_indices(&self) -> Vec<usize> {
        (0..self.effects.len())
            .filter(|&i| i != self.zero_index && i != self.unit_index)
            .collect()
    }

    /// Indices of the effects lying on extreme rays of the cone of
    /// nonnegative functionals: the vertices whose vanishing states have
    /// rank `lin_dim - 1`. These are the building blocks of extremal
    /// measurements; vertices produced only by the upper caps are
    /// decomposable within the cone and never appear in one.
    pub fn ray_indices(&self) -> &[usize] {
        &self.ray_indices
    }
}

/// Exact vertices of the effect polytope `{e : 0 <= e . w_i <= 1}` under
/// the no-restriction hypothesis, via the double description method.
/// Always contains the zero effect and the unit effect.
pub fn extremal_effects(s: &StateSpace) -> Result<EffectSet> {
    let lin = s.lin_dim();
    let mut inequalities = Vec::with_capacity(2 * s.num_states());
    for w in s.states() {
        inequalities.push((w.iter().map(|x| -x.clone()).collect(), Rational::zero()));
        inequalities.push((w.clone(), Rational::one()));
    }
    let vertices = polytope::vertices_from_hrep(&HRep { inequalities })?;

    let zero_vec = vec![Rational::zero(); lin];
    let mut zero_index = None;
    let mut unit_index = None;
    let mut effects = Vec::with_capacity(vertices.len());
    let mut ray_indices = Vec::new();
    for (i, e) in vertices.iter().enumerate() {
        if *e == zero_vec {
            zero_index = Some(i);
        } else if e == &s.unit {
            unit_index = Some(i);
        }
        let row: Vec<Rational> = s.states().iter().map(|w| dot(e, w)).collect();
        let vanishing: Vec<Vec<Rational>> = row
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_zero())
            .map(|(j, _)| s.states()[j].clone())
            .collect();
        if !row.iter().all(Zero::is_zero) && rank_of_points(&vanishing) == lin - 1 {
            ray_indices.push(i);
        }
        effects.push(Effect {
            vector: e.clone(),
            row,
        });
    }
    match (zero_index, unit_index) {
        (Some(zero_index), Some(unit_index)) => Ok(EffectSet {
            effects,
            zero_index,
            unit_index,
            ray_indices,
        }),
        _ => Err(Error::Internal(
            "effect polytope must contain the zero and unit effects".into(),
        )),
    }
}

/// A measurement: effects `alpha_j * f_j` over distinct nontrivial extremal
/// effects `f_j`, stored as `(effect index, alpha_j)` sorted by index, with
/// `sum_j alpha_j f_j = u`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Measurement {
    outcomes: Vec<(usize, Rational)>,
}

impl Measurement {
    /// The trivial one-outcome measurement `{u}`.
    pub fn trivial(effects: &EffectSet) -> Self {
        Self {
            outcomes: vec![(effects.unit_index(), Rational::one())],
        }
    }

    pub fn num_outcomes(&self) -> usize {
        self.outcomes.len()
    }

    /// `(extremal effect index, coefficient)` pairs, ascending by index.
    pub fn outcomes(&self) -> &[(usize, Rational)] {
        &self.outcomes
    }

    /// Materializes the effect vectors `alpha_j * f_j`.
    pub fn effect_vectors(&self, effects: &EffectSet) -> Vec<Vec<Rational>> {
        self.outcomes
            .iter()
            .map(|(idx, alpha)| {
                effects.effects()[*idx]
                    .vector
                    .iter()
                    .map(|x| x * alpha)
                    .collect()
            })
            .collect()
    }
}

/// Enumerates all extremal measurements: subsets of ray effects that are
/// linearly independent and support a (then unique) strictly positive
/// solution of `sum alpha_j f_j = u`.
///
/// The search walks independent subsets in index order. Once the unit
/// effect enters the span of a subset, no proper superset can carry a
/// strictly positive coefficient vector (the unique extension pads with
/// zeros), so that whole subtree is cut.
pub fn extremal_measurements(s: &StateSpace, effects: &EffectSet) -> Result<Vec<Measurement>> {
    let nontrivial = effects.ray_indices().to_vec();
    let mut vectors: Vec<Vec<Rational>> = nontrivial
        .iter()
        .map(|&i| effects.effects()[i].vector.clone())
        .collect();
    vectors.push(s.unit.to_vec());
    let (ints, _) = integerize(&vectors);
    let (f_ints, u_int) = ints.split_at(nontrivial.len());
    let f_rows: Vec<Vec<Rational>> = f_ints
        .iter()
        .map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let u_row: Vec<Rational> = u_int[0]
        .iter()
        .map(|x| Rational::from_integer(x.clone()))
        .collect();

    let mut found = Vec::new();
    let mut search = MeasurementSearch {
        f_rows: &f_rows,
        u_row: &u_row,
        nontrivial: &nontrivial,
        found: &mut found,
    };
    let candidates: Vec<usize> = (0..f_rows.len()).collect();
    let u_start = u_row.clone();
    search.node(&mut Vec::new(), &mut Vec::new(), &u_start, &candidates)?;

    found.sort();
    found.sort_by_key(Measurement::num_outcomes);
    Ok(found)
}

struct MeasurementSearch<'a> {
    f_rows: &'a [Vec<Rational>],
    u_row: &'a [Rational],
    nontrivial: &'a [usize],
    found: &'a mut Vec<Measurement>,
}

impl MeasurementSearch<'_> {
    /// Reduces `v` against the echelon rows; returns the residual.
    fn reduce(echelon: &[(usize, Vec<Rational>)], v: &[Rational]) -> Vec<Rational> {
        let mut r = v.to_vec();
        for (pivot, row) in echelon {
            let factor = r[*pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                *x -= &factor * y;
            }
        }
        r
    }

    fn node(
        &mut self,
        chosen: &mut Vec<usize>,
        echelon: &mut Vec<(usize, Vec<Rational>)>,
        u_residual: &[Rational],
        candidates: &[usize],
    ) -> Result<()> {
        for (pos, &c) in candidates.iter().enumerate() {
            let mut residual = Self::reduce(echelon, &self.f_rows[c]);
            let Some(pivot) = residual.iter().position(|x| !x.is_zero()) else {
                // Dependent on the current span; stays dependent below.
                continue;
            };
            let inv = residual[pivot].clone().recip();
            for x in residual.iter_mut() {
                if !x.is_zero() {
                    *x = std::mem::replace(x, Rational::zero()) * &inv;
                }
            }
            let factor = u_residual[pivot].clone();
            let new_u: Vec<Rational> = u_residual
                .iter()
                .zip(&residual)
                .map(|(x, y)| x - &factor * y)
                .collect();

            chosen.push(c);
            echelon.push((pivot, residual));
            if new_u.iter().all(Zero::is_zero) {
                // The unit effect entered the span: solve, emit if strictly
                // positive, and cut the subtree either way.
                if chosen.len() >= 2 {
                    if let Some(alphas) = self.solve_coefficients(chosen)? {
                        let mut outcomes: Vec<(usize, Rational)> = chosen
                            .iter()
                            .zip(alphas)
                            .map(|(&i, a)| (self.nontrivial[i], a))
                            .collect();
                        outcomes.sort_by(|a, b| a.0.cmp(&b.0));
                        self.found.push(Measurement { outcomes });
                    }
                }
            } else {
                let remaining = &candidates[pos + 1..];
                if !remaining.is_empty() {
                    self.node(chosen, echelon, &new_u, remaining)?;
                }
            }
            echelon.pop();
            chosen.pop();
        }
        Ok(())
    }

    /// Unique coefficients of `u` over the chosen (independent) effects;
    /// `None` unless strictly positive.
    fn solve_coefficients(&self, chosen: &[usize]) -> Result<Option<Vec<Rational>>> {
        let dim = self.u_row.len();
        let k = chosen.len();
        // Augmented system over the effect columns.
        let rows: Vec<Vec<Rational>> = (0..dim)
            .map(|coord| {
                let mut row: Vec<Rational> = chosen
                    .iter()
                    .map(|&i| self.f_rows[i][coord].clone())
                    .collect();
                row.push(self.u_row[coord].clone());
                row
            })
            .collect();
        let (reduced, pivots) = rref(&rows);
        if pivots.len() != k || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Internal(
                "measurement coefficients must be uniquely solvable".into(),
            ));
        }
        let alphas: Vec<Rational> = reduced.iter().map(|r| r[k].clone()).collect();
        if alphas.iter().all(|a| a.is_positive()) {
            Ok(Some(alphas))
        } else {
            Ok(None)
        }
    }
}

/// The permutation of extremal effects induced by a state-space symmetry:
/// the unique `tau` with `row[tau(a)][sigma(i)] = row[a][i]` for all
/// effects `a` and states `i`.
pub fn induced_effect_action(effects: &EffectSet, sigma: &Permutation) -> Result<Permutation> {
    let index: HashMap<&[Rational], usize> = effects
        .effects()
        .iter()
        .enumerate()
        .map(|(i, e)| (e.row.as_slice(), i))
        .collect();
    let mut images = vec![0; effects.len()];
    for (a, e) in effects.effects().iter().enumerate() {
        let mut permuted = vec![Rational::zero(); e.row.len()];
        for (i, v) in e.row.iter().enumerate() {
            permuted[sigma.apply(i)] = v.clone();
        }
        let Some(&target) = index.get(permuted.as_slice()) else {
            return Err(Error::NotASymmetry(format!(
                "no effect matches the permuted evaluation row of effect {a}"
            )));
        };
        images[a] = target;
    }
    Permutation::from_images(images)
}

/// Orbit partition of the measurements under the symmetry group, acting on
/// effect indices through [`induced_effect_action`].
pub fn measurement_classes(
    effects: &EffectSet,
    measurements: &[Measurement],
    group: &SymmetryGroup,
) -> Result<Vec<Orbit<Measurement>>> {
    let mut taus = Vec::with_capacity(group.order());
    for sigma in group.elements() {
        taus.push(induced_effect_action(effects, sigma)?);
    }
    let tau_of: HashMap<&Permutation, usize> = group
        .elements()
        .iter()
        .enumerate()
        .map(|(i, g)| (g, i))
        .collect();
    orbits(group, measurements, |g, meas| {
        let tau = &taus[tau_of[g]];
        let mut outcomes: Vec<(usize, Rational)> = meas
            .outcomes()
            .iter()
            .map(|(idx, alpha)| (tau.apply(*idx), alpha.clone()))
            .collect();
        outcomes.sort_by(|a, b| a.0.cmp(&b.0));
        Measurement { outcomes }
    })
}

/// Exact correlation matrix `p[i][j] = w_i . e_j` between all states and
/// the effects of one measurement. Rows sum to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrelationMatrix {
    rows: Vec<Vec<Rational>>,
}

impl CorrelationMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let one = Rational::one();
        for row in &rows {
            let mut sum = Rational::zero();
            for v in row {
                if v.is_negative() || *v > one {
                    return Err(Error::Internal(
                        "correlation entries must lie in [0, 1]".into(),
                    ));
                }
                sum += v;
            }
            if sum != one {
                return Err(Error::Internal("correlation rows must sum to one".into()));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Per-row support: column indices with strictly positive probability.
    pub fn support(&self) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| v.is_positive())
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect()
    }
}

/// Correlation matrix of one measurement against every state.
pub fn correlation_matrix(
    s: &StateSpace,
    effects: &EffectSet,
    meas: &Measurement,
) -> Result<CorrelationMatrix> {
    let rows: Vec<Vec<Rational>> = (0..s.num_states())
        .map(|i| {
            meas.outcomes()
                .iter()
                .map(|(idx, alpha)| &effects.effects()[*idx].row[i] * alpha)
                .collect()
        })
        .collect();
    CorrelationMatrix::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use crate::symmetry::find_symmetries;

    fn pts(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    fn classical_bit() -> StateSpace {
        homogenize(&VRep::new(pts(&[&[0], &[1]])).unwrap()).unwrap()
    }

    fn octahedron() -> StateSpace {
        homogenize(
            &VRep::new(pts(&[
                &[1, 0, 0],
                &[-1, 0, 0],
                &[0, 1, 0],
                &[0, -1, 0],
                &[0, 0, 1],
                &[0, 0, -1],
            ]))
            .unwrap(),
        )
        .unwrap()
    }

    fn cube() -> StateSpace {
        let mut v = Vec::new();
        for sx in [1i64, -1] {
            for sy in [1i64, -1] {
                for sz in [1i64, -1] {
                    v.push(vec![rat(sx), rat(sy), rat(sz)]);
                }
            }
        }
        homogenize(&VRep::new(v).unwrap()).unwrap()
    }

    #[test]
    fn homogenization_basics() {
        let s = octahedron();
        assert_eq!(s.num_states(), 6);
        assert_eq!(s.aff_dim(), 3);
        assert_eq!(s.lin_dim(), 4);
        for w in s.states() {
            assert_eq!(dot(s.unit(), w), rat(1));
        }
        // Lower-dimensional embeddings are rejected.
        let planar = VRep::new(pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])).unwrap();
        assert!(homogenize(&planar).is_err());
    }

    #[test]
    fn classical_bit_effects() {
        let s = classical_bit();
        let effects = extremal_effects(&s).unwrap();
        assert_eq!(effects.len(), 4);
        assert_eq!(effects.nontrivial_indices().len(), 2);
        let meas = extremal_measurements(&s, &effects).unwrap();
        assert_eq!(meas.len(), 1);
        assert_eq!(meas[0].num_outcomes(), 2);
        // The single measurement perfectly distinguishes the two states.
        let p = correlation_matrix(&s, &effects, &meas[0]).unwrap();
        let mut rows = p.rows().to_vec();
        rows.sort();
        assert_eq!(rows, pts(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn cube_has_three_measurements() {
        let s = cube();
        let effects = extremal_effects(&s).unwrap();
        assert_eq!(effects.nontrivial_indices().len(), 6);
        assert_eq!(effects.ray_indices().len(), 6);
        let meas = extremal_measurements(&s, &effects).unwrap();
        assert_eq!(meas.len(), 3);
        assert!(meas.iter().all(|m| m.num_outcomes() == 2));
    }

    #[test]
    fn simplex_counts_only_ray_built_measurements() {
        // Classical trit: the effect polytope is a cube with six nontrivial
        // vertices, but only the three facet rays build measurements; the
        // cap vertices (sums of two rays) are decomposable in the cone.
        let s = homogenize(&VRep::new(pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap()).unwrap();
        let effects = extremal_effects(&s).unwrap();
        assert_eq!(effects.nontrivial_indices().len(), 6);
        assert_eq!(effects.ray_indices().len(), 3);
        let meas = extremal_measurements(&s, &effects).unwrap();
        assert_eq!(meas.len(), 1);
        assert_eq!(meas[0].num_outcomes(), 3);
    }

    #[test]
    fn octahedron_has_six_measurements_in_two_classes() {
        let s = octahedron();
        let effects = extremal_effects(&s).unwrap();
        assert_eq!(effects.nontrivial_indices().len(), 8);
        let meas = extremal_measurements(&s, &effects).unwrap();
        assert_eq!(meas.len(), 6);
        let counts: Vec<usize> = meas.iter().map(Measurement::num_outcomes).collect();
        assert_eq!(counts.iter().filter(|&&n| n == 2).count(), 4);
        assert_eq!(counts.iter().filter(|&&n| n == 4).count(), 2);

        let group = find_symmetries(s.states()).unwrap();
        assert_eq!(group.order(), 48);
        let classes = measurement_classes(&effects, &meas, &group).unwrap();
        assert_eq!(classes.len(), 2);
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, meas.len());
    }

    #[test]
    fn measurements_sum_to_unit_and_stay_in_range() {
        let s = octahedron();
        let effects = extremal_effects(&s).unwrap();
        for meas in extremal_measurements(&s, &effects).unwrap() {
            let vectors = meas.effect_vectors(&effects);
            let mut sum = vec![Rational::zero(); s.lin_dim()];
            for v in &vectors {
                for (acc, x) in sum.iter_mut().zip(v) {
                    *acc += x;
                }
            }
            assert_eq!(sum, s.unit().to_vec());
            for v in &vectors {
                for w in s.states() {
                    let val = dot(v, w);
                    assert!(!val.is_negative() && val <= rat(1));
                }
            }
        }
    }

    #[test]
    fn induced_action_is_a_group_action() {
        let s = octahedron();
        let effects = extremal_effects(&s).unwrap();
        let group = find_symmetries(s.states()).unwrap();
        let identity = Permutation::identity(s.num_states());
        assert!(induced_effect_action(&effects, &identity)
            .unwrap()
            .is_identity());
        let taus: HashMap<&Permutation, Permutation> = group
            .elements()
            .iter()
            .map(|g| (g, induced_effect_action(&effects, g).unwrap()))
            .collect();
        for g in group.elements() {
            // Trivial effects are fixed by every symmetry.
            assert_eq!(taus[g].apply(effects.zero_index()), effects.zero_index());
            assert_eq!(taus[g].apply(effects.unit_index()), effects.unit_index());
            for h in group.elements() {
                let gh = g.compose(h);
                assert_eq!(taus[&gh], taus[g].compose(&taus[h]));
            }
        }
    }

    #[test]
    fn trivial_measurement_correlation() {
        let s = classical_bit();
        let effects = extremal_effects(&s).unwrap();
        let trivial = Measurement::trivial(&effects);
        let p = correlation_matrix(&s, &effects, &trivial).unwrap();
        assert_eq!(p.num_cols(), 1);
        assert!(p.rows().iter().all(|r| r[0] == rat(1)));
    }

    #[test]
    fn correlation_rows_sum_to_one() {
        let s = octahedron();
        let effects = extremal_effects(&s).unwrap();
        for meas in extremal_measurements(&s, &effects).unwrap() {
            let p = correlation_matrix(&s, &effects, &meas).unwrap();
            assert_eq!(p.num_rows(), 6);
            for row in p.rows() {
                let sum: Rational = row.iter().fold(Rational::zero(), |a, b| a + b);
                assert_eq!(sum, rat(1));
            }
        }
    }

    #[test]
    fn correlation_validation_rejects_bad_rows() {
        assert!(CorrelationMatrix::new(vec![vec![ratio(1, 2), ratio(1, 3)]]).is_err());
        assert!(CorrelationMatrix::new(vec![vec![ratio(3, 2), ratio(-1, 2)]]).is_err());
        let ok = CorrelationMatrix::new(vec![vec![ratio(1, 2), ratio(1, 2)]]).unwrap();
        assert_eq!(ok.support(), vec![vec![0, 1]]);
    }
}
