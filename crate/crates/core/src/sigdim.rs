//! The signaling-dimension engine: central-symmetry bounds, the
//! two-dimensional closed form, support-constrained classical vertices,
//! the LP simulability test, and the exact driver.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::gpt::{
    correlation_matrix, extremal_effects, extremal_measurements, measurement_classes,
    CorrelationMatrix, EffectSet, Measurement, StateSpace,
};
use crate::polytope::{central_symmetry, extreme_points};
use crate::symmetry::find_symmetries;

/// Signaling-dimension bounds from central symmetry: a centrally symmetric
/// state space has `2 <= sig.dim <= aff.dim` (clamped so the upper bound
/// never drops below the lower), anything else `3 <= sig.dim <= lin.dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundsRecord {
    pub lower: usize,
    pub upper: usize,
    pub cs: bool,
}

pub fn bounds(s: &StateSpace) -> Result<BoundsRecord> {
    if s.aff_dim() == 0 {
        return Err(Error::Degenerate(
            "signaling dimension bounds require a non-point state space".into(),
        ));
    }
    let cs = central_symmetry(s.vrep()).is_some();
    let (lower, upper) = if cs {
        (2, s.aff_dim().max(2))
    } else {
        (3, s.lin_dim())
    };
    Ok(BoundsRecord { lower, upper, cs })
}

/// Closed form for two-dimensional state spaces: two if centrally
/// symmetric, three otherwise. No linear program is solved.
pub fn sigdim_2d(s: &StateSpace) -> Result<usize> {
    if s.aff_dim() != 2 {
        return Err(Error::Degenerate(format!(
            "two-dimensional closed form called on affine dimension {}",
            s.aff_dim()
        )));
    }
    Ok(if central_symmetry(s.vrep()).is_some() {
        2
    } else {
        3
    })
}

/// A deterministic strategy: row `i` answers column `assignment[i]`, with
/// at most `d` distinct answers and every answer inside the row's support.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassicalVertex {
    pub assignment: Vec<usize>,
}

impl ClassicalVertex {
    /// 0/1 matrix entry at `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> bool {
        self.assignment[row] == col
    }
}

/// Streaming enumeration of all support-constrained assignments with at
/// most `d` distinct columns in the image. Nothing is materialized unless
/// the caller collects.
pub struct ClassicalVertices {
    support: Vec<Vec<usize>>,
    d: usize,
    assignment: Vec<usize>,
    choice: Vec<usize>,
    counts: Vec<usize>,
    distinct: usize,
    done: bool,
}

/// All classical vertices compatible with the support of `p` and message
/// count `d`.
pub fn classical_vertices(p: &CorrelationMatrix, d: usize) -> ClassicalVertices {
    ClassicalVertices::new(p.support(), p.num_cols(), d)
}

impl ClassicalVertices {
    fn new(support: Vec<Vec<usize>>, num_cols: usize, d: usize) -> Self {
        let done = support.is_empty() || d == 0;
        Self {
            support,
            d,
            assignment: Vec::new(),
            choice: vec![0],
            counts: vec![0; num_cols],
            distinct: 0,
            done,
        }
    }

    fn backtrack(&mut self) {
        let col = self.assignment.pop().expect("backtrack below root");
        self.counts[col] -= 1;
        if self.counts[col] == 0 {
            self.distinct -= 1;
        }
        self.choice.truncate(self.assignment.len() + 1);
        self.choice[self.assignment.len()] += 1;
    }
}

impl Iterator for ClassicalVertices {
    type Item = ClassicalVertex;

    fn next(&mut self) -> Option<ClassicalVertex> {
        if self.done {
            return None;
        }
        let rows = self.support.len();
        loop {
            let depth = self.assignment.len();
            if depth == rows {
                let out = ClassicalVertex {
                    assignment: self.assignment.clone(),
                };
                self.backtrack();
                return Some(out);
            }
            let mut idx = self.choice[depth];
            let mut placed = false;
            while idx < self.support[depth].len() {
                let col = self.support[depth][idx];
                if self.counts[col] > 0 || self.distinct < self.d {
                    self.assignment.push(col);
                    if self.counts[col] == 0 {
                        self.distinct += 1;
                    }
                    self.counts[col] += 1;
                    self.choice[depth] = idx;
                    self.choice.push(0);
                    placed = true;
                    break;
                }
                idx += 1;
            }
            if !placed {
                if depth == 0 {
                    self.done = true;
                    return None;
                }
                self.backtrack();
            }
        }
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
    }
    num / factorial(k)
}

/// Stirling number of the second kind: partitions of `m` labels into `k`
/// nonempty blocks.
fn stirling2(m: usize, k: usize) -> BigInt {
    if k > m {
        return BigInt::zero();
    }
    if m == 0 {
        return BigInt::one(); // k == 0 here
    }
    if k == 0 {
        return BigInt::zero();
    }
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one(); // S(0, 0)
    for _ in 1..=m {
        for j in (1..=k).rev() {
            row[j] = BigInt::from(j as u64) * &row[j] + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row[k].clone()
}

/// Number of vertices of the full-support classical correlation polytope:
/// `sum_{k=1}^{d} k! C(n, k) S(m, k)`, exact.
pub fn vertex_count(m: usize, n: usize, d: usize) -> BigInt {
    let mut total = BigInt::zero();
    for k in 1..=d {
        total += factorial(k) * binomial(n, k) * stirling2(m, k);
    }
    total
}

/// Exact convex decomposition of a correlation matrix over classical
/// vertices: nonnegative weights summing to one with
/// `sum_k weight_k A_k = p` entrywise.
#[derive(Clone, Debug)]
pub struct SimulationCertificate {
    pub vertices: Vec<ClassicalVertex>,
    pub weights: Vec<Rational>,
}

impl SimulationCertificate {
    /// Re-verifies the decomposition by exact matrix arithmetic.
    pub fn verify(&self, p: &CorrelationMatrix) -> Result<()> {
        if self.vertices.len() != self.weights.len() {
            return Err(Error::Internal("certificate length mismatch".into()));
        }
        let mut total = Rational::zero();
        for w in &self.weights {
            if *w < Rational::zero() {
                return Err(Error::Internal("negative certificate weight".into()));
            }
            total += w;
        }
        if !total.is_one() {
            return Err(Error::Internal("certificate weights must sum to one".into()));
        }
        for (i, row) in p.rows().iter().enumerate() {
            for (j, expected) in row.iter().enumerate() {
                let mut acc = Rational::zero();
                for (vertex, w) in self.vertices.iter().zip(&self.weights) {
                    if vertex.entry(i, j) {
                        acc += w;
                    }
                }
                if acc != *expected {
                    return Err(Error::Internal(format!(
                        "certificate does not reproduce entry ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Tests whether `p` lies in the convex hull of its support-constrained
/// classical vertices at message count `d`; on success the certificate is
/// re-verified exactly before being returned.
///
/// Callers should row-reduce `p` (keep only extreme rows) first; the
/// answer is unchanged and the vertex enumeration shrinks drastically.
///
/// The vertex family can reach hundreds of thousands of columns, so the
/// feasibility program runs on a revised phase-one simplex that keeps only
/// the basis inverse dense and prices the streamed columns on demand;
/// Bland's rule (first negative reduced cost in stream order) keeps it
/// exact, terminating, and deterministic.
pub fn simulable(p: &CorrelationMatrix, d: usize) -> Result<Option<SimulationCertificate>> {
    MembershipSolver::new(p, d).solve()
}

/// Column identifiers in Bland order: the initial artificial basis first,
/// then the classical vertices in stream order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Column {
    Artificial(usize),
    Vertex(usize),
}

struct MembershipSolver {
    num_rows: usize,
    rhs: Vec<Rational>,
    /// Rows holding a one per vertex column, `rows_of_p + 1` entries each
    /// (normalization row first).
    one_rows_flat: Vec<u32>,
    /// Flattened assignments, `rows_of_p` bytes per vertex.
    assignments: Vec<u8>,
    rows_of_p: usize,
    num_vertices: usize,
    target: Vec<Vec<Rational>>,
}

impl MembershipSolver {
    fn new(p: &CorrelationMatrix, d: usize) -> Self {
        let m = p.num_rows();
        let n = p.num_cols();
        let support = p.support();
        let mut entry_row = vec![vec![0u32; n]; m];
        let mut rhs = vec![Rational::one()];
        for (i, cols) in support.iter().enumerate() {
            for &j in cols {
                entry_row[i][j] = rhs.len() as u32;
                rhs.push(p.rows()[i][j].clone());
            }
        }
        let mut one_rows_flat = Vec::new();
        let mut assignments = Vec::new();
        let mut num_vertices = 0;
        for v in ClassicalVertices::new(support, n, d) {
            one_rows_flat.push(0);
            one_rows_flat.extend(
                v.assignment
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| entry_row[i][c]),
            );
            assignments.extend(v.assignment.iter().map(|&c| c as u8));
            num_vertices += 1;
        }
        Self {
            num_rows: rhs.len(),
            rhs,
            one_rows_flat,
            assignments,
            rows_of_p: m,
            num_vertices,
            target: p.rows().to_vec(),
        }
    }

    /// Rows of the column of vertex `k` that hold a one.
    fn one_rows(&self, k: usize) -> &[u32] {
        let stride = self.rows_of_p + 1;
        &self.one_rows_flat[k * stride..(k + 1) * stride]
    }

    fn assignment(&self, k: usize) -> &[u8] {
        &self.assignments[k * self.rows_of_p..(k + 1) * self.rows_of_p]
    }

    fn solve(self) -> Result<Option<SimulationCertificate>> {
        if self.num_vertices == 0 {
            return Ok(None);
        }
        let r = self.num_rows;
        // Phase-one start: an artificial identity basis with cost one; the
        // right-hand side is nonnegative (probabilities), so it is feasible.
        let mut binv: Vec<Vec<Rational>> = (0..r)
            .map(|i| {
                let mut row = vec![Rational::zero(); r];
                row[i] = Rational::one();
                row
            })
            .collect();
        let mut x = self.rhs.clone();
        let mut basis: Vec<Column> = (0..r).map(Column::Artificial).collect();

        // Largest-violation pivoting normally, falling back to Bland's
        // rule while a degenerate stall lasts. Nondegenerate pivots
        // strictly decrease the objective, so only finitely many occur
        // and any would-be cycle eventually runs under Bland's rule,
        // which cannot cycle; the combination stays exact and finite.
        let stall_threshold = 2 * r + 10;
        let mut stall = 0usize;

        loop {
            // Duals of the phase-one objective: sum of the basis-inverse
            // rows still carrying an artificial.
            let mut w = vec![Rational::zero(); r];
            for (row, col) in binv.iter().zip(&basis) {
                if matches!(col, Column::Artificial(_)) {
                    for (acc, v) in w.iter_mut().zip(row) {
                        *acc += v;
                    }
                }
            }
            // Pricing runs over a rescaled integer copy of the duals;
            // signs and comparisons are unaffected.
            let mut denom_lcm = BigInt::one();
            for v in &w {
                denom_lcm = num_integer::Integer::lcm(&denom_lcm, v.denom());
            }
            let wi: Vec<BigInt> = w
                .iter()
                .map(|v| v.numer() * (&denom_lcm / v.denom()))
                .collect();

            let bland = stall > stall_threshold;
            let mut entering = None;
            let mut best_price = BigInt::zero();
            'scan: for k in 0..self.num_vertices {
                let mut price = BigInt::zero();
                for &row in self.one_rows(k) {
                    price += &wi[row as usize];
                }
                if price.is_positive() {
                    if bland {
                        entering = Some(k);
                        break 'scan;
                    }
                    if price > best_price {
                        best_price = price;
                        entering = Some(k);
                    }
                }
            }
            let Some(k) = entering else {
                // Optimal: feasible exactly when no artificial remains at a
                // positive level.
                let feasible = basis
                    .iter()
                    .zip(&x)
                    .all(|(col, v)| !matches!(col, Column::Artificial(_)) || v.is_zero());
                if !feasible {
                    return Ok(None);
                }
                let mut vertices = Vec::new();
                let mut weights = Vec::new();
                let mut order: Vec<(usize, Rational)> = basis
                    .iter()
                    .zip(&x)
                    .filter_map(|(col, v)| match col {
                        Column::Vertex(k) if !v.is_zero() => Some((*k, v.clone())),
                        _ => None,
                    })
                    .collect();
                order.sort_by_key(|(k, _)| *k);
                for (k, v) in order {
                    vertices.push(ClassicalVertex {
                        assignment: self.assignment(k).iter().map(|&c| c as usize).collect(),
                    });
                    weights.push(v);
                }
                let cert = SimulationCertificate { vertices, weights };
                let p = CorrelationMatrix::new(self.target.clone())?;
                cert.verify(&p)?;
                return Ok(Some(cert));
            };

            // Tableau column of the entering vertex.
            let ones = self.one_rows(k);
            let t: Vec<Rational> = binv
                .iter()
                .map(|row| {
                    let mut acc = Rational::zero();
                    for &j in ones {
                        acc += &row[j as usize];
                    }
                    acc
                })
                .collect();

            // Ratio test, ties broken by the smallest basis column.
            let mut leaving: Option<(usize, Rational)> = None;
            for (row, tv) in t.iter().enumerate() {
                if !tv.is_positive() {
                    continue;
                }
                let ratio = &x[row] / tv;
                let better = match &leaving {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && basis[row] < basis[*lr])
                    }
                };
                if better {
                    leaving = Some((row, ratio));
                }
            }
            let Some((lr, ratio)) = leaving else {
                return Err(Error::Internal(
                    "membership program cannot be unbounded".into(),
                ));
            };
            if ratio.is_zero() {
                stall += 1;
            } else {
                stall = 0;
            }

            // Pivot: eta-update of the basis inverse and basic values.
            let pivot = t[lr].clone();
            if !pivot.is_one() {
                let inv = pivot.recip();
                for v in binv[lr].iter_mut() {
                    if !v.is_zero() {
                        *v = std::mem::replace(v, Rational::zero()) * &inv;
                    }
                }
                x[lr] *= &inv;
            }
            let pivot_row = std::mem::take(&mut binv[lr]);
            let pivot_x = x[lr].clone();
            for (row, (brow, xv)) in binv.iter_mut().zip(x.iter_mut()).enumerate() {
                if row == lr {
                    continue;
                }
                let factor = t[row].clone();
                if factor.is_zero() {
                    continue;
                }
                for (v, pv) in brow.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v -= &factor * pv;
                    }
                }
                *xv -= &factor * &pivot_x;
            }
            binv[lr] = pivot_row;
            basis[lr] = Column::Vertex(k);
        }
    }
}

/// Per-class outcome of the driver.
#[derive(Clone, Debug)]
pub struct ClassReport {
    pub representative: Measurement,
    pub class_size: usize,
    /// Minimal sufficient message count within the Lemma-1 window.
    pub minimal_d: usize,
    /// Present when an LP established simulability at `minimal_d`; absent
    /// when `minimal_d` equals the upper bound, which needs no test.
    pub certificate: Option<SimulationCertificate>,
    /// The row-reduced correlation matrix the certificate decomposes.
    pub reduced: CorrelationMatrix,
}

/// Full result of the signaling-dimension computation.
#[derive(Clone, Debug)]
pub struct SigDimReport {
    pub value: usize,
    pub bounds: BoundsRecord,
    /// Present unless the two-dimensional closed form short-circuited.
    pub group_order: Option<usize>,
    pub num_measurements: Option<usize>,
    pub num_classes: Option<usize>,
    pub classes: Vec<ClassReport>,
    pub via_corollary: bool,
}

/// Driver options; defaults follow the flowchart (closed form for affine
/// dimension two, orbit reduction on).
#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    pub use_corollary_2d: bool,
    pub use_symmetry: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            use_corollary_2d: true,
            use_symmetry: true,
        }
    }
}

/// Exact signaling dimension of a polytopic state space.
pub fn signaling_dimension(s: &StateSpace, options: PipelineOptions) -> Result<SigDimReport> {
    let b = bounds(s)?;
    if options.use_corollary_2d && s.aff_dim() == 2 {
        return Ok(SigDimReport {
            value: sigdim_2d(s)?,
            bounds: b,
            group_order: None,
            num_measurements: None,
            num_classes: None,
            classes: Vec::new(),
            via_corollary: true,
        });
    }

    let effects = extremal_effects(s)?;
    let measurements = extremal_measurements(s, &effects)?;
    if measurements.is_empty() {
        return Err(Error::Internal(
            "no extremal measurements for a non-point state space".into(),
        ));
    }

    let (group_order, classes): (Option<usize>, Vec<(Measurement, usize)>) =
        if options.use_symmetry {
            let group = find_symmetries(s.states())?;
            let orbits = measurement_classes(&effects, &measurements, &group)?;
            (
                Some(group.order()),
                orbits
                    .into_iter()
                    .map(|o| (o.representative, o.members.len()))
                    .collect(),
            )
        } else {
            (None, measurements.iter().map(|m| (m.clone(), 1)).collect())
        };

    let mut class_reports = Vec::with_capacity(classes.len());
    for (representative, class_size) in classes {
        let report = minimal_d_for(s, &effects, &representative, class_size, &b)?;
        class_reports.push(report);
    }

    let value = class_reports
        .iter()
        .map(|c| c.minimal_d)
        .max()
        .expect("at least one class");
    if value < b.lower || value > b.upper {
        return Err(Error::Internal(format!(
            "signaling dimension {value} escaped the bounds [{}, {}]",
            b.lower, b.upper
        )));
    }

    Ok(SigDimReport {
        value,
        bounds: b,
        group_order,
        num_measurements: Some(measurements.len()),
        num_classes: Some(class_reports.len()),
        classes: class_reports,
        via_corollary: false,
    })
}

/// The Lemma-1 window walk for one representative measurement: reduce the
/// correlation matrix to its extreme rows, then test message counts from
/// the lower bound upward. At the upper bound simulability is guaranteed
/// and not re-tested.
fn minimal_d_for(
    s: &StateSpace,
    effects: &EffectSet,
    representative: &Measurement,
    class_size: usize,
    b: &BoundsRecord,
) -> Result<ClassReport> {
    let p = correlation_matrix(s, effects, representative)?;
    let reduced_rows = extreme_points(p.rows())?;
    let reduced = CorrelationMatrix::new(reduced_rows)?;

    let mut d = b.lower;
    let mut certificate = None;
    while d < b.upper {
        if let Some(cert) = simulable(&reduced, d)? {
            certificate = Some(cert);
            break;
        }
        d += 1;
    }
    Ok(ClassReport {
        representative: representative.clone(),
        class_size,
        minimal_d: d,
        certificate,
        reduced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use crate::gpt::homogenize;
    use crate::polytope::VRep;

    fn pts(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    fn space(rows: &[&[i64]]) -> StateSpace {
        homogenize(&VRep::new(pts(rows)).unwrap()).unwrap()
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

    fn octahedron() -> StateSpace {
        space(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ])
    }

    fn full_support_matrix(m: usize, n: usize) -> CorrelationMatrix {
        // Rows with strictly positive entries summing to one.
        let rows: Vec<Vec<Rational>> = (0..m)
            .map(|i| {
                let mut row: Vec<Rational> = (0..n)
                    .map(|j| Rational::new(BigInt::from(1 + ((i + j) % n) as u64), BigInt::from(100)))
                    .collect();
                let partial: Rational = row.iter().skip(1).fold(Rational::zero(), |a, b| a + b);
                row[0] = Rational::one() - partial;
                row
            })
            .collect();
        CorrelationMatrix::new(rows).unwrap()
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(
            bounds(&cube()).unwrap(),
            BoundsRecord {
                lower: 2,
                upper: 3,
                cs: true
            }
        );
        // Truncated tetrahedron: not centrally symmetric, lin_dim 4.
        let mut tt = Vec::new();
        for p in [[1i64, 1, 3], [1, 3, 1], [3, 1, 1]] {
            for (sx, sy, sz) in [(1i64, 1i64, 1i64), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)] {
                tt.push(vec![rat(p[0] * sx), rat(p[1] * sy), rat(p[2] * sz)]);
            }
        }
        let tt = homogenize(&VRep::new(tt).unwrap()).unwrap();
        assert_eq!(
            bounds(&tt).unwrap(),
            BoundsRecord {
                lower: 3,
                upper: 4,
                cs: false
            }
        );
        // A triangle is a simplex: bounds pin the value to 3 with no search.
        let tri = space(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(
            bounds(&tri).unwrap(),
            BoundsRecord {
                lower: 3,
                upper: 3,
                cs: false
            }
        );
        // Point state spaces are rejected.
        let point = homogenize(&VRep::new(vec![vec![]]).unwrap()).unwrap();
        assert!(bounds(&point).is_err());
    }

    #[test]
    fn sigdim_2d_examples() {
        let square = space(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]);
        assert_eq!(sigdim_2d(&square).unwrap(), 2);
        // Rational convex pentagon: odd vertex count, never CS.
        let pentagon = space(&[&[0, 0], &[4, 0], &[5, 3], &[2, 5], &[-1, 3]]);
        assert_eq!(sigdim_2d(&pentagon).unwrap(), 3);
        // Centrally symmetric hexagon.
        let hexagon = space(&[&[2, 0], &[1, 2], &[-1, 2], &[-2, 0], &[-1, -2], &[1, -2]]);
        assert_eq!(sigdim_2d(&hexagon).unwrap(), 2);
        assert!(sigdim_2d(&octahedron()).is_err());
    }

    #[test]
    fn classical_vertex_streams() {
        let full22 = full_support_matrix(2, 2);
        assert_eq!(classical_vertices(&full22, 2).count(), 4);
        let full32 = full_support_matrix(3, 2);
        assert_eq!(classical_vertices(&full32, 2).count(), 8);
        // Identity support: each row's support is a singleton, so the image
        // has size 3 and no assignment survives d = 2.
        let identity = CorrelationMatrix::new(vec![
            pts(&[&[1, 0, 0]])[0].clone(),
            pts(&[&[0, 1, 0]])[0].clone(),
            pts(&[&[0, 0, 1]])[0].clone(),
        ])
        .unwrap();
        assert_eq!(classical_vertices(&identity, 2).count(), 0);
        assert_eq!(classical_vertices(&identity, 3).count(), 1);
    }

    #[test]
    fn vertex_count_formula() {
        assert_eq!(vertex_count(2, 2, 2), BigInt::from(4));
        assert_eq!(vertex_count(3, 2, 2), BigInt::from(8));
        for (m, n) in [(2usize, 5usize), (4, 3), (7, 2)] {
            assert_eq!(vertex_count(m, n, 1), BigInt::from(n as u64));
        }
    }

    #[test]
    fn stream_count_matches_formula() {
        for m in 1..=4 {
            for n in 1..=4 {
                for d in 1..=3 {
                    let p = full_support_matrix(m, n);
                    let streamed = classical_vertices(&p, d).count();
                    assert_eq!(
                        BigInt::from(streamed as u64),
                        vertex_count(m, n, d),
                        "mismatch at m={m} n={n} d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn uniform_matrix_simulable_with_one_message() {
        let p = CorrelationMatrix::new(vec![
            vec![ratio(1, 2), ratio(1, 2)],
            vec![ratio(1, 2), ratio(1, 2)],
        ])
        .unwrap();
        let cert = simulable(&p, 1).unwrap().expect("one message suffices");
        cert.verify(&p).unwrap();
        // Only constant strategies are available at d = 1.
        for v in &cert.vertices {
            assert_eq!(v.assignment[0], v.assignment[1]);
        }
    }

    #[test]
    fn distinct_rows_simulable_when_d_covers_them() {
        let p = CorrelationMatrix::new(vec![
            pts(&[&[1, 0]])[0].clone(),
            pts(&[&[0, 1]])[0].clone(),
        ])
        .unwrap();
        let cert = simulable(&p, 2).unwrap().expect("one message per row");
        cert.verify(&p).unwrap();
        // The identity matrix is not simulable with a single message.
        assert!(simulable(&p, 1).unwrap().is_none());
    }

    #[test]
    fn octahedron_signaling_dimension_three() {
        let report = signaling_dimension(&octahedron(), PipelineOptions::default()).unwrap();
        assert_eq!(report.value, 3);
        assert_eq!(report.group_order, Some(48));
        assert_eq!(report.num_measurements, Some(6));
        assert_eq!(report.num_classes, Some(2));
        // CS bounds: the 4-outcome classes settle at the upper bound 3, so
        // at least one class is not simulable at 2.
        assert!(report.classes.iter().any(|c| c.minimal_d == 3));
        for c in &report.classes {
            if let Some(cert) = &c.certificate {
                cert.verify(&c.reduced).unwrap();
            }
        }
    }

    #[test]
    fn cube_signaling_dimension_two() {
        let report = signaling_dimension(&cube(), PipelineOptions::default()).unwrap();
        assert_eq!(report.value, 2);
        assert_eq!(report.num_measurements, Some(3));
        assert_eq!(report.num_classes, Some(1));
    }

    #[test]
    fn orbit_reduction_matches_exhaustive_run() {
        let with = signaling_dimension(&octahedron(), PipelineOptions::default()).unwrap();
        let without = signaling_dimension(
            &octahedron(),
            PipelineOptions {
                use_symmetry: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(with.value, without.value);
        assert_eq!(without.num_classes, Some(6));
    }

    #[test]
    fn corollary_agrees_with_full_pipeline_on_square() {
        let square = space(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]);
        let shortcut = signaling_dimension(&square, PipelineOptions::default()).unwrap();
        assert!(shortcut.via_corollary);
        let full = signaling_dimension(
            &square,
            PipelineOptions {
                use_corollary_2d: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!full.via_corollary);
        assert_eq!(shortcut.value, full.value);
        assert_eq!(full.value, 2);
    }

    #[test]
    fn simulability_is_monotone_in_d() {
        let p = full_support_matrix(3, 3);
        let mut prev = false;
        for d in 1..=3 {
            let now = simulable(&p, d).unwrap().is_some();
            assert!(!prev || now, "simulability must be monotone in d");
            prev = now;
        }
    }

    /// Same membership question through the dense general-purpose solver;
    /// an independent route for cross-checking the revised simplex.
    fn dense_simulable(p: &CorrelationMatrix, d: usize) -> bool {
        use crate::lp::{self, LinearProgram};
        let vertices: Vec<ClassicalVertex> = classical_vertices(p, d).collect();
        if vertices.is_empty() {
            return false;
        }
        let mut lp = LinearProgram::new(vertices.len());
        for j in 0..vertices.len() {
            lp.set_lower_bound(j, Rational::zero());
        }
        lp.add_eq(vec![Rational::one(); vertices.len()], Rational::one());
        for (i, row) in p.rows().iter().enumerate() {
            for (j, value) in row.iter().enumerate() {
                let coefficients: Vec<Rational> = vertices
                    .iter()
                    .map(|v| {
                        if v.entry(i, j) {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect();
                lp.add_eq(coefficients, value.clone());
            }
        }
        lp::solve(&lp).unwrap().is_feasible()
    }

    #[test]
    fn membership_solver_agrees_with_dense_lp() {
        let mut cases: Vec<CorrelationMatrix> = vec![
            full_support_matrix(2, 2),
            full_support_matrix(3, 3),
            full_support_matrix(4, 3),
            CorrelationMatrix::new(vec![
                pts(&[&[1, 0, 0]])[0].clone(),
                pts(&[&[0, 1, 0]])[0].clone(),
                pts(&[&[0, 0, 1]])[0].clone(),
                vec![ratio(1, 2), ratio(1, 2), rat(0)],
            ])
            .unwrap(),
        ];
        // A correlation matrix straight from the pipeline.
        let s = octahedron();
        let effects = crate::gpt::extremal_effects(&s).unwrap();
        let meas = crate::gpt::extremal_measurements(&s, &effects).unwrap();
        let four_outcome = meas.iter().find(|m| m.num_outcomes() == 4).unwrap();
        cases.push(correlation_matrix(&s, &effects, four_outcome).unwrap());

        for p in &cases {
            for d in 1..=3 {
                let fast = simulable(p, d).unwrap().is_some();
                let dense = dense_simulable(p, d);
                assert_eq!(fast, dense, "solver disagreement at d={d}");
            }
        }
    }
}
