//! Rational polytopes: V- and H-representations, the double description
//! method, central symmetry, and the Minkowski measure of asymmetry.

use std::collections::HashSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, rank_of_points, sub, Rational};
use crate::lp::{self, LinearProgram, LpOutcome};

pub mod dd;

/// Vertex representation: the extreme points of a polytope.
///
/// Invariants enforced on construction: non-empty, equal dimensions, no
/// duplicates, and every listed point extreme (not a convex combination of
/// the others).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    vertices: Vec<Vec<Rational>>,
}

impl VRep {
    pub fn new(vertices: Vec<Vec<Rational>>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyInput("vertex set"));
        }
        let dim = vertices[0].len();
        if vertices.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidVertexSet(
                "vertices of unequal dimension".into(),
            ));
        }
        let mut seen = HashSet::new();
        for (i, v) in vertices.iter().enumerate() {
            if !seen.insert(v.clone()) {
                return Err(Error::InvalidVertexSet(format!(
                    "duplicate vertex at index {i}"
                )));
            }
        }
        let extreme = extreme_points(&vertices)?;
        if extreme.len() != vertices.len() {
            let extreme_set: HashSet<&Vec<Rational>> = extreme.iter().collect();
            let bad: Vec<usize> = vertices
                .iter()
                .enumerate()
                .filter(|(_, v)| !extreme_set.contains(v))
                .map(|(i, _)| i)
                .collect();
            return Err(Error::InvalidVertexSet(format!(
                "non-extreme points at indices {bad:?}"
            )));
        }
        Ok(Self { vertices })
    }

    /// For points already known extreme (double description output).
    fn from_extreme_unchecked(vertices: Vec<Vec<Rational>>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }
}

/// Facet representation: inequalities `a . x <= b`. For polytopes that are
/// not full-dimensional, affine-hull equalities appear as opposite
/// inequality pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub inequalities: Vec<(Vec<Rational>, Rational)>,
}

/// A polytope with its vertex description, affine dimension, and a lazily
/// computed facet description.
#[derive(Debug)]
pub struct Polytope {
    vrep: VRep,
    aff_dim: usize,
    hrep: OnceLock<HRep>,
}

impl Polytope {
    pub fn from_vrep(vrep: VRep) -> Self {
        let aff_dim = affine_dim(&vrep);
        Self {
            vrep,
            aff_dim,
            hrep: OnceLock::new(),
        }
    }

    pub fn vrep(&self) -> &VRep {
        &self.vrep
    }

    pub fn aff_dim(&self) -> usize {
        self.aff_dim
    }

    /// Linear dimension of the homogenized representation.
    pub fn lin_dim(&self) -> usize {
        self.aff_dim + 1
    }

    pub fn hrep(&self) -> Result<&HRep> {
        if let Some(h) = self.hrep.get() {
            return Ok(h);
        }
        let h = double_description(&self.vrep)?;
        Ok(self.hrep.get_or_init(|| h))
    }
}

/// Exact facet description of `conv(vertices)` by the double description
/// method on the polar cone.
pub fn double_description(v: &VRep) -> Result<HRep> {
    let rows: Vec<Vec<Rational>> = v
        .vertices
        .iter()
        .map(|x| {
            let mut r = Vec::with_capacity(x.len() + 1);
            r.push(Rational::one());
            r.extend(x.iter().cloned());
            r
        })
        .collect();
    let desc = dd::extreme_rays(&rows)?;

    let mut inequalities = Vec::new();
    for ray in &desc.rays {
        // Ray (b, -a) of the polar cone encodes the valid inequality
        // a . x <= b; an all-zero normal is vacuous.
        if ray[1..].iter().all(Zero::is_zero) {
            continue;
        }
        let a: Vec<Rational> = ray[1..]
            .iter()
            .map(|v| Rational::from_integer(-v.clone()))
            .collect();
        let b = Rational::from_integer(ray[0].clone());
        inequalities.push((a, b));
    }
    for gen in &desc.lineality {
        // Lineality generators vanish on every vertex: affine-hull
        // equalities, emitted as opposite inequality pairs.
        let a: Vec<Rational> = gen[1..]
            .iter()
            .map(|v| Rational::from_integer(-v.clone()))
            .collect();
        let b = Rational::from_integer(gen[0].clone());
        inequalities.push((a.iter().map(|x| -x.clone()).collect(), -b.clone()));
        inequalities.push((a, b));
    }
    Ok(HRep { inequalities })
}

/// Exact extreme points of `{x : a . x <= b for all inequalities}`.
///
/// Errors if the region is unbounded (or contains a line); returns an empty
/// list if it is empty.
pub fn vertices_from_hrep(h: &HRep) -> Result<Vec<Vec<Rational>>> {
    if h.inequalities.is_empty() {
        return Err(Error::EmptyInput("inequality set"));
    }
    let dim = h.inequalities[0].0.len();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(h.inequalities.len() + 1);
    for (a, b) in &h.inequalities {
        let mut r = Vec::with_capacity(dim + 1);
        r.push(b.clone());
        r.extend(a.iter().map(|x| -x.clone()));
        rows.push(r);
    }
    let mut t_row = vec![Rational::zero(); dim + 1];
    t_row[0] = Rational::one();
    rows.push(t_row);

    let desc = dd::extreme_rays(&rows)?;
    if !desc.lineality.is_empty() {
        return Err(Error::Degenerate(
            "H-representation contains a line".into(),
        ));
    }
    let mut vertices = Vec::new();
    for ray in &desc.rays {
        let t = &ray[0];
        if t.is_zero() {
            return Err(Error::Degenerate(
                "H-representation is unbounded".into(),
            ));
        }
        let t = Rational::from_integer(t.clone());
        vertices.push(
            ray[1..]
                .iter()
                .map(|v| Rational::from_integer(v.clone()) / &t)
                .collect::<Vec<Rational>>(),
        );
    }
    vertices.sort();
    Ok(vertices)
}

/// Rank of the translated differences `{v_i - v_0}`.
pub fn affine_dim(v: &VRep) -> usize {
    let first = &v.vertices[0];
    let diffs: Vec<Vec<Rational>> = v.vertices[1..]
        .iter()
        .map(|x| sub(x, first))
        .collect();
    rank_of_points(&diffs)
}

/// Arithmetic mean of the vertices, exact.
pub fn centroid(v: &VRep) -> Vec<Rational> {
    let dim = v.dim();
    let mut c = vec![Rational::zero(); dim];
    for x in &v.vertices {
        for (ci, xi) in c.iter_mut().zip(x) {
            *ci += xi;
        }
    }
    let count = Rational::from_integer(BigInt::from(v.len() as u64));
    for ci in c.iter_mut() {
        *ci /= &count;
    }
    c
}

/// Central-symmetry test: the vertex set of a centrally symmetric polytope
/// is invariant under reflection through its centroid (for such a polytope
/// the vertex centroid is the symmetry center), so reflecting every vertex
/// through the centroid and checking set equality decides the question.
pub fn central_symmetry(v: &VRep) -> Option<Vec<Rational>> {
    let c = centroid(v);
    let set: HashSet<&Vec<Rational>> = v.vertices.iter().collect();
    let double_c: Vec<Rational> = c.iter().map(|x| x + x).collect();
    for x in &v.vertices {
        let reflected = sub(&double_c, x);
        if !set.contains(&reflected) {
            return None;
        }
    }
    Some(c)
}

/// Minkowski measure of asymmetry: the smallest dilation `lambda` such
/// that the reflection of the polytope through some center fits inside the
/// `lambda`-dilated polytope about that center.
///
/// Linearized over variables `(lambda, d)` with `d = (1 + lambda) c`: the
/// containment `-(w - c) in lambda (S - c)` for every vertex `w` becomes
/// `a . d <= lambda b + a . w` for every facet `(a, b)`.
pub fn minkowski_asymmetry(p: &Polytope) -> Result<Rational> {
    Ok(asymmetry_witness(p)?.0)
}

/// Asymmetry together with an optimal center.
pub fn asymmetry_witness(p: &Polytope) -> Result<(Rational, Vec<Rational>)> {
    if p.aff_dim() == 0 {
        return Err(Error::Degenerate(
            "asymmetry is undefined for a single point".into(),
        ));
    }
    let hrep = p.hrep()?;
    let dim = p.vrep().dim();
    let mut lp = LinearProgram::new(1 + dim);
    let mut objective = vec![Rational::zero(); 1 + dim];
    objective[0] = Rational::one();
    lp.set_objective(objective);
    lp.set_lower_bound(0, Rational::zero());
    for (a, b) in &hrep.inequalities {
        for w in p.vrep().vertices() {
            let mut row = Vec::with_capacity(1 + dim);
            row.push(-b.clone());
            row.extend(a.iter().cloned());
            lp.add_le(row, dot(a, w));
        }
    }
    match lp::solve(&lp)? {
        LpOutcome::Optimal(sol) => {
            let lambda = sol.value;
            let shrink = (Rational::one() + &lambda).recip();
            let center = sol.point[1..].iter().map(|d| d * &shrink).collect();
            Ok((lambda, center))
        }
        _ => Err(Error::Internal(
            "asymmetry program must have an optimum".into(),
        )),
    }
}

/// Deduplicates the points and removes every point that is an exact convex
/// combination of the others (one feasibility LP per point). Input order is
/// preserved.
pub fn extreme_points(points: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let mut unique: Vec<Vec<Rational>> = Vec::new();
    let mut seen = HashSet::new();
    for p in points {
        if seen.insert(p.clone()) {
            unique.push(p.clone());
        }
    }
    if unique.len() <= 1 {
        return Ok(unique);
    }
    let dim = unique[0].len();
    let mut keep = Vec::new();
    for i in 0..unique.len() {
        let others: Vec<&Vec<Rational>> = unique
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v)
            .collect();
        let mut lp = LinearProgram::new(others.len());
        for j in 0..others.len() {
            lp.set_lower_bound(j, Rational::zero());
        }
        lp.add_eq(vec![Rational::one(); others.len()], Rational::one());
        for coord in 0..dim {
            lp.add_eq(
                others.iter().map(|v| v[coord].clone()).collect(),
                unique[i][coord].clone(),
            );
        }
        if !lp::solve(&lp)?.is_feasible() {
            keep.push(unique[i].clone());
        }
    }
    Ok(keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn pts(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    fn diamond() -> VRep {
        VRep::new(pts(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]])).unwrap()
    }

    fn octahedron() -> VRep {
        VRep::new(pts(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]))
        .unwrap()
    }

    fn cuboctahedron() -> VRep {
        let mut v = Vec::new();
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            for si in [1i64, -1] {
                for sj in [1i64, -1] {
                    let mut x = vec![rat(0); 3];
                    x[i] = rat(si);
                    x[j] = rat(sj);
                    v.push(x);
                }
            }
        }
        VRep::new(v).unwrap()
    }

    #[test]
    fn vrep_validation() {
        assert!(matches!(VRep::new(vec![]), Err(Error::EmptyInput(_))));
        let dup = VRep::new(pts(&[&[0, 0], &[1, 0], &[0, 0]]));
        assert!(matches!(dup, Err(Error::InvalidVertexSet(_))));
        // Centroid listed as a vertex is rejected as non-extreme.
        let non_extreme = VRep::new(pts(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[0, 0]]));
        assert!(matches!(non_extreme, Err(Error::InvalidVertexSet(_))));
    }

    #[test]
    fn square_facets() {
        let h = double_description(&diamond()).unwrap();
        assert_eq!(h.inequalities.len(), 4);
        for (a, b) in &h.inequalities {
            assert_eq!(b, &rat(1));
            assert_eq!(a[0].clone().abs(), rat(1));
            assert_eq!(a[1].clone().abs(), rat(1));
        }
    }

    #[test]
    fn octahedron_facets_form_cube() {
        let h = double_description(&octahedron()).unwrap();
        assert_eq!(h.inequalities.len(), 8);
        for (a, b) in &h.inequalities {
            assert_eq!(b, &rat(1));
            assert!(a.iter().all(|x| x.clone().abs() == rat(1)));
        }
    }

    #[test]
    fn cuboctahedron_has_fourteen_facets() {
        let h = double_description(&cuboctahedron()).unwrap();
        assert_eq!(h.inequalities.len(), 14);
    }

    #[test]
    fn facets_valid_and_tight_enough() {
        for v in [diamond(), octahedron(), cuboctahedron()] {
            let aff = affine_dim(&v);
            let h = double_description(&v).unwrap();
            for (a, b) in &h.inequalities {
                let mut tight = 0;
                for w in v.vertices() {
                    let val = dot(a, w);
                    assert!(val <= *b, "facet violated by a vertex");
                    if val == *b {
                        tight += 1;
                    }
                }
                assert!(tight >= aff, "facet tight at fewer than aff_dim vertices");
            }
        }
    }

    #[test]
    fn round_trip_vrep_hrep_vrep() {
        for v in [diamond(), octahedron(), cuboctahedron()] {
            let h = double_description(&v).unwrap();
            let mut back = vertices_from_hrep(&h).unwrap();
            let mut orig = v.vertices().to_vec();
            back.sort();
            orig.sort();
            assert_eq!(back, orig);
        }
    }

    #[test]
    fn unbounded_hrep_rejected() {
        let h = HRep {
            inequalities: vec![(vec![rat(1), rat(0)], rat(1))],
        };
        assert!(vertices_from_hrep(&h).is_err());
    }

    #[test]
    fn affine_dims() {
        assert_eq!(affine_dim(&VRep::new(pts(&[&[3, 4]])).unwrap()), 0);
        assert_eq!(affine_dim(&octahedron()), 3);
        // Planar square embedded in 3d.
        let planar = VRep::new(pts(&[
            &[1, 0, 5],
            &[0, 1, 5],
            &[-1, 0, 5],
            &[0, -1, 5],
        ]))
        .unwrap();
        assert_eq!(affine_dim(&planar), 2);
    }

    #[test]
    fn centroid_cases() {
        assert_eq!(centroid(&octahedron()), vec![rat(0), rat(0), rat(0)]);
        let tri = VRep::new(pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert_eq!(centroid(&tri), vec![ratio(1, 3), ratio(1, 3)]);
        // Translation equivariance.
        let shifted = VRep::new(
            octahedron()
                .vertices()
                .iter()
                .map(|v| vec![&v[0] + rat(1), &v[1] + rat(2), &v[2] + rat(3)])
                .collect(),
        )
        .unwrap();
        assert_eq!(centroid(&shifted), vec![rat(1), rat(2), rat(3)]);
    }

    #[test]
    fn central_symmetry_cases() {
        let cube = VRep::new(pts(&[
            &[1, 1, 1],
            &[1, 1, -1],
            &[1, -1, 1],
            &[1, -1, -1],
            &[-1, 1, 1],
            &[-1, 1, -1],
            &[-1, -1, 1],
            &[-1, -1, -1],
        ]))
        .unwrap();
        assert_eq!(central_symmetry(&cube), Some(vec![rat(0); 3]));

        let tri = VRep::new(pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert_eq!(central_symmetry(&tri), None);

        // Truncated tetrahedron: even sign flips of permutations of (1,1,3).
        let mut tt = Vec::new();
        for p in [[1i64, 1, 3], [1, 3, 1], [3, 1, 1]] {
            for (sx, sy, sz) in [
                (1i64, 1i64, 1i64),
                (1, -1, -1),
                (-1, 1, -1),
                (-1, -1, 1),
            ] {
                tt.push(vec![rat(p[0] * sx), rat(p[1] * sy), rat(p[2] * sz)]);
            }
        }
        let tt = VRep::new(tt).unwrap();
        assert_eq!(tt.len(), 12);
        assert_eq!(central_symmetry(&tt), None);
    }

    #[test]
    fn asymmetry_of_simplices_and_cs_bodies() {
        // Centrally symmetric bodies sit at the lower bound 1.
        for v in [diamond(), octahedron()] {
            let p = Polytope::from_vrep(v);
            assert_eq!(minkowski_asymmetry(&p).unwrap(), rat(1));
        }
        // Simplices saturate the upper bound aff_dim.
        let triangle = Polytope::from_vrep(VRep::new(pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap());
        assert_eq!(minkowski_asymmetry(&triangle).unwrap(), rat(2));
        let tet = Polytope::from_vrep(
            VRep::new(pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap(),
        );
        assert_eq!(minkowski_asymmetry(&tet).unwrap(), rat(3));
    }

    #[test]
    fn asymmetry_rejects_points() {
        let p = Polytope::from_vrep(VRep::new(pts(&[&[2, 2]])).unwrap());
        assert!(minkowski_asymmetry(&p).is_err());
    }

    #[test]
    fn extreme_point_filter() {
        let filtered = extreme_points(&pts(&[&[0], &[1], &[0]])).unwrap();
        assert_eq!(filtered, pts(&[&[0], &[1]]));
        let line = extreme_points(&[vec![rat(0)], vec![rat(1)], vec![ratio(1, 2)]]).unwrap();
        assert_eq!(line, pts(&[&[0], &[1]]));
        let with_centroid =
            extreme_points(&pts(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[0, 0]])).unwrap();
        assert_eq!(with_centroid.len(), 4);
    }
}
