//! Built-in rational solid generators: the rational Platonic, Archimedean,
//! and Catalan solids plus the hyper-octahedron and hypercube families.
//!
//! Coordinates follow the standard integer embeddings; the catalogued
//! vertex counts, affine dimensions, and central-symmetry flags are checked
//! against the generated sets in tests rather than assumed.

use crate::error::{Error, Result};
use crate::exact::{rat, ratio, Rational};
use crate::polytope::VRep;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolidSpec {
    Octahedron,
    Cube,
    TruncatedTetrahedron,
    TriakisTetrahedron,
    Cuboctahedron,
    RhombicDodecahedron,
    TruncatedOctahedron,
    TetrakisHexahedron,
    Hyperoctahedron(usize),
    Hypercube(usize),
}

impl SolidSpec {
    /// Accepts kebab-case names; the parameterized families take either
    /// `hyperoctahedron(4)` or `hyperoctahedron-4`.
    pub fn parse(name: &str) -> Result<SolidSpec> {
        let name = name.trim().to_ascii_lowercase();
        let spec = match name.as_str() {
            "octahedron" => SolidSpec::Octahedron,
            "cube" => SolidSpec::Cube,
            "truncated-tetrahedron" => SolidSpec::TruncatedTetrahedron,
            "triakis-tetrahedron" => SolidSpec::TriakisTetrahedron,
            "cuboctahedron" => SolidSpec::Cuboctahedron,
            "rhombic-dodecahedron" => SolidSpec::RhombicDodecahedron,
            "truncated-octahedron" => SolidSpec::TruncatedOctahedron,
            "tetrakis-hexahedron" => SolidSpec::TetrakisHexahedron,
            _ => {
                let parametrized = |prefix: &str| -> Option<&str> {
                    let rest = name.strip_prefix(prefix)?;
                    rest.strip_prefix('(')
                        .and_then(|r| r.strip_suffix(')'))
                        .or_else(|| rest.strip_prefix('-'))
                };
                if let Some(n) = parametrized("hyperoctahedron") {
                    let n: usize = n
                        .parse()
                        .map_err(|_| Error::UnknownSolid(name.clone()))?;
                    if n < 2 {
                        return Err(Error::UnknownSolid(format!(
                            "hyperoctahedron({n}): dimension must be at least 2"
                        )));
                    }
                    SolidSpec::Hyperoctahedron(n)
                } else if let Some(n) = parametrized("hypercube") {
                    let n: usize = n
                        .parse()
                        .map_err(|_| Error::UnknownSolid(name.clone()))?;
                    if n < 2 {
                        return Err(Error::UnknownSolid(format!(
                            "hypercube({n}): dimension must be at least 2"
                        )));
                    }
                    SolidSpec::Hypercube(n)
                } else {
                    return Err(Error::UnknownSolid(name));
                }
            }
        };
        Ok(spec)
    }

    pub fn name(&self) -> String {
        match self {
            SolidSpec::Octahedron => "octahedron".into(),
            SolidSpec::Cube => "cube".into(),
            SolidSpec::TruncatedTetrahedron => "truncated-tetrahedron".into(),
            SolidSpec::TriakisTetrahedron => "triakis-tetrahedron".into(),
            SolidSpec::Cuboctahedron => "cuboctahedron".into(),
            SolidSpec::RhombicDodecahedron => "rhombic-dodecahedron".into(),
            SolidSpec::TruncatedOctahedron => "truncated-octahedron".into(),
            SolidSpec::TetrakisHexahedron => "tetrakis-hexahedron".into(),
            SolidSpec::Hyperoctahedron(n) => format!("hyperoctahedron({n})"),
            SolidSpec::Hypercube(n) => format!("hypercube({n})"),
        }
    }

    /// The eight rational Platonic, Archimedean, and Catalan solids, in
    /// catalogue order.
    pub fn regular_solids() -> Vec<SolidSpec> {
        vec![
            SolidSpec::Octahedron,
            SolidSpec::Cube,
            SolidSpec::TruncatedTetrahedron,
            SolidSpec::TriakisTetrahedron,
            SolidSpec::Cuboctahedron,
            SolidSpec::RhombicDodecahedron,
            SolidSpec::TruncatedOctahedron,
            SolidSpec::TetrakisHexahedron,
        ]
    }
}

impl std::fmt::Display for SolidSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn cross_polytope(n: usize) -> Vec<Vec<Rational>> {
    let mut v = Vec::with_capacity(2 * n);
    for i in 0..n {
        for s in [1i64, -1] {
            let mut x = vec![rat(0); n];
            x[i] = rat(s);
            v.push(x);
        }
    }
    v
}

fn sign_cube(n: usize) -> Vec<Vec<Rational>> {
    let mut v = Vec::with_capacity(1 << n);
    for mask in 0..(1u32 << n) {
        v.push(
            (0..n)
                .map(|i| if mask >> i & 1 == 1 { rat(-1) } else { rat(1) })
                .collect(),
        );
    }
    v
}

/// All coordinate permutations of a pattern combined with the requested
/// sign choices on its nonzero entries.
fn signed_permutations(pattern: [i64; 3], even_signs_only: bool) -> Vec<Vec<Rational>> {
    let mut perms: Vec<[i64; 3]> = Vec::new();
    let idx = [0usize, 1, 2];
    for &a in &idx {
        for &b in &idx {
            if b == a {
                continue;
            }
            let c = 3 - a - b;
            let candidate = [pattern[a], pattern[b], pattern[c]];
            if !perms.contains(&candidate) {
                perms.push(candidate);
            }
        }
    }
    let mut out = Vec::new();
    for p in perms {
        for mask in 0..8u32 {
            let mut flips = 0;
            let mut v = [0i64; 3];
            let mut skip = false;
            for i in 0..3 {
                let s = if mask >> i & 1 == 1 { -1 } else { 1 };
                if s < 0 {
                    if p[i] == 0 {
                        // Flipping a zero duplicates a vertex.
                        skip = true;
                        break;
                    }
                    flips += 1;
                }
                v[i] = s * p[i];
            }
            if skip || (even_signs_only && flips % 2 == 1) {
                continue;
            }
            let vr: Vec<Rational> = v.iter().map(|&x| rat(x)).collect();
            if !out.contains(&vr) {
                out.push(vr);
            }
        }
    }
    out
}

/// Exact rational vertex set of a catalogued solid.
pub fn generate_solid(spec: &SolidSpec) -> Result<VRep> {
    let vertices = match spec {
        SolidSpec::Octahedron => cross_polytope(3),
        SolidSpec::Cube => sign_cube(3),
        SolidSpec::Hyperoctahedron(n) => cross_polytope(*n),
        SolidSpec::Hypercube(n) => sign_cube(*n),
        SolidSpec::TruncatedTetrahedron => signed_permutations([1, 1, 3], true),
        SolidSpec::Cuboctahedron => signed_permutations([1, 1, 0], false),
        SolidSpec::TruncatedOctahedron => signed_permutations([0, 1, 2], false),
        SolidSpec::RhombicDodecahedron => {
            let mut v = sign_cube(3);
            v.extend(signed_permutations([2, 0, 0], false));
            v
        }
        SolidSpec::TetrakisHexahedron => {
            let mut v = sign_cube(3);
            for axis in signed_permutations([1, 0, 0], false) {
                v.push(axis.iter().map(|x| x * ratio(3, 2)).collect());
            }
            v
        }
        SolidSpec::TriakisTetrahedron => {
            let base: Vec<[i64; 3]> =
                vec![[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]];
            let mut v: Vec<Vec<Rational>> = base
                .iter()
                .map(|p| p.iter().map(|&x| rat(x)).collect())
                .collect();
            // Apexes over each face: the opposite tetrahedron at scale 3/5.
            for p in &base {
                v.push(p.iter().map(|&x| rat(-x) * ratio(3, 5)).collect());
            }
            v
        }
    };
    VRep::new(vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{affine_dim, central_symmetry};

    #[test]
    fn parse_names() {
        assert_eq!(SolidSpec::parse("cube").unwrap(), SolidSpec::Cube);
        assert_eq!(
            SolidSpec::parse("Truncated-Tetrahedron").unwrap(),
            SolidSpec::TruncatedTetrahedron
        );
        assert_eq!(
            SolidSpec::parse("hyperoctahedron(4)").unwrap(),
            SolidSpec::Hyperoctahedron(4)
        );
        assert_eq!(
            SolidSpec::parse("hypercube-3").unwrap(),
            SolidSpec::Hypercube(3)
        );
        assert!(SolidSpec::parse("icosahedron").is_err());
        assert!(SolidSpec::parse("hyperoctahedron(1)").is_err());
        assert!(SolidSpec::parse("hypercube(x)").is_err());
    }

    #[test]
    fn catalogued_counts_dimensions_and_symmetry() {
        // (spec, m, aff_dim, cs) as catalogued.
        let expected: Vec<(SolidSpec, usize, usize, bool)> = vec![
            (SolidSpec::Octahedron, 6, 3, true),
            (SolidSpec::Cube, 8, 3, true),
            (SolidSpec::TruncatedTetrahedron, 12, 3, false),
            (SolidSpec::TriakisTetrahedron, 8, 3, false),
            (SolidSpec::Cuboctahedron, 12, 3, true),
            (SolidSpec::RhombicDodecahedron, 14, 3, true),
            (SolidSpec::TruncatedOctahedron, 24, 3, true),
            (SolidSpec::TetrakisHexahedron, 14, 3, true),
            (SolidSpec::Hyperoctahedron(4), 8, 4, true),
            (SolidSpec::Hyperoctahedron(5), 10, 5, true),
            (SolidSpec::Hypercube(4), 16, 4, true),
        ];
        for (spec, m, aff, cs) in expected {
            let v = generate_solid(&spec).unwrap();
            assert_eq!(v.len(), m, "{spec}: vertex count");
            assert_eq!(affine_dim(&v), aff, "{spec}: affine dimension");
            assert_eq!(central_symmetry(&v).is_some(), cs, "{spec}: central symmetry");
        }
    }

    #[test]
    fn square_is_hyperoctahedron_two() {
        let v = generate_solid(&SolidSpec::Hyperoctahedron(2)).unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(affine_dim(&v), 2);
    }
}
