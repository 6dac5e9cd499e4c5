//! Double description on rational cones.
//!
//! Given constraint rows `A`, describes the cone `{x : A x >= 0}` by its
//! lineality space and the extreme rays modulo that space. Constraints are
//! integerized row by row and inserted in lexicographic order; all
//! arithmetic on rays is over integers, every ray kept primitive.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    dot_int, invert, kernel_basis, primitive_integer_row, rank_int, rref, Matrix, Rational,
};

/// Generators of a cone: `cone = span(lineality) + nonneg(rays)`.
#[derive(Clone, Debug)]
pub struct ConeDescription {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

struct Ray {
    vec: Vec<BigInt>,
    /// Tightness per processed constraint row.
    zero: Vec<bool>,
}

/// Enumerates the extreme rays and lineality space of `{x : rows . x >= 0}`.
pub fn extreme_rays(rows: &[Vec<Rational>]) -> Result<ConeDescription> {
    let dim = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch(
            "double description: ragged constraint rows".into(),
        ));
    }

    let mut constraints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| primitive_integer_row(r))
        .filter(|r| !r.iter().all(Zero::is_zero))
        .collect();
    constraints.sort();
    constraints.dedup();

    if constraints.is_empty() {
        // Whole space: pure lineality.
        let mut lineality = Vec::new();
        for i in 0..dim {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            lineality.push(e);
        }
        return Ok(ConeDescription {
            rays: Vec::new(),
            lineality,
        });
    }

    let rational_rows: Vec<Vec<Rational>> = constraints
        .iter()
        .map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect())
        .collect();
    let (_, pivot_cols) = rref(&rational_rows);
    let lineality = kernel_basis(&rational_rows, dim);
    let k = pivot_cols.len();

    // Work in the pivot coordinates, where the cone is pointed.
    let projected: Vec<Vec<BigInt>> = constraints
        .iter()
        .map(|r| pivot_cols.iter().map(|&c| r[c].clone()).collect())
        .collect();

    let rays = enumerate_pointed(&projected, k)?;

    // Embed the projected rays back into full coordinates.
    let mut full_rays: Vec<Vec<BigInt>> = rays
        .into_iter()
        .map(|r| {
            let mut v = vec![BigInt::zero(); dim];
            for (i, &c) in pivot_cols.iter().enumerate() {
                v[c] = r[i].clone();
            }
            v
        })
        .collect();
    full_rays.sort();
    Ok(ConeDescription {
        rays: full_rays,
        lineality,
    })
}

/// Double description proper, on a pointed cone of full column rank `k`.
fn enumerate_pointed(constraints: &[Vec<BigInt>], k: usize) -> Result<Vec<Vec<BigInt>>> {
    let m = constraints.len();

    // Greedy initial basis: the lexicographically first k independent rows.
    let mut basis_rows = Vec::with_capacity(k);
    let mut chosen: Vec<Vec<BigInt>> = Vec::with_capacity(k);
    for (r, row) in constraints.iter().enumerate() {
        chosen.push(row.clone());
        if rank_int(&chosen) == chosen.len() {
            basis_rows.push(r);
        } else {
            chosen.pop();
        }
        if basis_rows.len() == k {
            break;
        }
    }
    debug_assert_eq!(basis_rows.len(), k, "projected constraints must span");

    let basis_matrix = Matrix::from_rows(
        chosen
            .iter()
            .map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect())
            .collect(),
    )?;
    let inverse = invert(&basis_matrix)?;

    // Initial rays: columns of the inverse; ray j is tight at every basis
    // row except the j-th.
    let mut rays: Vec<Ray> = (0..k)
        .map(|j| {
            let col: Vec<Rational> = (0..k).map(|i| inverse[(i, j)].clone()).collect();
            let vec = primitive_integer_row(&col);
            let mut zero = vec![false; m];
            for (pos, &r) in basis_rows.iter().enumerate() {
                zero[r] = pos != j;
            }
            Ray { vec, zero }
        })
        .collect();

    for h in 0..m {
        if basis_rows.contains(&h) {
            continue;
        }
        let row = &constraints[h];
        let values: Vec<BigInt> = rays.iter().map(|r| dot_int(row, &r.vec)).collect();
        let negatives: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        if negatives.is_empty() {
            for (ray, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    ray.zero[h] = true;
                }
            }
            continue;
        }
        let positives: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();

        let mut created = Vec::new();
        for &p in &positives {
            for &n in &negatives {
                let common: Vec<usize> = (0..m)
                    .filter(|&r| rays[p].zero[r] && rays[n].zero[r])
                    .collect();
                if common.len() + 2 < k {
                    continue;
                }
                let tight: Vec<Vec<BigInt>> =
                    common.iter().map(|&r| constraints[r].clone()).collect();
                if rank_int(&tight) != k - 2 {
                    continue;
                }
                // values[p] * ray_n - values[n] * ray_p is a positive
                // combination landing exactly on the new hyperplane.
                let vec: Vec<Rational> = rays[p]
                    .vec
                    .iter()
                    .zip(&rays[n].vec)
                    .map(|(a, b)| {
                        Rational::from_integer(&values[p] * b - &values[n] * a)
                    })
                    .collect();
                let vec = primitive_integer_row(&vec);
                let mut zero = vec![false; m];
                for &r in &common {
                    zero[r] = true;
                }
                zero[h] = true;
                created.push(Ray { vec, zero });
            }
        }

        let mut retained = Vec::with_capacity(rays.len());
        for (i, mut ray) in rays.into_iter().enumerate() {
            match values[i].sign() {
                num_bigint::Sign::Minus => {}
                num_bigint::Sign::NoSign => {
                    ray.zero[h] = true;
                    retained.push(ray);
                }
                num_bigint::Sign::Plus => retained.push(ray),
            }
        }
        retained.extend(created);
        rays = retained;
    }

    Ok(rays.into_iter().map(|r| r.vec).collect())
}
