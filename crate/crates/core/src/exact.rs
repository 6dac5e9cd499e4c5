//! Arbitrary-precision rational scalars, vectors, and matrices.
//!
//! The scalar type is [`Rational`], a reduced fraction of big integers with
//! positive denominator; that canonical form makes equality and hashing
//! structural. Vectors are plain `Vec<Rational>` slices, matrices a dense
//! row-major [`Matrix`]. Rank is computed by fraction-free (Bareiss)
//! elimination, which on integer input performs only exact integer
//! divisions; overflow cannot occur since all integers are
//! arbitrary-precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar: always reduced, denominator always positive.
pub type Rational = num_rational::BigRational;

/// Shorthand for an exact zero.
pub fn zero() -> Rational {
    Rational::zero()
}

/// Shorthand for an exact one.
pub fn one() -> Rational {
    Rational::one()
}

/// Rational from an integer literal.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n / d`. Panics if `d == 0`; use [`parse_rational`] for
/// untrusted input.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with arbitrary-precision integer parts.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical string form: `"p"` when the denominator is one, else `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Exact dot product. Lengths must agree; callers validate at boundaries.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Exact integer dot product.
pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    let mut acc = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// `a + t * b`, componentwise.
pub fn add_scaled(a: &[Rational], t: &Rational, b: &[Rational]) -> Vec<Rational> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + t * y).collect()
}

/// `a - b`, componentwise.
pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `t * a`, componentwise.
pub fn scale(t: &Rational, a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| t * x).collect()
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from equally long rows.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Exact matrix product.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply {}x{} to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Gram matrix of a point set: `out[i][j] = points[i] . points[j]`.
pub fn gram(points: &[Vec<Rational>]) -> Result<Matrix> {
    let dim = points.first().map_or(0, Vec::len);
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch(
            "gram: points of unequal dimension".into(),
        ));
    }
    let m = points.len();
    let mut g = Matrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v = dot(&points[i], &points[j]);
            g[(i, j)] = v.clone();
            g[(j, i)] = v;
        }
    }
    Ok(g)
}

/// Integer Gram matrix of an integer point set.
pub fn gram_int(points: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = points.len();
    let mut g = vec![vec![BigInt::zero(); m]; m];
    for i in 0..m {
        for j in i..m {
            let v = dot_int(&points[i], &points[j]);
            g[i][j] = v.clone();
            g[j][i] = v;
        }
    }
    g
}

/// Exact rank of an integer matrix by fraction-free Bareiss elimination.
///
/// Pivots are the first nonzero entry in column order, so the procedure is
/// deterministic; the only divisions performed are exact divisions by the
/// previous pivot.
pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev_pivot = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot_row) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        for r in rank + 1..nrows {
            let factor = m[r][col].clone();
            for c in col..ncols {
                let v = &pivot * &m[r][c] - &factor * &m[rank][c];
                // Exact by the Bareiss determinant identity.
                m[r][c] = v / &prev_pivot;
            }
        }
        prev_pivot = pivot;
        rank += 1;
    }
    rank
}

/// Exact rank of a rational matrix.
///
/// Each row is scaled to a primitive integer vector first (rank is invariant
/// under nonzero row scaling), then [`rank_int`] applies.
pub fn rank(mat: &Matrix) -> usize {
    let rows: Vec<Vec<BigInt>> = (0..mat.rows())
        .map(|i| primitive_integer_row(mat.row(i)))
        .collect();
    rank_int(&rows)
}

/// Rank of a set of rational vectors.
pub fn rank_of_points(points: &[Vec<Rational>]) -> usize {
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| primitive_integer_row(p))
        .collect();
    rank_int(&rows)
}

/// Scales one rational row to a primitive integer vector (gcd one), keeping
/// its direction.
pub fn primitive_integer_row(row: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in row {
        l = l.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if !g.is_zero() && !g.is_one() {
        for v in &mut ints {
            *v /= &g;
        }
    }
    ints
}

/// Rescales a rational point set to integers by the least common multiple
/// `L` of all denominators.
///
/// Returns the integer vectors `L * points[i]` together with the scale
/// `1/L`, so that `scale * integers = points`. Uniform scaling multiplies
/// every pairwise inner product by `L^2`, hence the Gram-equality pattern,
/// and with it the symmetry group, is unchanged.
pub fn integerize(points: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, Rational) {
    let mut l = BigInt::one();
    for p in points {
        for x in p {
            l = l.lcm(x.denom());
        }
    }
    let ints = points
        .iter()
        .map(|p| p.iter().map(|x| x.numer() * (&l / x.denom())).collect())
        .collect();
    (ints, Rational::new(BigInt::one(), l))
}

/// Reduced row-echelon form. Returns the nonzero reduced rows together
/// with their pivot columns, in column order.
pub fn rref(rows: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.iter().filter(|r| !r.iter().all(Zero::is_zero)).cloned().collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..ncols {
        let Some(pr) = (next_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(next_row, pr);
        let inv = m[next_row][col].clone().recip();
        for v in m[next_row].iter_mut() {
            if !v.is_zero() {
                *v = std::mem::replace(v, Rational::zero()) * &inv;
            }
        }
        let pivot_row = m[next_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == next_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        pivots.push(col);
        next_row += 1;
        if next_row == m.len() {
            break;
        }
    }
    m.truncate(next_row);
    (m, pivots)
}

/// Basis of the solution space of `rows * x = 0`, one primitive integer
/// vector per free column.
pub fn kernel_basis(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<BigInt>> {
    let (reduced, pivots) = rref(rows);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(primitive_integer_row(&v));
    }
    basis
}

/// Exact inverse of a square matrix; errors on singular input.
pub fn invert(m: &Matrix) -> Result<Matrix> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch("invert: matrix not square".into()));
    }
    let n = m.rows();
    let augmented: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    let (reduced, pivots) = rref(&augmented);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::Degenerate("invert: singular matrix".into()));
    }
    let rows: Vec<Vec<Rational>> = reduced.into_iter().map(|r| r[n..].to_vec()).collect();
    Matrix::from_rows(rows)
}

/// Parses a list of equally long rational vectors.
pub fn parse_vectors(rows: &[Vec<String>]) -> Result<Vec<Vec<Rational>>> {
    rows.iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect())
        .collect()
}
