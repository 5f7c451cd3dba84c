//! Exact linear algebra over the rationals.
//!
//! Everything here is dense and uses `BigRational`; matrices in this crate
//! stay at a few hundred rows at most. Elimination always picks the first
//! nonzero entry in column order as pivot, so kernel bases and cohomology
//! representatives are reproducible across runs.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
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

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from small integers; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
            .expect("ragged integer matrix")
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Rational]) {
        assert_eq!(col.len(), self.rows);
        for (i, v) in col.iter().enumerate() {
            self[(i, j)] = v.clone();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn matmul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> RatMatrix {
        assert_eq!(self.rows, self.cols, "power of non-square matrix");
        let mut out = RatMatrix::identity(self.rows);
        for _ in 0..e {
            out = out.matmul(self);
        }
        out
    }

    /// Stack blocks `[[a, b], [c, d]]`; any block may be empty in one dimension.
    pub fn block2(a: &RatMatrix, b: &RatMatrix, c: &RatMatrix, d: &RatMatrix) -> RatMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut m = RatMatrix::zeros(a.rows + c.rows, a.cols + b.cols);
        m.paste(0, 0, a);
        m.paste(0, a.cols, b);
        m.paste(a.rows, 0, c);
        m.paste(a.rows, a.cols, d);
        m
    }

    pub fn paste(&mut self, r0: usize, c0: usize, block: &RatMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        m
    }

    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows);
        let mut m = RatMatrix::zeros(self.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols);
        let mut m = RatMatrix::zeros(self.rows + other.rows, self.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, 0, other);
        m
    }

    /// Largest absolute entry; zero for empty matrices.
    pub fn max_abs(&self) -> Rational {
        self.data
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "add shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "sub shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank by fraction-free forward elimination on primitive integer rows. The
/// smallest available entry is taken as pivot, which keeps coefficients short;
/// only the count leaves this function, so the pivot order is not observable.
pub fn rank(m: &RatMatrix) -> usize {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows).filter_map(|i| primitive_row(m.row(i))).collect();
    let mut r = 0;
    for c in 0..m.cols {
        let Some(p) = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].bits()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail.iter_mut().filter(|row| !row[c].is_zero()) {
            let g = pivot[c].gcd(&row[c]);
            let (a, b) = (&pivot[c] / &g, &row[c] / &g);
            for j in c..m.cols {
                row[j] = &row[j] * &a - &pivot[j] * &b;
            }
            make_primitive(row);
        }
        r += 1;
        rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    }
    r
}

/// The row scaled to coprime integers, or None if it is zero.
fn primitive_row(row: &[Rational]) -> Option<Vec<BigInt>> {
    if row.iter().all(Zero::is_zero) {
        return None;
    }
    let lcm = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(&mut out);
    Some(out)
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Basis of the null space. Each vector has a 1 in its free column and zeros
/// in the other free columns; the basis is ordered by free column.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let basis: Vec<Vec<Rational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols()];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            v
        })
        .collect();
    debug_assert_eq!(pivots.len() + basis.len(), m.cols(), "rank-nullity");
    basis
}

/// Linearly independent subset of the columns spanning the column space,
/// chosen greedily in column order.
pub fn column_space_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (_, pivots) = m.rref();
    pivots.into_iter().map(|c| m.column(c)).collect()
}

/// Some exact solution of `m x = b`, or `None` if the system is inconsistent.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != m.rows() {
        return Err(Error::Shape(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let aug = m.hstack(&RatMatrix::from_columns(m.rows(), &[b.to_vec()]));
    let (r, pivots) = aug.rref();
    if pivots.last() == Some(&m.cols()) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, m.cols())].clone();
    }
    Ok(Some(x))
}

/// Whether `v` lies in the column space of `m`.
pub fn in_column_space(m: &RatMatrix, v: &[Rational]) -> bool {
    if m.cols() == 0 {
        return v.iter().all(Zero::is_zero);
    }
    matches!(solve(m, v), Ok(Some(_)))
}

/// `dim span(big) - dim span(small)` after checking `span(small) ⊆ span(big)`.
pub fn quotient_dim(big: &RatMatrix, small: &RatMatrix) -> Result<usize> {
    if big.rows() != small.rows() {
        return Err(Error::Shape("quotient_dim: ambient dimensions differ".into()));
    }
    let rb = rank(big);
    let joint = rank(&big.hstack(small));
    if joint != rb {
        return Err(Error::NotASubspace);
    }
    Ok(rb - rank(small))
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rational], s: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * s).collect()
}

/// `acc += s * v`
pub fn axpy(acc: &mut [Rational], s: &Rational, v: &[Rational]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += s * x;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::identity(3)), 3);
        assert_eq!(rank(&RatMatrix::zeros(2, 3)), 0);
        assert_eq!(rank(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&RatMatrix::zeros(0, 4)), 0);
        assert_eq!(rank(&RatMatrix::zeros(3, 0)), 0);
    }

    #[test]
    fn rank_agrees_with_rref_pivots() {
        let mut seed = 7u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 7) as i64 - 3
        };
        for shape in 0..60 {
            let (rows, cols) = (1 + shape % 7, 1 + shape / 7 % 8);
            let mut m = RatMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    // sparse entries with small denominators, and a repeated row to force dependence
                    let v = next();
                    m[(i, j)] = if v.abs() > 1 { ratio(v, 1 + (i + j) as i64 % 3) } else { rat(0) };
                }
            }
            if rows > 2 {
                let copy: Vec<Rational> = m.row(0).iter().zip(m.row(1)).map(|(a, b)| a * rat(2) - b).collect();
                for (j, v) in copy.into_iter().enumerate() {
                    m[(rows - 1, j)] = v;
                }
            }
            assert_eq!(rank(&m), m.rref().1.len(), "{m:?}");
        }
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&RatMatrix::zeros(2, 3)).len(), 3);
        assert!(kernel_basis(&RatMatrix::identity(4)).is_empty());
        let k = kernel_basis(&RatMatrix::from_i64(&[&[1, 1, 0], &[0, 0, 1]]));
        assert_eq!(k, vec![vec![rat(-1), rat(1), rat(0)]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![rat(3), ratio(-1, 2)];
        assert_eq!(solve(&RatMatrix::identity(2), &b).unwrap(), Some(b.clone()));
        assert_eq!(solve(&RatMatrix::zeros(2, 2), &b).unwrap(), None);
        assert_eq!(
            solve(&RatMatrix::from_i64(&[&[2]]), &[rat(1)]).unwrap(),
            Some(vec![ratio(1, 2)])
        );
        assert!(solve(&RatMatrix::identity(2), &[rat(1)]).is_err());
    }

    #[test]
    fn quotient_examples() {
        let id = RatMatrix::identity(3);
        assert_eq!(quotient_dim(&id, &RatMatrix::zeros(3, 1)).unwrap(), 3);
        assert_eq!(quotient_dim(&id, &id).unwrap(), 0);
        let other = RatMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        assert_eq!(quotient_dim(&id, &other).unwrap(), 0);
        let line = RatMatrix::from_i64(&[&[1], &[0], &[0]]);
        let off = RatMatrix::from_i64(&[&[0], &[1], &[0]]);
        assert!(matches!(quotient_dim(&line, &off), Err(Error::NotASubspace)));
    }

    #[test]
    fn empty_shapes() {
        let m = RatMatrix::zeros(0, 3);
        assert_eq!(rank(&m), 0);
        assert_eq!(kernel_basis(&m).len(), 3);
        let m = RatMatrix::zeros(3, 0);
        assert!(kernel_basis(&m).is_empty());
        assert_eq!(solve(&m, &[rat(0), rat(0), rat(0)]).unwrap(), Some(vec![]));
    }
}
