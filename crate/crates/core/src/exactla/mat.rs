//! Dense matrices over the rationals.
//!
//! Elimination is fraction-free: each row is first scaled to integers, then
//! Bareiss elimination runs over `BigInt` with the first nonzero entry of each
//! column (in row order) as pivot. Results are therefore reproducible bit for bit.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::scalar::{fmt_scalar, Scalar};
use super::LaError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Builds from row vectors; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LaError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LaError::Ragged);
        }
        Ok(Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds an `rows x cols.len()` matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<Scalar>]) -> Self {
        Mat::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        Mat::from_fn(rows, cols, |i, j| Scalar::from_integer(BigInt::from(vals[i * cols + j])))
    }

    pub fn column_vector(v: &[Scalar]) -> Self {
        Mat { rows: v.len(), cols: 1, data: v.to_vec() }
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Row-major flattening.
    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, k: &Scalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    /// Row-major Kronecker product: `(A⊗B)[(a·rB+b),(c·cB+d)] = A[a,c]·B[b,d]`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let (rb, cb) = other.shape();
        let mut out = Mat::zeros(self.rows * rb, self.cols * cb);
        for a in 0..self.rows {
            for c in 0..self.cols {
                let x = &self[(a, c)];
                if x.is_zero() {
                    continue;
                }
                for b in 0..rb {
                    for d in 0..cb {
                        let y = &other[(b, d)];
                        if !y.is_zero() {
                            out[(a * rb + b, c * cb + d)] = x * y;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hcat(&self, other: &Mat) -> Result<Mat, LaError> {
        if self.rows != other.rows {
            return Err(LaError::Shape { op: "hcat", left: self.shape(), right: other.shape() });
        }
        let c = self.cols + other.cols;
        Ok(Mat::from_fn(self.rows, c, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn vcat(&self, other: &Mat) -> Result<Mat, LaError> {
        if self.cols != other.cols {
            return Err(LaError::Shape { op: "vcat", left: self.shape(), right: other.shape() });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Mat { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "mul_vec shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat, LaError> {
        if self.cols != other.rows {
            return Err(LaError::Shape { op: "mul", left: self.shape(), right: other.shape() });
        }
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Mat {
        assert!(self.is_square());
        let mut out = Mat::identity(self.rows);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// First `(row, col)` where the two matrices differ, if any.
    pub fn first_difference(&self, other: &Mat) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols, k % self.cols))
    }

    /// Fraction-free row echelon form.
    pub fn echelon(&self) -> Echelon {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows).map(|i| integer_row(&self.row(i))).collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let (top, rest) = rows.split_at_mut(r + 1);
            let piv = &top[r];
            for row in rest.iter_mut() {
                let lead = row[c].clone();
                for j in c + 1..self.cols {
                    let v = &piv[c] * &row[j] - &lead * &piv[j];
                    row[j] = v / &prev;
                }
                row[c] = BigInt::zero();
            }
            prev = rows[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Echelon { cols: self.cols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column in increasing order,
    /// normalised so the free coordinate is 1.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        self.echelon().kernel()
    }

    /// Basis of the column space: the pivot columns of `A`.
    pub fn image(&self) -> Vec<Vec<Scalar>> {
        self.echelon().pivots.iter().map(|&j| self.col(j)).collect()
    }

    /// Some `X` with `A X = B`, free variables set to zero; `None` if inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>, LaError> {
        if self.rows != b.rows {
            return Err(LaError::Shape { op: "solve", left: self.shape(), right: b.shape() });
        }
        let ech = self.hcat(b)?.echelon();
        if ech.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.cols, b.cols);
        for k in 0..b.cols {
            let rhs_col = self.cols + k;
            for (r, &p) in ech.pivots.iter().enumerate().rev() {
                let row = &ech.rows[r];
                let mut acc = Scalar::from_integer(row[rhs_col].clone());
                for j in p + 1..self.cols {
                    if !row[j].is_zero() && !x[(j, k)].is_zero() {
                        acc -= Scalar::from_integer(row[j].clone()) * &x[(j, k)];
                    }
                }
                x[(p, k)] = acc / Scalar::from_integer(row[p].clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Mat, LaError> {
        if !self.is_square() {
            return Err(LaError::NotSquare(self.shape()));
        }
        if self.rank() < self.rows {
            return Err(LaError::Singular);
        }
        Ok(self.solve(&Mat::identity(self.rows))?.expect("full-rank system is consistent"))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(fmt_scalar).collect()).collect()
    }
}

/// Integer multiple of a rational row, scaled by the lcm of its denominators.
fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Integer row echelon form produced by [`Mat::echelon`].
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Scalar::zero(); self.cols];
                x[f] = Scalar::one();
                for (r, &p) in self.pivots.iter().enumerate().rev() {
                    let row = &self.rows[r];
                    let mut acc = Scalar::zero();
                    for j in p + 1..self.cols {
                        if !row[j].is_zero() && !x[j].is_zero() {
                            acc -= Scalar::from_integer(row[j].clone()) * &x[j];
                        }
                    }
                    x[p] = acc / Scalar::from_integer(row[p].clone());
                }
                x
            })
            .collect()
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of {}x{}", self.rows, self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "add shape");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!(self.shape(), rhs.shape(), "sub shape");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fmt_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// True when the two families span the same subspace.
pub fn same_span(a: &[Vec<Scalar>], b: &[Vec<Scalar>], dim: usize) -> bool {
    let ma = Mat::from_cols(dim, a);
    let mb = Mat::from_cols(dim, b);
    let ra = ma.rank();
    ra == mb.rank() && ma.hcat(&mb).map(|m| m.rank() == ra).unwrap_or(false)
}

/// True when `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let m = Mat::from_cols(v.len(), basis);
    let r = m.rank();
    m.hcat(&Mat::column_vector(v)).map(|x| x.rank() == r).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::scalar::{frac, int};

    fn m(r: usize, c: usize, v: &[i64]) -> Mat {
        Mat::from_i64(r, c, v)
    }

    #[test]
    fn product_and_kron() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(2, 2, &[0, 1, 1, 0]);
        assert_eq!(&a * &b, m(2, 2, &[2, 1, 4, 3]));
        let k = Mat::identity(2).kron(&b);
        assert_eq!(k, m(4, 4, &[0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0]));
    }

    #[test]
    fn rank_kernel_image() {
        let a = m(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]);
        assert_eq!(a.rank(), 2);
        let ker = a.kernel();
        assert_eq!(ker, vec![vec![int(-1), int(-1), int(1)]]);
        assert_eq!(a.image(), vec![a.col(0), a.col(1)]);
        assert!(Mat::zeros(2, 3).kernel().len() == 3);
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, m(2, 2, &[1, -1, -1, 2]));
        let h = Mat::from_fn(3, 3, |i, j| frac(1, (i + j + 1) as i64));
        let hi = h.inverse().unwrap();
        assert_eq!(hi, m(3, 3, &[9, -36, 30, -36, 192, -180, 30, -180, 180]));
        assert_eq!(&h * &hi, Mat::identity(3));
        let sing = m(2, 2, &[1, 2, 2, 4]);
        assert!(matches!(sing.inverse(), Err(LaError::Singular)));
        assert!(sing.solve(&m(2, 1, &[1, 1])).unwrap().is_none());
        let x = sing.solve(&m(2, 1, &[1, 2])).unwrap().unwrap();
        assert_eq!(&sing * &x, m(2, 1, &[1, 2]));
    }

    #[test]
    fn pivot_skips_zero_columns() {
        let a = m(3, 4, &[0, 2, 4, 1, 0, 1, 2, 0, 0, 0, 0, 3]);
        let e = a.echelon();
        assert_eq!(e.pivots, vec![1, 3]);
        for v in a.kernel() {
            assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn first_difference_reports_cell() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let mut b = a.clone();
        b[(1, 0)] = int(7);
        assert_eq!(a.first_difference(&b), Some((1, 0)));
        assert_eq!(a.first_difference(&a), None);
    }
}
