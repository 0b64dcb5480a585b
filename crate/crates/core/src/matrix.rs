//! Dense matrices over an exact field.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// The matrix unit `E_{jk}`.
    pub fn unit(field: Field, n: usize, j: usize, k: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        m.set(j, k, field.one());
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, field, data }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Positions of the nonzero entries, row-major.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k / self.cols, k % self.cols, x))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { data: self.data.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inverse().expect("nonzero pivot");
            for j in 0..m.cols {
                let x = m.get(row, j) * &inv;
                m.set(row, j, x);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in 0..m.cols {
                    let x = m.get(r, j) - &(&factor * m.get(row, j));
                    m.set(r, j, x);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = Matrix::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::DivisionByZero);
        }
        Ok(Matrix::from_fn(self.field, n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// `m = C R` with `C` the pivot columns of `m` and `R` the nonzero rows
    /// of its reduced echelon form.
    pub fn rank_factorization(&self) -> (Matrix, Matrix) {
        let (r, pivots) = self.rref();
        let k = pivots.len();
        let c = Matrix::from_fn(self.field, self.rows, k, |i, j| self.get(i, pivots[j]).clone());
        let rr = Matrix::from_fn(self.field, k, self.cols, |i, j| r.get(i, j).clone());
        (c, rr)
    }

    /// The group inverse `m♯ = C (RC)⁻² R`, or `(rank m, rank m²)` when
    /// `RC` is singular.
    pub fn group_inverse(&self) -> std::result::Result<Matrix, (usize, usize)> {
        assert!(self.is_square(), "group inverse of a non-square matrix");
        let (c, r) = self.rank_factorization();
        let rc = &r * &c;
        match rc.inverse() {
            Ok(inv) => {
                let inv2 = &inv * &inv;
                Ok(&(&c * &inv2) * &r)
            }
            Err(_) => {
                let sq = self * self;
                Err((c.cols, sq.rank()))
            }
        }
    }

    /// Rows as vectors of printed scalars.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.to_strings();
        let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            f.write_str("[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x:>width$}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("compatible dimensions")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("equal dimensions")
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("equal dimensions")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn rank_and_inverse() {
        let m = Matrix::from_i64(Q, &[&[1, 2], &[3, 4]]);
        assert_eq!(m.rank(), 2);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(Q, 2));
        let s = Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]);
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_err());
    }

    #[test]
    fn rank_factorization_reconstructs() {
        let m = Matrix::from_i64(Q, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let (c, r) = m.rank_factorization();
        assert_eq!(c.cols(), 2);
        assert_eq!(&c * &r, m);
    }

    #[test]
    fn group_inverse_examples() {
        let e11 = Matrix::unit(Q, 2, 0, 0);
        assert_eq!(e11.group_inverse().unwrap(), e11);
        let e12 = Matrix::unit(Q, 2, 0, 1);
        assert_eq!(e12.group_inverse(), Err((1, 0)));
        let d = Matrix::from_i64(Q, &[&[2, 0], &[0, 0]]);
        let half = Q.from_fraction(&1.into(), &2.into()).unwrap();
        let mut expect = Matrix::zeros(Q, 2, 2);
        expect.set(0, 0, half);
        assert_eq!(d.group_inverse().unwrap(), expect);
    }

    #[test]
    fn group_inverse_axioms_on_singular_matrix() {
        let a = Matrix::from_i64(Q, &[&[1, 1, 0], &[0, 0, 0], &[2, 0, 3]]);
        let b = a.group_inverse().unwrap();
        assert_eq!(&(&a * &b) * &a, a);
        assert_eq!(&(&b * &a) * &b, b);
        assert_eq!(&a * &b, &b * &a);
        let z = Matrix::zeros(Q, 3, 3);
        assert_eq!(z.group_inverse().unwrap(), z);
    }

    #[test]
    fn display() {
        let m = Matrix::from_i64(Q, &[&[1, -2], &[0, 10]]);
        assert_eq!(m.to_string(), "[ 1 -2]\n[ 0 10]");
    }
}
