use std::fmt;

use super::{vector, FieldSpec, Scalar, Subspace};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of a nilpotency test on a square matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Nilpotency {
    /// Smallest `k ≥ 1` with `m^k = 0`.
    Index(usize),
    NotNilpotent,
}

impl Nilpotency {
    pub fn is_nilpotent(&self) -> bool {
        matches!(self, Nilpotency::Index(_))
    }

    pub fn index(&self) -> Option<usize> {
        match self {
            Nilpotency::Index(k) => Some(*k),
            Nilpotency::NotNilpotent => None,
        }
    }
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch { expected: field, found: bad.field() });
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vector::zeros(field, rows * cols) }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row);
        }
        Matrix::new(field, n, cols, data)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: col.len() });
            }
            for (r, x) in col.iter().enumerate() {
                if x.field() != field {
                    return Err(Error::FieldMismatch { expected: field, found: x.field() });
                }
                m.data[r * m.cols + c] = x.clone();
            }
        }
        Ok(m)
    }

    /// Convenience constructor from integer entries.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows.iter().flat_map(|r| r.iter().map(|&v| field.from_i64(v))).collect();
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    fn check_field(&self, other: FieldSpec) -> Result<()> {
        if self.field != other {
            return Err(Error::FieldMismatch { expected: self.field, found: other });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other.field)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        Ok(Matrix { field: self.field, rows: self.rows, cols: self.cols, data: vector::add(&self.data, &other.data) })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { data: vector::scale(c, &self.data), ..self.clone() }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other.field)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            let acc = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                vector::axpy(acc, self.get(r, k), other.row(k));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        if let Some(x) = v.first() {
            self.check_field(x.field())?;
        }
        let mut out = vector::zeros(self.field, self.rows);
        for (r, o) in out.iter_mut().enumerate() {
            for (a, x) in self.row(r).iter().zip(v) {
                if !a.is_zero() && !x.is_zero() {
                    *o += &(a * x);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Unique reduced row-echelon form and rank.
    pub fn rref(&self) -> (Matrix, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place();
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Gauss–Jordan elimination; returns the rank. Pivot columns are the
    /// first nonzero entries of rows `0..rank`.
    fn rref_in_place(&mut self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(found) = (pivot_row..rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if found != pivot_row {
                for c in 0..cols {
                    self.data.swap(found * cols + c, pivot_row * cols + c);
                }
            }
            let inv = self.get(pivot_row, col).inv().expect("pivot is nonzero");
            for c in col..cols {
                let idx = pivot_row * cols + c;
                if !self.data[idx].is_zero() {
                    self.data[idx] = &self.data[idx] * &inv;
                }
            }
            let pivot: Vec<Scalar> = self.row(pivot_row).to_vec();
            for r in 0..rows {
                if r == pivot_row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                let factor = -factor;
                vector::axpy(&mut self.data[r * cols..(r + 1) * cols], &factor, &pivot);
            }
            pivot_row += 1;
        }
        pivot_row
    }

    /// Solution space `{v : self · v = 0}` in canonical form.
    pub fn kernel(&self) -> Subspace {
        let (r, rank) = self.rref();
        let pivots: Vec<usize> =
            (0..rank).map(|i| (0..self.cols).find(|&c| !r.get(i, c).is_zero()).expect("pivot row")).collect();
        let mut basis = Vec::with_capacity(self.cols - rank);
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vector::unit(self.field, self.cols, free);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free);
            }
            basis.push(v);
        }
        Subspace::span(self.field, self.cols, basis).expect("kernel vectors have matching shape")
    }

    /// Smallest `k` with `self^k = 0`. A nilpotent `n×n` matrix satisfies
    /// `self^n = 0`, so `n` multiplications decide the question.
    pub fn nilpotency_index(&self) -> Result<Nilpotency> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut power = self.clone();
        for k in 1..=n.max(1) {
            if power.is_zero() {
                return Ok(Nilpotency::Index(k));
            }
            if k < n {
                power = power.mul(self)?;
            }
        }
        Ok(Nilpotency::NotNilpotent)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.get(r, c).clone();
            }
            aug.data[r * 2 * n + n + r] = self.field.one();
        }
        let rank = aug.rref_in_place();
        if rank < n || (0..n).any(|i| !aug.get(i, i).is_one()) {
            return None;
        }
        let data = (0..n).flat_map(|r| aug.row(r)[n..].to_vec()).collect();
        Some(Matrix { field: self.field, rows: n, cols: n, data })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    #[test]
    fn rref_proportional_rows() {
        let (r, rank) = Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r, Matrix::from_i64(q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(rank, 1);
    }

    #[test]
    fn rref_identity_and_reduced() {
        let id = Matrix::identity(q(), 3);
        assert_eq!(id.rref(), (id.clone(), 3));
        let f2 = FieldSpec::prime(2).unwrap();
        let m = Matrix::from_i64(f2, &[&[0, 1], &[0, 0]]);
        assert_eq!(m.rref(), (m.clone(), 1));
    }

    #[test]
    fn rref_is_canonical_for_row_operations() {
        let a = Matrix::from_i64(q(), &[&[2, 4, 1], &[1, 1, 0], &[3, 5, 1]]);
        let b = Matrix::from_i64(q(), &[&[3, 5, 1], &[1, 3, 1], &[1, 1, 0]]);
        assert_eq!(a.rref(), b.rref());
    }

    #[test]
    fn kernel_examples() {
        let m = Matrix::from_i64(q(), &[&[0, 1], &[0, 0]]);
        let k = m.kernel();
        assert_eq!(k.basis(), &[vector::unit(q(), 2, 0)]);
        assert!(Matrix::identity(q(), 2).kernel().is_zero());
        assert_eq!(Matrix::zeros(q(), 2, 2).kernel(), Subspace::full(q(), 2));
    }

    #[test]
    fn nilpotency_examples() {
        let m = Matrix::from_i64(q(), &[&[0, 1], &[0, 0]]);
        assert_eq!(m.nilpotency_index().unwrap(), Nilpotency::Index(2));
        assert_eq!(Matrix::identity(q(), 2).nilpotency_index().unwrap(), Nilpotency::NotNilpotent);
        let j = Matrix::from_i64(q(), &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(j.nilpotency_index().unwrap(), Nilpotency::Index(3));
        assert_eq!(Matrix::zeros(q(), 3, 3).nilpotency_index().unwrap(), Nilpotency::Index(1));
        assert!(matches!(Matrix::zeros(q(), 2, 3).nilpotency_index(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(q(), &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(q(), 2));
        assert!(Matrix::from_i64(q(), &[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
