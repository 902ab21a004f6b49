use std::fmt;

use super::{vector, FieldSpec, Matrix, Scalar};
use crate::error::{Error, Result};

/// A subspace of `F^n`, stored by its reduced row-echelon basis so that
/// equality of subspaces is equality of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace { field, ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: (0..ambient_dim).map(|i| vector::unit(field, ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Result<Self> {
        let mut data = Vec::new();
        let mut rows = 0;
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.len() });
            }
            data.extend(v);
            rows += 1;
        }
        let m = Matrix::new(field, rows, ambient_dim, data)?;
        Ok(Self::from_row_space(&m))
    }

    /// Row space of `m`.
    pub fn from_row_space(m: &Matrix) -> Self {
        let (r, rank) = m.rref();
        let basis: Vec<Vec<Scalar>> = (0..rank).map(|i| r.row(i).to_vec()).collect();
        let pivots = basis.iter().map(|row| row.iter().position(|x| !x.is_zero()).expect("nonzero rref row")).collect();
        Subspace { field: m.field(), ambient_dim: m.cols(), basis, pivots }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical (RREF) basis rows.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Pivot column of each basis row, increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots, increasing; the standard basis
    /// vectors at these indices complete the canonical basis to `F^n`.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|i| !self.pivots.contains(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { expected: self.field, found: other.field });
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        Ok(())
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        if let Some(bad) = v.iter().find(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch { expected: self.field, found: bad.field() });
        }
        Ok(())
    }

    /// Residual of `v` after eliminating the pivot coordinates. Zero iff
    /// `v` lies in the subspace; linear in `v`.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_vector(v)?;
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = -&r[p];
            vector::axpy(&mut r, &c, row);
        }
        Ok(r)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(vector::is_zero(&self.reduce(v)?))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for v in &self.basis {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        Subspace::span(self.field, self.ambient_dim, self.basis.iter().chain(&other.basis).cloned())
    }

    /// Adds vectors to the span.
    pub fn extend(&self, vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Result<Subspace> {
        let mut new = Vec::new();
        for v in vectors {
            if !self.contains(&v)? {
                new.push(v);
            }
        }
        if new.is_empty() {
            return Ok(self.clone());
        }
        Subspace::span(self.field, self.ambient_dim, self.basis.iter().cloned().chain(new))
    }

    /// `A ∩ B` from the kernel of `[A^T | −B^T]`: a kernel vector `(x, y)`
    /// gives `Σ x_i a_i = Σ y_j b_j`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(self.field, self.ambient_dim));
        }
        let columns: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|v| vector::scale(&-self.field.one(), v)))
            .collect();
        let stacked = Matrix::from_columns(self.field, self.ambient_dim, &columns)?;
        let kernel = stacked.kernel();
        let vectors = kernel.basis().iter().map(|coeffs| {
            vector::combination(
                self.field,
                self.ambient_dim,
                coeffs[..a].iter().zip(self.basis.iter().map(Vec::as_slice)),
            )
        });
        Subspace::span(self.field, self.ambient_dim, vectors)
    }

    /// Matrix with the canonical basis as rows.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::new(self.field, self.dim(), self.ambient_dim, self.basis.iter().flatten().cloned().collect())
            .expect("basis shape")
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|v| {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                format!("({})", parts.join(", "))
            })
            .collect();
        write!(f, "span{{{}}}", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| q().from_i64(x)).collect()
    }

    #[test]
    fn span_examples() {
        assert_eq!(Subspace::span(q(), 2, [v(&[1, 0]), v(&[1, 1])]).unwrap(), Subspace::full(q(), 2));
        let a = Subspace::span(q(), 2, [v(&[1, 0])]).unwrap();
        let b = Subspace::span(q(), 2, [v(&[0, 1])]).unwrap();
        assert!(a.intersect(&b).unwrap().is_zero());
        let diag = Subspace::span(q(), 2, [v(&[1, 1])]).unwrap();
        assert_eq!(Subspace::full(q(), 2).intersect(&diag).unwrap(), diag);
    }

    #[test]
    fn canonical_basis_is_unique() {
        let a = Subspace::span(q(), 3, [v(&[2, 4, 0]), v(&[0, 3, 3])]).unwrap();
        let b = Subspace::span(q(), 3, [v(&[1, 5, 3]), v(&[1, -1, -3])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.pivots(), &[0, 1]);
        assert_eq!(a.complement_indices(), vec![2]);
    }

    #[test]
    fn contains_and_reduce() {
        let a = Subspace::span(q(), 3, [v(&[1, 1, 0])]).unwrap();
        assert!(a.contains(&v(&[3, 3, 0])).unwrap());
        assert!(!a.contains(&v(&[1, 0, 0])).unwrap());
        assert_eq!(a.reduce(&v(&[1, 0, 0])).unwrap(), v(&[0, -1, 0]));
        assert!(a.contains(&v(&[1, 0])).is_err());
    }

    #[test]
    fn mismatches_are_errors() {
        let a = Subspace::zero(q(), 2);
        let b = Subspace::zero(q(), 3);
        assert!(a.sum(&b).is_err());
        let c = Subspace::zero(FieldSpec::prime(2).unwrap(), 2);
        assert!(matches!(a.intersect(&c), Err(Error::FieldMismatch { .. })));
    }
}
