//! Structure-constant presentation of diassociative algebras.
//!
//! A table stores two `n×n×n` tensors, `left[i][j][k]` for `e_i ⊣ e_j` and
//! `right[i][j][k]` for `e_i ⊢ e_j`. All five identities are trilinear, so
//! checking them on the `n³` basis triples decides them on all of `D`.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::exactlin::{vector, FieldSpec, Matrix, Scalar, Subspace};
use crate::ideals;

/// One of the two products: `Left` is ⊣, `Right` is ⊢.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Left,
    Right,
}

impl Op {
    pub const BOTH: [Op; 2] = [Op::Left, Op::Right];

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Left => "⊣",
            Op::Right => "⊢",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Which multiplication operator: `LeftMul` is λ_d(x) = d∗x, `RightMul` is
/// ρ_d(x) = x∗d.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    LeftMul,
    RightMul,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::LeftMul, Side::RightMul];
}

/// An identity of the shape `(x a y) b z = x c (y d z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Axiom {
    pub id: u8,
    pub lhs_inner: Op,
    pub lhs_outer: Op,
    pub rhs_outer: Op,
    pub rhs_inner: Op,
}

impl Axiom {
    const fn new(id: u8, lhs_inner: Op, lhs_outer: Op, rhs_outer: Op, rhs_inner: Op) -> Self {
        Axiom { id, lhs_inner, lhs_outer, rhs_outer, rhs_inner }
    }

    pub fn by_id(id: u8) -> Option<Axiom> {
        AXIOMS.iter().copied().find(|a| a.id == id)
    }
}

/// The five diassociative identities, numbered 1–5.
pub const AXIOMS: [Axiom; 5] = [
    Axiom::new(1, Op::Right, Op::Right, Op::Right, Op::Right),
    Axiom::new(2, Op::Left, Op::Left, Op::Left, Op::Left),
    Axiom::new(3, Op::Left, Op::Right, Op::Right, Op::Right),
    Axiom::new(4, Op::Left, Op::Left, Op::Left, Op::Right),
    Axiom::new(5, Op::Right, Op::Left, Op::Right, Op::Left),
];

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x{}y){}z = x{}(y{}z)", self.lhs_inner, self.lhs_outer, self.rhs_outer, self.rhs_inner)
    }
}

/// A basis triple on which the two sides of an axiom differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// 0-based basis indices `(i, j, k)` for `(x, y, z) = (e_i, e_j, e_k)`.
    pub triple: (usize, usize, usize),
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(
            f,
            "axiom {} \"{}\" fails at (e{}, e{}, e{}): lhs {} != rhs {}",
            self.axiom.id,
            self.axiom,
            i + 1,
            j + 1,
            k + 1,
            fmt_coords(&self.lhs),
            fmt_coords(&self.rhs)
        )
    }
}

pub(crate) fn fmt_coords(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Raw structure constants, not yet known to satisfy the axioms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureTable {
    field: FieldSpec,
    dim: usize,
    left: Vec<Scalar>,
    right: Vec<Scalar>,
    basis_names: Option<Vec<String>>,
}

impl StructureTable {
    pub fn zeros(field: FieldSpec, dim: usize) -> Self {
        let zeros = vector::zeros(field, dim * dim * dim);
        StructureTable { field, dim, left: zeros.clone(), right: zeros, basis_names: None }
    }

    pub fn from_tensors(field: FieldSpec, dim: usize, left: Vec<Scalar>, right: Vec<Scalar>) -> Result<Self> {
        for t in [&left, &right] {
            if t.len() != dim * dim * dim {
                return Err(Error::DimensionMismatch { expected: dim * dim * dim, found: t.len() });
            }
            if let Some(bad) = t.iter().find(|s| s.field() != field) {
                return Err(Error::FieldMismatch { expected: field, found: bad.field() });
            }
        }
        Ok(StructureTable { field, dim, left, right, basis_names: None })
    }

    /// Builds a table from integer entries `(op, i, j, k, value)` with
    /// 0-based indices.
    pub fn from_entries(field: FieldSpec, dim: usize, entries: &[(Op, usize, usize, usize, i64)]) -> Result<Self> {
        let mut t = StructureTable::zeros(field, dim);
        for &(op, i, j, k, v) in entries {
            t.set_coefficient(op, i, j, k, field.from_i64(v))?;
        }
        Ok(t)
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: names.len() });
        }
        self.basis_names = Some(names);
        Ok(self)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> Option<&[String]> {
        self.basis_names.as_deref()
    }

    /// Display name of basis vector `i` (0-based); defaults to `e{i+1}`.
    pub fn basis_name(&self, i: usize) -> String {
        match &self.basis_names {
            Some(names) => names[i].clone(),
            None => format!("e{}", i + 1),
        }
    }

    pub fn tensor(&self, op: Op) -> &[Scalar] {
        match op {
            Op::Left => &self.left,
            Op::Right => &self.right,
        }
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim {
            return Err(Error::IndexOutOfRange { index: i, dim: self.dim });
        }
        Ok(())
    }

    pub fn coefficient(&self, op: Op, i: usize, j: usize, k: usize) -> &Scalar {
        &self.tensor(op)[self.index(i, j, k)]
    }

    pub fn set_coefficient(&mut self, op: Op, i: usize, j: usize, k: usize, value: Scalar) -> Result<()> {
        for idx in [i, j, k] {
            self.check_index(idx)?;
        }
        if value.field() != self.field {
            return Err(Error::FieldMismatch { expected: self.field, found: value.field() });
        }
        let idx = self.index(i, j, k);
        match op {
            Op::Left => self.left[idx] = value,
            Op::Right => self.right[idx] = value,
        }
        Ok(())
    }

    /// Coordinates of `e_i ∗ e_j`.
    pub fn basis_product(&self, op: Op, i: usize, j: usize) -> &[Scalar] {
        let start = self.index(i, j, 0);
        &self.tensor(op)[start..start + self.dim]
    }

    /// Bilinear extension of the table to coordinate vectors.
    pub fn multiply(&self, op: Op, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
            }
            if let Some(bad) = v.iter().find(|s| s.field() != self.field) {
                return Err(Error::FieldMismatch { expected: self.field, found: bad.field() });
            }
        }
        Ok(self.product_coords(op, x, y))
    }

    pub(crate) fn product_coords(&self, op: Op, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vector::zeros(self.field, self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                vector::axpy(&mut out, &(xi * yj), self.basis_product(op, i, j));
            }
        }
        out
    }

    /// `e_i ∗ v` for a coordinate vector `v`.
    fn basis_times(&self, op: Op, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vector::zeros(self.field, self.dim);
        for (j, c) in v.iter().enumerate() {
            vector::axpy(&mut out, c, self.basis_product(op, i, j));
        }
        out
    }

    /// `v ∗ e_k` for a coordinate vector `v`.
    fn times_basis(&self, op: Op, v: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut out = vector::zeros(self.field, self.dim);
        for (l, c) in v.iter().enumerate() {
            vector::axpy(&mut out, c, self.basis_product(op, l, k));
        }
        out
    }

    /// Matrix of λ_d (`side = LeftMul`) or ρ_d (`side = RightMul`) in the
    /// standard basis; column `j` is the image of `e_j`.
    pub fn operator_matrix(&self, d: &[Scalar], side: Side, op: Op) -> Result<Matrix> {
        if d.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: d.len() });
        }
        let n = self.dim;
        let mut m = vec![self.field.zero(); n * n];
        for j in 0..n {
            let mut col = vector::zeros(self.field, n);
            for (i, c) in d.iter().enumerate() {
                let image = match side {
                    Side::LeftMul => self.basis_product(op, i, j),
                    Side::RightMul => self.basis_product(op, j, i),
                };
                vector::axpy(&mut col, c, image);
            }
            for (r, x) in col.into_iter().enumerate() {
                m[r * n + j] = x;
            }
        }
        Matrix::new(self.field, n, n, m)
    }

    fn evaluate_axiom(&self, axiom: &Axiom, i: usize, j: usize, k: usize) -> (Vec<Scalar>, Vec<Scalar>) {
        let xy = self.basis_product(axiom.lhs_inner, i, j);
        let lhs = self.times_basis(axiom.lhs_outer, xy, k);
        let yz = self.basis_product(axiom.rhs_inner, j, k);
        let rhs = self.basis_times(axiom.rhs_outer, i, yz);
        (lhs, rhs)
    }

    /// All basis triples violating one of the five identities, ordered by
    /// axiom id and then lexicographically by triple.
    pub fn check_axioms(&self) -> Vec<AxiomViolation> {
        let n = self.dim;
        let mut out = Vec::new();
        for axiom in &AXIOMS {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let (lhs, rhs) = self.evaluate_axiom(axiom, i, j, k);
                        if lhs != rhs {
                            out.push(AxiomViolation { axiom: *axiom, triple: (i, j, k), lhs, rhs });
                        }
                    }
                }
            }
        }
        out
    }

    /// First basis triple where `(e_i e_j) e_k ≠ e_i (e_j e_k)` for one product.
    pub fn associativity_witness(&self, op: Op) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let axiom = Axiom::new(0, op, op, op, op);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (lhs, rhs) = self.evaluate_axiom(&axiom, i, j, k);
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn verify(self) -> Result<DiassociativeAlgebra> {
        let violations = self.check_axioms();
        if let Some(first) = violations.first() {
            return Err(Error::AxiomsViolated { count: violations.len(), first: first.to_string() });
        }
        Ok(DiassociativeAlgebra { table: self })
    }

    /// Transports the products to the basis given by the columns of `p`
    /// (`f_j = Σ_i p[i][j] e_i`). `p` must be invertible.
    pub fn change_basis(&self, p: &Matrix) -> Result<StructureTable> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.rows().max(p.cols()) });
        }
        let inv = p.inverse().ok_or_else(|| Error::Precondition("change of basis matrix is singular".into()))?;
        let columns: Vec<Vec<Scalar>> = (0..n).map(|j| p.column(j)).collect();
        let mut out = StructureTable::zeros(self.field, n);
        for op in Op::BOTH {
            for a in 0..n {
                for b in 0..n {
                    let prod = self.product_coords(op, &columns[a], &columns[b]);
                    let coords = inv.mul_vec(&prod)?;
                    for (c, x) in coords.into_iter().enumerate() {
                        out.set_coefficient(op, a, b, c, x)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Direct sum: `self` on the first `dim` coordinates, `other` on the rest,
    /// cross products zero.
    pub fn direct_sum(&self, other: &StructureTable) -> Result<StructureTable> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { expected: self.field, found: other.field });
        }
        let (n, m) = (self.dim, other.dim);
        let mut out = StructureTable::zeros(self.field, n + m);
        for op in Op::BOTH {
            for (src, offset) in [(self, 0), (other, n)] {
                let d = src.dim;
                for i in 0..d {
                    for j in 0..d {
                        for k in 0..d {
                            let c = src.coefficient(op, i, j, k);
                            if !c.is_zero() {
                                out.set_coefficient(op, i + offset, j + offset, k + offset, c.clone())?;
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// A structure table that satisfies all five diassociative identities.
/// Immutable; obtained from [`StructureTable::verify`] or a constructor that
/// guarantees the identities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiassociativeAlgebra {
    table: StructureTable,
}

impl Deref for DiassociativeAlgebra {
    type Target = StructureTable;

    fn deref(&self) -> &StructureTable {
        &self.table
    }
}

/// An element of a specific algebra. Binary operations reject elements that
/// belong to a different algebra value.
#[derive(Clone, Debug)]
pub struct Element<'a> {
    algebra: &'a DiassociativeAlgebra,
    coords: Vec<Scalar>,
}

impl PartialEq for Element<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.algebra, other.algebra) && self.coords == other.coords
    }
}

impl<'a> Element<'a> {
    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn algebra(&self) -> &'a DiassociativeAlgebra {
        self.algebra
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.coords)
    }

    fn same_algebra(&self, other: &Element<'_>) -> Result<()> {
        if !std::ptr::eq(self.algebra, other.algebra) {
            return Err(Error::Precondition("elements belong to different algebras".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element<'a>) -> Result<Element<'a>> {
        self.same_algebra(other)?;
        Ok(Element { algebra: self.algebra, coords: vector::add(&self.coords, &other.coords) })
    }

    pub fn scale(&self, c: &Scalar) -> Result<Element<'a>> {
        if c.field() != self.algebra.field() {
            return Err(Error::FieldMismatch { expected: self.algebra.field(), found: c.field() });
        }
        Ok(Element { algebra: self.algebra, coords: vector::scale(c, &self.coords) })
    }
}

impl fmt::Display for Element<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.algebra.format_vector(&self.coords))
    }
}

/// Result of [`DiassociativeAlgebra::quotient`].
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: DiassociativeAlgebra,
    /// `dim(D/I) × dim(D)` matrix of the projection.
    pub projection: Matrix,
    /// Indices of the standard basis vectors of `D` whose images form the
    /// basis of the quotient.
    pub complement: Vec<usize>,
}

impl DiassociativeAlgebra {
    /// The algebra with all products zero.
    pub fn abelian(field: FieldSpec, dim: usize) -> Self {
        DiassociativeAlgebra { table: StructureTable::zeros(field, dim) }
    }

    /// Embeds an associative product (`tensor[i][j][k]` for `e_i e_j`) as the
    /// diassociative algebra with ⊣ = ⊢.
    pub fn from_associative(field: FieldSpec, dim: usize, tensor: Vec<Scalar>) -> Result<Self> {
        let table = StructureTable::from_tensors(field, dim, tensor.clone(), tensor)?;
        if let Some(triple) = table.associativity_witness(Op::Left) {
            return Err(Error::NotAssociative(triple));
        }
        // Every identity reduces to associativity when both products agree.
        debug_assert!(table.check_axioms().is_empty());
        Ok(DiassociativeAlgebra { table })
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn into_table(self) -> StructureTable {
        self.table
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element<'_>> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: coords.len() });
        }
        if let Some(bad) = coords.iter().find(|s| s.field() != self.field()) {
            return Err(Error::FieldMismatch { expected: self.field(), found: bad.field() });
        }
        Ok(Element { algebra: self, coords })
    }

    pub fn basis_element(&self, i: usize) -> Result<Element<'_>> {
        self.check_index(i)?;
        Ok(Element { algebra: self, coords: vector::unit(self.field(), self.dim(), i) })
    }

    pub fn zero_element(&self) -> Element<'_> {
        Element { algebra: self, coords: vector::zeros(self.field(), self.dim()) }
    }

    fn owns(&self, x: &Element<'_>) -> Result<()> {
        if !std::ptr::eq(self, x.algebra) {
            return Err(Error::Precondition("element belongs to a different algebra".into()));
        }
        Ok(())
    }

    pub fn product<'a>(&'a self, x: &Element<'a>, y: &Element<'a>, op: Op) -> Result<Element<'a>> {
        self.owns(x)?;
        self.owns(y)?;
        Ok(Element { algebra: self, coords: self.product_coords(op, &x.coords, &y.coords) })
    }

    pub fn op_matrix(&self, d: &Element<'_>, side: Side, op: Op) -> Result<Matrix> {
        self.owns(d)?;
        self.operator_matrix(&d.coords, side, op)
    }

    /// True iff x⊣y = x⊢y for all x, y, i.e. the two tensors coincide.
    pub fn is_associative_dias(&self) -> bool {
        self.left == self.right
    }

    /// `D/I` on the coordinates complementary to the pivots of `I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        let report = ideals::is_ideal(self, ideal)?;
        if !report.is_ideal {
            let witness = report.witness.map(|w| w.to_string()).unwrap_or_default();
            return Err(Error::NotAnIdeal(witness));
        }
        let complement = ideal.complement_indices();
        let q = complement.len();
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let r = ideal.reduce(v).expect("shape checked by is_ideal");
            complement.iter().map(|&c| r[c].clone()).collect()
        };
        let mut table = StructureTable::zeros(self.field(), q);
        for op in Op::BOTH {
            for (a, &ca) in complement.iter().enumerate() {
                for (b, &cb) in complement.iter().enumerate() {
                    for (c, x) in project(self.basis_product(op, ca, cb)).into_iter().enumerate() {
                        table.set_coefficient(op, a, b, c, x)?;
                    }
                }
            }
        }
        if let Some(names) = self.basis_names() {
            table = table.with_basis_names(complement.iter().map(|&c| names[c].clone()).collect())?;
        }
        let columns: Vec<Vec<Scalar>> =
            (0..self.dim()).map(|j| project(&vector::unit(self.field(), self.dim(), j))).collect();
        let projection = Matrix::from_columns(self.field(), q, &columns)?;
        let algebra = table.verify()?;
        Ok(Quotient { algebra, projection, complement })
    }

    /// Human-readable linear combination of basis names.
    pub fn format_vector(&self, v: &[Scalar]) -> String {
        format_combination(&self.table, v)
    }
}

pub(crate) fn format_combination(table: &StructureTable, v: &[Scalar]) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let name = table.basis_name(i);
        let text = c.to_string();
        let (negative, magnitude) = match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, text),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if magnitude != "1" {
            out.push_str(&magnitude);
            out.push(' ');
        }
        out.push_str(&name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| q().from_i64(x)).collect()
    }

    #[test]
    fn axiom_display_matches_identities() {
        let shown: Vec<String> = AXIOMS.iter().map(ToString::to_string).collect();
        assert_eq!(
            shown,
            ["(x⊢y)⊢z = x⊢(y⊢z)", "(x⊣y)⊣z = x⊣(y⊣z)", "(x⊣y)⊢z = x⊢(y⊢z)", "(x⊣y)⊣z = x⊣(y⊢z)", "(x⊢y)⊣z = x⊢(y⊣z)",]
        );
    }

    #[test]
    fn d2b_products() {
        let d = fixtures::d2b();
        let e1 = d.basis_element(0).unwrap();
        let e2 = d.basis_element(1).unwrap();
        assert_eq!(d.product(&e1, &e1, Op::Left).unwrap(), e2);
        assert!(d.product(&e1, &e1, Op::Right).unwrap().is_zero());
        let s = e1.add(&e2).unwrap();
        assert_eq!(d.product(&s, &e1, Op::Left).unwrap(), e2);
    }

    #[test]
    fn cross_algebra_elements_rejected() {
        let d = fixtures::d2b();
        let other = fixtures::d2b();
        let x = d.basis_element(0).unwrap();
        let y = other.basis_element(0).unwrap();
        assert!(d.product(&x, &y, Op::Left).is_err());
        assert!(x.add(&y).is_err());
        assert!(d.op_matrix(&y, Side::LeftMul, Op::Left).is_err());
    }

    #[test]
    fn check_axioms_examples() {
        assert!(fixtures::d2b().check_axioms().is_empty());
        assert!(StructureTable::zeros(q(), 3).check_axioms().is_empty());
        let mut t = fixtures::d2b().into_table();
        t.set_coefficient(Op::Right, 1, 0, 0, q().one()).unwrap();
        let violations = t.check_axioms();
        assert!(violations.iter().any(|w| w.axiom.id == 3 && w.triple == (0, 0, 0)));
        let w = violations.iter().find(|w| w.axiom.id == 3 && w.triple == (0, 0, 0)).unwrap();
        assert_eq!(w.lhs, v(&[1, 0]));
        assert_eq!(w.rhs, v(&[0, 0]));
        assert!(t.verify().is_err());
    }

    #[test]
    fn associativity_of_dias() {
        assert!(!fixtures::d2b().is_associative_dias());
        assert!(DiassociativeAlgebra::abelian(q(), 2).is_associative_dias());
        assert!(fixtures::idempotent(q()).is_associative_dias());
    }

    #[test]
    fn from_associative_examples() {
        let idem = DiassociativeAlgebra::from_associative(q(), 1, v(&[1])).unwrap();
        assert!(idem.check_axioms().is_empty());
        let t = StructureTable::from_entries(q(), 2, &[(Op::Left, 0, 0, 0, 1), (Op::Left, 0, 1, 1, 1)]).unwrap();
        let alg = DiassociativeAlgebra::from_associative(q(), 2, t.tensor(Op::Left).to_vec());
        assert!(alg.is_ok());
        // e1e1 = e2, e1e2 = e1: (e1e1)e2 = e2e2 = 0 but e1(e1e2) = e1e1 = e2.
        let bad = StructureTable::from_entries(q(), 2, &[(Op::Left, 0, 0, 1, 1), (Op::Left, 0, 1, 0, 1)]).unwrap();
        let err = DiassociativeAlgebra::from_associative(q(), 2, bad.tensor(Op::Left).to_vec());
        assert!(matches!(err, Err(Error::NotAssociative(_))));
    }

    #[test]
    fn op_matrix_examples() {
        let d = fixtures::d2b();
        let e1 = d.basis_element(0).unwrap();
        let m = d.op_matrix(&e1, Side::LeftMul, Op::Left).unwrap();
        assert_eq!(m, Matrix::from_i64(q(), &[&[0, 0], &[1, 0]]));
        assert!(d.op_matrix(&e1, Side::LeftMul, Op::Right).unwrap().is_zero());
        let idem = fixtures::idempotent(q());
        let e = idem.basis_element(0).unwrap();
        assert_eq!(idem.op_matrix(&e, Side::LeftMul, Op::Right).unwrap(), Matrix::identity(q(), 1));
    }

    #[test]
    fn quotient_examples() {
        let d = fixtures::d2b();
        let i = Subspace::span(q(), 2, [v(&[0, 1])]).unwrap();
        let quot = d.quotient(&i).unwrap();
        assert_eq!(quot.algebra.dim(), 1);
        assert_eq!(quot.algebra, DiassociativeAlgebra::abelian(q(), 1));
        assert_eq!(quot.projection, Matrix::from_i64(q(), &[&[1, 0]]));
        let same = d.quotient(&Subspace::zero(q(), 2)).unwrap();
        assert_eq!(same.algebra, d);
        let not_ideal = Subspace::span(q(), 2, [v(&[1, 0])]).unwrap();
        assert!(matches!(d.quotient(&not_ideal), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn change_basis_round_trip() {
        let d = fixtures::d2b();
        let p = Matrix::from_i64(q(), &[&[1, 0], &[3, 1]]);
        let moved = d.change_basis(&p).unwrap();
        assert!(moved.check_axioms().is_empty());
        let back = moved.change_basis(&p.inverse().unwrap()).unwrap();
        assert_eq!(&back, d.table());
    }

    #[test]
    fn vector_formatting() {
        let d = fixtures::d2b();
        assert_eq!(d.format_vector(&v(&[1, -1])), "e1 - e2");
        assert_eq!(d.format_vector(&v(&[0, 2])), "2 e2");
        assert_eq!(d.format_vector(&v(&[0, 0])), "0");
        assert_eq!(d.format_vector(&v(&[-1, 0])), "-e1");
    }
}
