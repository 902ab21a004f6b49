//! Subspace products, the lozenge, ideals, Dias(D), the annihilator and the
//! normalizer. Everything is computed from basis products; bilinearity makes
//! that sufficient.

use std::fmt;

use crate::algebra::{fmt_coords, DiassociativeAlgebra, Op, Side};
use crate::error::{Error, Result};
use crate::exactlin::{vector, Matrix, Scalar, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Escape {
    /// A product with `D` on one side leaves the subspace.
    NotClosed,
    /// A product of two subspace elements is nonzero.
    NotAbelian,
}

/// A product `left ∗ right` that breaks ideality or abelianness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EscapingProduct {
    pub kind: Escape,
    pub op: Op,
    pub left: Vec<Scalar>,
    pub right: Vec<Scalar>,
    pub product: Vec<Scalar>,
}

impl fmt::Display for EscapingProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            Escape::NotClosed => "leaves the subspace",
            Escape::NotAbelian => "is nonzero",
        };
        write!(
            f,
            "{} {} {} = {} {}",
            fmt_coords(&self.left),
            self.op,
            fmt_coords(&self.right),
            fmt_coords(&self.product),
            what
        )
    }
}

/// Outcome of [`is_ideal`]. `witness` is present exactly when one of the
/// flags is false; a closure failure is reported in preference to a nonzero
/// internal product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealReport {
    pub subspace: Subspace,
    pub is_ideal: bool,
    pub is_abelian: bool,
    pub witness: Option<EscapingProduct>,
}

fn check_ambient(d: &DiassociativeAlgebra, s: &Subspace) -> Result<()> {
    if s.field() != d.field() {
        return Err(Error::FieldMismatch { expected: d.field(), found: s.field() });
    }
    if s.ambient_dim() != d.dim() {
        return Err(Error::DimensionMismatch { expected: d.dim(), found: s.ambient_dim() });
    }
    Ok(())
}

fn basis_of_d(d: &DiassociativeAlgebra) -> Vec<Vec<Scalar>> {
    (0..d.dim()).map(|i| vector::unit(d.field(), d.dim(), i)).collect()
}

/// `U ∗ W = span{u ∗ w}` over basis vectors.
pub fn product_space(d: &DiassociativeAlgebra, u: &Subspace, w: &Subspace, op: Op) -> Result<Subspace> {
    check_ambient(d, u)?;
    check_ambient(d, w)?;
    let products = u
        .basis()
        .iter()
        .flat_map(|a| w.basis().iter().map(move |b| d.product_coords(op, a, b)))
        .filter(|p| !vector::is_zero(p));
    Subspace::span(d.field(), d.dim(), products)
}

/// `U◊W = U⊣W + U⊢W`.
pub fn lozenge(d: &DiassociativeAlgebra, u: &Subspace, w: &Subspace) -> Result<Subspace> {
    product_space(d, u, w, Op::Left)?.sum(&product_space(d, u, w, Op::Right)?)
}

/// `S⊣S ⊆ S` and `S⊢S ⊆ S`.
pub fn is_subalgebra(d: &DiassociativeAlgebra, s: &Subspace) -> Result<bool> {
    check_ambient(d, s)?;
    for op in Op::BOTH {
        for a in s.basis() {
            for b in s.basis() {
                if !s.contains(&d.product_coords(op, a, b))? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Two-sided ideal test for both products, plus whether `S◊S = 0`.
pub fn is_ideal(d: &DiassociativeAlgebra, s: &Subspace) -> Result<IdealReport> {
    check_ambient(d, s)?;
    let mut closure_witness = None;
    'outer: for op in Op::BOTH {
        for e in basis_of_d(d) {
            for v in s.basis() {
                for (left, right) in [(&e, v), (v, &e)] {
                    let p = d.product_coords(op, left, right);
                    if !s.contains(&p)? {
                        closure_witness = Some(EscapingProduct {
                            kind: Escape::NotClosed,
                            op,
                            left: left.clone(),
                            right: right.clone(),
                            product: p,
                        });
                        break 'outer;
                    }
                }
            }
        }
    }
    let mut abelian_witness = None;
    'abelian: for op in Op::BOTH {
        for a in s.basis() {
            for b in s.basis() {
                let p = d.product_coords(op, a, b);
                if !vector::is_zero(&p) {
                    abelian_witness = Some(EscapingProduct {
                        kind: Escape::NotAbelian,
                        op,
                        left: a.clone(),
                        right: b.clone(),
                        product: p,
                    });
                    break 'abelian;
                }
            }
        }
    }
    Ok(IdealReport {
        subspace: s.clone(),
        is_ideal: closure_witness.is_none(),
        is_abelian: abelian_witness.is_none(),
        witness: closure_witness.or(abelian_witness),
    })
}

/// Smallest ideal containing the generators: iterate
/// `S ↦ S + D⊣S + D⊢S + S⊣D + S⊢D` until the dimension stops growing.
pub fn ideal_closure(d: &DiassociativeAlgebra, generators: &[Vec<Scalar>]) -> Result<Subspace> {
    let mut current = Subspace::span(d.field(), d.dim(), generators.iter().cloned())?;
    let basis = basis_of_d(d);
    loop {
        let mut products = Vec::new();
        for op in Op::BOTH {
            for e in &basis {
                for v in current.basis() {
                    products.push(d.product_coords(op, e, v));
                    products.push(d.product_coords(op, v, e));
                }
            }
        }
        let next = current.extend(products)?;
        if next.dim() == current.dim() {
            return Ok(current);
        }
        current = next;
    }
}

/// Smallest subalgebra containing the generators.
pub fn subalgebra_closure(d: &DiassociativeAlgebra, generators: &[Vec<Scalar>]) -> Result<Subspace> {
    let mut current = Subspace::span(d.field(), d.dim(), generators.iter().cloned())?;
    loop {
        let mut products = Vec::new();
        for op in Op::BOTH {
            for a in current.basis() {
                for b in current.basis() {
                    products.push(d.product_coords(op, a, b));
                }
            }
        }
        let next = current.extend(products)?;
        if next.dim() == current.dim() {
            return Ok(current);
        }
        current = next;
    }
}

/// `Dias(D) = span{e_i⊣e_j − e_i⊢e_j}`.
pub fn dias_subspace(d: &DiassociativeAlgebra) -> Subspace {
    let n = d.dim();
    let diffs = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| vector::sub(d.basis_product(Op::Left, i, j), d.basis_product(Op::Right, i, j)))
        .filter(|v| !vector::is_zero(v));
    let dias = Subspace::span(d.field(), n, diffs).expect("shapes match the algebra");
    debug_assert!(is_ideal(d, &dias).is_ok_and(|r| r.is_ideal && r.is_abelian));
    dias
}

/// Elements killed by every product with `D`, on both sides and for both
/// products: the common kernel of the 4n multiplication operators of the
/// basis.
pub fn annihilator(d: &DiassociativeAlgebra) -> Subspace {
    if d.dim() == 0 {
        return Subspace::zero(d.field(), 0);
    }
    let stacked = stacked_operators(d, |e| {
        let mut blocks = Vec::with_capacity(4);
        for op in Op::BOTH {
            for side in Side::BOTH {
                blocks.push(d.operator_matrix(e, side, op).expect("basis vector shape"));
            }
        }
        blocks
    });
    stacked.kernel()
}

fn stacked_operators(d: &DiassociativeAlgebra, blocks_for: impl Fn(&[Scalar]) -> Vec<Matrix>) -> Matrix {
    let n = d.dim();
    let mut rows = Vec::new();
    for e in basis_of_d(d) {
        for block in blocks_for(&e) {
            for r in 0..block.rows() {
                rows.push(block.row(r).to_vec());
            }
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(d.field(), 0, n);
    }
    Matrix::from_rows(d.field(), rows).expect("blocks share column count")
}

/// `N(K) = {a : aK ⊆ K, Ka ⊆ K}` for an associative algebra (⊣ = ⊢) and a
/// subalgebra `K`. Computed as the kernel of
/// `a ↦ (a·k_j mod K, k_j·a mod K)` over the basis `k_j` of `K`.
pub fn normalizer(d: &DiassociativeAlgebra, k: &Subspace) -> Result<Subspace> {
    check_ambient(d, k)?;
    if !d.is_associative_dias() {
        return Err(Error::Precondition("normalizer is only defined for associative algebras".into()));
    }
    if !is_subalgebra(d, k)? {
        return Err(Error::Precondition("K is not a subalgebra".into()));
    }
    let n = d.dim();
    if k.is_zero() || n == 0 {
        return Ok(Subspace::full(d.field(), n));
    }
    let mut columns = Vec::with_capacity(n);
    for e in basis_of_d(d) {
        let mut col = Vec::with_capacity(2 * n * k.dim());
        for kj in k.basis() {
            col.extend(k.reduce(&d.product_coords(Op::Left, &e, kj))?);
            col.extend(k.reduce(&d.product_coords(Op::Left, kj, &e))?);
        }
        columns.push(col);
    }
    let rows = columns[0].len();
    Ok(Matrix::from_columns(d.field(), rows, &columns)?.kernel())
}
