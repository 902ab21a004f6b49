//! Small named algebras used throughout the tests and the CLI examples.

use crate::algebra::{DiassociativeAlgebra, Op, StructureTable};
use crate::exactlin::FieldSpec;

/// Two-dimensional algebra over ℚ with e1⊣e1 = e2 and every other basis
/// product zero.
pub fn d2b() -> DiassociativeAlgebra {
    d2b_over(FieldSpec::RATIONALS)
}

pub fn d2b_over(field: FieldSpec) -> DiassociativeAlgebra {
    StructureTable::from_entries(field, 2, &[(Op::Left, 0, 0, 1, 1)])
        .and_then(StructureTable::verify)
        .expect("D2b is diassociative")
}

/// The field itself: e1⊣e1 = e1⊢e1 = e1.
pub fn idempotent(field: FieldSpec) -> DiassociativeAlgebra {
    DiassociativeAlgebra::from_associative(field, 1, vec![field.one()]).expect("field is associative")
}

/// `End(F²)` with basis E11, E12, E21, E22 under composition.
pub fn matrix_units(field: FieldSpec) -> DiassociativeAlgebra {
    let idx = |r: usize, c: usize| 2 * r + c;
    let mut tensor = vec![field.zero(); 64];
    for (a, b, c, d) in index_quads() {
        if b == c {
            tensor[(idx(a, b) * 4 + idx(c, d)) * 4 + idx(a, d)] = field.one();
        }
    }
    DiassociativeAlgebra::from_associative(field, 4, tensor)
        .expect("matrix units are associative")
        .into_table()
        .with_basis_names(["E11", "E12", "E21", "E22"].map(String::from).to_vec())
        .and_then(StructureTable::verify)
        .expect("names fit")
}

fn index_quads() -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..16).map(|n| (n >> 3 & 1, n >> 2 & 1, n >> 1 & 1, n & 1))
}

/// Upper triangular 2×2 matrices `a E11 + b E12 + c E22` with
/// x⊣y = x·φ(y) and x⊢y = φ(x)·y, where φ keeps the diagonal. φ is an
/// idempotent homomorphism, which makes both products satisfy the five
/// identities. Not nilpotent (E11 is idempotent) and not associative.
pub fn triangular_diagonal(field: FieldSpec) -> DiassociativeAlgebra {
    // basis: 0 = E11, 1 = E12, 2 = E22
    // matrix products: E11E11 = E11, E11E12 = E12, E12E22 = E12, E22E22 = E22
    // φ(E11) = E11, φ(E12) = 0, φ(E22) = E22
    let entries = [
        // x ⊣ y = x φ(y)
        (Op::Left, 0, 0, 0, 1),
        (Op::Left, 1, 2, 1, 1),
        (Op::Left, 2, 2, 2, 1),
        // x ⊢ y = φ(x) y
        (Op::Right, 0, 0, 0, 1),
        (Op::Right, 0, 1, 1, 1),
        (Op::Right, 2, 2, 2, 1),
    ];
    StructureTable::from_entries(field, 3, &entries)
        .and_then(StructureTable::verify)
        .expect("idempotent-homomorphism construction is diassociative")
}
