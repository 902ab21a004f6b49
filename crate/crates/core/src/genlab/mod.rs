//! Instance generation, exhaustive enumeration over small prime fields,
//! mutation for negative tests, and the property-suite harness.
//!
//! Uniformly random tables almost never satisfy the axioms, so every random
//! mode goes through a construction that preserves them (graded supports
//! with per-entry rejection, split extensions, associative graded tables)
//! and is re-verified before it is returned.

mod enumerate;
mod suite;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{DiassociativeAlgebra, Op, Side, StructureTable};
use crate::error::{Error, Result};
use crate::exactlin::{vector, FieldKind, FieldSpec, Matrix, Scalar, Subspace};
use crate::fixtures;
use crate::ideals::{annihilator, dias_subspace, lozenge};
use crate::nilpotency::{dias_series, random_vector};
use crate::representation::{Representation, RepresentationData};

pub use enumerate::{enumerate_all, enumerate_all_with, enumerate_representations};
pub use suite::{
    associative_triangular_corpus, census_corpus, fingerprint, non_nilpotent_corpus, random_nilpotent_corpus,
    run_suite, standard_corpus, CorpusEntry, Counterexample, Suite, SuiteConfig, SuiteReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorMode {
    /// All products zero.
    Abelian,
    /// Sparse random constants with `e_i∗e_j ∈ span{e_k : k > max(i, j)}`,
    /// kept only while the axioms hold.
    GradedNilpotent,
    /// Iterated split extensions starting from an abelian algebra.
    SplitExtensionTower,
    /// ⊣ = ⊢, associative, strictly upper triangular support.
    AssociativeTriangular,
    /// The `seed`-th algebra (cyclically) of the exhaustive census.
    ExhaustiveEnumeration,
}

impl GeneratorMode {
    pub const ALL: [GeneratorMode; 5] = [
        GeneratorMode::Abelian,
        GeneratorMode::GradedNilpotent,
        GeneratorMode::SplitExtensionTower,
        GeneratorMode::AssociativeTriangular,
        GeneratorMode::ExhaustiveEnumeration,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorMode::Abelian => "abelian",
            GeneratorMode::GradedNilpotent => "graded",
            GeneratorMode::SplitExtensionTower => "tower",
            GeneratorMode::AssociativeTriangular => "triangular",
            GeneratorMode::ExhaustiveEnumeration => "exhaustive",
        }
    }
}

impl fmt::Display for GeneratorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Format(format!("unknown generator mode {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub field: FieldSpec,
    pub dim: usize,
    pub mode: GeneratorMode,
    pub seed: u64,
}

/// Attempts allowed for the initial random draw of a graded table.
const REJECTION_BUDGET: usize = 2000;

/// Builds one algebra; identical specs give identical algebras.
pub fn generate(spec: &GeneratorSpec) -> Result<DiassociativeAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (field, n) = (spec.field, spec.dim);
    let algebra = match spec.mode {
        GeneratorMode::Abelian => DiassociativeAlgebra::abelian(field, n),
        GeneratorMode::GradedNilpotent => {
            let table = graded_nilpotent(field, n, &mut rng).ok_or(Error::RejectionBudgetExhausted {
                attempts: REJECTION_BUDGET,
                next_seed: spec.seed.wrapping_add(1),
            })?;
            scramble_filtered(table, &mut rng)?
        }
        GeneratorMode::AssociativeTriangular => {
            scramble_filtered(associative_triangular(field, n, &mut rng), &mut rng)?
        }
        GeneratorMode::SplitExtensionTower => {
            let tower = split_extension_tower(field, n, &mut rng)?;
            scramble_filtered(tower.into_table(), &mut rng)?
        }
        GeneratorMode::ExhaustiveEnumeration => {
            let census = enumerate_all(field, n)?;
            let index = (spec.seed % census.len() as u64) as usize;
            census.into_iter().nth(index).expect("index reduced modulo the census size")
        }
    };
    if matches!(
        spec.mode,
        GeneratorMode::GradedNilpotent | GeneratorMode::SplitExtensionTower | GeneratorMode::AssociativeTriangular
    ) {
        debug_assert!(dias_series(&algebra, None).is_ok_and(|c| c.is_nilpotent()));
    }
    Ok(algebra)
}

/// Replaces one structure constant (0-based indices). The result is a raw
/// table and must be verified again.
pub fn mutate(d: &StructureTable, op: Op, i: usize, j: usize, k: usize, value: Scalar) -> Result<StructureTable> {
    let mut t = d.clone();
    t.set_coefficient(op, i, j, k, value)?;
    Ok(t)
}

/// Small nonzero coefficient: ±1, ±2 over ℚ, a nonzero residue over F_p.
fn nonzero_coefficient(field: FieldSpec, rng: &mut impl Rng) -> Scalar {
    match field.kind() {
        FieldKind::Rationals => field.from_i64(*[-2, -1, 1, 2].choose(rng).expect("nonempty")),
        FieldKind::PrimeField(p) => field.from_i64(rng.gen_range(1..p as i64)),
    }
}

/// Random slot `(op, i, j, k)` with `k > max(i, j)`; `None` for `n < 2`.
fn graded_slot(n: usize, rng: &mut impl Rng) -> Option<(Op, usize, usize, usize)> {
    if n < 2 {
        return None;
    }
    loop {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let low = i.max(j) + 1;
        if low < n {
            let op = if rng.gen_bool(0.5) { Op::Left } else { Op::Right };
            return Some((op, i, j, rng.gen_range(low..n)));
        }
    }
}

/// A random sparse graded table, then a round of single-entry additions
/// each kept only if the axioms still hold. `None` if the initial draw
/// never passes within the budget.
fn graded_nilpotent(field: FieldSpec, n: usize, rng: &mut impl Rng) -> Option<StructureTable> {
    let mut table = None;
    for _ in 0..REJECTION_BUDGET {
        let mut t = StructureTable::zeros(field, n);
        let entries = rng.gen_range(1..=n.max(1));
        for _ in 0..entries {
            if let Some((op, i, j, k)) = graded_slot(n, rng) {
                t.set_coefficient(op, i, j, k, nonzero_coefficient(field, rng)).expect("in range");
            }
        }
        if t.check_axioms().is_empty() {
            table = Some(t);
            break;
        }
    }
    let mut t = table?;
    for _ in 0..2 * n {
        let Some((op, i, j, k)) = graded_slot(n, rng) else { break };
        let old = t.coefficient(op, i, j, k).clone();
        let new = &old + &nonzero_coefficient(field, rng);
        t.set_coefficient(op, i, j, k, new).expect("in range");
        if !t.check_axioms().is_empty() {
            t.set_coefficient(op, i, j, k, old).expect("in range");
        }
    }
    Some(t)
}

/// Truncated polynomial algebra on a random prefix of the basis
/// (`e_i e_j = e_{i+j+1}`), enlarged by graded entries that keep the product
/// associative. Both products are equal.
fn associative_triangular(field: FieldSpec, n: usize, rng: &mut impl Rng) -> StructureTable {
    let mut t = StructureTable::zeros(field, n);
    let set = |t: &mut StructureTable, i, j, k, c: Scalar| {
        for op in Op::BOTH {
            t.set_coefficient(op, i, j, k, c.clone()).expect("in range");
        }
    };
    let prefix = rng.gen_range(0..=n);
    for i in 0..prefix {
        for j in 0..prefix {
            if i + j + 1 < prefix {
                set(&mut t, i, j, i + j + 1, field.one());
            }
        }
    }
    for _ in 0..3 * n {
        let Some((_, i, j, k)) = graded_slot(n, rng) else { break };
        let old = t.coefficient(Op::Left, i, j, k).clone();
        set(&mut t, i, j, k, &old + &nonzero_coefficient(field, rng));
        if t.associativity_witness(Op::Left).is_some() {
            set(&mut t, i, j, k, old);
        }
    }
    t
}

/// Lower unitriangular matrix with small integer entries below the diagonal.
fn lower_unipotent(field: FieldSpec, n: usize, rng: &mut impl Rng) -> Matrix {
    let rows = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| match r.cmp(&c) {
                    std::cmp::Ordering::Equal => field.one(),
                    std::cmp::Ordering::Greater => field.from_i64(rng.gen_range(-1..=1)),
                    std::cmp::Ordering::Less => field.zero(),
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(field, rows).expect("square")
}

/// Random invertible matrix: a product of lower and upper unitriangular
/// factors.
fn random_invertible(field: FieldSpec, n: usize, rng: &mut impl Rng) -> Matrix {
    let lower = lower_unipotent(field, n, rng);
    let upper = lower_unipotent(field, n, rng).transpose();
    lower.mul(&upper).expect("square")
}

/// Basis change by a lower unitriangular matrix. It fixes every span
/// `{e_k, …, e_n}`, so graded supports stay graded.
fn scramble_filtered(table: StructureTable, rng: &mut impl Rng) -> Result<DiassociativeAlgebra> {
    let p = lower_unipotent(table.field(), table.dim(), rng);
    table.change_basis(&p)?.verify()
}

/// Coordinates of `w ∈ I` with respect to the RREF basis of `I`.
fn coordinates_in(ideal: &Subspace, w: &[Scalar]) -> Vec<Scalar> {
    ideal.pivots().iter().map(|&p| w[p].clone()).collect()
}

/// `D` acting on an ideal `I` by restricting the regular actions.
pub fn ideal_representation(d: &DiassociativeAlgebra, ideal: &Subspace) -> Result<Representation> {
    let m = ideal.dim();
    let mut data = RepresentationData::zero(d.clone(), m);
    for i in 0..d.dim() {
        let e = vector::unit(d.field(), d.dim(), i);
        for (j, b) in ideal.basis().iter().enumerate() {
            for op in Op::BOTH {
                let images =
                    [(Side::LeftMul, d.product_coords(op, &e, b)), (Side::RightMul, d.product_coords(op, b, &e))];
                for (side, image) in images {
                    if !ideal.contains(&image)? {
                        return Err(Error::NotAnIdeal(format!("{} leaves the subspace", d.format_vector(&image))));
                    }
                    for (o, c) in coordinates_in(ideal, &image).into_iter().enumerate() {
                        let (a, b_) = match side {
                            Side::LeftMul => (i, j),
                            Side::RightMul => (j, i),
                        };
                        data.set_entry(side, op, a, b_, o, c)?;
                    }
                }
            }
        }
    }
    data.verify()
}

/// Representation on `F^m` whose four actions are `f_κ(d)·N` with `N² = 0`
/// and functionals `f_κ` vanishing on `D◊D`: every composite of two actions
/// and every action of a product is zero, so all identities hold.
pub fn square_zero_representation(d: &DiassociativeAlgebra, m: usize, rng: &mut impl Rng) -> Result<Representation> {
    let (field, n) = (d.field(), d.dim());
    let full = Subspace::full(field, n);
    let squares = lozenge(d, &full, &full)?;
    let functionals = if squares.is_zero() { Subspace::full(field, n) } else { squares.to_matrix().kernel() };
    let n_matrix = square_zero_matrix(field, m, rng);
    let mut data = RepresentationData::zero(d.clone(), m);
    for &(side, op) in &crate::representation::ACTIONS {
        let coeffs: Vec<Scalar> = functionals.basis().iter().map(|_| random_scalar(field, rng)).collect();
        let f = vector::combination(field, n, coeffs.iter().zip(functionals.basis().iter().map(Vec::as_slice)));
        for (i, fi) in f.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for j in 0..m {
                for o in 0..m {
                    let c = fi * n_matrix.get(o, j);
                    let (a, b) = match side {
                        Side::LeftMul => (i, j),
                        Side::RightMul => (j, i),
                    };
                    data.set_entry(side, op, a, b, o, c)?;
                }
            }
        }
    }
    data.verify()
}

fn random_scalar(field: FieldSpec, rng: &mut impl Rng) -> Scalar {
    random_vector(field, 1, rng).pop().expect("one entry")
}

/// Rank-one `u wᵀ` with `wᵀu = 0` (zero when `m < 2`).
fn square_zero_matrix(field: FieldSpec, m: usize, rng: &mut impl Rng) -> Matrix {
    if m < 2 {
        return Matrix::zeros(field, m, m);
    }
    let w = loop {
        let w = random_vector(field, m, rng);
        if !vector::is_zero(&w) {
            break w;
        }
    };
    let orth = Matrix::from_rows(field, vec![w.clone()]).expect("one row").kernel();
    let u = loop {
        let coeffs: Vec<Scalar> = orth.basis().iter().map(|_| random_scalar(field, rng)).collect();
        let u = vector::combination(field, m, coeffs.iter().zip(orth.basis().iter().map(Vec::as_slice)));
        if !vector::is_zero(&u) {
            break u;
        }
    };
    let data = u.iter().flat_map(|ui| w.iter().map(move |wj| ui * wj)).collect();
    Matrix::new(field, m, m, data).expect("m×m")
}

/// Starts from an abelian algebra of dimension 1 or 2 and repeatedly
/// adjoins `V` by a split extension until the dimension reaches `n`. Each
/// representation is the regular one, an ideal with the restricted regular
/// action, a square-zero one, or zero; all keep the algebra nilpotent.
pub fn split_extension_tower(field: FieldSpec, n: usize, rng: &mut impl Rng) -> Result<DiassociativeAlgebra> {
    let start = rng.gen_range(1..=n.clamp(1, 2)).min(n);
    let mut d = DiassociativeAlgebra::abelian(field, start);
    while d.dim() < n {
        let room = n - d.dim();
        let mut options: Vec<Representation> = Vec::new();
        if d.dim() <= room {
            options.push(Representation::regular(&d));
        }
        let full = Subspace::full(field, d.dim());
        let candidates = [lozenge(&d, &full, &full)?, dias_subspace(&d), annihilator(&d)];
        for ideal in candidates {
            if !ideal.is_zero() && ideal.dim() <= room {
                options.push(ideal_representation(&d, &ideal)?);
            }
        }
        if room >= 2 {
            let m = rng.gen_range(2..=room.min(3));
            options.push(square_zero_representation(&d, m, rng)?);
            options.push(square_zero_representation(&d, m, rng)?);
        }
        if options.is_empty() || rng.gen_bool(0.1) {
            options.push(Representation::zero(&d, rng.gen_range(1..=room.min(2))));
        }
        let rep = options.swap_remove(rng.gen_range(0..options.len()));
        d = rep.split_extension()?;
    }
    Ok(d)
}

/// A non-nilpotent algebra containing an idempotent: one of three small
/// non-nilpotent fixtures, optionally summed with a graded nilpotent algebra
/// and extended by a representation, then written in a random basis.
pub fn non_nilpotent_fixture(field: FieldSpec, seed: u64) -> Result<DiassociativeAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = match rng.gen_range(0..3) {
        0 => fixtures::idempotent(field),
        1 => fixtures::triangular_diagonal(field),
        _ => fixtures::matrix_units(field),
    };
    let mut table = base.into_table();
    if rng.gen_bool(0.5) {
        let extra = rng.gen_range(1..=3);
        let nil = graded_nilpotent(field, extra, &mut rng).unwrap_or_else(|| StructureTable::zeros(field, extra));
        table = table.direct_sum(&nil)?;
    }
    let mut algebra = table.verify()?;
    if algebra.dim() <= 3 && rng.gen_bool(0.5) {
        let rep = match rng.gen_range(0..3) {
            0 => Representation::regular(&algebra),
            1 => square_zero_representation(&algebra, 2, &mut rng)?,
            _ => Representation::zero(&algebra, 1),
        };
        algebra = rep.split_extension()?;
    }
    let p = random_invertible(field, algebra.dim(), &mut rng);
    let scrambled = algebra.into_table().change_basis(&p)?.verify()?;
    debug_assert!(!dias_series(&scrambled, None)?.is_nilpotent());
    Ok(scrambled)
}
