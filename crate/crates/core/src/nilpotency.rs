//! The series `D^1 = D`, `D^{n+1} = Σ_{i=1..n} D^i◊D^{n+1−i}`, single-product
//! powers, element nilpotency and the Engel-type decision procedure.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{DiassociativeAlgebra, Element, Op, Side};
use crate::error::{Error, Result};
use crate::exactlin::{vector, FieldKind, FieldSpec, Matrix, Nilpotency, Scalar, Subspace};
use crate::ideals::{lozenge, product_space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesOutcome {
    /// The last term is zero; `class` is the number of terms.
    Nilpotent { class: usize },
    /// The last two terms coincide and are nonzero.
    Stabilized,
    /// `max_steps` ran out before either of the above.
    Truncated,
}

/// The full chain of terms together with the decision it supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCertificate {
    pub terms: Vec<Subspace>,
    pub outcome: SeriesOutcome,
}

impl SeriesCertificate {
    pub fn is_nilpotent(&self) -> bool {
        matches!(self.outcome, SeriesOutcome::Nilpotent { .. })
    }

    pub fn class(&self) -> Option<usize> {
        match self.outcome {
            SeriesOutcome::Nilpotent { class } => Some(class),
            _ => None,
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
}

fn run_series(
    first: Subspace,
    max_steps: Option<usize>,
    mut next_term: impl FnMut(&[Subspace]) -> Result<Subspace>,
) -> Result<SeriesCertificate> {
    let mut terms = vec![first];
    loop {
        let last = terms.last().expect("series is never empty");
        if last.is_zero() {
            let class = terms.len();
            return Ok(SeriesCertificate { terms, outcome: SeriesOutcome::Nilpotent { class } });
        }
        if max_steps.is_some_and(|m| terms.len() >= m) {
            return Ok(SeriesCertificate { terms, outcome: SeriesOutcome::Truncated });
        }
        let next = next_term(&terms)?;
        let stable = &next == terms.last().expect("nonempty");
        terms.push(next);
        if stable {
            return Ok(SeriesCertificate { terms, outcome: SeriesOutcome::Stabilized });
        }
    }
}

/// Successive terms `D^{n+1} = D^1◊D^n + … + D^n◊D^1`, computed literally
/// with every cross term. Dimensions never increase, so without a cap the
/// chain reaches zero or repeats within `dim(D) + 2` terms.
pub fn dias_series(d: &DiassociativeAlgebra, max_steps: Option<usize>) -> Result<SeriesCertificate> {
    run_series(Subspace::full(d.field(), d.dim()), max_steps, |terms| {
        let n = terms.len();
        let mut acc = Subspace::zero(d.field(), d.dim());
        for i in 0..n {
            acc = acc.sum(&lozenge(d, &terms[i], &terms[n - 1 - i])?)?;
        }
        Ok(acc)
    })
}

/// Powers `A^1 = A`, `A^{i+1} = A ∗ A^i` of one product.
pub fn assoc_powers(d: &DiassociativeAlgebra, op: Op) -> Result<SeriesCertificate> {
    let full = Subspace::full(d.field(), d.dim());
    run_series(full.clone(), None, |terms| product_space(d, &full, terms.last().expect("nonempty"), op))
}

/// Smallest `k` with `x∗(x∗(⋯∗x)) = 0` (`k` factors). If `x` is nilpotent
/// with `x^k ≠ 0 = x^{k+1}` then `x, …, x^k` are linearly independent, so
/// `k ≤ dim` and checking powers up to `dim + 1` decides the question.
pub fn element_nilpotency_index(d: &DiassociativeAlgebra, x: &Element<'_>, op: Op) -> Result<Nilpotency> {
    if !std::ptr::eq(d, x.algebra()) {
        return Err(Error::Precondition("element belongs to a different algebra".into()));
    }
    Ok(power_nilpotency(d, x.coords(), op))
}

pub(crate) fn power_nilpotency(d: &DiassociativeAlgebra, x: &[Scalar], op: Op) -> Nilpotency {
    let mut power = x.to_vec();
    for k in 1..=d.dim() + 1 {
        if vector::is_zero(&power) {
            return Nilpotency::Index(k);
        }
        power = d.product_coords(op, x, &power);
    }
    Nilpotency::NotNilpotent
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EngelEvidence {
    /// Nilpotency index of λ^⊢_{e_i} for every basis element.
    Indices(Vec<usize>),
    /// First basis element whose λ^⊢ is not nilpotent, with that matrix.
    Failing { basis_index: usize, operator: Matrix },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngelReport {
    pub nilpotent: bool,
    pub evidence: EngelEvidence,
}

/// Decides nilpotency from the operators λ^⊢_{e_i} of the basis.
///
/// If every λ^⊢_{e_i} is nilpotent, each `e_i` is a nilpotent element of the
/// associative algebra `(D, ⊢)`; an associative algebra with a basis of
/// nilpotent elements is nilpotent, and nilpotency of `(D, ⊢)` forces
/// nilpotency of `D`. Conversely, if `D^m = 0` then every product of `m`
/// factors vanishes and λ^⊢_d is nilpotent for every `d`.
pub fn engel_criterion(d: &DiassociativeAlgebra) -> Result<EngelReport> {
    let mut indices = Vec::with_capacity(d.dim());
    for i in 0..d.dim() {
        let e = vector::unit(d.field(), d.dim(), i);
        let operator = d.operator_matrix(&e, Side::LeftMul, Op::Right)?;
        match operator.nilpotency_index()? {
            Nilpotency::Index(k) => indices.push(k),
            Nilpotency::NotNilpotent => {
                return Ok(EngelReport {
                    nilpotent: false,
                    evidence: EngelEvidence::Failing { basis_index: i, operator },
                })
            }
        }
    }
    Ok(EngelReport { nilpotent: true, evidence: EngelEvidence::Indices(indices) })
}

/// An element with a non-nilpotent multiplication operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorCounterexample {
    pub element: Vec<Scalar>,
    pub side: Side,
    pub op: Op,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSampleReport {
    pub trials: usize,
    pub operators_checked: usize,
    pub counterexamples: Vec<OperatorCounterexample>,
}

impl OperatorSampleReport {
    pub fn all_nilpotent(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Draws a reproducible pseudo-random element: integers in `[-3, 3]` over ℚ,
/// uniform residues over F_p.
pub fn random_vector(field: FieldSpec, n: usize, rng: &mut impl Rng) -> Vec<Scalar> {
    (0..n)
        .map(|_| match field.kind() {
            FieldKind::Rationals => field.from_i64(rng.gen_range(-3..=3)),
            FieldKind::PrimeField(p) => field.from_i64(rng.gen_range(0..p as i64)),
        })
        .collect()
}

/// For a nilpotent `D`, checks that λ^⊣_d, λ^⊢_d, ρ^⊣_d and ρ^⊢_d are
/// nilpotent for `trials` seeded random elements `d`.
pub fn operator_nilpotency_sample(d: &DiassociativeAlgebra, trials: usize, seed: u64) -> Result<OperatorSampleReport> {
    if !dias_series(d, None)?.is_nilpotent() {
        return Err(Error::Precondition("operator sampling requires a nilpotent algebra".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexamples = Vec::new();
    let mut checked = 0;
    for _ in 0..trials {
        let element = random_vector(d.field(), d.dim(), &mut rng);
        for op in Op::BOTH {
            for side in Side::BOTH {
                checked += 1;
                if !d.operator_matrix(&element, side, op)?.nilpotency_index()?.is_nilpotent() {
                    counterexamples.push(OperatorCounterexample { element: element.clone(), side, op });
                }
            }
        }
    }
    Ok(OperatorSampleReport { trials, operators_checked: checked, counterexamples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn e2_line() -> Subspace {
        Subspace::span(q(), 2, [vec![q().zero(), q().one()]]).unwrap()
    }

    #[test]
    fn series_of_d2b() {
        let cert = dias_series(&fixtures::d2b(), None).unwrap();
        assert_eq!(cert.terms, vec![Subspace::full(q(), 2), e2_line(), Subspace::zero(q(), 2)]);
        assert_eq!(cert.class(), Some(3));
    }

    #[test]
    fn series_trivial_cases() {
        let ab = dias_series(&DiassociativeAlgebra::abelian(q(), 3), None).unwrap();
        assert_eq!(ab.class(), Some(2));
        assert_eq!(ab.dims(), vec![3, 0]);
        let idem = dias_series(&fixtures::idempotent(q()), None).unwrap();
        assert_eq!(idem.outcome, SeriesOutcome::Stabilized);
        assert_eq!(idem.dims(), vec![1, 1]);
        let capped = dias_series(&fixtures::d2b(), Some(2)).unwrap();
        assert_eq!(capped.outcome, SeriesOutcome::Truncated);
        let empty = dias_series(&DiassociativeAlgebra::abelian(q(), 0), None).unwrap();
        assert_eq!(empty.class(), Some(1));
    }

    #[test]
    fn assoc_powers_examples() {
        let d = fixtures::d2b();
        let right = assoc_powers(&d, Op::Right).unwrap();
        assert_eq!(right.dims(), vec![2, 0]);
        let left = assoc_powers(&d, Op::Left).unwrap();
        assert_eq!(left.terms, vec![Subspace::full(q(), 2), e2_line(), Subspace::zero(q(), 2)]);
        assert!(!assoc_powers(&fixtures::idempotent(q()), Op::Left).unwrap().is_nilpotent());
    }

    #[test]
    fn element_indices() {
        let d = fixtures::d2b();
        let e1 = d.basis_element(0).unwrap();
        let e2 = d.basis_element(1).unwrap();
        assert_eq!(element_nilpotency_index(&d, &e1, Op::Left).unwrap(), Nilpotency::Index(3));
        assert_eq!(element_nilpotency_index(&d, &e2, Op::Left).unwrap(), Nilpotency::Index(2));
        let idem = fixtures::idempotent(q());
        let e = idem.basis_element(0).unwrap();
        assert_eq!(element_nilpotency_index(&idem, &e, Op::Right).unwrap(), Nilpotency::NotNilpotent);
        assert!(element_nilpotency_index(&idem, &e1, Op::Right).is_err());
    }

    #[test]
    fn engel_examples() {
        let r = engel_criterion(&fixtures::d2b()).unwrap();
        assert!(r.nilpotent);
        assert_eq!(r.evidence, EngelEvidence::Indices(vec![1, 1]));
        let r = engel_criterion(&fixtures::idempotent(q())).unwrap();
        assert!(!r.nilpotent);
        assert_eq!(r.evidence, EngelEvidence::Failing { basis_index: 0, operator: Matrix::identity(q(), 1) });
        assert!(engel_criterion(&DiassociativeAlgebra::abelian(q(), 2)).unwrap().nilpotent);
    }

    #[test]
    fn operator_sampling() {
        let r = operator_nilpotency_sample(&fixtures::d2b(), 100, 7).unwrap();
        assert!(r.all_nilpotent());
        assert_eq!(r.operators_checked, 400);
        let ab = DiassociativeAlgebra::abelian(q(), 2);
        assert!(operator_nilpotency_sample(&ab, 10, 0).unwrap().all_nilpotent());
        assert!(operator_nilpotency_sample(&fixtures::idempotent(q()), 1, 0).is_err());
    }

    #[test]
    fn non_nilpotent_fixture_disagrees_nowhere() {
        let t = fixtures::triangular_diagonal(q());
        assert!(!dias_series(&t, None).unwrap().is_nilpotent());
        assert!(!engel_criterion(&t).unwrap().nilpotent);
    }
}
