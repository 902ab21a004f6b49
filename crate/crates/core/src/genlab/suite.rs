//! Corpora and the property-suite harness.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use super::enumerate::with_workers;
use super::{
    enumerate_all_with, enumerate_representations, generate, ideal_representation, non_nilpotent_fixture,
    square_zero_representation, GeneratorMode, GeneratorSpec,
};
use crate::algebra::{DiassociativeAlgebra, Op, Side};
use crate::error::{Error, Result};
use crate::exactlin::{vector, FieldSpec, Nilpotency, Subspace};
use crate::format::{write_algebra, AlgebraFile, RepFile};
use crate::ideals::{annihilator, dias_subspace, is_ideal, lozenge, normalizer, subalgebra_closure};
use crate::nilpotency::{
    assoc_powers, dias_series, engel_criterion, operator_nilpotency_sample, power_nilpotency, random_vector,
};
use crate::representation::{DichotomyBranch, Irreducibility, Representation, RepresentationData, ACTIONS};

/// The executable properties. Each is evaluated independently on every
/// corpus instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    /// `Dias(D)` is an abelian ideal and `D/Dias(D)` is associative.
    DiasIdeal,
    /// Basis-operator criterion agrees with the series.
    EngelEquivalence,
    /// A nilpotent single product forces a nilpotent algebra.
    SingleProductNilpotency,
    /// A nilpotent quotient by the annihilator forces a nilpotent algebra.
    CentralQuotient,
    /// Associative with nilpotent basis elements implies nilpotent.
    NilpotentBasis,
    /// `x^k = 0` implies `λ_x^k = 0` for each product.
    NilpotentMultiplication,
    /// Nilpotent algebras have a common null vector in their representations
    /// and nilpotent multiplication operators.
    CommonNullVector,
    /// Irreducible representations over small fields fall in one of the two
    /// branches with associative quotient.
    IrreducibleDichotomy,
    /// Proper subalgebras of nilpotent associative algebras grow under the
    /// normalizer.
    NormalizerGrowth,
    /// A split extension satisfies the axioms iff the representation
    /// satisfies the identities.
    SplitExtIff,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::DiasIdeal,
        Suite::EngelEquivalence,
        Suite::SingleProductNilpotency,
        Suite::CentralQuotient,
        Suite::NilpotentBasis,
        Suite::NilpotentMultiplication,
        Suite::CommonNullVector,
        Suite::IrreducibleDichotomy,
        Suite::NormalizerGrowth,
        Suite::SplitExtIff,
    ];

    /// Name used in reports and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Suite::DiasIdeal => "dias-ideal",
            Suite::EngelEquivalence => "engel",
            Suite::SingleProductNilpotency => "single-product",
            Suite::CentralQuotient => "central-quotient",
            Suite::NilpotentBasis => "nilpotent-basis",
            Suite::NilpotentMultiplication => "nilpotent-multiplication",
            Suite::CommonNullVector => "null-vector",
            Suite::IrreducibleDichotomy => "dichotomy",
            Suite::NormalizerGrowth => "normalizer-growth",
            Suite::SplitExtIff => "split-extension",
        }
    }

    /// Alternate short label, also accepted when parsing.
    pub fn label(self) -> &'static str {
        match self {
            Suite::DiasIdeal => "Lemma3.1",
            Suite::EngelEquivalence => "Cor3.4",
            Suite::SingleProductNilpotency => "Basri",
            Suite::CentralQuotient => "Lemma2.2",
            Suite::NilpotentBasis => "Thm2.1",
            Suite::NilpotentMultiplication => "Thm2.3",
            Suite::CommonNullVector => "Thm3.3",
            Suite::IrreducibleDichotomy => "Thm3.2",
            Suite::NormalizerGrowth => "NormalizerGrowth",
            Suite::SplitExtIff => "SplitExtIff",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s || x.label() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            Error::Format(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random elements per instance for the sampling checks.
    pub trials: usize,
    /// Largest `dim V` enumerated for the dichotomy.
    pub rep_dim_max: usize,
    pub workers: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, trials: 100, rep_dim_max: 2, workers: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub algebra: DiassociativeAlgebra,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, algebra: DiassociativeAlgebra) -> Self {
        CorpusEntry { name: name.into(), algebra }
    }
}

/// A failing instance with everything needed to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub instance: String,
    pub algebra: AlgebraFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepFile>,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub corpus_fingerprint: String,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    /// Instances outside the property's hypotheses.
    pub skipped: usize,
    /// Individual checks performed (operators, representations, pairs, …).
    pub checks: usize,
    /// Named tallies, e.g. how often a hypothesis actually held.
    pub counters: BTreeMap<String, usize>,
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn is_success(&self) -> bool {
        self.failed == 0
    }

    pub fn counter(&self, name: &str) -> usize {
        self.counters.get(name).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        crate::format::to_text(&serde_json::to_value(self).expect("serializable"))
    }
}

/// SHA-256 over the names and canonical texts of the entries, in order.
pub fn fingerprint(corpus: &[CorpusEntry]) -> String {
    let mut h = Sha256::new();
    for e in corpus {
        h.update(e.name.as_bytes());
        h.update(b"\n");
        h.update(write_algebra(e.algebra.table()).as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skip,
}

struct Outcome {
    status: Status,
    checks: usize,
    counters: Vec<(&'static str, usize)>,
    failure: Option<(String, Option<RepFile>)>,
}

impl Outcome {
    fn pass(checks: usize) -> Self {
        Outcome { status: Status::Pass, checks, counters: Vec::new(), failure: None }
    }

    fn skip() -> Self {
        Outcome { status: Status::Skip, checks: 0, counters: Vec::new(), failure: None }
    }

    fn fail(witness: impl Into<String>) -> Self {
        Outcome { status: Status::Fail, checks: 1, counters: Vec::new(), failure: Some((witness.into(), None)) }
    }

    fn fail_rep(witness: impl Into<String>, rep: &RepresentationData) -> Self {
        Outcome {
            status: Status::Fail,
            checks: 1,
            counters: Vec::new(),
            failure: Some((witness.into(), Some(RepFile::from_rep(rep)))),
        }
    }

    fn count(mut self, name: &'static str, n: usize) -> Self {
        if n > 0 {
            self.counters.push((name, n));
        }
        self
    }
}

fn entry_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64)
}

/// Evaluates `suite` on every instance; the report does not depend on the
/// number of workers.
pub fn run_suite(corpus: &[CorpusEntry], suite: Suite, config: &SuiteConfig) -> SuiteReport {
    let outcomes: Vec<Outcome> = with_workers(config.workers, || {
        corpus
            .par_iter()
            .enumerate()
            .map(|(i, e)| {
                evaluate(suite, &e.algebra, entry_seed(config.seed, i), config)
                    .unwrap_or_else(|err| Outcome::fail(format!("error: {err}")))
            })
            .collect()
    });
    let mut report = SuiteReport {
        suite: suite.name().to_string(),
        seed: config.seed,
        corpus_fingerprint: fingerprint(corpus),
        instances: corpus.len(),
        passed: 0,
        failed: 0,
        skipped: 0,
        checks: 0,
        counters: BTreeMap::new(),
        counterexamples: Vec::new(),
    };
    for (entry, outcome) in corpus.iter().zip(outcomes) {
        match outcome.status {
            Status::Pass => report.passed += 1,
            Status::Fail => report.failed += 1,
            Status::Skip => report.skipped += 1,
        }
        report.checks += outcome.checks;
        for (name, n) in outcome.counters {
            *report.counters.entry(name.to_string()).or_default() += n;
        }
        if let Some((witness, representation)) = outcome.failure {
            report.counterexamples.push(Counterexample {
                instance: entry.name.clone(),
                algebra: AlgebraFile::from_table(entry.algebra.table()),
                representation,
                witness,
            });
        }
    }
    report
}

fn evaluate(suite: Suite, d: &DiassociativeAlgebra, seed: u64, config: &SuiteConfig) -> Result<Outcome> {
    match suite {
        Suite::DiasIdeal => dias_ideal(d),
        Suite::EngelEquivalence => engel_equivalence(d),
        Suite::SingleProductNilpotency => single_product(d),
        Suite::CentralQuotient => central_quotient(d),
        Suite::NilpotentBasis => nilpotent_basis(d),
        Suite::NilpotentMultiplication => nilpotent_multiplication(d, seed, config.trials.min(10)),
        Suite::CommonNullVector => common_null_vector(d, seed, config.trials),
        Suite::IrreducibleDichotomy => irreducible_dichotomy(d, config.rep_dim_max),
        Suite::NormalizerGrowth => normalizer_growth(d, seed),
        Suite::SplitExtIff => split_ext_iff(d, seed),
    }
}

fn dias_ideal(d: &DiassociativeAlgebra) -> Result<Outcome> {
    let dias = dias_subspace(d);
    let report = is_ideal(d, &dias)?;
    if !(report.is_ideal && report.is_abelian) {
        let w = report.witness.map(|w| w.to_string()).unwrap_or_default();
        return Ok(Outcome::fail(format!("Dias(D) = {dias}: {w}")));
    }
    let q = d.quotient(&dias)?;
    if !q.algebra.is_associative_dias() {
        return Ok(Outcome::fail(format!("D/Dias(D) has ⊣ ≠ ⊢ (Dias(D) = {dias})")));
    }
    Ok(Outcome::pass(2).count("nonzero_dias", usize::from(!dias.is_zero())))
}

fn engel_equivalence(d: &DiassociativeAlgebra) -> Result<Outcome> {
    let series = dias_series(d, None)?;
    let engel = engel_criterion(d)?;
    if series.is_nilpotent() != engel.nilpotent {
        return Ok(Outcome::fail(format!(
            "series dims {:?} ({:?}) but basis operators say nilpotent = {} ({:?})",
            series.dims(),
            series.outcome,
            engel.nilpotent,
            engel.evidence
        )));
    }
    let tag = if engel.nilpotent { "nilpotent" } else { "not_nilpotent" };
    Ok(Outcome::pass(1).count(tag, 1))
}

fn single_product(d: &DiassociativeAlgebra) -> Result<Outcome> {
    let nilpotent = dias_series(d, None)?.is_nilpotent();
    let mut out = Outcome::pass(2);
    for (op, tag) in [(Op::Left, "left_powers_nilpotent"), (Op::Right, "right_powers_nilpotent")] {
        let powers = assoc_powers(d, op)?;
        if powers.is_nilpotent() {
            if !nilpotent {
                return Ok(Outcome::fail(format!(
                    "{} powers vanish (dims {:?}) but the series does not",
                    op.symbol(),
                    powers.dims()
                )));
            }
            out = out.count(tag, 1);
        }
    }
    Ok(out)
}

fn central_quotient(d: &DiassociativeAlgebra) -> Result<Outcome> {
    let z = annihilator(d);
    let q = d.quotient(&z)?;
    if !dias_series(&q.algebra, None)?.is_nilpotent() {
        return Ok(Outcome::pass(1));
    }
    if !dias_series(d, None)?.is_nilpotent() {
        return Ok(Outcome::fail(format!("D/Z(D) is nilpotent but D is not (Z(D) = {z})")));
    }
    Ok(Outcome::pass(1).count("quotient_nilpotent", 1))
}

fn nilpotent_basis(d: &DiassociativeAlgebra) -> Result<Outcome> {
    if !d.is_associative_dias() {
        return Ok(Outcome::skip());
    }
    let field = d.field();
    let all_nil = (0..d.dim()).all(|i| power_nilpotency(d, &vector::unit(field, d.dim(), i), Op::Left).is_nilpotent());
    if !all_nil {
        return Ok(Outcome::skip());
    }
    let powers = assoc_powers(d, Op::Left)?;
    if !powers.is_nilpotent() {
        return Ok(Outcome::fail(format!("basis elements are nilpotent but powers give dims {:?}", powers.dims())));
    }
    Ok(Outcome::pass(d.dim()).count("applicable", 1))
}

fn nilpotent_multiplication(d: &DiassociativeAlgebra, seed: u64, samples: usize) -> Result<Outcome> {
    let field = d.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut elements: Vec<_> = (0..d.dim()).map(|i| vector::unit(field, d.dim(), i)).collect();
    elements.extend((0..samples).map(|_| random_vector(field, d.dim(), &mut rng)));
    let mut checked = 0;
    for x in &elements {
        for op in Op::BOTH {
            let Nilpotency::Index(k) = power_nilpotency(d, x, op) else { continue };
            checked += 1;
            let lambda = d.operator_matrix(x, Side::LeftMul, op)?;
            match lambda.nilpotency_index()? {
                Nilpotency::Index(j) if j <= k => {}
                other => {
                    return Ok(Outcome::fail(format!(
                        "x = {} has {}-power index {k} but λ_x gives {other:?}",
                        d.format_vector(x),
                        op.symbol()
                    )))
                }
            }
        }
    }
    Ok(Outcome::pass(checked).count("nilpotent_elements", checked))
}

fn common_null_vector(d: &DiassociativeAlgebra, seed: u64, trials: usize) -> Result<Outcome> {
    if !dias_series(d, None)?.is_nilpotent() {
        return Ok(Outcome::skip());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reps = vec![Representation::regular(d), square_zero_representation(d, 2, &mut rng)?];
    let full = Subspace::full(d.field(), d.dim());
    let squares = lozenge(d, &full, &full)?;
    if !squares.is_zero() {
        reps.push(ideal_representation(d, &squares)?);
    }
    for rep in &reps {
        if rep.dim_v() > 0 && rep.common_null_space().is_zero() {
            return Ok(Outcome::fail_rep("no common null vector", rep.data()));
        }
    }
    let sample = operator_nilpotency_sample(d, trials, rng.gen())?;
    if let Some(c) = sample.counterexamples.first() {
        return Ok(Outcome::fail(format!(
            "{} {} of d = {} is not nilpotent",
            match c.side {
                Side::LeftMul => "λ",
                Side::RightMul => "ρ",
            },
            c.op.symbol(),
            d.format_vector(&c.element)
        )));
    }
    Ok(Outcome::pass(reps.len() + sample.operators_checked)
        .count("nilpotent", 1)
        .count("operators", sample.operators_checked)
        .count("representations", reps.len()))
}

fn irreducible_dichotomy(d: &DiassociativeAlgebra, rep_dim_max: usize) -> Result<Outcome> {
    if !d.field().is_finite() || d.dim() > 2 {
        return Ok(Outcome::skip());
    }
    let (mut total, mut irreducible) = (0, 0);
    let mut branches = [0usize; 3];
    for m in 1..=rep_dim_max {
        for rep in enumerate_representations(d, m)? {
            total += 1;
            if rep.is_irreducible()? != Irreducibility::Irreducible {
                continue;
            }
            irreducible += 1;
            let report = rep.dichotomy_check()?;
            if report.is_violation() {
                return Ok(Outcome::fail_rep(format!("dichotomy fails: {report:?}"), rep.data()));
            }
            match report.branch() {
                Some(DichotomyBranch::Vanishing) => branches[0] += 1,
                Some(DichotomyBranch::ActionsAgree) => branches[1] += 1,
                Some(DichotomyBranch::Both) => branches[2] += 1,
                None => unreachable!("no branch is a violation"),
            }
        }
    }
    Ok(Outcome::pass(total)
        .count("representations", total)
        .count("irreducible", irreducible)
        .count("branch_vanishing", branches[0])
        .count("branch_agree", branches[1])
        .count("branch_both", branches[2]))
}

fn normalizer_growth(d: &DiassociativeAlgebra, seed: u64) -> Result<Outcome> {
    if !d.is_associative_dias() || d.dim() == 0 || !dias_series(d, None)?.is_nilpotent() {
        return Ok(Outcome::skip());
    }
    let (field, n) = (d.field(), d.dim());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = |i| vector::unit(field, n, i);
    let mut generator_sets: Vec<Vec<Vec<_>>> = vec![Vec::new()];
    generator_sets.extend((0..n).map(|i| vec![e(i)]));
    generator_sets.extend((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| vec![e(i), e(j)]));
    generator_sets.extend((0..3).map(|_| vec![random_vector(field, n, &mut rng)]));
    let mut subalgebras: Vec<Subspace> = Vec::new();
    for gens in generator_sets {
        let k = subalgebra_closure(d, &gens)?;
        if k.dim() < n && !subalgebras.contains(&k) {
            subalgebras.push(k);
        }
    }
    for term in dias_series(d, None)?.terms {
        if term.dim() < n && !subalgebras.contains(&term) {
            subalgebras.push(term);
        }
    }
    for k in &subalgebras {
        let nk = normalizer(d, k)?;
        if !k.is_subspace_of(&nk)? || nk.dim() <= k.dim() {
            return Ok(Outcome::fail(format!("K = {k} has normalizer {nk}")));
        }
    }
    Ok(Outcome::pass(subalgebras.len()).count("subalgebras", subalgebras.len()))
}

fn split_ext_iff(d: &DiassociativeAlgebra, seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = [Representation::regular(d), Representation::zero(d, 1), square_zero_representation(d, 2, &mut rng)?];
    let mut pairs: Vec<RepresentationData> = Vec::new();
    for rep in base {
        let data = rep.into_data();
        let mutated = mutate_rep(&data, &mut rng)?;
        pairs.push(data);
        pairs.extend(mutated);
    }
    let (mut valid, mut invalid) = (0, 0);
    for data in &pairs {
        let rep_ok = data.check_identities().is_empty();
        let ext_ok = data.split_extension_table().check_axioms().is_empty();
        if rep_ok != ext_ok {
            return Ok(Outcome::fail_rep(
                format!("identities hold: {rep_ok}, split extension satisfies axioms: {ext_ok}"),
                data,
            ));
        }
        if rep_ok {
            valid += 1;
        } else {
            invalid += 1;
        }
    }
    Ok(Outcome::pass(pairs.len()).count("valid_pairs", valid).count("invalid_pairs", invalid))
}

/// One random entry of one action replaced by a different value; `None`
/// when the tensors are empty.
fn mutate_rep(data: &RepresentationData, rng: &mut impl Rng) -> Result<Option<RepresentationData>> {
    let (n, m) = (data.algebra().dim(), data.dim_v());
    if n == 0 || m == 0 {
        return Ok(None);
    }
    let (side, op) = ACTIONS[rng.gen_range(0..4)];
    let (a, b, c) = match side {
        Side::RightMul => (rng.gen_range(0..m), rng.gen_range(0..n), rng.gen_range(0..m)),
        Side::LeftMul => (rng.gen_range(0..n), rng.gen_range(0..m), rng.gen_range(0..m)),
    };
    let field = data.algebra().field();
    let old = data.entry(side, op, a, b, c)?.clone();
    let new = &old + &super::nonzero_coefficient(field, rng);
    let mut out = data.clone();
    out.set_entry(side, op, a, b, c, new)?;
    Ok(Some(out))
}

/// The exhaustive census over `field` in dimensions `1..=max_dim`.
pub fn census_corpus(field: FieldSpec, max_dim: usize, workers: usize) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for dim in 1..=max_dim {
        for (i, a) in enumerate_all_with(field, dim, workers)?.into_iter().enumerate() {
            out.push(CorpusEntry::new(format!("{field}-d{dim}-{i:04}"), a));
        }
    }
    Ok(out)
}

fn generate_retrying(mut spec: GeneratorSpec) -> Result<DiassociativeAlgebra> {
    loop {
        match generate(&spec) {
            Err(Error::RejectionBudgetExhausted { next_seed, .. }) => spec.seed = next_seed,
            other => return other,
        }
    }
}

/// Alternating graded and split-extension instances in dimensions 2 to 5.
pub fn random_nilpotent_corpus(field: FieldSpec, count: usize, seed: u64) -> Result<Vec<CorpusEntry>> {
    (0..count)
        .map(|i| {
            let mode = if i % 2 == 0 { GeneratorMode::GradedNilpotent } else { GeneratorMode::SplitExtensionTower };
            let dim = 2 + (i / 2) % 4;
            let spec = GeneratorSpec { field, dim, mode, seed: seed.wrapping_add(i as u64) };
            Ok(CorpusEntry::new(format!("{mode}-d{dim}-{i:04}"), generate_retrying(spec)?))
        })
        .collect()
}

/// Associative graded instances in dimensions 2 to 6.
pub fn associative_triangular_corpus(field: FieldSpec, count: usize, seed: u64) -> Result<Vec<CorpusEntry>> {
    (0..count)
        .map(|i| {
            let dim = 2 + i % 5;
            let mode = GeneratorMode::AssociativeTriangular;
            let spec = GeneratorSpec { field, dim, mode, seed: seed.wrapping_add(i as u64) };
            Ok(CorpusEntry::new(format!("{mode}-d{dim}-{i:04}"), generate(&spec)?))
        })
        .collect()
}

pub fn non_nilpotent_corpus(field: FieldSpec, count: usize, seed: u64) -> Result<Vec<CorpusEntry>> {
    (0..count)
        .map(|i| {
            let a = non_nilpotent_fixture(field, seed.wrapping_add(i as u64))?;
            Ok(CorpusEntry::new(format!("nonnilpotent-d{}-{i:04}", a.dim()), a))
        })
        .collect()
}

/// Census over F_2 in dimensions 1 and 2, 500 random nilpotent instances,
/// 100 non-nilpotent instances and 200 associative graded instances, all
/// random ones over ℚ.
pub fn standard_corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    let q = FieldSpec::RATIONALS;
    let mut corpus = census_corpus(FieldSpec::prime(2)?, 2, 1)?;
    corpus.extend(random_nilpotent_corpus(q, 500, seed)?);
    corpus.extend(non_nilpotent_corpus(q, 100, seed)?);
    corpus.extend(associative_triangular_corpus(q, 200, seed)?);
    Ok(corpus)
}
