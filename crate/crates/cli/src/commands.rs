use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use dias_core::algebra::{AxiomViolation, DiassociativeAlgebra, StructureTable};
use dias_core::exactlin::{FieldSpec, Scalar, Subspace};
use dias_core::format::{default_field_from_env, read_algebra, read_rep, write_algebra};
use dias_core::genlab::{
    enumerate_all_with, generate, run_suite, standard_corpus, CorpusEntry, GeneratorMode, GeneratorSpec, Suite,
    SuiteConfig,
};
use dias_core::ideals::{annihilator, dias_subspace, ideal_closure};
use dias_core::nilpotency::{dias_series, engel_criterion, EngelEvidence, SeriesCertificate};
use dias_core::representation::{DichotomyBranch, Irreducibility, RepViolation, Representation, RepresentationData};
use dias_core::Error;

use crate::{Command, IdealKind, Method, QuotientBy, RepCommand, RepTarget, SuiteArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    False = 1,
    Usage = 2,
    Violation = 3,
}

#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { status: Status::Usage, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::AxiomsViolated { .. }
            | Error::RepresentationInvalid { .. }
            | Error::NotAnIdeal(_)
            | Error::NotAssociative(_)
            | Error::Precondition(_)
            | Error::RejectionBudgetExhausted { .. } => Status::False,
            _ => Status::Usage,
        };
        Failure { status, message: e.to_string() }
    }
}

type Outcome = Result<Status, Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Verify { path } => verify(&path),
        Command::Nilpotent { path, method, certificate } => nilpotent(&path, method, certificate),
        Command::Ideal { path, kind, generators } => ideal(&path, kind, &generators),
        Command::Quotient { path, by, generators, out } => quotient(&path, by, &generators, out.as_deref()),
        Command::Rep { command } => rep(command),
        Command::Enumerate { field, dim, out, workers } => enumerate(&field, dim, &out, workers),
        Command::Suite(args) => suite(args),
        Command::Generate { mode, dim, seed, field, count, out } => {
            generate_cmd(&mode, dim, seed, field.as_deref(), count, out.as_deref())
        }
    }
}

fn default_field() -> Result<Option<FieldSpec>, Failure> {
    Ok(default_field_from_env()?)
}

fn load_table(path: &Path) -> Result<StructureTable, Failure> {
    Ok(read_algebra(path, default_field()?)?)
}

/// Reads and verifies an algebra, printing the violations when it fails.
fn load_algebra(path: &Path) -> Result<DiassociativeAlgebra, Failure> {
    let table = load_table(path)?;
    let violations = table.check_axioms();
    if violations.is_empty() {
        return Ok(table.verify()?);
    }
    print_axiom_violations(&violations);
    Err(Failure { status: Status::False, message: format!("{}: not a diassociative algebra", path.display()) })
}

/// One line per violated identity, with its first failing triple.
fn print_axiom_violations(violations: &[AxiomViolation]) {
    let mut by_axiom: BTreeMap<u8, (&AxiomViolation, usize)> = BTreeMap::new();
    for v in violations {
        by_axiom.entry(v.axiom.id).or_insert((v, 0)).1 += 1;
    }
    for (first, count) in by_axiom.values() {
        println!("{first}{}", more_suffix(*count));
    }
}

fn print_rep_violations(violations: &[RepViolation]) {
    let mut by_identity: BTreeMap<(u8, u8), (&RepViolation, usize)> = BTreeMap::new();
    for v in violations {
        by_identity.entry((v.axiom.id, v.v_position)).or_insert((v, 0)).1 += 1;
    }
    for (first, count) in by_identity.values() {
        println!("{first}{}", more_suffix(*count));
    }
}

fn more_suffix(count: usize) -> String {
    match count {
        1 => String::new(),
        2 => " (and 1 more triple)".into(),
        n => format!(" (and {} more triples)", n - 1),
    }
}

fn is_rep_file(path: &Path) -> Result<bool, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(value.get("dimV").is_some())
}

fn verify(path: &Path) -> Outcome {
    if is_rep_file(path)? {
        return check_rep_data(read_rep(path, default_field()?)?);
    }
    let violations = load_table(path)?.check_axioms();
    if violations.is_empty() {
        println!("OK");
        return Ok(Status::Success);
    }
    print_axiom_violations(&violations);
    Ok(Status::False)
}

fn check_rep_data(data: RepresentationData) -> Outcome {
    let violations = data.check_identities();
    if violations.is_empty() {
        println!("OK");
        Ok(Status::Success)
    } else {
        print_rep_violations(&violations);
        Ok(Status::False)
    }
}

fn series_line(cert: &SeriesCertificate) -> String {
    match cert.class() {
        Some(class) => format!("nilpotent, class {class}"),
        None => "not nilpotent".into(),
    }
}

fn nilpotent(path: &Path, method: Method, certificate: bool) -> Outcome {
    let d = load_algebra(path)?;
    let series = match method {
        Method::Engel => None,
        _ => Some(dias_series(&d, None)?),
    };
    let engel = match method {
        Method::Series => None,
        _ => Some(engel_criterion(&d)?),
    };
    let nilpotent = match (&series, &engel) {
        (Some(s), Some(e)) if s.is_nilpotent() != e.nilpotent => {
            println!("methods disagree: series says {}, engel says {}", series_line(s), verdict(e.nilpotent));
            return Ok(Status::Violation);
        }
        (Some(s), _) => {
            println!("{}", series_line(s));
            s.is_nilpotent()
        }
        (None, Some(e)) => {
            println!("{}", verdict(e.nilpotent));
            e.nilpotent
        }
        (None, None) => unreachable!("at least one method runs"),
    };
    if let Some(EngelEvidence::Failing { basis_index, .. }) = engel.as_ref().map(|e| &e.evidence) {
        println!("witness: {} (λ⊢ not nilpotent)", d.basis_name(*basis_index));
    } else if let (Some(s), false) = (&series, nilpotent) {
        let last = s.terms.last().expect("series has a first term");
        println!("witness: series stabilizes at dim {}", last.dim());
    }
    if method == Method::Both {
        println!("methods agree");
    }
    if certificate {
        if let Some(s) = &series {
            for (k, term) in s.terms.iter().enumerate() {
                println!("D^{}: dim {}, basis: {}", k + 1, term.dim(), basis_text(&d, term));
            }
        }
        if let Some(EngelEvidence::Indices(indices)) = engel.as_ref().map(|e| &e.evidence) {
            for (i, k) in indices.iter().enumerate() {
                println!("λ⊢({}): index {k}", d.basis_name(i));
            }
        }
    }
    Ok(if nilpotent { Status::Success } else { Status::False })
}

fn verdict(nilpotent: bool) -> &'static str {
    if nilpotent {
        "nilpotent"
    } else {
        "not nilpotent"
    }
}

fn basis_text(d: &DiassociativeAlgebra, s: &Subspace) -> String {
    if s.is_zero() {
        return "(none)".into();
    }
    s.basis().iter().map(|v| d.format_vector(v)).collect::<Vec<_>>().join(", ")
}

fn print_subspace(d: &DiassociativeAlgebra, s: &Subspace) {
    println!("dim: {}", s.dim());
    println!("basis: {}", basis_text(d, s));
}

/// `e2`, a declared basis name, or comma-separated coordinates.
fn parse_generator(d: &DiassociativeAlgebra, text: &str) -> Result<Vec<Scalar>, Failure> {
    let (field, n) = (d.field(), d.dim());
    if let Some(i) = (0..n).find(|&i| d.basis_name(i) == text) {
        let mut v = vec![field.zero(); n];
        v[i] = field.one();
        return Ok(v);
    }
    let coords: Vec<&str> = text.split(',').collect();
    if coords.len() != n {
        return Err(Failure::usage(format!(
            "generator {text:?}: expected a basis name or {n} comma-separated coordinates"
        )));
    }
    coords
        .iter()
        .map(|c| field.parse_scalar(c).map_err(|e| Failure::usage(format!("generator {text:?}: {e}"))))
        .collect()
}

fn parse_generators(d: &DiassociativeAlgebra, texts: &[String]) -> Result<Vec<Vec<Scalar>>, Failure> {
    texts.iter().map(|t| parse_generator(d, t)).collect()
}

fn ideal(path: &Path, kind: IdealKind, generators: &[String]) -> Outcome {
    let d = load_algebra(path)?;
    if kind != IdealKind::Closure && !generators.is_empty() {
        return Err(Failure::usage("generators are only accepted by `closure`"));
    }
    let s = match kind {
        IdealKind::Dias => dias_subspace(&d),
        IdealKind::Annihilator => annihilator(&d),
        IdealKind::Closure => ideal_closure(&d, &parse_generators(&d, generators)?)?,
    };
    print_subspace(&d, &s);
    Ok(Status::Success)
}

fn quotient(path: &Path, by: QuotientBy, generators: &[String], out: Option<&Path>) -> Outcome {
    let d = load_algebra(path)?;
    if by != QuotientBy::Gens && !generators.is_empty() {
        return Err(Failure::usage("--gen is only accepted with --by gens"));
    }
    let ideal = match by {
        QuotientBy::Dias => dias_subspace(&d),
        QuotientBy::Annihilator => annihilator(&d),
        QuotientBy::Gens => ideal_closure(&d, &parse_generators(&d, generators)?)?,
    };
    let q = d.quotient(&ideal)?;
    let text = write_algebra(q.algebra.table());
    match out {
        Some(out) => {
            write_file(out, &text)?;
            println!("wrote quotient of dim {} to {}", q.algebra.dim(), out.display());
        }
        None => print!("{text}"),
    }
    Ok(Status::Success)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn create_dir(path: &Path) -> Result<(), Failure> {
    fs::create_dir_all(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// The representation and the display names of the basis of `V`.
fn load_rep(target: &RepTarget) -> Result<(Representation, Vec<String>), Failure> {
    if let Some(alg) = &target.regular {
        let d = load_algebra(alg)?;
        let names = (0..d.dim()).map(|i| d.basis_name(i)).collect();
        return Ok((Representation::regular(&d), names));
    }
    let path = target.path.as_ref().expect("clap requires a path or --regular");
    let data = read_rep(path, default_field()?)?;
    let violations = data.check_identities();
    if !violations.is_empty() {
        print_rep_violations(&violations);
        return Err(Failure { status: Status::False, message: format!("{}: not a representation", path.display()) });
    }
    let names = (1..=data.dim_v()).map(|i| format!("v{i}")).collect();
    Ok((data.verify()?, names))
}

/// Formats subspaces of `V` with the given basis names.
fn v_space(rep: &Representation, names: Vec<String>) -> Result<DiassociativeAlgebra, Failure> {
    let field = rep.algebra().field();
    Ok(StructureTable::zeros(field, rep.dim_v()).with_basis_names(names)?.verify()?)
}

fn rep(command: RepCommand) -> Outcome {
    match command {
        RepCommand::Check(target) => {
            if let Some(alg) = &target.regular {
                return check_rep_data(Representation::regular(&load_algebra(alg)?).into_data());
            }
            let path = target.path.as_ref().expect("clap requires a path or --regular");
            check_rep_data(read_rep(path, default_field()?)?)
        }
        RepCommand::Nullvec(target) => {
            let (rep, names) = load_rep(&target)?;
            let v = v_space(&rep, names)?;
            print_subspace(&v, &rep.common_null_space());
            Ok(Status::Success)
        }
        RepCommand::Dichotomy(target) => {
            let (rep, names) = load_rep(&target)?;
            let v = v_space(&rep, names)?;
            match rep.is_irreducible()? {
                Irreducibility::Irreducible => {}
                Irreducibility::ReducibleWithWitness(w) => {
                    println!("reducible");
                    println!("invariant subspace: {}", basis_text(&v, &w));
                    return Ok(Status::False);
                }
                Irreducibility::Unknown => {
                    println!("irreducibility undecided");
                    return Ok(Status::False);
                }
            }
            let d = rep.algebra();
            let report = rep.dichotomy_check()?;
            println!("irreducible");
            println!("kernel: dim {}, basis: {}", report.kernel.dim(), basis_text(d, &report.kernel));
            println!("Dias(D) in kernel: {}", report.dias_in_kernel);
            println!("quotient associative: {}", report.quotient_associative);
            let branch = match report.branch() {
                Some(DichotomyBranch::Vanishing) => "V⊢D = D⊣V = 0",
                Some(DichotomyBranch::ActionsAgree) => "⊣ and ⊢ act identically",
                Some(DichotomyBranch::Both) => "both",
                None => "neither",
            };
            println!("branch: {branch}");
            if report.is_violation() {
                println!("theorem violation");
                return Ok(Status::Violation);
            }
            Ok(Status::Success)
        }
    }
}

fn parse_field(text: &str) -> Result<FieldSpec, Failure> {
    text.parse().map_err(|e: Error| Failure::usage(format!("field {text:?}: {e}")))
}

fn enumerate(field: &str, dim: usize, out: &Path, workers: usize) -> Outcome {
    let field = parse_field(field)?;
    let census = enumerate_all_with(field, dim, workers.max(1))?;
    create_dir(out)?;
    for (i, a) in census.iter().enumerate() {
        write_file(&out.join(format!("{field}-d{dim}-{i:04}.json")), &write_algebra(a.table()))?;
    }
    println!("wrote {} algebras to {}", census.len(), out.display());
    Ok(Status::Success)
}

fn read_corpus(dir: &Path) -> Result<Vec<CorpusEntry>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let default = default_field()?;
    paths
        .iter()
        .map(|p| {
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let table = read_algebra(p, default)?;
            let algebra = table
                .verify()
                .map_err(|e| Failure { status: Status::False, message: format!("{}: {e}", p.display()) })?;
            Ok(CorpusEntry::new(name, algebra))
        })
        .collect()
}

fn suite(args: SuiteArgs) -> Outcome {
    let mut suites = Vec::new();
    for name in &args.suites {
        if name == "all" {
            suites.extend(Suite::ALL);
        } else {
            suites.push(name.parse::<Suite>().map_err(|e| Failure::usage(e.to_string()))?);
        }
    }
    let corpus = match &args.corpus {
        Some(dir) => read_corpus(dir)?,
        None => standard_corpus(args.seed)?,
    };
    let config = SuiteConfig {
        seed: args.seed,
        trials: args.trials,
        rep_dim_max: args.rep_dim_max,
        workers: args.workers.max(1),
    };
    let mut text = String::new();
    let mut ok = true;
    for s in suites {
        let report = run_suite(&corpus, s, &config);
        ok &= report.is_success();
        text.push_str(&report.to_json());
    }
    print!("{text}");
    if let Some(path) = &args.report {
        write_file(path, &text)?;
    }
    Ok(if ok { Status::Success } else { Status::Violation })
}

fn generate_cmd(mode: &str, dim: usize, seed: u64, field: Option<&str>, count: u64, out: Option<&Path>) -> Outcome {
    let mode: GeneratorMode = mode.parse().map_err(|e: Error| Failure::usage(e.to_string()))?;
    let field = match field {
        Some(f) => parse_field(f)?,
        None => default_field()?.unwrap_or(FieldSpec::RATIONALS),
    };
    if count > 1 && out.is_none() {
        return Err(Failure::usage("--out is required when --count exceeds 1"));
    }
    if let Some(dir) = out {
        create_dir(dir)?;
    }
    for s in seed..seed.saturating_add(count) {
        let a = generate(&GeneratorSpec { field, dim, mode, seed: s })?;
        let text = write_algebra(a.table());
        match out {
            Some(dir) => write_file(&dir.join(format!("{mode}-d{dim}-s{s}.json")), &text)?,
            None => print!("{text}"),
        }
    }
    if let Some(dir) = out {
        println!("wrote {count} algebras to {}", dir.display());
    }
    Ok(Status::Success)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_statuses() {
        assert_eq!(Failure::from(Error::Format("x".into())).status, Status::Usage);
        assert_eq!(Failure::from(Error::AxiomsViolated { count: 1, first: "x".into() }).status, Status::False);
        assert_eq!(Failure::from(Error::EnumerationBound("x".into())).status, Status::Usage);
    }

    #[test]
    fn suffixes() {
        assert_eq!(more_suffix(1), "");
        assert_eq!(more_suffix(3), " (and 2 more triples)");
    }

    #[test]
    fn generators_by_name_and_coordinates() {
        let d = dias_core::fixtures::d2b();
        let q = FieldSpec::RATIONALS;
        assert_eq!(parse_generator(&d, "e2").unwrap(), vec![q.zero(), q.one()]);
        assert_eq!(parse_generator(&d, "1,-1/2").unwrap(), vec![q.one(), q.from_fraction(-1, 2).unwrap()]);
        assert!(parse_generator(&d, "e3").is_err());
        assert!(parse_generator(&d, "1,x").is_err());
    }
}
