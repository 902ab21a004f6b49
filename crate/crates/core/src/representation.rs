//! Four-map representations `(S^⊣, S^⊢, T^⊣, T^⊢)` of a diassociative algebra
//! on a vector space `V`, with `S_d^∗(v) = v∗d` and `T_d^∗(v) = d∗v`.
//!
//! Tensor layouts: `S` entries are `s[v_in][d][v_out]` and `T` entries are
//! `t[d][v_in][v_out]`, all 0-based. In this module `Side::RightMul` selects
//! an `S` action and `Side::LeftMul` a `T` action, matching ρ and λ of the
//! regular representation.

use std::fmt;
use std::ops::Deref;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{fmt_coords, Axiom, DiassociativeAlgebra, Element, Op, Side, StructureTable, AXIOMS};
use crate::error::{Error, Result};
use crate::exactlin::{vector, Matrix, Scalar, Subspace};
use crate::ideals::dias_subspace;
use crate::nilpotency::random_vector;

/// All four actions in a fixed order.
pub const ACTIONS: [(Side, Op); 4] =
    [(Side::RightMul, Op::Left), (Side::RightMul, Op::Right), (Side::LeftMul, Op::Left), (Side::LeftMul, Op::Right)];

pub fn action_name(side: Side, op: Op) -> &'static str {
    match (side, op) {
        (Side::RightMul, Op::Left) => "S⊣",
        (Side::RightMul, Op::Right) => "S⊢",
        (Side::LeftMul, Op::Left) => "T⊣",
        (Side::LeftMul, Op::Right) => "T⊢",
    }
}

/// Action tensors not yet known to satisfy the 15 identities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RepresentationData {
    algebra: DiassociativeAlgebra,
    dim_v: usize,
    s_left: Vec<Scalar>,
    s_right: Vec<Scalar>,
    t_left: Vec<Scalar>,
    t_right: Vec<Scalar>,
}

/// A substitution instance of an axiom on which the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepViolation {
    pub axiom: Axiom,
    /// Which of x, y, z (1, 2, 3) is replaced by a vector of `V`.
    pub v_position: u8,
    /// 0-based indices; the entry at `v_position` indexes `V`, the others `D`.
    pub triple: (usize, usize, usize),
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

impl fmt::Display for RepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        let names: Vec<String> = [i, j, k]
            .iter()
            .enumerate()
            .map(|(slot, idx)| {
                let letter = if slot + 1 == self.v_position as usize { 'v' } else { 'e' };
                format!("{letter}{}", idx + 1)
            })
            .collect();
        write!(
            f,
            "axiom {} \"{}\" with v in position {} fails at ({}): lhs {} != rhs {}",
            self.axiom.id,
            self.axiom,
            self.v_position,
            names.join(", "),
            fmt_coords(&self.lhs),
            fmt_coords(&self.rhs)
        )
    }
}

enum Val {
    D(Vec<Scalar>),
    V(Vec<Scalar>),
}

impl RepresentationData {
    /// All four actions zero.
    pub fn zero(algebra: DiassociativeAlgebra, dim_v: usize) -> Self {
        let n = algebra.dim();
        let zeros = vector::zeros(algebra.field(), n * dim_v * dim_v);
        RepresentationData {
            algebra,
            dim_v,
            s_left: zeros.clone(),
            s_right: zeros.clone(),
            t_left: zeros.clone(),
            t_right: zeros,
        }
    }

    pub fn algebra(&self) -> &DiassociativeAlgebra {
        &self.algebra
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn tensor(&self, side: Side, op: Op) -> &[Scalar] {
        match (side, op) {
            (Side::RightMul, Op::Left) => &self.s_left,
            (Side::RightMul, Op::Right) => &self.s_right,
            (Side::LeftMul, Op::Left) => &self.t_left,
            (Side::LeftMul, Op::Right) => &self.t_right,
        }
    }

    fn tensor_mut(&mut self, side: Side, op: Op) -> &mut Vec<Scalar> {
        match (side, op) {
            (Side::RightMul, Op::Left) => &mut self.s_left,
            (Side::RightMul, Op::Right) => &mut self.s_right,
            (Side::LeftMul, Op::Left) => &mut self.t_left,
            (Side::LeftMul, Op::Right) => &mut self.t_right,
        }
    }

    /// Flat index of an entry; `(a, b, c)` is `(v_in, d, v_out)` for `S` and
    /// `(d, v_in, v_out)` for `T`.
    fn index(&self, side: Side, a: usize, b: usize, c: usize) -> Result<usize> {
        let (n, m) = (self.algebra.dim(), self.dim_v);
        let (dims, idx) = match side {
            Side::RightMul => ([m, n, m], (a * n + b) * m + c),
            Side::LeftMul => ([n, m, m], (a * m + b) * m + c),
        };
        for (i, d) in [a, b, c].into_iter().zip(dims) {
            if i >= d {
                return Err(Error::IndexOutOfRange { index: i, dim: d });
            }
        }
        Ok(idx)
    }

    pub fn entry(&self, side: Side, op: Op, a: usize, b: usize, c: usize) -> Result<&Scalar> {
        let idx = self.index(side, a, b, c)?;
        Ok(&self.tensor(side, op)[idx])
    }

    pub fn set_entry(&mut self, side: Side, op: Op, a: usize, b: usize, c: usize, value: Scalar) -> Result<()> {
        if value.field() != self.algebra.field() {
            return Err(Error::FieldMismatch { expected: self.algebra.field(), found: value.field() });
        }
        let idx = self.index(side, a, b, c)?;
        self.tensor_mut(side, op)[idx] = value;
        Ok(())
    }

    /// Image of `v_j` under the action of basis element `e_i`.
    fn basis_image(&self, side: Side, op: Op, i: usize, j: usize) -> &[Scalar] {
        let (n, m) = (self.algebra.dim(), self.dim_v);
        let start = match side {
            Side::RightMul => (j * n + i) * m,
            Side::LeftMul => (i * m + j) * m,
        };
        &self.tensor(side, op)[start..start + m]
    }

    fn act_coords(&self, d: &[Scalar], v: &[Scalar], side: Side, op: Op) -> Vec<Scalar> {
        let mut out = vector::zeros(self.algebra.field(), self.dim_v);
        for (i, di) in d.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                vector::axpy(&mut out, &(di * vj), self.basis_image(side, op, i, j));
            }
        }
        out
    }

    /// `v∗d` (`side = RightMul`) or `d∗v` (`side = LeftMul`).
    pub fn act(&self, d: &Element<'_>, v: &[Scalar], side: Side, op: Op) -> Result<Vec<Scalar>> {
        if !std::ptr::eq(d.algebra(), &self.algebra) {
            return Err(Error::Precondition("element does not belong to the represented algebra".into()));
        }
        if v.len() != self.dim_v {
            return Err(Error::DimensionMismatch { expected: self.dim_v, found: v.len() });
        }
        if let Some(bad) = v.iter().find(|s| s.field() != self.algebra.field()) {
            return Err(Error::FieldMismatch { expected: self.algebra.field(), found: bad.field() });
        }
        Ok(self.act_coords(d.coords(), v, side, op))
    }

    /// `m×m` matrix of the action of `d`; column `j` is the image of `v_j`.
    pub fn action_matrix(&self, d: &[Scalar], side: Side, op: Op) -> Result<Matrix> {
        if d.len() != self.algebra.dim() {
            return Err(Error::DimensionMismatch { expected: self.algebra.dim(), found: d.len() });
        }
        let m = self.dim_v;
        let columns: Vec<Vec<Scalar>> =
            (0..m).map(|j| self.act_coords(d, &vector::unit(self.algebra.field(), m, j), side, op)).collect();
        Matrix::from_columns(self.algebra.field(), m, &columns)
    }

    fn mul(&self, op: Op, a: &Val, b: &Val) -> Val {
        match (a, b) {
            (Val::D(x), Val::D(y)) => Val::D(self.algebra.product_coords(op, x, y)),
            (Val::D(d), Val::V(v)) => Val::V(self.act_coords(d, v, Side::LeftMul, op)),
            (Val::V(v), Val::D(d)) => Val::V(self.act_coords(d, v, Side::RightMul, op)),
            (Val::V(_), Val::V(_)) => unreachable!("identities contain exactly one module variable"),
        }
    }

    /// The 15 identities obtained by putting `v ∈ V` into each of the three
    /// slots of each axiom, evaluated on all basis choices.
    pub fn check_identities(&self) -> Vec<RepViolation> {
        let (n, m) = (self.algebra.dim(), self.dim_v);
        let field = self.algebra.field();
        let mut out = Vec::new();
        for axiom in &AXIOMS {
            for pos in 1..=3u8 {
                let ranges = [1u8, 2, 3].map(|slot| if slot == pos { m } else { n });
                let make = |slot: u8, idx: usize| {
                    if slot == pos {
                        Val::V(vector::unit(field, m, idx))
                    } else {
                        Val::D(vector::unit(field, n, idx))
                    }
                };
                for i in 0..ranges[0] {
                    for j in 0..ranges[1] {
                        for k in 0..ranges[2] {
                            let (x, y, z) = (make(1, i), make(2, j), make(3, k));
                            let lhs = self.mul(axiom.lhs_outer, &self.mul(axiom.lhs_inner, &x, &y), &z);
                            let rhs = self.mul(axiom.rhs_outer, &x, &self.mul(axiom.rhs_inner, &y, &z));
                            let (Val::V(lhs), Val::V(rhs)) = (lhs, rhs) else {
                                unreachable!("one module variable gives a module value")
                            };
                            if lhs != rhs {
                                out.push(RepViolation { axiom: *axiom, v_position: pos, triple: (i, j, k), lhs, rhs });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn verify(self) -> Result<Representation> {
        let violations = self.check_identities();
        if let Some(first) = violations.first() {
            return Err(Error::RepresentationInvalid { count: violations.len(), first: first.to_string() });
        }
        Ok(Representation { data: self })
    }

    /// `X = D ⊕ V` with `(d1, v1)∗(d2, v2) = (d1∗d2, d1∗v2 + v1∗d2)` for both
    /// products; `V` occupies coordinates `n..n+m` and squares to zero. No
    /// identity check is made here.
    pub fn split_extension_table(&self) -> StructureTable {
        let (n, m) = (self.algebra.dim(), self.dim_v);
        let mut x = StructureTable::zeros(self.algebra.field(), n + m);
        let set = |x: &mut StructureTable, op, i, j, k, c: &Scalar| {
            if !c.is_zero() {
                x.set_coefficient(op, i, j, k, c.clone()).expect("indices in range");
            }
        };
        for op in Op::BOTH {
            for i in 0..n {
                for j in 0..n {
                    for (k, c) in self.algebra.basis_product(op, i, j).iter().enumerate() {
                        set(&mut x, op, i, j, k, c);
                    }
                }
                for j in 0..m {
                    for (k, c) in self.basis_image(Side::LeftMul, op, i, j).iter().enumerate() {
                        set(&mut x, op, i, n + j, n + k, c);
                    }
                    for (k, c) in self.basis_image(Side::RightMul, op, i, j).iter().enumerate() {
                        set(&mut x, op, n + j, i, n + k, c);
                    }
                }
            }
        }
        x
    }

    fn basis_actions(&self) -> impl Iterator<Item = (usize, Side, Op)> + '_ {
        (0..self.algebra.dim()).flat_map(|i| ACTIONS.iter().map(move |&(s, o)| (i, s, o)))
    }
}

/// Representation whose actions satisfy all 15 identities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    data: RepresentationData,
}

impl Deref for Representation {
    type Target = RepresentationData;

    fn deref(&self) -> &RepresentationData {
        &self.data
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A proper nonzero invariant subspace.
    ReducibleWithWitness(Subspace),
    /// Over ℚ no proper invariant subspace was found among the probes.
    Unknown,
}

/// Which alternative of the irreducible-representation dichotomy holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DichotomyBranch {
    /// `V⊢D = D⊣V = 0`.
    Vanishing,
    /// `v⊣d = v⊢d` and `d⊢v = d⊣v`.
    ActionsAgree,
    /// Both alternatives hold (e.g. all actions zero).
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DichotomyReport {
    pub kernel: Subspace,
    /// `Dias(D) ⊆ C_D(V)`.
    pub dias_in_kernel: bool,
    /// `D/C_D(V)`, computed as a quotient, has ⊣ = ⊢.
    pub quotient_associative: bool,
    pub vanishing: bool,
    pub actions_agree: bool,
}

impl DichotomyReport {
    pub fn branch(&self) -> Option<DichotomyBranch> {
        match (self.vanishing, self.actions_agree) {
            (true, true) => Some(DichotomyBranch::Both),
            (true, false) => Some(DichotomyBranch::Vanishing),
            (false, true) => Some(DichotomyBranch::ActionsAgree),
            (false, false) => None,
        }
    }

    pub fn is_violation(&self) -> bool {
        !(self.dias_in_kernel && self.quotient_associative && self.branch().is_some())
    }
}

/// Largest line count enumerated when deciding irreducibility over F_p.
const MAX_LINES: u64 = 1 << 20;
const DEFAULT_PROBES: usize = 32;

impl Representation {
    /// `V = D`, `S^∗ = ρ^∗`, `T^∗ = λ^∗`.
    pub fn regular(algebra: &DiassociativeAlgebra) -> Representation {
        let n = algebra.dim();
        let mut data = RepresentationData::zero(algebra.clone(), n);
        for op in Op::BOTH {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let c = algebra.coefficient(op, i, j, k).clone();
                        if c.is_zero() {
                            continue;
                        }
                        data.set_entry(Side::RightMul, op, i, j, k, c.clone()).expect("in range");
                        data.set_entry(Side::LeftMul, op, i, j, k, c).expect("in range");
                    }
                }
            }
        }
        debug_assert!(data.check_identities().is_empty());
        Representation { data }
    }

    pub fn zero(algebra: &DiassociativeAlgebra, dim_v: usize) -> Representation {
        Representation { data: RepresentationData::zero(algebra.clone(), dim_v) }
    }

    pub fn data(&self) -> &RepresentationData {
        &self.data
    }

    pub fn into_data(self) -> RepresentationData {
        self.data
    }

    /// `C_D(V)`: elements of `D` whose four actions on `V` all vanish.
    pub fn kernel(&self) -> Subspace {
        let (n, m) = (self.algebra().dim(), self.dim_v());
        let field = self.algebra().field();
        if m == 0 || n == 0 {
            return Subspace::full(field, n);
        }
        let columns: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut col = Vec::with_capacity(4 * m * m);
                for &(side, op) in &ACTIONS {
                    for j in 0..m {
                        col.extend_from_slice(self.basis_image(side, op, i, j));
                    }
                }
                col
            })
            .collect();
        Matrix::from_columns(field, 4 * m * m, &columns).expect("shapes").kernel()
    }

    /// The algebra `D ⊕ V` of [`RepresentationData::split_extension_table`],
    /// verified.
    pub fn split_extension(&self) -> Result<DiassociativeAlgebra> {
        self.split_extension_table().verify()
    }

    /// Least subspace containing `v` and closed under every basis action.
    pub fn invariant_closure(&self, v: &[Scalar]) -> Result<Subspace> {
        let field = self.algebra().field();
        let mut current = Subspace::span(field, self.dim_v(), [v.to_vec()])?;
        loop {
            let images: Vec<Vec<Scalar>> = current
                .basis()
                .iter()
                .flat_map(|w| {
                    self.basis_actions().map(move |(i, side, op)| {
                        let e = vector::unit(field, self.algebra().dim(), i);
                        self.act_coords(&e, w, side, op)
                    })
                })
                .collect();
            let next = current.extend(images)?;
            if next.dim() == current.dim() {
                return Ok(current);
            }
            current = next;
        }
    }

    pub fn is_irreducible(&self) -> Result<Irreducibility> {
        self.is_irreducible_with(DEFAULT_PROBES, 0)
    }

    /// Over F_p with `dim V ≤ 4` every line is enumerated and the answer is
    /// exact. Otherwise basis vectors and `probes` seeded random vectors are
    /// tried; failure to find a proper invariant subspace yields `Unknown`.
    pub fn is_irreducible_with(&self, probes: usize, seed: u64) -> Result<Irreducibility> {
        let m = self.dim_v();
        let field = self.algebra().field();
        if m == 0 {
            return Err(Error::Precondition("irreducibility needs dim V ≥ 1".into()));
        }
        if m == 1 {
            return Ok(Irreducibility::Irreducible);
        }
        let proper = |w: Subspace| (!w.is_full()).then_some(w);
        if let Some(p) = field.order() {
            let lines = (0..m as u32).try_fold(0u64, |acc, i| acc.checked_add((p as u64).checked_pow(i)?));
            if m <= 4 && lines.is_some_and(|l| l <= MAX_LINES) {
                for v in line_representatives(field.elements().expect("finite"), m) {
                    if let Some(w) = proper(self.invariant_closure(&v)?) {
                        return Ok(Irreducibility::ReducibleWithWitness(w));
                    }
                }
                return Ok(Irreducibility::Irreducible);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut candidates: Vec<Vec<Scalar>> = (0..m).map(|i| vector::unit(field, m, i)).collect();
        candidates.extend((0..probes).map(|_| random_vector(field, m, &mut rng)));
        for v in candidates.into_iter().filter(|v| !vector::is_zero(v)) {
            if let Some(w) = proper(self.invariant_closure(&v)?) {
                return Ok(Irreducibility::ReducibleWithWitness(w));
            }
        }
        Ok(Irreducibility::Unknown)
    }

    /// Vectors killed by all four actions of every basis element.
    pub fn common_null_space(&self) -> Subspace {
        let (n, m) = (self.algebra().dim(), self.dim_v());
        let field = self.algebra().field();
        if n == 0 || m == 0 {
            return Subspace::full(field, m);
        }
        let mut rows = Vec::with_capacity(4 * n * m);
        for (i, side, op) in self.basis_actions() {
            let e = vector::unit(field, n, i);
            let a = self.action_matrix(&e, side, op).expect("shapes");
            rows.extend((0..m).map(|r| a.row(r).to_vec()));
        }
        Matrix::from_rows(field, rows).expect("shapes").kernel()
    }

    /// Checks the conclusion of the dichotomy for an irreducible
    /// representation: `D/C_D(V)` is associative, and either
    /// `V⊢D = D⊣V = 0` or the actions of ⊣ and ⊢ agree on both sides.
    pub fn dichotomy_check(&self) -> Result<DichotomyReport> {
        if self.is_irreducible()? != Irreducibility::Irreducible {
            return Err(Error::Precondition(
                "dichotomy check requires a representation known to be irreducible".into(),
            ));
        }
        let kernel = self.kernel();
        let dias_in_kernel = dias_subspace(self.algebra()).is_subspace_of(&kernel)?;
        let quotient_associative = self.algebra().quotient(&kernel)?.algebra.is_associative_dias();
        let all_zero = |t: &[Scalar]| vector::is_zero(t);
        let vanishing = all_zero(&self.s_right) && all_zero(&self.t_left);
        let actions_agree = self.s_left == self.s_right && self.t_left == self.t_right;
        Ok(DichotomyReport { kernel, dias_in_kernel, quotient_associative, vanishing, actions_agree })
    }

    /// `(S^⊣, T^⊢)` as a representation of the associative algebra `D`.
    pub fn assoc_pair_view(&self) -> Result<AssociativeRepresentation> {
        if !self.algebra().is_associative_dias() {
            return Err(Error::Precondition("the algebra is not associative (⊣ ≠ ⊢)".into()));
        }
        Ok(AssociativeRepresentation {
            algebra: self.algebra().clone(),
            dim_v: self.dim_v(),
            s: self.s_left.clone(),
            t: self.t_right.clone(),
        })
    }
}

/// Nonzero vectors of `F^m` whose first nonzero coordinate is 1, in
/// lexicographic order.
fn line_representatives(elements: Vec<Scalar>, m: usize) -> Vec<Vec<Scalar>> {
    let zero = elements[0].clone();
    let one = elements[1].clone();
    let mut out = Vec::new();
    for lead in 0..m {
        let tail = m - lead - 1;
        let mut counters = vec![0usize; tail];
        loop {
            let mut v = vec![zero.clone(); m];
            v[lead] = one.clone();
            for (t, &c) in counters.iter().enumerate() {
                v[lead + 1 + t] = elements[c].clone();
            }
            out.push(v);
            let Some(pos) = counters.iter().rposition(|&c| c + 1 < elements.len()) else {
                break;
            };
            counters[pos] += 1;
            counters[pos + 1..].iter_mut().for_each(|c| *c = 0);
        }
    }
    out
}

/// A pair `(S, T)` for an associative algebra, with `S_a(v) = va` and
/// `T_a(v) = av`, in the tensor layouts of this module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativeRepresentation {
    algebra: DiassociativeAlgebra,
    dim_v: usize,
    s: Vec<Scalar>,
    t: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocRepViolation {
    /// 1: `a(bv) = (ab)v`, 2: `a(vb) = (av)b`, 3: `v(ab) = (va)b`.
    pub identity: u8,
    /// `(a, b, v)` basis indices.
    pub triple: (usize, usize, usize),
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

impl AssociativeRepresentation {
    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    /// Overwrites one entry of `S` (`side = RightMul`, indices
    /// `(v_in, a, v_out)`) or `T` (`side = LeftMul`, indices `(a, v_in, v_out)`).
    pub fn set_entry(&mut self, side: Side, a: usize, b: usize, c: usize, value: Scalar) -> Result<()> {
        let (n, m) = (self.algebra.dim(), self.dim_v);
        let (dims, idx) = match side {
            Side::RightMul => ([m, n, m], (a * n + b) * m + c),
            Side::LeftMul => ([n, m, m], (a * m + b) * m + c),
        };
        for (i, d) in [a, b, c].into_iter().zip(dims) {
            if i >= d {
                return Err(Error::IndexOutOfRange { index: i, dim: d });
            }
        }
        match side {
            Side::RightMul => self.s[idx] = value,
            Side::LeftMul => self.t[idx] = value,
        }
        Ok(())
    }

    fn apply(&self, side: Side, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let (n, m) = (self.algebra.dim(), self.dim_v);
        let mut out = vector::zeros(self.algebra.field(), m);
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let start = match side {
                    Side::RightMul => (j * n + i) * m,
                    Side::LeftMul => (i * m + j) * m,
                };
                let image = match side {
                    Side::RightMul => &self.s[start..start + m],
                    Side::LeftMul => &self.t[start..start + m],
                };
                vector::axpy(&mut out, &(ai * vj), image);
            }
        }
        out
    }

    /// The three associative module identities on all basis triples.
    pub fn check_identities(&self) -> Vec<AssocRepViolation> {
        let (n, m) = (self.algebra.dim(), self.dim_v);
        let field = self.algebra.field();
        let e = |i| vector::unit(field, n, i);
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let ab = self.algebra.product_coords(Op::Left, &e(a), &e(b));
                for k in 0..m {
                    let v = vector::unit(field, m, k);
                    let (t, s) = (Side::LeftMul, Side::RightMul);
                    let sides = [
                        (self.apply(t, &e(a), &self.apply(t, &e(b), &v)), self.apply(t, &ab, &v)),
                        (
                            self.apply(t, &e(a), &self.apply(s, &e(b), &v)),
                            self.apply(s, &e(b), &self.apply(t, &e(a), &v)),
                        ),
                        (self.apply(s, &ab, &v), self.apply(s, &e(b), &self.apply(s, &e(a), &v))),
                    ];
                    for (id, (lhs, rhs)) in sides.into_iter().enumerate() {
                        if lhs != rhs {
                            out.push(AssocRepViolation { identity: id as u8 + 1, triple: (a, b, k), lhs, rhs });
                        }
                    }
                }
            }
        }
        out
    }
}
