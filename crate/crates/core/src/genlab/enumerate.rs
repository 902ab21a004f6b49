//! Exhaustive enumeration of algebras and representations over F_2 and F_3
//! in small dimensions, using small-integer arithmetic for the search and
//! the generic exact checkers for the final verification.

use rayon::prelude::*;

use crate::algebra::{DiassociativeAlgebra, Op, Side, StructureTable, AXIOMS};
use crate::error::{Error, Result};
use crate::exactlin::{FieldKind, FieldSpec, Scalar};
use crate::representation::{Representation, RepresentationData, ACTIONS};

/// Largest number of candidates tried for one action tensor.
const MAX_LEVEL_CANDIDATES: u64 = 1 << 16;

fn small_prime(field: FieldSpec) -> Result<u8> {
    match field.kind() {
        FieldKind::PrimeField(p) if p == 2 || p == 3 => Ok(p as u8),
        _ => Err(Error::EnumerationBound(format!("exhaustive enumeration is limited to F2 and F3, got {field}"))),
    }
}

/// Runs `f` on a dedicated pool with `workers` threads.
pub(crate) fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map(|pool| pool.install(f))
        .unwrap_or_else(|_| panic!("could not start a pool of {workers} threads"))
}

/// Digits of `code` in base `p`, most significant first.
fn decode(mut code: u64, p: u8, len: usize, out: &mut [u8]) {
    for slot in out[..len].iter_mut().rev() {
        *slot = (code % p as u64) as u8;
        code /= p as u64;
    }
}

/// `(x a y) b z − x c (y d z)` vanishes on basis triples, for tables given
/// as base-p digits.
fn identity_holds(n: usize, p: u8, a: &[u8], b: &[u8], c: &[u8], d: &[u8]) -> bool {
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    let p = p as u32;
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for m in 0..n {
                    let (mut lhs, mut rhs) = (0u32, 0u32);
                    for k in 0..n {
                        lhs += a[idx(i, j, k)] as u32 * b[idx(k, l, m)] as u32;
                        rhs += d[idx(j, l, k)] as u32 * c[idx(i, k, m)] as u32;
                    }
                    if lhs % p != rhs % p {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn to_scalars(field: FieldSpec, digits: &[u8]) -> Vec<Scalar> {
    digits.iter().map(|&v| field.from_i64(v as i64)).collect()
}

/// Every table over F_p (p ∈ {2, 3}, `1 ≤ dim ≤ 2`) satisfying the five
/// axioms, ordered lexicographically by the ⊣ tensor and then the ⊢ tensor.
pub fn enumerate_all(field: FieldSpec, dim: usize) -> Result<Vec<DiassociativeAlgebra>> {
    enumerate_all_with(field, dim, 1)
}

/// [`enumerate_all`] with the candidate pairs split across `workers`
/// threads; the output order does not depend on `workers`.
pub fn enumerate_all_with(field: FieldSpec, dim: usize, workers: usize) -> Result<Vec<DiassociativeAlgebra>> {
    let p = small_prime(field)?;
    if !(1..=2).contains(&dim) {
        return Err(Error::EnumerationBound(format!("exhaustive enumeration supports dimensions 1 and 2, got {dim}")));
    }
    let n = dim;
    let cells = n * n * n;
    let count = (p as u64).pow(cells as u32);
    // each product on its own must be associative (the first two axioms)
    let associative: Vec<Vec<u8>> = (0..count)
        .map(|code| {
            let mut t = vec![0u8; cells];
            decode(code, p, cells, &mut t);
            t
        })
        .filter(|t| identity_holds(n, p, t, t, t, t))
        .collect();
    let mixed = |l: &[u8], r: &[u8]| {
        AXIOMS[2..].iter().all(|ax| {
            let pick = |op: Op| if op == Op::Left { l } else { r };
            identity_holds(n, p, pick(ax.lhs_inner), pick(ax.lhs_outer), pick(ax.rhs_outer), pick(ax.rhs_inner))
        })
    };
    let pairs: Vec<(&Vec<u8>, &Vec<u8>)> = with_workers(workers, || {
        associative
            .par_iter()
            .flat_map_iter(|l| associative.iter().filter(|r| mixed(l, r)).map(move |r| (l, r)))
            .collect()
    });
    pairs
        .into_iter()
        .map(|(l, r)| StructureTable::from_tensors(field, n, to_scalars(field, l), to_scalars(field, r))?.verify())
        .collect()
}

/// One of the fifteen identities in operator form on basis elements.
#[derive(Clone, Copy, Debug)]
struct OperatorIdentity {
    a: Op,
    b: Op,
    c: Op,
    d: Op,
    /// Slot of the module variable.
    pos: u8,
}

fn slot(side: Side, op: Op) -> usize {
    ACTIONS.iter().position(|&x| x == (side, op)).expect("all four actions listed")
}

impl OperatorIdentity {
    /// Action slots used by the identity.
    fn involved(&self) -> Vec<usize> {
        let (s, t) = (Side::RightMul, Side::LeftMul);
        match self.pos {
            3 => vec![slot(t, self.b), slot(t, self.c), slot(t, self.d)],
            2 => vec![slot(s, self.b), slot(t, self.a), slot(t, self.c), slot(s, self.d)],
            _ => vec![slot(s, self.a), slot(s, self.b), slot(s, self.c)],
        }
    }
}

/// Small-integer search state: for each action slot, `n` matrices of size
/// `m×m` stored row-major; column `j` of the matrix of `e_i` is the image of
/// `v_j`.
struct RepSearch {
    p: u32,
    n: usize,
    m: usize,
    left: Vec<u8>,
    right: Vec<u8>,
}

impl RepSearch {
    fn table(&self, op: Op) -> &[u8] {
        if op == Op::Left {
            &self.left
        } else {
            &self.right
        }
    }

    fn mat<'a>(&self, acts: &'a [Vec<u8>; 4], k: usize, i: usize) -> &'a [u8] {
        let mm = self.m * self.m;
        &acts[k][i * mm..(i + 1) * mm]
    }

    fn matmul(&self, x: &[u8], y: &[u8]) -> Vec<u32> {
        let m = self.m;
        let mut out = vec![0u32; m * m];
        for r in 0..m {
            for c in 0..m {
                out[r * m + c] = (0..m).map(|t| x[r * m + t] as u32 * y[t * m + c] as u32).sum::<u32>() % self.p;
            }
        }
        out
    }

    /// `Σ_k coeffs[k] · M_{slot, k}`.
    fn combine(&self, acts: &[Vec<u8>; 4], k: usize, coeffs: &[u8]) -> Vec<u32> {
        let mm = self.m * self.m;
        let mut out = vec![0u32; mm];
        for (e, &c) in coeffs.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (o, &v) in out.iter_mut().zip(self.mat(acts, k, e)) {
                *o = (*o + c as u32 * v as u32) % self.p;
            }
        }
        out
    }

    fn holds(&self, id: &OperatorIdentity, acts: &[Vec<u8>; 4]) -> bool {
        let (n, s, t) = (self.n, Side::RightMul, Side::LeftMul);
        let row = |op: Op, i: usize, j: usize| &self.table(op)[(i * n + j) * n..(i * n + j + 1) * n];
        for x in 0..n {
            for y in 0..n {
                let ok = match id.pos {
                    // T^b_{x a y} = T^c_x T^d_y
                    3 => {
                        self.combine(acts, slot(t, id.b), row(id.a, x, y))
                            == self.matmul(self.mat(acts, slot(t, id.c), x), self.mat(acts, slot(t, id.d), y))
                    }
                    // S^b_z T^a_x = T^c_x S^d_z with z = y
                    2 => {
                        self.matmul(self.mat(acts, slot(s, id.b), y), self.mat(acts, slot(t, id.a), x))
                            == self.matmul(self.mat(acts, slot(t, id.c), x), self.mat(acts, slot(s, id.d), y))
                    }
                    // S^b_z S^a_y = S^c_{y d z} with (y, z) = (x, y)
                    _ => {
                        self.matmul(self.mat(acts, slot(s, id.b), y), self.mat(acts, slot(s, id.a), x))
                            == self.combine(acts, slot(s, id.c), row(id.d, x, y))
                    }
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// Every representation of `d` (over F_2 or F_3) on `F^m`, found by a
/// backtracking search over the four action tensors with operator forms of
/// the identities as pruning, then verified by the generic checker.
pub fn enumerate_representations(d: &DiassociativeAlgebra, m: usize) -> Result<Vec<Representation>> {
    let field = d.field();
    let p = small_prime(field)?;
    let n = d.dim();
    let cells = n * m * m;
    let per_level = (p as u64).checked_pow(cells as u32).filter(|&c| c <= MAX_LEVEL_CANDIDATES);
    let Some(per_level) = per_level else {
        return Err(Error::EnumerationBound(format!(
            "{p}^{cells} candidates per action exceed the limit of {MAX_LEVEL_CANDIDATES}"
        )));
    };
    let digits = |t: &[Scalar]| -> Vec<u8> {
        t.iter()
            .map(|s| match s {
                Scalar::Residue { value, .. } => *value as u8,
                Scalar::Rational(_) => unreachable!("prime field checked above"),
            })
            .collect()
    };
    let search = RepSearch { p: p as u32, n, m, left: digits(d.tensor(Op::Left)), right: digits(d.tensor(Op::Right)) };
    // choose T⊢, T⊣, S⊢, S⊣ in turn; check each identity once its actions are fixed
    let order = [
        slot(Side::LeftMul, Op::Right),
        slot(Side::LeftMul, Op::Left),
        slot(Side::RightMul, Op::Right),
        slot(Side::RightMul, Op::Left),
    ];
    let mut checks: [Vec<OperatorIdentity>; 4] = Default::default();
    for ax in &AXIOMS {
        for pos in 1..=3 {
            let id = OperatorIdentity { a: ax.lhs_inner, b: ax.lhs_outer, c: ax.rhs_outer, d: ax.rhs_inner, pos };
            let level = id
                .involved()
                .iter()
                .map(|k| order.iter().position(|o| o == k).expect("every slot is ordered"))
                .max()
                .expect("identities involve actions");
            checks[level].push(id);
        }
    }
    let mut found = Vec::new();
    let mut acts: [Vec<u8>; 4] = std::array::from_fn(|_| vec![0u8; cells]);
    backtrack(&search, &order, &checks, per_level, 0, &mut acts, &mut found);

    let mm = m * m;
    found
        .into_iter()
        .map(|acts| {
            let mut data = RepresentationData::zero(d.clone(), m);
            for (k, &(side, op)) in ACTIONS.iter().enumerate() {
                for i in 0..n {
                    for o in 0..m {
                        for j in 0..m {
                            let v = acts[k][i * mm + o * m + j];
                            if v != 0 {
                                let (a, b) = match side {
                                    Side::LeftMul => (i, j),
                                    Side::RightMul => (j, i),
                                };
                                data.set_entry(side, op, a, b, o, field.from_i64(v as i64))?;
                            }
                        }
                    }
                }
            }
            data.verify()
        })
        .collect()
}

fn backtrack(
    search: &RepSearch,
    order: &[usize; 4],
    checks: &[Vec<OperatorIdentity>; 4],
    per_level: u64,
    level: usize,
    acts: &mut [Vec<u8>; 4],
    found: &mut Vec<[Vec<u8>; 4]>,
) {
    if level == 4 {
        found.push(acts.clone());
        return;
    }
    let k = order[level];
    let cells = acts[k].len();
    for code in 0..per_level {
        decode(code, search.p as u8, cells, &mut acts[k]);
        if checks[level].iter().all(|id| search.holds(id, acts)) {
            backtrack(search, order, checks, per_level, level + 1, acts, found);
        }
    }
    acts[k].iter_mut().for_each(|v| *v = 0);
}
