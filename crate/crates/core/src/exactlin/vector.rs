//! Coordinate vectors are plain `Vec<Scalar>`; these helpers assume all
//! entries share one field.

use super::{FieldSpec, Scalar};

pub fn zeros(field: FieldSpec, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

pub fn unit(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zeros(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| c * x).collect()
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

/// Linear combination `Σ coeffs[i] * vectors[i]` of length `n`.
pub fn combination<'a>(
    field: FieldSpec,
    n: usize,
    terms: impl IntoIterator<Item = (&'a Scalar, &'a [Scalar])>,
) -> Vec<Scalar> {
    let mut acc = zeros(field, n);
    for (c, v) in terms {
        axpy(&mut acc, c, v);
    }
    acc
}
