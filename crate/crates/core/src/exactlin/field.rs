use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Which base field a [`FieldSpec`] denotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rationals,
    PrimeField(u16),
}

/// The base field of every matrix, subspace and algebra. Construction of a
/// prime field checks primality, so a `FieldSpec` in hand is always valid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec(FieldKind);

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec(FieldKind::Rationals);

    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 16 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(FieldSpec(FieldKind::PrimeField(p as u16)))
    }

    pub fn kind(&self) -> FieldKind {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.0, FieldKind::PrimeField(_))
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(&self) -> Option<u32> {
        match self.0 {
            FieldKind::Rationals => None,
            FieldKind::PrimeField(p) => Some(p as u32),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self.0 {
            FieldKind::Rationals => Scalar::Rational(BigRational::zero()),
            FieldKind::PrimeField(p) => Scalar::Residue { value: 0, modulus: p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.0 {
            FieldKind::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldKind::PrimeField(p) => Scalar::Residue { value: v.rem_euclid(p as i64) as u16, modulus: p },
        }
    }

    /// `num / den` in this field; `None` when `den` vanishes in the field.
    pub fn from_fraction(&self, num: i64, den: i64) -> Option<Scalar> {
        let den = self.from_i64(den);
        den.inv().map(|d| &self.from_i64(num) * &d)
    }

    /// All field elements in the order 0, 1, …, p−1. `None` for ℚ.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.order().map(|p| (0..p as i64).map(|v| self.from_i64(v)).collect())
    }

    /// Parses a coefficient: `"p/q"` or `"p"` over ℚ, a residue in `[0, p)` over F_p.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self.0 {
            FieldKind::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let num: BigInt =
                    num.parse().map_err(|_| Error::Format(format!("invalid rational coefficient {s:?}")))?;
                let den: BigInt =
                    den.parse().map_err(|_| Error::Format(format!("invalid rational coefficient {s:?}")))?;
                if den.is_zero() {
                    return Err(Error::Format(format!("zero denominator in {s:?}")));
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            FieldKind::PrimeField(p) => {
                let v: u32 = s.parse().map_err(|_| Error::Format(format!("invalid residue {s:?} for F{p}")))?;
                if v >= p as u32 {
                    return Err(Error::Format(format!("residue {v} not in [0, {p})")));
                }
                Ok(Scalar::Residue { value: v as u16, modulus: p })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::RATIONALS);
        }
        match s.strip_prefix('F').map(str::parse::<u64>) {
            Some(Ok(p)) => FieldSpec::prime(p),
            _ => Err(Error::Format(format!("unknown field {s:?}; expected \"Q\" or \"F<p>\""))),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (guaranteed by `BigRational`); residues are reduced mod p.
///
/// Arithmetic between scalars of different fields is a logic error and panics;
/// the matrix and algebra layers check fields at their API boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u16, modulus: u16 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::RATIONALS,
            Scalar::Residue { modulus, .. } => FieldSpec(FieldKind::PrimeField(*modulus)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => {
                // Fermat: a^(p-2)
                let p = *modulus as u64;
                let mut base = *value as u64;
                let mut exp = p - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Scalar::Residue { value: acc as u16, modulus: *modulus }
            }
        })
    }

    fn expect_same(&self, other: &Scalar) {
        assert_eq!(self.field(), other.field(), "arithmetic between scalars of different fields");
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: ((*a as u32 + *b as u32) % *modulus as u32) as u16, modulus: *modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: ((*a as u32 * *b as u32) % *modulus as u32) as u16, modulus: *modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: ((*modulus as u32 - *value as u32) % *modulus as u32) as u16,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a -= b,
            _ => *self = &*self - rhs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fields() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::RATIONALS);
        assert_eq!("F7".parse::<FieldSpec>().unwrap().order(), Some(7));
        assert!("F9".parse::<FieldSpec>().is_err());
        assert!("F1".parse::<FieldSpec>().is_err());
        assert!(FieldSpec::prime(65537).is_err());
        assert!(FieldSpec::prime(65521).is_ok());
        assert_eq!(FieldSpec::prime(3).unwrap().to_string(), "F3");
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = FieldSpec::RATIONALS;
        let a = q.parse_scalar("4/-6").unwrap();
        assert_eq!(a.to_string(), "-2/3");
        let b = q.parse_scalar("2/3").unwrap();
        assert!((&a + &b).is_zero());
        assert_eq!((&a * &a).to_string(), "4/9");
        assert_eq!(a.inv().unwrap().to_string(), "-3/2");
        assert!(q.parse_scalar("1/0").is_err());
    }

    #[test]
    fn residues_stay_reduced() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.from_i64(-1).to_string(), "4");
        let two = f.from_i64(2);
        assert_eq!(two.inv().unwrap(), f.from_i64(3));
        assert_eq!((-&two).to_string(), "3");
        assert!(f.zero().inv().is_none());
        assert!(f.parse_scalar("5").is_err());
        assert_eq!(f.parse_scalar("4").unwrap(), f.from_i64(4));
        for x in f.elements().unwrap().iter().skip(1) {
            assert!((&x.inv().unwrap() * x).is_one());
        }
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixed_fields_panic() {
        let _ = &FieldSpec::RATIONALS.one() + &FieldSpec::prime(2).unwrap().one();
    }
}
