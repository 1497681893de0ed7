//! Coefficient fields: the rationals and prime fields `GF(p)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The characteristic of a coefficient field: `0` for the rationals, a
/// prime `p` for `GF(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldSpec(u64);

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec(0);

    /// Largest supported prime; products of two residues must fit in a `u64`.
    pub const MAX_PRIME: u64 = (1 << 31) - 1;

    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 {
            return Ok(FieldSpec(0));
        }
        if characteristic > Self::MAX_PRIME || !is_prime(characteristic) {
            return Err(Error::InvalidField(characteristic));
        }
        Ok(FieldSpec(characteristic))
    }

    pub fn characteristic(self) -> u64 {
        self.0
    }

    pub fn is_rational(self) -> bool {
        self.0 == 0
    }

    pub fn is_char_two(self) -> bool {
        self.0 == 2
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::RATIONALS
    }
}

impl TryFrom<u64> for FieldSpec {
    type Error = Error;

    fn try_from(c: u64) -> Result<Self> {
        FieldSpec::new(c)
    }
}

impl From<FieldSpec> for u64 {
    fn from(f: FieldSpec) -> u64 {
        f.0
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "QQ"),
            p => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field whose elements are manipulated through the field object.
///
/// Elements do not carry their field; the prime field needs its modulus at
/// every operation, so arithmetic goes through `&self`.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of `num / den`; `None` when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    /// A rational representative `(num, den)`, `den > 0`. Prime-field
    /// elements map to the symmetric residue in `(-p/2, p/2]`.
    fn to_ratio(&self, a: &Self::Elem) -> (BigInt, BigInt);

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `a - b * c`
    fn sub_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(b, c))
    }
}

/// The field of rational numbers, with arbitrary-precision reduced fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::RATIONALS
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        // Integer fast path: almost every coefficient in practice is integral.
        if a.denom().is_one() && b.denom().is_one() {
            return BigRational::from_integer(a.numer() + b.numer());
        }
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.denom().is_one() && b.denom().is_one() {
            return BigRational::from_integer(a.numer() - b.numer());
        }
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.denom().is_one() && b.denom().is_one() {
            return BigRational::from_integer(a.numer() * b.numer());
        }
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn to_ratio(&self, a: &BigRational) -> (BigInt, BigInt) {
        (a.numer().clone(), a.denom().clone())
    }
}

/// The prime field `GF(p)`; elements are residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        let spec = FieldSpec::new(p)?;
        if spec.is_rational() {
            return Err(Error::InvalidField(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        n.mod_floor(&m).to_u64().expect("residue fits in u64")
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u64> {
        let d = self.reduce_big(den);
        let di = self.inv(&d)?;
        Some(self.mul(&self.reduce_big(num), &di))
    }
    fn to_ratio(&self, a: &u64) -> (BigInt, BigInt) {
        let v = if *a > self.p / 2 {
            BigInt::from(*a) - BigInt::from(self.p)
        } else {
            BigInt::from(*a)
        };
        (v, BigInt::one())
    }
}

/// Runs `$body` with `$field` bound to the concrete field described by a
/// [`FieldSpec`].
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $field:ident => $body:expr) => {{
        let spec: $crate::FieldSpec = $spec;
        if spec.is_rational() {
            let $field = $crate::field::Rationals;
            $body
        } else {
            let $field = $crate::field::PrimeField::new(spec.characteristic())
                .expect("FieldSpec holds a validated prime");
            $body
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_spec_validation() {
        assert!(FieldSpec::new(0).is_ok());
        assert!(FieldSpec::new(5).is_ok());
        assert!(FieldSpec::new(2).unwrap().is_char_two());
        assert!(matches!(FieldSpec::new(4), Err(Error::InvalidField(4))));
        assert!(FieldSpec::new(1).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.add(&3, &4), 2);
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.mul(&3, &4), 2);
        assert_eq!(f.inv(&2), Some(3));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 4);
        assert_eq!(f.to_ratio(&4), (BigInt::from(-1), BigInt::one()));
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(5)), None);
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(2)), Some(3));
    }

    #[test]
    fn rational_fast_paths_agree() {
        let q = Rationals;
        let half = q.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        let three = q.from_i64(3);
        assert_eq!(q.add(&half, &three), BigRational::new(7.into(), 2.into()));
        assert_eq!(q.mul(&three, &three), q.from_i64(9));
        assert_eq!(q.sub(&three, &q.from_i64(5)), q.from_i64(-2));
    }
}
