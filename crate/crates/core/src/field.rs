//! Exact coefficient rings: integers, rationals and prime fields.
//!
//! Elements carry whatever context they need (a prime field element knows
//! its modulus), so ring operations take no extra arguments. Constructing an
//! element from nothing goes through a field descriptor ([`Field::Desc`]).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// A commutative ring with exact arithmetic.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul_u64(&self, k: u64) -> Self;

    /// Whether the value prints with a leading minus sign.
    fn is_negative(&self) -> bool {
        false
    }

    /// Whether the value needs parentheses when printed as a coefficient.
    fn is_compound(&self) -> bool {
        false
    }
}

/// A field whose elements can be built from a descriptor.
pub trait Field: Ring {
    type Desc: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static;

    fn desc(&self) -> Self::Desc;
    fn from_int(desc: &Self::Desc, n: &BigInt) -> Self;
    fn inv(&self) -> Option<Self>;
    /// 0 for characteristic zero.
    fn characteristic(desc: &Self::Desc) -> u64;

    fn zero(desc: &Self::Desc) -> Self {
        Self::from_int(desc, &BigInt::zero())
    }

    fn one(desc: &Self::Desc) -> Self {
        Self::from_int(desc, &BigInt::one())
    }

    fn from_i64(desc: &Self::Desc, n: i64) -> Self {
        Self::from_int(desc, &BigInt::from(n))
    }

    /// All elements of the field, when it is finite.
    fn elements(desc: &Self::Desc) -> Option<Vec<Self>> {
        let _ = desc;
        None
    }

    /// Candidate roots of the monic polynomial with coefficients
    /// `coeffs[0] + coeffs[1]·t + …` that are cheap to find without
    /// factoring. Every actual root in the field must appear, or the list
    /// must be empty (no information).
    fn rational_root_candidates(coeffs: &[Self]) -> Vec<Self> {
        let _ = coeffs;
        Vec::new()
    }
}

/// Integers above this bound are not trial-factored for root candidates.
const ROOT_SEARCH_BOUND: u64 = 1_000_000_000_000;

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Ring for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_u64(&self, k: u64) -> Self {
        self * BigInt::from(k)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Descriptor for the field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalField;

impl fmt::Display for RationalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("QQ")
    }
}

impl Ring for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn zero_like(&self) -> Self {
        <Rational as Zero>::zero()
    }
    fn one_like(&self) -> Self {
        <Rational as One>::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_u64(&self, k: u64) -> Self {
        self * Rational::from_integer(BigInt::from(k))
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Field for Rational {
    type Desc = RationalField;

    fn desc(&self) -> RationalField {
        RationalField
    }
    fn from_int(_: &RationalField, n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn characteristic(_: &RationalField) -> u64 {
        0
    }

    /// Rational root theorem on the denominator-cleared polynomial.
    fn rational_root_candidates(coeffs: &[Self]) -> Vec<Self> {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let lowest = ints.iter().position(|c| !Zero::is_zero(c)).unwrap_or(0);
        let mut out = Vec::new();
        if lowest > 0 {
            out.push(<Rational as Zero>::zero());
        }
        let (Some(c0), Some(lead)) = (
            ints[lowest].abs().to_u64(),
            ints.last().and_then(|c| c.abs().to_u64()),
        ) else {
            return Vec::new();
        };
        if c0 > ROOT_SEARCH_BOUND || lead > ROOT_SEARCH_BOUND {
            return Vec::new();
        }
        for v in divisors(lead) {
            for u in divisors(c0) {
                let r = Rational::new(BigInt::from(u), BigInt::from(v));
                if !out.contains(&r) {
                    out.push(r.clone());
                    out.push(-r);
                }
            }
        }
        out
    }
}

/// Deterministic primality check by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field 𝔽_p. The modulus is bounded by `u32::MAX` so products of
/// two residues fit in a `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > u64::from(u32::MAX) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> Fp {
        let p = self.p as i128;
        Fp {
            value: (i128::from(v).rem_euclid(p)) as u64,
            p: self.p,
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Fp {
        let r = n.mod_floor(&BigInt::from(self.p));
        Fp {
            value: r.to_u64().expect("residue fits in u64"),
            p: self.p,
        }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

/// An element of 𝔽_p, stored as its representative in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    p: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn pow(&self, mut e: u64) -> Fp {
        let mut base = *self;
        let mut acc = Fp {
            value: 1 % self.p,
            p: self.p,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = Ring::mul(&acc, &base);
            }
            base = Ring::mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Ring for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn is_one(&self) -> bool {
        self.value == 1
    }
    fn zero_like(&self) -> Self {
        Fp {
            value: 0,
            p: self.p,
        }
    }
    fn one_like(&self) -> Self {
        Fp {
            value: 1,
            p: self.p,
        }
    }
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let s = self.value + other.value;
        Fp {
            value: if s >= self.p { s - self.p } else { s },
            p: self.p,
        }
    }
    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        Fp {
            value: if self.value >= other.value {
                self.value - other.value
            } else {
                self.value + self.p - other.value
            },
            p: self.p,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        Fp {
            value: self.value * other.value % self.p,
            p: self.p,
        }
    }
    fn neg(&self) -> Self {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.p - self.value
            },
            p: self.p,
        }
    }
    fn mul_u64(&self, k: u64) -> Self {
        Fp {
            value: self.value * (k % self.p) % self.p,
            p: self.p,
        }
    }
}

impl Field for Fp {
    type Desc = PrimeField;

    fn desc(&self) -> PrimeField {
        PrimeField { p: self.p }
    }
    fn from_int(desc: &PrimeField, n: &BigInt) -> Self {
        desc.from_bigint(n)
    }
    fn from_i64(desc: &PrimeField, n: i64) -> Self {
        desc.elem(n)
    }
    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.p - 2))
        }
    }
    fn characteristic(desc: &PrimeField) -> u64 {
        desc.p
    }
    fn elements(desc: &PrimeField) -> Option<Vec<Self>> {
        Some((0..desc.p).map(|value| Fp { value, p: desc.p }).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(4_294_967_291));
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(9).is_err());
        assert_eq!(PrimeField::new(9).unwrap_err().kind(), "not-prime");
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(13).unwrap();
        for v in 1..13 {
            let a = f.elem(v);
            assert!(Ring::mul(&a, &a.inv().unwrap()).is_one());
        }
        assert!(f.elem(0).inv().is_none());
        assert_eq!(f.elem(-1).value(), 12);
        assert_eq!(f.from_bigint(&BigInt::from(-27)).value(), 12);
    }

    #[test]
    fn rational_root_candidates_cover_roots() {
        let q = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
        // t^2 - 4
        let c = Rational::rational_root_candidates(&[q(-4, 1), q(0, 1), q(1, 1)]);
        assert!(c.contains(&q(2, 1)) && c.contains(&q(-2, 1)));
        // t^2 - 1/4 has roots ±1/2
        let c = Rational::rational_root_candidates(&[q(-1, 4), q(0, 1), q(1, 1)]);
        assert!(c.contains(&q(1, 2)) && c.contains(&q(-1, 2)));
        // t^2 + t has root 0
        let c = Rational::rational_root_candidates(&[q(0, 1), q(1, 1), q(1, 1)]);
        assert!(c.contains(&q(0, 1)) && c.contains(&q(-1, 1)));
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn rationals_normalize() {
        let r = Rational::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(Rational::from_i64(&RationalField, 0).to_string(), "0");
        assert!(Ring::is_zero(&Ring::sub(&r, &r)));
    }
}
