//! Finite fields GF(p^m) with a canonical integer encoding.
//!
//! An element of GF(p^m) is stored as the integer `0..q` whose base-p digits
//! are its coefficients in the polynomial basis `1, x, ..., x^(m-1)` (lowest
//! digit first). With that encoding, `0` is zero, `1` is one, and every file
//! format in this crate is field-independent: a matrix is just integers plus a
//! field literal.
//!
//! [`FieldSpec`] is a cheap, shareable handle (an `Arc` around the modulus and
//! the exp/log tables). Hot loops use the raw `u32` methods on the handle;
//! [`Fe`] is the checked, self-describing element type for API boundaries.

mod modulus;
mod poly;
mod subfield;

pub use poly::Poly;
pub use subfield::{minimal_polynomial, subfield_test, SubfieldEmbedding};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Largest field order this crate will build tables for.
pub const MAX_FIELD_ORDER: u32 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus coefficient {0} is not a residue mod p")]
    BadCoefficient(u32),
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("field order {p}^{m} exceeds the supported maximum {max}", max = MAX_FIELD_ORDER)]
    TooLarge { p: u32, m: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("element {value} is out of range for GF({q})")]
    OutOfRange { value: u32, q: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("GF({sub}) is not a subfield of GF({ext})")]
    NotASubfield { sub: u32, ext: u32 },
    #[error("minimal polynomial has a coefficient outside the subfield")]
    CoefficientOutsideSubfield,
    #[error("bad field literal `{0}`")]
    BadLiteral(String),
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// Ascending coefficients, length m + 1, monic.
    modulus: Vec<u32>,
    default_modulus: bool,
    primitive: u32,
    /// exp[i] = primitive^i for i in 0..2(q-1), doubled to skip a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field GF(p^m) under a fixed monic irreducible modulus.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl FieldSpec {
    /// Builds GF(p^m). Without an explicit modulus the smallest monic
    /// irreducible polynomial of degree m is used, ordered by the integer
    /// whose base-p digits are the coefficients.
    pub fn new(p: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Self, GfError> {
        if !is_prime(p as u64) {
            return Err(GfError::NotPrime(p));
        }
        if m == 0 {
            return Err(GfError::ZeroDegree);
        }
        let q = checked_order(p, m).ok_or(GfError::TooLarge { p, m })?;
        let default = modulus::default_modulus(p, m as usize);
        let modulus = match modulus {
            None => default.clone(),
            Some(mut coeffs) => {
                while coeffs.len() > 1 && coeffs.last() == Some(&0) {
                    coeffs.pop();
                }
                if coeffs.len() != m as usize + 1 {
                    return Err(GfError::DegreeMismatch {
                        expected: m as usize,
                        found: coeffs.len().saturating_sub(1),
                    });
                }
                if let Some(&c) = coeffs.iter().find(|&&c| c >= p) {
                    return Err(GfError::BadCoefficient(c));
                }
                if coeffs[m as usize] != 1 {
                    return Err(GfError::NotMonic);
                }
                if !modulus::is_irreducible(&coeffs, p) {
                    return Err(GfError::ReducibleModulus(p));
                }
                coeffs
            }
        };
        let default_modulus = modulus == default;
        Ok(Self(Arc::new(build_tables(p, m, q, modulus, default_modulus))))
    }

    /// GF(p) for a prime p.
    pub fn prime(p: u32) -> Result<Self, GfError> {
        Self::new(p, 1, None)
    }

    /// The field of order `q` (a prime power) under its default modulus.
    pub fn with_order(q: u64) -> Result<Self, GfError> {
        let (p, m) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
        Self::new(p, m, None)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn has_default_modulus(&self) -> bool {
        self.0.default_modulus
    }

    pub fn zero(&self) -> Fe {
        Fe { value: 0, field: self.clone() }
    }

    pub fn one(&self) -> Fe {
        Fe { value: 1, field: self.clone() }
    }

    /// Wraps an encoding as a checked element.
    pub fn elem(&self, value: u32) -> Result<Fe, GfError> {
        if value >= self.q() {
            return Err(GfError::OutOfRange { value, q: self.q() });
        }
        Ok(Fe { value, field: self.clone() })
    }

    /// The smallest-encoded element of multiplicative order q - 1.
    pub fn primitive_element(&self) -> Fe {
        Fe { value: self.0.primitive, field: self.clone() }
    }

    pub fn primitive(&self) -> u32 {
        self.0.primitive
    }

    /// Iterator over all encodings `0..q`.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.q()
    }

    // Raw arithmetic on encodings. Callers guarantee operands are < q.

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            a ^ b
        } else if self.0.m == 1 {
            (a + b) % p
        } else {
            let (mut a, mut b, mut place, mut out) = (a, b, 1, 0);
            while a > 0 || b > 0 {
                out += ((a % p + b % p) % p) * place;
                place *= p;
                a /= p;
                b /= p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            a
        } else if self.0.m == 1 {
            (p - a) % p
        } else {
            let (mut a, mut place, mut out) = (a, 1, 0);
            while a > 0 {
                out += ((p - a % p) % p) * place;
                place *= p;
                a /= p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.0;
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let inner = &*self.0;
        let order = inner.q - 1;
        Some(inner.exp[((order - inner.log[a as usize]) % order) as usize])
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^k` for any integer k; `None` only for a negative power of zero.
    pub fn pow(&self, a: u32, k: i64) -> Option<u32> {
        if k == 0 {
            return Some(1);
        }
        if a == 0 {
            return if k > 0 { Some(0) } else { None };
        }
        let order = (self.0.q - 1) as i64;
        let e = (self.0.log[a as usize] as i64 * k).rem_euclid(order);
        Some(self.0.exp[e as usize])
    }

    /// Discrete logarithm base the canonical primitive element.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.0.log[a as usize])
    }

    /// primitive^e.
    pub fn exp(&self, e: u64) -> u32 {
        self.0.exp[(e % (self.0.q as u64 - 1)) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> Option<u64> {
        let l = self.log(a)? as u64;
        let group = self.0.q as u64 - 1;
        Some(group / gcd(group, l))
    }

    /// Base-p digits of an encoding (length m, lowest degree first).
    pub fn digits(&self, mut a: u32) -> Vec<u32> {
        let p = self.0.p;
        (0..self.0.m)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    /// Field literal `p^m` or `p^m/c0,...,cm` (see [`FromStr`]).
    pub fn literal(&self) -> String {
        self.to_string()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.0.p, self.0.m)?;
        if !self.0.default_modulus {
            let cs: Vec<String> = self.0.modulus.iter().map(u32::to_string).collect();
            write!(f, "/{}", cs.join(","))?;
        }
        Ok(())
    }
}

/// Parses `p^m/c0,...,cm`, `p^m`, or a bare prime power `q`.
impl FromStr for FieldSpec {
    type Err = GfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GfError::BadLiteral(s.to_string());
        let s = s.trim();
        let (head, modulus) = match s.split_once('/') {
            Some((h, tail)) => {
                let coeffs = tail
                    .split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                (h, Some(coeffs))
            }
            None => (s, None),
        };
        match head.split_once('^') {
            Some((p, m)) => {
                let p = p.trim().parse().map_err(|_| bad())?;
                let m = m.trim().parse().map_err(|_| bad())?;
                Self::new(p, m, modulus)
            }
            None => {
                if modulus.is_some() {
                    return Err(bad());
                }
                let q: u64 = head.parse().map_err(|_| bad())?;
                Self::with_order(q)
            }
        }
    }
}

/// A field element bound to its field.
#[derive(Clone, PartialEq, Eq)]
pub struct Fe {
    value: u32,
    field: FieldSpec,
}

impl Fe {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Fe) -> Result<(), GfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    fn with(&self, value: u32) -> Fe {
        Fe { value, field: self.field.clone() }
    }

    pub fn add(&self, other: &Fe) -> Result<Fe, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Fe) -> Result<Fe, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn neg(&self) -> Fe {
        self.with(self.field.neg(self.value))
    }

    pub fn mul(&self, other: &Fe) -> Result<Fe, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &Fe) -> Result<Fe, GfError> {
        self.same_field(other)?;
        let v = self.field.div(self.value, other.value).ok_or(GfError::DivisionByZero)?;
        Ok(self.with(v))
    }

    pub fn inv(&self) -> Result<Fe, GfError> {
        let v = self.field.inv(self.value).ok_or(GfError::DivisionByZero)?;
        Ok(self.with(v))
    }

    /// Negative exponents invert first.
    pub fn pow(&self, k: i64) -> Result<Fe, GfError> {
        let v = self.field.pow(self.value, k).ok_or(GfError::DivisionByZero)?;
        Ok(self.with(v))
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.value, self.field)
    }
}

fn build_tables(p: u32, m: u32, q: u32, modulus: Vec<u32>, default_modulus: bool) -> Inner {
    let slow = modulus::SlowMul::new(p, m, &modulus);
    let group = (q - 1) as u64;
    let factors = distinct_prime_factors(group);
    let primitive = (1..q)
        .find(|&g| factors.iter().all(|&f| slow.pow(g, group / f) != 1))
        .expect("a finite field has a primitive element");

    let mut exp = vec![0u32; 2 * (q as usize - 1)];
    let mut log = vec![0u32; q as usize];
    let mut acc = 1u32;
    for i in 0..(q as usize - 1) {
        exp[i] = acc;
        exp[i + q as usize - 1] = acc;
        log[acc as usize] = i as u32;
        acc = slow.mul(acc, primitive);
    }
    Inner { p, m, q, modulus, default_modulus, primitive, exp, log }
}

fn checked_order(p: u32, m: u32) -> Option<u32> {
    let q = (p as u64).checked_pow(m)?;
    (q <= MAX_FIELD_ORDER as u64).then_some(q as u32)
}

pub(crate) fn is_prime(n: u64) -> bool {
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

/// `q = p^m` with p prime, or `None`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1 && p <= u32::MAX as u64).then_some((p as u32, m))
}

pub(crate) fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_gf2() {
        let f = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(f.primitive(), 1);
    }

    #[test]
    fn gf4_defining_relation() {
        let f = FieldSpec::new(2, 2, Some(vec![1, 1, 1])).unwrap();
        // alpha = x encodes as 2; alpha^2 = alpha + 1 encodes as 3
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.primitive(), 2);
    }

    #[test]
    fn composite_characteristic_rejected() {
        assert_eq!(FieldSpec::new(4, 1, None).unwrap_err(), GfError::NotPrime(4));
    }

    #[test]
    fn modulus_errors() {
        assert_eq!(
            FieldSpec::new(2, 2, Some(vec![1, 0, 1])).unwrap_err(),
            GfError::ReducibleModulus(2)
        );
        assert!(matches!(
            FieldSpec::new(2, 3, Some(vec![1, 1, 1])).unwrap_err(),
            GfError::DegreeMismatch { expected: 3, found: 2 }
        ));
        assert_eq!(FieldSpec::new(3, 2, Some(vec![1, 0, 2])).unwrap_err(), GfError::NotMonic);
        assert!(matches!(FieldSpec::new(2, 21, None), Err(GfError::TooLarge { .. })));
    }

    #[test]
    fn gf5_inverse_and_primitive() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.inv(2), Some(3));
        assert_eq!(f.primitive(), 2);
        let two = f.elem(2).unwrap();
        assert_eq!(two.inv().unwrap().value(), 3);
        assert_eq!(f.zero().inv(), Err(GfError::DivisionByZero));
    }

    #[test]
    fn pow_edge_cases() {
        let f = FieldSpec::with_order(9).unwrap();
        for a in f.elements() {
            assert_eq!(f.pow(a, 0), Some(1));
        }
        assert_eq!(f.pow(0, 3), Some(0));
        assert_eq!(f.pow(0, -1), None);
        for a in 1..9 {
            let ai = f.pow(a, -1).unwrap();
            assert_eq!(f.mul(a, ai), 1);
            assert_eq!(f.pow(a, -3), f.pow(ai, 3));
        }
    }

    #[test]
    fn field_mismatch_detected() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(f2.one().add(&f3.one()), Err(GfError::FieldMismatch));
    }

    #[test]
    fn default_moduli_are_smallest() {
        assert_eq!(FieldSpec::new(2, 3, None).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldSpec::new(2, 5, None).unwrap().modulus(), &[1, 0, 1, 0, 0, 1]);
        assert_eq!(FieldSpec::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FieldSpec::new(2, 4, None).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn literal_round_trip() {
        let f: FieldSpec = "2^2/1,1,1".parse().unwrap();
        assert_eq!(f.q(), 4);
        assert_eq!(f.literal(), "2^2");
        let g: FieldSpec = "2^3/1,0,1,1".parse().unwrap();
        assert_eq!(g.literal(), "2^3/1,0,1,1");
        assert_eq!(g.literal().parse::<FieldSpec>().unwrap(), g);
        let h: FieldSpec = "9".parse().unwrap();
        assert_eq!((h.p(), h.m()), (3, 2));
        assert!("6".parse::<FieldSpec>().is_err());
        assert!("2^x".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn primitive_powers_cover_group() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81, 128, 243, 256] {
            let f = FieldSpec::with_order(q).unwrap();
            let g = f.primitive();
            let mut seen = vec![false; q as usize];
            let mut acc = 1;
            for _ in 1..q {
                acc = f.mul(acc, g);
                assert!(!seen[acc as usize], "GF({q}) repeat");
                seen[acc as usize] = true;
            }
            assert!(!seen[0]);
            assert_eq!(seen.iter().filter(|&&s| s).count() as u64, q - 1);
            // smallest such element: no smaller encoding has full order
            for a in 1..g {
                assert!(f.order(a).unwrap() < q - 1);
            }
        }
    }
}
