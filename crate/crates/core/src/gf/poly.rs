use std::fmt;

use super::{FieldSpec, GfError, SubfieldEmbedding};

/// A univariate polynomial over a [`FieldSpec`], ascending coefficients,
/// trailing zeros trimmed (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<u32>) -> Result<Self, GfError> {
        if let Some(&v) = coeffs.iter().find(|&&c| c >= field.q()) {
            return Err(GfError::OutOfRange { value: v, q: field.q() });
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(Self { field: field.clone(), coeffs })
    }

    pub(crate) fn from_trusted(field: &FieldSpec, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FieldSpec) -> Self {
        Self { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self { field: field.clone(), coeffs: vec![1] }
    }

    /// `c * x^deg`.
    pub fn monomial(field: &FieldSpec, c: u32, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Self::from_trusted(field, coeffs)
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(field: &FieldSpec, roots: &[u32]) -> Self {
        let mut coeffs = vec![1u32];
        for &r in roots {
            let neg_r = field.neg(r);
            let mut next = vec![0u32; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] = field.add(next[i + 1], c);
                next[i] = field.add(next[i], field.mul(c, neg_r));
            }
            coeffs = next;
        }
        Self::from_trusted(field, coeffs)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn check(&self, other: &Poly) -> Result<(), GfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, GfError> {
        self.check(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                f.add(a, b)
            })
            .collect();
        Ok(Self::from_trusted(f, coeffs))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, GfError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Self::from_trusted(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = &self.field;
        Self::from_trusted(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, GfError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Ok(Self::from_trusted(f, out))
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly), GfError> {
        self.check(divisor)?;
        let f = &self.field;
        let dd = divisor.degree().ok_or(GfError::DivisionByZero)?;
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = f.mul(rem[top], lead_inv);
            if c == 0 {
                continue;
            }
            quot[top - dd] = c;
            for (k, &dk) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + k;
                rem[idx] = f.sub(rem[idx], f.mul(c, dk));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_trusted(f, quot), Self::from_trusted(f, rem)))
    }

    /// Horner evaluation at a point of the same field.
    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluation at a point of an extension field, lifting coefficients
    /// through the embedding.
    pub fn eval_in(&self, emb: &SubfieldEmbedding, x: u32) -> Result<u32, GfError> {
        if emb.sub() != &self.field {
            return Err(GfError::FieldMismatch);
        }
        let ext = emb.ext();
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| ext.add(ext.mul(acc, x), emb.embed(c))))
    }

    /// Coefficients mapped into the extension field.
    pub fn lift(&self, emb: &SubfieldEmbedding) -> Result<Poly, GfError> {
        if emb.sub() != &self.field {
            return Err(GfError::FieldMismatch);
        }
        Ok(Self::from_trusted(emb.ext(), self.coeffs.iter().map(|&c| emb.embed(c)).collect()))
    }

    /// Text form `field <literal>; coeffs c0 c1 ... cd`.
    pub fn to_text(&self) -> String {
        let cs: Vec<String> = self.coeffs.iter().map(u32::to_string).collect();
        format!("field {}; coeffs {}", self.field, cs.join(" "))
    }

    pub fn from_text(s: &str) -> Result<Poly, GfError> {
        let bad = || GfError::BadLiteral(s.trim().to_string());
        let (head, tail) = s.trim().split_once(';').ok_or_else(bad)?;
        let lit = head.trim().strip_prefix("field").ok_or_else(bad)?;
        let field: FieldSpec = lit.trim().parse()?;
        let nums = tail.trim().strip_prefix("coeffs").ok_or_else(bad)?;
        let coeffs = nums
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Poly::new(&field, coeffs)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over GF({})", self, self.field)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn square_in_characteristic_two() {
        let f = gf2();
        let x1 = Poly::new(&f, vec![1, 1]).unwrap();
        assert_eq!(x1.mul(&x1).unwrap().coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn divide_x3_minus_1() {
        let f = gf2();
        let a = Poly::new(&f, vec![1, 0, 0, 1]).unwrap();
        let d = Poly::new(&f, vec![1, 1]).unwrap();
        let (quo, rem) = a.divmod(&d).unwrap();
        assert_eq!(quo.coeffs(), &[1, 1, 1]);
        assert!(rem.is_zero());
    }

    #[test]
    fn division_by_zero_poly() {
        let f = gf2();
        let a = Poly::one(&f);
        assert_eq!(a.divmod(&Poly::zero(&f)).unwrap_err(), GfError::DivisionByZero);
    }

    #[test]
    fn divmod_reconstructs_over_gf9() {
        let f = FieldSpec::with_order(9).unwrap();
        let a = Poly::new(&f, vec![3, 0, 7, 1, 5, 2]).unwrap();
        let d = Poly::new(&f, vec![4, 8, 2]).unwrap();
        let (quo, rem) = a.divmod(&d).unwrap();
        assert!(rem.degree().is_none_or(|r| r < 2));
        assert_eq!(quo.mul(&d).unwrap().add(&rem).unwrap(), a);
    }

    #[test]
    fn modulus_vanishes_at_generator() {
        let f = FieldSpec::new(2, 5, Some(vec![1, 0, 1, 0, 0, 1])).unwrap();
        let sub = gf2();
        let emb = SubfieldEmbedding::new(&sub, &f).unwrap();
        let m = Poly::new(&sub, vec![1, 0, 1, 0, 0, 1]).unwrap();
        // x encodes as 2
        assert_eq!(m.eval_in(&emb, 2).unwrap(), 0);
    }

    #[test]
    fn text_form_round_trip() {
        let f: FieldSpec = "3^2".parse().unwrap();
        let p = Poly::new(&f, vec![1, 0, 8, 3]).unwrap();
        let text = p.to_text();
        assert_eq!(text, "field 3^2; coeffs 1 0 8 3");
        assert_eq!(Poly::from_text(&text).unwrap(), p);
    }

    #[test]
    fn from_roots_vanishes() {
        let f = FieldSpec::with_order(16).unwrap();
        let roots = [3, 7, 11];
        let p = Poly::from_roots(&f, &roots);
        assert_eq!(p.degree(), Some(3));
        for r in roots {
            assert_eq!(p.eval(r), 0);
        }
        assert_ne!(p.eval(5), 0);
    }
}
