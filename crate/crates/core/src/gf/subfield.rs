use std::collections::HashMap;

use super::{FieldSpec, GfError, Poly};

/// A fixed field embedding GF(q) -> GF(Q), with q^s = Q.
///
/// The image of the subfield generator is the first power `(γ^N)^j`, j >= 1,
/// that is a root of the subfield modulus, where γ is the canonical primitive
/// element of the extension and N = (Q - 1)/(q - 1). Prime subfields embed as
/// the constants `0..p`.
#[derive(Clone, Debug)]
pub struct SubfieldEmbedding {
    sub: FieldSpec,
    ext: FieldSpec,
    image: Vec<u32>,
    preimage: HashMap<u32, u32>,
}

impl SubfieldEmbedding {
    pub fn new(sub: &FieldSpec, ext: &FieldSpec) -> Result<Self, GfError> {
        let not_sub = || GfError::NotASubfield { sub: sub.q(), ext: ext.q() };
        if sub.p() != ext.p() || !ext.m().is_multiple_of(sub.m()) {
            return Err(not_sub());
        }
        let image: Vec<u32> = if sub == ext {
            sub.elements().collect()
        } else if sub.m() == 1 {
            // constants of the extension are its prime subfield
            sub.elements().collect()
        } else {
            let big = (ext.q() - 1) / (sub.q() - 1);
            let zeta = ext.exp(big as u64);
            let modulus = sub.modulus();
            let eval = |x: u32| modulus.iter().rev().fold(0, |acc, &c| ext.add(ext.mul(acc, x), c));
            let beta = (1..sub.q())
                .map(|j| ext.pow(zeta, j as i64).expect("nonzero"))
                .find(|&x| eval(x) == 0)
                .ok_or_else(not_sub)?;
            sub.elements()
                .map(|a| {
                    sub.digits(a)
                        .iter()
                        .rev()
                        .fold(0, |acc, &d| ext.add(ext.mul(acc, beta), d))
                })
                .collect()
        };
        let preimage = image.iter().enumerate().map(|(a, &e)| (e, a as u32)).collect();
        Ok(Self { sub: sub.clone(), ext: ext.clone(), image, preimage })
    }

    pub fn sub(&self) -> &FieldSpec {
        &self.sub
    }

    pub fn ext(&self) -> &FieldSpec {
        &self.ext
    }

    pub fn embed(&self, a: u32) -> u32 {
        self.image[a as usize]
    }

    /// The subfield encoding of an extension element, if it lies in the image.
    pub fn restrict(&self, e: u32) -> Option<u32> {
        self.preimage.get(&e).copied()
    }
}

/// `Some(encoding in GF(q))` iff `e^q = e` in the extension.
pub fn subfield_test(emb: &SubfieldEmbedding, e: u32) -> Option<u32> {
    let ext = emb.ext();
    let fixed = ext.pow(e, emb.sub().q() as i64).expect("nonnegative power") == e;
    if fixed {
        Some(emb.restrict(e).expect("Frobenius-fixed elements form the embedded subfield"))
    } else {
        None
    }
}

/// Product of `(x - c)` over the distinct conjugates `e^(q^i)`, as a
/// polynomial over the subfield.
pub fn minimal_polynomial(emb: &SubfieldEmbedding, e: u32) -> Result<Poly, GfError> {
    let ext = emb.ext();
    let q = emb.sub().q() as i64;
    let mut conjugates = vec![e];
    let mut c = ext.pow(e, q).expect("nonnegative power");
    while c != e {
        conjugates.push(c);
        c = ext.pow(c, q).expect("nonnegative power");
    }
    let over_ext = Poly::from_roots(ext, &conjugates);
    let coeffs = over_ext
        .coeffs()
        .iter()
        .map(|&c| emb.restrict(c).ok_or(GfError::CoefficientOutsideSubfield))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::from_trusted(emb.sub(), coeffs))
}
