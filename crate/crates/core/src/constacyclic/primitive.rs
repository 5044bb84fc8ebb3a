//! The [n, n − b − 1] constacyclic family of length n = (q^{b+1} − 1)/(q − 1)
//! generated by the minimal polynomial of a primitive element of GF(q^{b+1}).

use crate::bmetric::{min_bdist_certified, CodeReport};
use crate::gf::{gcd, minimal_polynomial, FieldSpec, GfError, SubfieldEmbedding};

use super::{consta_code, ConstaCode, ConstaError};

#[derive(Debug, Clone)]
pub struct PrimitiveFamily {
    pub code: ConstaCode,
    /// GF(q^{b+1}).
    pub ext: FieldSpec,
    /// The primitive element whose minimal polynomial generates the code.
    pub delta: u32,
    pub b: usize,
    /// Certified (or best-effort) b-distance report; `None` when the search
    /// found no nonzero codeword within the cap.
    pub report: Option<CodeReport>,
}

impl PrimitiveFamily {
    /// True when the report certifies d_b = 2b + 1.
    pub fn certified_mds(&self) -> bool {
        self.report.as_ref().is_some_and(|r| r.certified && r.d_b == 2 * self.b + 1 && r.is_mds)
    }
}

/// Requires b >= 4 and GF(q^{b+1}) within the supported field size.
pub fn build_primitive_family(field: &FieldSpec, b: usize, w_cap: usize) -> Result<PrimitiveFamily, ConstaError> {
    if b < 4 {
        return Err(ConstaError::BadParams(format!("b = {b} must be at least 4")));
    }
    let q = field.q() as u64;
    let ext_m = field.m() * (b as u32 + 1);
    let ext = FieldSpec::new(field.p(), ext_m, None)?;
    let order = ext.q() as u64 - 1;
    let n = order / (q - 1);
    let delta = (1..order)
        .filter(|&t| gcd(t, order) == 1)
        .map(|t| ext.exp(t))
        .find(|&d| ext.pow(d, n as i64).and_then(|e| ext.order(e)) == Some(q - 1))
        .expect("the primitive element itself qualifies");
    let emb = SubfieldEmbedding::new(field, &ext)?;
    let eta_ext = ext.pow(delta, n as i64).expect("nonzero");
    let eta = emb.restrict(eta_ext).ok_or(GfError::CoefficientOutsideSubfield)?;
    let g = minimal_polynomial(&emb, delta)?;
    let code = consta_code(n as usize, eta, &g)?;
    let report = min_bdist_certified(&code.code, b, w_cap).ok();
    Ok(PrimitiveFamily { code, ext, delta, b, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constacyclic::{bch_lower_bound, defining_set};

    #[test]
    fn binary_b4() {
        let f = FieldSpec::with_order(2).unwrap();
        let t = build_primitive_family(&f, 4, 8).unwrap();
        assert_eq!((t.code.n, t.code.k()), (31, 26));
        assert_eq!(t.code.g.degree(), Some(5));
        let r = t.report.as_ref().unwrap();
        assert_eq!(r.d_b, 9);
        assert!(t.certified_mds());
        let d_h = r.d_h.unwrap();
        assert!((3..=6).contains(&d_h));
        r.audit().unwrap();
        let (rs, z) = defining_set(&t.code).unwrap();
        assert_eq!(z.len(), 5);
        assert!(rs.check_root_product(t.code.eta));
        assert!(bch_lower_bound(&z, rs.r, 31) <= d_h as u64);
    }

    #[test]
    fn binary_b5() {
        let f = FieldSpec::with_order(2).unwrap();
        let t = build_primitive_family(&f, 5, 8).unwrap();
        assert_eq!((t.code.n, t.code.k()), (63, 57));
        let r = t.report.as_ref().unwrap();
        assert_eq!(r.d_b, 11);
        assert!(t.certified_mds());
    }

    #[test]
    fn small_b_rejected() {
        let f = FieldSpec::with_order(2).unwrap();
        assert!(matches!(build_primitive_family(&f, 3, 8), Err(ConstaError::BadParams(_))));
    }

    #[test]
    fn ternary_shift_is_primitive() {
        let f = FieldSpec::with_order(3).unwrap();
        let t = build_primitive_family(&f, 4, 0).unwrap();
        assert_eq!(t.code.n, 121);
        assert_eq!(t.code.eta, 2);
        assert!(t.code.shift_invariant());
        assert!(!t.certified_mds());
    }
}
