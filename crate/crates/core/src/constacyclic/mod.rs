//! η-constacyclic codes over GF(q): ideals of GF(q)[x]/(x^n − η), their
//! defining sets over a splitting field, and the BCH bound.

mod primitive;

pub use primitive::{build_primitive_family, PrimitiveFamily};

use crate::bmetric::BmetricError;
use crate::gf::{gcd, FieldSpec, GfError, Poly, SubfieldEmbedding};
use crate::linalg::{LinalgError, LinearCode, MatGF};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstaError {
    #[error("generator does not divide x^n - eta")]
    NotADivisor,
    #[error("generator polynomial must be monic")]
    NotMonic,
    #[error("gcd(n, q) must be 1 (n = {n}, q = {q})")]
    GcdViolation { n: u64, q: u64 },
    #[error("shift constant must be nonzero")]
    ZeroEta,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Bmetric(#[from] BmetricError),
}

/// `{j q^i mod modulus}`, sorted.
pub fn cyclotomic_coset(j: u64, q: u64, modulus: u64) -> Vec<u64> {
    let start = j % modulus;
    let mut out = vec![start];
    let mut x = (start as u128 * q as u128 % modulus as u128) as u64;
    while x != start {
        out.push(x);
        x = (x as u128 * q as u128 % modulus as u128) as u64;
    }
    out.sort_unstable();
    out
}

/// `(c_0, ..., c_{n-1}) -> (η c_{n-1}, c_0, ..., c_{n-2})`.
pub fn constashift(field: &FieldSpec, c: &[u32], eta: u32) -> Vec<u32> {
    let Some((&last, rest)) = c.split_last() else {
        return Vec::new();
    };
    std::iter::once(field.mul(eta, last)).chain(rest.iter().copied()).collect()
}

/// `x^n − η` over `field`.
pub fn x_n_minus(field: &FieldSpec, n: usize, eta: u32) -> Poly {
    let mut coeffs = vec![0; n + 1];
    coeffs[0] = field.neg(eta);
    coeffs[n] = 1;
    Poly::new(field, coeffs).expect("entries in range")
}

/// A constacyclic code with generator polynomial g | x^n − η.
#[derive(Debug, Clone)]
pub struct ConstaCode {
    pub n: usize,
    pub eta: u32,
    pub g: Poly,
    pub code: LinearCode,
}

impl ConstaCode {
    pub fn field(&self) -> &FieldSpec {
        self.g.field()
    }

    pub fn k(&self) -> usize {
        self.code.k()
    }

    /// Whether the shift of every generator row is again a codeword.
    pub fn shift_invariant(&self) -> bool {
        let g = self.code.generator();
        (0..g.rows()).all(|r| {
            let shifted = constashift(self.field(), g.row(r), self.eta);
            self.code.is_codeword(&shifted).unwrap_or(false)
        })
    }
}

/// Generator matrix rows are the coefficient vectors of x^i g(x), i < k.
pub fn consta_code(n: usize, eta: u32, g: &Poly) -> Result<ConstaCode, ConstaError> {
    let field = g.field();
    if eta == 0 {
        return Err(ConstaError::ZeroEta);
    }
    if eta >= field.q() {
        return Err(GfError::OutOfRange { value: eta, q: field.q() }.into());
    }
    if !g.is_monic() {
        return Err(ConstaError::NotMonic);
    }
    let (_, rem) = x_n_minus(field, n, eta).divmod(g)?;
    if !rem.is_zero() {
        return Err(ConstaError::NotADivisor);
    }
    let deg = g.degree().expect("monic is nonzero");
    let k = n - deg;
    let rows: Vec<Vec<u32>> = (0..k)
        .map(|i| {
            let mut row = vec![0; n];
            row[i..i + deg + 1].copy_from_slice(g.coeffs());
            row
        })
        .collect();
    let gen = MatGF::from_rows(field, &rows, n)?;
    let c = ConstaCode { n, eta, g: g.clone(), code: LinearCode::from_generator(&gen) };
    debug_assert!(c.shift_invariant());
    Ok(c)
}

/// A splitting field for x^n − η with a primitive rn-th root ω, ω^n = η.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub n: u64,
    /// Multiplicative order of η.
    pub r: u64,
    /// Extension degree of the splitting field over GF(q).
    pub s: u32,
    pub embedding: SubfieldEmbedding,
    pub omega: u32,
}

impl RootSystem {
    pub fn ext(&self) -> &FieldSpec {
        self.embedding.ext()
    }

    /// Ω = {1 + i r : 0 <= i < n}.
    pub fn omega_exponents(&self) -> Vec<u64> {
        (0..self.n).map(|i| 1 + i * self.r).collect()
    }

    pub fn omega_pow(&self, j: u64) -> u32 {
        self.ext().pow(self.omega, j as i64).expect("omega is nonzero")
    }

    /// Checks ∏_{i<n} (x − ω^{1+ir}) = x^n − η in the splitting field.
    pub fn check_root_product(&self, eta: u32) -> bool {
        let roots: Vec<u32> = self.omega_exponents().iter().map(|&j| self.omega_pow(j)).collect();
        let prod = Poly::from_roots(self.ext(), &roots);
        prod == x_n_minus(self.ext(), self.n as usize, self.embedding.embed(eta))
    }
}

/// Builds the root system for length n and shift η over `field`.
///
/// ω is the smallest power γ^(k(Q−1)/(rn)) of the canonical primitive element
/// γ of GF(Q) = GF(q^s) with gcd(k, rn) = 1 and ω^n = η.
pub fn root_system(field: &FieldSpec, n: u64, eta: u32) -> Result<RootSystem, ConstaError> {
    let q = field.q() as u64;
    if n == 0 {
        return Err(ConstaError::BadParams("length must be positive".into()));
    }
    if gcd(n, q) != 1 {
        return Err(ConstaError::GcdViolation { n, q });
    }
    let r = field.order(eta).ok_or(ConstaError::ZeroEta)?;
    let rn = r * n;
    let mut s = 1u32;
    let mut acc = q % rn;
    while acc != 1 % rn {
        acc = (acc as u128 * q as u128 % rn as u128) as u64;
        s += 1;
    }
    let ext = if s == 1 {
        field.clone()
    } else {
        FieldSpec::new(field.p(), field.m() * s, None)?
    };
    let embedding = SubfieldEmbedding::new(field, &ext)?;
    let big = ext.q() as u64 - 1;
    let step = big / rn;
    let target = embedding.embed(eta);
    let omega = (1..=rn)
        .filter(|&k| gcd(k, rn) == 1)
        .map(|k| ext.exp(k * step))
        .find(|&w| ext.pow(w, n as i64) == Some(target))
        .expect("some primitive rn-th root has n-th power eta");
    Ok(RootSystem { n, r, s, embedding, omega })
}

/// Z = {j ∈ Ω : g(ω^j) = 0}, sorted.
pub fn defining_set(c: &ConstaCode) -> Result<(RootSystem, Vec<u64>), ConstaError> {
    let rs = root_system(c.field(), c.n as u64, c.eta)?;
    let mut z = Vec::new();
    for j in rs.omega_exponents() {
        if c.g.eval_in(&rs.embedding, rs.omega_pow(j))? == 0 {
            z.push(j);
        }
    }
    Ok((rs, z))
}

/// One more than the longest cyclic run of consecutive i (mod n) with
/// 1 + ir ∈ Z. Returns 1 for empty Z and n + 1 when Z = Ω.
pub fn bch_lower_bound(z: &[u64], r: u64, n: u64) -> u64 {
    let mut present = vec![false; n as usize];
    for &j in z {
        if j % r == 1 % r {
            let i = (j - 1) / r;
            if i < n {
                present[i as usize] = true;
            }
        }
    }
    let count = present.iter().filter(|&&p| p).count() as u64;
    if count == n {
        return n + 1;
    }
    if count == 0 {
        return 1;
    }
    let start = present.iter().position(|&p| !p).expect("some index is absent");
    let mut best = 0;
    let mut run = 0;
    for t in 1..=n as usize {
        if present[(start + t) % n as usize] {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best + 1
}

/// The code whose defining set is the union of the q-cyclotomic cosets
/// (mod rn) of the given representatives, each ≡ 1 (mod r).
pub fn consta_from_cosets(
    field: &FieldSpec,
    n: usize,
    eta: u32,
    reps: &[u64],
) -> Result<ConstaCode, ConstaError> {
    let rs = root_system(field, n as u64, eta)?;
    let rn = rs.r * rs.n;
    let mut z: Vec<u64> = Vec::new();
    for &j in reps {
        if j % rs.r != 1 % rs.r {
            return Err(ConstaError::BadParams(format!("{j} is not 1 mod {}", rs.r)));
        }
        z.extend(cyclotomic_coset(j, field.q() as u64, rn));
    }
    z.sort_unstable();
    z.dedup();
    let roots: Vec<u32> = z.iter().map(|&j| rs.omega_pow(j)).collect();
    let over_ext = Poly::from_roots(rs.ext(), &roots);
    let coeffs = over_ext
        .coeffs()
        .iter()
        .map(|&c| rs.embedding.restrict(c).ok_or(GfError::CoefficientOutsideSubfield))
        .collect::<Result<Vec<_>, _>>()?;
    consta_code(n, eta, &Poly::new(field, coeffs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bmetric::min_bdist_exhaustive;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    #[test]
    fn cosets() {
        assert_eq!(cyclotomic_coset(1, 2, 31), vec![1, 2, 4, 8, 16]);
        assert_eq!(cyclotomic_coset(0, 5, 24), vec![0]);
        assert_eq!(cyclotomic_coset(5, 2, 31), vec![5, 9, 10, 18, 20]);
    }

    #[test]
    fn shifts() {
        let f3 = gf(3);
        assert_eq!(constashift(&f3, &[1, 2, 0, 1], 1), vec![1, 1, 2, 0]);
        assert_eq!(constashift(&f3, &[1, 0, 0], 2), vec![0, 1, 0]);
        assert_eq!(constashift(&f3, &[0, 0, 1], 2), vec![2, 0, 0]);
    }

    #[test]
    fn cyclic_hamming_code() {
        let f = gf(2);
        let g = Poly::new(&f, vec![1, 1, 0, 1]).unwrap();
        let c = consta_code(7, 1, &g).unwrap();
        assert_eq!(c.k(), 4);
        assert!(c.shift_invariant());
        let (rs, z) = defining_set(&c).unwrap();
        assert_eq!(z, vec![1, 2, 4]);
        assert_eq!(rs.s, 3);
        assert!(rs.check_root_product(1));
        let bch = bch_lower_bound(&z, 1, 7);
        assert_eq!(bch, 3);
        let d = min_bdist_exhaustive(&c.code, 1, 1 << 10).unwrap().d_b;
        assert_eq!(d, 3);
    }

    #[test]
    fn degenerate_generators() {
        let f = gf(3);
        let full = x_n_minus(&f, 4, 2);
        let zero = consta_code(4, 2, &full).unwrap();
        assert_eq!(zero.k(), 0);
        let (_, z) = defining_set(&zero).unwrap();
        assert_eq!(z.len(), 4);
        assert_eq!(z, root_system(&f, 4, 2).unwrap().omega_exponents());
        let all = consta_code(4, 2, &Poly::one(&f)).unwrap();
        assert_eq!(all.k(), 4);
        assert!(all.shift_invariant());
    }

    #[test]
    fn divisor_checks() {
        let f = gf(2);
        let g = Poly::new(&f, vec![1, 1, 1]).unwrap();
        assert_eq!(consta_code(7, 1, &g).unwrap_err(), ConstaError::NotADivisor);
        let g = Poly::new(&gf(3), vec![1, 2]).unwrap();
        assert_eq!(consta_code(4, 1, &g).unwrap_err(), ConstaError::NotMonic);
        assert!(matches!(root_system(&f, 6, 1), Err(ConstaError::GcdViolation { n: 6, q: 2 })));
    }

    #[test]
    fn bch_bound_edges() {
        assert_eq!(bch_lower_bound(&[], 1, 7), 1);
        assert_eq!(bch_lower_bound(&(1..=7).collect::<Vec<_>>(), 1, 7), 8);
        // wrap-around run {6, 0}
        assert_eq!(bch_lower_bound(&[7, 1, 4], 1, 7), 3);
        // r = 2: Ω = {1, 3, 5, ...}
        assert_eq!(bch_lower_bound(&[1, 3, 5, 9], 2, 6), 4);
    }

    #[test]
    fn negacyclic_over_gf3() {
        let f = gf(3);
        for reps in [vec![1u64], vec![1, 5], vec![1, 7]] {
            let c = consta_from_cosets(&f, 4, 2, &reps).unwrap();
            assert!(c.shift_invariant());
            let (rs, z) = defining_set(&c).unwrap();
            assert!(rs.check_root_product(2));
            assert_eq!(c.k(), 4 - z.len());
            let d = min_bdist_exhaustive(&c.code, 1, 1 << 12).map(|r| r.d_b as u64).unwrap_or(5);
            assert!(bch_lower_bound(&z, rs.r, 4) <= d);
        }
    }
}
