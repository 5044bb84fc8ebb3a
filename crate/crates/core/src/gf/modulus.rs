//! Polynomials over a prime field GF(p), used only to pick and check moduli
//! and to bootstrap the exp/log tables.

/// Multiplication modulo the field modulus on encodings, without tables.
pub(super) struct SlowMul {
    p: u32,
    m: usize,
    modulus: Vec<u32>,
    /// Binary moduli as a bitmask (bit i = coefficient of x^i).
    mask: u32,
}

impl SlowMul {
    pub(super) fn new(p: u32, m: u32, modulus: &[u32]) -> Self {
        let mask = if p == 2 {
            modulus.iter().enumerate().fold(0, |acc, (i, &c)| acc | (c << i))
        } else {
            0
        };
        Self { p, m: m as usize, modulus: modulus.to_vec(), mask }
    }

    pub(super) fn mul(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        if self.p == 2 {
            let mut acc = 0u32;
            let mut a = a;
            let mut b = b;
            while b != 0 {
                if b & 1 == 1 {
                    acc ^= a;
                }
                b >>= 1;
                a <<= 1;
                if a >> self.m & 1 == 1 {
                    a ^= self.mask;
                }
            }
            return acc;
        }
        let p = self.p;
        let da = digits(a, p, self.m);
        let db = digits(b, p, self.m);
        let mut prod = vec![0u32; 2 * self.m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let rem = rem_monic(&prod, &self.modulus, p);
        rem.iter().rev().fold(0, |acc, &d| acc * p + d)
    }

    pub(super) fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

fn digits(mut a: u32, p: u32, m: usize) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

/// Remainder of `a` modulo the monic polynomial `d` over GF(p).
/// Returns exactly deg(d) coefficients.
fn rem_monic(a: &[u32], d: &[u32], p: u32) -> Vec<u32> {
    let dd = d.len() - 1;
    let mut r = a.to_vec();
    if r.len() < dd {
        r.resize(dd, 0);
        return r;
    }
    for top in (dd..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for (k, &dk) in d.iter().enumerate() {
            let idx = top - dd + k;
            r[idx] = (r[idx] + (p - (c * dk) % p)) % p;
        }
    }
    r.truncate(dd);
    r
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub(super) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    if m <= 1 {
        return m == 1;
    }
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for v in 0..count {
            let mut g: Vec<u32> = Vec::with_capacity(d + 1);
            let mut rest = v;
            for _ in 0..d {
                g.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            g.push(1);
            if rem_monic(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `m` over GF(p), comparing
/// candidates by the integer whose base-p digits are the coefficients.
pub(super) fn default_modulus(p: u32, m: usize) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(m as u32);
    for v in 0..count {
        let mut f = Vec::with_capacity(m + 1);
        let mut rest = v;
        for _ in 0..m {
            f.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_small_cases() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(!is_irreducible(&[1, 1, 0, 0, 0, 1], 2)); // x^5+x+1 = (x^2+x+1)(x^3+x^2+1)
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[2, 0, 1], 3)); // x^2 - 1
    }

    #[test]
    fn count_irreducibles_degree_four_over_gf2() {
        // Gauss: (2^4 - 2^2) / 4 = 3
        let n = (0..16u32)
            .filter(|v| {
                let f: Vec<u32> = (0..4).map(|i| v >> i & 1).chain([1]).collect();
                is_irreducible(&f, 2)
            })
            .count();
        assert_eq!(n, 3);
    }

    #[test]
    fn slow_mul_matches_schoolbook_gf9() {
        let s = SlowMul::new(3, 2, &[1, 0, 1]);
        // x * x = x^2 = -1 = 2
        assert_eq!(s.mul(3, 3), 2);
        // (1 + x)(1 + x) = 1 + 2x + x^2 = 2x -> encodes 6
        assert_eq!(s.mul(4, 4), 6);
    }
}
