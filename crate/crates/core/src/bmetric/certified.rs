//! Low-weight certification: enumerate every codeword of Hamming weight at
//! most W and stop once the best b-weight found cannot be beaten by any
//! heavier codeword, using `wt_b(x) >= min(wt_H(x) + b - 1, n)`.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{
    hamming_weight, weight_lower_bound, wt_b_support, wt_b_unchecked, Adder, BmetricError, CodeReport,
    MessageMap, Method,
};
use crate::gf::FieldSpec;
use crate::linalg::LinearCode;

#[derive(Clone)]
struct Partial {
    wt: usize,
    /// (normalized message, codeword) of the best word so far.
    witness: Option<(Vec<u32>, Vec<u32>)>,
    hmin: usize,
}

impl Partial {
    fn empty() -> Self {
        Self { wt: usize::MAX, witness: None, hmin: usize::MAX }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.hmin = self.hmin.min(other.hmin);
        let better = match (&self.witness, &other.witness) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some((m0, _)), Some((m1, _))) => (other.wt, m1) < (self.wt, m0),
        };
        if better {
            self.wt = other.wt;
            self.witness = other.witness;
        }
        self
    }
}

struct Ctx<'a> {
    field: &'a FieldSpec,
    adder: Adder,
    messages: MessageMap,
    n: usize,
    b: usize,
}

impl Ctx<'_> {
    /// Message of `c` scaled so its first nonzero digit is 1.
    fn normalized_message(&self, c: &[u32]) -> Vec<u32> {
        let m = self.messages.message(c);
        let lead = m.iter().copied().find(|&v| v != 0).expect("nonzero codeword");
        let inv = self.field.inv(lead).expect("nonzero");
        m.iter().map(|&v| self.field.mul(v, inv)).collect()
    }

    fn offer(&self, acc: &mut Partial, wt: usize, word: impl FnOnce() -> Vec<u32>) {
        if wt > acc.wt {
            return;
        }
        let word = word();
        let msg = self.normalized_message(&word);
        let better = match &acc.witness {
            None => true,
            Some((m, _)) => wt < acc.wt || msg < *m,
        };
        if better {
            acc.wt = wt;
            acc.witness = Some((msg, word));
        }
    }
}

/// Codewords of weight exactly w via partial syndromes: choose w − 1
/// positions and values, then look up the columns that cancel the syndrome.
struct SyndromeEngine {
    cols: Vec<Vec<u32>>,
    bits: u32,
    /// normalized nonzero column -> [(index, scale)] with column = scale * key
    by_direction: HashMap<u128, Vec<(usize, u32)>>,
    zero_cols: Vec<usize>,
}

fn bits_per_symbol(q: u32) -> u32 {
    32 - (q - 1).leading_zeros()
}

impl SyndromeEngine {
    fn new(code: &LinearCode) -> Option<Self> {
        let h = code.parity_check();
        let f = code.field();
        let bits = bits_per_symbol(f.q()).max(1);
        if h.rows() as u32 * bits > 128 {
            return None;
        }
        let cols: Vec<Vec<u32>> = (0..code.n()).map(|j| h.column(j)).collect();
        let mut by_direction: HashMap<u128, Vec<(usize, u32)>> = HashMap::new();
        let mut zero_cols = Vec::new();
        for (j, col) in cols.iter().enumerate() {
            match col.iter().copied().find(|&v| v != 0) {
                None => zero_cols.push(j),
                Some(lead) => {
                    let key = pack_scaled(f, col, f.inv(lead).expect("nonzero"), bits);
                    by_direction.entry(key).or_default().push((j, lead));
                }
            }
        }
        Some(Self { cols, bits, by_direction, zero_cols })
    }

    fn cost(n: usize, w_max: usize, q: u32) -> f64 {
        (1..=w_max).map(|w| binom(n, w - 1) * ((q - 1) as f64).powi(w as i32 - 2).max(1.0)).sum()
    }

    fn stage(&self, ctx: &Ctx, w: usize) -> Partial {
        let n = ctx.n;
        if w == 1 {
            let mut acc = Partial::empty();
            for &j in &self.zero_cols {
                acc.hmin = 1;
                ctx.offer(&mut acc, wt_b_support(&[j], n, ctx.b), || unit(n, j, 1));
            }
            return acc;
        }
        (0..n)
            .into_par_iter()
            .map(|first| {
                let mut acc = Partial::empty();
                let mut positions = vec![first];
                let mut values = vec![1];
                let mut syndromes = vec![self.cols[first].clone()];
                self.extend(ctx, w - 1, &mut positions, &mut values, &mut syndromes, &mut acc);
                acc
            })
            .reduce(Partial::empty, Partial::merge)
    }

    fn extend(
        &self,
        ctx: &Ctx,
        prefix_len: usize,
        positions: &mut Vec<usize>,
        values: &mut Vec<u32>,
        syndromes: &mut Vec<Vec<u32>>,
        acc: &mut Partial,
    ) {
        let n = ctx.n;
        let last = *positions.last().expect("nonempty prefix");
        if positions.len() == prefix_len {
            self.complete(ctx, positions, values, syndromes.last().expect("syndrome"), acc);
            return;
        }
        let remaining = prefix_len - positions.len();
        let f = ctx.field;
        // room for the remaining prefix and the completing position
        for next in last + 1..n.saturating_sub(remaining) {
            for v in 1..f.q() {
                let s: Vec<u32> = syndromes
                    .last()
                    .expect("syndrome")
                    .iter()
                    .zip(&self.cols[next])
                    .map(|(&a, &h)| ctx.adder.add(a, f.mul(v, h)))
                    .collect();
                positions.push(next);
                values.push(v);
                syndromes.push(s);
                self.extend(ctx, prefix_len, positions, values, syndromes, acc);
                positions.pop();
                values.pop();
                syndromes.pop();
            }
        }
    }

    fn complete(&self, ctx: &Ctx, positions: &[usize], values: &[u32], s: &[u32], acc: &mut Partial) {
        let f = ctx.field;
        let last = *positions.last().expect("nonempty");
        let mut support = positions.to_vec();
        support.push(0);
        let mut consider = |j: usize, c: u32, acc: &mut Partial| {
            *support.last_mut().expect("slot") = j;
            acc.hmin = acc.hmin.min(support.len());
            let wt = wt_b_support(&support, ctx.n, ctx.b);
            ctx.offer(acc, wt, || {
                let mut word = vec![0; ctx.n];
                for (&p, &v) in positions.iter().zip(values) {
                    word[p] = v;
                }
                word[j] = c;
                word
            });
        };
        match s.iter().copied().find(|&v| v != 0) {
            None => {
                for &j in self.zero_cols.iter().filter(|&&j| j > last) {
                    consider(j, 1, acc);
                }
            }
            Some(lead) => {
                // need c * column_j = -s
                let e = f.neg(lead);
                let key = pack_scaled(f, s, f.div(1, lead).expect("nonzero"), self.bits);
                if let Some(hits) = self.by_direction.get(&key) {
                    for &(j, scale) in hits.iter().filter(|(j, _)| *j > last) {
                        consider(j, f.div(e, scale).expect("nonzero"), acc);
                    }
                }
            }
        }
    }
}

fn pack_scaled(f: &FieldSpec, v: &[u32], scale: u32, bits: u32) -> u128 {
    v.iter().fold(0u128, |acc, &x| (acc << bits) | f.mul(x, scale) as u128)
}

fn unit(n: usize, j: usize, c: u32) -> Vec<u32> {
    let mut w = vec![0; n];
    w[j] = c;
    w
}

/// Codewords whose message (on an information set) has weight exactly w;
/// every codeword of Hamming weight w is among them.
struct MessageEngine {
    rows: Vec<Vec<u32>>,
}

impl MessageEngine {
    fn new(code: &LinearCode) -> Self {
        let e = code.generator().rref();
        let rows = (0..e.pivots.len()).map(|r| e.matrix.row(r).to_vec()).collect();
        Self { rows }
    }

    fn cost(k: usize, w_max: usize, q: u32) -> f64 {
        (1..=w_max.min(k)).map(|w| binom(k, w) * ((q - 1) as f64).powi(w as i32 - 1)).sum()
    }

    fn stage(&self, ctx: &Ctx, w: usize) -> Partial {
        let k = self.rows.len();
        if w > k {
            return Partial::empty();
        }
        (0..=k - w)
            .into_par_iter()
            .map(|first| {
                let mut acc = Partial::empty();
                let word = self.rows[first].clone();
                self.extend(ctx, w, first, 1, word, &mut acc);
                acc
            })
            .reduce(Partial::empty, Partial::merge)
    }

    fn extend(&self, ctx: &Ctx, w: usize, last: usize, depth: usize, word: Vec<u32>, acc: &mut Partial) {
        if depth == w {
            acc.hmin = acc.hmin.min(hamming_weight(&word));
            let wt = wt_b_unchecked(&word, ctx.b);
            ctx.offer(acc, wt, || word);
            return;
        }
        let k = self.rows.len();
        let f = ctx.field;
        for next in last + 1..=k - (w - depth) {
            for v in 1..f.q() {
                let mut nw = word.clone();
                for (a, &g) in nw.iter_mut().zip(&self.rows[next]) {
                    *a = ctx.adder.add(*a, f.mul(v, g));
                }
                self.extend(ctx, w, next, depth + 1, nw, acc);
            }
        }
    }
}

fn binom(n: usize, r: usize) -> f64 {
    if r > n {
        return 0.0;
    }
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

enum Engine {
    Syndrome(SyndromeEngine),
    Message(MessageEngine),
}

impl Engine {
    fn choose(code: &LinearCode, w_cap: usize) -> Self {
        let q = code.field().q();
        let (n, k) = (code.n(), code.k());
        let target = (n - k).clamp(1, w_cap.max(1));
        match SyndromeEngine::new(code) {
            Some(s) if SyndromeEngine::cost(n, target, q) <= MessageEngine::cost(k, target, q) => {
                Engine::Syndrome(s)
            }
            _ => Engine::Message(MessageEngine::new(code)),
        }
    }

    fn stage(&self, ctx: &Ctx, w: usize) -> Partial {
        match self {
            Engine::Syndrome(e) => e.stage(ctx, w),
            Engine::Message(e) => e.stage(ctx, w),
        }
    }
}

/// Minimum b-distance from low-weight codewords, raising the Hamming-weight
/// limit W from 1 up to `w_cap` until the result is certified.
///
/// An uncertified result (cap reached first) is still returned with
/// `certified = false`; its d_b is then an upper bound. The witness is the
/// minimizer with the smallest normalized message among the enumerated words.
pub fn min_bdist_certified(code: &LinearCode, b: usize, w_cap: usize) -> Result<CodeReport, BmetricError> {
    let n = code.n();
    super::check_window(n, b)?;
    if code.k() == 0 {
        return Err(BmetricError::Degenerate);
    }
    let ctx = Ctx {
        field: code.field(),
        adder: Adder::new(code.field()),
        messages: MessageMap::new(code),
        n,
        b,
    };
    let engine = Engine::choose(code, w_cap);
    let mut acc = Partial::empty();
    let mut certified = false;
    let mut reached = 0;
    for w in 1..=w_cap.min(n) {
        acc = acc.merge(engine.stage(&ctx, w));
        reached = w;
        if acc.witness.is_some() && (w == n || acc.wt <= weight_lower_bound(w + 1, n, b)) {
            certified = true;
            break;
        }
    }
    let Some((_, witness)) = acc.witness else {
        return Err(BmetricError::Uncertifiable { w_cap });
    };
    let d_h = (acc.hmin <= reached).then_some(acc.hmin);
    CodeReport::build(code, b, d_h, witness, Method::LowWeightCertified, certified)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bmetric::min_bdist_exhaustive;
    use crate::linalg::MatGF;

    fn power_basis_parity(field_lit: &str, n: usize) -> LinearCode {
        let f: FieldSpec = field_lit.parse().unwrap();
        let m = f.m() as usize;
        let gf2 = FieldSpec::prime(2).unwrap();
        // columns x^j, x encoded as 2
        let cols: Vec<Vec<u32>> = (0..n).map(|j| f.digits(f.pow(2, j as i64).unwrap())).collect();
        LinearCode::from_parity(&MatGF::from_columns(&gf2, m, &cols).unwrap())
    }

    #[test]
    fn cyclic_31_26_four_symbol() {
        let code = power_basis_parity("2^5", 31);
        assert_eq!(code.k(), 26);
        let r = min_bdist_certified(&code, 4, 8).unwrap();
        assert!(r.certified);
        assert_eq!((r.d_b, r.d_h), (9, Some(3)));
        assert!(r.is_mds);
        r.audit().unwrap();
    }

    #[test]
    fn agrees_with_exhaustive_on_small_codes() {
        let f3 = FieldSpec::prime(3).unwrap();
        let f4 = FieldSpec::with_order(4).unwrap();
        let cases = vec![
            MatGF::from_rows(&f3, &[vec![1, 0, 1, 2, 1, 1], vec![0, 1, 1, 1, 2, 0]], 6).unwrap(),
            MatGF::from_rows(&f4, &[vec![1, 2, 3, 1, 0], vec![0, 1, 1, 2, 3]], 5).unwrap(),
            MatGF::from_rows(&FieldSpec::prime(2).unwrap(), &[vec![1; 5]], 5).unwrap(),
        ];
        for h in cases {
            for code in [LinearCode::from_parity(&h), LinearCode::from_generator(&h)] {
                for b in 1..=3 {
                    let ex = min_bdist_exhaustive(&code, b, 1 << 20).unwrap();
                    let ce = min_bdist_certified(&code, b, 8).unwrap();
                    assert!(ce.certified);
                    assert_eq!(ex.d_b, ce.d_b);
                    if let Some(d) = ce.d_h {
                        assert_eq!(ex.d_h, Some(d));
                    }
                    ce.audit().unwrap();
                }
            }
        }
    }

    #[test]
    fn message_engine_matches_syndrome_engine() {
        let code = power_basis_parity("2^4", 15);
        let ctx = Ctx {
            field: code.field(),
            adder: Adder::new(code.field()),
            messages: MessageMap::new(&code),
            n: 15,
            b: 3,
        };
        let syn = SyndromeEngine::new(&code).unwrap();
        let msg = MessageEngine::new(&code);
        for w in 1..=4 {
            let a = syn.stage(&ctx, w);
            let c = msg.stage(&ctx, w);
            if a.witness.is_some() {
                assert!(c.wt <= a.wt);
            }
        }
    }

    #[test]
    fn low_cap_can_be_uncertified() {
        let f = FieldSpec::prime(2).unwrap();
        let code = LinearCode::from_generator(&MatGF::from_rows(&f, &[vec![1; 6]], 6).unwrap());
        assert_eq!(min_bdist_certified(&code, 2, 0).unwrap_err(), BmetricError::Uncertifiable { w_cap: 0 });
        let r = min_bdist_certified(&code, 2, 3).unwrap();
        assert!(!r.certified);
        assert_eq!(r.d_h, None);
        r.audit().unwrap();
        let r = min_bdist_certified(&code, 2, 6).unwrap();
        assert!(r.certified);
        assert_eq!(r.d_b, 6);
    }

    #[test]
    fn full_space_distance() {
        let f = FieldSpec::with_order(5).unwrap();
        let code = LinearCode::from_generator(&MatGF::identity(&f, 4));
        let r = min_bdist_certified(&code, 1, 8).unwrap();
        assert_eq!(r.d_b, 1);
        assert!(r.is_mds && r.certified);
    }
}
