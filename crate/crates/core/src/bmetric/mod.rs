//! The b-symbol metric: read vectors, b-weights, the Singleton-type bound,
//! and exact minimum b-distance computation with MDS verdicts.

mod certified;
mod exhaustive;

pub use certified::min_bdist_certified;
pub use exhaustive::min_bdist_exhaustive;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::gf::FieldSpec;
use crate::linalg::{LinalgError, LinearCode, MatGF};

/// Default number of codeword evaluations allowed by exhaustive search.
pub const DEFAULT_WORD_BUDGET: u64 = 1 << 28;
/// Default Hamming-weight cap for low-weight certification.
pub const DEFAULT_W_CAP: usize = 8;
/// Codes with at most this many codewords are enumerated by [`Strategy::Auto`].
pub const AUTO_EXHAUSTIVE_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BmetricError {
    #[error("window size {b} is invalid for length {n}")]
    BadWindow { b: usize, n: usize },
    #[error("vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("code has no nonzero codewords")]
    Degenerate,
    #[error("exhaustive search needs {needed} codewords, budget is {budget}; try the certified method")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("no codeword of Hamming weight <= {w_cap} found")]
    Uncertifiable { w_cap: usize },
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn check_window(n: usize, b: usize) -> Result<(), BmetricError> {
    if b == 0 || b > n {
        Err(BmetricError::BadWindow { b, n })
    } else {
        Ok(())
    }
}

/// Entry i is `(x_i, ..., x_{i+b-1})`, indices mod n.
pub fn read_vector(x: &[u32], b: usize) -> Result<Vec<Vec<u32>>, BmetricError> {
    let n = x.len();
    check_window(n, b)?;
    Ok((0..n).map(|i| (0..b).map(|j| x[(i + j) % n]).collect()).collect())
}

pub fn hamming_weight(x: &[u32]) -> usize {
    x.iter().filter(|&&v| v != 0).count()
}

/// Number of nonzero cyclic windows of width b.
pub fn wt_b(x: &[u32], b: usize) -> Result<usize, BmetricError> {
    check_window(x.len(), b)?;
    Ok(wt_b_unchecked(x, b))
}

/// `wt_b(x - y)`.
pub fn dist_b(field: &FieldSpec, x: &[u32], y: &[u32], b: usize) -> Result<usize, BmetricError> {
    if x.len() != y.len() {
        return Err(BmetricError::LengthMismatch(x.len(), y.len()));
    }
    let diff: Vec<u32> = x.iter().zip(y).map(|(&a, &c)| field.sub(a, c)).collect();
    wt_b(&diff, b)
}

/// n minus the number of all-zero windows, counted run by run.
pub(crate) fn wt_b_unchecked(x: &[u32], b: usize) -> usize {
    let n = x.len();
    let Some(first) = x.iter().position(|&v| v != 0) else {
        return 0;
    };
    let mut zero_windows = 0;
    let mut run = 0;
    for t in 1..=n {
        if x[(first + t) % n] == 0 {
            run += 1;
        } else {
            if run >= b {
                zero_windows += run - b + 1;
            }
            run = 0;
        }
    }
    n - zero_windows
}

/// b-weight of any vector with the given sorted, nonempty support.
pub(crate) fn wt_b_support(support: &[usize], n: usize, b: usize) -> usize {
    let mut zero_windows = 0;
    for (i, &p) in support.iter().enumerate() {
        let next = support.get(i + 1).copied().unwrap_or(support[0] + n);
        let gap = next - p - 1;
        if gap >= b {
            zero_windows += gap - b + 1;
        }
    }
    n - zero_windows
}

/// Lower bound on wt_b for vectors of Hamming weight at least `w` (w >= 1).
pub fn weight_lower_bound(w: usize, n: usize, b: usize) -> usize {
    (w + b - 1).min(n)
}

/// `q^(n - d_b + b)`.
pub fn singleton_max(n: usize, d_b: usize, b: usize, q: u64) -> Result<BigUint, BmetricError> {
    if q < 2 || b == 0 || d_b < b || d_b > n {
        return Err(BmetricError::BadParams(format!(
            "singleton bound needs q >= 2 and 1 <= b <= d_b <= n (n={n}, d_b={d_b}, b={b}, q={q})"
        )));
    }
    Ok(BigUint::from(q).pow((n - d_b + b) as u32))
}

/// Whether `2b + 1 <= n <= (q^(b+1) - 1)/(q - 1)`.
pub fn feasible_2b1(n: u64, b: u64, q: u64) -> bool {
    if q < 2 || n < 2 * b + 1 {
        return false;
    }
    let mut points: u64 = 0;
    let mut term: u64 = 1;
    for _ in 0..=b {
        points = points.saturating_add(term);
        term = term.saturating_mul(q);
    }
    n <= points
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "exhaustive")]
    Exhaustive,
    #[serde(rename = "low-weight-certified")]
    LowWeightCertified,
}

/// A minimum b-distance computation with its MDS verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub schema: u32,
    pub n: usize,
    pub k: usize,
    pub q: u64,
    pub b: usize,
    #[serde(rename = "d_H")]
    pub d_h: Option<usize>,
    pub d_b: usize,
    #[serde(rename = "M")]
    pub m: String,
    pub singleton_m: String,
    pub is_mds: bool,
    pub witness_min: Vec<u32>,
    pub method: Method,
    pub certified: bool,
}

impl CodeReport {
    pub(crate) fn build(
        code: &LinearCode,
        b: usize,
        d_h: Option<usize>,
        witness: Vec<u32>,
        method: Method,
        certified: bool,
    ) -> Result<Self, BmetricError> {
        let q = code.field().q() as u64;
        let d_b = wt_b_unchecked(&witness, b);
        let m = BigUint::from(q).pow(code.k() as u32);
        let bound = singleton_max(code.n(), d_b, b, q)?;
        Ok(Self {
            schema: 1,
            n: code.n(),
            k: code.k(),
            q,
            b,
            d_h,
            d_b,
            is_mds: m == bound,
            m: m.to_string(),
            singleton_m: bound.to_string(),
            witness_min: witness,
            method,
            certified,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Checks the report's internal consistency: the witness attains d_b,
    /// q^k equals M, q^k does not exceed the bound, and is_mds holds exactly
    /// on equality.
    pub fn audit(&self) -> Result<(), String> {
        let m = BigUint::from(self.q).pow(self.k as u32);
        let bound = singleton_max(self.n, self.d_b, self.b, self.q).map_err(|e| e.to_string())?;
        if m.to_string() != self.m || bound.to_string() != self.singleton_m {
            return Err("stored M or bound disagree with parameters".into());
        }
        if m > bound {
            return Err(format!("q^k = {m} exceeds q^(n-d_b+b) = {bound}"));
        }
        if self.is_mds != (m == bound) {
            return Err("is_mds flag disagrees with the bound".into());
        }
        if self.witness_min.len() != self.n || hamming_weight(&self.witness_min) == 0 {
            return Err("witness is not a nonzero length-n word".into());
        }
        if wt_b_unchecked(&self.witness_min, self.b) != self.d_b {
            return Err("witness does not attain d_b".into());
        }
        Ok(())
    }
}

/// How [`mds_check`] computes d_b.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive { budget: u64 },
    Certified { w_cap: usize },
    /// Exhaustive for small codes, otherwise certified with an exhaustive
    /// fallback inside the budget.
    Auto { budget: u64, w_cap: usize },
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy::Auto { budget: DEFAULT_WORD_BUDGET, w_cap: DEFAULT_W_CAP }
    }
}

pub(crate) fn code_size(code: &LinearCode) -> Option<u64> {
    (code.field().q() as u64).checked_pow(code.k() as u32)
}

pub fn mds_check(code: &LinearCode, b: usize, strategy: Strategy) -> Result<CodeReport, BmetricError> {
    match strategy {
        Strategy::Exhaustive { budget } => min_bdist_exhaustive(code, b, budget),
        Strategy::Certified { w_cap } => min_bdist_certified(code, b, w_cap),
        Strategy::Auto { budget, w_cap } => {
            let size = code_size(code);
            if size.is_some_and(|s| s <= AUTO_EXHAUSTIVE_LIMIT.min(budget.saturating_add(1))) {
                return min_bdist_exhaustive(code, b, budget);
            }
            let report = min_bdist_certified(code, b, w_cap);
            match report {
                Ok(r) if r.certified => Ok(r),
                other => {
                    if size.is_some_and(|s| s - 1 <= budget) {
                        min_bdist_exhaustive(code, b, budget)
                    } else {
                        other
                    }
                }
            }
        }
    }
}

/// Reports at b and b + 1 for a code that is certified MDS at b.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    pub base: CodeReport,
    pub lifted: CodeReport,
    /// d_{b+1} = d_b + 1 and the code is MDS at b + 1.
    pub holds: bool,
}

pub fn lift_check(code: &LinearCode, b: usize, strategy: Strategy) -> Result<LiftReport, BmetricError> {
    if b + 1 > code.n() {
        return Err(BmetricError::PreconditionUnmet(format!("b + 1 = {} exceeds n = {}", b + 1, code.n())));
    }
    let base = mds_check(code, b, strategy)?;
    if !(base.certified && base.is_mds) {
        return Err(BmetricError::PreconditionUnmet(format!("code is not certified MDS at b = {b}")));
    }
    if base.d_b == code.n() {
        return Err(BmetricError::PreconditionUnmet(format!("d_b = n = {}", code.n())));
    }
    let lifted = mds_check(code, b + 1, strategy)?;
    let holds = lifted.certified && lifted.is_mds && lifted.d_b == base.d_b + 1;
    Ok(LiftReport { base, lifted, holds })
}

/// Additions on encodings specialised for the inner loops.
pub(crate) enum Adder {
    Xor,
    Table { q: usize, table: Vec<u32> },
    Field(FieldSpec),
}

impl Adder {
    pub(crate) fn new(field: &FieldSpec) -> Self {
        let q = field.q() as usize;
        if field.p() == 2 {
            Adder::Xor
        } else if q <= 256 {
            let mut table = vec![0; q * q];
            for a in 0..q {
                for b in 0..q {
                    table[a * q + b] = field.add(a as u32, b as u32);
                }
            }
            Adder::Table { q, table }
        } else {
            Adder::Field(field.clone())
        }
    }

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        match self {
            Adder::Xor => a ^ b,
            Adder::Table { q, table } => table[a as usize * q + b as usize],
            Adder::Field(f) => f.add(a, b),
        }
    }

    #[inline]
    pub(crate) fn add_into(&self, acc: &mut [u32], v: &[u32]) {
        for (a, &x) in acc.iter_mut().zip(v) {
            *a = self.add(*a, x);
        }
    }
}

/// Recovers the message of a codeword with respect to the code's generator,
/// for deterministic witness selection.
pub(crate) struct MessageMap {
    field: FieldSpec,
    info: Vec<usize>,
    /// Inverse of the generator restricted to the information set.
    inv: MatGF,
}

impl MessageMap {
    pub(crate) fn new(code: &LinearCode) -> Self {
        let g = code.generator();
        let info = g.rref().pivots;
        let k = info.len();
        let sub = g.select_columns(&info).expect("pivot columns are in range");
        // [G_I | I] -> [I | G_I^-1]
        let mut aug = Vec::with_capacity(k * 2 * k);
        for r in 0..k {
            aug.extend_from_slice(sub.row(r));
            aug.extend((0..k).map(|c| u32::from(c == r)));
        }
        let reduced = MatGF::new(code.field(), k, 2 * k, aug).expect("dimensions").rref().matrix;
        let cols: Vec<usize> = (k..2 * k).collect();
        let inv = reduced.select_columns(&cols).expect("in range");
        Self { field: code.field().clone(), info, inv }
    }

    /// `m` with `m G = c`, message digit 0 first.
    pub(crate) fn message(&self, c: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let k = self.info.len();
        (0..k)
            .map(|j| {
                self.info
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (i, &col)| f.add(acc, f.mul(c[col], self.inv.get(i, j))))
            })
            .collect()
    }
}
