#![allow(dead_code)]

use bsymbol::bmetric::{dist_b, hamming_weight, read_vector, wt_b};
use bsymbol::gf::{prime_power, FieldSpec};
use proptest::prelude::*;

pub const METRIC_QS: [u64; 4] = [2, 3, 4, 5];

/// A field, a window and two words of equal length.
#[derive(Debug, Clone)]
pub struct MetricCase {
    pub q: u64,
    pub b: usize,
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

impl MetricCase {
    pub fn field(&self) -> FieldSpec {
        FieldSpec::with_order(self.q).expect("supported order")
    }
}

/// Words whose zero density is itself random, so both sparse and dense
/// words occur often.
fn word(q: u64, n: usize) -> impl Strategy<Value = Vec<u32>> {
    (0u32..=100).prop_flat_map(move |density| {
        prop::collection::vec((0u32..100, 1..q as u32), n)
            .prop_map(move |v| v.into_iter().map(|(r, s)| if r < density { s } else { 0 }).collect())
    })
}

pub fn metric_case() -> impl Strategy<Value = MetricCase> {
    (prop::sample::select(METRIC_QS.to_vec()), 1usize..=6)
        .prop_flat_map(|(q, b)| (Just(q), Just(b), b..=64))
        .prop_flat_map(|(q, b, n)| (Just(q), Just(b), word(q, n), word(q, n)))
        .prop_map(|(q, b, x, y)| MetricCase { q, b, x, y })
}

/// D_b(x, y) = wt_b(x − y) = Hamming distance of read vectors.
pub fn check_distance(c: &MetricCase) -> Result<(), String> {
    let f = c.field();
    let diff: Vec<u32> = c.x.iter().zip(&c.y).map(|(&a, &b)| f.sub(a, b)).collect();
    let d = dist_b(&f, &c.x, &c.y, c.b).map_err(|e| e.to_string())?;
    let w = wt_b(&diff, c.b).map_err(|e| e.to_string())?;
    let rx = read_vector(&c.x, c.b).map_err(|e| e.to_string())?;
    let ry = read_vector(&c.y, c.b).map_err(|e| e.to_string())?;
    let symbols = rx.iter().zip(&ry).filter(|(a, b)| a != b).count();
    if d == w && w == symbols {
        Ok(())
    } else {
        Err(format!("dist {d}, wt {w}, read-vector distance {symbols}"))
    }
}

/// Hamming weight bounds on x: wt_H + b − 1 <= wt_b <= b wt_H when 0 < wt_H <= n − b + 1.
/// Returns Ok(false) when the precondition does not hold.
pub fn check_weight_bounds(c: &MetricCase) -> Result<bool, String> {
    let n = c.x.len();
    let h = hamming_weight(&c.x);
    if h == 0 || h + c.b > n + 1 {
        return Ok(false);
    }
    let w = wt_b(&c.x, c.b).map_err(|e| e.to_string())?;
    if h + c.b - 1 <= w && w <= c.b * h {
        Ok(true)
    } else {
        Err(format!("wt_H {h}, wt_b {w}, b {}", c.b))
    }
}

/// Window growth on x: wt_{b+1} >= wt_b + 1 when x ≠ 0 and wt_b < n.
pub fn check_growth(c: &MetricCase) -> Result<bool, String> {
    let n = c.x.len();
    if hamming_weight(&c.x) == 0 || c.b + 1 > n {
        return Ok(false);
    }
    let w = wt_b(&c.x, c.b).map_err(|e| e.to_string())?;
    if w == n {
        return Ok(false);
    }
    let w1 = wt_b(&c.x, c.b + 1).map_err(|e| e.to_string())?;
    if w1 > w {
        Ok(true)
    } else {
        Err(format!("wt_b {w}, wt_(b+1) {w1}"))
    }
}

/// Every supported field of order at most `max`, default modulus.
pub fn fields_up_to(max: u64) -> Vec<FieldSpec> {
    (2..=max)
        .filter_map(|q| prime_power(q).map(|(p, m)| FieldSpec::new(p, m, None).expect("supported")))
        .collect()
}
