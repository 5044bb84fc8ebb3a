use rayon::prelude::*;

use super::{code_size, hamming_weight, wt_b_unchecked, Adder, BmetricError, CodeReport, Method};
use crate::linalg::LinearCode;

const CHUNK: u64 = 1 << 12;

#[derive(Clone, Copy)]
struct Best {
    wt: usize,
    index: u64,
    hamming: usize,
}

impl Best {
    const NONE: Best = Best { wt: usize::MAX, index: u64::MAX, hamming: usize::MAX };

    fn merge(self, other: Best) -> Best {
        let (wt, index) = (self.wt, self.index).min((other.wt, other.index));
        Best { wt, index, hamming: self.hamming.min(other.hamming) }
    }
}

/// Message digits of `index`, digit 0 most significant.
fn digits(mut index: u64, q: u64, k: usize) -> Vec<u32> {
    let mut d = vec![0; k];
    for slot in d.iter_mut().rev() {
        *slot = (index % q) as u32;
        index /= q;
    }
    d
}

/// Exact minimum b-distance by evaluating every nonzero codeword.
///
/// Messages are visited as base-q integers (digit 0 most significant); the
/// witness is the minimizer with the smallest message index, independent
/// of how the range is split across threads.
pub fn min_bdist_exhaustive(code: &LinearCode, b: usize, budget: u64) -> Result<CodeReport, BmetricError> {
    let n = code.n();
    super::check_window(n, b)?;
    let k = code.k();
    if k == 0 {
        return Err(BmetricError::Degenerate);
    }
    let q = code.field().q() as u64;
    let total = match code_size(code) {
        Some(t) if t - 1 <= budget => t,
        _ => {
            let needed = num_bigint::BigUint::from(q).pow(k as u32) - 1u32;
            return Err(BmetricError::BudgetExceeded { needed: needed.to_string(), budget });
        }
    };

    let adder = Adder::new(code.field());
    let field = code.field();
    let g = code.generator();
    let chunks = total.div_ceil(CHUNK);
    // digit v -> v + 1 (mod q) in encoding order adds (v+1 - v) * row
    let steps: Vec<Vec<Vec<u32>>> = (0..k)
        .map(|i| {
            (0..q as u32)
                .map(|v| {
                    let d = field.sub((v + 1) % q as u32, v);
                    g.row(i).iter().map(|&x| field.mul(d, x)).collect()
                })
                .collect()
        })
        .collect();

    let best = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut msg = digits(start, q, k);
            let mut word = vec![0u32; n];
            for (i, &m) in msg.iter().enumerate() {
                if m != 0 {
                    for (w, &gv) in word.iter_mut().zip(g.row(i)) {
                        *w = adder.add(*w, field.mul(m, gv));
                    }
                }
            }
            let mut best = Best::NONE;
            for index in start..end {
                if index != 0 {
                    let wt = wt_b_unchecked(&word, b);
                    if wt < best.wt {
                        best.wt = wt;
                        best.index = index;
                    }
                    best.hamming = best.hamming.min(hamming_weight(&word));
                }
                for i in (0..k).rev() {
                    adder.add_into(&mut word, &steps[i][msg[i] as usize]);
                    msg[i] += 1;
                    if msg[i] as u64 == q {
                        msg[i] = 0;
                    } else {
                        break;
                    }
                }
            }
            best
        })
        .reduce(|| Best::NONE, Best::merge);

    let witness = code.encode(&digits(best.index, q, k))?;
    CodeReport::build(code, b, Some(best.hamming), witness, Method::Exhaustive, true)
}
