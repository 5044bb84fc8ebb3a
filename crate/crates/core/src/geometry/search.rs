//! Depth-first search for sequences whose cyclic windows are independent.

use crate::gf::FieldSpec;

use super::GeometryError;

/// Row-reduced basis of a span; membership by reduction.
#[derive(Clone, Default)]
struct Span {
    rows: Vec<(usize, Vec<u32>)>,
}

impl Span {
    fn reduce(&self, field: &FieldSpec, v: &mut [u32]) {
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
    }

    fn contains(&self, field: &FieldSpec, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false (leaving the span unchanged) if dependent.
    fn insert(&mut self, field: &FieldSpec, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        let Some(pivot) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = field.inv(w[pivot]).expect("nonzero");
        for x in w.iter_mut() {
            *x = field.mul(*x, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&w) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
        self.rows.push((pivot, w));
        true
    }

    fn of(field: &FieldSpec, vs: &[&[u32]]) -> Self {
        let mut s = Span::default();
        for v in vs {
            s.insert(field, v);
        }
        s
    }
}

pub(crate) struct WindowSearch<'a> {
    pub field: &'a FieldSpec,
    /// Candidates in base order.
    pub pool: Vec<Vec<u32>>,
    pub window: usize,
    pub n: usize,
    pub allow_repeats: bool,
    pub budget: u64,
    /// Pool indices fixed at the start of the sequence.
    pub prefix: Vec<usize>,
    /// Optional pool index to try first at each depth.
    pub preferred: Option<Vec<usize>>,
}

impl WindowSearch<'_> {
    /// Spans that the point at position `t` must avoid, given `seq[..t]`.
    fn constraints(&self, seq: &[usize]) -> Vec<Span> {
        let t = seq.len();
        let (n, w) = (self.n, self.window);
        let pt = |i: usize| self.pool[seq[i]].as_slice();
        let mut out = Vec::new();
        let start = t.saturating_sub(w - 1);
        out.push(Span::of(self.field, &(start..t).map(pt).collect::<Vec<_>>()));
        // wrap-around windows start at n - w + 1.. and take positions 0..head
        // from the front; check the part already placed together with t
        if n >= w {
            for s in (n + 1 - w)..=t {
                let head = s + w - n;
                let mut members: Vec<&[u32]> = (s..t).map(pt).collect();
                members.extend((0..head).map(pt));
                out.push(Span::of(self.field, &members));
            }
        }
        out
    }

    /// Next candidate at `depth`: the preferred index first, then the base
    /// order without it.
    fn candidate(&self, depth: usize, cursor: &mut usize) -> Option<usize> {
        let preferred = self.preferred.as_ref().and_then(|p| p.get(depth).copied());
        loop {
            let c = *cursor;
            *cursor += 1;
            let Some(p) = preferred else {
                return (c < self.pool.len()).then_some(c);
            };
            if c == 0 {
                return Some(p);
            }
            let idx = c - 1;
            if idx >= self.pool.len() {
                return None;
            }
            if idx != p {
                return Some(idx);
            }
        }
    }

    pub fn run(&self) -> Result<Vec<usize>, GeometryError> {
        let mut seq: Vec<usize> = self.prefix.clone();
        let mut used = vec![false; self.pool.len()];
        for &p in &seq {
            used[p] = true;
        }
        let mut cursors = vec![0usize; self.n + 1];
        let mut spans: Vec<Option<Vec<Span>>> = vec![None; self.n + 1];
        let mut nodes: u64 = 0;
        loop {
            let t = seq.len();
            if t == self.n {
                return Ok(seq);
            }
            if spans[t].is_none() {
                spans[t] = Some(self.constraints(&seq));
            }
            let cons = spans[t].as_ref().expect("computed");
            let mut chosen = None;
            while let Some(c) = self.candidate(t, &mut cursors[t]) {
                if !self.allow_repeats && used[c] {
                    continue;
                }
                if cons.iter().all(|s| !s.contains(self.field, &self.pool[c])) {
                    chosen = Some(c);
                    break;
                }
            }
            match chosen {
                Some(c) => {
                    nodes += 1;
                    if nodes > self.budget {
                        return Err(GeometryError::BudgetExhausted { budget: self.budget });
                    }
                    used[c] = true;
                    seq.push(c);
                    cursors[t + 1] = 0;
                    spans[t + 1] = None;
                }
                None => {
                    if t == self.prefix.len() {
                        return Err(GeometryError::Exhausted);
                    }
                    let c = seq.pop().expect("above prefix");
                    used[c] = false;
                    spans[t] = None;
                }
            }
        }
    }
}
