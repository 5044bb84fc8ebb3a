//! Dense matrices over a [`FieldSpec`] and linear codes given by generator
//! and parity-check matrices.

use std::fmt::Write as _;

use crate::gf::{FieldSpec, GfError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("column index {index} out of range for {len} columns")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("column index {0} appears twice")]
    DuplicateIndex(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A dense row-major matrix of element encodings.
#[derive(Clone, PartialEq, Eq)]
pub struct MatGF {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub matrix: MatGF,
    pub pivots: Vec<usize>,
}

impl MatGF {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        if let Some(&v) = data.iter().find(|&&v| v >= field.q()) {
            return Err(GfError::OutOfRange { value: v, q: field.q() }.into());
        }
        Ok(Self { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Self { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds from row vectors; `cols` is needed only when `rows` is empty.
    pub fn from_rows(field: &FieldSpec, rows: &[Vec<u32>], cols: usize) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, data)
    }

    /// Builds from column vectors of length `rows`.
    pub fn from_columns(field: &FieldSpec, rows: usize, columns: &[Vec<u32>]) -> Result<Self, LinalgError> {
        let cols = columns.len();
        let mut data = vec![0; rows * cols];
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinalgError::DimensionMismatch { expected: rows, found: col.len() });
            }
            for (r, &v) in col.iter().enumerate() {
                data[r * cols + c] = v;
            }
        }
        Self::new(field, rows, cols, data)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> MatGF {
        let mut data = vec![0; self.data.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[c * self.rows + r] = self.get(r, c);
            }
        }
        Self { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &MatGF) -> Result<MatGF, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(t, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn check_indices(&self, idx: &[usize]) -> Result<(), LinalgError> {
        let mut seen = vec![false; self.cols];
        for &i in idx {
            if i >= self.cols {
                return Err(LinalgError::IndexOutOfRange { index: i, len: self.cols });
            }
            if seen[i] {
                return Err(LinalgError::DuplicateIndex(i));
            }
            seen[i] = true;
        }
        Ok(())
    }

    /// Submatrix on the given columns, in the given order.
    pub fn select_columns(&self, idx: &[usize]) -> Result<MatGF, LinalgError> {
        if let Some(&i) = idx.iter().find(|&&i| i >= self.cols) {
            return Err(LinalgError::IndexOutOfRange { index: i, len: self.cols });
        }
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for r in 0..self.rows {
            data.extend(idx.iter().map(|&c| self.get(r, c)));
        }
        Ok(Self { field: self.field.clone(), rows: self.rows, cols: idx.len(), data })
    }

    /// Gauss-Jordan elimination, pivoting on the first nonzero entry of each
    /// column scanned left to right.
    pub fn rref(&self) -> Echelon {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            m.swap_rows(pr, lead);
            let inv = f.inv(m.get(lead, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let idx = lead * m.cols + j;
                m.data[idx] = f.mul(m.data[idx], inv);
            }
            for r in 0..m.rows {
                let factor = m.get(r, c);
                if r == lead || factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.mul(factor, m.get(lead, j));
                    let idx = r * m.cols + j;
                    m.data[idx] = f.sub(m.data[idx], v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : M x = 0}`, one row per free column in increasing order.
    pub fn nullspace(&self) -> MatGF {
        let f = &self.field;
        let Echelon { matrix: r, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.data[i * self.cols + fc] = 1;
            for (pi, &pc) in pivots.iter().enumerate() {
                out.data[i * self.cols + pc] = f.neg(r.get(pi, fc));
            }
        }
        out
    }

    /// Whether the chosen columns are linearly independent.
    pub fn cols_independent(&self, idx: &[usize]) -> Result<bool, LinalgError> {
        self.check_indices(idx)?;
        Ok(self.select_columns(idx)?.rank() == idx.len())
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// Serializes in the matrix text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("field {}\ndims {} {}\n", self.field, self.rows, self.cols);
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }

    /// Parses the matrix text format; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<MatGF, LinalgError> {
        let mut lines = significant_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "missing `field` line"))?;
        let lit = header
            .strip_prefix("field")
            .filter(|rest| rest.starts_with(char::is_whitespace))
            .ok_or_else(|| parse_err(ln, "expected `field <literal>`"))?;
        let field: FieldSpec = lit.trim().parse().map_err(|e: GfError| parse_err(ln, &e.to_string()))?;

        let (ln, dims) = lines.next().ok_or_else(|| parse_err(ln + 1, "missing `dims` line"))?;
        let toks: Vec<&str> = dims.split_whitespace().collect();
        let (rows, cols) = match toks.as_slice() {
            ["dims", r, c] => (
                r.parse::<usize>().map_err(|_| parse_err(ln, "bad row count"))?,
                c.parse::<usize>().map_err(|_| parse_err(ln, "bad column count"))?,
            ),
            _ => return Err(parse_err(ln, "expected `dims <rows> <cols>`")),
        };

        let mut data = Vec::with_capacity(rows * cols);
        let mut last = ln;
        for _ in 0..rows {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| parse_err(last + 1, &format!("expected {rows} rows")))?;
            last = ln;
            let row = parse_row(&field, line, ln)?;
            if row.len() != cols {
                return Err(parse_err(ln, &format!("expected {cols} entries, found {}", row.len())));
            }
            data.extend(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "unexpected extra row"));
        }
        Ok(Self { field, rows, cols, data })
    }
}

impl std::fmt::Debug for MatGF {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MatGF {}x{} over GF({}) {:?}", self.rows, self.cols, self.field, self.row_vecs())
    }
}

pub(crate) fn parse_err(line: usize, message: &str) -> LinalgError {
    LinalgError::Parse { line, message: message.to_string() }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
pub(crate) fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub(crate) fn parse_row(field: &FieldSpec, line: &str, ln: usize) -> Result<Vec<u32>, LinalgError> {
    line.split_whitespace()
        .map(|t| {
            let v: u32 = t.parse().map_err(|_| parse_err(ln, &format!("bad entry `{t}`")))?;
            if v >= field.q() {
                return Err(parse_err(ln, &format!("entry {v} out of range for GF({})", field.q())));
            }
            Ok(v)
        })
        .collect()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(field: &FieldSpec, v: &[u32], basis: &[Vec<u32>]) -> Result<bool, LinalgError> {
    if let Some(b) = basis.iter().find(|b| b.len() != v.len()) {
        return Err(LinalgError::DimensionMismatch { expected: v.len(), found: b.len() });
    }
    if v.iter().all(|&x| x == 0) {
        return Ok(true);
    }
    let base = MatGF::from_rows(field, basis, v.len())?;
    let mut ext = basis.to_vec();
    ext.push(v.to_vec());
    let with_v = MatGF::from_rows(field, &ext, v.len())?;
    Ok(base.rank() == with_v.rank())
}

/// A linear code with both a generator (k×n) and a parity-check ((n−k)×n)
/// matrix of full row rank.
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: FieldSpec,
    n: usize,
    k: usize,
    g: MatGF,
    h: MatGF,
}

fn independent_rows(m: &MatGF) -> MatGF {
    if m.rank() == m.rows() {
        return m.clone();
    }
    let e = m.rref();
    let rows: Vec<Vec<u32>> = (0..e.pivots.len()).map(|r| e.matrix.row(r).to_vec()).collect();
    MatGF::from_rows(m.field(), &rows, m.cols()).expect("rows of the echelon form")
}

impl LinearCode {
    /// The code `{x : H x = 0}`. A rank-deficient H is replaced by the
    /// nonzero rows of its reduced echelon form.
    pub fn from_parity(h: &MatGF) -> Self {
        let h = independent_rows(h);
        let g = h.nullspace();
        Self { field: h.field().clone(), n: h.cols(), k: g.rows(), g, h }
    }

    /// The row space of G.
    pub fn from_generator(g: &MatGF) -> Self {
        let g = independent_rows(g);
        let h = g.nullspace();
        Self { field: g.field().clone(), n: g.cols(), k: g.rows(), g, h }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &MatGF {
        &self.g
    }

    pub fn parity_check(&self) -> &MatGF {
        &self.h
    }

    /// `msg · G`.
    pub fn encode(&self, msg: &[u32]) -> Result<Vec<u32>, LinalgError> {
        if msg.len() != self.k {
            return Err(LinalgError::DimensionMismatch { expected: self.k, found: msg.len() });
        }
        let f = &self.field;
        let mut out = vec![0; self.n];
        for (i, &m) in msg.iter().enumerate() {
            if m == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.g.row(i)) {
                *o = f.add(*o, f.mul(m, g));
            }
        }
        Ok(out)
    }

    /// `H xᵀ`.
    pub fn syndrome(&self, x: &[u32]) -> Result<Vec<u32>, LinalgError> {
        if x.len() != self.n {
            return Err(LinalgError::DimensionMismatch { expected: self.n, found: x.len() });
        }
        if self.h.rows() == 0 {
            return Ok(Vec::new());
        }
        self.h.mul_vec(x)
    }

    pub fn is_codeword(&self, x: &[u32]) -> Result<bool, LinalgError> {
        Ok(self.syndrome(x)?.iter().all(|&s| s == 0))
    }

    /// Checks `G Hᵀ = 0` and that both matrices have full row rank.
    pub fn check_invariants(&self) -> bool {
        let orth = self.g.rows() == 0
            || self.h.rows() == 0
            || self.g.mul(&self.h.transpose()).map(|m| m.is_zero()).unwrap_or(false);
        orth && self.g.rank() == self.k && self.h.rank() == self.n - self.k
    }
}
