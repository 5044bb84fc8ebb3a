//! Projective spaces PG(r,q) and orderings of points (or vectors) whose
//! cyclic windows are linearly independent. Such an ordering, read as the
//! columns of a parity-check matrix, gives an MDS b-symbol code.

mod constructions;
mod search;

pub use constructions::{
    concat_orderings, greedy_order, greedy_vectors, order_pg2, shared_prefix_bases, tile_basis, DEFAULT_NODE_BUDGET,
};

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::gf::{FieldSpec, GfError};
use crate::linalg::{parse_row, significant_lines, LinalgError, MatGF};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("axis does not span an (r-2)-space")]
    BadAxis,
    #[error("no ordering found within {budget} node expansions")]
    BudgetExhausted { budget: u64 },
    #[error("search space exhausted without finding an ordering")]
    Exhausted,
    #[error("concatenation fails at window {window}: {detail}")]
    SeamViolation { window: usize, detail: String },
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn parse_err(line: usize, message: &str) -> GeometryError {
    GeometryError::Parse { line, message: message.to_string() }
}

/// Scales `v` so its first nonzero coordinate is 1. `None` for the zero vector.
pub fn normalize(field: &FieldSpec, v: &[u32]) -> Option<Vec<u32>> {
    let lead = v.iter().copied().find(|&x| x != 0)?;
    let inv = field.inv(lead).expect("nonzero");
    Some(v.iter().map(|&x| field.mul(x, inv)).collect())
}

/// A point of PG(r,q) in normalized homogeneous coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PgPoint {
    coords: Vec<u32>,
}

impl PgPoint {
    pub fn new(field: &FieldSpec, coords: &[u32]) -> Result<Self, GeometryError> {
        if let Some(&v) = coords.iter().find(|&&v| v >= field.q()) {
            return Err(GfError::OutOfRange { value: v, q: field.q() }.into());
        }
        normalize(field, coords)
            .map(|coords| Self { coords })
            .ok_or_else(|| GeometryError::BadParams("the zero vector is not a point".into()))
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

/// All points of PG(r,q) in lexicographic order of normalized coordinates.
pub fn pg_points(r: usize, field: &FieldSpec) -> Vec<PgPoint> {
    let q = field.q();
    let mut out = Vec::new();
    // leading 1 at position `lead`, zeros before, anything after
    for lead in 0..=r {
        let free = r - lead;
        let count = (q as u64).pow(free as u32);
        for idx in 0..count {
            let mut coords = vec![0; r + 1];
            coords[lead] = 1;
            let mut rest = idx;
            for slot in coords[lead + 1..].iter_mut().rev() {
                *slot = (rest % q as u64) as u32;
                rest /= q as u64;
            }
            out.push(PgPoint { coords });
        }
    }
    out.sort();
    out
}

/// Number of points of PG(r,q).
pub fn pg_point_count(r: usize, q: u64) -> u64 {
    (0..=r as u32).map(|i| q.pow(i)).sum()
}

/// A hyperplane `{x : sum f_i x_i = 0}` given by a normalized functional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub functional: Vec<u32>,
}

impl Hyperplane {
    pub fn contains(&self, field: &FieldSpec, x: &[u32]) -> bool {
        dot(field, &self.functional, x) == 0
    }
}

pub(crate) fn dot(field: &FieldSpec, a: &[u32], b: &[u32]) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

/// The q + 1 hyperplanes of PG(r,q) through an (r−2)-dimensional axis.
/// The default axis is spanned by the unit vectors e_2, ..., e_r.
pub fn hyperplane_cover(
    r: usize,
    field: &FieldSpec,
    axis: Option<&[Vec<u32>]>,
) -> Result<Vec<Hyperplane>, GeometryError> {
    if r < 2 {
        return Err(GeometryError::BadParams(format!("hyperplane cover needs r >= 2, got {r}")));
    }
    let dim = r + 1;
    let default: Vec<Vec<u32>> = (2..=r)
        .map(|i| (0..dim).map(|j| u32::from(i == j)).collect())
        .collect();
    let axis = axis.unwrap_or(&default);
    if axis.len() != r - 1 || axis.iter().any(|v| v.len() != dim || v.iter().any(|&x| x >= field.q())) {
        return Err(GeometryError::BadAxis);
    }
    let m = MatGF::from_rows(field, axis, dim)?;
    if m.rank() != r - 1 {
        return Err(GeometryError::BadAxis);
    }
    let ann = m.nullspace();
    let (fa, fb) = (ann.row(0).to_vec(), ann.row(1).to_vec());
    let mut out = vec![Hyperplane { functional: normalize(field, &fa).expect("nonzero") }];
    for lambda in field.elements() {
        let f: Vec<u32> = fb.iter().zip(&fa).map(|(&y, &x)| field.add(y, field.mul(lambda, x))).collect();
        out.push(Hyperplane { functional: normalize(field, &f).expect("independent functionals") });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Points of PG(r,q); windows of b + 1, points pairwise distinct.
    Projective,
    /// Nonzero vectors of V(r,q); windows of b, repeats allowed.
    Vector,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Projective => "projective",
            Mode::Vector => "vector",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "projective" => Ok(Mode::Projective),
            "vector" => Ok(Mode::Vector),
            _ => Err(GeometryError::BadParams(format!("unknown mode `{s}`"))),
        }
    }
}

/// A cyclic sequence of points (projective mode) or vectors (vector mode).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ordering {
    field: FieldSpec,
    r: usize,
    b: usize,
    mode: Mode,
    points: Vec<Vec<u32>>,
}

impl Ordering {
    /// Projective points are stored normalized. Rejects zero vectors and
    /// wrong coordinate counts, but does not check the window condition.
    pub fn new(
        field: &FieldSpec,
        r: usize,
        b: usize,
        mode: Mode,
        points: Vec<Vec<u32>>,
    ) -> Result<Self, GeometryError> {
        if b == 0 || r == 0 {
            return Err(GeometryError::BadParams("r and b must be positive".into()));
        }
        let dim = match mode {
            Mode::Projective => r + 1,
            Mode::Vector => r,
        };
        let mut stored = Vec::with_capacity(points.len());
        for (i, p) in points.into_iter().enumerate() {
            if p.len() != dim {
                return Err(GeometryError::BadParams(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            if let Some(&v) = p.iter().find(|&&v| v >= field.q()) {
                return Err(GfError::OutOfRange { value: v, q: field.q() }.into());
            }
            if p.iter().all(|&v| v == 0) {
                return Err(GeometryError::BadParams(format!("point {i} is zero")));
            }
            stored.push(match mode {
                Mode::Projective => normalize(field, &p).expect("nonzero"),
                Mode::Vector => p,
            });
        }
        Ok(Self { field: field.clone(), r, b, mode, points: stored })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Coordinates per point.
    pub fn dim(&self) -> usize {
        match self.mode {
            Mode::Projective => self.r + 1,
            Mode::Vector => self.r,
        }
    }

    /// Number of cyclically consecutive points that must be independent.
    pub fn window(&self) -> usize {
        window_size(self.mode, self.b)
    }

    /// Parity-check matrix whose columns are the points in order.
    pub fn to_parity(&self) -> MatGF {
        MatGF::from_columns(&self.field, self.dim(), &self.points).expect("points have dim coordinates")
    }

    /// Ordering file text: a `pg <r> <q> <b> <mode>` header, then one
    /// point per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("pg {} {} {} {}\n", self.r, self.field, self.b, self.mode.as_str());
        for p in &self.points {
            let row: Vec<String> = p.iter().map(u32::to_string).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, GeometryError> {
        let mut lines = significant_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "missing `pg` header"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let ["pg", r, q, b, mode] = toks.as_slice() else {
            return Err(parse_err(ln, "expected `pg <r> <q> <b> <mode>`"));
        };
        let r: usize = r.parse().map_err(|_| parse_err(ln, "bad r"))?;
        let field: FieldSpec = q.parse().map_err(|e: GfError| parse_err(ln, &e.to_string()))?;
        let b: usize = b.parse().map_err(|_| parse_err(ln, "bad b"))?;
        let mode: Mode = mode.parse().map_err(|_| parse_err(ln, "mode must be projective or vector"))?;
        let dim = if mode == Mode::Projective { r + 1 } else { r };
        let mut points = Vec::new();
        for (ln, line) in lines {
            let row = parse_row(&field, line, ln).map_err(|e| match e {
                LinalgError::Parse { line, message } => GeometryError::Parse { line, message },
                other => other.into(),
            })?;
            if row.len() != dim {
                return Err(parse_err(ln, &format!("expected {dim} coordinates, found {}", row.len())));
            }
            if row.iter().all(|&v| v == 0) {
                return Err(parse_err(ln, "zero vector"));
            }
            points.push(row);
        }
        Self::new(&field, r, b, mode, points)
    }
}

pub(crate) fn window_size(mode: Mode, b: usize) -> usize {
    match mode {
        Mode::Projective => b + 1,
        Mode::Vector => b,
    }
}

/// Outcome of [`validate_ordering`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// Every cyclic window is independent, the sequence is at least one
    /// window long, and (projective mode) no point repeats.
    pub ok: bool,
    /// Start index of the first dependent cyclic window.
    pub first_bad_window: Option<usize>,
    /// First pair of equal points (projective mode only).
    pub duplicate_pair: Option<(usize, usize)>,
    /// Three collinear points (projective) or two dependent vectors (vector
    /// mode) exist somewhere in the sequence. Informational.
    pub has_dependent_set: bool,
    pub too_short: bool,
}

pub fn validate_ordering(o: &Ordering) -> ValidationReport {
    let n = o.len();
    let w = o.window();
    let too_short = n < w;
    let field = &o.field;

    let mut first_bad_window = None;
    if !too_short {
        for s in 0..n {
            let cols: Vec<Vec<u32>> = (0..w).map(|j| o.points[(s + j) % n].clone()).collect();
            let m = MatGF::from_rows(field, &cols, o.dim()).expect("point dims");
            if m.rank() < w {
                first_bad_window = Some(s);
                break;
            }
        }
    }

    let normalized: Vec<Vec<u32>> = o.points.iter().map(|p| normalize(field, p).expect("nonzero")).collect();
    let mut duplicate_pair = None;
    let mut seen = std::collections::HashMap::new();
    for (i, p) in normalized.iter().enumerate() {
        if let Some(&j) = seen.get(p) {
            duplicate_pair.get_or_insert((j, i));
        } else {
            seen.insert(p.clone(), i);
        }
    }

    let has_dependent_set = match o.mode {
        Mode::Vector => duplicate_pair.is_some(),
        Mode::Projective => duplicate_pair.is_some() || has_collinear_triple(field, &normalized),
    };
    let distinct_ok = o.mode == Mode::Vector || duplicate_pair.is_none();
    ValidationReport {
        ok: !too_short && first_bad_window.is_none() && distinct_ok,
        first_bad_window,
        duplicate_pair: if o.mode == Mode::Projective { duplicate_pair } else { None },
        has_dependent_set,
        too_short,
    }
}

/// For each pair of distinct points, looks for a third point on their line.
fn has_collinear_triple(field: &FieldSpec, points: &[Vec<u32>]) -> bool {
    let set: HashSet<&Vec<u32>> = points.iter().collect();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                continue;
            }
            for lambda in 1..field.q() {
                let v: Vec<u32> = points[i]
                    .iter()
                    .zip(&points[j])
                    .map(|(&a, &c)| field.add(a, field.mul(lambda, c)))
                    .collect();
                if let Some(p) = normalize(field, &v) {
                    if set.contains(&p) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Columns of the ordering as a parity-check matrix.
pub fn points_to_parity(o: &Ordering) -> MatGF {
    o.to_parity()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    fn table1_n7() -> Ordering {
        let rows = ["0111001", "1100101", "0010111"];
        let pts = (0..7)
            .map(|c| rows.iter().map(|r| (r.as_bytes()[c] - b'0') as u32).collect())
            .collect();
        Ordering::new(&gf(2), 2, 2, Mode::Projective, pts).unwrap()
    }

    #[test]
    fn point_counts() {
        assert_eq!(pg_points(2, &gf(2)).len(), 7);
        assert_eq!(pg_points(3, &gf(2)).len(), 15);
        assert_eq!(pg_points(4, &gf(3)).len(), 121);
        for r in 1..=5 {
            for q in [2u64, 3, 4, 5] {
                assert_eq!(pg_points(r, &gf(q)).len() as u64, pg_point_count(r, q));
            }
        }
    }

    #[test]
    fn points_are_normalized_and_distinct() {
        let f = gf(4);
        let pts = pg_points(2, &f);
        let set: HashSet<_> = pts.iter().collect();
        assert_eq!(set.len(), pts.len());
        for p in &pts {
            assert_eq!(normalize(&f, p.coords()).unwrap(), p.coords());
        }
        assert_eq!(PgPoint::new(&f, &[0, 3, 2]).unwrap(), PgPoint::new(&f, &[0, 1, f.div(2, 3).unwrap()]).unwrap());
        assert!(PgPoint::new(&f, &[0, 0, 0]).is_err());
    }

    #[test]
    fn cover_of_the_fano_plane() {
        let f = gf(2);
        let axis = vec![vec![0, 0, 1]];
        let hs = hyperplane_cover(2, &f, Some(&axis)).unwrap();
        assert_eq!(hs.len(), 3);
        let others: Vec<PgPoint> = pg_points(2, &f).into_iter().filter(|p| p.coords() != [0, 0, 1]).collect();
        for h in &hs {
            assert!(h.contains(&f, &[0, 0, 1]));
            assert_eq!(others.iter().filter(|p| h.contains(&f, p.coords())).count(), 2);
        }
    }

    #[test]
    fn cover_union_and_intersections() {
        for (r, q) in [(3usize, 2u64), (4, 3), (2, 5), (3, 4)] {
            let f = gf(q);
            let hs = hyperplane_cover(r, &f, None).unwrap();
            assert_eq!(hs.len() as u64, q + 1);
            let pts = pg_points(r, &f);
            let axis_pts: Vec<&PgPoint> = pts.iter().filter(|p| p.coords()[0] == 0 && p.coords()[1] == 0).collect();
            for p in &pts {
                assert!(hs.iter().any(|h| h.contains(&f, p.coords())));
            }
            for i in 0..hs.len() {
                for j in i + 1..hs.len() {
                    let both: Vec<&PgPoint> = pts
                        .iter()
                        .filter(|p| hs[i].contains(&f, p.coords()) && hs[j].contains(&f, p.coords()))
                        .collect();
                    assert_eq!(both, axis_pts);
                }
            }
        }
        let f = gf(2);
        let planes = hyperplane_cover(3, &f, None).unwrap();
        assert_eq!(planes.len(), 3);
    }

    #[test]
    fn bad_axis() {
        let f = gf(3);
        let dependent = vec![vec![0, 0, 1, 0], vec![0, 0, 2, 0]];
        assert_eq!(hyperplane_cover(3, &f, Some(&dependent)), Err(GeometryError::BadAxis));
        assert_eq!(hyperplane_cover(3, &f, Some(&[vec![0, 0, 1, 0]])), Err(GeometryError::BadAxis));
    }

    #[test]
    fn table1_validates() {
        let o = table1_n7();
        let rep = validate_ordering(&o);
        assert!(rep.ok);
        assert!(rep.has_dependent_set);
        assert_eq!(o.to_parity().row(0), &[0, 1, 1, 1, 0, 0, 1]);
    }

    #[test]
    fn adjacent_repeat_is_reported() {
        let f = gf(3);
        let pts = vec![vec![1, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let rep = validate_ordering(&Ordering::new(&f, 2, 1, Mode::Projective, pts.clone()).unwrap());
        assert!(!rep.ok);
        assert_eq!(rep.first_bad_window, Some(0));
        assert_eq!(rep.duplicate_pair, Some((0, 1)));
        let rep = validate_ordering(&Ordering::new(&f, 3, 1, Mode::Vector, vec![vec![1, 0, 0]; 3]).unwrap());
        assert!(rep.ok && rep.has_dependent_set);
        let rep = validate_ordering(&Ordering::new(&f, 3, 2, Mode::Vector, vec![vec![1, 0, 0]; 3]).unwrap());
        assert_eq!(rep.first_bad_window, Some(0));
    }

    #[test]
    fn short_sequences_fail() {
        let f = gf(2);
        let o = Ordering::new(&f, 2, 2, Mode::Projective, vec![vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let rep = validate_ordering(&o);
        assert!(!rep.ok && rep.too_short);
    }

    #[test]
    fn ordering_text_round_trip() {
        let o = table1_n7();
        let text = o.to_text();
        assert!(text.starts_with("pg 2 2^1 2 projective\n0 1 0\n"));
        assert_eq!(Ordering::from_text(&text).unwrap(), o);
        let bad = "pg 2 2 2 projective\n0 1 0\n1 1\n";
        assert!(matches!(Ordering::from_text(bad), Err(GeometryError::Parse { line: 3, .. })));
        assert!(matches!(Ordering::from_text("pg 2 6 2 projective\n"), Err(GeometryError::Parse { line: 1, .. })));
    }
}
