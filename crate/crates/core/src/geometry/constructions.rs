use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::search::WindowSearch;
use super::{
    hyperplane_cover, pg_point_count, pg_points, validate_ordering, GeometryError, Mode, Ordering,
};
use crate::fixtures;
use crate::gf::FieldSpec;

/// Default node-expansion budget for the searches.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

fn bad(msg: String) -> GeometryError {
    GeometryError::BadParams(msg)
}

fn checked(o: Ordering) -> Result<Ordering, GeometryError> {
    let rep = validate_ordering(&o);
    if rep.ok {
        Ok(o)
    } else {
        Err(GeometryError::InvalidOrdering(format!("{rep:?}")))
    }
}

fn shuffled_points(r: usize, field: &FieldSpec, seed: u64) -> Vec<Vec<u32>> {
    let mut pool: Vec<Vec<u32>> = pg_points(r, field).into_iter().map(|p| p.coords().to_vec()).collect();
    pool.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    pool
}

/// An ordering of n points of PG(2,q) with no three cyclically consecutive
/// points collinear.
///
/// The preferred sequence starts at O = (0,0,1) and then visits the q + 1
/// lines through O round-robin, so consecutive points never share a line
/// through O; a backtracking pass repairs any remaining collinear triple,
/// including those across the wrap. For q = 2 the reference orderings are
/// returned.
pub fn order_pg2(field: &FieldSpec, n: usize) -> Result<Ordering, GeometryError> {
    let q = field.q() as usize;
    let max = q * q + q + 1;
    if n < 3 || n > max {
        return Err(bad(format!("PG(2,{q}) orderings need 3 <= n <= {max}, got {n}")));
    }
    if q == 2 {
        let m = fixtures::table1(n).expect("reference orderings exist for 3..=7");
        let pts = (0..m.cols()).map(|c| m.column(c)).collect();
        return checked(Ordering::new(field, 2, 2, Mode::Projective, pts)?);
    }

    let pool: Vec<Vec<u32>> = pg_points(2, field).into_iter().map(|p| p.coords().to_vec()).collect();
    let index = |p: &[u32]| pool.iter().position(|x| x == p).expect("pool holds every point");
    let origin = vec![0, 0, 1];
    let lines: Vec<Vec<usize>> = hyperplane_cover(2, field, None)?
        .iter()
        .map(|h| {
            (0..pool.len())
                .filter(|&i| pool[i] != origin && h.contains(field, &pool[i]))
                .collect()
        })
        .collect();
    let mut schedule = vec![index(&origin)];
    for i in 0..q {
        schedule.extend(lines.iter().map(|l| l[i]));
    }

    let search = WindowSearch {
        field,
        pool: pool.clone(),
        window: 3,
        n,
        allow_repeats: false,
        budget: DEFAULT_NODE_BUDGET,
        prefix: Vec::new(),
        preferred: Some(schedule),
    };
    let seq = search.run()?;
    checked(Ordering::new(field, 2, 2, Mode::Projective, seq.iter().map(|&i| pool[i].clone()).collect())?)
}

/// Depth-first search for n points of PG(b,q) whose b + 1 cyclically
/// consecutive members are independent. Candidates are tried in
/// lexicographic order shuffled by `seed`; `budget` caps node expansions.
pub fn greedy_order(
    r: usize,
    field: &FieldSpec,
    b: usize,
    n: usize,
    seed: u64,
    budget: u64,
) -> Result<Ordering, GeometryError> {
    if r != b || b == 0 {
        return Err(bad(format!("greedy_order needs r = b >= 1, got r = {r}, b = {b}")));
    }
    let count = pg_point_count(r, field.q() as u64);
    if n < b + 1 || n as u64 > count {
        return Err(bad(format!("PG({r},{}) has {count} points; need {} <= n <= {count}, got {n}", field.q(), b + 1)));
    }
    let pool = shuffled_points(r, field, seed);
    let search = WindowSearch {
        field,
        pool: pool.clone(),
        window: b + 1,
        n,
        allow_repeats: false,
        budget,
        prefix: Vec::new(),
        preferred: None,
    };
    let seq = search.run()?;
    checked(Ordering::new(field, r, b, Mode::Projective, seq.iter().map(|&i| pool[i].clone()).collect())?)
}

/// Depth-first search for n nonzero vectors of V(b,q), any b cyclically
/// consecutive ones independent. Vectors may repeat.
pub fn greedy_vectors(
    b: usize,
    field: &FieldSpec,
    n: usize,
    seed: u64,
    budget: u64,
) -> Result<Ordering, GeometryError> {
    if b == 0 || n < 2 * b {
        return Err(bad(format!("greedy_vectors needs b >= 1 and n >= 2b, got b = {b}, n = {n}")));
    }
    let pool = shuffled_points(b - 1, field, seed);
    let search = WindowSearch {
        field,
        pool: pool.clone(),
        window: b,
        n,
        allow_repeats: true,
        budget,
        prefix: Vec::new(),
        preferred: None,
    };
    let seq = search.run()?;
    checked(Ordering::new(field, b, b, Mode::Vector, seq.iter().map(|&i| pool[i].clone()).collect())?)
}

/// The standard basis of V(b,q) repeated n / b times.
pub fn tile_basis(b: usize, field: &FieldSpec, n: usize) -> Result<Ordering, GeometryError> {
    if b == 0 || n < 2 * b || !n.is_multiple_of(b) {
        return Err(bad(format!("tiling needs b | n and n >= 2b, got b = {b}, n = {n}")));
    }
    let pts = (0..n)
        .map(|i| (0..b).map(|j| u32::from(i % b == j)).collect())
        .collect();
    checked(Ordering::new(field, b, b, Mode::Vector, pts)?)
}

/// `t` bases of V(b,q) sharing the first b − 1 standard basis vectors, the
/// last vector of the j-th being `(digits of j, 1)`.
pub fn shared_prefix_bases(b: usize, field: &FieldSpec, t: usize) -> Result<Vec<Ordering>, GeometryError> {
    let q = field.q() as u64;
    let choices = q.checked_pow(b as u32 - 1).unwrap_or(u64::MAX);
    if b == 0 || t == 0 || t as u64 > choices {
        return Err(bad(format!("at most {choices} bases share a prefix in V({b},{q}), asked for {t}")));
    }
    (0..t)
        .map(|j| {
            let mut pts: Vec<Vec<u32>> = (0..b - 1)
                .map(|i| (0..b).map(|c| u32::from(i == c)).collect())
                .collect();
            let mut last = vec![0u32; b];
            let mut rest = j as u64;
            for slot in last[..b - 1].iter_mut() {
                *slot = (rest % q) as u32;
                rest /= q;
            }
            last[b - 1] = 1;
            pts.push(last);
            checked(Ordering::new(field, b, b, Mode::Vector, pts)?)
        })
        .collect()
}

/// Concatenation of valid orderings that share their first window − 1
/// entries, re-validated over every seam and the wrap.
pub fn concat_orderings(seqs: &[Ordering]) -> Result<Ordering, GeometryError> {
    let Some(first) = seqs.first() else {
        return Err(bad("nothing to concatenate".into()));
    };
    if seqs.len() < 2 {
        return Err(bad("concatenation needs at least two sequences".into()));
    }
    let shared = first.window() - 1;
    let mut offset = 0;
    for (i, s) in seqs.iter().enumerate() {
        if s.field() != first.field() || s.r() != first.r() || s.b() != first.b() || s.mode() != first.mode() {
            return Err(bad(format!("sequence {i} has different parameters")));
        }
        let rep = validate_ordering(s);
        if !rep.ok {
            return Err(bad(format!("sequence {i} is not a valid ordering")));
        }
        if s.len() < shared || s.points()[..shared] != first.points()[..shared] {
            return Err(GeometryError::SeamViolation {
                window: offset,
                detail: format!("sequence {i} does not share the first {shared} entries"),
            });
        }
        offset += s.len();
    }
    let pts: Vec<Vec<u32>> = seqs.iter().flat_map(|s| s.points().iter().cloned()).collect();
    let joined = Ordering::new(first.field(), first.r(), first.b(), first.mode(), pts)?;
    let rep = validate_ordering(&joined);
    if !rep.ok {
        let window = rep.first_bad_window.or(rep.duplicate_pair.map(|(_, j)| j)).unwrap_or(0);
        return Err(GeometryError::SeamViolation { window, detail: format!("{rep:?}") });
    }
    Ok(joined)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    #[test]
    fn pg2_small_planes() {
        for q in [3u64, 4, 5, 7] {
            let f = gf(q);
            let full = (q * q + q + 1) as usize;
            for n in [3, 4, full / 2, full - 1, full] {
                let o = order_pg2(&f, n).unwrap();
                assert_eq!(o.len(), n);
                assert!(validate_ordering(&o).ok);
            }
        }
        assert!(matches!(order_pg2(&gf(3), 2), Err(GeometryError::BadParams(_))));
        assert!(matches!(order_pg2(&gf(3), 14), Err(GeometryError::BadParams(_))));
    }

    #[test]
    fn pg2_binary_uses_reference() {
        let o = order_pg2(&gf(2), 7).unwrap();
        assert_eq!(o.to_parity().row(0), &[0, 1, 1, 1, 0, 0, 1]);
    }

    #[test]
    fn greedy_is_deterministic() {
        let f = gf(2);
        let a = greedy_order(3, &f, 3, 15, 0, DEFAULT_NODE_BUDGET).unwrap();
        let b = greedy_order(3, &f, 3, 15, 0, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(a, b);
        assert!(validate_ordering(&a).ok);
    }

    #[test]
    fn greedy_parameter_checks() {
        assert!(matches!(greedy_order(2, &gf(3), 2, 14, 0, 100), Err(GeometryError::BadParams(_))));
        assert!(matches!(greedy_order(3, &gf(3), 2, 10, 0, 100), Err(GeometryError::BadParams(_))));
        assert!(matches!(greedy_vectors(3, &gf(2), 5, 0, 100), Err(GeometryError::BadParams(_))));
        assert!(matches!(tile_basis(5, &gf(2), 12), Err(GeometryError::BadParams(_))));
    }

    #[test]
    fn tiny_budget_runs_out() {
        assert_eq!(
            greedy_order(3, &gf(3), 3, 40, 0, 5),
            Err(GeometryError::BudgetExhausted { budget: 5 })
        );
    }

    #[test]
    fn vector_orderings() {
        let o = greedy_vectors(3, &gf(2), 12, 0, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(o.len(), 12);
        let o = greedy_vectors(4, &gf(2), 16, 0, DEFAULT_NODE_BUDGET).unwrap();
        assert!(validate_ordering(&o).ok);
        let t = tile_basis(3, &gf(3), 6).unwrap();
        assert_eq!(t.points()[3], vec![1, 0, 0]);
    }

    #[test]
    fn concatenation() {
        let f = gf(3);
        let parts = shared_prefix_bases(5, &f, 2).unwrap();
        let joined = concat_orderings(&parts).unwrap();
        assert_eq!(joined.len(), 10);

        let same = concat_orderings(&[parts[0].clone(), parts[0].clone()]).unwrap();
        assert_eq!(same.len(), 10);

        let other = tile_basis(5, &f, 10).unwrap();
        let shifted = Ordering::new(&f, 5, 5, Mode::Vector, other.points()[1..6].to_vec()).unwrap();
        assert!(matches!(
            concat_orderings(&[parts[0].clone(), shifted]),
            Err(GeometryError::SeamViolation { .. })
        ));
    }

    #[test]
    fn projective_self_concatenation_repeats_points() {
        let f = gf(2);
        let o = greedy_order(3, &f, 3, 6, 1, DEFAULT_NODE_BUDGET).unwrap();
        assert!(matches!(concat_orderings(&[o.clone(), o]), Err(GeometryError::SeamViolation { .. })));
    }
}
