use bsymbol::bmetric::{lift_check, mds_check, CodeReport, Strategy};
use bsymbol::constacyclic::{bch_lower_bound, build_primitive_family, defining_set};
use bsymbol::fixtures;
use bsymbol::geometry::{
    concat_orderings, greedy_order, greedy_vectors, order_pg2, points_to_parity, shared_prefix_bases, tile_basis,
    validate_ordering, Mode, Ordering, DEFAULT_NODE_BUDGET,
};
use bsymbol::gf::FieldSpec;
use bsymbol::linalg::LinearCode;

fn gf(q: u64) -> FieldSpec {
    FieldSpec::with_order(q).unwrap()
}

fn certify(o: &Ordering) -> CodeReport {
    assert!(validate_ordering(o).ok);
    let code = LinearCode::from_parity(&points_to_parity(o));
    let r = mds_check(&code, o.b(), Strategy::default()).unwrap();
    r.audit().unwrap();
    assert!(r.certified, "{r:?}");
    let target = match o.mode() {
        Mode::Projective => 2 * o.b() + 1,
        Mode::Vector => 2 * o.b(),
    };
    assert_eq!(r.d_b, target.min(o.len()));
    r
}

#[test]
fn plane_orderings() {
    for q in [3u64, 4, 5] {
        let f = gf(q);
        let full = (q * q + q + 1) as usize;
        for n in [5, 6, full - 1, full] {
            let r = certify(&order_pg2(&f, n).unwrap());
            assert!(r.is_mds, "q = {q}, n = {n}");
        }
    }
}

#[test]
fn greedy_full_spaces() {
    for (r, q, n) in [(3usize, 2u64, 15usize), (3, 3, 40), (4, 2, 31)] {
        let o = greedy_order(r, &gf(q), r, n, 0, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(o.len(), n);
        assert!(certify(&o).is_mds);
    }
}

#[test]
fn vector_constructions() {
    let f2 = gf(2);
    for o in [
        greedy_vectors(3, &f2, 12, 0, DEFAULT_NODE_BUDGET).unwrap(),
        greedy_vectors(4, &f2, 16, 0, DEFAULT_NODE_BUDGET).unwrap(),
        greedy_vectors(3, &gf(3), 9, 1, DEFAULT_NODE_BUDGET).unwrap(),
        tile_basis(5, &f2, 15).unwrap(),
        tile_basis(2, &gf(4), 8).unwrap(),
    ] {
        let r = certify(&o);
        assert!(r.is_mds);
        assert_eq!(r.k, o.len() - o.b());
    }
}

#[test]
fn concatenated_bases() {
    let f3 = gf(3);
    for (b, t) in [(5usize, 2usize), (3, 3), (4, 2)] {
        let o = concat_orderings(&shared_prefix_bases(b, &f3, t).unwrap()).unwrap();
        assert_eq!(o.len(), b * t);
        assert!(certify(&o).is_mds);
    }
}

#[test]
fn lift_of_reference_codes() {
    for (m, b) in [(fixtures::table1(7).unwrap(), 2), (fixtures::table2(15).unwrap(), 3)] {
        let code = LinearCode::from_parity(&m);
        let l = lift_check(&code, b, Strategy::default()).unwrap();
        assert!(l.holds);
        assert_eq!(l.lifted.d_b, 2 * b + 2);
        l.base.audit().unwrap();
        l.lifted.audit().unwrap();
    }
}

#[test]
fn constacyclic_family() {
    let t = build_primitive_family(&gf(2), 4, 8).unwrap();
    let r = t.report.clone().unwrap();
    r.audit().unwrap();
    assert!(t.certified_mds());
    let d_h = r.d_h.unwrap();
    assert_eq!(d_h, 3);
    let (rs, z) = defining_set(&t.code).unwrap();
    assert!(rs.check_root_product(t.code.eta));
    assert_eq!(t.code.k(), t.code.n - z.len());
    assert!(bch_lower_bound(&z, rs.r, t.code.n as u64) <= d_h as u64);
}
