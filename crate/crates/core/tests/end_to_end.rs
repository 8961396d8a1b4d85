use cutbranch_core::hierarchy::{apply, l_iterate, sa_member, Operator, OperatorResult};
use cutbranch_core::instances::{self, Instance};
use cutbranch_core::polytope::{containment, equals_integer_hull};
use cutbranch_core::tree::skewed_k_tree;
use cutbranch_core::{Direction, FPolytope, LinearConstraint, Limits, LpStatus, RPolytope, RVector, Rational, Scalar, Vector};

type Q = Rational;

#[test]
fn knapsack_tree_against_sa() {
    let limits = Limits::default();
    let inst: Instance<Q> = instances::knapsack_uniform(4, 3).unwrap();
    let p = &inst.polytope;
    let hull = inst.hull(&limits).unwrap();
    let t = skewed_k_tree(4, 2, &[0, 1, 2, 3]).unwrap();
    assert!(equals_integer_hull(&t.relaxation(p).unwrap(), &hull).unwrap().is_equal());

    // 2(q-1)/q over n + (t-1)(q-1)/q at q=3, n=4, t=2
    let q = 3i64;
    let (n, lvl) = (4i64, 2i64);
    let x = Q::ratio(2 * (q - 1), q) / (Q::int(n) + Q::ratio((lvl - 1) * (q - 1), q));
    assert_eq!(x, Q::ratio(2, 7));
    let pt = vec![x.clone(); 4];
    assert!(sa_member(p, 2, &pt).unwrap());
    assert!(x * Q::int(4) > Q::int(1));
    assert!(!hull.as_polytope().unwrap().is_member(&pt).unwrap());
}

#[test]
fn operator_results_round_trip() {
    let limits = Limits::default();
    let inst: Instance<Q> = instances::r3_example().unwrap();
    let r = apply(Operator::B, &inst.polytope, 2, true, &limits).unwrap();
    let text = cutbranch_core::json::to_string(&r).unwrap();
    let back: OperatorResult<Q> = cutbranch_core::json::from_str(&text).unwrap();
    assert_eq!(back.polytope, r.polytope);
    assert_eq!(back.provenance, r.provenance);
    let inst_back: Instance<Q> = cutbranch_core::json::from_str(&cutbranch_core::json::to_string(&inst).unwrap()).unwrap();
    assert_eq!(inst_back.polytope, inst.polytope);
}

#[test]
fn lifted_and_explicit_l_agree() {
    let limits = Limits::default();
    let p: RPolytope = instances::stable_set_fractional(3).unwrap().polytope;
    let lifted = l_iterate(&p, 1, &limits).unwrap();
    let explicit = apply(Operator::L, &p, 1, true, &limits).unwrap().polytope;
    assert!(containment(&lifted, &explicit, &limits).unwrap().is_contained());
    assert!(containment(&explicit, &lifted, &limits).unwrap().is_contained());
    let c: RVector = Vector::from_ints(&[1, 1, 1]);
    let best = explicit.optimize(&c, Direction::Max).unwrap();
    assert_eq!(best.status, LpStatus::Optimal);
    assert_eq!(best.value, Some(Q::int(1)));
}

#[test]
fn remark_instance_has_empty_operator_result() {
    let limits = Limits::default();
    let inst: Instance<Q> = instances::remark64(3, 1).unwrap();
    let t = apply(Operator::Tk, &inst.polytope, 1, false, &limits).unwrap();
    assert!(t.polytope.is_empty());
    let whole = skewed_k_tree(3, 1, &[0, 1, 2]).unwrap().relaxation(&inst.polytope).unwrap();
    assert!(containment(&inst.polytope, &whole, &limits).unwrap().is_contained());
}

#[test]
fn float_instantiation_runs() {
    let row = LinearConstraint::le(Vector::from(vec![1.0, 1.0]), 1.0);
    let p = FPolytope::new(2, vec![row], true).unwrap();
    let o = p.optimize(&Vector::from(vec![1.0, 2.0]), Direction::Max).unwrap();
    assert_eq!(o.status, LpStatus::Optimal);
    assert!((o.value.unwrap() - 2.0).abs() < 1e-9);
    assert!(f64::parse_text("0.5").is_some());
}
