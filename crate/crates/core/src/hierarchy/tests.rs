use proptest::prelude::*;

use super::*;
use crate::instances::{knapsack_uniform, nogood, r3_example, random, remark64, stable_set_fractional};
use crate::polytope::{containment, equals_integer_hull, same_set};
use crate::Rational;

type Q = Rational;

fn limits() -> Limits {
    Limits::default()
}

fn same(a: &Polytope<Q>, b: &Polytope<Q>) -> bool {
    same_set(a, b, &limits()).unwrap().is_contained()
}

fn inside(a: &Polytope<Q>, b: &Polytope<Q>) -> bool {
    containment(a, b, &limits()).unwrap().is_contained()
}

fn filled(n: usize, num: i64, den: i64) -> Vector<Q> {
    Vector::filled(n, Q::ratio(num, den))
}

/// Products of the coordinates of a 0/1 point, one per lifted variable.
fn product_lift(lift: &SaLift<Q>, x: &Vector<Q>) -> Vec<Q> {
    lift.subsets.iter().map(|s| if s.iter().all(|&i| x[i] == Q::int(1)) { Q::int(1) } else { Q::int(0) }).collect()
}

#[test]
fn sa_top_level_is_integer_hull() {
    for seed in 0..4 {
        let p = random::<Q>(2, 3, seed).unwrap().polytope;
        let shadow = sa_lift(&p, 2).unwrap().shadow().explicit(&limits()).unwrap();
        let hull = p.integer_hull(true, &limits()).unwrap();
        assert!(equals_integer_hull(&shadow, &hull).unwrap().is_equal(), "seed {seed}");
    }
}

#[test]
fn sa_lift_sizes_and_integer_points() {
    let p = stable_set_fractional::<Q>(4).unwrap().polytope;
    let lift = sa_lift(&p, 2).unwrap();
    assert_eq!(lift.var_count(), 4 + 6 + 4);
    assert!(lift.subsets.iter().all(|s| s.len() <= 3));
    for x in p.integer_points(&limits()).unwrap() {
        let y = product_lift(&lift, &x);
        assert!(lift.constraints.iter().all(|c| c.is_satisfied_by(&y)));
    }
    assert!(sa_lift(&p, 0).is_err());
    assert!(sa_lift(&l_step(&p).unwrap(), 1).is_err());
}

#[test]
fn sa_memberships() {
    let k4 = stable_set_fractional::<Q>(4).unwrap().polytope;
    assert!(sa_member(&k4, 1, &filled(4, 1, 3)).unwrap());
    assert!(!sa_member(&k4, 1, &filled(4, 1, 2)).unwrap());
    let knap = knapsack_uniform::<Q>(4, 3).unwrap().polytope;
    assert!(sa_member(&knap, 2, &filled(4, 2, 7)).unwrap());
    let ng = nogood::<Q>(3, &[vec![false; 3]]).unwrap().polytope;
    assert!(sa_member(&ng, 2, &filled(3, 1, 4)).unwrap());
    assert!(!sa_member(&ng, 3, &filled(3, 1, 4)).unwrap());
}

#[test]
fn l_step_on_triangle() {
    let k3 = stable_set_fractional::<Q>(3).unwrap();
    let hull = k3.analytic_hull.clone().unwrap();
    let lifted = l_step(&k3.polytope).unwrap();
    assert!(equals_integer_hull(&lifted, &hull).unwrap().is_equal());
    let explicit = l_step_explicit(&k3.polytope, &limits()).unwrap();
    assert!(equals_integer_hull(&explicit, &hull).unwrap().is_equal());
    let cube = Polytope::<Q>::unit_cube(3);
    assert!(same(&l_step_explicit(&cube, &limits()).unwrap(), &cube));
    assert_eq!(l_iterate(&cube, 0, &limits()).unwrap(), cube);
}

#[test]
fn l_iterate_budget() {
    let p = stable_set_fractional::<Q>(4).unwrap().polytope;
    let tight = Limits { max_lifted_vars: 100, ..Limits::default() };
    assert!(matches!(l_iterate(&p, 2, &tight), Err(Error::Budget(_))));
    assert!(l_iterate(&p, 1, &tight).is_ok());
}

#[test]
fn nogood_l2_is_not_the_hull() {
    let p = nogood::<Q>(3, &[vec![false; 3]]).unwrap().polytope;
    let l2 = l_iterate_explicit(&p, 2, &limits()).unwrap();
    let min = l2.optimize(&Vector::filled(3, Q::int(1)), crate::lp::Direction::Min).unwrap();
    assert!(min.value.unwrap() < Q::int(1));
    assert!(l2.is_member(&filled(3, 1, 4)).unwrap());
}

#[test]
fn r3_subset_hulls() {
    let p = r3_example::<Q>().unwrap();
    let hull = p.analytic_hull.clone().unwrap();
    let p12 = bcc_subset_hull(&p.polytope, &[0, 1]).unwrap();
    assert!(p12.is_member(&Vector::from_ratios(&[(0, 1), (0, 1), (1, 2)])).unwrap());
    let p23 = bcc_subset_hull(&p.polytope, &[1, 2]).unwrap();
    assert!(p23.is_member(&Vector::from_ratios(&[(1, 2), (0, 1), (1, 1)])).unwrap());
    let all = bcc_subset_hull(&p.polytope, &[0, 1, 2]).unwrap();
    assert!(equals_integer_hull(&all, &hull).unwrap().is_equal());
    assert!(bcc_subset_hull(&p.polytope, &[0, 0]).is_err());

    let b2 = b_k_polytope(&p.polytope, 2, &limits()).unwrap();
    let a = Vector::from_ints(&[0, -1, 1]);
    assert!(b2.max_value(&a).unwrap().unwrap() > Q::int(0));
    let b2x = b_k_polytope_explicit(&p.polytope, 2, &limits()).unwrap();
    assert_eq!(b2.max_value(&a).unwrap(), b2x.max_value(&a).unwrap());
    let witness = b2.optimize(&a, crate::lp::Direction::Max).unwrap().point.unwrap();
    assert!(b_k_member(&p.polytope, 2, &witness, &limits()).unwrap());

    let t2 = t_k_polytope_explicit(&p.polytope, 2, &limits()).unwrap();
    assert!(equals_integer_hull(&t2, &hull).unwrap().is_equal());
}

#[test]
fn remark64_tree_operator_is_empty() {
    for (n, k) in [(3, 1), (4, 2)] {
        let p = remark64::<Q>(n, k).unwrap().polytope;
        assert!(t_k_polytope_explicit(&p, k, &limits()).unwrap().is_empty());
        assert!(t_k_polytope(&p, k, &limits()).unwrap().is_empty());
    }
}

#[test]
fn provenance_record() {
    let p = stable_set_fractional::<Q>(3).unwrap().polytope;
    let r = apply(Operator::Sa, &p, 1, false, &limits()).unwrap();
    let text = crate::json::to_string(&r).unwrap();
    assert!(text.contains("\"operator\": \"SA\"") && text.contains("\"t\": 1"));
    let back: OperatorResult<Q> = crate::json::from_str(&text).unwrap();
    assert_eq!(back.polytope, r.polytope);
    assert_eq!(back.provenance, r.provenance);
    let tk = apply(Operator::Tk, &p, 1, true, &limits()).unwrap();
    assert!(serde_json::to_string(&tk.provenance).unwrap().contains("\"Tk\""));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn operators_agree_at_level_one(seed in 0u64..1000) {
        let p = random::<Q>(3, 3, seed).unwrap().polytope;
        let l = l_step_explicit(&p, &limits()).unwrap();
        prop_assert!(same(&l, &l_step(&p).unwrap()));
        prop_assert!(same(&l, &b_k_polytope_explicit(&p, 1, &limits()).unwrap()));
        prop_assert!(same(&l, &t_k_polytope_explicit(&p, 1, &limits()).unwrap()));
    }

    #[test]
    fn results_sit_between_hull_and_polytope(seed in 0u64..1000, k in 1usize..=2) {
        let p = random::<Q>(3, 4, seed).unwrap().polytope;
        let hull = p.integer_hull(false, &limits()).unwrap();
        let results = [
            l_iterate_explicit(&p, k, &limits()).unwrap(),
            b_k_polytope_explicit(&p, k, &limits()).unwrap(),
            t_k_polytope_explicit(&p, k, &limits()).unwrap(),
            sa_lift(&p, k).unwrap().shadow(),
        ];
        for r in &results {
            prop_assert!(r.contains_hull(&hull).unwrap());
        }
        for r in &results[..3] {
            prop_assert!(inside(r, &p));
        }
        prop_assert!(inside(&results[0], &results[2]));
        prop_assert!(inside(&results[2], &results[1]));
    }

    #[test]
    fn sa_levels_nest(seed in 0u64..1000) {
        let p = random::<Q>(3, 3, seed).unwrap().polytope;
        let one = sa_lift(&p, 1).unwrap().shadow().explicit(&limits()).unwrap();
        let two = sa_lift(&p, 2).unwrap().shadow().explicit(&limits()).unwrap();
        prop_assert!(inside(&two, &one));
        prop_assert!(inside(&one, &p));
        prop_assert!(inside(&one, &l_step_explicit(&p, &limits()).unwrap()));
    }
}
