use std::collections::HashSet;

use itertools::Itertools;
use proptest::prelude::*;

use super::*;
use crate::linalg::Vector;
use crate::lp::LinearConstraint;
use crate::polytope::{containment, equals_integer_hull, Limits, VPointSet};
use crate::Rational;

type Q = Rational;

fn stable_k(n: usize) -> Polytope<Q> {
    let rows = (0..n)
        .tuple_combinations()
        .map(|(a, b)| {
            let mut c = Vector::zeros(n);
            c[a] = Q::int(1);
            c[b] = Q::int(1);
            LinearConstraint::le(c, Q::int(1))
        })
        .collect();
    Polytope::new(n, rows, true).unwrap()
}

fn knapsack(n: usize, q: i64) -> Polytope<Q> {
    Polytope::new(n, vec![LinearConstraint::le(Vector::filled(n, Q::int(q)), Q::int(2 * (q - 1)))], true).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Explicit `conv(∪ leaf atoms)` through atom vertices.
fn explicit_relaxation(t: &BBTree, p: &Polytope<Q>) -> Polytope<Q> {
    let limits = Limits::default();
    let mut pts = Vec::new();
    for a in t.leaf_atoms(p) {
        pts.extend(a.vertices(&limits).unwrap().points);
    }
    VPointSet::new(p.n, pts).unwrap().hull(&limits).unwrap()
}

fn same_set(a: &Polytope<Q>, b: &Polytope<Q>) -> bool {
    let l = Limits::default();
    containment(a, b, &l).unwrap().is_contained() && containment(b, a, &l).unwrap().is_contained()
}

#[test]
fn skewed_small_cases() {
    let t = skewed_k_tree(2, 1, &[0, 1]).unwrap();
    assert_eq!(t.size(), 5);
    let fix: Vec<Vec<(usize, bool)>> = t.leaves().into_iter().map(|v| t.fixings(v)).collect();
    assert_eq!(fix, vec![vec![(0, false), (1, false)], vec![(0, false), (1, true)], vec![(0, true)]]);
    assert_eq!(skewed_k_tree(4, 2, &[0, 1, 2, 3]).unwrap().leaf_count(), 11);
    assert_eq!(skewed_k_tree(3, 3, &[2, 0, 1]).unwrap().leaf_count(), 8);
    assert!(skewed_k_tree(3, 0, &[0, 1, 2]).is_err());
    assert!(skewed_k_tree(3, 1, &[0, 0, 2]).is_err());
}

#[test]
fn nogood_tree_examples() {
    let t = nogood_tree(3, &[vec![false; 3]]).unwrap();
    assert_eq!(t.size(), 7);
    assert_eq!(t.height(), 3);
    let t2 = nogood_tree(2, &[vec![false, false], vec![true, true]]).unwrap();
    assert!(t2.size() <= 12);
    let full: Vec<Vec<(usize, bool)>> = t2.leaves().into_iter().map(|v| t2.fixings(v)).filter(|f| f.len() == 2).collect();
    assert!(full.contains(&vec![(0, false), (1, false)]) && full.contains(&vec![(0, true), (1, true)]));
    assert!(nogood_tree(2, &[]).is_err());
}

#[test]
fn enumeration_counts() {
    assert_eq!(enumerate_trees(2, 1, usize::MAX, 1000).unwrap().len(), 3);
    assert_eq!(enumerate_trees(2, 2, usize::MAX, 1000).unwrap().len(), 9);
    assert_eq!(enumerate_trees(7, 7, 2, 1000).unwrap().len(), 8);
    let all = enumerate_trees(3, 2, usize::MAX, 10_000).unwrap();
    let distinct: HashSet<String> = all.iter().map(|t| t.to_json().unwrap()).collect();
    assert_eq!(distinct.len(), all.len());
    assert!(all.iter().all(|t| t.is_canonical() && t.validate().is_ok() && t.height() <= 2));
    assert!(enumerate_trees(4, 4, usize::MAX, 10).is_err());
}

#[test]
fn atoms() {
    let limits = Limits::default();
    let k3 = stable_k(3);
    let mut t = BBTree::trivial(3);
    let (_, one) = t.branch(0, 0).unwrap();
    assert_eq!(t.atom(&k3, t.root()), k3);
    assert_eq!(t.atom(&k3, one).vertices(&limits).unwrap().points, vec![Vector::from_ints(&[1, 0, 0])]);
    let mut t4 = BBTree::trivial(4);
    let (_, a) = t4.branch(0, 0).unwrap();
    let (_, b) = t4.branch(a, 1).unwrap();
    assert!(t4.atom(&knapsack(4, 3), b).is_empty());
}

#[test]
fn greedy_tree_on_stable_sets() {
    let limits = Limits::default();
    for n in 3..=5 {
        let p = stable_k(n);
        let t = greedy_integral_tree(&p, 2 * n + 1, &limits).unwrap();
        assert!(t.size() <= 2 * n + 1);
        let hull = p.integer_hull(true, &limits).unwrap();
        assert!(equals_integer_hull(&t.relaxation(&p).unwrap(), &hull).unwrap().is_equal());
    }
    assert_eq!(greedy_integral_tree(&Polytope::<Q>::unit_cube(3), 10, &limits).unwrap().size(), 1);
    let kp = knapsack(4, 3);
    let t = greedy_integral_tree(&kp, 100, &limits).unwrap();
    for a in t.leaf_atoms(&kp) {
        assert!(a.vertices(&limits).unwrap().points.iter().all(|v| v.is_binary()));
    }
    assert!(greedy_integral_tree(&stable_k(4), 3, &limits).is_err());
}

#[test]
fn relaxation_examples() {
    let p = stable_k(3);
    assert!(same_set(&BBTree::trivial(3).relaxation(&p).unwrap(), &p));
    let mut t = BBTree::trivial(3);
    t.branch(0, 1).unwrap();
    let r = t.relaxation(&p).unwrap();
    let faces = Polytope::balas_union(&[p.fix(1, false), p.fix(1, true)]).unwrap();
    assert!(same_set(&r, &explicit_relaxation(&t, &p)));
    assert!(same_set(&faces.explicit(&Limits::default()).unwrap(), &explicit_relaxation(&t, &p)));
}

#[test]
fn separation_examples() {
    let p = stable_k(3);
    let limits = Limits::default();
    let t = greedy_integral_tree(&p, 7, &limits).unwrap();
    let half = Vector::filled(3, Q::ratio(1, 2));
    assert!(t.separates(&p, &half).unwrap());
    assert!(!BBTree::trivial(3).separates(&p, &half).unwrap());
}

#[test]
fn json_and_dot() {
    let t = skewed_k_tree(3, 1, &[1, 0, 2]).unwrap();
    let text = t.to_json().unwrap();
    assert!(text.starts_with("{\"branch\":2,"));
    assert_eq!(BBTree::from_json(&text, 3).unwrap(), t);
    assert_eq!(BBTree::from_json("\"leaf\"", 2).unwrap(), BBTree::trivial(2));
    assert!(BBTree::from_json(r#"{"branch":0,"zero":"leaf","one":"leaf"}"#, 2).is_err());
    assert!(BBTree::from_json(r#"{"branch":3,"zero":"leaf","one":"leaf"}"#, 2).is_err());
    let dot = t.to_dot();
    assert!(dot.contains("label=\"x_2\"") && dot.contains("label=\"1\""));
}

#[test]
fn size_accounting() {
    let p = knapsack(4, 3);
    for t in [skewed_k_tree(4, 2, &[0, 1, 2, 3]).unwrap(), nogood_tree(4, &[vec![false; 4]]).unwrap()] {
        let s = t.size_report(&p).unwrap();
        assert!(s.within_bounds(), "{s:?}");
        assert_eq!(s.aux_vars, s.leaves * 5);
    }
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn skewed_tree_properties((n, k, perm) in (1usize..=8).prop_flat_map(|n| (Just(n), 1usize..=n.min(3), perm_strategy(n)))) {
        let t = skewed_k_tree(n, k, &perm).unwrap();
        prop_assert!(t.validate().is_ok() && t.is_canonical());
        let expected: usize = (0..=k).map(|i| binomial(n, i)).sum();
        prop_assert_eq!(t.leaf_count(), expected);
        let mut seen = HashSet::new();
        for v in t.leaves() {
            let l = t.labels(v);
            prop_assert!(l.j1.len() == k || l.j0.len() + l.j1.len() == n);
            prop_assert!(l.j0.is_disjoint(&l.j1));
            prop_assert_eq!(l.height, l.fixings.len());
            prop_assert!(seen.insert(l.j1.clone()));
        }
        prop_assert_eq!(seen.len(), expected);
    }

    #[test]
    fn refining_never_enlarges(var_a in 0usize..3, var_b in 0usize..3, side in any::<bool>()) {
        let p = stable_k(3).with_constraint(LinearConstraint::ge(Vector::from_ints(&[1, 1, 1]), Q::ratio(1, 3))).unwrap();
        let mut coarse = BBTree::trivial(3);
        let (z, o) = coarse.branch(0, var_a).unwrap();
        let mut fine = coarse.clone();
        if var_b != var_a {
            fine.branch(if side { o } else { z }, var_b).unwrap();
        }
        let c = explicit_relaxation(&coarse, &p);
        let f = explicit_relaxation(&fine, &p);
        let limits = Limits::default();
        prop_assert!(containment(&f, &c, &limits).unwrap().is_contained());
        let hull = p.integer_hull(true, &limits).unwrap();
        prop_assert!(f.contains_hull(&hull).unwrap());
        prop_assert!(containment(&f, &p, &limits).unwrap().is_contained());
    }
}
