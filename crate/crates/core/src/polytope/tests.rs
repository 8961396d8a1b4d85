use itertools::Itertools;
use proptest::prelude::*;

use super::*;
use crate::linalg::{solve_linear_system, LinearSolution, Matrix};
use crate::Rational;

type Q = Rational;

fn q(p: i64, d: i64) -> Q {
    Q::ratio(p, d)
}

fn v(entries: &[(i64, i64)]) -> Vector<Q> {
    Vector::from_ratios(entries)
}

fn vi(entries: &[i64]) -> Vector<Q> {
    Vector::from_ints(entries)
}

fn le(c: &[i64], rhs: Q) -> LinearConstraint<Q> {
    LinearConstraint::le(vi(c), rhs)
}

fn ge(c: &[i64], rhs: Q) -> LinearConstraint<Q> {
    LinearConstraint::ge(vi(c), rhs)
}

fn pairs(n: usize) -> Vec<LinearConstraint<Q>> {
    (0..n)
        .tuple_combinations()
        .map(|(a, b)| {
            let mut c = vec![0; n];
            c[a] = 1;
            c[b] = 1;
            le(&c, Q::int(1))
        })
        .collect()
}

fn point(set: &[Vector<Q>], x: &Vector<Q>) -> bool {
    set.iter().any(|p| p == x)
}

/// Vertices by solving every square subsystem of tight rows.
fn brute_vertices(p: &Polytope<Q>) -> Vec<Vector<Q>> {
    let rows: Vec<(Vector<Q>, Q)> = p.system().iter().flat_map(|c| c.as_ge_rows()).collect();
    let mut out: Vec<Vector<Q>> = Vec::new();
    for subset in (0..rows.len()).combinations(p.n) {
        let m = Matrix::from_rows(subset.iter().map(|&i| rows[i].0.clone()).collect(), p.n).unwrap();
        let rhs = Vector(subset.iter().map(|&i| rows[i].1.clone()).collect());
        if let LinearSolution::Unique(x) = solve_linear_system(&m, &rhs).unwrap() {
            if p.system().iter().all(|c| c.is_satisfied_by(&x)) && !point(&out, &x) {
                out.push(x);
            }
        }
    }
    sort_points(&mut out);
    out
}

fn stable_k(n: usize) -> Polytope<Q> {
    Polytope::new(n, pairs(n), true).unwrap()
}

fn same_set(a: &Polytope<Q>, b: &Polytope<Q>) -> bool {
    let limits = Limits::default();
    containment(a, b, &limits).unwrap().is_contained() && containment(b, a, &limits).unwrap().is_contained()
}

#[test]
fn membership_examples() {
    let square = Polytope::<Q>::unit_cube(2);
    assert!(square.is_member(&v(&[(1, 2), (1, 2)])).unwrap());
    assert!(!square.is_member(&vi(&[2, 0])).unwrap());
    assert!(stable_k(3).is_member(&v(&[(1, 2), (1, 2), (1, 2)])).unwrap());
    assert!(square.is_member(&vi(&[1])).is_err());
}

#[test]
fn vertex_examples() {
    let limits = Limits::default();
    assert_eq!(Polytope::<Q>::unit_cube(2).vertices(&limits).unwrap().len(), 4);
    let tri = Polytope::new(2, vec![le(&[1, 1], Q::int(1))], true).unwrap();
    assert_eq!(tri.vertices(&limits).unwrap().points, vec![vi(&[0, 0]), vi(&[0, 1]), vi(&[1, 0])]);
    assert!(Polytope::<Q>::empty(3).vertices(&limits).unwrap().is_empty());
}

#[test]
fn single_triangle_face_vertices_match_brute_force() {
    let mut rows = pairs(3);
    rows.push(ge(&[1, 1, 1], q(3, 2)));
    let face = Polytope::new(3, rows, true).unwrap();
    let found = face.vertices(&Limits::default()).unwrap().points;
    assert_eq!(found, brute_vertices(&face));
    assert_eq!(found, vec![v(&[(1, 2), (1, 2), (1, 2)])]);
}

#[test]
fn lifted_inputs_rejected_where_explicit_needed() {
    let parts = [Polytope::new(1, vec![ge(&[1], Q::int(0))], true).unwrap()];
    let lifted = Polytope::balas_union(&parts).unwrap();
    assert!(matches!(lifted.vertices(&Limits::default()), Err(Error::Lifted)));
}

fn single(p: Vector<Q>) -> Polytope<Q> {
    let n = p.dim();
    let rows = (0..n).map(|i| LinearConstraint::bound(n, i, Sense::Eq, p[i].clone())).collect();
    Polytope::new(n, rows, true).unwrap()
}

#[test]
fn two_point_union() {
    let u = Polytope::balas_union(&[single(vi(&[0, 0])), single(vi(&[1, 1]))]).unwrap();
    assert!(u.is_member(&v(&[(1, 2), (1, 2)])).unwrap());
    assert!(!u.is_member(&vi(&[1, 0])).unwrap());
    let shadow = u.explicit(&Limits::default()).unwrap();
    let segment = Polytope::new(2, vec![LinearConstraint::eq(vi(&[1, -1]), Q::int(0))], true).unwrap();
    assert!(same_set(&shadow, &segment));
}

#[test]
fn empty_part_contributes_nothing() {
    let parts = [single(vi(&[0, 1])), Polytope::empty(2), single(vi(&[1, 0]))];
    let u = Polytope::balas_union(&parts).unwrap();
    let hull = VPointSet::new(2, vec![vi(&[0, 1]), vi(&[1, 0])]).unwrap().hull(&Limits::default()).unwrap();
    assert!(same_set(&u, &hull));
    // The multiplier of the empty part is forced to zero.
    let lam = 2 + 3 + 2;
    let mut obj = vec![Q::int(0); u.total_dim()];
    obj[lam] = Q::int(1);
    let out = lp_solve(&LpProblem::maximize(u.total_dim(), u.system(), Vector(obj)).unwrap());
    assert_eq!(out.value.unwrap(), Q::int(0));
    assert!(Polytope::balas_union(&[Polytope::<Q>::empty(2)]).unwrap().is_empty());
    assert!(Polytope::<Q>::balas_union(&[]).is_err());
}

#[test]
fn projection_examples() {
    let limits = Limits::default();
    let tri = Polytope::new(2, vec![le(&[1, 1], Q::int(1))], true).unwrap();
    let onto = tri.project(&[0], &limits).unwrap();
    assert!(same_set(&onto, &Polytope::unit_cube(1)));
}

#[test]
fn integer_hull_examples() {
    let limits = Limits::default();
    let k3 = stable_k(3).integer_hull(true, &limits).unwrap();
    assert_eq!(k3.vertices.len(), 4);
    let expected = Polytope::new(3, vec![le(&[1, 1, 1], Q::int(1)), ge(&[1, 0, 0], Q::int(0)), ge(&[0, 1, 0], Q::int(0)), ge(&[0, 0, 1], Q::int(0))], false).unwrap();
    assert!(same_set(&k3.as_polytope().unwrap(), &expected));
    assert_eq!(k3.facets().unwrap().len(), 4);

    let nogood = Polytope::new(3, vec![ge(&[1, 1, 1], q(1, 2))], true).unwrap();
    let h = nogood.integer_hull(true, &limits).unwrap();
    assert_eq!(h.vertices.len(), 7);
    let expected = Polytope::new(3, vec![ge(&[1, 1, 1], Q::int(1))], true).unwrap();
    assert!(same_set(&h.as_polytope().unwrap(), &expected));
    assert!(h.facets().unwrap().contains(&ge(&[1, 1, 1], Q::int(1))));

    let mut rows = pairs(3);
    rows.push(ge(&[1, 1, 1], q(3, 2)));
    let face = Polytope::new(3, rows, true).unwrap();
    let empty = face.integer_hull(true, &limits).unwrap();
    assert!(empty.is_empty());
    assert!(empty.as_polytope().unwrap().is_empty());
}

#[test]
fn hull_comparisons() {
    let limits = Limits::default();
    let p = stable_k(3);
    let h = p.integer_hull(true, &limits).unwrap();
    assert!(equals_integer_hull(&h.as_polytope().unwrap(), &h).unwrap().is_equal());
    match equals_integer_hull(&p, &h).unwrap() {
        HullComparison::OutsideHull(w) => {
            assert!(p.is_member(&w).unwrap());
            assert!(w.iter().fold(Q::int(0), |a, b| a + b) > Q::int(1));
        }
        other => panic!("expected a witness, got {other:?}"),
    }
    let bare = IntegerHull { vertices: h.vertices.clone(), facets: None };
    assert!(matches!(equals_integer_hull(&p, &bare), Err(Error::MissingFacets)));
    assert!(p.contains_hull(&h).unwrap());
}

#[test]
fn dash_witness_on_a_segment() {
    let f = VPointSet::new(1, vec![vi(&[0])]).unwrap();
    let r = VPointSet::new(1, vec![vi(&[1])]).unwrap();
    let x = dash_witness(&f, &r, &vi(&[1]), &Q::int(0)).unwrap();
    assert_eq!(x, vi(&[1]));
    let bad = VPointSet::new(1, vec![vi(&[0])]).unwrap();
    assert!(dash_witness(&f, &bad, &vi(&[1]), &Q::int(0)).is_err());
}

#[test]
fn dash_witness_stays_in_every_simplex() {
    let f = VPointSet::new(2, vec![vi(&[0, 0]), vi(&[1, 0])]).unwrap();
    let r = VPointSet::new(2, vec![vi(&[0, 1]), vi(&[1, 1]), v(&[(1, 2), (1, 1)])]).unwrap();
    let a = vi(&[0, 1]);
    let x = dash_witness(&f, &r, &a, &Q::int(0)).unwrap();
    assert!(x[1] > Q::int(0));
    for apex in &r.points {
        let mut pts = f.points.clone();
        pts.push(apex.clone());
        let simplex = VPointSet::new(2, pts).unwrap().hull(&Limits::default()).unwrap();
        assert!(simplex.is_member(&x).unwrap());
    }
}

fn small_row(n: usize) -> impl Strategy<Value = (Vec<i64>, i64)> {
    (proptest::collection::vec(-3i64..=3, n), -3i64..=3)
}

/// Random rows kept valid at the centre of the cube.
fn random_polytope(n: usize, rows: Vec<(Vec<i64>, i64)>) -> Polytope<Q> {
    let centre = Vector::filled(n, q(1, 2));
    let cons = rows
        .into_iter()
        .map(|(c, r)| {
            let mut row = ge(&c, q(r, 2));
            let slack = row.slack(&centre);
            if slack < Q::int(0) {
                row.rhs += slack;
            }
            row
        })
        .collect();
    Polytope::new(n, cons, true).unwrap()
}

fn sample_points(n: usize, count: usize, seed: u64) -> Vec<Vector<Q>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Vector((0..n).map(|_| q(rng.gen_range(-1..=5), 4)).collect())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn vertices_agree_with_brute_force(rows in proptest::collection::vec(small_row(3), 1..5)) {
        let p = random_polytope(3, rows);
        let found = p.vertices(&Limits::default()).unwrap().points;
        prop_assert_eq!(found, brute_vertices(&p));
    }

    #[test]
    fn hull_round_trips_through_vertices(rows in proptest::collection::vec(small_row(3), 1..4)) {
        let p = random_polytope(3, rows);
        let limits = Limits::default();
        let verts = p.vertices(&limits).unwrap();
        let back = verts.hull(&limits).unwrap();
        prop_assert!(same_set(&p, &back));
        prop_assert_eq!(back.vertices(&limits).unwrap().points, verts.points);
    }

    #[test]
    fn projection_matches_lifted_membership(rows in proptest::collection::vec(small_row(3), 1..4), seed in 0u64..1000) {
        let p = random_polytope(3, rows);
        let shadow = p.project(&[0, 2], &Limits::default()).unwrap();
        let lifted = Polytope::lifted(2, 1, p.system().into_iter().map(|c| {
            let c2 = Vector(vec![c.coeffs[0].clone(), c.coeffs[2].clone(), c.coeffs[1].clone()]);
            LinearConstraint::new(c2, c.sense, c.rhs)
        }).collect(), false).unwrap();
        for x in sample_points(2, 50, seed) {
            prop_assert_eq!(shadow.is_member(&x).unwrap(), lifted.is_member(&x).unwrap());
        }
    }

    #[test]
    fn union_formulation_matches_vertex_hull(
        a in proptest::collection::vec(small_row(3), 1..3),
        b in proptest::collection::vec(small_row(3), 1..3),
    ) {
        let limits = Limits::default();
        let pa = random_polytope(3, a).fix(0, false);
        let pb = random_polytope(3, b).fix(1, true);
        let ef = Polytope::balas_union(&[pa.clone(), pb.clone()]).unwrap();
        let mut pts = pa.vertices(&limits).unwrap().points;
        pts.extend(pb.vertices(&limits).unwrap().points);
        let hull = VPointSet::new(3, pts).unwrap().hull(&limits).unwrap();
        prop_assert!(same_set(&ef, &hull));
        let shadow = ef.explicit(&limits).unwrap();
        prop_assert!(same_set(&shadow, &hull));
    }
}
