use super::*;
use crate::Rational;

type Q = Rational;

fn row(c: &[i64], sense: Sense, rhs: (i64, i64)) -> LinearConstraint<Q> {
    LinearConstraint::new(Vector::from_ints(c), sense, Q::ratio(rhs.0, rhs.1))
}

#[test]
fn simplex_corner() {
    let p = LpProblem::maximize(
        2,
        vec![row(&[1, 1], Sense::Le, (1, 1)), row(&[1, 0], Sense::Ge, (0, 1)), row(&[0, 1], Sense::Ge, (0, 1))],
        Vector::from_ints(&[1, 0]),
    )
    .unwrap();
    let out = lp_solve(&p);
    assert_eq!(out.status, LpStatus::Optimal);
    assert_eq!(out.value.unwrap(), Q::int(1));
    assert_eq!(out.point.unwrap(), Vector::from_ints(&[1, 0]));
}

#[test]
fn contradictory_bounds_give_farkas() {
    let cons = vec![row(&[1], Sense::Ge, (2, 1)), row(&[1], Sense::Le, (1, 1))];
    let p = LpProblem::maximize(1, cons.clone(), Vector::from_ints(&[1])).unwrap();
    let out = lp_solve(&p);
    assert_eq!(out.status, LpStatus::Infeasible);
    assert!(verify_farkas(&cons, 1, &out.certificate.unwrap()));
}

#[test]
fn triangle_stable_set_relaxation() {
    let mut cons = Vec::new();
    for i in 0..3 {
        let mut lo = [0; 3];
        lo[i] = 1;
        cons.push(row(&lo, Sense::Ge, (0, 1)));
        cons.push(row(&lo, Sense::Le, (1, 1)));
    }
    for (u, v) in [(0, 1), (0, 2), (1, 2)] {
        let mut c = [0; 3];
        c[u] = 1;
        c[v] = 1;
        cons.push(row(&c, Sense::Le, (1, 1)));
    }
    let p = LpProblem::maximize(3, cons, Vector::from_ints(&[1, 1, 1])).unwrap();
    let out = lp_solve(&p);
    assert_eq!(out.value.unwrap(), Q::ratio(3, 2));
    assert_eq!(out.point.unwrap(), Vector::from_ratios(&[(1, 2), (1, 2), (1, 2)]));
}

#[test]
fn feasible_point_examples() {
    let half = vec![row(&[1], Sense::Eq, (1, 2))];
    assert_eq!(lp_feasible_point(&half, 1).unwrap(), Vector::from_ratios(&[(1, 2)]));
    let empty = vec![row(&[1], Sense::Ge, (1, 1)), row(&[1], Sense::Le, (0, 1))];
    assert!(lp_feasible_point(&empty, 1).is_none());
    let cert = lp_feasibility(&empty, 1).unwrap_err();
    assert!(verify_farkas(&empty, 1, &cert));
}

#[test]
fn unbounded_with_ray() {
    let cons = vec![row(&[1, -1], Sense::Ge, (0, 1))];
    let p = LpProblem::maximize(2, cons.clone(), Vector::from_ints(&[1, 0])).unwrap();
    let out = lp_solve(&p);
    assert_eq!(out.status, LpStatus::Unbounded);
    let x = out.point.unwrap();
    assert!(cons.iter().all(|c| c.is_satisfied_by(&x)));
    let d = out.certificate.unwrap();
    assert!(Vector::from_ints(&[1, -1]).dot(&d) >= Q::int(0));
    assert!(Vector::from_ints(&[1, 0]).dot(&d) > Q::int(0));
}

#[test]
fn zero_variable_problems() {
    let ok = LpProblem::<Q>::maximize(0, vec![row(&[], Sense::Ge, (-1, 1))], Vector(vec![])).unwrap();
    assert_eq!(lp_solve(&ok).status, LpStatus::Optimal);
    let bad = LpProblem::<Q>::maximize(0, vec![row(&[], Sense::Ge, (1, 1))], Vector(vec![])).unwrap();
    assert_eq!(lp_solve(&bad).status, LpStatus::Infeasible);
}

#[test]
fn malformed_problem_rejected() {
    assert!(LpProblem::<Q>::maximize(2, vec![row(&[1], Sense::Ge, (0, 1))], Vector::from_ints(&[1, 1])).is_err());
}

#[test]
fn degenerate_cycling_example_terminates() {
    // Beale's classic cycling instance for the largest-coefficient rule.
    let cons = vec![
        LinearConstraint::le(Vector::from_ratios(&[(1, 4), (-8, 1), (-1, 1), (9, 1)]), Q::int(0)),
        LinearConstraint::le(Vector::from_ratios(&[(1, 2), (-12, 1), (-1, 2), (3, 1)]), Q::int(0)),
        LinearConstraint::le(Vector::from_ints(&[0, 0, 1, 0]), Q::int(1)),
        row(&[1, 0, 0, 0], Sense::Ge, (0, 1)),
        row(&[0, 1, 0, 0], Sense::Ge, (0, 1)),
        row(&[0, 0, 1, 0], Sense::Ge, (0, 1)),
        row(&[0, 0, 0, 1], Sense::Ge, (0, 1)),
    ];
    let obj = Vector::from_ratios(&[(3, 4), (-20, 1), (1, 2), (-6, 1)]);
    let out = lp_solve(&LpProblem::maximize(4, cons, obj).unwrap());
    assert_eq!(out.value.unwrap(), Q::ratio(5, 4));
}

#[test]
fn optimal_certificate_is_dual_feasible() {
    let cons = vec![
        row(&[1, 2], Sense::Le, (4, 1)),
        row(&[3, 1], Sense::Le, (6, 1)),
        row(&[1, 0], Sense::Ge, (0, 1)),
        row(&[0, 1], Sense::Ge, (0, 1)),
    ];
    let obj = Vector::from_ints(&[1, 1]);
    let out = lp_solve(&LpProblem::maximize(2, cons.clone(), obj.clone()).unwrap());
    let y = out.certificate.unwrap();
    let mut combo = Vector::<Q>::zeros(2);
    let mut rhs = Q::int(0);
    for (c, m) in cons.iter().zip(y.iter()) {
        combo = combo.add(&c.coeffs.scale(m));
        rhs += c.rhs.clone() * m.clone();
    }
    assert_eq!(combo, obj.scale(&Q::int(-1)));
    assert_eq!(rhs, -out.value.unwrap());
    // Negating the objective and flipping the direction negates the value.
    let flipped = lp_solve(&LpProblem::minimize(2, cons, obj.scale(&Q::int(-1))).unwrap());
    assert_eq!(flipped.value.unwrap(), Q::ratio(-14, 5));
}

#[test]
fn float_instantiation_solves() {
    let cons = vec![
        LinearConstraint::le(Vector::<f64>(vec![1.0, 1.0]), 1.0),
        LinearConstraint::ge(Vector(vec![1.0, 0.0]), 0.0),
        LinearConstraint::ge(Vector(vec![0.0, 1.0]), 0.0),
    ];
    let out = lp_solve(&LpProblem::maximize(2, cons, Vector(vec![2.0, 1.0])).unwrap());
    assert!((out.value.unwrap() - 2.0).abs() < 1e-9);
}
