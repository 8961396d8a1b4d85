//! Fourier-Motzkin projection with exact redundancy removal.

use std::collections::HashSet;

use super::{Limits, Polytope};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::lp::{lp_solve, Direction, LinearConstraint, LpProblem, LpStatus, Sense};
use crate::scalar::Scalar;

/// `coeffs · x ≥ rhs` or `coeffs · x = rhs` over the full coordinate range.
#[derive(Clone)]
struct Row<S> {
    coeffs: Vec<S>,
    rhs: S,
}

fn combine<S: Scalar>(a: &Row<S>, fa: &S, b: &Row<S>, fb: &S) -> Row<S> {
    let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.clone() * fa.clone() + y.clone() * fb.clone()).collect();
    Row { coeffs, rhs: a.rhs.clone() * fa.clone() + b.rhs.clone() * fb.clone() }
}

fn normalized<S: Scalar>(mut r: Row<S>) -> Row<S> {
    let mut all: Vec<S> = r.coeffs.clone();
    all.push(r.rhs.clone());
    if r.coeffs.iter().all(|c| c.is_negligible()) {
        return r;
    }
    S::normalize_row(&mut all);
    r.rhs = all.pop().expect("rhs");
    r.coeffs = all;
    r
}

fn dedup<S: Scalar>(rows: Vec<Row<S>>) -> Vec<Row<S>> {
    let mut seen = HashSet::new();
    rows.into_iter()
        .filter(|r| {
            let mut tag: Vec<String> = r.coeffs.iter().map(|v| v.to_text()).collect();
            tag.push(r.rhs.to_text());
            seen.insert(tag)
        })
        .collect()
}

/// Drops rows implied by the others. Returns `None` when the system is infeasible.
fn remove_redundant<S: Scalar>(rows: Vec<Row<S>>, eqs: &[Row<S>], vars: &[usize]) -> Option<Vec<Row<S>>> {
    let restrict = |r: &Row<S>, sense: Sense| {
        LinearConstraint::new(Vector(vars.iter().map(|&v| r.coeffs[v].clone()).collect()), sense, r.rhs.clone())
    };
    let mut kept: Vec<Row<S>> = Vec::new();
    let mut pending = rows;
    pending.reverse();
    while let Some(r) = pending.pop() {
        if r.coeffs.iter().all(|c| c.is_negligible()) {
            if r.rhs.is_pos() {
                return None;
            }
            continue;
        }
        let others: Vec<LinearConstraint<S>> = kept
            .iter()
            .chain(pending.iter())
            .map(|o| restrict(o, Sense::Ge))
            .chain(eqs.iter().map(|e| restrict(e, Sense::Eq)))
            .collect();
        let objective = Vector(vars.iter().map(|&v| r.coeffs[v].clone()).collect());
        let problem = LpProblem::new(vars.len(), others, objective, Direction::Min).expect("consistent dimensions");
        let out = lp_solve(&problem);
        match out.status {
            LpStatus::Infeasible => return None,
            LpStatus::Optimal if !out.value.expect("optimal value").cmp_to(&r.rhs).is_lt() => {}
            _ => kept.push(r),
        }
    }
    Some(kept)
}

pub(super) fn project<S: Scalar>(p: &Polytope<S>, keep: &[usize], limits: &Limits) -> Result<Polytope<S>> {
    let total = p.total_dim();
    if let Some(&bad) = keep.iter().find(|&&k| k >= total) {
        return Err(Error::Dimension { expected: total, found: bad + 1 });
    }
    let mut eqs: Vec<Row<S>> = Vec::new();
    let mut ges: Vec<Row<S>> = Vec::new();
    for c in p.system() {
        if c.sense == Sense::Eq {
            eqs.push(Row { coeffs: c.coeffs.0, rhs: c.rhs });
        } else {
            for (a, b) in c.as_ge_rows() {
                ges.push(Row { coeffs: a.0, rhs: b });
            }
        }
    }
    let mut alive: Vec<usize> = (0..total).collect();
    let kept: HashSet<usize> = keep.iter().copied().collect();
    let eliminate = |alive: &mut Vec<usize>, v: usize| alive.retain(|&a| a != v);

    // Equalities first: each one removes a variable by substitution.
    loop {
        let hit = eqs.iter().enumerate().find_map(|(i, e)| {
            alive.iter().find(|&&v| !kept.contains(&v) && !e.coeffs[v].is_negligible()).map(|&v| (i, v))
        });
        let Some((i, v)) = hit else { break };
        let e = eqs.swap_remove(i);
        let pivot = e.coeffs[v].clone();
        let subst = |r: &Row<S>| {
            if r.coeffs[v].is_zero() {
                return r.clone();
            }
            let f = -(r.coeffs[v].clone() / pivot.clone());
            let mut out = combine(r, &S::one(), &e, &f);
            out.coeffs[v] = S::zero();
            out
        };
        eqs = eqs.iter().map(subst).collect();
        ges = ges.iter().map(subst).collect();
        eliminate(&mut alive, v);
    }
    let empty = || Polytope::empty(keep.len());
    for e in &eqs {
        if e.coeffs.iter().all(|c| c.is_negligible()) && !e.rhs.is_negligible() {
            return Ok(empty());
        }
    }
    eqs.retain(|e| !e.coeffs.iter().all(|c| c.is_negligible()));

    ges = dedup(ges.into_iter().map(normalized).collect());
    let Some(mut ges_now) = remove_redundant(ges, &eqs, &alive) else {
        return Ok(empty());
    };

    loop {
        let candidates: Vec<usize> = alive.iter().copied().filter(|v| !kept.contains(v)).collect();
        let Some(v) = candidates.into_iter().min_by_key(|&v| {
            let pos = ges_now.iter().filter(|r| r.coeffs[v].is_pos()).count();
            let neg = ges_now.iter().filter(|r| r.coeffs[v].is_neg()).count();
            pos * neg
        }) else {
            break;
        };
        let (pos, rest): (Vec<Row<S>>, Vec<Row<S>>) = ges_now.into_iter().partition(|r| r.coeffs[v].is_pos());
        let (neg, zero): (Vec<Row<S>>, Vec<Row<S>>) = rest.into_iter().partition(|r| r.coeffs[v].is_neg());
        let mut next = zero;
        for a in &pos {
            for b in &neg {
                let mut r = combine(a, &-b.coeffs[v].clone(), b, &a.coeffs[v]);
                r.coeffs[v] = S::zero();
                next.push(normalized(r));
            }
        }
        if next.len() > limits.max_fm_rows {
            return Err(Error::Budget(format!("{} rows after eliminating a variable", next.len())));
        }
        eliminate(&mut alive, v);
        let Some(reduced) = remove_redundant(dedup(next), &eqs, &alive) else {
            return Ok(empty());
        };
        ges_now = reduced;
    }

    let widen = |r: &Row<S>| Vector(keep.iter().map(|&k| r.coeffs[k].clone()).collect());
    let mut constraints: Vec<LinearConstraint<S>> =
        eqs.iter().map(|e| LinearConstraint::eq(widen(e), e.rhs.clone())).collect();
    constraints.extend(ges_now.iter().map(|r| LinearConstraint::ge(widen(r), r.rhs.clone())));
    Polytope::new(keep.len(), constraints, false)
}
