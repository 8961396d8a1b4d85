//! Vertex enumeration by walking the edge graph.
//!
//! Starting from one vertex, every extreme ray of the tangent cone is found
//! as the kernel direction of `n − 1` linearly independent tight rows; a
//! ratio test along it reaches the neighbouring vertex. Degenerate vertices
//! are handled because all such row subsets are examined.

use std::collections::{HashSet, VecDeque};

use itertools::Itertools;

use super::{sort_points, Limits, Polytope, VPointSet};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, rref, Matrix, Vector};
use crate::lp::Sense;
use crate::scalar::Scalar;

struct Rows<S> {
    eqs: Vec<Vector<S>>,
    eq_rhs: Vec<S>,
    ge: Vec<Vector<S>>,
    ge_rhs: Vec<S>,
}

fn key<S: Scalar>(v: &[S]) -> Vec<String> {
    v.iter().map(|x| x.to_text()).collect()
}

fn rank<S: Scalar>(rows: &[&Vector<S>], n: usize) -> usize {
    let mut work: Vec<Vec<S>> = rows.iter().map(|r| r.0.clone()).collect();
    rref(&mut work, n).len()
}

impl<S: Scalar> Rows<S> {
    fn slack(&self, i: usize, x: &[S]) -> S {
        self.ge[i].dot(x) - self.ge_rhs[i].clone()
    }

    /// Step length from `x` along `d` until an inequality becomes tight.
    fn ratio(&self, x: &[S], d: &Vector<S>) -> Option<S> {
        let mut best: Option<S> = None;
        for i in 0..self.ge.len() {
            let rate = self.ge[i].dot(d);
            if !rate.is_neg() {
                continue;
            }
            let t = self.slack(i, x) / -rate;
            if best.as_ref().map_or(true, |b| t.cmp_to(b).is_lt()) {
                best = Some(t);
            }
        }
        best
    }

    fn tight(&self, x: &[S]) -> Vec<usize> {
        (0..self.ge.len()).filter(|&i| self.slack(i, x).is_negligible()).collect()
    }
}

fn unbounded() -> Error {
    Error::Precondition("vertex enumeration needs a bounded polytope".into())
}

/// Moves a feasible point to a vertex by repeatedly stepping within the
/// kernel of its tight rows.
fn to_vertex<S: Scalar>(rows: &Rows<S>, n: usize, mut x: Vector<S>) -> Result<Vector<S>> {
    loop {
        let tight = rows.tight(&x);
        let active: Vec<Vector<S>> = rows.eqs.iter().chain(tight.iter().map(|&i| &rows.ge[i])).cloned().collect();
        let kernel = nullspace(&Matrix { rows: active, cols: n });
        let Some(d) = kernel.into_iter().next() else {
            return Ok(x);
        };
        let (d, t) = match rows.ratio(&x, &d) {
            Some(t) => (d, t),
            None => {
                let neg = d.scale(&-S::one());
                let t = rows.ratio(&x, &neg).ok_or_else(unbounded)?;
                (neg, t)
            }
        };
        x = x.add(&d.scale(&t));
    }
}

pub(super) fn enumerate<S: Scalar>(p: &Polytope<S>, limits: &Limits) -> Result<VPointSet<S>> {
    if p.aux != 0 {
        return Err(Error::Lifted);
    }
    let n = p.n;
    let mut rows = Rows { eqs: Vec::new(), eq_rhs: Vec::new(), ge: Vec::new(), ge_rhs: Vec::new() };
    for c in p.system() {
        if c.sense == Sense::Eq {
            rows.eqs.push(c.coeffs);
            rows.eq_rhs.push(c.rhs);
        } else {
            for (a, b) in c.as_ge_rows() {
                rows.ge.push(a);
                rows.ge_rhs.push(b);
            }
        }
    }
    let Some(start) = p.feasible_point() else {
        return Ok(VPointSet { dim: n, points: Vec::new() });
    };
    if n == 0 {
        return Ok(VPointSet { dim: 0, points: vec![start] });
    }
    let v0 = to_vertex(&rows, n, start)?;

    let eq_refs: Vec<&Vector<S>> = rows.eqs.iter().collect();
    let eq_rank = rank(&eq_refs, n);
    let mut seen: HashSet<Vec<String>> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(key(&v0));
    queue.push_back(v0);
    let mut examined = 0usize;

    while let Some(v) = queue.pop_front() {
        let tight = rows.tight(&v);
        if eq_rank < n {
            let pick = n - 1 - eq_rank;
            let mut tried: HashSet<Vec<String>> = HashSet::new();
            for combo in tight.iter().copied().combinations(pick) {
                examined += 1;
                if examined > limits.max_subsets {
                    return Err(Error::Budget(format!("vertex enumeration examined {examined} row subsets")));
                }
                let mut basis: Vec<Vector<S>> = rows.eqs.clone();
                basis.extend(combo.iter().map(|&i| rows.ge[i].clone()));
                let kernel = nullspace(&Matrix { rows: basis, cols: n });
                if kernel.len() != 1 {
                    continue;
                }
                let mut base = kernel.into_iter().next().expect("one kernel vector");
                S::normalize_row(&mut base);
                for d in [base.clone(), base.scale(&-S::one())] {
                    if !tried.insert(key(&d)) {
                        continue;
                    }
                    if tight.iter().any(|&i| rows.ge[i].dot(&d).is_neg()) {
                        continue;
                    }
                    let t = rows.ratio(&v, &d).ok_or_else(unbounded)?;
                    let w = v.add(&d.scale(&t));
                    if seen.insert(key(&w)) {
                        queue.push_back(w);
                    }
                }
            }
        }
        out.push(v);
        if out.len() > limits.max_vertices {
            return Err(Error::Budget(format!("more than {} vertices", limits.max_vertices)));
        }
    }
    sort_points(&mut out);
    Ok(VPointSet { dim: n, points: out })
}
