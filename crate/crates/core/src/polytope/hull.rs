//! H-descriptions of point hulls by exhaustive facet synthesis.

use std::collections::HashSet;

use itertools::Itertools;

use super::{Limits, VPointSet};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, rref, Matrix, Vector};
use crate::lp::LinearConstraint;
use crate::scalar::Scalar;

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Equalities of the affine hull plus one inequality per facet.
///
/// Points are written in coordinates of their affine hull (the pivot columns
/// of the reduced difference matrix), every affinely independent subset of
/// full size spans a candidate hyperplane, and candidates valid for all
/// points are kept once each.
pub(super) fn hull_constraints<S: Scalar>(set: &VPointSet<S>, limits: &Limits) -> Result<Vec<LinearConstraint<S>>> {
    let n = set.dim;
    let points = set.clone().canonical().points;
    let Some(p0) = points.first() else {
        return Ok(vec![LinearConstraint::ge(Vector::zeros(n), S::one())]);
    };

    let mut diffs: Vec<Vec<S>> = points[1..].iter().map(|p| p.sub(p0).0).collect();
    let pivots = rref(&mut diffs, n);
    let d = pivots.len();
    let basis: Vec<Vector<S>> = diffs[..d].iter().map(|r| Vector(r.clone())).collect();

    let mut out = Vec::new();
    for mut a in nullspace(&Matrix { rows: basis, cols: n }) {
        S::normalize_row(&mut a);
        let rhs = a.dot(p0);
        out.push(LinearConstraint::eq(a, rhs));
    }
    if d == 0 {
        return Ok(out);
    }
    if d > limits.max_facet_dim {
        return Err(Error::Budget(format!("facet synthesis in affine dimension {d}")));
    }
    let candidates = binomial(points.len(), d);
    if candidates > limits.max_subsets as u128 {
        return Err(Error::Budget(format!("{candidates} candidate facet subsets")));
    }

    let reduced: Vec<Vector<S>> = points.iter().map(|p| Vector(pivots.iter().map(|&c| p[c].clone()).collect())).collect();
    let mut seen: HashSet<Vec<String>> = HashSet::new();
    for subset in (0..reduced.len()).combinations(d) {
        let base = &reduced[subset[0]];
        let rows: Vec<Vector<S>> = subset[1..].iter().map(|&i| reduced[i].sub(base)).collect();
        let kernel = nullspace(&Matrix { rows, cols: d });
        if kernel.len() != 1 {
            continue;
        }
        let mut g = kernel.into_iter().next().expect("one kernel vector");
        let h = g.dot(base);
        if g.is_zero_vector() {
            continue;
        }
        let mut above = false;
        let mut below = false;
        for y in &reduced {
            match g.dot(y).cmp_to(&h) {
                std::cmp::Ordering::Greater => above = true,
                std::cmp::Ordering::Less => below = true,
                std::cmp::Ordering::Equal => {}
            }
            if above && below {
                break;
            }
        }
        if above && below {
            continue;
        }
        if below {
            g = g.scale(&-S::one());
        }
        S::normalize_row(&mut g);
        let mut coeffs = Vector::zeros(n);
        for (k, &c) in pivots.iter().enumerate() {
            coeffs[c] = g[k].clone();
        }
        let rhs = coeffs.dot(&points[subset[0]]);
        let mut tag: Vec<String> = coeffs.iter().map(|v| v.to_text()).collect();
        tag.push(rhs.to_text());
        if seen.insert(tag) {
            out.push(LinearConstraint::ge(coeffs, rhs));
        }
    }
    Ok(out)
}
