//! Lift-and-project operators.
//!
//! Each operator comes in two forms. The lifted form is an extended
//! formulation built from disjunctive unions and works for any input. The
//! explicit form goes through vertices: every union is convexified by
//! enumerating the vertices of its parts and synthesizing facets, which is
//! exact and much smaller for `n ≤ 4` or so.

use std::collections::{BTreeMap, HashMap, HashSet};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::lp::LinearConstraint;
use crate::polytope::{violation, IntegerHull, Limits, Polytope, VPointSet};
use crate::scalar::Scalar;
use crate::tree::{enumerate_trees, BBTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Operator {
    #[serde(rename = "SA")]
    Sa,
    L,
    B,
    Tk,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub operator: Operator,
    pub params: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "S: Scalar")]
pub struct OperatorResult<S> {
    #[serde(flatten)]
    pub polytope: Polytope<S>,
    pub provenance: Provenance,
}

/// Applies `op` at level `level` (`t` for SA, `k` otherwise).
pub fn apply<S: Scalar>(op: Operator, p: &Polytope<S>, level: usize, explicit: bool, limits: &Limits) -> Result<OperatorResult<S>> {
    let polytope = match (op, explicit) {
        (Operator::Sa, false) => sa_lift(p, level)?.shadow(),
        (Operator::Sa, true) => sa_lift(p, level)?.shadow().explicit(limits)?,
        (Operator::L, false) => l_iterate(p, level, limits)?,
        (Operator::L, true) => l_iterate_explicit(p, level, limits)?,
        (Operator::B, false) => b_k_polytope(p, level, limits)?,
        (Operator::B, true) => b_k_polytope_explicit(p, level, limits)?,
        (Operator::Tk, false) => t_k_polytope(p, level, limits)?,
        (Operator::Tk, true) => t_k_polytope_explicit(p, level, limits)?,
    };
    let key = if op == Operator::Sa { "t" } else { "k" };
    let mut params = BTreeMap::new();
    params.insert(key.to_string(), json!(level));
    params.insert("explicit".to_string(), json!(explicit));
    Ok(OperatorResult { polytope, provenance: Provenance { operator: op, params } })
}

fn require_explicit<S: Scalar>(p: &Polytope<S>) -> Result<()> {
    if p.is_explicit() {
        Ok(())
    } else {
        Err(Error::Lifted)
    }
}

fn guard<S: Scalar>(p: Polytope<S>, limits: &Limits) -> Result<Polytope<S>> {
    if p.total_dim() > limits.max_lifted_vars {
        return Err(Error::Budget(format!("lifted system with {} variables", p.total_dim())));
    }
    Ok(p)
}

/// Sherali-Adams lift at level `t`.
#[derive(Clone, Debug)]
pub struct SaLift<S> {
    pub t: usize,
    /// Subset indexing each lifted variable, singletons `{0}, …, {n−1}` first.
    pub subsets: Vec<Vec<usize>>,
    pub constraints: Vec<LinearConstraint<S>>,
    n: usize,
}

impl<S: Scalar> SaLift<S> {
    pub fn var_count(&self) -> usize {
        self.subsets.len()
    }

    /// `SA^t(P)` as the projection onto the singleton variables.
    pub fn shadow(&self) -> Polytope<S> {
        Polytope::lifted(self.n, self.subsets.len() - self.n, self.constraints.clone(), true).expect("consistent lift")
    }
}

fn mask_of(set: &[usize]) -> u64 {
    set.iter().fold(0, |m, &i| m | 1 << i)
}

/// Linearizes `Π_{i∈I} x_i Π_{j∈J} (1 − x_j) (a·x − β) ≥ 0` for every row of
/// `P` (box rows included) and disjoint `I, J` with `|I| + |J| ≤ t`, using
/// `x_i² = x_i` and `y_S` for `Π_{i∈S} x_i`.
pub fn sa_lift<S: Scalar>(p: &Polytope<S>, t: usize) -> Result<SaLift<S>> {
    require_explicit(p)?;
    if t == 0 {
        return Err(Error::Param("SA level must be at least 1".into()));
    }
    let n = p.n;
    if n > 63 {
        return Err(Error::Param(format!("SA lift in dimension {n}")));
    }
    let top = (t + 1).min(n);
    let subsets: Vec<Vec<usize>> = (1..=top).flat_map(|s| (0..n).combinations(s)).collect();
    let index: HashMap<u64, usize> = subsets.iter().enumerate().map(|(i, s)| (mask_of(s), i)).collect();
    let dim = subsets.len();

    let mut sources = Vec::new();
    for c in p.system() {
        sources.extend(c.as_ge_rows());
    }
    let mut constraints = Vec::new();
    let mut seen = HashSet::new();
    for u in (0..=t.min(n)).flat_map(|s| (0..n).combinations(s)) {
        for split in 0u64..(1 << u.len()) {
            let i_mask = u.iter().enumerate().filter(|(b, _)| split >> b & 1 == 1).fold(0u64, |m, (_, &v)| m | 1 << v);
            let j: Vec<usize> = u.iter().enumerate().filter(|(b, _)| split >> b & 1 == 0).map(|(_, &v)| v).collect();
            for (a, beta) in &sources {
                let mut coeffs = vec![S::zero(); dim];
                let mut constant = S::zero();
                for sub in 0u64..(1 << j.len()) {
                    let base = j.iter().enumerate().filter(|(b, _)| sub >> b & 1 == 1).fold(i_mask, |m, (_, &v)| m | 1 << v);
                    let negative = sub.count_ones() % 2 == 1;
                    for (k, ak) in a.iter().enumerate() {
                        if ak.is_zero() {
                            continue;
                        }
                        let idx = index[&(base | 1 << k)];
                        if negative {
                            coeffs[idx] -= ak;
                        } else {
                            coeffs[idx] += ak;
                        }
                    }
                    let term = if negative { beta.clone() } else { -beta.clone() };
                    if base == 0 {
                        constant += term;
                    } else {
                        coeffs[index[&base]] += term;
                    }
                }
                let mut row = coeffs;
                row.push(-constant);
                if row[..dim].iter().all(|c| c.is_zero()) && !row[dim].is_pos() {
                    continue;
                }
                S::normalize_row(&mut row);
                if !seen.insert(row.iter().map(|v| v.to_text()).collect::<Vec<_>>()) {
                    continue;
                }
                let rhs = row.pop().expect("rhs entry");
                constraints.push(LinearConstraint::ge(Vector(row), rhs));
            }
        }
    }
    Ok(SaLift { t, subsets, constraints, n })
}

/// `x ∈ SA^t(P)`, by an LP over the non-singleton variables.
pub fn sa_member<S: Scalar>(p: &Polytope<S>, t: usize, x: &[S]) -> Result<bool> {
    sa_lift(p, t)?.shadow().is_member(x)
}

/// `conv(∪ parts)` from the vertices of the parts. Parts must be explicit.
pub fn union_hull<S: Scalar>(parts: &[Polytope<S>], limits: &Limits) -> Result<Polytope<S>> {
    let n = parts.first().ok_or(Error::EmptyInput("union of no polytopes"))?.n;
    let mut points = Vec::new();
    for part in parts {
        points.extend(part.vertices(limits)?.points);
    }
    let mut out = VPointSet::new(n, points)?.hull(limits)?;
    out.boxed = parts.iter().all(|p| p.boxed);
    Ok(out)
}

/// Intersection of explicit polytopes with repeated rows dropped.
pub fn intersect_explicit<S: Scalar>(parts: &[Polytope<S>]) -> Result<Polytope<S>> {
    let first = parts.first().ok_or(Error::EmptyInput("intersection of no polytopes"))?;
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for p in parts {
        require_explicit(p)?;
        if p.n != first.n {
            return Err(Error::Dimension { expected: first.n, found: p.n });
        }
        for c in &p.constraints {
            if seen.insert((c.sense, c.coeffs.to_text(), c.rhs.to_text())) {
                rows.push(c.clone());
            }
        }
    }
    Polytope::new(first.n, rows, parts.iter().any(|p| p.boxed))
}

fn faces<S: Scalar>(p: &Polytope<S>, vars: &[usize]) -> Vec<Polytope<S>> {
    (0u64..(1 << vars.len()))
        .map(|pattern| {
            let fix: Vec<(usize, bool)> = vars.iter().enumerate().map(|(b, &v)| (v, pattern >> b & 1 == 1)).collect();
            p.fix_all(&fix)
        })
        .collect()
}

/// `L(P) = ∩_i conv((P ∩ {x_i = 0}) ∪ (P ∩ {x_i = 1}))` as a lifted system.
pub fn l_step<S: Scalar>(p: &Polytope<S>) -> Result<Polytope<S>> {
    bk_lifted(p, 1)
}

/// `L^k(P)` as nested lifted systems; `L⁰(P) = P`.
pub fn l_iterate<S: Scalar>(p: &Polytope<S>, k: usize, limits: &Limits) -> Result<Polytope<S>> {
    let mut cur = p.clone();
    for _ in 0..k {
        let aux = p.n * 2 * (p.n + cur.aux + 1);
        if p.n + aux > limits.max_lifted_vars {
            return Err(Error::Budget(format!("L iterate with {} variables", p.n + aux)));
        }
        cur = l_step(&cur)?;
    }
    Ok(cur)
}

/// `L(P)` through vertices of the fixing faces.
pub fn l_step_explicit<S: Scalar>(p: &Polytope<S>, limits: &Limits) -> Result<Polytope<S>> {
    b_k_polytope_explicit(p, 1, limits)
}

pub fn l_iterate_explicit<S: Scalar>(p: &Polytope<S>, k: usize, limits: &Limits) -> Result<Polytope<S>> {
    require_explicit(p)?;
    let mut cur = p.clone();
    for _ in 0..k {
        cur = l_step_explicit(&cur, limits)?;
    }
    Ok(cur)
}

/// A variable split proving `L^k(P) ⊆ P_I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitCertificate {
    pub var: usize,
    /// The side `a` with `L^{k−1}(P) ∩ {x_var = a}` empty.
    pub empty_side: bool,
}

/// Looks for `j` and `a` with `L^{k−1}(P) ∩ {x_j = a} = ∅` and
/// `L^{k−1}(P) ∩ {x_j = 1 − a} ⊆ P_I`. Since `L^k(P)` lies in the hull of
/// the two faces, either suffices for `L^k(P) ⊆ P_I`. Hull facets valid for
/// `P` are skipped. Variables are tried from the last one down.
pub fn l_split_certificate<S: Scalar>(
    p: &Polytope<S>,
    k: usize,
    hull: &IntegerHull<S>,
    limits: &Limits,
) -> Result<Option<SplitCertificate>> {
    if k == 0 {
        return Err(Error::Param("a split certificate needs k ≥ 1".into()));
    }
    let mut rows = Vec::new();
    for row in hull.facets()? {
        if violation(p, std::slice::from_ref(row))?.is_some() {
            rows.push(row.clone());
        }
    }
    let inner = l_iterate(p, k - 1, limits)?;
    for j in (0..p.n).rev() {
        for side in [true, false] {
            if inner.fix(j, side).is_empty() && violation(&inner.fix(j, !side), &rows)?.is_none() {
                return Ok(Some(SplitCertificate { var: j, empty_side: side }));
            }
        }
    }
    Ok(None)
}

fn check_vars(n: usize, vars: &[usize]) -> Result<()> {
    let mut seen = HashSet::new();
    if vars.iter().any(|&v| v >= n || !seen.insert(v)) {
        return Err(Error::Param("variable indices must be distinct and in range".into()));
    }
    if vars.len() > 16 {
        return Err(Error::Budget(format!("{} fixing patterns", 1u64 << vars.len().min(63))));
    }
    Ok(())
}

/// `P_{vars} = conv({x ∈ P : x_j ∈ {0,1} ∀ j ∈ vars})` as a lifted system.
pub fn bcc_subset_hull<S: Scalar>(p: &Polytope<S>, vars: &[usize]) -> Result<Polytope<S>> {
    check_vars(p.n, vars)?;
    Polytope::balas_union(&faces(p, vars))
}

pub fn bcc_subset_hull_explicit<S: Scalar>(p: &Polytope<S>, vars: &[usize], limits: &Limits) -> Result<Polytope<S>> {
    check_vars(p.n, vars)?;
    require_explicit(p)?;
    union_hull(&faces(p, vars), limits)
}

fn subsets_checked(n: usize, k: usize, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    if k == 0 || k > n {
        return Err(Error::Param(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    let count = (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128);
    if count > limits.max_subsets as u128 {
        return Err(Error::Budget(format!("{count} variable subsets")));
    }
    Ok((0..n).combinations(k).collect())
}

fn bk_lifted<S: Scalar>(p: &Polytope<S>, k: usize) -> Result<Polytope<S>> {
    let parts = subsets_checked(p.n, k, &Limits::default())?
        .iter()
        .map(|vars| bcc_subset_hull(p, vars))
        .collect::<Result<Vec<_>>>()?;
    Polytope::intersect(&parts)
}

/// `B^k(P) = ∩_{|I| = k} P_I` as a lifted system.
pub fn b_k_polytope<S: Scalar>(p: &Polytope<S>, k: usize, limits: &Limits) -> Result<Polytope<S>> {
    subsets_checked(p.n, k, limits)?;
    guard(bk_lifted(p, k)?, limits)
}

pub fn b_k_polytope_explicit<S: Scalar>(p: &Polytope<S>, k: usize, limits: &Limits) -> Result<Polytope<S>> {
    require_explicit(p)?;
    let parts = subsets_checked(p.n, k, limits)?
        .par_iter()
        .map(|vars| bcc_subset_hull_explicit(p, vars, limits))
        .collect::<Result<Vec<_>>>()?;
    intersect_explicit(&parts)
}

/// `x ∈ B^k(P)`: `x` lies in every subset hull.
pub fn b_k_member<S: Scalar>(p: &Polytope<S>, k: usize, x: &[S], limits: &Limits) -> Result<bool> {
    for vars in subsets_checked(p.n, k, limits)? {
        if !bcc_subset_hull(p, &vars)?.is_member(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Canonical trees of height at most `k`, capped by `limits.max_subsets`.
pub fn height_k_trees(n: usize, k: usize, limits: &Limits) -> Result<Vec<BBTree>> {
    enumerate_trees(n, k, usize::MAX, limits.max_subsets)
}

/// `T^k(P)`: the intersection of all tree relaxations of height at most `k`,
/// each with its LP-empty leaves dropped.
pub fn t_k_polytope<S: Scalar>(p: &Polytope<S>, k: usize, limits: &Limits) -> Result<Polytope<S>> {
    let parts = height_k_trees(p.n, k, limits)?
        .iter()
        .map(|t| t.relaxation_pruned(p))
        .collect::<Result<Vec<_>>>()?;
    guard(Polytope::intersect(&parts)?, limits)
}

pub fn t_k_polytope_explicit<S: Scalar>(p: &Polytope<S>, k: usize, limits: &Limits) -> Result<Polytope<S>> {
    require_explicit(p)?;
    let parts = height_k_trees(p.n, k, limits)?
        .par_iter()
        .map(|t| tree_relaxation_explicit(t, p, limits))
        .collect::<Result<Vec<_>>>()?;
    intersect_explicit(&parts)
}

/// `conv(∪ leaf atoms)` through atom vertices.
pub fn tree_relaxation_explicit<S: Scalar>(t: &BBTree, p: &Polytope<S>, limits: &Limits) -> Result<Polytope<S>> {
    require_explicit(p)?;
    if t.n() != p.n {
        return Err(Error::Dimension { expected: t.n(), found: p.n });
    }
    union_hull(&t.leaf_atoms(p), limits)
}

#[cfg(test)]
mod tests;
