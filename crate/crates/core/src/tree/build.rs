//! Tree builders and bounded enumeration.

use super::{BBTree, NodeId, TreeShape};
use crate::error::{Error, Result};
use crate::polytope::{Limits, Polytope};
use crate::scalar::Scalar;

/// The skewed `k`-tree for the variable order `perm`: for each variable in
/// turn, every leaf with fewer than `k` ones fixed is branched on it.
pub fn skewed_k_tree(n: usize, k: usize, perm: &[usize]) -> Result<BBTree> {
    if k == 0 || k > n {
        return Err(Error::Param(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
        return Err(Error::Param("not a permutation of the variables".into()));
    }
    let mut t = BBTree::trivial(n);
    let mut leaves: Vec<(NodeId, usize)> = vec![(t.root(), 0)];
    for &var in perm {
        let mut next = Vec::with_capacity(leaves.len() * 2);
        for (v, ones) in leaves {
            if ones < k {
                let (z, o) = t.branch(v, var)?;
                next.push((z, ones));
                next.push((o, ones + 1));
            } else {
                next.push((v, ones));
            }
        }
        leaves = next;
    }
    Ok(t)
}

/// Branches variables in index order, following only the prefixes of points
/// in `s`, so that each `s` ends in its own fully fixed leaf.
pub fn nogood_tree(n: usize, s: &[Vec<bool>]) -> Result<BBTree> {
    if s.is_empty() {
        return Err(Error::EmptyInput("no-good tree needs at least one point"));
    }
    if let Some(p) = s.iter().find(|p| p.len() != n) {
        return Err(Error::Dimension { expected: n, found: p.len() });
    }
    let mut t = BBTree::trivial(n);
    let mut frontier: Vec<(NodeId, Vec<&Vec<bool>>)> = vec![(t.root(), s.iter().collect())];
    for var in 0..n {
        let mut next = Vec::new();
        for (v, points) in frontier {
            let (z, o) = t.branch(v, var)?;
            let (ones, zeros): (Vec<&Vec<bool>>, Vec<&Vec<bool>>) = points.into_iter().partition(|p| p[var]);
            if !zeros.is_empty() {
                next.push((z, zeros));
            }
            if !ones.is_empty() {
                next.push((o, ones));
            }
        }
        frontier = next;
    }
    Ok(t)
}

/// Lowest-index variable that is fractional at some vertex of the atom.
fn fractional_var<S: Scalar>(atom: &Polytope<S>, limits: &Limits) -> Result<Option<usize>> {
    let verts = atom.vertices(limits)?;
    Ok((0..atom.n).find(|&j| verts.points.iter().any(|v| !v[j].is_integral())))
}

/// Branches a node exactly when its atom is nonempty and not integral.
pub fn greedy_integral_tree<S: Scalar>(p: &Polytope<S>, max_size: usize, limits: &Limits) -> Result<BBTree> {
    if !p.is_explicit() {
        return Err(Error::Lifted);
    }
    let mut t = BBTree::trivial(p.n);
    let mut stack = vec![t.root()];
    while let Some(v) = stack.pop() {
        let atom = t.atom(p, v);
        let Some(var) = fractional_var(&atom, limits)? else {
            continue;
        };
        if t.size() + 2 > max_size {
            return Err(Error::Budget(format!("greedy tree exceeds {max_size} nodes")));
        }
        let (z, o) = t.branch(v, var)?;
        stack.push(o);
        stack.push(z);
    }
    Ok(t)
}

fn shapes(free: &[usize], height: usize, leaves: usize, budget: &mut usize) -> Result<Vec<TreeShape>> {
    let mut out = vec![TreeShape::leaf()];
    if height == 0 || leaves < 2 {
        return Ok(out);
    }
    for (i, &var) in free.iter().enumerate() {
        let mut rest = free.to_vec();
        rest.remove(i);
        let left = shapes(&rest, height - 1, leaves - 1, budget)?;
        for l in &left {
            let right = shapes(&rest, height - 1, leaves - l.leaf_count(), budget)?;
            for r in right {
                if *budget == 0 {
                    return Err(Error::Budget("tree enumeration budget exhausted".into()));
                }
                *budget -= 1;
                out.push(TreeShape::branch(var, l.clone(), r));
            }
        }
    }
    Ok(out)
}

/// Every canonical tree on `n` variables with height at most `max_height`
/// and at most `max_leaves` leaves, each exactly once.
pub fn enumerate_trees(n: usize, max_height: usize, max_leaves: usize, budget: usize) -> Result<Vec<BBTree>> {
    let free: Vec<usize> = (0..n).collect();
    let mut budget = budget;
    shapes(&free, max_height.min(n), max_leaves.max(1), &mut budget)?
        .iter()
        .map(|s| BBTree::from_shape(s, n))
        .collect()
}
