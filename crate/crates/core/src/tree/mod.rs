//! Branch-and-bound trees over variable disjunctions and their relaxations.
//!
//! A node `v` carries the branching constraints `C_v` fixed on its root path.
//! The atom of `v` is `P ∩ {x : C_v}`, and the relaxation of a tree is the
//! convex hull of its leaf atoms, built as a disjunctive extended formulation.

mod build;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use build::{enumerate_trees, greedy_integral_tree, nogood_tree, skewed_k_tree};

use crate::error::{Error, Result};
use crate::polytope::Polytope;
use crate::scalar::Scalar;

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    /// Variable branched on (0-based), `None` at a leaf.
    pub branch: Option<usize>,
    pub zero: Option<NodeId>,
    pub one: Option<NodeId>,
    /// Parent and the value fixed on the edge from it.
    pub parent: Option<(NodeId, bool)>,
}

/// Arena-backed binary tree; node 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BBTree {
    n: usize,
    nodes: Vec<Node>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeLabels {
    /// `C_v` as `(variable, bit)` pairs from the root down.
    pub fixings: Vec<(usize, bool)>,
    pub j0: BTreeSet<usize>,
    pub j1: BTreeSet<usize>,
    pub height: usize,
}

/// Nested tree form used for JSON: `"leaf"` or a branch record with
/// 1-based variable index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TreeShape {
    Branch { branch: usize, zero: Box<TreeShape>, one: Box<TreeShape> },
    Leaf(LeafTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeafTag {
    Leaf,
}

impl TreeShape {
    pub fn leaf() -> Self {
        TreeShape::Leaf(LeafTag::Leaf)
    }

    pub fn branch(var: usize, zero: TreeShape, one: TreeShape) -> Self {
        TreeShape::Branch { branch: var + 1, zero: Box::new(zero), one: Box::new(one) }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            TreeShape::Leaf(_) => 1,
            TreeShape::Branch { zero, one, .. } => zero.leaf_count() + one.leaf_count(),
        }
    }
}

/// Sizes of a tree relaxation's extended formulation next to the bounds
/// `aux ≤ |T|(n+1)` and `rows ≤ |T|·m + (n+1)`, where `m` is the row count of
/// `P` plus `n` fixings plus one multiplier sign row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SizeReport {
    pub tree_size: usize,
    pub leaves: usize,
    pub aux_vars: usize,
    pub rows: usize,
    pub aux_bound: usize,
    pub row_bound: usize,
}

impl SizeReport {
    pub fn within_bounds(&self) -> bool {
        self.aux_vars <= self.aux_bound && self.rows <= self.row_bound
    }
}

impl BBTree {
    /// The single-node tree.
    pub fn trivial(n: usize) -> Self {
        BBTree { n, nodes: vec![Node { branch: None, zero: None, one: None, parent: None }] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn node(&self, v: NodeId) -> &Node {
        &self.nodes[v]
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.nodes[v].branch.is_none()
    }

    /// Splits leaf `v` on `var`, returning the `(zero, one)` children.
    pub fn branch(&mut self, v: NodeId, var: usize) -> Result<(NodeId, NodeId)> {
        if var >= self.n {
            return Err(Error::Param(format!("variable {} outside 1..={}", var + 1, self.n)));
        }
        if !self.is_leaf(v) {
            return Err(Error::Precondition(format!("node {v} is already branched")));
        }
        let z = self.nodes.len();
        self.nodes.push(Node { branch: None, zero: None, one: None, parent: Some((v, false)) });
        self.nodes.push(Node { branch: None, zero: None, one: None, parent: Some((v, true)) });
        let node = &mut self.nodes[v];
        node.branch = Some(var);
        node.zero = Some(z);
        node.one = Some(z + 1);
        Ok((z, z + 1))
    }

    /// Leaves in depth-first order, zero side first.
    pub fn leaves(&self) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![self.root()];
        while let Some(v) = stack.pop() {
            match (self.nodes[v].zero, self.nodes[v].one) {
                (Some(z), Some(o)) => {
                    stack.push(o);
                    stack.push(z);
                }
                _ => out.push(v),
            }
        }
        out
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.branch.is_none()).count()
    }

    /// `C_v` from the root down.
    pub fn fixings(&self, v: NodeId) -> Vec<(usize, bool)> {
        let mut out = Vec::new();
        let mut cur = v;
        while let Some((p, bit)) = self.nodes[cur].parent {
            out.push((self.nodes[p].branch.expect("parent branches"), bit));
            cur = p;
        }
        out.reverse();
        out
    }

    pub fn labels(&self, v: NodeId) -> NodeLabels {
        let fixings = self.fixings(v);
        let j0 = fixings.iter().filter(|f| !f.1).map(|f| f.0).collect();
        let j1 = fixings.iter().filter(|f| f.1).map(|f| f.0).collect();
        NodeLabels { height: fixings.len(), fixings, j0, j1 }
    }

    pub fn height(&self) -> usize {
        self.leaves().into_iter().map(|v| self.fixings(v).len()).max().unwrap_or(0)
    }

    /// No variable is branched twice on a root path.
    pub fn is_canonical(&self) -> bool {
        (0..self.size()).all(|v| {
            let Some(var) = self.nodes[v].branch else { return true };
            self.fixings(v).iter().all(|f| f.0 != var)
        })
    }

    /// Structural checks: binary nodes and `size = 2·leaves − 1`.
    pub fn validate(&self) -> Result<()> {
        for (v, node) in self.nodes.iter().enumerate() {
            let ok = match (node.branch, node.zero, node.one) {
                (None, None, None) => true,
                (Some(_), Some(z), Some(o)) => {
                    self.nodes[z].parent == Some((v, false)) && self.nodes[o].parent == Some((v, true))
                }
                _ => false,
            };
            if !ok {
                return Err(Error::Precondition(format!("node {v} is malformed")));
            }
        }
        if self.size() != 2 * self.leaf_count() - 1 {
            return Err(Error::Precondition("size differs from 2·leaves − 1".into()));
        }
        Ok(())
    }

    pub fn atom<S: Scalar>(&self, p: &Polytope<S>, v: NodeId) -> Polytope<S> {
        p.fix_all(&self.fixings(v))
    }

    pub fn leaf_atoms<S: Scalar>(&self, p: &Polytope<S>) -> Vec<Polytope<S>> {
        self.leaves().into_iter().map(|v| self.atom(p, v)).collect()
    }

    /// `conv(∪ leaf atoms)` as a lifted polytope.
    pub fn relaxation<S: Scalar>(&self, p: &Polytope<S>) -> Result<Polytope<S>> {
        self.check_dim(p)?;
        Polytope::balas_union(&self.leaf_atoms(p))
    }

    /// Like [`relaxation`](Self::relaxation) with LP-empty atoms left out,
    /// which describes the same set with fewer variables.
    pub fn relaxation_pruned<S: Scalar>(&self, p: &Polytope<S>) -> Result<Polytope<S>> {
        self.check_dim(p)?;
        let atoms: Vec<Polytope<S>> = self.leaf_atoms(p).into_iter().filter(|a| !a.is_empty()).collect();
        if atoms.is_empty() {
            return Ok(Polytope::empty(p.n));
        }
        Polytope::balas_union(&atoms)
    }

    /// Whether `x` lies outside the tree relaxation.
    pub fn separates<S: Scalar>(&self, p: &Polytope<S>, x: &[S]) -> Result<bool> {
        Ok(!self.relaxation_pruned(p)?.is_member(x)?)
    }

    pub fn size_report<S: Scalar>(&self, p: &Polytope<S>) -> Result<SizeReport> {
        let r = self.relaxation(p)?;
        let n = p.n;
        let m = p.row_count() + n + 1;
        Ok(SizeReport {
            tree_size: self.size(),
            leaves: self.leaf_count(),
            aux_vars: r.aux,
            rows: r.row_count(),
            aux_bound: self.size() * (n + p.aux + 1),
            row_bound: self.size() * m + n + 1,
        })
    }

    fn check_dim<S: Scalar>(&self, p: &Polytope<S>) -> Result<()> {
        if p.n != self.n {
            return Err(Error::Dimension { expected: self.n, found: p.n });
        }
        Ok(())
    }

    pub fn to_shape(&self) -> TreeShape {
        fn go(t: &BBTree, v: NodeId) -> TreeShape {
            let node = &t.nodes[v];
            match (node.branch, node.zero, node.one) {
                (Some(var), Some(z), Some(o)) => TreeShape::branch(var, go(t, z), go(t, o)),
                _ => TreeShape::leaf(),
            }
        }
        go(self, self.root())
    }

    pub fn from_shape(shape: &TreeShape, n: usize) -> Result<Self> {
        fn go(t: &mut BBTree, v: NodeId, s: &TreeShape) -> Result<()> {
            if let TreeShape::Branch { branch, zero, one } = s {
                if *branch == 0 {
                    return Err(Error::Parse("variable indices are 1-based".into()));
                }
                let (z, o) = t.branch(v, branch - 1)?;
                go(t, z, zero)?;
                go(t, o, one)?;
            }
            Ok(())
        }
        let mut t = BBTree::trivial(n);
        go(&mut t, 0, shape)?;
        Ok(t)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_shape())?)
    }

    pub fn from_json(text: &str, n: usize) -> Result<Self> {
        let shape: TreeShape = serde_json::from_str(text)?;
        Self::from_shape(&shape, n)
    }

    /// Graphviz form: internal nodes labelled `x_j`, edges labelled by the fixed value.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph bbtree {\n");
        for (v, node) in self.nodes.iter().enumerate() {
            let label = match node.branch {
                Some(var) => format!("x_{}", var + 1),
                None => "leaf".to_string(),
            };
            let shape = if node.branch.is_some() { "ellipse" } else { "box" };
            let _ = writeln!(out, "  n{v} [label=\"{label}\", shape={shape}];");
        }
        for (v, node) in self.nodes.iter().enumerate() {
            if let (Some(z), Some(o)) = (node.zero, node.one) {
                let _ = writeln!(out, "  n{v} -> n{z} [label=\"0\"];");
                let _ = writeln!(out, "  n{v} -> n{o} [label=\"1\"];");
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests;
