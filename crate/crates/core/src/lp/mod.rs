//! Exact linear programming over free variables.
//!
//! Problems are solved through their dual: for `min c·x s.t. A x ≥ b` the
//! solver runs the simplex method on `max b·y s.t. Aᵀy = c, y ≥ 0`, whose
//! basis has one row per primal variable. Relaxation systems in this crate
//! have far more rows than variables, which keeps the basis small. The primal
//! optimum is read off the simplex multipliers and is a basic solution.

mod simplex;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::Scalar;
use simplex::{SimplexOutcome, StandardForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Ge => ">=",
            Sense::Le => "<=",
            Sense::Eq => "=",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            ">=" => Some(Sense::Ge),
            "<=" => Some(Sense::Le),
            "=" => Some(Sense::Eq),
            _ => None,
        }
    }
}

/// `coeffs · x  (sense)  rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearConstraint<S> {
    pub coeffs: Vector<S>,
    pub sense: Sense,
    pub rhs: S,
}

impl<S: Scalar> LinearConstraint<S> {
    pub fn new(coeffs: Vector<S>, sense: Sense, rhs: S) -> Self {
        LinearConstraint { coeffs, sense, rhs }
    }

    pub fn ge(coeffs: Vector<S>, rhs: S) -> Self {
        Self::new(coeffs, Sense::Ge, rhs)
    }

    pub fn le(coeffs: Vector<S>, rhs: S) -> Self {
        Self::new(coeffs, Sense::Le, rhs)
    }

    pub fn eq(coeffs: Vector<S>, rhs: S) -> Self {
        Self::new(coeffs, Sense::Eq, rhs)
    }

    /// `x_var (sense) rhs` in dimension `dim`.
    pub fn bound(dim: usize, var: usize, sense: Sense, rhs: S) -> Self {
        Self::new(Vector::unit(dim, var), sense, rhs)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    pub fn slack(&self, x: &[S]) -> S {
        self.coeffs.dot(x) - self.rhs.clone()
    }

    pub fn is_satisfied_by(&self, x: &[S]) -> bool {
        let s = self.slack(x);
        match self.sense {
            Sense::Ge => !s.is_neg(),
            Sense::Le => !s.is_pos(),
            Sense::Eq => s.is_negligible(),
        }
    }

    pub fn is_tight_at(&self, x: &[S]) -> bool {
        self.slack(x).is_negligible()
    }

    /// The constraint as one or two `≥` rows.
    pub fn as_ge_rows(&self) -> Vec<(Vector<S>, S)> {
        let neg = || (Vector(self.coeffs.iter().map(|c| -c.clone()).collect()), -self.rhs.clone());
        match self.sense {
            Sense::Ge => vec![(self.coeffs.clone(), self.rhs.clone())],
            Sense::Le => vec![neg()],
            Sense::Eq => vec![(self.coeffs.clone(), self.rhs.clone()), neg()],
        }
    }

    /// Pads the coefficient vector with zeros up to `dim`.
    pub fn widened(&self, dim: usize) -> Self {
        let mut coeffs = self.coeffs.0.clone();
        coeffs.resize(dim, S::zero());
        Self::new(Vector(coeffs), self.sense, self.rhs.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Max,
    Min,
}

#[derive(Clone, Debug)]
pub struct LpProblem<S> {
    pub var_count: usize,
    pub constraints: Vec<LinearConstraint<S>>,
    pub objective: Vector<S>,
    pub direction: Direction,
}

impl<S: Scalar> LpProblem<S> {
    pub fn new(
        var_count: usize,
        constraints: Vec<LinearConstraint<S>>,
        objective: Vector<S>,
        direction: Direction,
    ) -> Result<Self> {
        if objective.dim() != var_count {
            return Err(Error::Dimension { expected: var_count, found: objective.dim() });
        }
        if let Some(bad) = constraints.iter().find(|c| c.dim() != var_count) {
            return Err(Error::Dimension { expected: var_count, found: bad.dim() });
        }
        Ok(LpProblem { var_count, constraints, objective, direction })
    }

    pub fn maximize(var_count: usize, constraints: Vec<LinearConstraint<S>>, objective: Vector<S>) -> Result<Self> {
        Self::new(var_count, constraints, objective, Direction::Max)
    }

    pub fn minimize(var_count: usize, constraints: Vec<LinearConstraint<S>>, objective: Vector<S>) -> Result<Self> {
        Self::new(var_count, constraints, objective, Direction::Min)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Result of [`lp_solve`].
///
/// The certificate is a vector `y` indexed like the problem's constraints,
/// with `y_k ≥ 0` on `≥` rows, `y_k ≤ 0` on `≤` rows and free on `=` rows:
///
/// * `Infeasible`: `Σ y_k a_k = 0` and `Σ y_k b_k > 0` (Farkas).
/// * `Optimal`: `Σ y_k a_k = c̃` and `Σ y_k b_k = c̃·x*`, where `c̃` is the
///   objective for minimisation and its negation for maximisation.
/// * `Unbounded`: a recession direction `d` (indexed by variables) with
///   `a_k·d` of the constraint's sign and an improving objective; `point`
///   holds a feasible point.
#[derive(Clone, Debug)]
pub struct LpOutcome<S> {
    pub status: LpStatus,
    pub point: Option<Vector<S>>,
    pub value: Option<S>,
    pub certificate: Option<Vector<S>>,
}

impl<S: Scalar> LpOutcome<S> {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    pub fn is_infeasible(&self) -> bool {
        self.status == LpStatus::Infeasible
    }
}

/// Rows of the dual standard form, deduplicated.
struct GeSystem<S> {
    /// Sparse `≥` rows: `(entries, rhs, origin constraint, sign)`.
    rows: Vec<(Vec<(usize, S)>, S, usize, i8)>,
}

fn cmp_sparse<S: Scalar>(a: &[(usize, S)], b: &[(usize, S)]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = x.0.cmp(&y.0).then_with(|| x.1.partial_cmp(&y.1).unwrap_or(Ordering::Equal));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

impl<S: Scalar> GeSystem<S> {
    fn build(constraints: &[LinearConstraint<S>]) -> Self {
        let mut rows = Vec::new();
        for (k, c) in constraints.iter().enumerate() {
            let sparse: Vec<(usize, S)> = c
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect();
            let negated = || sparse.iter().map(|(i, v)| (*i, -v.clone())).collect::<Vec<_>>();
            match c.sense {
                Sense::Ge => rows.push((sparse.clone(), c.rhs.clone(), k, 1)),
                Sense::Le => rows.push((negated(), -c.rhs.clone(), k, -1)),
                Sense::Eq => {
                    rows.push((sparse.clone(), c.rhs.clone(), k, 1));
                    rows.push((negated(), -c.rhs.clone(), k, -1));
                }
            }
        }
        // Exact duplicates are dropped; the first occurrence keeps its index.
        let mut order: Vec<usize> = (0..rows.len()).collect();
        order.sort_by(|&i, &j| {
            cmp_sparse(&rows[i].0, &rows[j].0)
                .then_with(|| rows[i].1.partial_cmp(&rows[j].1).unwrap_or(Ordering::Equal))
                .then(i.cmp(&j))
        });
        let mut keep = vec![true; rows.len()];
        for w in order.windows(2) {
            let (a, b) = (&rows[w[0]], &rows[w[1]]);
            if cmp_sparse(&a.0, &b.0) == Ordering::Equal && a.1.cmp_to(&b.1) == Ordering::Equal {
                keep[w[1]] = false;
            }
        }
        let rows = rows.into_iter().zip(keep).filter(|(_, k)| *k).map(|(r, _)| r).collect();
        GeSystem { rows }
    }

    fn standard_form(&self, var_count: usize, rhs: Vec<S>) -> StandardForm<S> {
        StandardForm {
            rows: var_count,
            cols: self.rows.iter().map(|r| r.0.clone()).collect(),
            cost: self.rows.iter().map(|r| r.1.clone()).collect(),
            rhs,
        }
    }

    /// Folds per-row multipliers back onto the original constraints.
    fn certificate(&self, constraint_count: usize, y: &[(usize, S)]) -> Vector<S> {
        let mut out = Vector::zeros(constraint_count);
        for (j, v) in y {
            let (_, _, k, sign) = &self.rows[*j];
            if *sign > 0 {
                out[*k] += v;
            } else {
                out[*k] -= v;
            }
        }
        out
    }
}

enum Feasibility<S> {
    Feasible(Vector<S>),
    Infeasible(Vector<S>),
}

fn feasibility<S: Scalar>(sys: &GeSystem<S>, var_count: usize, constraint_count: usize) -> Feasibility<S> {
    let sf = sys.standard_form(var_count, vec![S::zero(); var_count]);
    match simplex::solve(&sf) {
        SimplexOutcome::Optimal { duals, .. } => Feasibility::Feasible(Vector(duals)),
        SimplexOutcome::Unbounded { direction } => {
            Feasibility::Infeasible(sys.certificate(constraint_count, &direction))
        }
        SimplexOutcome::Infeasible { .. } => unreachable!("zero right-hand side is always feasible"),
    }
}

/// Solves `p` exactly. Deterministic for a fixed input.
pub fn lp_solve<S: Scalar>(p: &LpProblem<S>) -> LpOutcome<S> {
    let n = p.var_count;
    let sys = GeSystem::build(&p.constraints);
    let min_cost: Vec<S> = match p.direction {
        Direction::Min => p.objective.0.clone(),
        Direction::Max => p.objective.iter().map(|c| -c.clone()).collect(),
    };
    let sf = sys.standard_form(n, min_cost);
    match simplex::solve(&sf) {
        SimplexOutcome::Optimal { solution, duals, .. } => {
            let point = Vector(duals);
            let value = p.objective.dot(&point);
            LpOutcome {
                status: LpStatus::Optimal,
                point: Some(point),
                value: Some(value),
                certificate: Some(sys.certificate(p.constraints.len(), &solution)),
            }
        }
        SimplexOutcome::Unbounded { direction } => LpOutcome {
            status: LpStatus::Infeasible,
            point: None,
            value: None,
            certificate: Some(sys.certificate(p.constraints.len(), &direction)),
        },
        SimplexOutcome::Infeasible { duals } => match feasibility(&sys, n, p.constraints.len()) {
            Feasibility::Feasible(point) => LpOutcome {
                status: LpStatus::Unbounded,
                point: Some(point),
                value: None,
                certificate: Some(Vector(duals)),
            },
            Feasibility::Infeasible(cert) => {
                LpOutcome { status: LpStatus::Infeasible, point: None, value: None, certificate: Some(cert) }
            }
        },
    }
}

/// A point satisfying every constraint, or `Err` with a Farkas certificate.
pub fn lp_feasibility<S: Scalar>(
    constraints: &[LinearConstraint<S>],
    var_count: usize,
) -> std::result::Result<Vector<S>, Vector<S>> {
    let sys = GeSystem::build(constraints);
    match feasibility(&sys, var_count, constraints.len()) {
        Feasibility::Feasible(x) => Ok(x),
        Feasibility::Infeasible(c) => Err(c),
    }
}

pub fn lp_feasible_point<S: Scalar>(constraints: &[LinearConstraint<S>], var_count: usize) -> Option<Vector<S>> {
    lp_feasibility(constraints, var_count).ok()
}

/// Checks a Farkas certificate in the sign convention of [`LpOutcome`].
pub fn verify_farkas<S: Scalar>(constraints: &[LinearConstraint<S>], var_count: usize, y: &[S]) -> bool {
    if y.len() != constraints.len() {
        return false;
    }
    let mut combo = Vector::<S>::zeros(var_count);
    let mut rhs = S::zero();
    for (c, m) in constraints.iter().zip(y) {
        let sign_ok = match c.sense {
            Sense::Ge => !m.is_neg(),
            Sense::Le => !m.is_pos(),
            Sense::Eq => true,
        };
        if !sign_ok {
            return false;
        }
        if m.is_zero() {
            continue;
        }
        combo = combo.add(&c.coeffs.scale(m));
        let mut t = c.rhs.clone();
        t *= m;
        rhs += &t;
    }
    combo.is_zero_vector() && rhs.is_pos()
}

#[cfg(test)]
mod tests;
