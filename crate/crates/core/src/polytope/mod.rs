//! Polytopes in `[0,1]^n`, explicit or given as the shadow of a lifted system.
//!
//! A [`Polytope`] has `n` original variables followed by `aux` auxiliary ones.
//! Its constraints range over all `n + aux` coordinates; the polytope proper
//! is the projection onto the first `n`.

mod compare;
mod hull;
mod project;
mod vertices;

pub use compare::{containment, dash_witness, equals_integer_hull, same_set, Containment, HullComparison};
pub(crate) use compare::violation;

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::lp::{lp_feasibility, lp_solve, Direction, LinearConstraint, LpOutcome, LpProblem, LpStatus, Sense};
use crate::scalar::Scalar;

/// Size caps for the enumeration-based routines.
#[derive(Clone, Debug)]
pub struct Limits {
    pub max_vertices: usize,
    /// Largest `n` for 0/1 enumeration.
    pub max_enum_dim: usize,
    /// Largest affine dimension handed to facet synthesis.
    pub max_facet_dim: usize,
    /// Cap on candidate subsets examined by vertex and facet enumeration.
    pub max_subsets: usize,
    /// Cap on intermediate rows during Fourier-Motzkin elimination.
    pub max_fm_rows: usize,
    /// Cap on `n + aux` for lifted operator results.
    pub max_lifted_vars: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_vertices: 100_000, max_enum_dim: 16, max_facet_dim: 7, max_subsets: 2_000_000, max_fm_rows: 4_000, max_lifted_vars: 20_000 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polytope<S> {
    pub n: usize,
    pub aux: usize,
    pub constraints: Vec<LinearConstraint<S>>,
    /// Adds `0 ≤ x_i ≤ 1` for every original variable.
    pub boxed: bool,
}

/// A finite point set of common dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct VPointSet<S> {
    pub dim: usize,
    pub points: Vec<Vector<S>>,
}

/// `conv(P ∩ {0,1}^n)` by its 0/1 vertices and, when synthesized, its facets.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegerHull<S> {
    pub vertices: VPointSet<S>,
    pub facets: Option<Vec<LinearConstraint<S>>>,
}

impl<S: Scalar> VPointSet<S> {
    pub fn new(dim: usize, points: Vec<Vector<S>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::Dimension { expected: dim, found: p.dim() });
        }
        Ok(VPointSet { dim, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &Vector<S>) -> bool {
        self.points.iter().any(|p| p.iter().zip(x.iter()).all(|(a, b)| a.cmp_to(b).is_eq()))
    }

    /// Drops repeated points and sorts lexicographically.
    pub fn canonical(mut self) -> Self {
        sort_points(&mut self.points);
        self.points.dedup_by(|a, b| a.iter().zip(b.iter()).all(|(x, y)| x.cmp_to(y).is_eq()));
        self
    }

    /// Synthesizes an H-description of `conv(points)`.
    pub fn hull(&self, limits: &Limits) -> Result<Polytope<S>> {
        let rows = hull::hull_constraints(self, limits)?;
        Polytope::new(self.dim, rows, false)
    }
}

pub(crate) fn sort_points<S: Scalar>(points: &mut [Vector<S>]) {
    points.sort_by(|a, b| {
        for (x, y) in a.iter().zip(b.iter()) {
            let o = x.cmp_to(y);
            if o.is_ne() {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    });
}

impl<S: Scalar> IntegerHull<S> {
    pub fn dim(&self) -> usize {
        self.vertices.dim
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn facets(&self) -> Result<&[LinearConstraint<S>]> {
        self.facets.as_deref().ok_or(Error::MissingFacets)
    }

    pub fn as_polytope(&self) -> Result<Polytope<S>> {
        Polytope::new(self.dim(), self.facets()?.to_vec(), false)
    }
}

fn check_dims<S: Scalar>(constraints: &[LinearConstraint<S>], dim: usize) -> Result<()> {
    match constraints.iter().find(|c| c.dim() != dim) {
        Some(c) => Err(Error::Dimension { expected: dim, found: c.dim() }),
        None => Ok(()),
    }
}

impl<S: Scalar> Polytope<S> {
    pub fn new(n: usize, constraints: Vec<LinearConstraint<S>>, boxed: bool) -> Result<Self> {
        Self::lifted(n, 0, constraints, boxed)
    }

    pub fn lifted(n: usize, aux: usize, constraints: Vec<LinearConstraint<S>>, boxed: bool) -> Result<Self> {
        check_dims(&constraints, n + aux)?;
        Ok(Polytope { n, aux, constraints, boxed })
    }

    pub fn unit_cube(n: usize) -> Self {
        Polytope { n, aux: 0, constraints: Vec::new(), boxed: true }
    }

    /// The empty polytope, written as the single row `0 ≥ 1`.
    pub fn empty(n: usize) -> Self {
        Polytope { n, aux: 0, constraints: vec![LinearConstraint::ge(Vector::zeros(n), S::one())], boxed: true }
    }

    pub fn total_dim(&self) -> usize {
        self.n + self.aux
    }

    pub fn is_explicit(&self) -> bool {
        self.aux == 0
    }

    /// Box rows over the full `n + aux` coordinates, empty unless `boxed`.
    pub fn box_rows(&self) -> Vec<LinearConstraint<S>> {
        if !self.boxed {
            return Vec::new();
        }
        let d = self.total_dim();
        (0..self.n)
            .flat_map(|i| {
                [
                    LinearConstraint::bound(d, i, Sense::Ge, S::zero()),
                    LinearConstraint::bound(d, i, Sense::Le, S::one()),
                ]
            })
            .collect()
    }

    /// All rows including box rows.
    pub fn system(&self) -> Vec<LinearConstraint<S>> {
        let mut rows = self.constraints.clone();
        rows.extend(self.box_rows());
        rows
    }

    pub fn row_count(&self) -> usize {
        self.constraints.len() + if self.boxed { 2 * self.n } else { 0 }
    }

    /// Adds a row stated over the original variables only.
    pub fn with_constraint(&self, c: LinearConstraint<S>) -> Result<Self> {
        if c.dim() != self.n {
            return Err(Error::Dimension { expected: self.n, found: c.dim() });
        }
        let mut out = self.clone();
        out.constraints.push(c.widened(self.total_dim()));
        Ok(out)
    }

    /// `P ∩ {x_j = bit}`.
    pub fn fix(&self, j: usize, bit: bool) -> Self {
        self.fix_all(&[(j, bit)])
    }

    pub fn fix_all(&self, fixings: &[(usize, bool)]) -> Self {
        let mut out = self.clone();
        let d = self.total_dim();
        for &(j, bit) in fixings {
            assert!(j < self.n, "fixing variable {j} outside dimension {}", self.n);
            let v = if bit { S::one() } else { S::zero() };
            out.constraints.push(LinearConstraint::bound(d, j, Sense::Eq, v));
        }
        out
    }

    fn check_point(&self, x: &[S]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::Dimension { expected: self.n, found: x.len() });
        }
        Ok(())
    }

    /// Rows over the auxiliary variables once the original ones are fixed to `x`.
    fn substituted(&self, x: &[S]) -> Vec<LinearConstraint<S>> {
        self.constraints
            .iter()
            .map(|c| {
                let rhs = c.rhs.clone() - Vector(c.coeffs[..self.n].to_vec()).dot(x);
                LinearConstraint::new(Vector(c.coeffs[self.n..].to_vec()), c.sense, rhs)
            })
            .collect()
    }

    /// Whether `x` lies in the projection, decided exactly.
    pub fn is_member(&self, x: &[S]) -> Result<bool> {
        self.check_point(x)?;
        if self.boxed && x.iter().any(|v| v.is_neg() || v.cmp_to(&S::one()).is_gt()) {
            return Ok(false);
        }
        let rows = self.substituted(x);
        if self.aux == 0 {
            return Ok(rows.iter().all(|c| c.is_satisfied_by(&[])));
        }
        Ok(lp_feasibility(&rows, self.aux).is_ok())
    }

    /// A feasible point over all `n + aux` coordinates.
    pub fn feasible_lifted_point(&self) -> Option<Vector<S>> {
        lp_feasibility(&self.system(), self.total_dim()).ok()
    }

    pub fn feasible_point(&self) -> Option<Vector<S>> {
        self.feasible_lifted_point().map(|p| Vector(p.0[..self.n].to_vec()))
    }

    pub fn is_empty(&self) -> bool {
        self.feasible_lifted_point().is_none()
    }

    /// Optimizes a linear objective over the original variables. The returned
    /// point is truncated to those variables.
    pub fn optimize(&self, objective: &Vector<S>, direction: Direction) -> Result<LpOutcome<S>> {
        if objective.dim() != self.n {
            return Err(Error::Dimension { expected: self.n, found: objective.dim() });
        }
        let mut obj = objective.0.clone();
        obj.resize(self.total_dim(), S::zero());
        let problem = LpProblem::new(self.total_dim(), self.system(), Vector(obj), direction)?;
        let mut out = lp_solve(&problem);
        if let Some(p) = out.point.as_mut() {
            p.0.truncate(self.n);
        }
        Ok(out)
    }

    /// `max objective·x`, or `None` when empty.
    pub fn max_value(&self, objective: &Vector<S>) -> Result<Option<S>> {
        let out = self.optimize(objective, Direction::Max)?;
        match out.status {
            LpStatus::Optimal => Ok(out.value),
            LpStatus::Infeasible => Ok(None),
            LpStatus::Unbounded => Err(Error::Precondition("objective unbounded over a polytope".into())),
        }
    }

    /// The intersection of polytopes sharing `n`; auxiliary blocks are concatenated.
    pub fn intersect(parts: &[Polytope<S>]) -> Result<Self> {
        let first = parts.first().ok_or(Error::EmptyInput("intersection of no polytopes"))?;
        let n = first.n;
        let aux: usize = parts.iter().map(|p| p.aux).sum();
        let total = n + aux;
        let mut constraints = Vec::new();
        let mut offset = n;
        for p in parts {
            if p.n != n {
                return Err(Error::Dimension { expected: n, found: p.n });
            }
            for c in &p.constraints {
                let mut coeffs = vec![S::zero(); total];
                coeffs[..n].clone_from_slice(&c.coeffs[..n]);
                coeffs[offset..offset + p.aux].clone_from_slice(&c.coeffs[n..]);
                constraints.push(LinearConstraint::new(Vector(coeffs), c.sense, c.rhs.clone()));
            }
            offset += p.aux;
        }
        Ok(Polytope { n, aux, constraints, boxed: parts.iter().any(|p| p.boxed) })
    }

    /// Disjunctive extended formulation of `conv(∪ parts)`.
    ///
    /// Variables are `x`, then per part `l` a block `(z_l, w_l, λ_l)` with
    /// `z_l` a scaled copy of `x`, `w_l` the part's scaled auxiliaries and
    /// `λ_l ≥ 0` its convex multiplier. Every row `a·x + b·y ≥ β` of part `l`
    /// becomes `a·z_l + b·w_l − β λ_l ≥ 0`; box rows become `0 ≤ z_l ≤ λ_l`.
    /// Coupling rows are `x = Σ z_l` and `Σ λ_l = 1`. An empty part admits only
    /// `λ_l = 0` and contributes nothing; with no parts the result is empty.
    pub fn balas_union(parts: &[Polytope<S>]) -> Result<Self> {
        let first = parts.first().ok_or(Error::EmptyInput("union of no polytopes"))?;
        let n = first.n;
        if let Some(p) = parts.iter().find(|p| p.n != n) {
            return Err(Error::Dimension { expected: n, found: p.n });
        }
        let aux: usize = parts.iter().map(|p| n + p.aux + 1).sum();
        let total = n + aux;
        let mut rows = Vec::new();
        let mut offset = n;
        let mut lambdas = Vec::with_capacity(parts.len());
        for p in parts {
            let lam = offset + n + p.aux;
            for c in &p.constraints {
                let mut coeffs = vec![S::zero(); total];
                coeffs[offset..lam].clone_from_slice(&c.coeffs);
                coeffs[lam] = -c.rhs.clone();
                rows.push(LinearConstraint::new(Vector(coeffs), c.sense, S::zero()));
            }
            if p.boxed {
                for i in 0..n {
                    rows.push(LinearConstraint::bound(total, offset + i, Sense::Ge, S::zero()));
                    let mut c = Vector::unit(total, lam);
                    c[offset + i] = -S::one();
                    rows.push(LinearConstraint::ge(c, S::zero()));
                }
            }
            rows.push(LinearConstraint::bound(total, lam, Sense::Ge, S::zero()));
            lambdas.push((offset, lam));
            offset = lam + 1;
        }
        for i in 0..n {
            let mut c = Vector::unit(total, i);
            for &(o, _) in &lambdas {
                c[o + i] = -S::one();
            }
            rows.push(LinearConstraint::eq(c, S::zero()));
        }
        let mut sum = Vector::zeros(total);
        for &(_, lam) in &lambdas {
            sum[lam] = S::one();
        }
        rows.push(LinearConstraint::eq(sum, S::one()));
        Ok(Polytope { n, aux, constraints: rows, boxed: false })
    }

    /// Extreme points of an explicit polytope.
    pub fn vertices(&self, limits: &Limits) -> Result<VPointSet<S>> {
        vertices::enumerate(self, limits)
    }

    /// Explicit description of the projection onto the variables in `keep`
    /// (indices into all `n + aux` coordinates), by Fourier-Motzkin elimination.
    pub fn project(&self, keep: &[usize], limits: &Limits) -> Result<Self> {
        project::project(self, keep, limits)
    }

    /// Explicit description of the projection onto the original variables.
    pub fn explicit(&self, limits: &Limits) -> Result<Self> {
        if self.aux == 0 {
            return Ok(self.clone());
        }
        let keep: Vec<usize> = (0..self.n).collect();
        let mut out = self.project(&keep, limits)?;
        out.boxed = self.boxed;
        Ok(out)
    }

    /// All 0/1 points of the polytope, in lexicographic order.
    pub fn integer_points(&self, limits: &Limits) -> Result<Vec<Vector<S>>> {
        if self.n > limits.max_enum_dim {
            return Err(Error::Budget(format!("0/1 enumeration in dimension {}", self.n)));
        }
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << self.n) {
            let x: Vector<S> =
                Vector((0..self.n).map(|i| if mask >> (self.n - 1 - i) & 1 == 1 { S::one() } else { S::zero() }).collect());
            if self.is_member(&x)? {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// `conv(P ∩ {0,1}^n)`; facets are synthesized when `with_facets`.
    pub fn integer_hull(&self, with_facets: bool, limits: &Limits) -> Result<IntegerHull<S>> {
        let vertices = VPointSet::new(self.n, self.integer_points(limits)?)?;
        let facets = if with_facets { Some(hull::hull_constraints(&vertices, limits)?) } else { None };
        Ok(IntegerHull { vertices, facets })
    }
}

#[cfg(test)]
mod tests;
