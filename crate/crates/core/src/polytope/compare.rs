//! Exact comparisons between polytopes, and the simplicial-hull witness LP.

use super::{IntegerHull, Limits, Polytope, VPointSet};
use crate::error::{Error, Result};
use crate::linalg::{affine_rank, Vector};
use crate::lp::{lp_solve, Direction, LinearConstraint, LpProblem, LpStatus, Sense};
use crate::scalar::Scalar;

/// Outcome of testing `A ⊆ B`.
#[derive(Clone, Debug, PartialEq)]
pub enum Containment<S> {
    Contained,
    /// A point of `A` outside `B`.
    Witness(Vector<S>),
    /// Neither side admitted an exact test within the limits.
    Undecided(String),
}

impl<S> Containment<S> {
    pub fn is_contained(&self) -> bool {
        matches!(self, Containment::Contained)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HullComparison<S> {
    Equal,
    /// A point of the relaxation violating some facet of the hull.
    OutsideHull(Vector<S>),
    /// A hull vertex the relaxation misses.
    MissingVertex(Vector<S>),
}

impl<S> HullComparison<S> {
    pub fn is_equal(&self) -> bool {
        matches!(self, HullComparison::Equal)
    }
}

/// Checks every row of `rows` (over the original variables of `a`) on `a`
/// by optimization. Returns a violating optimizer, if any.
pub(crate) fn violation<S: Scalar>(a: &Polytope<S>, rows: &[LinearConstraint<S>]) -> Result<Option<Vector<S>>> {
    for row in rows {
        let checks: &[(Direction, bool)] = match row.sense {
            Sense::Ge => &[(Direction::Min, true)],
            Sense::Le => &[(Direction::Max, false)],
            Sense::Eq => &[(Direction::Min, true), (Direction::Max, false)],
        };
        for &(dir, lower) in checks {
            let out = a.optimize(&row.coeffs, dir)?;
            match out.status {
                LpStatus::Infeasible => return Ok(None),
                LpStatus::Unbounded => return Ok(out.point),
                LpStatus::Optimal => {
                    let v = out.value.expect("optimal value");
                    let bad = if lower { v.cmp_to(&row.rhs).is_lt() } else { v.cmp_to(&row.rhs).is_gt() };
                    if bad {
                        return Ok(out.point);
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Decides `a ⊆ b`. An explicit `b` is tested row by row with LPs over `a`;
/// a lifted `b` needs an explicit `a`, whose vertices are tested for
/// membership.
pub fn containment<S: Scalar>(a: &Polytope<S>, b: &Polytope<S>, limits: &Limits) -> Result<Containment<S>> {
    if a.n != b.n {
        return Err(Error::Dimension { expected: a.n, found: b.n });
    }
    if b.is_explicit() {
        return Ok(match violation(a, &b.system())? {
            None => Containment::Contained,
            Some(w) => Containment::Witness(w),
        });
    }
    if !a.is_explicit() {
        return Ok(Containment::Undecided("both sides lifted".into()));
    }
    let verts = match a.vertices(limits) {
        Ok(v) => v,
        Err(Error::Budget(msg)) => return Ok(Containment::Undecided(msg)),
        Err(e) => return Err(e),
    };
    for v in verts.points {
        if !b.is_member(&v)? {
            return Ok(Containment::Witness(v));
        }
    }
    Ok(Containment::Contained)
}

/// Decides `a = b` by containment both ways; the first failure is returned.
pub fn same_set<S: Scalar>(a: &Polytope<S>, b: &Polytope<S>, limits: &Limits) -> Result<Containment<S>> {
    match containment(a, b, limits)? {
        Containment::Contained => containment(b, a, limits),
        other => Ok(other),
    }
}

/// Whether the relaxation `r` equals the integer hull `h`: every hull vertex
/// lies in `r` and every facet of `h` is valid for `r`.
pub fn equals_integer_hull<S: Scalar>(r: &Polytope<S>, h: &IntegerHull<S>) -> Result<HullComparison<S>> {
    let facets = h.facets()?;
    if r.n != h.dim() {
        return Err(Error::Dimension { expected: r.n, found: h.dim() });
    }
    for v in &h.vertices.points {
        if !r.is_member(v)? {
            return Ok(HullComparison::MissingVertex(v.clone()));
        }
    }
    Ok(match violation(r, facets)? {
        None => HullComparison::Equal,
        Some(w) => HullComparison::OutsideHull(w),
    })
}

impl<S: Scalar> Polytope<S> {
    /// Every vertex of `h` lies in `self`.
    pub fn contains_hull(&self, h: &IntegerHull<S>) -> Result<bool> {
        for v in &h.vertices.points {
            if !self.is_member(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A point of `∩_{r∈R} conv(F ∪ {r})` maximizing `a·x`, where `F` are `n`
/// affinely independent points on `{a·x = b}` and every `r` has `a·r > b`.
///
/// Variables: `x`, then per `r` the weights `μ_r` on `F` and `ν_r` on `r`.
pub fn dash_witness<S: Scalar>(
    facet_points: &VPointSet<S>,
    r_points: &VPointSet<S>,
    a: &Vector<S>,
    b: &S,
) -> Result<Vector<S>> {
    let n = a.dim();
    if facet_points.dim != n || r_points.dim != n {
        return Err(Error::Dimension { expected: n, found: facet_points.dim.max(r_points.dim) });
    }
    let f = &facet_points.points;
    if f.len() != n || affine_rank(f)? != n {
        return Err(Error::Precondition(format!("need {n} affinely independent facet points")));
    }
    if f.iter().any(|p| !a.dot(p).cmp_to(b).is_eq()) {
        return Err(Error::Precondition("facet points must satisfy a·x = b".into()));
    }
    if r_points.is_empty() || r_points.points.iter().any(|r| !a.dot(r).cmp_to(b).is_gt()) {
        return Err(Error::Precondition("every apex must satisfy a·r > b".into()));
    }
    let k = n + 1;
    let total = n + r_points.len() * k;
    let mut rows = Vec::new();
    for (j, r) in r_points.points.iter().enumerate() {
        let base = n + j * k;
        for i in 0..n {
            let mut c = Vector::unit(total, i);
            for (l, p) in f.iter().enumerate() {
                c[base + l] = -p[i].clone();
            }
            c[base + n] = -r[i].clone();
            rows.push(LinearConstraint::eq(c, S::zero()));
        }
        let mut sum = Vector::zeros(total);
        for l in 0..k {
            sum[base + l] = S::one();
            rows.push(LinearConstraint::bound(total, base + l, Sense::Ge, S::zero()));
        }
        rows.push(LinearConstraint::eq(sum, S::one()));
    }
    let mut obj = a.0.clone();
    obj.resize(total, S::zero());
    let out = lp_solve(&LpProblem::maximize(total, rows, Vector(obj))?);
    let Some(point) = out.point.filter(|_| out.status == LpStatus::Optimal) else {
        return Err(Error::Precondition("simplicial hulls do not intersect".into()));
    };
    let x = Vector(point.0[..n].to_vec());
    if !a.dot(&x).cmp_to(b).is_gt() {
        return Err(Error::Precondition("simplicial hulls meet only on the facet".into()));
    }
    Ok(x)
}
