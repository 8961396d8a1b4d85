//! Dense vectors and matrices over a [`Scalar`], with exact elimination.

use std::ops::{Deref, DerefMut, Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point or coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<S>(pub Vec<S>);

impl<S: Scalar> Vector<S> {
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![S::zero(); dim])
    }

    pub fn filled(dim: usize, value: S) -> Self {
        Vector(vec![value; dim])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = S::one();
        v
    }

    pub fn from_ratios(entries: &[(i64, i64)]) -> Self {
        Vector(entries.iter().map(|&(p, q)| S::ratio(p, q)).collect())
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Vector(entries.iter().map(|&v| S::int(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &[S]) -> S {
        debug_assert_eq!(self.0.len(), other.len());
        let mut acc = S::zero();
        for (a, b) in self.0.iter().zip(other) {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let mut t = a.clone();
            t *= b;
            acc += &t;
        }
        acc
    }

    pub fn is_zero_vector(&self) -> bool {
        self.0.iter().all(|v| v.is_negligible())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| {
                    let mut t = a.clone();
                    t -= b;
                    t
                })
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| {
                    let mut t = a.clone();
                    t += b;
                    t
                })
                .collect(),
        )
    }

    pub fn scale(&self, factor: &S) -> Self {
        Vector(
            self.0
                .iter()
                .map(|a| {
                    let mut t = a.clone();
                    t *= factor;
                    t
                })
                .collect(),
        )
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|v| v.is_negligible() || (v.clone() - S::one()).is_negligible())
    }

    pub fn to_text(&self) -> Vec<String> {
        self.0.iter().map(Scalar::to_text).collect()
    }

    pub fn parse_text<T: AsRef<str>>(items: &[T]) -> Result<Self> {
        items
            .iter()
            .map(|s| {
                S::parse_text(s.as_ref())
                    .ok_or_else(|| Error::Parse(format!("bad rational `{}`", s.as_ref())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Vector)
    }
}

impl<S> Deref for Vector<S> {
    type Target = [S];
    fn deref(&self) -> &[S] {
        &self.0
    }
}

impl<S> DerefMut for Vector<S> {
    fn deref_mut(&mut self) -> &mut [S] {
        &mut self.0
    }
}

impl<S> From<Vec<S>> for Vector<S> {
    fn from(v: Vec<S>) -> Self {
        Vector(v)
    }
}

impl<S: Scalar> std::fmt::Display for Vector<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.to_text().join(", "))
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    pub(crate) rows: Vec<Vector<S>>,
    pub(crate) cols: usize,
}

impl<S: Scalar> Matrix<S> {
    pub fn from_rows(rows: Vec<Vector<S>>, cols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.dim() != cols) {
            return Err(Error::Dimension { expected: cols, found: bad.dim() });
        }
        Ok(Matrix { rows, cols })
    }

    pub fn identity(n: usize) -> Self {
        Matrix { rows: (0..n).map(|i| Vector::unit(n, i)).collect(), cols: n }
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vector<S>] {
        &self.rows
    }

    pub fn mul_vec(&self, x: &[S]) -> Vector<S> {
        Vector(self.rows.iter().map(|r| r.dot(x)).collect())
    }

    pub fn rank(&self) -> usize {
        let mut work: Vec<Vec<S>> = self.rows.iter().map(|r| r.0.clone()).collect();
        rref(&mut work, self.cols).len()
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.rows[i].0[j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.rows[i].0[j]
    }
}

/// Classification of `M x = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution<S> {
    Unique(Vector<S>),
    Inconsistent,
    /// Solutions are `particular + span(directions)`.
    Underdetermined { particular: Vector<S>, directions: Vec<Vector<S>> },
}

/// Reduces `rows` (each of length `>= cols`) to reduced row echelon form over
/// the first `cols` columns, returning the pivot column of each nonzero row.
/// Zero rows are moved to the bottom; extra trailing columns are carried along.
pub fn rref<S: Scalar>(rows: &mut [Vec<S>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_negligible()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = S::one() / rows[r][c].clone();
        for v in rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if p.is_zero() {
                    continue;
                }
                let mut t = p.clone();
                t *= &f;
                *v -= &t;
            }
            row[c] = S::zero();
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `m x = rhs` exactly.
pub fn solve_linear_system<S: Scalar>(m: &Matrix<S>, rhs: &Vector<S>) -> Result<LinearSolution<S>> {
    if m.row_count() != rhs.dim() {
        return Err(Error::Dimension { expected: m.row_count(), found: rhs.dim() });
    }
    let n = m.col_count();
    let mut aug: Vec<Vec<S>> = m
        .rows
        .iter()
        .zip(rhs.iter())
        .map(|(r, b)| {
            let mut row = r.0.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if aug[pivots.len()..].iter().any(|row| !row[n].is_negligible()) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut particular = Vector::zeros(n);
    for (row, &c) in aug.iter().zip(&pivots) {
        particular[c] = row[n].clone();
    }
    if pivots.len() == n {
        return Ok(LinearSolution::Unique(particular));
    }
    let directions = nullspace_from_rref(&aug, &pivots, n);
    Ok(LinearSolution::Underdetermined { particular, directions })
}

fn nullspace_from_rref<S: Scalar>(rows: &[Vec<S>], pivots: &[usize], n: usize) -> Vec<Vector<S>> {
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = Vector::zeros(n);
            v[f] = S::one();
            for (row, &c) in rows.iter().zip(pivots) {
                v[c] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace<S: Scalar>(m: &Matrix<S>) -> Vec<Vector<S>> {
    let mut work: Vec<Vec<S>> = m.rows.iter().map(|r| r.0.clone()).collect();
    let pivots = rref(&mut work, m.cols);
    nullspace_from_rref(&work, &pivots, m.cols)
}

/// One plus the rank of the differences to the first point; `k` points are
/// affinely independent iff this returns `k`.
pub fn affine_rank<S: Scalar>(points: &[Vector<S>]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyInput("affine_rank needs at least one point"))?;
    let dim = first.dim();
    if let Some(bad) = points.iter().find(|p| p.dim() != dim) {
        return Err(Error::Dimension { expected: dim, found: bad.dim() });
    }
    let diffs: Vec<Vector<S>> = points[1..].iter().map(|p| p.sub(first)).collect();
    Ok(1 + Matrix { rows: diffs, cols: dim }.rank())
}
