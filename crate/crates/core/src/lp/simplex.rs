//! Two-phase revised simplex on `max c·y  s.t.  M y = r, y ≥ 0`.
//!
//! The basis inverse is kept dense; columns are sparse. Entering and leaving
//! variables follow Bland's smallest-index rule, so the method terminates on
//! every input under exact arithmetic.

use crate::scalar::Scalar;

pub(crate) type SparseCol<S> = Vec<(usize, S)>;

pub(crate) struct StandardForm<S> {
    pub rows: usize,
    pub cols: Vec<SparseCol<S>>,
    pub cost: Vec<S>,
    pub rhs: Vec<S>,
}

pub(crate) enum SimplexOutcome<S> {
    Optimal {
        /// `(column, value)` for every basic structural column.
        solution: Vec<(usize, S)>,
        /// Simplex multipliers, one per row of the original (unflipped) system.
        duals: Vec<S>,
    },
    /// Phase one ended with positive infeasibility. The multipliers `d`
    /// satisfy `d·M_j ≥ 0` for all columns and `d·r < 0`.
    Infeasible { duals: Vec<S> },
    /// Ray `y(t) = y + t·direction`, `direction ≥ 0`, `M direction = 0`,
    /// `c·direction > 0`. Given sparsely as `(column, value)`.
    Unbounded { direction: Vec<(usize, S)> },
}

struct Tableau<'a, S> {
    sf: &'a StandardForm<S>,
    flip: Vec<bool>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    binv: Vec<Vec<S>>,
    beta: Vec<S>,
    iterations: usize,
}

enum Step<S> {
    Optimal,
    Unbounded { entering: usize, column: Vec<S> },
}

impl<'a, S: Scalar> Tableau<'a, S> {
    fn new(sf: &'a StandardForm<S>) -> Self {
        let m = sf.rows;
        let n = sf.cols.len();
        let flip: Vec<bool> = sf.rhs.iter().map(|r| r.is_neg()).collect();
        let beta = sf
            .rhs
            .iter()
            .zip(&flip)
            .map(|(r, &f)| if f { -r.clone() } else { r.clone() })
            .collect();
        let binv = (0..m)
            .map(|i| {
                let mut row = vec![S::zero(); m];
                row[i] = S::one();
                row
            })
            .collect();
        Tableau {
            sf,
            flip,
            basis: (0..m).map(|i| n + i).collect(),
            is_basic: vec![false; n],
            binv,
            beta,
            iterations: 0,
        }
    }

    fn n(&self) -> usize {
        self.sf.cols.len()
    }

    fn is_artificial(&self, var: usize) -> bool {
        var >= self.n()
    }

    fn entry(&self, row: usize, v: &S) -> S {
        if self.flip[row] {
            -v.clone()
        } else {
            v.clone()
        }
    }

    /// `B⁻¹ a_j` for structural column `j`.
    fn ftran(&self, j: usize) -> Vec<S> {
        let m = self.sf.rows;
        let mut u = vec![S::zero(); m];
        for (r, v) in &self.sf.cols[j] {
            let a = self.entry(*r, v);
            for (i, ui) in u.iter_mut().enumerate() {
                let b = &self.binv[i][*r];
                if b.is_zero() {
                    continue;
                }
                let mut t = b.clone();
                t *= &a;
                *ui += &t;
            }
        }
        u
    }

    /// `c_B B⁻¹` for the given cost function (in the flipped row space).
    fn multipliers(&self, cost: &dyn Fn(usize) -> S) -> Vec<S> {
        let m = self.sf.rows;
        let mut pi = vec![S::zero(); m];
        for (i, &var) in self.basis.iter().enumerate() {
            let c = cost(var);
            if c.is_zero() {
                continue;
            }
            for (p, b) in pi.iter_mut().zip(&self.binv[i]) {
                if b.is_zero() {
                    continue;
                }
                let mut t = b.clone();
                t *= &c;
                *p += &t;
            }
        }
        pi
    }

    fn reduced_cost(&self, j: usize, cj: S, pi: &[S]) -> S {
        let mut d = cj;
        for (r, v) in &self.sf.cols[j] {
            if pi[*r].is_zero() {
                continue;
            }
            let mut t = self.entry(*r, v);
            t *= &pi[*r];
            d -= &t;
        }
        d
    }

    fn pivot(&mut self, r: usize, entering: usize, u: &[S]) {
        let inv = S::one() / u[r].clone();
        for v in self.binv[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.beta[r] *= &inv;
        let prow = self.binv[r].clone();
        let pbeta = self.beta[r].clone();
        for (i, ui) in u.iter().enumerate() {
            if i == r || ui.is_zero() {
                continue;
            }
            for (v, p) in self.binv[i].iter_mut().zip(&prow) {
                if p.is_zero() {
                    continue;
                }
                let mut t = p.clone();
                t *= ui;
                *v -= &t;
            }
            let mut t = pbeta.clone();
            t *= ui;
            self.beta[i] -= &t;
        }
        let leaving = self.basis[r];
        if !self.is_artificial(leaving) {
            self.is_basic[leaving] = false;
        }
        self.basis[r] = entering;
        self.is_basic[entering] = true;
        self.iterations += 1;
    }

    /// Runs Bland's-rule simplex iterations for `cost` until optimal or unbounded.
    /// Artificial columns never re-enter; with `hold_artificials` the basic ones
    /// are pinned at zero.
    fn run(&mut self, cost: &dyn Fn(usize) -> S, hold_artificials: bool) -> Step<S> {
        let cap = if S::EXACT { usize::MAX } else { 50_000 };
        loop {
            if self.iterations >= cap {
                return Step::Optimal;
            }
            let pi = self.multipliers(cost);
            let entering = (0..self.n())
                .find(|&j| !self.is_basic[j] && self.reduced_cost(j, cost(j), &pi).is_pos());
            let Some(j) = entering else {
                return Step::Optimal;
            };
            let u = self.ftran(j);
            let mut best: Option<(usize, S)> = None;
            for (i, ui) in u.iter().enumerate() {
                let stuck = hold_artificials && self.is_artificial(self.basis[i]) && !ui.is_negligible();
                if !(ui.is_pos() || stuck) {
                    continue;
                }
                let ratio = if stuck && !ui.is_pos() { S::zero() } else { self.beta[i].clone() / ui.clone() };
                let better = match &best {
                    None => true,
                    Some((bi, br)) => match ratio.cmp_to(br) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Equal => self.basis[i] < self.basis[*bi],
                        std::cmp::Ordering::Greater => false,
                    },
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return Step::Unbounded { entering: j, column: u },
                Some((r, _)) => self.pivot(r, j, &u),
            }
        }
    }

    fn unflip(&self, pi: Vec<S>) -> Vec<S> {
        pi.into_iter().zip(&self.flip).map(|(p, &f)| if f { -p } else { p }).collect()
    }

    /// Pivots basic artificials out wherever a structural column can replace them.
    fn drive_out_artificials(&mut self) {
        for r in 0..self.sf.rows {
            if !self.is_artificial(self.basis[r]) {
                continue;
            }
            let candidate = (0..self.n()).find(|&j| {
                if self.is_basic[j] {
                    return false;
                }
                let mut acc = S::zero();
                for (row, v) in &self.sf.cols[j] {
                    let b = &self.binv[r][*row];
                    if b.is_zero() {
                        continue;
                    }
                    let mut t = self.entry(*row, v);
                    t *= b;
                    acc += &t;
                }
                !acc.is_negligible()
            });
            if let Some(j) = candidate {
                let u = self.ftran(j);
                self.pivot(r, j, &u);
            }
        }
    }
}

pub(crate) fn solve<S: Scalar>(sf: &StandardForm<S>) -> SimplexOutcome<S> {
    let n = sf.cols.len();
    let mut t = Tableau::new(sf);

    let phase_one = |var: usize| if var >= n { -S::one() } else { S::zero() };
    t.run(&phase_one, false);
    let infeasibility = t
        .basis
        .iter()
        .zip(&t.beta)
        .filter(|(&var, _)| var >= n)
        .fold(S::zero(), |mut acc, (_, b)| {
            acc += b;
            acc
        });
    if infeasibility.is_pos() {
        let pi = t.multipliers(&phase_one);
        return SimplexOutcome::Infeasible { duals: t.unflip(pi) };
    }
    t.drive_out_artificials();

    let phase_two = |var: usize| if var >= n { S::zero() } else { sf.cost[var].clone() };
    match t.run(&phase_two, true) {
        Step::Optimal => {
            let pi = t.multipliers(&phase_two);
            let mut solution = Vec::new();
            for (&var, b) in t.basis.iter().zip(&t.beta) {
                if var < n {
                    solution.push((var, b.clone()));
                }
            }
            solution.sort_by_key(|(j, _)| *j);
            SimplexOutcome::Optimal { solution, duals: t.unflip(pi) }
        }
        Step::Unbounded { entering, column } => {
            let mut direction = vec![(entering, S::one())];
            for (&var, u) in t.basis.iter().zip(column) {
                if var < n && !u.is_zero() {
                    direction.push((var, -u));
                }
            }
            direction.sort_by_key(|(j, _)| *j);
            SimplexOutcome::Unbounded { direction }
        }
    }
}
