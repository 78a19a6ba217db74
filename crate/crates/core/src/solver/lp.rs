//! Bounded-variable primal simplex on a dense tableau.
//!
//! Every constraint row `i` gets a row variable `r_i = a_i · x` whose bounds
//! encode the relation, so the slack basis `{r_i}` is always available and
//! phase 1 minimizes the total bound violation of the basic variables.
//! Bounds can be changed between solves without discarding the basis, which
//! is how branch-and-bound reuses work across nodes.

use crate::linear::{LinearConstraint, Relation};
use crate::reform::MilpProblem;
use crate::scalar::Scalar;

use super::SolverError;

/// Maximize `objective · x` subject to `constraints` and `lower ≤ x ≤ upper`.
#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem<T> {
    pub lower: Vec<T>,
    pub upper: Vec<T>,
    pub constraints: Vec<LinearConstraint<T>>,
    pub objective: Vec<(usize, T)>,
}

impl<T: Scalar> LpProblem<T> {
    /// `variables` variables in [0, 1], no constraints, zero objective.
    pub fn new(variables: usize) -> Self {
        Self {
            lower: vec![T::zero(); variables],
            upper: vec![T::one(); variables],
            constraints: vec![],
            objective: vec![],
        }
    }

    /// Continuous relaxation of `milp`.
    pub fn relaxation(milp: &MilpProblem<T>) -> Self {
        let mut lp = Self::new(milp.variables.len());
        lp.constraints = milp.constraints.clone();
        lp.objective = milp.objective.clone();
        lp
    }

    pub fn variables(&self) -> usize {
        self.lower.len()
    }

    pub fn check(&self) -> Result<(), SolverError> {
        let n = self.variables();
        if self.upper.len() != n {
            return Err(SolverError::InvalidProblem("bound vectors differ in length".into()));
        }
        for j in 0..n {
            let (lo, hi) = (self.lower[j], self.upper[j]);
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(SolverError::InvalidProblem(format!("variable {j} has bounds [{lo}, {hi}]")));
            }
        }
        let in_range = |&(i, c): &(usize, T)| i < n && c.is_finite();
        if !self.objective.iter().all(in_range) {
            return Err(SolverError::InvalidProblem("objective references an unknown variable".into()));
        }
        for (k, c) in self.constraints.iter().enumerate() {
            if !c.coefficients.iter().all(in_range) || !c.rhs.is_finite() {
                return Err(SolverError::InvalidProblem(format!("constraint {k} is malformed")));
            }
        }
        Ok(())
    }

    /// Largest violation of any constraint or bound.
    pub fn max_violation(&self, x: &[T]) -> T {
        let rows = self.constraints.iter().map(|c| c.violation(x)).fold(T::zero(), T::max);
        (0..self.variables()).map(|j| (self.lower[j] - x[j]).max(x[j] - self.upper[j])).fold(rows, T::max)
    }

    pub fn objective_value(&self, x: &[T]) -> T {
        self.objective.iter().map(|&(j, c)| c * x[j]).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    /// Structural variable values (meaningful when optimal).
    pub values: Vec<T>,
    pub objective: T,
    pub iterations: usize,
}

/// Solves `lp` from the slack basis.
pub fn solve_lp<T: Scalar>(lp: &LpProblem<T>) -> Result<LpSolution<T>, SolverError> {
    Simplex::new(lp)?.solve()
}

const NONE: usize = usize::MAX;
const STALL_LIMIT: usize = 50;
const REFRESH_EVERY: usize = 100;
const REFACTOR_EVERY: usize = 2000;

/// Reusable simplex state for one constraint matrix.
///
/// The tableau only stores the `n` nonbasic columns: slot `k` holds
/// variable `nb[k]`, and row `i` reads `x[basis[i]] = Σ_k tab[i][k] · x[nb[k]]`.
/// Rows with a single coefficient are folded into variable bounds.
#[derive(Clone, Debug)]
pub struct Simplex<T> {
    n: usize,
    m: usize,
    /// Original constraints, kept for refactorization and verification.
    rows: Vec<LinearConstraint<T>>,
    /// Original indices of the rows kept in the tableau.
    tableau_rows: Vec<usize>,
    /// A coefficient-free row that cannot hold.
    inconsistent: bool,
    user_lo: Vec<T>,
    user_hi: Vec<T>,
    implied_lo: Vec<T>,
    implied_hi: Vec<T>,
    cost: Vec<T>,
    lo: Vec<T>,
    hi: Vec<T>,
    tab: Vec<T>,
    /// Objective as a combination of the nonbasic slots.
    zrow: Vec<T>,
    basis: Vec<usize>,
    nb: Vec<usize>,
    row_of: Vec<usize>,
    slot_of: Vec<usize>,
    x: Vec<T>,
    pivots_since_refactor: usize,
    scratch: Vec<T>,
    nz: Vec<usize>,
    /// Copy of the tableau column of the entering slot.
    col: Vec<T>,
}

impl<T: Scalar> Simplex<T> {
    pub fn new(lp: &LpProblem<T>) -> Result<Self, SolverError> {
        lp.check()?;
        let n = lp.variables();
        let mut implied_lo = vec![T::neg_infinity(); n];
        let mut implied_hi = vec![T::infinity(); n];
        let mut tableau_rows = Vec::new();
        let mut row_lo = Vec::new();
        let mut row_hi = Vec::new();
        let mut inconsistent = false;
        for (k, c) in lp.constraints.iter().enumerate() {
            let (l, h) = match c.relation {
                Relation::Eq => (c.rhs, c.rhs),
                Relation::Le => (T::neg_infinity(), c.rhs),
                Relation::Ge => (c.rhs, T::infinity()),
            };
            match c.coefficients.as_slice() {
                [] => {
                    let tol = T::of(T::FEASIBILITY_TOLERANCE);
                    inconsistent |= T::zero() < l - tol || T::zero() > h + tol;
                }
                &[(j, a)] => {
                    let (bl, bh) = if a > T::zero() { (l / a, h / a) } else { (h / a, l / a) };
                    implied_lo[j] = implied_lo[j].max(bl);
                    implied_hi[j] = implied_hi[j].min(bh);
                }
                _ => {
                    tableau_rows.push(k);
                    row_lo.push(l);
                    row_hi.push(h);
                }
            }
        }
        let m = tableau_rows.len();
        let mut cost = vec![T::zero(); n + m];
        for &(j, c) in &lp.objective {
            cost[j] += c;
        }
        let mut s = Self {
            n,
            m,
            rows: lp.constraints.clone(),
            tableau_rows,
            inconsistent,
            user_lo: lp.lower.clone(),
            user_hi: lp.upper.clone(),
            implied_lo,
            implied_hi,
            cost,
            lo: vec![T::zero(); n],
            hi: vec![T::zero(); n],
            tab: Vec::new(),
            zrow: Vec::new(),
            basis: Vec::new(),
            nb: Vec::new(),
            row_of: Vec::new(),
            slot_of: Vec::new(),
            x: vec![T::zero(); n + m],
            pivots_since_refactor: 0,
            scratch: vec![T::zero(); n],
            nz: Vec::with_capacity(n),
            col: vec![T::zero(); m],
        };
        for j in 0..n {
            s.effective_bounds(j);
            s.x[j] = s.lo[j];
        }
        s.lo.extend(row_lo);
        s.hi.extend(row_hi);
        s.slack_basis();
        Ok(s)
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    /// Bounds last set through [`Simplex::set_bounds`] (or the problem's).
    pub fn bounds(&self, j: usize) -> (T, T) {
        (self.user_lo[j], self.user_hi[j])
    }

    fn effective_bounds(&mut self, j: usize) {
        let lo = self.user_lo[j].max(self.implied_lo[j]);
        let hi = self.user_hi[j].min(self.implied_hi[j]);
        // an interval inverted by rounding noise collapses to a point
        let hi = if hi < lo && lo - hi <= T::of(T::FEASIBILITY_TOLERANCE) { lo } else { hi };
        self.lo[j] = lo;
        self.hi[j] = hi;
    }

    /// Changes the bounds of structural variable `j`, keeping the basis.
    pub fn set_bounds(&mut self, j: usize, lo: T, hi: T) {
        assert!(j < self.n && lo <= hi, "bounds of a structural variable");
        self.user_lo[j] = lo;
        self.user_hi[j] = hi;
        self.effective_bounds(j);
        if self.row_of[j] == NONE {
            let (lo, hi) = (self.lo[j], self.hi[j]);
            let v = self.x[j];
            let target = if v <= lo || hi < lo || (v - lo).abs() <= (v - hi).abs() { lo } else { hi };
            let delta = target - v;
            if delta != T::zero() {
                let k = self.slot_of[j];
                self.load_column(k);
                self.shift(j, delta);
            }
        }
    }

    /// Rebuilds the tableau for the slack basis.
    fn slack_basis(&mut self) {
        let (n, m) = (self.n, self.m);
        self.tab = vec![T::zero(); m * n];
        for (i, &r) in self.tableau_rows.iter().enumerate() {
            for &(j, a) in &self.rows[r].coefficients {
                self.tab[i * n + j] = a;
            }
        }
        self.zrow = self.cost[..n].to_vec();
        self.basis = (n..n + m).collect();
        self.nb = (0..n).collect();
        self.row_of = vec![NONE; n + m];
        self.slot_of = vec![NONE; n + m];
        for i in 0..m {
            self.row_of[n + i] = i;
        }
        for k in 0..n {
            self.slot_of[k] = k;
        }
        self.pivots_since_refactor = 0;
        self.recompute_basics();
    }

    /// Rebuilds the tableau from the original rows for the current basis,
    /// dropping basic structurals that no longer admit a stable pivot.
    fn refactor(&mut self) {
        let old = self.x.clone();
        let wanted: Vec<usize> = self.basis.iter().copied().filter(|&b| b < self.n).collect();
        let keep: Vec<bool> = (0..self.m).map(|i| self.row_of[self.n + i] != NONE).collect();
        self.slack_basis();
        let n = self.n;
        for &q in &wanted {
            let k = self.slot_of[q];
            let mut best: Option<(usize, T)> = None;
            for i in 0..self.m {
                let b = self.basis[i];
                if b < n || keep[b - n] {
                    continue;
                }
                let a = self.tab[i * n + k].abs();
                if a > T::of(T::PIVOT_TOLERANCE * 1e3) && best.is_none_or(|(_, v)| a > v) {
                    best = Some((i, a));
                }
            }
            if let Some((p, _)) = best {
                self.load_column(k);
                self.pivot(p, k);
            }
        }
        for j in 0..n + self.m {
            if self.row_of[j] == NONE {
                let (lo, hi) = (self.lo[j], self.hi[j]);
                self.x[j] = if !hi.is_finite() || (lo.is_finite() && (old[j] - lo).abs() <= (old[j] - hi).abs()) {
                    lo
                } else {
                    hi
                };
            }
        }
        self.pivots_since_refactor = 0;
        self.recompute_basics();
    }

    fn recompute_basics(&mut self) {
        let n = self.n;
        let xn: Vec<T> = self.nb.iter().map(|&j| self.x[j]).collect();
        for i in 0..self.m {
            let row = &self.tab[i * n..(i + 1) * n];
            let v = row.iter().zip(&xn).fold(T::zero(), |acc, (&t, &v)| acc + t * v);
            self.x[self.basis[i]] = v;
        }
    }

    fn load_column(&mut self, k: usize) {
        let n = self.n;
        for (i, c) in self.col.iter_mut().enumerate() {
            *c = self.tab[i * n + k];
        }
    }

    /// Moves nonbasic `q` by `delta`; its column must be loaded.
    fn shift(&mut self, q: usize, delta: T) {
        self.x[q] += delta;
        for (i, &t) in self.col.iter().enumerate() {
            if t != T::zero() {
                self.x[self.basis[i]] += t * delta;
            }
        }
    }

    /// Exchanges basic `basis[p]` with the variable in slot `k`, whose column
    /// must be loaded.
    fn pivot(&mut self, p: usize, k: usize) {
        let n = self.n;
        let l = self.basis[p];
        let q = self.nb[k];
        let piv = self.col[p];
        {
            let row = &mut self.tab[p * n..(p + 1) * n];
            self.nz.clear();
            for (s, v) in row.iter_mut().enumerate() {
                if *v != T::zero() {
                    *v = -*v / piv;
                    self.nz.push(s);
                }
            }
            row[k] = T::one() / piv;
            self.scratch.copy_from_slice(row);
        }
        let dense = self.nz.len() * 3 > n;
        for (i, row) in self.tab.chunks_exact_mut(n).enumerate() {
            let f = self.col[i];
            if i == p || f == T::zero() {
                continue;
            }
            row[k] = T::zero();
            if dense {
                for (a, &b) in row.iter_mut().zip(&self.scratch) {
                    *a += f * b;
                }
            } else {
                for &s in &self.nz {
                    row[s] += f * self.scratch[s];
                }
            }
        }
        let f = self.zrow[k];
        if f != T::zero() {
            self.zrow[k] = T::zero();
            for &s in &self.nz {
                self.zrow[s] += f * self.scratch[s];
            }
        }
        self.basis[p] = q;
        self.nb[k] = l;
        self.row_of[q] = p;
        self.row_of[l] = NONE;
        self.slot_of[l] = k;
        self.slot_of[q] = NONE;
        self.pivots_since_refactor += 1;
    }

    fn feas_tol(&self) -> T {
        T::of(T::FEASIBILITY_TOLERANCE)
    }

    /// +1 below the lower bound, −1 above the upper bound, 0 when feasible.
    fn infeasibility(&self, i: usize) -> i8 {
        let b = self.basis[i];
        let tol = self.feas_tol();
        if self.x[b] < self.lo[b] - tol {
            1
        } else if self.x[b] > self.hi[b] + tol {
            -1
        } else {
            0
        }
    }

    fn structural_values(&self) -> Vec<T> {
        self.x[..self.n].to_vec()
    }

    /// Runs the simplex from the current basis.
    pub fn solve(&mut self) -> Result<LpSolution<T>, SolverError> {
        if self.inconsistent || (0..self.n).any(|j| self.lo[j] > self.hi[j]) {
            let values = self.structural_values();
            return Ok(LpSolution { status: LpStatus::Infeasible, objective: T::zero(), values, iterations: 0 });
        }
        match self.iterate() {
            Ok(s) if s.status == LpStatus::Infeasible || self.verified() => return Ok(s),
            Ok(_) | Err(SolverError::Numerical(_)) => {}
            Err(e) => return Err(e),
        }
        self.refactor();
        let s = self.iterate()?;
        if s.status == LpStatus::Optimal && !self.verified() {
            return Err(SolverError::Numerical("solution violates constraints after refactorization".into()));
        }
        Ok(s)
    }

    fn verified(&self) -> bool {
        let x = &self.x[..self.n];
        let limit = T::of(T::FEASIBILITY_TOLERANCE * 100.0);
        self.rows.iter().all(|c| c.violation(x) <= limit)
            && (0..self.n).all(|j| x[j] >= self.user_lo[j] - limit && x[j] <= self.user_hi[j] + limit)
    }

    fn iterate(&mut self) -> Result<LpSolution<T>, SolverError> {
        let (n, m) = (self.n, self.m);
        let piv_tol = T::of(T::PIVOT_TOLERANCE);
        let dual_tol = T::of(T::TOLERANCE);
        let feas = self.feas_tol();
        let max_iter = 50 * (n + m) + 1000;
        let mut stalled = 0usize;
        let mut iterations = 0usize;
        let mut d = vec![T::zero(); n];
        let mut sigma = vec![0i8; m];

        loop {
            if iterations > max_iter {
                return Err(SolverError::Numerical("iteration limit reached".into()));
            }
            if self.pivots_since_refactor >= REFACTOR_EVERY {
                self.refactor();
            } else if iterations % REFRESH_EVERY == REFRESH_EVERY - 1 {
                self.recompute_basics();
            }
            iterations += 1;

            let mut phase1 = false;
            for (i, s) in sigma.iter_mut().enumerate() {
                *s = self.infeasibility(i);
                phase1 |= *s != 0;
            }
            if phase1 {
                d.iter_mut().for_each(|v| *v = T::zero());
                for (i, &s) in sigma.iter().enumerate() {
                    let row = &self.tab[i * n..(i + 1) * n];
                    match s {
                        1 => d.iter_mut().zip(row).for_each(|(a, &t)| *a += t),
                        -1 => d.iter_mut().zip(row).for_each(|(a, &t)| *a -= t),
                        _ => {}
                    }
                }
            } else {
                d.copy_from_slice(&self.zrow);
            }

            // entering slot
            let bland = stalled > STALL_LIMIT;
            let mut entering: Option<(usize, T)> = None;
            for (k, &dk) in d.iter().enumerate() {
                let j = self.nb[k];
                if self.lo[j] == self.hi[j] {
                    continue;
                }
                let up = dk > dual_tol && self.x[j] < self.hi[j] - feas;
                let down = dk < -dual_tol && self.x[j] > self.lo[j] + feas;
                if !(up || down) {
                    continue;
                }
                let better = match entering {
                    None => true,
                    Some((b, db)) => {
                        if bland {
                            j < self.nb[b]
                        } else {
                            dk.abs() > db.abs()
                        }
                    }
                };
                if better {
                    entering = Some((k, dk));
                }
            }
            let Some((k, dk)) = entering else {
                let status = if phase1 { LpStatus::Infeasible } else { LpStatus::Optimal };
                let values = self.structural_values();
                let objective = (0..n).map(|j| self.cost[j] * values[j]).sum();
                return Ok(LpSolution { status, values, objective, iterations });
            };
            let q = self.nb[k];
            let dir = if dk > T::zero() { T::one() } else { -T::one() };
            self.load_column(k);

            // Harris ratio test: relaxed bounds first, then the largest pivot
            let limit_of = |i: usize, alpha: T, slack: T| -> Option<T> {
                let b = self.basis[i];
                let v = self.x[b];
                match sigma[i] {
                    1 => (alpha > T::zero()).then(|| (self.lo[b] - v) / alpha),
                    -1 => (alpha < T::zero()).then(|| (self.hi[b] - v) / alpha),
                    _ => {
                        if alpha > T::zero() && self.hi[b].is_finite() {
                            Some(((self.hi[b] + slack - v) / alpha).max(T::zero()))
                        } else if alpha < T::zero() && self.lo[b].is_finite() {
                            Some(((self.lo[b] - slack - v) / alpha).max(T::zero()))
                        } else {
                            None
                        }
                    }
                }
            };
            let flip = self.hi[q] - self.lo[q];
            let mut theta_max = flip;
            for (i, &c) in self.col.iter().enumerate() {
                let alpha = c * dir;
                if alpha.abs() > piv_tol {
                    if let Some(lim) = limit_of(i, alpha, feas) {
                        theta_max = theta_max.min(lim);
                    }
                }
            }
            if !theta_max.is_finite() {
                return Err(SolverError::Unbounded);
            }
            let mut leave: Option<(usize, T, T)> = None;
            for (i, &c) in self.col.iter().enumerate() {
                let alpha = c * dir;
                if alpha.abs() <= piv_tol {
                    continue;
                }
                let Some(lim) = limit_of(i, alpha, T::zero()) else { continue };
                if lim > theta_max {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some((p, a, _)) => {
                        if bland {
                            self.basis[i] < self.basis[p]
                        } else {
                            alpha.abs() > a.abs()
                        }
                    }
                };
                if better {
                    leave = Some((i, alpha, lim.max(T::zero())));
                }
            }

            match leave {
                Some((p, alpha, theta)) if theta <= flip => {
                    let b = self.basis[p];
                    let target = match sigma[p] {
                        1 => self.lo[b],
                        -1 => self.hi[b],
                        _ if alpha > T::zero() => self.hi[b],
                        _ => self.lo[b],
                    };
                    self.shift(q, dir * theta);
                    self.pivot(p, k);
                    self.x[b] = target;
                    stalled = if theta <= T::of(1e-12) { stalled + 1 } else { 0 };
                }
                _ => {
                    // the entering variable reaches its opposite bound first
                    let target = if dir > T::zero() { self.hi[q] } else { self.lo[q] };
                    let delta = target - self.x[q];
                    self.shift(q, delta);
                    self.x[q] = target;
                    stalled = 0;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(n: usize, rows: Vec<(Vec<(usize, f64)>, Relation, f64)>, obj: Vec<(usize, f64)>) -> LpProblem<f64> {
        let mut p = LpProblem::new(n);
        p.constraints = rows.into_iter().map(|(c, r, b)| LinearConstraint::new(c, r, b)).collect();
        p.objective = obj;
        p
    }

    #[test]
    fn single_upper_row() {
        let p = lp(1, vec![(vec![(0, 1.0)], Relation::Le, 0.3)], vec![(0, 1.0)]);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.values[0] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn contradictory_rows() {
        let p = lp(1, vec![(vec![(0, 1.0)], Relation::Ge, 0.6), (vec![(0, 1.0)], Relation::Le, 0.3)], vec![(0, 1.0)]);
        assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn textbook_problem() {
        // max 3x + 2y, x + y <= 1.5, x - y = 0.25, in the unit box
        let p = lp(
            2,
            vec![(vec![(0, 1.0), (1, 1.0)], Relation::Le, 1.5), (vec![(0, 1.0), (1, -1.0)], Relation::Eq, 0.25)],
            vec![(0, 3.0), (1, 2.0)],
        );
        let s = solve_lp(&p).unwrap();
        assert!((s.values[0] - 0.875).abs() < 1e-9 && (s.values[1] - 0.625).abs() < 1e-9);
        assert!((s.objective - 3.875).abs() < 1e-9);
    }

    #[test]
    fn bound_changes_keep_working() {
        let p =
            lp(3, vec![(vec![(0, 1.0), (1, 1.0), (2, 1.0)], Relation::Eq, 1.0)], vec![(0, 3.0), (1, 2.0), (2, 1.0)]);
        let mut s = Simplex::new(&p).unwrap();
        assert!((s.solve().unwrap().objective - 3.0).abs() < 1e-12);
        s.set_bounds(0, 0.0, 0.0);
        assert!((s.solve().unwrap().objective - 2.0).abs() < 1e-12);
        s.set_bounds(1, 0.0, 0.0);
        assert!((s.solve().unwrap().objective - 1.0).abs() < 1e-12);
        s.set_bounds(2, 0.0, 0.0);
        assert_eq!(s.solve().unwrap().status, LpStatus::Infeasible);
        s.set_bounds(0, 0.0, 1.0);
        assert!((s.solve().unwrap().objective - 3.0).abs() < 1e-12);
    }

    #[test]
    fn singleton_and_empty_rows() {
        let p = lp(
            2,
            vec![
                (vec![(0, 2.0)], Relation::Le, 1.0),
                (vec![(1, -1.0)], Relation::Le, -0.25),
                (vec![(0, 1.0), (1, 1.0)], Relation::Le, 2.0),
            ],
            vec![(0, 1.0), (1, -1.0)],
        );
        let s = solve_lp(&p).unwrap();
        assert!((s.values[0] - 0.5).abs() < 1e-12 && (s.values[1] - 0.25).abs() < 1e-12);
        let mut s = Simplex::new(&p).unwrap();
        s.set_bounds(0, 0.75, 1.0);
        assert_eq!(s.solve().unwrap().status, LpStatus::Infeasible);
        s.set_bounds(0, 0.0, 1.0);
        assert_eq!(s.solve().unwrap().status, LpStatus::Optimal);
        let e = lp(1, vec![(vec![], Relation::Ge, 1.0)], vec![]);
        assert_eq!(solve_lp(&e).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn rejects_bad_bounds() {
        let mut p = lp(1, vec![], vec![]);
        p.lower[0] = 2.0;
        assert!(matches!(solve_lp(&p), Err(SolverError::InvalidProblem(_))));
    }

    #[test]
    fn f32_instantiation() {
        let mut p = LpProblem::<f32>::new(2);
        p.constraints = vec![LinearConstraint::new([(0, 1.0f32), (1, 1.0)], Relation::Le, 1.0)];
        p.objective = vec![(0, 1.0), (1, 2.0)];
        let s = solve_lp(&p).unwrap();
        assert!((s.objective - 2.0).abs() < 1e-5);
    }
}
