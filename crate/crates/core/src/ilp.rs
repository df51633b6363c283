//! Exact branch and bound for bounded pure-integer linear programs.
//!
//! The search is depth first over variables in index order. Every node runs
//! interval bound propagation on all rows to a fixpoint and is pruned by an
//! optimistic objective bound computed from the current variable bounds. No
//! floating point is involved, so the optimum is exact.
//!
//! Among all optimal solutions the lexicographically smallest one (in the
//! variable order of the model) is returned, which makes every outcome
//! reproducible.
//!
//! When a suffix of the variables has zero objective and appears in a single
//! equality row only, the solver decides that suffix with a reachability
//! table instead of branching on it: once the other variables of the row are
//! fixed, the suffix is feasible iff the residual right-hand side is
//! reachable, and its lexicographically smallest completion is read back
//! from the same table.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default cap on explored branch-and-bound nodes.
pub const DEFAULT_NODE_LIMIT: u64 = 100_000_000;

/// Largest reachability table (cells over all tail levels) the solver builds.
const TAIL_TABLE_CAP: usize = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T: Scalar> Constraint<T> {
    pub fn is_satisfied(&self, x: &[T]) -> bool {
        let lhs = self
            .coeffs
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (&a, &v)| acc + a * v);
        match self.relation {
            Relation::Eq => lhs == self.rhs,
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

/// A pure-integer linear program with finite bounds on every variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegerProgram<T> {
    num_vars: usize,
    sense: Sense,
    objective: Vec<T>,
    lower: Vec<T>,
    upper: Vec<T>,
    constraints: Vec<Constraint<T>>,
    names: Vec<String>,
}

impl<T: Scalar> IntegerProgram<T> {
    /// A model with zero objective and every variable fixed to 0.
    pub fn new(num_vars: usize, sense: Sense) -> Self {
        Self {
            num_vars,
            sense,
            objective: vec![T::zero(); num_vars],
            lower: vec![T::zero(); num_vars],
            upper: vec![T::zero(); num_vars],
            constraints: Vec::new(),
            names: (0..num_vars).map(|i| format!("v{i}")).collect(),
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len == self.num_vars {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.num_vars,
                got: len,
            })
        }
    }

    fn check_var(&self, var: usize) -> Result<()> {
        if var < self.num_vars {
            Ok(())
        } else {
            Err(Error::InvalidModel(format!(
                "variable {var} out of range ({} variables)",
                self.num_vars
            )))
        }
    }

    pub fn set_objective(&mut self, coeffs: Vec<T>) -> Result<&mut Self> {
        self.check_len(coeffs.len())?;
        self.objective = coeffs;
        Ok(self)
    }

    pub fn set_objective_coeff(&mut self, var: usize, coeff: T) -> Result<&mut Self> {
        self.check_var(var)?;
        self.objective[var] = coeff;
        Ok(self)
    }

    pub fn set_bounds(&mut self, var: usize, lo: T, hi: T) -> Result<&mut Self> {
        self.check_var(var)?;
        if lo > hi {
            return Err(Error::InvalidModel(format!(
                "empty domain [{lo}, {hi}] for {}",
                self.names[var]
            )));
        }
        self.lower[var] = lo;
        self.upper[var] = hi;
        Ok(self)
    }

    pub fn set_name(&mut self, var: usize, name: impl Into<String>) -> Result<&mut Self> {
        self.check_var(var)?;
        self.names[var] = name.into();
        Ok(self)
    }

    pub fn add_constraint(&mut self, coeffs: Vec<T>, relation: Relation, rhs: T) -> Result<&mut Self> {
        self.check_len(coeffs.len())?;
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(self)
    }

    /// Adds `Σ coeff·x_var (relation) rhs` from a sparse term list.
    pub fn add_sparse(&mut self, terms: &[(usize, T)], relation: Relation, rhs: T) -> Result<&mut Self> {
        let mut coeffs = vec![T::zero(); self.num_vars];
        for &(var, c) in terms {
            self.check_var(var)?;
            coeffs[var] += c;
        }
        self.add_constraint(coeffs, relation, rhs)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn objective(&self) -> &[T] {
        &self.objective
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    pub fn constraints(&self) -> &[Constraint<T>] {
        &self.constraints
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn objective_value(&self, x: &[T]) -> T {
        self.objective
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (&c, &v)| acc + c * v)
    }

    /// Exact feasibility check of a full assignment.
    pub fn is_feasible(&self, x: &[T]) -> bool {
        x.len() == self.num_vars
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
            && self.constraints.iter().all(|c| c.is_satisfied(x))
    }
}

/// Human-readable dump, one item per line. Not a stable format.
impl<T: Scalar> fmt::Display for IntegerProgram<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let linear = |coeffs: &[T]| -> String {
            let terms: Vec<String> = coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| format!("{c}*{}", self.names[i]))
                .collect();
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            }
        };
        let sense = match self.sense {
            Sense::Maximize => "maximize",
            Sense::Minimize => "minimize",
        };
        writeln!(f, "{sense} {}", linear(&self.objective))?;
        for c in &self.constraints {
            writeln!(f, "  {} {} {}", linear(&c.coeffs), c.relation, c.rhs)?;
        }
        for i in 0..self.num_vars {
            writeln!(f, "  {} <= {} <= {}", self.lower[i], self.names[i], self.upper[i])?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SolveOutcome<T> {
    Optimal { solution: Vec<T>, value: T },
    Infeasible,
}

impl<T: Scalar> SolveOutcome<T> {
    pub fn is_optimal(&self) -> bool {
        matches!(self, SolveOutcome::Optimal { .. })
    }

    pub fn value(&self) -> Option<T> {
        match self {
            SolveOutcome::Optimal { value, .. } => Some(*value),
            SolveOutcome::Infeasible => None,
        }
    }

    pub fn solution(&self) -> Option<&[T]> {
        match self {
            SolveOutcome::Optimal { solution, .. } => Some(solution),
            SolveOutcome::Infeasible => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    /// Whether the equality-tail table was used.
    pub tail_table: bool,
}

/// Branch-and-bound configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Solver {
    pub node_limit: u64,
    /// Allows the reachability-table shortcut for equality tails.
    pub tail_table: bool,
}

impl Default for Solver {
    fn default() -> Self {
        Self {
            node_limit: DEFAULT_NODE_LIMIT,
            tail_table: true,
        }
    }
}

/// Solves `ip` with the default configuration.
pub fn solve<T: Scalar>(ip: &IntegerProgram<T>) -> Result<SolveOutcome<T>> {
    Solver::default().solve(ip)
}

impl Solver {
    pub fn with_node_limit(node_limit: u64) -> Self {
        Self {
            node_limit,
            ..Self::default()
        }
    }

    pub fn solve<T: Scalar>(&self, ip: &IntegerProgram<T>) -> Result<SolveOutcome<T>> {
        self.solve_with_stats(ip).map(|(outcome, _)| outcome)
    }

    pub fn solve_with_stats<T: Scalar>(&self, ip: &IntegerProgram<T>) -> Result<(SolveOutcome<T>, SolveStats)> {
        let mut search = Search::new(ip, *self)?;
        let outcome = search.run()?;
        let stats = SolveStats {
            nodes: search.nodes,
            tail_table: search.tail.is_some(),
        };
        Ok((outcome, stats))
    }
}

/// `lo ≤ Σ a·x ≤ hi` over the nonzero terms of one constraint.
struct Row<T> {
    terms: Vec<(usize, T)>,
    lo: Option<T>,
    hi: Option<T>,
}

/// `a·x ≤ r` solved for `x`, as a new (lower, upper) pair.
fn tighten_le<T: Scalar>(a: T, r: T, lo: &mut T, hi: &mut T) {
    if a > T::zero() {
        let bound = r.div_floor(&a);
        if bound < *hi {
            *hi = bound;
        }
    } else {
        let bound = div_ceil(r, a);
        if bound > *lo {
            *lo = bound;
        }
    }
}

/// `a·x ≥ r` solved for `x`.
fn tighten_ge<T: Scalar>(a: T, r: T, lo: &mut T, hi: &mut T) {
    tighten_le(-a, -r, lo, hi)
}

fn div_ceil<T: Scalar>(a: T, b: T) -> T {
    -((-a).div_floor(&b))
}

struct Search<'a, T> {
    ip: &'a IntegerProgram<T>,
    solver: Solver,
    rows: Vec<Row<T>>,
    var_rows: Vec<Vec<usize>>,
    /// Objective in maximization form.
    gain: Vec<T>,
    /// Variables branched on; the tail (if any) is excluded.
    head_len: usize,
    tail: Option<TailTable<T>>,
    /// An equality whose right-hand side misses the coefficient gcd.
    root_infeasible: bool,
    incumbent: Option<(T, Vec<T>)>,
    nodes: u64,
}

impl<'a, T: Scalar> Search<'a, T> {
    fn new(ip: &'a IntegerProgram<T>, solver: Solver) -> Result<Self> {
        let n = ip.num_vars;
        if ip.objective.len() != n || ip.lower.len() != n || ip.upper.len() != n {
            return Err(Error::InvalidModel("vector lengths disagree with num_vars".into()));
        }
        if let Some(i) = (0..n).find(|&i| ip.lower[i] > ip.upper[i]) {
            return Err(Error::InvalidModel(format!("empty domain for {}", ip.names[i])));
        }

        let magnitude: Vec<T> = (0..n)
            .map(|i| ip.lower[i].abs().max(ip.upper[i].abs()))
            .collect();
        let within = |coeffs: &[T], extra: T| -> Result<()> {
            let abs: Vec<T> = coeffs.iter().map(|c| c.abs()).collect();
            let total = crate::scalar::checked_dot(&abs, &magnitude).and_then(|t| t.checked_add(&extra.abs()));
            match total {
                Some(t) if t <= T::safe_limit() => Ok(()),
                _ => Err(Error::Overflow("model coefficients times bounds")),
            }
        };
        within(&ip.objective, T::zero())?;

        let mut rows = Vec::with_capacity(ip.constraints.len());
        let mut root_infeasible = false;
        let mut var_rows = vec![Vec::new(); n];
        for c in &ip.constraints {
            if c.coeffs.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: c.coeffs.len(),
                });
            }
            within(&c.coeffs, c.rhs)?;
            let mut terms: Vec<(usize, T)> = c
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(i, &a)| (i, a))
                .collect();
            // Dividing by the coefficient gcd rounds the right-hand side,
            // which propagation alone would only reach one unit at a time.
            let g = terms.iter().fold(T::zero(), |acc, (_, a)| acc.gcd(a));
            let g = if g.is_zero() { T::one() } else { g };
            for (_, a) in &mut terms {
                *a /= g;
            }
            let (lo, hi) = match c.relation {
                Relation::Eq if !c.rhs.is_multiple_of(&g) => {
                    root_infeasible = true;
                    (Some(T::zero()), Some(T::zero()))
                }
                Relation::Eq => (Some(c.rhs / g), Some(c.rhs / g)),
                Relation::Le => (None, Some(c.rhs.div_floor(&g))),
                Relation::Ge => (Some(div_ceil(c.rhs, g)), None),
            };
            for &(i, _) in &terms {
                var_rows[i].push(rows.len());
            }
            rows.push(Row { terms, lo, hi });
        }

        let gain = match ip.sense {
            Sense::Maximize => ip.objective.clone(),
            Sense::Minimize => ip.objective.iter().map(|&c| -c).collect(),
        };

        Ok(Self {
            ip,
            solver,
            rows,
            var_rows,
            gain,
            head_len: n,
            tail: None,
            root_infeasible,
            incumbent: None,
            nodes: 0,
        })
    }

    fn run(&mut self) -> Result<SolveOutcome<T>> {
        let n = self.ip.num_vars;
        let mut lo = self.ip.lower.clone();
        let mut hi = self.ip.upper.clone();

        // Free zero-objective variables outside every row sit at their lower bound.
        for i in 0..n {
            if self.var_rows[i].is_empty() && self.gain[i].is_zero() {
                hi[i] = lo[i];
            }
        }
        let all_rows: Vec<usize> = (0..self.rows.len()).collect();
        if self.root_infeasible || !self.propagate(&mut lo, &mut hi, all_rows) {
            return Ok(SolveOutcome::Infeasible);
        }
        if self.solver.tail_table {
            self.tail = self.detect_tail(&lo, &hi);
            if let Some(tail) = &self.tail {
                self.head_len = tail.start;
            }
        }

        self.branch(lo, hi)?;

        Ok(match self.incumbent.take() {
            Some((_, solution)) => {
                let value = self.ip.objective_value(&solution);
                SolveOutcome::Optimal { solution, value }
            }
            None => SolveOutcome::Infeasible,
        })
    }

    /// Bound propagation to a fixpoint; false when a row becomes infeasible.
    fn propagate(&self, lo: &mut [T], hi: &mut [T], mut queue: Vec<usize>) -> bool {
        let mut queued = vec![false; self.rows.len()];
        for &r in &queue {
            queued[r] = true;
        }
        while let Some(r) = queue.pop() {
            queued[r] = false;
            let row = &self.rows[r];
            let (mut min_act, mut max_act) = (T::zero(), T::zero());
            for &(i, a) in &row.terms {
                if a > T::zero() {
                    min_act += a * lo[i];
                    max_act += a * hi[i];
                } else {
                    min_act += a * hi[i];
                    max_act += a * lo[i];
                }
            }
            if row.hi.is_some_and(|b| min_act > b) || row.lo.is_some_and(|b| max_act < b) {
                return false;
            }
            for &(i, a) in &row.terms {
                if lo[i] == hi[i] {
                    continue;
                }
                let (own_min, own_max) = if a > T::zero() {
                    (a * lo[i], a * hi[i])
                } else {
                    (a * hi[i], a * lo[i])
                };
                let (mut new_lo, mut new_hi) = (lo[i], hi[i]);
                if let Some(b) = row.hi {
                    tighten_le(a, b - (min_act - own_min), &mut new_lo, &mut new_hi);
                }
                if let Some(b) = row.lo {
                    tighten_ge(a, b - (max_act - own_max), &mut new_lo, &mut new_hi);
                }
                if new_lo > new_hi {
                    return false;
                }
                if new_lo != lo[i] || new_hi != hi[i] {
                    lo[i] = new_lo;
                    hi[i] = new_hi;
                    for &other in &self.var_rows[i] {
                        if !queued[other] {
                            queued[other] = true;
                            queue.push(other);
                        }
                    }
                }
            }
        }
        true
    }

    /// Longest zero-gain suffix living in exactly one equality row.
    fn detect_tail(&self, lo: &[T], hi: &[T]) -> Option<TailTable<T>> {
        let n = self.ip.num_vars;
        let mut row_id: Option<usize> = None;
        let mut start = n;
        while start > 0 {
            let i = start - 1;
            if !self.gain[i].is_zero() {
                break;
            }
            match self.var_rows[i].as_slice() {
                [] => {}
                [r] if row_id.is_none_or(|cur| cur == *r) => {
                    let row = &self.rows[*r];
                    if row.lo.is_none() || row.lo != row.hi {
                        break;
                    }
                    row_id = Some(*r);
                }
                _ => break,
            }
            start = i;
        }
        let row_id = row_id?;
        if start == n {
            return None;
        }
        TailTable::build(&self.rows[row_id], start, lo, hi)
    }

    fn optimistic(&self, lo: &[T], hi: &[T]) -> T {
        self.gain
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (i, &g)| acc + if g > T::zero() { g * hi[i] } else { g * lo[i] })
    }

    fn dominated_by_incumbent(&self, bound: T, lo: &[T]) -> bool {
        match &self.incumbent {
            None => false,
            Some((best, sol)) => bound < *best || (bound == *best && lo > &sol[..]),
        }
    }

    fn branch(&mut self, lo: Vec<T>, hi: Vec<T>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.solver.node_limit {
            return Err(Error::LimitExceeded(self.solver.node_limit));
        }
        let bound = self.optimistic(&lo, &hi);
        if self.dominated_by_incumbent(bound, &lo) {
            return Ok(());
        }

        let mut tail_values = None;
        if let Some(tail) = &self.tail {
            if tail.head_terms.iter().all(|&(i, _)| lo[i] == hi[i]) {
                match tail.complete(&lo) {
                    Some(values) => tail_values = Some(values),
                    None => return Ok(()),
                }
            }
        }

        let Some(var) = (0..self.head_len).find(|&i| lo[i] < hi[i]) else {
            let mut solution = lo;
            if let Some(tail) = &self.tail {
                let values = tail_values.expect("all head variables fixed");
                solution[tail.start..].copy_from_slice(&values);
            }
            debug_assert!(self.ip.is_feasible(&solution));
            let value = self.optimistic(&solution, &solution);
            let better = match &self.incumbent {
                None => true,
                Some((best, sol)) => value > *best || (value == *best && solution < *sol),
            };
            if better {
                self.incumbent = Some((value, solution));
            }
            return Ok(());
        };

        let gain = self.gain[var];
        let descending = gain > T::zero();
        let (first, last) = (lo[var], hi[var]);
        // Bound contribution of `var` at the node, replaced per value below.
        let own = gain * if descending { last } else { first };
        let mut v = if descending { last } else { first };
        loop {
            if let Some((best, _)) = &self.incumbent {
                // Values are visited in non-increasing order of their bound.
                if bound - own + gain * v < *best {
                    break;
                }
            }
            let mut child_lo = lo.clone();
            let mut child_hi = hi.clone();
            child_lo[var] = v;
            child_hi[var] = v;
            if self.propagate(&mut child_lo, &mut child_hi, self.var_rows[var].clone()) {
                self.branch(child_lo, child_hi)?;
            }
            if v == if descending { first } else { last } {
                break;
            }
            if descending {
                v -= T::one();
            } else {
                v += T::one();
            }
        }
        Ok(())
    }
}

/// Reachability of `Σ a_k·u_k` for the tail variables, `u_k = x_k − lo_k`.
struct TailTable<T> {
    start: usize,
    /// Head variables of the row and their coefficients.
    head_terms: Vec<(usize, T)>,
    rhs: T,
    coeffs: Vec<T>,
    lower: Vec<T>,
    widths: Vec<T>,
    /// Σ a_k·lo_k over the tail.
    base: T,
    /// Smallest representable sum in the table domain.
    domain_lo: T,
    domain_len: usize,
    /// `levels[k][v]`: value `domain_lo + v` reachable by tail variables `k..`.
    levels: Vec<Vec<bool>>,
}

impl<T: Scalar> TailTable<T> {
    fn build(row: &Row<T>, start: usize, lo: &[T], hi: &[T]) -> Option<Self> {
        let n = lo.len();
        let rhs = row.hi.expect("equality row");
        let mut coeff_of = vec![T::zero(); n];
        for &(i, a) in &row.terms {
            coeff_of[i] = a;
        }
        let head_terms: Vec<(usize, T)> = row.terms.iter().copied().filter(|&(i, _)| i < start).collect();
        let coeffs: Vec<T> = coeff_of[start..].to_vec();
        let lower: Vec<T> = lo[start..].to_vec();
        let widths: Vec<T> = (start..n).map(|i| hi[i] - lo[i]).collect();
        let base = coeffs.iter().zip(&lower).fold(T::zero(), |acc, (&a, &l)| acc + a * l);

        let (mut pos, mut neg) = (T::zero(), T::zero());
        for (&a, &w) in coeffs.iter().zip(&widths) {
            if a > T::zero() {
                pos += a * w;
            } else {
                neg += a * w;
            }
        }
        // Residual range the head can produce at the root bounds.
        let (mut head_min, mut head_max) = (T::zero(), T::zero());
        for &(i, a) in &head_terms {
            if a > T::zero() {
                head_min += a * lo[i];
                head_max += a * hi[i];
            } else {
                head_min += a * hi[i];
                head_max += a * lo[i];
            }
        }
        let need_lo = rhs - head_max - base;
        let need_hi = rhs - head_min - base;

        // Same-sign partial sums are monotone, so values beyond the needed
        // range are never revisited.
        let (dom_lo, dom_hi) = if neg.is_zero() {
            (T::zero(), pos.min(need_hi))
        } else if pos.is_zero() {
            (neg.max(need_lo), T::zero())
        } else {
            (neg, pos)
        };
        let domain_len = if dom_hi < dom_lo {
            0
        } else {
            (dom_hi - dom_lo + T::one()).to_usize()?
        };
        if domain_len.checked_mul(coeffs.len() + 1)? > TAIL_TABLE_CAP {
            return None;
        }

        let len = coeffs.len();
        let mut levels = vec![Vec::new(); len + 1];
        let mut last = vec![false; domain_len];
        if let Some(zero) = index_in(T::zero(), dom_lo, domain_len) {
            last[zero] = true;
        }
        levels[len] = last;
        for k in (0..len).rev() {
            levels[k] = widen(&levels[k + 1], coeffs[k], widths[k]);
        }

        Some(Self {
            start,
            head_terms,
            rhs,
            coeffs,
            lower,
            widths,
            base,
            domain_lo: dom_lo,
            domain_len,
            levels,
        })
    }

    /// Lexicographically smallest tail values for the fixed head in `lo`.
    fn complete(&self, lo: &[T]) -> Option<Vec<T>> {
        let head = self.head_terms.iter().fold(T::zero(), |acc, &(i, a)| acc + a * lo[i]);
        let mut target = self.rhs - head - self.base;
        let at = |level: usize, v: T| index_in(v - self.domain_lo, T::zero(), self.domain_len).is_some_and(|idx| self.levels[level][idx]);
        if !at(0, target) {
            return None;
        }
        let mut values = Vec::with_capacity(self.coeffs.len());
        for k in 0..self.coeffs.len() {
            let a = self.coeffs[k];
            let mut u = T::zero();
            while !at(k + 1, target - a * u) {
                u += T::one();
                debug_assert!(u <= self.widths[k]);
            }
            target -= a * u;
            values.push(self.lower[k] + u);
        }
        Some(values)
    }
}

fn index_in<T: Scalar>(v: T, lo: T, len: usize) -> Option<usize> {
    if v < lo {
        return None;
    }
    (v - lo).to_usize().filter(|&i| i < len)
}

/// `out[v] = ∃u ∈ [0, width]: next[v − a·u]`, by a sliding window per
/// residue class of the stride `|a|`.
fn widen<T: Scalar>(next: &[bool], a: T, width: T) -> Vec<bool> {
    let len = next.len();
    if a.is_zero() || width.is_zero() || len == 0 {
        return next.to_vec();
    }
    let stride = a.abs().to_usize().unwrap_or(usize::MAX);
    let window = width.to_usize().unwrap_or(usize::MAX).saturating_add(1);
    let mut out = vec![false; len];
    for class in 0..stride.min(len) {
        let mut positions: Vec<usize> = (class..len).step_by(stride).collect();
        // A negative coefficient reaches upwards.
        if a < T::zero() {
            positions.reverse();
        }
        let mut count = 0usize;
        for (step, &idx) in positions.iter().enumerate() {
            count += usize::from(next[idx]);
            if step >= window {
                count -= usize::from(next[positions[step - window]]);
            }
            out[idx] = count > 0;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type Ip = IntegerProgram<i64>;

    fn binary(n: usize) -> Ip {
        let mut ip = Ip::new(n, Sense::Maximize);
        for i in 0..n {
            ip.set_bounds(i, 0, 1).unwrap();
        }
        ip
    }

    #[test]
    fn lexicographic_tie_break() {
        let mut ip = binary(2);
        ip.set_objective(vec![1, 1]).unwrap();
        ip.add_constraint(vec![1, 1], Relation::Le, 1).unwrap();
        assert_eq!(
            solve(&ip).unwrap(),
            SolveOutcome::Optimal {
                solution: vec![0, 1],
                value: 1
            }
        );
    }

    #[test]
    fn infeasible_by_bounds() {
        let mut ip = binary(1);
        ip.add_constraint(vec![1], Relation::Eq, 2).unwrap();
        assert_eq!(solve(&ip).unwrap(), SolveOutcome::Infeasible);
    }

    #[test]
    fn minimization() {
        let mut ip = Ip::new(2, Sense::Minimize);
        ip.set_bounds(0, 0, 10).unwrap().set_bounds(1, 0, 10).unwrap();
        ip.set_objective(vec![3, 2]).unwrap();
        ip.add_constraint(vec![1, 1], Relation::Ge, 4).unwrap();
        assert_eq!(
            solve(&ip).unwrap(),
            SolveOutcome::Optimal {
                solution: vec![0, 4],
                value: 8
            }
        );
    }

    fn semigroup_row(rhs: i64) -> Ip {
        // maximize x0 + x1 s.t. 6x0 + 10x1 − 6y0 − 10y1 − 14y2 = rhs
        let mut ip = Ip::new(5, Sense::Maximize);
        ip.set_bounds(0, 0, 9).unwrap().set_bounds(1, 0, 6).unwrap();
        for k in 2..5 {
            ip.set_bounds(k, 0, 20).unwrap();
        }
        ip.set_objective(vec![1, 1, 0, 0, 0]).unwrap();
        ip.add_constraint(vec![6, 10, -6, -10, -14], Relation::Eq, rhs).unwrap();
        ip
    }

    #[test]
    fn tail_table_matches_plain_search() {
        let plain = Solver {
            tail_table: false,
            ..Solver::default()
        };
        // Odd right-hand side against even coefficients.
        assert_eq!(solve(&semigroup_row(27)).unwrap(), SolveOutcome::Infeasible);

        let ip = semigroup_row(26);
        let (fast, stats) = Solver::default().solve_with_stats(&ip).unwrap();
        assert!(stats.tail_table);
        assert_eq!(fast, plain.solve(&ip).unwrap());
        assert_eq!(fast.value(), Some(15));
        assert!(ip.is_feasible(fast.solution().unwrap()));
    }

    #[test]
    fn node_limit_is_reported() {
        let mut ip = Ip::new(3, Sense::Maximize);
        for i in 0..3 {
            ip.set_bounds(i, 0, 50).unwrap();
        }
        ip.set_objective(vec![1, 1, 1]).unwrap();
        ip.add_constraint(vec![3, 5, 7], Relation::Le, 200).unwrap();
        let err = Solver::with_node_limit(10).solve(&ip).unwrap_err();
        assert_eq!(err, Error::LimitExceeded(10));
        // x = 50 uses 150 of the budget; the remaining 50 buys ten units of y.
        assert_eq!(solve(&ip).unwrap().value(), Some(60));
    }

    #[test]
    fn parity_infeasibility_at_the_root() {
        let mut ip = Ip::new(3, Sense::Maximize);
        for i in 0..3 {
            ip.set_bounds(i, 0, 1_000_000).unwrap();
        }
        ip.add_constraint(vec![2, 4, 6], Relation::Eq, 151).unwrap();
        let (outcome, stats) = Solver::default().solve_with_stats(&ip).unwrap();
        assert_eq!(outcome, SolveOutcome::Infeasible);
        assert_eq!(stats.nodes, 0);
    }

    #[test]
    fn overflow_guard() {
        let mut ip = Ip::new(1, Sense::Maximize);
        ip.set_bounds(0, 0, i64::MAX / 2).unwrap();
        ip.set_objective(vec![4]).unwrap();
        assert!(matches!(solve(&ip), Err(Error::Overflow(_))));
    }

    #[test]
    fn builder_rejects_bad_input() {
        let mut ip = Ip::new(2, Sense::Maximize);
        assert!(ip.set_bounds(0, 3, 1).is_err());
        assert!(ip.add_constraint(vec![1], Relation::Le, 0).is_err());
        assert!(ip.set_bounds(5, 0, 1).is_err());
    }

    #[test]
    fn dump_lists_every_row() {
        let mut ip = binary(2);
        ip.set_name(0, "x1").unwrap();
        ip.add_constraint(vec![1, 1], Relation::Le, 1).unwrap();
        let text = ip.to_string();
        assert!(text.contains("1*x1 + 1*v1 <= 1"));
        assert_eq!(text.lines().count(), 4);
    }
}
