//! Dominance machinery for the coordinate-minimization multiobjective
//! problem behind ω.
//!
//! The feasible region is `{(x, y) ∈ ℤ₊^p × ℤ₊^p : Σ n_i x_i − Σ n_i y_i = n_j}`
//! and the criteria are the coordinates of `x`, all minimized. A point is
//! efficient when no other feasible `x` is componentwise smaller.
//!
//! Two integer programs are built here:
//!
//! * the efficiency test, which maximizes the total slack `Ψ = Σ(x̃_i − x_i)`
//!   over feasible `x ≤ x̃`; `Ψ = 0` iff `x̃` is efficient, and otherwise its
//!   `x` part is an efficient point dominating `x̃`;
//! * the cut master problem, which maximizes `Σ x_i` over feasible points not
//!   dominated by (nor equal to) any point of a [`CutPool`]. Each pool point
//!   `x̂` gets binaries `k_i` with `x_i ≤ k_i(x̂_i − 1) − M_i(k_i − 1)` and
//!   `Σ_i k_i ≥ 1`, i.e. some coordinate must drop strictly below `x̂`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ilp::{IntegerProgram, Relation, Sense, SolveOutcome, Solver};
use crate::scalar::Scalar;
use crate::semigroup::NumericalSemigroup;

/// `a ≤ b` componentwise with `a ≠ b`.
pub fn dominates<T: Scalar>(a: &[T], b: &[T]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(weakly_below(a, b) && a != b)
}

fn weakly_below<T: Scalar>(a: &[T], b: &[T]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Incrementally maintained set of mutually non-dominated vectors.
#[derive(Clone, Debug, Default)]
pub struct ParetoArchive<T> {
    points: Vec<Vec<T>>,
}

impl<T: Scalar> ParetoArchive<T> {
    pub fn new() -> Self {
        Self { points: Vec::new() }
    }

    /// Adds `x` unless an archived point is below or equal to it; evicts the
    /// points `x` dominates. Returns whether `x` was kept.
    pub fn insert(&mut self, x: &[T]) -> bool {
        if self.points.iter().any(|p| weakly_below(p, x)) {
            return false;
        }
        self.points.retain(|p| !weakly_below(x, p));
        self.points.push(x.to_vec());
        true
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The archive in lexicographic order.
    pub fn into_sorted(mut self) -> Vec<Vec<T>> {
        self.points.sort();
        self.points
    }
}

/// The points not dominated by any other input point, deduplicated and in
/// lexicographic order.
pub fn pareto_minimals<T: Scalar>(points: &[Vec<T>]) -> Vec<Vec<T>> {
    // Any dominator has a strictly smaller sum, so it is archived first.
    let mut order: Vec<&Vec<T>> = points.iter().collect();
    order.sort_by_cached_key(|p| (p.iter().fold(T::zero(), |acc, &v| acc + v), (*p).clone()));
    let mut archive = ParetoArchive::new();
    for p in order {
        archive.insert(p);
    }
    archive.into_sorted()
}

/// The region of `(x, y)` for the target generator `n_j`, with big-M bounds.
#[derive(Clone, Debug)]
pub struct FeasibleRegion<'a, T> {
    semigroup: &'a NumericalSemigroup<T>,
    target: usize,
    upper: Vec<T>,
    y_upper: Vec<T>,
}

impl<'a, T: Scalar> FeasibleRegion<'a, T> {
    /// `upper[i]` bounds `x_i`; the target coordinate is forced to 1.
    pub fn new(semigroup: &'a NumericalSemigroup<T>, target: usize, mut upper: Vec<T>) -> Result<Self> {
        let p = semigroup.embedding_dimension();
        if target >= p {
            return Err(Error::InvalidIndex { index: target, dim: p });
        }
        if upper.len() != p {
            return Err(Error::LengthMismatch {
                expected: p,
                got: upper.len(),
            });
        }
        upper[target] = T::one();
        if let Some(bad) = upper.iter().find(|&&m| m < T::one()) {
            return Err(Error::InvalidModel(format!("big-M bound {bad} below 1")));
        }
        let gens = semigroup.generators();
        let total = crate::scalar::checked_dot(gens, &upper)
            .filter(|&t| t <= T::safe_limit() >> 1)
            .ok_or(Error::Overflow("Σ n_i·M_i"))?;
        let spare = total - gens[target];
        let y_upper = gens.iter().map(|&n| spare / n).collect();
        Ok(Self {
            semigroup,
            target,
            upper,
            y_upper,
        })
    }

    pub fn semigroup(&self) -> &'a NumericalSemigroup<T> {
        self.semigroup
    }

    pub fn dim(&self) -> usize {
        self.upper.len()
    }

    /// Index `j` of the target generator.
    pub fn target(&self) -> usize {
        self.target
    }

    /// Target generator value `n_j`.
    pub fn target_value(&self) -> T {
        self.semigroup.generators()[self.target]
    }

    /// Big-M vector.
    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    pub fn y_upper(&self) -> &[T] {
        &self.y_upper
    }

    /// Whether some `y ≥ 0` completes `x`, i.e. `Σ n_i x_i − n_j ∈ S`.
    pub fn admits(&self, x: &[T]) -> bool {
        x.len() == self.dim()
            && x.iter().all(|&v| v >= T::zero())
            && crate::scalar::checked_dot(self.semigroup.generators(), x)
                .is_some_and(|s| self.semigroup.contains(s - self.target_value()))
    }

    fn check_point(&self, x: &[T]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        if x.iter().zip(&self.upper).any(|(&v, &m)| v < T::zero() || v > m) {
            return Err(Error::InfeasibleInput(format!("{x:?} outside [0, {:?}]", self.upper)));
        }
        Ok(())
    }

    /// Appends the region equality `Σ n_i x_i − Σ n_i y_i = n_j`.
    fn add_region_row(&self, ip: &mut IntegerProgram<T>, y_start: usize) -> Result<()> {
        let gens = self.semigroup.generators();
        let mut terms: Vec<(usize, T)> = gens.iter().enumerate().map(|(i, &n)| (i, n)).collect();
        terms.extend(gens.iter().enumerate().map(|(i, &n)| (y_start + i, -n)));
        ip.add_sparse(&terms, Relation::Eq, self.target_value())?;
        for (i, &bound) in self.y_upper.iter().enumerate() {
            ip.set_bounds(y_start + i, T::zero(), bound)?;
            ip.set_name(y_start + i, format!("y{}", i + 1))?;
        }
        Ok(())
    }

    fn name_x(&self, ip: &mut IntegerProgram<T>) -> Result<()> {
        for i in 0..self.dim() {
            ip.set_name(i, format!("x{}", i + 1))?;
        }
        Ok(())
    }
}

/// Mutually non-dominated efficient points feeding the dominance cuts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CutPool<T> {
    points: Vec<Vec<T>>,
}

impl<T: Scalar> CutPool<T> {
    pub fn new() -> Self {
        Self { points: Vec::new() }
    }

    pub fn from_points(points: impl IntoIterator<Item = Vec<T>>) -> Result<Self> {
        let mut pool = Self::new();
        for p in points {
            pool.insert(p)?;
        }
        Ok(pool)
    }

    /// Adds `x`; rejects points equal or comparable to a stored one.
    pub fn insert(&mut self, x: Vec<T>) -> Result<()> {
        if let Some(first) = self.points.first() {
            if first.len() != x.len() {
                return Err(Error::LengthMismatch {
                    expected: first.len(),
                    got: x.len(),
                });
            }
        }
        if self.points.iter().any(|p| weakly_below(p, &x) || weakly_below(&x, p)) {
            return Err(Error::PoolConflict(format!("{x:?}")));
        }
        self.points.push(x);
        Ok(())
    }

    /// A new pool extended by `x`.
    pub fn with_point(&self, x: Vec<T>) -> Result<Self> {
        let mut next = self.clone();
        next.insert(x)?;
        Ok(next)
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Efficiency-test model for `x̃`.
///
/// Variables: `x_i` at `i`, `ψ_i` at `p + i`, `y_i` at `2p + i`.
pub fn build_ek<T: Scalar>(region: &FeasibleRegion<'_, T>, tested: &[T]) -> Result<IntegerProgram<T>> {
    region.check_point(tested)?;
    let p = region.dim();
    let mut ip = IntegerProgram::new(3 * p, Sense::Maximize);
    region.name_x(&mut ip)?;
    for (i, &v) in tested.iter().enumerate() {
        ip.set_bounds(i, T::zero(), v)?;
        ip.set_bounds(p + i, T::zero(), v)?;
        ip.set_name(p + i, format!("psi{}", i + 1))?;
        ip.set_objective_coeff(p + i, T::one())?;
        ip.add_sparse(&[(i, T::one()), (p + i, T::one())], Relation::Eq, v)?;
    }
    region.add_region_row(&mut ip, 2 * p)?;
    Ok(ip)
}

/// Result of projecting a feasible point onto the efficient set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Projection<T> {
    /// Efficient point below the input.
    pub point: Vec<T>,
    /// Total slack; zero iff the input was already efficient.
    pub psi: T,
}

/// Solves the efficiency test for `x̃`.
pub fn project_to_efficient<T: Scalar>(
    region: &FeasibleRegion<'_, T>,
    tested: &[T],
    solver: &Solver,
) -> Result<Projection<T>> {
    let ip = build_ek(region, tested)?;
    match solver.solve(&ip)? {
        SolveOutcome::Optimal { solution, value } => Ok(Projection {
            point: solution[..region.dim()].to_vec(),
            psi: value,
        }),
        SolveOutcome::Infeasible => Err(Error::InfeasibleInput(format!(
            "{tested:?} admits no completion in the region"
        ))),
    }
}

/// Cut master model over the points not dominated by the pool.
///
/// Variables: `x_i` at `i`, `k_i^r` at `p + r·p + i`, `y_i` after all
/// activators. `x_j` is fixed to 0.
pub fn build_ps<T: Scalar>(region: &FeasibleRegion<'_, T>, pool: &CutPool<T>) -> Result<IntegerProgram<T>> {
    if pool.is_empty() {
        return Err(Error::EmptyPool);
    }
    let p = region.dim();
    if pool.points()[0].len() != p {
        return Err(Error::LengthMismatch {
            expected: p,
            got: pool.points()[0].len(),
        });
    }
    let mut ip = master(region, p * pool.len())?;
    let upper = region.upper();
    for (r, point) in pool.points().iter().enumerate() {
        let mut any = Vec::with_capacity(p);
        for i in 0..p {
            let k = p + r * p + i;
            ip.set_bounds(k, T::zero(), T::one())?;
            ip.set_name(k, format!("k{}_{}", r + 1, i + 1))?;
            // x_i ≤ k(x̂_i − 1) − M_i(k − 1)  ⇔  x_i + (M_i − x̂_i + 1)·k ≤ M_i
            let activator = upper[i] - point[i] + T::one();
            ip.add_sparse(&[(i, T::one()), (k, activator)], Relation::Le, upper[i])?;
            any.push((k, T::one()));
        }
        ip.add_sparse(&any, Relation::Ge, T::one())?;
    }
    Ok(ip)
}

/// The master problem without any cut: `max Σ x_i` over the region.
pub fn build_relaxation<T: Scalar>(region: &FeasibleRegion<'_, T>) -> Result<IntegerProgram<T>> {
    master(region, 0)
}

fn master<T: Scalar>(region: &FeasibleRegion<'_, T>, activators: usize) -> Result<IntegerProgram<T>> {
    let p = region.dim();
    let mut ip = IntegerProgram::new(2 * p + activators, Sense::Maximize);
    region.name_x(&mut ip)?;
    for (i, &m) in region.upper().iter().enumerate() {
        let hi = if i == region.target() { T::zero() } else { m };
        ip.set_bounds(i, T::zero(), hi)?;
        ip.set_objective_coeff(i, T::one())?;
    }
    region.add_region_row(&mut ip, p + activators)?;
    Ok(ip)
}
