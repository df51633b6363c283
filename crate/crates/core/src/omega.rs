//! ω(S, n_j) by optimization over the efficient set.
//!
//! Each iteration solves the cut master problem over the points not
//! dominated by the pool. Its optimal value is an upper bound `UB` on every
//! efficient point not yet found; projecting its solution onto the efficient
//! set yields a new efficient point, whose coordinate sum may raise the lower
//! bound `LB`. The loop stops when the master is infeasible or the bounds
//! meet, and returns `LB`.
//!
//! The improved mode starts from the pure efficient points `M_k·e_k`, which
//! give tight big-M bounds and an initial `LB`. The baseline mode starts with
//! no structural knowledge: coarse Frobenius-based bounds, `LB = 1`, and a
//! pool seeded by projecting the uncut master solution.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::efficient::{build_ps, build_relaxation, project_to_efficient, CutPool, FeasibleRegion};
use crate::error::{Error, Result};
use crate::ilp::{SolveOutcome, Solver};
use crate::oracle::least_cover;
use crate::scalar::Scalar;
use crate::semigroup::NumericalSemigroup;

pub const DEFAULT_ITERATION_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Improved,
    Baseline,
}

/// Which pure points seed the cut pool in improved mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeedCuts {
    /// Only the pure point with the largest sum.
    Best,
    /// All `p − 1` pure points.
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OmegaConfig {
    pub mode: Mode,
    pub seed_cuts: SeedCuts,
    pub iteration_cap: usize,
    pub solver: Solver,
}

impl Default for OmegaConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Improved,
            seed_cuts: SeedCuts::Best,
            iteration_cap: DEFAULT_ITERATION_CAP,
            solver: Solver::default(),
        }
    }
}

impl OmegaConfig {
    pub fn baseline() -> Self {
        Self {
            mode: Mode::Baseline,
            ..Self::default()
        }
    }
}

/// Bounds derived from the pure efficient points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InitialBounds<T> {
    /// `M_k = min{x ≥ 1 : n_k·x − n_j ∈ S}`, with `M_j = 1`.
    pub upper: Vec<T>,
    pub lb0: T,
    /// Pure point achieving `lb0` (smallest index on ties); `e_j` when `p = 1`.
    pub seed: Vec<T>,
    /// Number of per-coordinate scans performed.
    pub scans: u64,
}

fn check_index<T: Scalar>(semigroup: &NumericalSemigroup<T>, j: usize) -> Result<usize> {
    let p = semigroup.embedding_dimension();
    if j < p {
        Ok(p)
    } else {
        Err(Error::InvalidIndex { index: j, dim: p })
    }
}

/// Per-coordinate minimum multiples for the target `n_j` (0-based `j`).
pub fn initial_bounds<T: Scalar>(semigroup: &NumericalSemigroup<T>, j: usize) -> Result<InitialBounds<T>> {
    let p = check_index(semigroup, j)?;
    let gens = semigroup.generators();
    let target = gens[j];
    let mut upper = vec![T::one(); p];
    let mut scans = 0;
    for k in (0..p).filter(|&k| k != j) {
        upper[k] = least_cover(semigroup, gens[k], target);
        scans += 1;
    }
    // First index attaining the largest bound; e_j when there is no other.
    let best = (0..p)
        .filter(|&k| k != j)
        .fold(None, |acc: Option<usize>, k| match acc {
            Some(b) if upper[b] >= upper[k] => Some(b),
            _ => Some(k),
        })
        .unwrap_or(j);
    let lb0 = upper[best].max(T::one());
    let mut seed = vec![T::zero(); p];
    seed[best] = upper[best];
    Ok(InitialBounds {
        upper,
        lb0,
        seed,
        scans,
    })
}

/// `⌈(F + 1 + n_j) / n_i⌉` per coordinate, valid without any scan.
pub fn coarse_bounds<T: Scalar>(semigroup: &NumericalSemigroup<T>, j: usize) -> Result<Vec<T>> {
    check_index(semigroup, j)?;
    let gens = semigroup.generators();
    let reach = semigroup.frobenius() + T::one() + gens[j];
    Ok(gens
        .iter()
        .map(|&n| div_ceil(reach, n).max(T::one()))
        .collect())
}

fn div_ceil<T: Scalar>(a: T, b: T) -> T {
    -((-a).div_floor(&b))
}

fn coordinate_sum<T: Scalar>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |acc, &v| acc + v)
}

/// One master solve followed by one projection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Iteration<T> {
    pub it: usize,
    /// Master solution (x part).
    pub ps: Vec<T>,
    pub ps_value: T,
    /// Efficient point obtained by projecting `ps`.
    pub ek: Vec<T>,
    pub ek_sum: T,
    /// Bounds after the projection.
    pub lb: T,
    pub ub: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// `p = 1`: the only minimal point is `e_j`.
    SingleGenerator,
    /// The master problem has no feasible point left.
    MasterInfeasible,
    /// The master value did not exceed the lower bound.
    UpperAtMostLower,
    /// A projection raised the lower bound to the master value.
    LowerReachedUpper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stop<T> {
    pub reason: StopReason,
    /// Master value of a final solve that was not followed by a projection.
    pub ps_value: Option<T>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub ubound_scans: u64,
    pub ps_solved: u64,
    pub ek_solved: u64,
}

impl Counts {
    /// Integer subproblems solved (masters plus projections).
    pub fn subproblems(&self) -> u64 {
        self.ps_solved + self.ek_solved
    }

    pub fn add(&mut self, other: &Counts) {
        self.ubound_scans += other.ubound_scans;
        self.ps_solved += other.ps_solved;
        self.ek_solved += other.ek_solved;
    }
}

/// Full record of one ω(S, n_j) computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaTrace<T> {
    pub generators: Vec<T>,
    pub element: T,
    pub omega: T,
    pub mode: Mode,
    pub lb0: T,
    #[serde(rename = "M")]
    pub upper: Vec<T>,
    pub iterations: Vec<Iteration<T>>,
    pub stop: Stop<T>,
    pub counts: Counts,
}

impl<T: Scalar> OmegaTrace<T> {
    /// Master values in order, including a final unprojected solve.
    pub fn ub_history(&self) -> Vec<T> {
        let mut ubs: Vec<T> = self.iterations.iter().map(|it| it.ub).collect();
        ubs.extend(self.stop.ps_value);
        ubs
    }

    /// Lower bounds in order, starting with the initial one.
    pub fn lb_history(&self) -> Vec<T> {
        std::iter::once(self.lb0)
            .chain(self.iterations.iter().map(|it| it.lb))
            .collect()
    }

    /// Efficient points found by projection, in order.
    pub fn efficient_points(&self) -> impl Iterator<Item = &[T]> {
        self.iterations.iter().map(|it| it.ek.as_slice())
    }
}

/// ω(S, n_j) for the generator at 0-based index `j`.
pub fn omega_element<T: Scalar>(
    semigroup: &NumericalSemigroup<T>,
    j: usize,
    config: &OmegaConfig,
) -> Result<OmegaTrace<T>> {
    let p = check_index(semigroup, j)?;
    let gens = semigroup.generators().to_vec();
    let mut counts = Counts::default();

    let (upper, lb0, pool) = match config.mode {
        Mode::Improved => {
            let init = initial_bounds(semigroup, j)?;
            counts.ubound_scans = init.scans;
            let pool = match config.seed_cuts {
                SeedCuts::Best => CutPool::from_points([init.seed.clone()])?,
                SeedCuts::All => CutPool::from_points((0..p).filter(|&k| k != j).map(|k| {
                    let mut e = vec![T::zero(); p];
                    e[k] = init.upper[k];
                    e
                }))?,
            };
            (init.upper, init.lb0, pool)
        }
        Mode::Baseline => (coarse_bounds(semigroup, j)?, T::one(), CutPool::new()),
    };

    let mut trace = OmegaTrace {
        generators: gens.clone(),
        element: gens[j],
        omega: lb0,
        mode: config.mode,
        lb0,
        upper: upper.clone(),
        iterations: Vec::new(),
        stop: Stop {
            reason: StopReason::SingleGenerator,
            ps_value: None,
        },
        counts,
    };
    if p == 1 {
        trace.omega = T::one();
        trace.upper = vec![T::one()];
        return Ok(trace);
    }

    let region = FeasibleRegion::new(semigroup, j, upper)?;
    trace.upper = region.upper().to_vec();
    let mut pool = pool;
    let mut lb = lb0;
    loop {
        if trace.iterations.len() >= config.iteration_cap {
            return Err(Error::IterationCapExceeded(config.iteration_cap));
        }
        let model = if pool.is_empty() {
            build_relaxation(&region)?
        } else {
            build_ps(&region, &pool)?
        };
        let outcome = config.solver.solve(&model)?;
        trace.counts.ps_solved += 1;
        let (solution, ub) = match outcome {
            SolveOutcome::Infeasible => {
                trace.stop = Stop {
                    reason: StopReason::MasterInfeasible,
                    ps_value: None,
                };
                break;
            }
            SolveOutcome::Optimal { solution, value } => (solution[..p].to_vec(), value),
        };
        if ub <= lb {
            trace.stop = Stop {
                reason: StopReason::UpperAtMostLower,
                ps_value: Some(ub),
            };
            break;
        }

        let projection = project_to_efficient(&region, &solution, &config.solver)?;
        trace.counts.ek_solved += 1;
        let ek_sum = coordinate_sum(&projection.point);
        lb = lb.max(ek_sum);
        pool.insert(projection.point.clone())?;
        trace.iterations.push(Iteration {
            it: trace.iterations.len() + 1,
            ps: solution,
            ps_value: ub,
            ek: projection.point,
            ek_sum,
            lb,
            ub,
        });
        if lb >= ub {
            trace.stop = Stop {
                reason: StopReason::LowerReachedUpper,
                ps_value: None,
            };
            break;
        }
    }
    trace.omega = lb;
    Ok(trace)
}

/// ω(S, s) for a generator given by value.
pub fn omega_of<T: Scalar>(semigroup: &NumericalSemigroup<T>, element: T, config: &OmegaConfig) -> Result<OmegaTrace<T>> {
    omega_element(semigroup, semigroup.index_of(element)?, config)
}

/// ω for every generator and the global ω(S).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmegaResult<T> {
    pub generators: Vec<T>,
    /// ω(S, n_j) in generator order.
    pub values: Vec<T>,
    pub omega: T,
    pub traces: Vec<OmegaTrace<T>>,
    /// Wall-clock per generator.
    pub elapsed_ms: Vec<f64>,
}

impl<T: Scalar> OmegaResult<T> {
    pub fn counts(&self) -> Counts {
        let mut total = Counts::default();
        for t in &self.traces {
            total.add(&t.counts);
        }
        total
    }
}

/// Runs [`omega_element`] for every generator, on up to `jobs` threads.
///
/// Results are identical to the sequential run whatever the scheduling.
pub fn omega_global<T: Scalar>(
    semigroup: &NumericalSemigroup<T>,
    config: &OmegaConfig,
    jobs: usize,
) -> Result<OmegaResult<T>> {
    let p = semigroup.embedding_dimension();
    let run = |j: usize| -> Result<(OmegaTrace<T>, f64)> {
        let start = Instant::now();
        let trace = omega_element(semigroup, j, config)?;
        Ok((trace, start.elapsed().as_secs_f64() * 1e3))
    };
    let runs: Vec<(OmegaTrace<T>, f64)> = if jobs <= 1 {
        (0..p).map(run).collect::<Result<_>>()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidModel(format!("thread pool: {e}")))?
            .install(|| (0..p).into_par_iter().map(run).collect::<Result<_>>())?
    };
    let (traces, elapsed_ms): (Vec<_>, Vec<_>) = runs.into_iter().unzip();
    let values: Vec<T> = traces.iter().map(|t| t.omega).collect();
    let omega = values.iter().copied().max().unwrap_or_else(T::one);
    Ok(OmegaResult {
        generators: semigroup.generators().to_vec(),
        values,
        omega,
        traces,
        elapsed_ms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = NumericalSemigroup<i64>;

    fn example() -> S {
        S::from_generators(&[6, 10, 14, 27]).unwrap()
    }

    #[test]
    fn initial_bounds_examples() {
        let init = initial_bounds(&example(), 3).unwrap();
        assert_eq!(init.upper, vec![9, 6, 5, 1]);
        assert_eq!(init.lb0, 9);
        assert_eq!(init.seed, vec![9, 0, 0, 0]);
        assert_eq!(init.scans, 3);

        let one = S::from_generators(&[1]).unwrap();
        let init = initial_bounds(&one, 0).unwrap();
        assert_eq!((init.lb0, init.seed), (1, vec![1]));

        let s = S::from_generators(&[3, 5]).unwrap();
        let init = initial_bounds(&s, 0).unwrap();
        assert_eq!(init.upper, vec![1, 3]);
        assert_eq!(init.lb0, 3);
        assert_eq!(init.seed, vec![0, 3]);
        assert!(initial_bounds(&s, 2).is_err());
    }

    #[test]
    fn seed_ties_pick_the_smallest_index() {
        // For n_j = 3 in ⟨3, 4, 5⟩: 4·2 − 3 = 5 and 5·2 − 3 = 7 are both in S.
        let s = S::from_generators(&[3, 4, 5]).unwrap();
        let init = initial_bounds(&s, 0).unwrap();
        assert_eq!(init.upper, vec![1, 2, 2]);
        assert_eq!(init.seed, vec![0, 2, 0]);
    }

    #[test]
    fn example_trace() {
        let trace = omega_of(&example(), 27, &OmegaConfig::default()).unwrap();
        assert_eq!(trace.omega, 10);
        let ubs = trace.ub_history();
        assert_eq!(ubs.first(), Some(&19));
        assert_eq!(ubs.last(), Some(&10));
        assert!(ubs.windows(2).all(|w| w[0] >= w[1]));
        let lbs = trace.lb_history();
        assert_eq!((lbs[0], *lbs.last().unwrap()), (9, 10));
        assert!(lbs.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(trace.iterations[0].ps, vec![8, 6, 5, 0]);
        assert_eq!(trace.iterations[0].ek_sum, 5);
        assert!(trace.iterations.len() <= 20);
    }

    #[test]
    fn degenerate_and_small() {
        let one = S::from_generators(&[1]).unwrap();
        let trace = omega_element(&one, 0, &OmegaConfig::default()).unwrap();
        assert_eq!(trace.omega, 1);
        assert_eq!(trace.stop.reason, StopReason::SingleGenerator);
        assert_eq!(omega_global(&one, &OmegaConfig::default(), 1).unwrap().omega, 1);

        let s = S::from_generators(&[3, 5]).unwrap();
        assert_eq!(omega_element(&s, 0, &OmegaConfig::default()).unwrap().omega, 3);
        let all = omega_global(&s, &OmegaConfig::default(), 2).unwrap();
        assert_eq!(all.values, vec![3, 5]);
        assert_eq!(all.omega, 5);
    }

    #[test]
    fn modes_and_seeds_agree_on_example() {
        let s = example();
        let best = omega_global(&s, &OmegaConfig::default(), 1).unwrap();
        assert_eq!(best.values, vec![2, 4, 4, 10]);
        let all = OmegaConfig {
            seed_cuts: SeedCuts::All,
            ..OmegaConfig::default()
        };
        assert_eq!(omega_global(&s, &all, 1).unwrap().values, best.values);
        assert_eq!(omega_global(&s, &OmegaConfig::baseline(), 1).unwrap().values, best.values);
    }

    #[test]
    fn all_seeds_tighten_the_first_master() {
        let s = example();
        let cfg = OmegaConfig {
            seed_cuts: SeedCuts::All,
            ..OmegaConfig::default()
        };
        let trace = omega_of(&s, 27, &cfg).unwrap();
        // Brute force over the box: best point (8, 5, 4, 0).
        assert_eq!(trace.ub_history()[0], 17);
        assert_eq!(trace.omega, 10);
    }

    #[test]
    fn iteration_cap() {
        let cfg = OmegaConfig {
            iteration_cap: 1,
            ..OmegaConfig::default()
        };
        assert_eq!(omega_of(&example(), 27, &cfg).unwrap_err(), Error::IterationCapExceeded(1));
    }
}
