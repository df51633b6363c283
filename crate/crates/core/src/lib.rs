//! Exact computation of the ω-primality invariant of numerical semigroups.
//!
//! The invariant ω(S, n_j) is the largest coordinate sum among the
//! componentwise-minimal vectors `x ≥ 0` with `Σ n_i x_i − n_j ∈ S`. This
//! crate computes it by optimizing over the efficient set of a
//! multiobjective integer program: a cut master problem proposes points not
//! dominated by the efficient points found so far, and an efficiency test
//! projects each proposal onto an efficient point, until the lower and upper
//! bounds meet.
//!
//! * [`semigroup`]: construction, membership, Apéry set, factorizations.
//! * [`ilp`]: exact branch-and-bound solver for bounded integer programs.
//! * [`efficient`]: dominance, Pareto filtering, efficiency test and cut models.
//! * [`omega`]: the bound-driven iteration and its baseline variant.
//! * [`oracle`]: brute-force reference used for cross-validation.
//!
//! All algorithms are generic over the integer [`Scalar`]; the aliases below
//! fix it to `i64`.

pub mod efficient;
pub mod error;
pub mod ilp;
pub mod omega;
pub mod oracle;
pub mod scalar;
pub mod semigroup;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Numerical semigroup over 64-bit integers.
pub type Semigroup = semigroup::NumericalSemigroup<i64>;
/// Factorization over 64-bit integers.
pub type Factorization = semigroup::FactorizationVector<i64>;
/// Integer program over 64-bit integers.
pub type Program = ilp::IntegerProgram<i64>;
/// Solver outcome over 64-bit integers.
pub type Outcome = ilp::SolveOutcome<i64>;
/// Cut pool over 64-bit integers.
pub type Pool = efficient::CutPool<i64>;
/// Per-generator trace over 64-bit integers.
pub type Trace = omega::OmegaTrace<i64>;
/// Whole-semigroup result over 64-bit integers.
pub type Omega = omega::OmegaResult<i64>;
