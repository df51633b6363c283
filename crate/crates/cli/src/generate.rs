//! Seeded random instances: `p` distinct integers drawn uniformly from
//! `[lo, hi]`, redrawn until they form a minimal generating system.

use num_integer::Integer;
use omega_core::Semigroup;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const DEFAULT_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("invalid generation parameters: {0}")]
    InvalidParameters(String),
    #[error("no minimal system of {p} generators in [{lo}, {hi}] after {attempts} attempts")]
    GenerationFailed { p: usize, lo: i64, hi: i64, attempts: usize },
}

pub fn generate_instance(p: usize, lo: i64, hi: i64, seed: u64) -> Result<Semigroup, GenerateError> {
    generate_instance_with(p, lo, hi, seed, DEFAULT_ATTEMPTS)
}

pub fn generate_instance_with(
    p: usize,
    lo: i64,
    hi: i64,
    seed: u64,
    attempts: usize,
) -> Result<Semigroup, GenerateError> {
    if p < 2 || lo < 1 || lo >= hi {
        return Err(GenerateError::InvalidParameters(format!(
            "need p >= 2 and 1 <= lo < hi, got p={p}, lo={lo}, hi={hi}"
        )));
    }
    let failed = GenerateError::GenerationFailed { p, lo, hi, attempts };
    let width = usize::try_from(hi - lo + 1).map_err(|_| failed.clone())?;
    if width < p {
        return Err(failed);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let draw: Vec<i64> = index::sample(&mut rng, width, p)
            .into_iter()
            .map(|i| lo + i as i64)
            .collect();
        if draw.iter().fold(0, |acc: i64, g| acc.gcd(g)) != 1 {
            continue;
        }
        match Semigroup::from_generators(&draw) {
            Ok(s) if s.embedding_dimension() == p => return Ok(s),
            _ => continue,
        }
    }
    Err(failed)
}
