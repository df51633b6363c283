//! Numerical semigroups: minimal generating systems, Apéry sets with respect
//! to the multiplicity, Frobenius numbers and factorizations.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A numerical semigroup `S = ⟨n_1, …, n_p⟩` given by its minimal generators.
///
/// The Apéry table `w[r]` holds the least element of `S` congruent to `r`
/// modulo the multiplicity `n_1`, which makes membership an O(1) test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumericalSemigroup<T> {
    generators: Vec<T>,
    apery: Vec<T>,
    frobenius: T,
}

/// A factorization `x` of `value = Σ n_i x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FactorizationVector<T> {
    pub coords: Vec<T>,
    pub value: T,
}

impl<T: Scalar> FactorizationVector<T> {
    /// Number of atoms in the factorization.
    pub fn length(&self) -> T {
        self.coords.iter().fold(T::zero(), |acc, &c| acc + c)
    }
}

impl<T: Scalar> NumericalSemigroup<T> {
    /// Builds the semigroup generated by `raw`, reduced to its minimal
    /// generating system.
    pub fn from_generators(raw: &[T]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(bad) = raw.iter().find(|&&g| g <= T::zero()) {
            return Err(Error::ZeroGenerator(bad.to_string()));
        }
        let gcd = raw.iter().fold(T::zero(), |acc, g| acc.gcd(g));
        if gcd != T::one() {
            return Err(Error::NonCoprime(gcd.to_string()));
        }

        let mut sorted = raw.to_vec();
        sorted.sort_unstable();
        sorted.dedup();

        // A generator can only be written with strictly smaller ones, so a
        // single ascending pass against the kept prefix reaches the fixed point.
        let multiplicity = sorted[0];
        let mut kept = vec![multiplicity];
        let mut dist = shortest_residues(multiplicity, &kept)?;
        for &g in &sorted[1..] {
            let r = residue(g, multiplicity);
            if matches!(dist[r], Some(w) if w <= g) {
                continue;
            }
            kept.push(g);
            dist = shortest_residues(multiplicity, &kept)?;
        }

        let apery: Vec<T> = dist
            .into_iter()
            .map(|w| w.expect("gcd 1 makes every residue reachable"))
            .collect();
        let frobenius = *apery.iter().max().expect("non-empty table") - multiplicity;

        let sg = Self {
            generators: kept,
            apery,
            frobenius,
        };
        sg.check_magnitude()?;
        Ok(sg)
    }

    /// Rejects semigroups whose big-M sums could leave the safe range.
    ///
    /// Every per-coordinate bound used downstream is at most
    /// `⌈(F + 1 + n_j) / n_i⌉`, so `Σ n_i M_i ≤ p·(F + 1 + 2·n_p)`.
    fn check_magnitude(&self) -> Result<()> {
        let largest = *self.generators.last().expect("non-empty");
        let per_coord = self
            .frobenius
            .checked_add(&T::one())
            .and_then(|v| v.checked_add(&largest))
            .and_then(|v| v.checked_add(&largest));
        let total = per_coord.and_then(|v| v.checked_mul(&T::from_count(self.generators.len())));
        match total {
            Some(t) if t <= T::safe_limit() >> 1 => Ok(()),
            _ => Err(Error::Overflow("semigroup too large for the scalar type")),
        }
    }

    pub fn generators(&self) -> &[T] {
        &self.generators
    }

    /// Embedding dimension `p`.
    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    /// Smallest generator `n_1`.
    pub fn multiplicity(&self) -> T {
        self.generators[0]
    }

    /// Apéry table with respect to the multiplicity, indexed by residue.
    pub fn apery(&self) -> &[T] {
        &self.apery
    }

    /// Largest integer outside `S`; `-1` when `S` is all of `ℤ₊`.
    pub fn frobenius(&self) -> T {
        self.frobenius
    }

    pub fn contains(&self, s: T) -> bool {
        s >= T::zero() && s >= self.apery[residue(s, self.multiplicity())]
    }

    /// Position of the generator with value `n` in the minimal system.
    pub fn index_of(&self, n: T) -> Result<usize> {
        self.generators
            .binary_search(&n)
            .map_err(|_| Error::NotAGenerator(n.to_string()))
    }

    /// Every `x ≥ 0` with `Σ n_i x_i = s`, in lexicographic order.
    pub fn factorizations(&self, s: T) -> Vec<FactorizationVector<T>> {
        let mut out = Vec::new();
        if !self.contains(s) {
            return out;
        }
        let mut coords = vec![T::zero(); self.generators.len()];
        self.factorize_from(0, s, &mut coords, &mut |c| {
            out.push(FactorizationVector {
                coords: c.to_vec(),
                value: s,
            })
        });
        out
    }

    fn factorize_from(&self, i: usize, rest: T, coords: &mut [T], emit: &mut impl FnMut(&[T])) {
        let n = self.generators[i];
        if i + 1 == self.generators.len() {
            if rest.is_multiple_of(&n) {
                coords[i] = rest / n;
                emit(coords);
                coords[i] = T::zero();
            }
            return;
        }
        let mut x = T::zero();
        let mut r = rest;
        while r >= T::zero() {
            coords[i] = x;
            self.factorize_from(i + 1, r, coords, emit);
            x += T::one();
            r -= n;
        }
        coords[i] = T::zero();
    }
}

fn residue<T: Scalar>(v: T, modulus: T) -> usize {
    v.mod_floor(&modulus)
        .to_usize()
        .expect("residue below the multiplicity")
}

/// Largest multiplicity whose Apéry table is built.
pub const MAX_MULTIPLICITY: usize = 1 << 24;

/// Dijkstra over the residues modulo `modulus`, arcs weighted by `gens`.
/// Entry `r` is the least combination of `gens` congruent to `r`, if any.
fn shortest_residues<T: Scalar>(modulus: T, gens: &[T]) -> Result<Vec<Option<T>>> {
    let size = modulus
        .to_usize()
        .filter(|&m| m <= MAX_MULTIPLICITY)
        .ok_or(Error::Overflow("multiplicity beyond the Apéry table cap"))?;
    let mut dist: Vec<Option<T>> = vec![None; size];
    dist[0] = Some(T::zero());
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((T::zero(), 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if dist[r] != Some(d) {
            continue;
        }
        for &g in gens.iter().filter(|&&g| g != modulus) {
            let nd = d.checked_add(&g).ok_or(Error::Overflow("Apéry table"))?;
            let nr = residue(nd, modulus);
            if dist[nr].is_none_or(|cur| nd < cur) {
                dist[nr] = Some(nd);
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    Ok(dist)
}
