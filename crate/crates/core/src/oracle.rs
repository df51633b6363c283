//! Brute-force ω by enumerating the minimal elements of
//! `Z = {x ∈ ℤ₊^p : Σ n_i x_i − s ∈ S}` inside a finite box.
//!
//! The box is `Π [0, B_i]` with `B_i = min{x ≥ 1 : n_i·x − s ∈ S}`. Any
//! `z ∈ Z` with `z_i > B_i` dominates the pure point `B_i·e_i ∈ Z`, so every
//! minimal element lies in the box.

use crate::efficient::ParetoArchive;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::semigroup::NumericalSemigroup;

/// Default cap on the number of box points.
pub const DEFAULT_BOX_CAP: u128 = 100_000_000;

/// Least `x ≥ 1` with `n·x − s ∈ S`, by upward scan.
pub fn least_cover<T: Scalar>(semigroup: &NumericalSemigroup<T>, n: T, s: T) -> T {
    let mut x = T::one();
    while !semigroup.contains(n * x - s) {
        x += T::one();
    }
    x
}

/// Box bounds `B_i` for the element `s`.
pub fn box_bounds<T: Scalar>(semigroup: &NumericalSemigroup<T>, s: T) -> Vec<T> {
    semigroup
        .generators()
        .iter()
        .map(|&n| least_cover(semigroup, n, s))
        .collect()
}

/// Minimal elements of `Z` for `s`, in lexicographic order.
pub fn cover_minimals<T: Scalar>(semigroup: &NumericalSemigroup<T>, s: T) -> Result<Vec<Vec<T>>> {
    cover_minimals_capped(semigroup, s, DEFAULT_BOX_CAP)
}

pub fn cover_minimals_capped<T: Scalar>(
    semigroup: &NumericalSemigroup<T>,
    s: T,
    box_cap: u128,
) -> Result<Vec<Vec<T>>> {
    if !semigroup.contains(s) {
        return Err(Error::NotInSemigroup(s.to_string()));
    }
    let bounds = box_bounds(semigroup, s);
    let volume = bounds.iter().try_fold(1u128, |acc, b| {
        b.to_u128()
            .and_then(|b| b.checked_add(1))
            .and_then(|w| acc.checked_mul(w))
    });
    match volume {
        Some(v) if v <= box_cap => {}
        v => {
            return Err(Error::BoxTooLarge {
                volume: v.unwrap_or(u128::MAX),
                cap: box_cap,
            })
        }
    }

    let gens = semigroup.generators();
    let p = gens.len();
    let in_z = |value: T| semigroup.contains(value - s);
    let mut archive = ParetoArchive::new();
    let mut x = vec![T::zero(); p];
    let mut value = T::zero();
    // Odometer, first coordinate fastest.
    loop {
        // Z is closed upwards, so x is minimal iff no x − e_i stays in Z;
        // only those candidates reach the archive.
        if in_z(value) && (0..p).all(|i| x[i].is_zero() || !in_z(value - gens[i])) {
            archive.insert(&x);
        }
        let mut i = 0;
        while i < p && x[i] == bounds[i] {
            value -= gens[i] * x[i];
            x[i] = T::zero();
            i += 1;
        }
        if i == p {
            break;
        }
        x[i] += T::one();
        value += gens[i];
    }
    Ok(archive.into_sorted())
}

/// ω(S, s) as the largest coordinate sum over [`cover_minimals`].
pub fn omega_oracle<T: Scalar>(semigroup: &NumericalSemigroup<T>, s: T) -> Result<T> {
    omega_oracle_capped(semigroup, s, DEFAULT_BOX_CAP)
}

pub fn omega_oracle_capped<T: Scalar>(semigroup: &NumericalSemigroup<T>, s: T, box_cap: u128) -> Result<T> {
    Ok(cover_minimals_capped(semigroup, s, box_cap)?
        .iter()
        .map(|x| x.iter().fold(T::zero(), |acc, &v| acc + v))
        .max()
        .unwrap_or_else(T::zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = NumericalSemigroup<i64>;

    #[test]
    fn example_semigroup() {
        let s = S::from_generators(&[6, 10, 14, 27]).unwrap();
        assert_eq!(box_bounds(&s, 27), vec![9, 6, 5, 1]);
        let mins = cover_minimals(&s, 27).unwrap();
        assert_eq!(mins.len(), 14);
        assert!(mins.contains(&vec![9, 0, 0, 0]));
        assert!(mins.contains(&vec![8, 2, 0, 0]));
        assert_eq!(omega_oracle(&s, 27), Ok(10));
        let others: Vec<i64> = [6, 10, 14].iter().map(|&n| omega_oracle(&s, n).unwrap()).collect();
        assert_eq!(others, vec![2, 4, 4]);
    }

    #[test]
    fn small_cases() {
        let s = S::from_generators(&[3, 5]).unwrap();
        assert_eq!(cover_minimals(&s, 3).unwrap(), vec![vec![0, 3], vec![1, 0]]);
        assert_eq!(omega_oracle(&s, 3), Ok(3));
        assert_eq!(omega_oracle(&s, 5), Ok(5));
        let one = S::from_generators(&[1]).unwrap();
        assert_eq!(cover_minimals(&one, 1).unwrap(), vec![vec![1]]);
        assert_eq!(omega_oracle(&one, 1), Ok(1));
        assert_eq!(omega_oracle(&s, 0), Ok(0));
    }

    #[test]
    fn rejects_non_elements_and_large_boxes() {
        let s = S::from_generators(&[3, 5]).unwrap();
        assert!(matches!(cover_minimals(&s, 7), Err(Error::NotInSemigroup(_))));
        assert!(matches!(
            cover_minimals_capped(&s, 3, 3),
            Err(Error::BoxTooLarge { volume: 8, cap: 3 })
        ));
    }
}
