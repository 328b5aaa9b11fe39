//! Power sums `Σ i^k` modulo a prime and the congruences they satisfy.
//!
//! For a prime `p`, `Σ_{i=0}^{p-1} i^k ≡ -1 (mod p)` when `k > 0` and
//! `(p-1) | k`, and `≡ 0` otherwise. Dropping the terms `i = 0, 1, p-1`
//! gives the inner sum over `2..=p-2`, which is `-3`, `-2` or `0` according
//! as `(p-1) | k`, `k` is even but not divisible by `p-1`, or `k` is odd.

use std::ops::RangeInclusive;

use super::{pow_mod, Residue};

/// `Σ i^k (mod p)` over `range`, evaluated term by term with `0^0 = 1`.
pub fn power_sum(range: RangeInclusive<u64>, k: u64, p: u64) -> Residue {
    let s = range.fold(0u64, |acc, i| (acc + pow_mod(i, k, p)) % p);
    Residue::from_reduced(s, p)
}

/// Predicted value of `Σ_{i=0}^{p-1} i^k (mod p)`.
pub fn full_power_sum_prediction(k: u64, p: u64) -> Residue {
    let v = if k > 0 && k.is_multiple_of(p - 1) { p - 1 } else { 0 };
    Residue::from_reduced(v, p)
}

/// Predicted value of `Σ_{i=2}^{p-2} i^k (mod p)`, for primes `p ≥ 5`.
pub fn inner_power_sum_prediction(k: u64, p: u64) -> Residue {
    let v: i128 = if k.is_multiple_of(p - 1) {
        -3
    } else if k.is_multiple_of(2) {
        -2
    } else {
        0
    };
    Residue::from_reduced(v.rem_euclid(p as i128) as u64, p)
}
