//! Elementary number theory over machine integers.
//!
//! Everything here works on `u64` moduli with 128-bit intermediates. Inputs
//! that may be negative (numerators, matrix entries built from `c` and `d`)
//! are accepted as `i128` and reduced before use.

mod factor;
mod jacobi;
mod power_sums;
mod residue;

pub use factor::{factorize, is_prime, Factorization};
pub use jacobi::{jacobi, legendre_of_padic};
pub use power_sums::{full_power_sum_prediction, inner_power_sum_prediction, power_sum};
pub use residue::{mod_pow, rational_mod_p, Residue};

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduces any signed integer into `[0, m)`.
#[inline]
pub(crate) fn reduce(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, if `gcd(a, m) = 1`.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}
