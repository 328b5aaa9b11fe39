use num_integer::Integer;

use super::{mul_mod, pow_mod};
use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1 << 20;

/// Prime factorization of a positive 64-bit integer.
///
/// Invariant: `factors` is sorted by strictly increasing prime, every
/// exponent is at least one, and the product of `p^e` equals `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Euler's totient.
    pub fn totient(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| (p - 1) * p.pow(e - 1)).product()
    }

    /// The Möbius function.
    pub fn moebius(&self) -> i32 {
        if self.is_squarefree() {
            if self.factors.len().is_multiple_of(2) {
                1
            } else {
                -1
            }
        } else {
            0
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Deterministic Miller–Rabin for the full 64-bit range.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factors `n ≥ 1`: trial division up to 2^20, then Miller–Rabin and
/// Pollard rho on whatever cofactor is left.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("cannot factor 0"));
    }
    let mut primes = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d < TRIAL_LIMIT && d * d <= rest {
        while rest.is_multiple_of(d) {
            primes.push(d);
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        split_large(rest, &mut primes);
    }
    primes.sort_unstable();

    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization { value: n, factors })
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

/// Finds a nontrivial factor of an odd composite `n` (Brent's cycle variant).
fn pollard_brent(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut power = 1u64;
        let mut lam = 1u64;
        while g == 1 {
            if power == lam {
                x = y;
                power *= 2;
                lam = 0;
            }
            y = f(y);
            lam += 1;
            g = x.abs_diff(y).gcd(&n);
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(factorize(1).unwrap().factors(), &[]);
        assert_eq!(factorize(45).unwrap().factors(), &[(3, 2), (5, 1)]);
        assert_eq!(factorize(9973).unwrap().factors(), &[(9973, 1)]);
        assert!(factorize(0).is_err());
    }

    #[test]
    fn multiplicative_functions() {
        let f15 = factorize(15).unwrap();
        assert_eq!((f15.totient(), f15.moebius()), (8, 1));
        let f9 = factorize(9).unwrap();
        assert_eq!((f9.totient(), f9.moebius(), f9.is_squarefree()), (6, 0, false));
        assert_eq!(factorize(30).unwrap().moebius(), -1);
        assert_eq!(factorize(1).unwrap().totient(), 1);
        assert_eq!(factorize(1).unwrap().moebius(), 1);
    }

    #[test]
    fn large_cofactors() {
        // two primes just above the trial-division limit
        let (p, q) = (1_048_583u64, 1_048_601u64);
        assert!(is_prime(p) && is_prime(q));
        assert_eq!(factorize(p * q).unwrap().factors(), &[(p, 1), (q, 1)]);
        assert_eq!(factorize(p * p * 3).unwrap().factors(), &[(3, 1), (p, 2)]);
        let m61 = (1u64 << 61) - 1;
        assert_eq!(factorize(m61).unwrap().factors(), &[(m61, 1)]);
        // 2^64 - 1 = 3 * 5 * 17 * 257 * 641 * 65537 * 6700417
        let f = factorize(u64::MAX).unwrap();
        assert_eq!(f.primes().collect::<Vec<_>>(), vec![3, 5, 17, 257, 641, 65537, 6700417]);
    }

    #[test]
    fn primality_small_range() {
        let sieve: Vec<u64> = (0..2000).filter(|&n| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect();
        let mr: Vec<u64> = (0..2000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieve, mr);
        // strong pseudoprime to bases 2, 3, 5, 7
        assert!(!is_prime(3_215_031_751));
    }
}
