use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::modular::{det_mod_p_entries, reduce_entry};
use super::IntMatrix;
use crate::arith::{inv_mod, is_prime};

/// Upper end of the CRT prime list; primes are taken in decreasing order below it.
const CRT_PRIME_CEILING: u64 = 1 << 62;

static CRT_PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

/// The first `count` primes below 2^62, largest first.
pub fn crt_primes(count: usize) -> Vec<u64> {
    let mut primes = CRT_PRIMES.lock().unwrap_or_else(|e| e.into_inner());
    let mut candidate = primes.last().copied().unwrap_or(CRT_PRIME_CEILING + 1);
    while primes.len() < count {
        candidate -= 2;
        if is_prime(candidate) {
            primes.push(candidate);
        }
    }
    primes[..count].to_vec()
}

/// `∏_rows Σ_j a_ij²`, the square of the Hadamard bound.
pub fn hadamard_bound_squared(m: &IntMatrix) -> BigInt {
    (0..m.dim()).map(|i| m.row(i).iter().map(|e| e * e).sum::<BigInt>()).product()
}

/// Exact determinant by multi-modular evaluation and CRT.
pub fn det_exact_crt(m: &IntMatrix) -> BigInt {
    let h2 = hadamard_bound_squared(m);
    if h2.is_zero() {
        return BigInt::zero();
    }
    // need modulus M > 2H, i.e. M^2 > 4H^2
    let target = h2 * 4u32;
    let mut count = 0;
    let mut modulus_sq = BigInt::one();
    while modulus_sq <= target {
        count += 1;
        let p = BigInt::from(crt_primes(count)[count - 1]);
        modulus_sq *= &p * &p;
    }
    let primes = crt_primes(count);

    let n = m.dim();
    let residues: Vec<u64> = primes
        .par_iter()
        .map(|&p| {
            let entries = m.entries().iter().map(|e| reduce_entry(e, p)).collect();
            det_mod_p_entries(entries, n, p)
        })
        .collect();

    // Garner-style incremental lift
    let mut value = BigInt::from(residues[0]);
    let mut modulus = BigInt::from(primes[0]);
    for (&p, &r) in primes.iter().zip(&residues).skip(1) {
        let pb = BigInt::from(p);
        let current = value.mod_floor(&pb).to_u64().expect("reduced");
        let m_mod_p = modulus.mod_floor(&pb).to_u64().expect("reduced");
        let diff = (r + p - current) % p;
        let inv = inv_mod(m_mod_p, p).expect("distinct primes are coprime");
        let t = ((diff as u128 * inv as u128) % p as u128) as u64;
        value += &modulus * BigInt::from(t);
        modulus *= pb;
    }
    assert!(&modulus * &modulus > target, "CRT modulus must exceed twice the Hadamard bound");
    if &value * 2u32 > modulus {
        value - modulus
    } else {
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(det_exact_crt(&IntMatrix::from_rows(&[vec![0, 0], vec![0, 0]]).unwrap()), BigInt::zero());
        assert_eq!(det_exact_crt(&IntMatrix::diag(&[1, 2, 3, 4])), BigInt::from(24));
        let m = IntMatrix::from_rows(&[vec![3, 4], vec![4, 3]]).unwrap();
        assert_eq!(det_exact_crt(&m), BigInt::from(-7));
    }

    #[test]
    fn needs_several_primes() {
        let big = i64::MAX;
        let m = IntMatrix::from_rows(&[vec![big, -big, 3], vec![big, big, -big], vec![7, big, big]]).unwrap();
        assert_eq!(det_exact_crt(&m), super::super::det_bareiss(&m));
    }

    #[test]
    fn primes_are_descending_and_prime() {
        let ps = crt_primes(4);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps.iter().all(|&p| is_prime(p) && p < CRT_PRIME_CEILING));
    }
}
