use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::IntMatrix;
use crate::arith::{inv_mod, is_prime, reduce, Residue};
use crate::error::{Error, Result};

/// Montgomery arithmetic for an odd modulus below 2^63.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Montgomery {
    p: u64,
    neg_inv: u64,
    r2: u64,
}

impl Montgomery {
    pub(crate) fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < 1 << 63, "Montgomery needs an odd modulus below 2^63");
        // Newton iteration: each step doubles the number of correct low bits
        let mut inv = p;
        for _ in 0..5 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Montgomery { p, neg_inv: inv.wrapping_neg(), r2 }
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline(always)]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline(always)]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub(crate) fn enter(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    pub(crate) fn leave(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }
}

/// Determinant modulo the odd prime `p` of a row-major `dim × dim` matrix
/// whose entries are already reduced into `[0, p)`.
///
/// Gaussian elimination with the first nonzero entry of each column as pivot.
pub fn det_mod_p_entries(mut a: Vec<u64>, dim: usize, p: u64) -> u64 {
    assert_eq!(a.len(), dim * dim);
    let mg = Montgomery::new(p);
    for v in a.iter_mut() {
        *v = mg.enter(*v);
    }
    let mut det = mg.enter(1);
    let mut negate = false;
    for k in 0..dim {
        let Some(r) = (k..dim).find(|&r| a[r * dim + k] != 0) else {
            return 0;
        };
        if r != k {
            for j in 0..dim {
                a.swap(k * dim + j, r * dim + j);
            }
            negate = !negate;
        }
        let pivot = a[k * dim + k];
        det = mg.mul(det, pivot);
        let inv = mg.enter(inv_mod(mg.leave(pivot), p).expect("nonzero pivot mod a prime"));
        let (head, tail) = a.split_at_mut((k + 1) * dim);
        let pivot_row = &head[k * dim + k + 1..(k + 1) * dim];
        for row in tail.chunks_exact_mut(dim) {
            if row[k] == 0 {
                continue;
            }
            let f = mg.mul(row[k], inv);
            for (x, &y) in row[k + 1..].iter_mut().zip(pivot_row) {
                *x = mg.sub(*x, mg.mul(f, y));
            }
        }
    }
    let det = mg.leave(det);
    if negate && det != 0 {
        p - det
    } else {
        det
    }
}

pub(crate) fn reduce_entry(e: &BigInt, p: u64) -> u64 {
    match e.to_i64() {
        Some(v) => reduce(v as i128, p),
        None => e.mod_floor(&BigInt::from(p)).to_u64().expect("reduced value fits"),
    }
}

/// Determinant of `m` modulo the odd prime `p`.
pub fn det_mod_p(m: &IntMatrix, p: u64) -> Result<Residue> {
    if p.is_multiple_of(2) || !is_prime(p) || p >= 1 << 63 {
        return Err(Error::domain(format!("{p} is not an odd prime below 2^63")));
    }
    let entries = m.entries().iter().map(|e| reduce_entry(e, p)).collect();
    Ok(Residue::from_reduced(det_mod_p_entries(entries, m.dim(), p), p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn montgomery_roundtrip() {
        for p in [3u64, 5, 13, 1_000_000_007, (1 << 61) - 1, 9_223_372_036_854_775_783] {
            let mg = Montgomery::new(p);
            for a in [0u64, 1, 2, p - 1, p / 2] {
                assert_eq!(mg.leave(mg.enter(a)), a);
                let b = p - 2;
                let expect = ((a as u128 * b as u128) % p as u128) as u64;
                assert_eq!(mg.leave(mg.mul(mg.enter(a), mg.enter(b))), expect);
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(det_mod_p(&IntMatrix::identity(5), 7).unwrap().value(), 1);
        let zero_row = IntMatrix::from_rows(&[vec![1, 2, 3], vec![0, 0, 0], vec![4, 5, 6]]).unwrap();
        assert_eq!(det_mod_p(&zero_row, 11).unwrap().value(), 0);
        let m = IntMatrix::from_rows(&[vec![3, 4], vec![4, 3]]).unwrap();
        assert_eq!(det_mod_p(&m, 5).unwrap().value(), 3);
        assert!(det_mod_p(&m, 9).is_err());
        assert!(det_mod_p(&m, 2).is_err());
    }

    #[test]
    fn singular_only_mod_p() {
        // det = 7
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 4]]).unwrap();
        assert_eq!(det_mod_p(&m, 7).unwrap().value(), 0);
        assert_eq!(det_mod_p(&m, 5).unwrap().value(), 2);
    }
}
