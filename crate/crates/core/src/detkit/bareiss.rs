use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{hadamard_bound_squared, IntMatrix};

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Runs on `i128` when the squared Hadamard bound is below 2^125: every
/// intermediate is a minor bounded by the Hadamard bound, so products of
/// two stay under 2^126.
pub fn det_bareiss(m: &IntMatrix) -> BigInt {
    let h2 = hadamard_bound_squared(m);
    if h2.is_zero() {
        return BigInt::zero();
    }
    if h2.bits() < 126 {
        if let Some(small) = m.entries().iter().map(ToPrimitive::to_i128).collect::<Option<Vec<_>>>() {
            return BigInt::from(bareiss(small, m.dim()));
        }
    }
    bareiss(m.entries().to_vec(), m.dim())
}

fn bareiss<T>(mut a: Vec<T>, n: usize) -> T
where
    T: Integer + Signed + Clone,
    for<'x> &'x T: Mul<&'x T, Output = T> + Sub<&'x T, Output = T>,
{
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n.saturating_sub(1) {
        if a[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return T::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            negate = !negate;
        }
        let (head, tail) = a.split_at_mut((k + 1) * n);
        let pivot_row = &head[k * n..];
        let pivot = &pivot_row[k];
        for row in tail.chunks_exact_mut(n) {
            let lead = row[k].clone();
            for j in k + 1..n {
                let num = &(&row[j] * pivot) - &(&lead * &pivot_row[j]);
                let (q, r) = num.div_rem(&prev);
                assert!(r.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
        }
        prev = a[k * n + k].clone();
    }
    let det = a[n * n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn wide_entries_use_bigint_path() {
        let big = 1i64 << 62;
        let m = IntMatrix::from_rows(&[vec![big, 1, 0], vec![1, big, 0], vec![0, 0, big]]).unwrap();
        let b = BigInt::from(big);
        let expected = (&b * &b - BigInt::one()) * &b;
        assert_eq!(det_bareiss(&m), expected);
    }

    #[test]
    fn pivot_swap_changes_sign() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(det_bareiss(&m), BigInt::from(-1));
        let m = IntMatrix::from_rows(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]).unwrap();
        assert_eq!(det_bareiss(&m), BigInt::from(-1));
    }

    #[test]
    fn one_by_one() {
        assert_eq!(det_bareiss(&IntMatrix::from_rows(&[vec![-5]]).unwrap()), BigInt::from(-5));
    }
}
