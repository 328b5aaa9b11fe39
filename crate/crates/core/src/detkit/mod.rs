//! Determinant engines.
//!
//! * [`det_bareiss`]: fraction-free elimination over ℤ, on `i128` when the
//!   Hadamard bound guarantees no overflow and on `BigInt` otherwise.
//! * [`det_exact_crt`]: determinants modulo enough 62-bit primes to exceed
//!   twice the Hadamard bound, recombined by CRT into the symmetric range.
//! * [`det_mod_p`]: Gaussian elimination over a prime field.
//!
//! [`det_exact`] picks Bareiss up to dimension 64 and CRT above that.

mod bareiss;
mod crt;
mod matrix;
mod modular;
pub mod oracle;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

pub use bareiss::det_bareiss;
pub use crt::{crt_primes, det_exact_crt, hadamard_bound_squared};
pub use matrix::IntMatrix;
pub use modular::{det_mod_p, det_mod_p_entries};

use crate::arith::Residue;
use crate::error::{Error, Result};

/// Largest dimension handled by fraction-free elimination in [`det_exact`].
pub const BAREISS_MAX_DIM: usize = 64;

/// Exact determinant over the integers.
///
/// ```
/// use binform::detkit::{det_exact, IntMatrix};
/// let m = IntMatrix::from_rows(&[vec![3, 4], vec![4, 3]]).unwrap();
/// assert_eq!(det_exact(&m), (-7).into());
/// ```
pub fn det_exact(m: &IntMatrix) -> BigInt {
    if m.dim() <= BAREISS_MAX_DIM {
        det_bareiss(m)
    } else {
        det_exact_crt(m)
    }
}

/// Determinant reduced into `[0, modulus)` for any modulus `≥ 2`.
///
/// Goes through the exact determinant, so composite moduli never meet a
/// zero-divisor pivot.
pub fn det_mod_m(m: &IntMatrix, modulus: u64) -> Result<Residue> {
    if modulus < 2 {
        return Err(Error::domain(format!("modulus must be at least 2, got {modulus}")));
    }
    let r = det_exact(m).mod_floor(&BigInt::from(modulus));
    Ok(Residue::from_reduced(r.to_u64().expect("reduced value fits"), modulus))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_examples() {
        assert_eq!(det_exact(&IntMatrix::identity(4)), 1.into());
        let twin = IntMatrix::from_rows(&[vec![1, 2, 3], vec![1, 2, 3], vec![4, 5, 7]]).unwrap();
        assert_eq!(det_exact(&twin), 0.into());
        let m = IntMatrix::from_rows(&[vec![3, 4], vec![4, 3]]).unwrap();
        assert_eq!(det_exact(&m), (-7).into());
    }

    #[test]
    fn mod_m_examples() {
        assert_eq!(det_mod_m(&IntMatrix::diag(&[2, 2]), 4).unwrap().value(), 0);
        for m in [2u64, 3, 36, 1000] {
            assert_eq!(det_mod_m(&IntMatrix::identity(3), m).unwrap().value(), 1);
        }
        let m = IntMatrix::from_rows(&[vec![3, 4], vec![4, 3]]).unwrap();
        assert_eq!(det_mod_m(&m, 36).unwrap().value(), 29);
        assert!(det_mod_m(&m, 1).is_err());
    }

    #[test]
    fn dispatch_above_bareiss_limit() {
        let n = BAREISS_MAX_DIM + 6;
        // lower-triangular with a known diagonal, then a row swap
        let mut rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if j < i { (i * j % 7) as i64 - 3 } else if i == j { 1 + (i % 3) as i64 } else { 0 }).collect())
            .collect();
        let expected: BigInt = (0..n).map(|i| BigInt::from(1 + (i % 3) as i64)).product();
        rows.swap(0, 1);
        let m = IntMatrix::from_rows(&rows).unwrap();
        assert_eq!(det_exact(&m), -expected);
    }
}
