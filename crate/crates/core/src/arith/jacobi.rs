use super::rational_mod_p;
use crate::error::{Error, Result};

/// The Jacobi symbol `(a/n)` for odd positive `n`.
///
/// `a` is reduced into `[0, n)` first, so only the binary reciprocity loop
/// runs on unsigned values: factors of two are stripped with the
/// supplementary law and the remaining odd pair is flipped with quadratic
/// reciprocity.
///
/// ```
/// use binform::arith::jacobi;
/// assert_eq!(jacobi(7, 1).unwrap(), 1);
/// assert_eq!(jacobi(2, 15).unwrap(), 1);
/// assert_eq!(jacobi(-1, 7).unwrap(), -1);
/// assert!(jacobi(3, 8).is_err());
/// ```
pub fn jacobi(a: impl Into<i128>, n: u64) -> Result<i32> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::domain(format!("Jacobi symbol needs an odd positive modulus, got {n}")));
    }
    let mut a = a.into().rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut sign = 1;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        if twos % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// Legendre symbol of the p-adic integer `num/den`, i.e. of its residue mod `p`.
pub fn legendre_of_padic(num: i128, den: i128, p: u64) -> Result<i32> {
    let r = rational_mod_p(num, den, p)?;
    jacobi(r.value() as i128, p)
}
