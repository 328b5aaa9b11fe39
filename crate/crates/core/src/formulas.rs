//! Closed-form predictions for determinants modulo a prime.
//!
//! Each function here computes a right-hand side without building the
//! matrix it describes; the direct evaluations live in [`crate::forms`], and
//! the two are compared by the verification campaigns.

use num_bigint::BigInt;

use crate::arith::{is_prime, jacobi, mul_mod, rational_mod_p, reduce, Residue};
use crate::detkit::{det_exact, IntMatrix};
use crate::error::{Error, Result};

fn check_prime(p: u64, min: u64) -> Result<()> {
    if p < min || !is_prime(p) || p >= 1 << 63 {
        return Err(Error::domain(format!("modulus {p} must be a prime at least {min}")));
    }
    Ok(())
}

/// Closed form of `det[x + H(i,j)]_{1 ≤ i,j ≤ p-1} mod p` for
/// `H(X,Y) = Σ_{k=0}^{n} a_k X^k Y^(n-k)` with `p-2 ≤ n ≤ 2p-3`.
///
/// * `n = p-1`: `(x + a_0 + a_{p-1}) · ∏_{k=1}^{p-2} a_k`.
/// * otherwise: `(-1)^n · ∏_{k=0}^{p-2} Σ_{j ≡ k (mod p-1)} a_j`, which is
///   independent of `x`.
///
/// ```
/// use binform::formulas::shift_closed_form;
/// assert_eq!(shift_closed_form(&[1; 6], 42, 7).unwrap().value(), 6);
/// assert!(shift_closed_form(&[1; 3], 0, 7).is_err());
/// ```
pub fn shift_closed_form(coeffs: &[i64], x: i64, p: u64) -> Result<crate::arith::Residue> {
    check_prime(p, 3)?;
    let n = coeffs.len() as u64;
    if n == 0 || n - 1 < p - 2 || n - 1 > 2 * p - 3 {
        return Err(Error::domain(format!(
            "degree {} outside [{}, {}] for p = {p}",
            n as i64 - 1,
            p - 2,
            2 * p - 3
        )));
    }
    let n = n - 1;
    let a: Vec<u64> = coeffs.iter().map(|&v| reduce(v as i128, p)).collect();
    let value = if n == p - 1 {
        let head = (reduce(x as i128, p) + a[0] + a[(p - 1) as usize]) % p;
        a[1..(p - 1) as usize].iter().fold(head, |acc, &v| mul_mod(acc, v, p))
    } else {
        let period = (p - 1) as usize;
        let prod = (0..period).fold(1 % p, |acc, k| {
            let class = a.iter().skip(k).step_by(period).fold(0, |s, &v| (s + v) % p);
            mul_mod(acc, class, p)
        });
        if n % 2 == 1 {
            (p - prod) % p
        } else {
            prod
        }
    };
    Residue::new(value as i128, p)
}

/// Whether `det[x + (i²+cij+dj²)^n]_{1 ≤ i,j ≤ p-1} mod p` is known to be
/// independent of `x`, i.e. `(p+1)/2 ≤ n ≤ p-2`.
pub fn corollary11_applicable(n: u64, p: u64) -> bool {
    p > 3 && p.div_ceil(2) <= n && n <= p - 2
}

/// `â_k`: product of the `a_j` with `j ≡ k (mod 2)` and `j ≠ k`.
///
/// Direct products, so vanishing coefficients are handled without division.
pub fn hat_products(coeffs: &[Residue], p: u64) -> Vec<u64> {
    (0..coeffs.len())
        .map(|k| {
            coeffs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k && (j + k) % 2 == 0)
                .fold(1 % p, |acc, (_, a)| mul_mod(acc, a.value(), p))
        })
        .collect()
}

/// Closed form of `det[P(i j⁻¹)]_{2 ≤ i,j ≤ p-2} mod p` for
/// `P(T) = Σ_{k=0}^{p-2} a_k T^k`: `4 · (Σ_even â_k) · (Σ_odd â_k)`.
pub fn theorem13_closed_form(coeffs: &[Residue], p: u64) -> Result<Residue> {
    check_prime(p, 5)?;
    if coeffs.len() as u64 != p - 1 {
        return Err(Error::domain(format!("expected {} coefficients, got {}", p - 1, coeffs.len())));
    }
    if let Some(bad) = coeffs.iter().find(|r| r.modulus() != p) {
        return Err(Error::ModulusMismatch { left: bad.modulus(), right: p });
    }
    let hats = hat_products(coeffs, p);
    let even = hats.iter().step_by(2).fold(0, |s, &v| (s + v) % p);
    let odd = hats.iter().skip(1).step_by(2).fold(0, |s, &v| (s + v) % p);
    Ok(Residue::from_reduced(mul_mod(mul_mod(4 % p, even, p), odd, p), p))
}

/// Coefficients `a_0..a_{p-2}` of a polynomial `P` of degree `p-2` with
/// `P(T) ≡ (T² + T + 1)^(p-2) (mod p)` for every `T` in `[1, p-1]`.
///
/// For `p ≡ 1 (mod 3)`: `a_k = k + 5/3, -k - 4/3, -1/3` as `k ≡ 0, 1, 2 (mod 3)`.
/// For `p ≡ 2 (mod 3)`: `a_k = 1/3` for `k ≡ 0, 2` and `-2/3` for `k ≡ 1 (mod 3)`.
pub fn trinomial_power_coeffs(p: u64) -> Result<Vec<Residue>> {
    check_prime(p, 5)?;
    (0..p - 1)
        .map(|k| {
            let k = k as i128;
            let (num, den) = match (p % 3, k % 3) {
                (1, 0) => (3 * k + 5, 3),
                (1, 1) => (-3 * k - 4, 3),
                (1, _) => (-1, 3),
                (_, 1) => (-2, 3),
                _ => (1, 3),
            };
            rational_mod_p(num, den, p)
        })
        .collect()
}

/// `(Σ₁, Σ₂) mod p` for a prime `p ≡ 1 (mod 3)`, where
///
/// ```text
/// Σ₁ = Σ_{k=1}^{(p-1)/6} (1/(18k-13) - 1/(18k-2)) + 1/6
/// Σ₂ = Σ_{k=1}^{(p-1)/6} (1/(18k-4)  - 1/(18k-11)) + 1/6
/// ```
///
/// A denominator divisible by `p` is reported as [`Error::ZeroDenominator`];
/// that happens for `p ≡ 7 (mod 9)` and never for `p ≡ 1, 4 (mod 9)`.
pub fn sigma_sums(p: u64) -> Result<(Residue, Residue)> {
    check_prime(p, 5)?;
    if p % 3 != 1 {
        return Err(Error::domain(format!("sigma sums need p ≡ 1 (mod 3), got {p}")));
    }
    let sixth = rational_mod_p(1, 6, p)?;
    let mut s1 = sixth;
    let mut s2 = sixth;
    for k in 1..=((p - 1) / 6) as i128 {
        s1 = s1.try_add(rational_mod_p(1, 18 * k - 13, p)?)?.try_sub(rational_mod_p(1, 18 * k - 2, p)?)?;
        s2 = s2.try_add(rational_mod_p(1, 18 * k - 4, p)?)?.try_sub(rational_mod_p(1, 18 * k - 11, p)?)?;
    }
    Ok((s1, s2))
}

/// Predicted behaviour of `D_p^-(1,1)`, split by the class of `p` modulo 9.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dp11Prediction {
    /// `p ≡ 2 (mod 3)`: the residue `2^((p-8)/3) · 3⁴` and Legendre symbol `(2/p)`.
    TwoMod3 { residue: Residue, symbol: i32 },
    /// `p ≡ 7 (mod 9)`: the determinant vanishes.
    SevenMod9 { residue: Residue },
    /// `p ≡ 1, 4 (mod 9)`: only the Legendre symbol `(Σ₁Σ₂/p)` is predicted.
    OneFourMod9 { sigma1: Residue, sigma2: Residue, symbol: i32 },
    /// `p = 3`, where the inner matrix is empty.
    Unsupported,
}

impl Dp11Prediction {
    pub fn label(&self) -> &'static str {
        match self {
            Dp11Prediction::TwoMod3 { .. } => "p≡2(mod 3)",
            Dp11Prediction::SevenMod9 { .. } => "p≡7(mod 9)",
            Dp11Prediction::OneFourMod9 { .. } => "p≡1,4(mod 9)",
            Dp11Prediction::Unsupported => "unsupported",
        }
    }

    pub fn predicted_residue(&self) -> Option<Residue> {
        match *self {
            Dp11Prediction::TwoMod3 { residue, .. } | Dp11Prediction::SevenMod9 { residue } => Some(residue),
            _ => None,
        }
    }

    pub fn predicted_symbol(&self) -> Option<i32> {
        match *self {
            Dp11Prediction::TwoMod3 { symbol, .. } | Dp11Prediction::OneFourMod9 { symbol, .. } => Some(symbol),
            _ => None,
        }
    }

    /// Whether an observed `D_p^-(1,1) mod p` agrees with the prediction.
    pub fn agrees_with(&self, observed: Residue) -> bool {
        let p = observed.modulus();
        let symbol = jacobi(observed.value() as i128, p).expect("odd prime");
        self.predicted_residue().is_none_or(|r| r == observed)
            && self.predicted_symbol().is_none_or(|s| s == symbol)
            && !matches!(self, Dp11Prediction::Unsupported)
    }
}

/// Prediction for `D_p^-(1,1) mod p` at a prime `p > 3`.
///
/// ```
/// use binform::formulas::{predict_dp_minus_11, Dp11Prediction};
/// match predict_dp_minus_11(19).unwrap() {
///     Dp11Prediction::OneFourMod9 { sigma1, sigma2, symbol } => {
///         assert_eq!((sigma1.signed(), sigma2.signed(), symbol), (3, -8, -1));
///     }
///     other => panic!("unexpected case {other:?}"),
/// }
/// ```
pub fn predict_dp_minus_11(p: u64) -> Result<Dp11Prediction> {
    if p == 3 {
        return Ok(Dp11Prediction::Unsupported);
    }
    check_prime(p, 5)?;
    if p % 3 == 2 {
        let exp = (p as i64 - 8) / 3;
        let residue = Residue::new(2, p)?.pow(exp)?.try_mul(Residue::new(81, p)?)?;
        return Ok(Dp11Prediction::TwoMod3 { residue, symbol: jacobi(2, p)? });
    }
    if p % 9 == 7 {
        return Ok(Dp11Prediction::SevenMod9 { residue: Residue::zero(p)? });
    }
    let (sigma1, sigma2) = sigma_sums(p)?;
    let symbol = jacobi(sigma1.try_mul(sigma2)?.value() as i128, p)?;
    Ok(Dp11Prediction::OneFourMod9 { sigma1, sigma2, symbol })
}

/// Both sides of `det[P(i,j)]_{1 ≤ i,j ≤ n} = 1!·2!⋯(n-1)! · det[a_jk]`
/// where `P(x, j) = Σ_k a_jk x^(k-1)` and `a_jk` is row `j`, column `k` of
/// `coeff_matrix` (both 1-based).
pub fn poly_grid_det_identity(coeff_matrix: &IntMatrix) -> (BigInt, BigInt) {
    let n = coeff_matrix.dim();
    let grid = IntMatrix::from_fn(n, |r, s| {
        let i = BigInt::from(r + 1);
        let mut power = BigInt::from(1);
        let mut value = BigInt::from(0);
        for k in 0..n {
            value += coeff_matrix.get(s, k) * &power;
            power *= &i;
        }
        value
    });
    let superfactorial: BigInt = (1..n)
        .scan(BigInt::from(1), |fact, m| {
            *fact *= m;
            Some(fact.clone())
        })
        .product();
    (det_exact(&grid), superfactorial * det_exact(coeff_matrix))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residues(values: &[i64], p: u64) -> Vec<Residue> {
        values.iter().map(|&v| Residue::new(v as i128, p).unwrap()).collect()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift_closed_form(&[0; 7], 5, 7).unwrap().value(), 0);
        assert_eq!(shift_closed_form(&[1; 6], 3, 7).unwrap().value(), 6);
        assert!(shift_closed_form(&[1; 13], 0, 7).is_err());
        assert!(shift_closed_form(&[1; 12], 0, 7).is_ok());
        assert!(shift_closed_form(&[], 0, 7).is_err());
    }

    #[test]
    fn x_independence_range() {
        assert!(!corollary11_applicable(5, 11));
        assert!(corollary11_applicable(6, 11));
        assert!(corollary11_applicable(9, 11));
        assert!(!corollary11_applicable(10, 11));
        assert!(!corollary11_applicable(2, 3));
    }

    #[test]
    fn rational_closed_form_examples() {
        assert_eq!(theorem13_closed_form(&residues(&[1; 4], 5), 5).unwrap().value(), 1);
        let planted = residues(&[0, 3, 0, 5, 2, 6], 7);
        assert_eq!(theorem13_closed_form(&planted, 7).unwrap().value(), 0);
        assert!(theorem13_closed_form(&residues(&[1; 3], 5), 5).is_err());
    }

    #[test]
    fn hats_skip_own_index() {
        let h = hat_products(&residues(&[2, 3, 5, 7], 11), 11);
        assert_eq!(h, vec![5, 7, 2, 3]);
    }

    #[test]
    fn trinomial_examples() {
        let five: Vec<u64> = trinomial_power_coeffs(5).unwrap().iter().map(Residue::value).collect();
        // a_3 has k ≡ 0 (mod 3), so it is 1/3 like a_0
        assert_eq!(five, vec![2, 1, 2, 2]);
        assert_eq!(trinomial_power_coeffs(7).unwrap()[0].value(), 4);
        assert!(trinomial_power_coeffs(3).is_err());
    }

    #[test]
    fn sigma_examples() {
        let (s1, s2) = sigma_sums(19).unwrap();
        assert_eq!((s1.value(), s2.value()), (3, 11));
        // 18 - 4 = 14 ≡ 0 (mod 7)
        assert!(matches!(sigma_sums(7), Err(Error::ZeroDenominator { .. })));
        assert!(sigma_sums(11).is_err());
    }

    #[test]
    fn dp11_cases() {
        let five = predict_dp_minus_11(5).unwrap();
        assert_eq!(five.predicted_residue().unwrap().value(), 3);
        assert_eq!(five.predicted_symbol(), Some(-1));
        assert_eq!(predict_dp_minus_11(7).unwrap(), Dp11Prediction::SevenMod9 { residue: Residue::zero(7).unwrap() });
        assert_eq!(predict_dp_minus_11(3).unwrap(), Dp11Prediction::Unsupported);
        assert!(predict_dp_minus_11(9).is_err());
        assert!(predict_dp_minus_11(19).unwrap().agrees_with(Residue::new(-5, 19).unwrap()));
        assert!(!predict_dp_minus_11(19).unwrap().agrees_with(Residue::new(1, 19).unwrap()));
    }

    #[test]
    fn poly_grid_examples() {
        let (lhs, rhs) = poly_grid_det_identity(&IntMatrix::identity(4));
        assert_eq!(lhs, BigInt::from(12));
        assert_eq!(lhs, rhs);
        let low_degree = IntMatrix::from_rows(&[vec![1, 2, 0], vec![3, -1, 0], vec![5, 7, 0]]).unwrap();
        assert_eq!(poly_grid_det_identity(&low_degree).0, BigInt::from(0));
    }
}
