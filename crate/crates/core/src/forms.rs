//! Matrices built from the binary form `i² + cij + dj²` and their determinants.
//!
//! Symbol families hold Jacobi symbols `((i² + cij + dj²)/n)` and are
//! evaluated exactly over ℤ. Power families hold `(i² + cij + dj²)^e mod p`
//! and are evaluated over the prime field. Index ranges:
//!
//! | family                          | indices        |
//! |---------------------------------|----------------|
//! | `SymbolBracket`, `PowerZeroFull`| `0..=n-1`      |
//! | `SymbolParen`, `PowerFull`, `ShiftedPower` | `1..=n-1` |
//! | `SymbolBrace`, `PowerInner`     | `2..=n-2`      |

use std::ops::RangeInclusive;

use num_bigint::BigInt;

use crate::arith::{inv_mod, is_prime, jacobi, mul_mod, pow_mod, reduce, Residue};
use crate::detkit::{det_exact, det_mod_p_entries, IntMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormFamily {
    SymbolBracket { c: i64, d: i64 },
    SymbolParen { c: i64, d: i64 },
    SymbolBrace { c: i64, d: i64 },
    PowerFull { c: i64, d: i64, e: u64 },
    PowerInner { c: i64, d: i64, e: u64 },
    PowerZeroFull { c: i64, d: i64, e: u64 },
    /// `x + Σ_k a_k i^k j^(n-k)` with `coeffs = [a_0, …, a_n]`.
    ShiftedPower { x: i64, coeffs: Vec<i64> },
}

impl FormFamily {
    /// Label of the first row and column.
    pub fn index_offset(&self) -> u64 {
        use FormFamily::*;
        match self {
            SymbolBracket { .. } | PowerZeroFull { .. } => 0,
            SymbolParen { .. } | PowerFull { .. } | ShiftedPower { .. } => 1,
            SymbolBrace { .. } | PowerInner { .. } => 2,
        }
    }

    pub fn is_symbol(&self) -> bool {
        matches!(self, FormFamily::SymbolBracket { .. } | FormFamily::SymbolParen { .. } | FormFamily::SymbolBrace { .. })
    }

    /// Row/column labels for modulus `n`.
    pub fn index_range(&self, n: u64) -> RangeInclusive<u64> {
        match self.index_offset() {
            2 => 2..=n.saturating_sub(2),
            o => o..=n.saturating_sub(1),
        }
    }

    fn form(&self) -> Option<(i64, i64)> {
        use FormFamily::*;
        match *self {
            SymbolBracket { c, d } | SymbolParen { c, d } | SymbolBrace { c, d } => Some((c, d)),
            PowerFull { c, d, .. } | PowerInner { c, d, .. } | PowerZeroFull { c, d, .. } => Some((c, d)),
            ShiftedPower { .. } => None,
        }
    }
}

/// `i² + cij + dj²` in 128-bit arithmetic.
#[inline]
pub fn form_value(c: i64, d: i64, i: u64, j: u64) -> i128 {
    let (i, j) = (i as i128, j as i128);
    i * i + c as i128 * i * j + d as i128 * j * j
}

fn check_prime(p: u64, min: u64) -> Result<()> {
    if p < min || !is_prime(p) || p >= 1 << 63 {
        return Err(Error::domain(format!("modulus {p} must be a prime at least {min}")));
    }
    Ok(())
}

/// Jacobi-symbol matrix of a symbol family for odd `n`.
pub fn symbol_matrix(family: &FormFamily, n: u64) -> Result<IntMatrix> {
    if !family.is_symbol() {
        return Err(Error::domain("symbol_matrix needs a symbol family"));
    }
    let min = if matches!(family, FormFamily::SymbolBrace { .. }) { 5 } else { 3 };
    if n.is_multiple_of(2) || n < min {
        return Err(Error::domain(format!("modulus must be odd and at least {min}, got {n}")));
    }
    let (c, d) = family.form().expect("symbol family");
    let labels: Vec<u64> = family.index_range(n).collect();
    let m = IntMatrix::from_fn(labels.len(), |r, s| {
        jacobi(form_value(c, d, labels[r], labels[s]), n).expect("odd modulus")
    });
    Ok(m.with_index_offset(family.index_offset()))
}

/// `[c,d]_n`: Jacobi-symbol determinant over `0 ≤ i, j ≤ n-1`.
///
/// ```
/// use binform::forms::bracket_cd;
/// assert_eq!(bracket_cd(0, 2, 3).unwrap(), 0.into());
/// // 9 is not squarefree
/// assert_eq!(bracket_cd(1, 1, 9).unwrap(), 0.into());
/// ```
pub fn bracket_cd(c: i64, d: i64, n: u64) -> Result<BigInt> {
    Ok(det_exact(&symbol_matrix(&FormFamily::SymbolBracket { c, d }, n)?))
}

/// `(c,d)_n`: Jacobi-symbol determinant over `1 ≤ i, j ≤ n-1`.
pub fn paren_cd(c: i64, d: i64, n: u64) -> Result<BigInt> {
    Ok(det_exact(&symbol_matrix(&FormFamily::SymbolParen { c, d }, n)?))
}

/// `{c,d}_n`: Jacobi-symbol determinant over `2 ≤ i, j ≤ n-2`, for odd `n ≥ 5`.
pub fn brace_cd(c: i64, d: i64, n: u64) -> Result<BigInt> {
    Ok(det_exact(&symbol_matrix(&FormFamily::SymbolBrace { c, d }, n)?))
}

/// Row-major entries of a power family modulo `p`, with `0^0 = 1`.
pub fn power_matrix_entries(family: &FormFamily, p: u64) -> Result<(Vec<u64>, usize)> {
    let (c, d, e) = match *family {
        FormFamily::PowerFull { c, d, e } | FormFamily::PowerInner { c, d, e } | FormFamily::PowerZeroFull { c, d, e } => (c, d, e),
        _ => return Err(Error::domain("power_matrix_entries needs a power family")),
    };
    let min = if matches!(family, FormFamily::PowerInner { .. }) { 5 } else { 3 };
    check_prime(p, min)?;
    let labels: Vec<u64> = family.index_range(p).collect();
    let entries = labels
        .iter()
        .flat_map(|&i| labels.iter().map(move |&j| pow_mod(reduce(form_value(c, d, i, j), p), e, p)))
        .collect();
    Ok((entries, labels.len()))
}

/// Determinant modulo `p` of a power family, e.g. `D_p(c,d)` for
/// `PowerFull { e: p - 2 }` and `D_p^-(c,d)` for `PowerInner { e: p - 2 }`.
///
/// ```
/// use binform::forms::{power_det_mod_p, FormFamily};
/// let d19 = power_det_mod_p(&FormFamily::PowerInner { c: 1, d: 1, e: 17 }, 19).unwrap();
/// assert_eq!(d19.signed(), -5);
/// ```
pub fn power_det_mod_p(family: &FormFamily, p: u64) -> Result<Residue> {
    if let FormFamily::ShiftedPower { x, coeffs } = family {
        return shifted_power_det_mod_p(coeffs, *x, p);
    }
    let (entries, dim) = power_matrix_entries(family, p)?;
    Ok(Residue::from_reduced(det_mod_p_entries(entries, dim, p), p))
}

/// `det[x + H(i,j)]_{1 ≤ i,j ≤ p-1} mod p` with `H(X,Y) = Σ_k a_k X^k Y^(n-k)`.
pub fn shifted_power_det_mod_p(coeffs: &[i64], x: i64, p: u64) -> Result<Residue> {
    check_prime(p, 3)?;
    if coeffs.is_empty() {
        return Err(Error::domain("H needs at least one coefficient"));
    }
    let n = coeffs.len() - 1;
    let a: Vec<u64> = coeffs.iter().map(|&v| reduce(v as i128, p)).collect();
    let x = reduce(x as i128, p);
    let dim = (p - 1) as usize;
    // powers[i][k] = i^k mod p for i in 1..=p-1
    let powers: Vec<Vec<u64>> = (1..p)
        .map(|i| {
            std::iter::successors(Some(1 % p), |&acc| Some(mul_mod(acc, i, p))).take(n + 1).collect()
        })
        .collect();
    let mut entries = Vec::with_capacity(dim * dim);
    for pi in &powers {
        for pj in &powers {
            let h = (0..=n).fold(0u64, |acc, k| (acc + mul_mod(a[k], mul_mod(pi[k], pj[n - k], p), p)) % p);
            entries.push((h + x) % p);
        }
    }
    Ok(Residue::from_reduced(det_mod_p_entries(entries, dim, p), p))
}

/// `det[P(i j⁻¹)]_{2 ≤ i,j ≤ p-2} mod p` with `P(T) = Σ_{k=0}^{p-2} a_k T^k`.
pub fn rational_matrix_det_mod_p(coeffs: &[Residue], p: u64) -> Result<Residue> {
    check_prime(p, 5)?;
    if coeffs.len() as u64 != p - 1 {
        return Err(Error::domain(format!("expected {} coefficients, got {}", p - 1, coeffs.len())));
    }
    if let Some(bad) = coeffs.iter().find(|r| r.modulus() != p) {
        return Err(Error::ModulusMismatch { left: bad.modulus(), right: p });
    }
    // P(t) for every t in [0, p)
    let values: Vec<u64> = (0..p)
        .map(|t| coeffs.iter().rev().fold(0u64, |acc, a| (mul_mod(acc, t, p) + a.value()) % p))
        .collect();
    let labels: Vec<u64> = (2..=p - 2).collect();
    let inverses: Vec<u64> = labels.iter().map(|&j| inv_mod(j, p).expect("unit")).collect();
    let entries = labels
        .iter()
        .flat_map(|&i| inverses.iter().map(move |&jinv| mul_mod(i, jinv, p)))
        .map(|t| values[t as usize])
        .collect();
    Ok(Residue::from_reduced(det_mod_p_entries(entries, labels.len(), p), p))
}

/// Coefficients `a_0..a_{2n}` of `(X² + cXY + dY²)^n = Σ a_k X^k Y^(2n-k)`,
/// reduced into `[0, p)`.
pub fn binary_form_power_coeffs(c: i64, d: i64, n: u64, p: u64) -> Vec<i64> {
    let base = [reduce(d as i128, p), reduce(c as i128, p), 1 % p];
    let mut acc = vec![1 % p];
    for _ in 0..n {
        let mut next = vec![0u64; acc.len() + 2];
        for (k, &v) in acc.iter().enumerate() {
            for (s, &b) in base.iter().enumerate() {
                next[k + s] = (next[k + s] + mul_mod(v, b, p)) % p;
            }
        }
        acc = next;
    }
    acc.into_iter().map(|v| v as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(m: &IntMatrix) -> Vec<Vec<i64>> {
        (0..m.dim()).map(|i| m.row(i).iter().map(|v| i64::try_from(v).unwrap()).collect()).collect()
    }

    #[test]
    fn bracket_matrix_small() {
        let m = symbol_matrix(&FormFamily::SymbolBracket { c: 0, d: 2 }, 3).unwrap();
        assert_eq!(rows(&m), vec![vec![0, -1, -1], vec![1, 0, 0], vec![1, 0, 0]]);
        assert_eq!(m.index_offset(), 0);
    }

    #[test]
    fn dims_and_offsets() {
        let paren = symbol_matrix(&FormFamily::SymbolParen { c: 5, d: -3 }, 3).unwrap();
        assert_eq!((paren.dim(), paren.index_offset()), (2, 1));
        let brace = symbol_matrix(&FormFamily::SymbolBrace { c: 1, d: 1 }, 7).unwrap();
        assert_eq!((brace.dim(), brace.index_offset()), (4, 2));
        assert!(symbol_matrix(&FormFamily::SymbolBrace { c: 1, d: 1 }, 3).is_err());
        assert!(symbol_matrix(&FormFamily::SymbolBracket { c: 1, d: 1 }, 8).is_err());
        assert!(symbol_matrix(&FormFamily::SymbolBracket { c: 1, d: 1 }, 1).is_err());
        assert!(symbol_matrix(&FormFamily::PowerFull { c: 1, d: 1, e: 1 }, 7).is_err());
    }

    #[test]
    fn symbol_entries_in_range() {
        for n in [3u64, 15, 21, 45] {
            let m = symbol_matrix(&FormFamily::SymbolBracket { c: 3, d: -7 }, n).unwrap();
            assert!(m.entries().iter().all(|v| *v >= BigInt::from(-1) && *v <= BigInt::from(1)));
        }
    }

    #[test]
    fn paren_examples() {
        assert_eq!(paren_cd(0, 1, 3).unwrap(), BigInt::from(0));
        // (2/5) = -1
        assert_eq!(paren_cd(1, 2, 5).unwrap(), BigInt::from(0));
        assert_eq!(symbol_matrix(&FormFamily::SymbolBrace { c: 0, d: 1 }, 5).unwrap().dim(), 2);
        brace_cd(0, 1, 5).unwrap();
    }

    #[test]
    fn bracket_divisibility_example() {
        let v = bracket_cd(1, 7, 15).unwrap();
        assert_eq!(&v % 64, BigInt::from(0));
    }

    #[test]
    fn power_inner_examples() {
        let fam = |p: u64| FormFamily::PowerInner { c: 1, d: 1, e: p - 2 };
        assert_eq!(power_det_mod_p(&fam(5), 5).unwrap().value(), 3);
        assert_eq!(power_det_mod_p(&fam(19), 19).unwrap().value(), 14);
        assert_eq!(power_det_mod_p(&fam(7), 7).unwrap().value(), 0);
        assert!(power_det_mod_p(&fam(9), 9).is_err());
        assert!(power_det_mod_p(&FormFamily::PowerInner { c: 1, d: 1, e: 1 }, 3).is_err());
        assert!(power_det_mod_p(&FormFamily::SymbolParen { c: 1, d: 1 }, 7).is_err());
    }

    #[test]
    fn zero_exponent_gives_all_ones() {
        let (entries, dim) = power_matrix_entries(&FormFamily::PowerZeroFull { c: 0, d: 0, e: 0 }, 7).unwrap();
        assert_eq!(dim, 7);
        assert!(entries.iter().all(|&v| v == 1));
        assert_eq!(power_det_mod_p(&FormFamily::PowerZeroFull { c: 0, d: 0, e: 0 }, 7).unwrap().value(), 0);
    }

    #[test]
    fn shifted_examples() {
        assert_eq!(shifted_power_det_mod_p(&[0, 0, 0, 0, 0, 0], 3, 7).unwrap().value(), 0);
        // H = Y^3 only (a_0 = 1): rank one
        assert_eq!(shifted_power_det_mod_p(&[0, 0, 0, 1], 0, 5).unwrap().value(), 0);
        assert!(shifted_power_det_mod_p(&[], 0, 5).is_err());
        assert!(shifted_power_det_mod_p(&[1], 0, 15).is_err());
    }

    #[test]
    fn rational_examples() {
        let ones = |p: u64| (0..p - 1).map(|_| Residue::new(1, p).unwrap()).collect::<Vec<_>>();
        assert_eq!(rational_matrix_det_mod_p(&ones(5), 5).unwrap().value(), 1);
        let mut constant = vec![Residue::new(0, 7).unwrap(); 6];
        constant[0] = Residue::new(1, 7).unwrap();
        assert_eq!(rational_matrix_det_mod_p(&constant, 7).unwrap().value(), 0);
        assert!(rational_matrix_det_mod_p(&ones(5)[..3], 5).is_err());
        assert!(rational_matrix_det_mod_p(&ones(7)[..4], 5).is_err());
    }

    #[test]
    fn binary_form_expansion() {
        // (X^2 + 2XY + 3Y^2)^2 = X^4 + 4X^3Y + 10X^2Y^2 + 12XY^3 + 9Y^4
        assert_eq!(binary_form_power_coeffs(2, 3, 2, 101), vec![9, 12, 10, 4, 1]);
        assert_eq!(binary_form_power_coeffs(2, 3, 0, 101), vec![1]);
    }
}
