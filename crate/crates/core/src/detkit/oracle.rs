//! Reference determinant by cofactor (Laplace) expansion.
//!
//! Exponential time; it shares no code with the elimination engines and is
//! only meant for cross-checking them on small matrices.

use num_bigint::BigInt;
use num_traits::Zero;

use super::IntMatrix;

/// Cofactor expansion along the first remaining row.
pub fn det_cofactor(m: &IntMatrix) -> BigInt {
    let cols: Vec<usize> = (0..m.dim()).collect();
    expand(m, 0, &cols)
}

fn expand(m: &IntMatrix, row: usize, cols: &[usize]) -> BigInt {
    if cols.len() == 1 {
        return m.get(row, cols[0]).clone();
    }
    let mut total = BigInt::zero();
    for (pos, &c) in cols.iter().enumerate() {
        let entry = m.get(row, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = expand(m, row + 1, &rest);
        if pos % 2 == 0 {
            total += entry * minor;
        } else {
            total -= entry * minor;
        }
    }
    total
}
