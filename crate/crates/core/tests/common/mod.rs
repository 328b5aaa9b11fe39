//! Slow, definitional reference implementations shared by the integration
//! tests. Nothing here calls into the library.

#![allow(dead_code)]

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn pow_mod(base: u64, mut exp: u64, p: u64) -> u64 {
    let (mut acc, mut b) = (1u128 % p as u128, (base % p) as u128);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p as u128;
        }
        b = b * b % p as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse by exhaustive search; `p` must be small.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    (1..p).find(|&x| a % p * x % p == 1).expect("invertible")
}

pub fn reduce(a: i128, p: u64) -> u64 {
    a.rem_euclid(p as i128) as u64
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_squarefree(n: u64) -> bool {
    trial_factor(n).iter().all(|&(_, e)| e == 1)
}

pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

/// Quadratic-residue table of an odd prime built by squaring every element.
pub fn square_table(p: u64) -> Vec<bool> {
    let mut t = vec![false; p as usize];
    for x in 1..p {
        t[(x * x % p) as usize] = true;
    }
    t
}

pub fn legendre(a: i128, p: u64) -> i32 {
    let r = reduce(a, p);
    match (r, square_table(p)[r as usize]) {
        (0, _) => 0,
        (_, true) => 1,
        _ => -1,
    }
}

/// Product of Legendre symbols over the factorisation of `n`.
pub fn jacobi(a: i128, n: u64) -> i32 {
    trial_factor(n).iter().map(|&(q, e)| legendre(a, q).pow(e)).product()
}

/// Determinant mod `p` by textbook Gaussian elimination.
pub fn det_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_multiple_of(p)) else { return 0 };
        if piv != k {
            m.swap(piv, k);
            det = (p - det) % p;
        }
        det = det * m[k][k] % p;
        let inv = pow_mod(m[k][k], p - 2, p);
        let pivot_row = m[k].clone();
        for row in m.iter_mut().skip(k + 1) {
            let f = row[k] * inv % p;
            for (v, &q) in row.iter_mut().zip(&pivot_row).skip(k) {
                *v = (*v + p - f * q % p) % p;
            }
        }
    }
    det
}

/// Leibniz formula over all permutations.
pub fn det_leibniz(m: &[Vec<i64>]) -> i128 {
    fn go(m: &[Vec<i64>], row: usize, used: &mut [bool], sign: i128, acc: i128, total: &mut i128) {
        let n = m.len();
        if row == n {
            *total += sign * acc;
            return;
        }
        for col in 0..n {
            if used[col] {
                continue;
            }
            // unused columns to the left become inversions
            let inv = (0..col).filter(|&c| !used[c]).count();
            let s = if inv % 2 == 0 { sign } else { -sign };
            used[col] = true;
            go(m, row + 1, used, s, acc * m[row][col] as i128, total);
            used[col] = false;
        }
    }
    let mut total = 0;
    go(m, 0, &mut vec![false; m.len()], 1, 1, &mut total);
    total
}

/// `(i² + cij + dj²)^e mod p` on the index range `lo..=hi`.
pub fn power_matrix(c: i64, d: i64, e: u64, lo: u64, hi: u64, p: u64) -> Vec<Vec<u64>> {
    (lo..=hi)
        .map(|i| {
            (lo..=hi)
                .map(|j| {
                    let (i, j) = (i as i128, j as i128);
                    let v = reduce(i * i + c as i128 * i * j + d as i128 * j * j, p);
                    if e == 0 { 1 } else { pow_mod(v, e, p) }
                })
                .collect()
        })
        .collect()
}

/// `Σ₁, Σ₂ mod p` summed term by term with exhaustive inverses.
pub fn sigmas(p: u64) -> (u64, u64) {
    let q = |num: i128, den: i128| reduce(num, p) * inv_mod(reduce(den, p), p) % p;
    let (mut s1, mut s2) = (q(1, 6), q(1, 6));
    for k in 1..=((p - 1) / 6) as i128 {
        s1 = (s1 + q(1, 18 * k - 13) + p - q(1, 18 * k - 2)) % p;
        s2 = (s2 + q(1, 18 * k - 4) + p - q(1, 18 * k - 11)) % p;
    }
    (s1, s2)
}
