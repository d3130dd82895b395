//! Finite-field point counting utilities.
//!
//! These back two oracles: interpolation of the class of configuration
//! spaces of distinct points on the projective line from point counts over
//! small prime fields, and brute-force enumeration cross-checks for jet
//! strata.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Pow, Zero};

pub const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Number of squarefree monic polynomials of degree `k` over `F_q`, by the
/// unique-factorization recursion: every monic `f` factors uniquely as
/// `g h^2` with `g` squarefree, so `q^k = sum_{2j <= k} q^j S_{k-2j}`.
pub fn squarefree_monic_count(k: usize, q: u64) -> BigInt {
    let qb = BigInt::from(q);
    let mut s: Vec<BigInt> = Vec::with_capacity(k + 1);
    for n in 0..=k {
        let mut val = qb.clone().pow(n as u32);
        let mut j = 1;
        while 2 * j <= n {
            val -= qb.clone().pow(j as u32) * &s[n - 2 * j];
            j += 1;
        }
        s.push(val);
    }
    s[k].clone()
}

/// Brute-force count of squarefree monic polynomials of degree `k` over
/// `F_q`: enumerate and test `gcd(f, f') = 1`.
pub fn squarefree_monic_count_brute(k: usize, q: u64) -> u64 {
    if k == 0 {
        return 1;
    }
    let total = q.pow(k as u32);
    let mut count = 0;
    let mut coeffs = vec![0u64; k + 1];
    coeffs[k] = 1;
    for idx in 0..total {
        let mut v = idx;
        for c in coeffs.iter_mut().take(k) {
            *c = v % q;
            v /= q;
        }
        if is_squarefree(&coeffs, q) {
            count += 1;
        }
    }
    count
}

fn poly_trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn poly_mod(a: &mut Vec<u64>, b: &[u64], q: u64) {
    // a mod b over F_q, b nonzero
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], q);
    while a.len() > db {
        let da = a.len() - 1;
        let factor = (a[da] * lead_inv) % q;
        if factor != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let pos = da - db + i;
                a[pos] = (a[pos] + q * q - (factor * bc) % q) % q;
            }
        }
        a.pop();
        poly_trim(a);
        if a.is_empty() {
            break;
        }
    }
}

fn mod_inv(a: u64, q: u64) -> u64 {
    // q prime, a != 0
    let mut result = 1u64;
    let mut base = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    result
}

fn is_squarefree(coeffs: &[u64], q: u64) -> bool {
    // derivative
    let mut deriv: Vec<u64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % q) * c % q)
        .collect();
    poly_trim(&mut deriv);
    if deriv.is_empty() {
        // f' = 0: f is a p-th power (q = p prime), never squarefree for k >= 1
        return false;
    }
    // gcd(f, f')
    let mut a = coeffs.to_vec();
    let mut b = deriv;
    while !b.is_empty() {
        poly_mod(&mut a, &b, q);
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

/// Number of reduced effective divisors of degree `k` on the projective line
/// over `F_q`: squarefree monic polynomials of degree `k` (divisors avoiding
/// infinity) plus degree `k-1` (divisors containing infinity once).
pub fn reduced_divisor_count(k: usize, q: u64) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    squarefree_monic_count(k, q) + squarefree_monic_count(k - 1, q)
}

pub fn reduced_divisor_count_brute(k: usize, q: u64) -> u64 {
    if k == 0 {
        return 1;
    }
    squarefree_monic_count_brute(k, q) + squarefree_monic_count_brute(k - 1, q)
}

/// Exact Lagrange interpolation through `(x_i, y_i)`; returns dense
/// coefficients, lowest degree first.
pub fn lagrange_interpolate(points: &[(i64, BigRational)]) -> Vec<BigRational> {
    let n = points.len();
    let mut result = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::zero(); n];
        basis[0] = BigRational::one();
        let mut deg = 0;
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            // multiply basis by (x - x_j)
            for k in (0..=deg).rev() {
                let c = basis[k].clone();
                basis[k + 1] += &c;
                basis[k] = -c * BigRational::from_integer(BigInt::from(*xj));
            }
            deg += 1;
            denom *= BigRational::from_integer(BigInt::from(xi - xj));
        }
        let scale = yi / denom;
        for (r, b) in result.iter_mut().zip(basis) {
            *r += b * &scale;
        }
    }
    result
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use num::traits::ToPrimitive;

    #[test]
    fn recursion_matches_brute_enumeration() {
        for q in [2u64, 3, 5] {
            for k in 0..=9usize {
                if (q as u128).pow(k as u32) > 300_000 {
                    continue;
                }
                assert_eq!(
                    squarefree_monic_count(k, q).to_u64().unwrap(),
                    squarefree_monic_count_brute(k, q),
                    "k={} q={}",
                    k,
                    q
                );
            }
        }
    }

    #[test]
    fn divisor_counts() {
        // pairs of distinct points on P^1(F_q) plus conjugate pairs: q^2
        for q in [2u64, 3, 5, 7] {
            assert_eq!(
                reduced_divisor_count(2, q),
                BigInt::from(q * q)
            );
            // degree 1: the q + 1 points of P^1
            assert_eq!(reduced_divisor_count(1, q), BigInt::from(q + 1));
        }
    }

    #[test]
    fn interpolation_recovers_polynomials() {
        // x^2 - 3 through 3 points
        let f = |x: i64| BigRational::from_integer(BigInt::from(x * x - 3));
        let pts: Vec<(i64, BigRational)> = [2, 3, 5].iter().map(|&x| (x, f(x))).collect();
        let coeffs = lagrange_interpolate(&pts);
        assert_eq!(coeffs[0], BigRational::from_integer(BigInt::from(-3)));
        assert_eq!(coeffs[1], BigRational::zero());
        assert_eq!(coeffs[2], BigRational::one());
    }
}
