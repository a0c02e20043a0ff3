//! Dense univariate polynomials over Q and cyclotomic polynomials.
//!
//! Polynomials are coefficient vectors, constant term first, with no
//! trailing zeros. Everything here is exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QPoly = Vec<BigRational>;

pub fn poly_trim(p: &mut QPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub fn poly_deg(p: &QPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn poly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    poly_trim(&mut out);
    out
}

pub fn poly_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (i, cb) in b.iter().enumerate() {
        out[i] -= cb;
    }
    poly_trim(&mut out);
    out
}

/// Euclidean division: returns (quotient, remainder) with deg r < deg b.
pub fn poly_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let db = poly_deg(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.clone();
    let mut quot: QPoly = Vec::new();
    while let Some(dr) = poly_deg(&rem) {
        if dr < db {
            break;
        }
        let shift = dr - db;
        let c = &rem[dr] / &lead;
        if quot.len() <= shift {
            quot.resize(shift + 1, BigRational::zero());
        }
        quot[shift] = c.clone();
        for (i, cb) in b.iter().enumerate() {
            let delta = &c * cb;
            rem[i + shift] -= delta;
        }
        poly_trim(&mut rem);
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// x^k - 1 as a coefficient vector.
pub fn x_pow_minus_one(k: usize) -> QPoly {
    let mut p = vec![BigRational::zero(); k + 1];
    p[0] = -BigRational::one();
    p[k] = BigRational::one();
    p
}

pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Moebius function of m.
pub fn moebius(m: u64) -> i32 {
    let mut n = m;
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            count += 1;
        }
        p += 1;
    }
    if n > 1 {
        count += 1;
    }
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The m-th cyclotomic polynomial, via the Moebius inversion
/// Phi_m = prod_{d | m} (x^{m/d} - 1)^{mu(d)}.
pub fn cyclotomic_polynomial(m: u64) -> QPoly {
    assert!(m >= 1, "conductor must be positive");
    let mut num: QPoly = vec![BigRational::one()];
    let mut den: QPoly = vec![BigRational::one()];
    for d in divisors(m) {
        match moebius(d) {
            1 => num = poly_mul(&num, &x_pow_minus_one((m / d) as usize)),
            -1 => den = poly_mul(&den, &x_pow_minus_one((m / d) as usize)),
            _ => {}
        }
    }
    let (q, r) = poly_divrem(&num, &den);
    debug_assert!(r.is_empty(), "cyclotomic division must be exact");
    q
}

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent route: Phi_m = (x^m - 1) / prod of Phi_d over proper
    /// divisors d of m, computed recursively by exact division.
    fn phi_by_division(m: u64) -> QPoly {
        let mut num = x_pow_minus_one(m as usize);
        for d in divisors(m) {
            if d == m {
                continue;
            }
            let (q, r) = poly_divrem(&num, &phi_by_division(d));
            assert!(r.is_empty());
            num = q;
        }
        num
    }

    #[test]
    fn phi_1_is_x_minus_one() {
        assert_eq!(cyclotomic_polynomial(1), vec![big(-1), big(1)]);
    }

    #[test]
    fn phi_4_is_x2_plus_one() {
        // oracle: (x^4-1)/(Phi_1 * Phi_2)
        let expected = phi_by_division(4);
        assert_eq!(expected, vec![big(1), big(0), big(1)]);
        assert_eq!(cyclotomic_polynomial(4), expected);
    }

    #[test]
    fn phi_12_matches_divide_out_oracle() {
        let expected = phi_by_division(12);
        assert_eq!(expected, vec![big(1), big(0), big(-1), big(0), big(1)]);
        assert_eq!(cyclotomic_polynomial(12), expected);
    }

    #[test]
    fn phi_agrees_with_oracle_up_to_24() {
        for m in 1..=24 {
            assert_eq!(cyclotomic_polynomial(m), phi_by_division(m), "m = {m}");
        }
    }

    #[test]
    fn phi_product_over_divisors_reconstructs_x_m_minus_one() {
        for m in 1..=24u64 {
            let mut prod: QPoly = vec![big(1)];
            for d in divisors(m) {
                prod = poly_mul(&prod, &cyclotomic_polynomial(d));
            }
            assert_eq!(prod, x_pow_minus_one(m as usize), "m = {m}");
        }
    }

    #[test]
    fn phi_degree_is_euler_phi() {
        for m in 1..=40 {
            assert_eq!(
                poly_deg(&cyclotomic_polynomial(m)),
                Some(euler_phi(m) as usize)
            );
        }
    }

    #[test]
    fn moebius_small_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &mu) in expected.iter().enumerate() {
            assert_eq!(moebius(i as u64 + 1), mu);
        }
    }
}
