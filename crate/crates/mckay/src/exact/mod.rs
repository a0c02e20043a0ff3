//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! Elements are stored as coordinate vectors over the power basis
//! {zeta_m^0, ..., zeta_m^{phi(m)-1}}, reduced modulo the m-th cyclotomic
//! polynomial. This gives a unique normal form, so equality is a
//! coefficient comparison after lifting both operands to a common
//! conductor. Rational numbers are cyclotomic numbers at conductor 1.

pub mod interval;
pub mod parse;
pub mod phi;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};
use phi::{cyclotomic_polynomial, euler_phi, poly_deg, poly_divrem, QPoly};

pub type Rational = BigRational;

pub use interval::RealInterval;

/// Per-conductor reduction data: Phi_m and the expansion of every power
/// zeta^k, 0 <= k < m, over the power basis.
struct Table {
    degree: usize,
    rows: Vec<Vec<Rational>>,
}

fn table(m: u64) -> Arc<Table> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Table>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(m)
        .or_insert_with(|| {
            let phi_m = cyclotomic_polynomial(m);
            let degree = poly_deg(&phi_m).unwrap();
            let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m as usize);
            for k in 0..degree.min(m as usize) {
                let mut row = vec![Rational::zero(); degree];
                row[k] = Rational::one();
                rows.push(row);
            }
            while rows.len() < m as usize {
                let prev = rows.last().unwrap();
                let mut row = vec![Rational::zero(); degree];
                let carry = prev[degree - 1].clone();
                for i in 1..degree {
                    row[i] = prev[i - 1].clone();
                }
                if !carry.is_zero() {
                    for i in 0..degree {
                        row[i] -= &carry * &phi_m[i];
                    }
                }
                rows.push(row);
            }
            Arc::new(Table { degree, rows })
        })
        .clone()
}

/// An element of Q(zeta_m) in power-basis normal form.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    m: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            m: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Cyclotomic {
            m: 1,
            coeffs: vec![Rational::one()],
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic {
            m: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// zeta_m
    pub fn zeta(m: u64) -> Self {
        Self::zeta_pow(m, 1)
    }

    /// zeta_m^k, any integer k.
    pub fn zeta_pow(m: u64, k: i64) -> Self {
        Self::from_exponents(m, &[(k, Rational::one())])
    }

    /// Sum of coeff * zeta_m^exp terms, reduced to normal form.
    pub fn from_exponents(m: u64, terms: &[(i64, Rational)]) -> Self {
        assert!(m >= 1);
        let tab = table(m);
        let mut coeffs = vec![Rational::zero(); tab.degree];
        for (exp, c) in terms {
            if c.is_zero() {
                continue;
            }
            let k = exp.rem_euclid(m as i64) as usize;
            for (i, r) in tab.rows[k].iter().enumerate() {
                if !r.is_zero() {
                    coeffs[i] += c * r;
                }
            }
        }
        Cyclotomic { m, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element is concentrated on the basis
    /// vector zeta^0.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map_or(false, |q| q.is_one())
    }

    /// Re-express the element at conductor target, where m | target.
    pub fn lift(&self, target: u64) -> Self {
        if target == self.m {
            return self.clone();
        }
        assert!(
            target % self.m == 0,
            "lift target {target} not a multiple of {}",
            self.m
        );
        let stride = (target / self.m) as i64;
        let terms: Vec<(i64, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (k as i64 * stride, c.clone()))
            .collect();
        Self::from_exponents(target, &terms)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.m.lcm(&b.m);
        (a.lift(m), b.lift(m))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse; division by zero is an error.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        // extended Euclid in Q[x] against Phi_m; gcd is a nonzero constant
        let phi_m = cyclotomic_polynomial(self.m);
        let mut a: QPoly = self.coeffs.clone();
        phi::poly_trim(&mut a);
        let (mut r0, mut r1) = (phi_m, a);
        let (mut u0, mut u1): (QPoly, QPoly) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let u = phi::poly_sub(&u0, &phi::poly_mul(&q, &u1));
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u);
        }
        debug_assert_eq!(poly_deg(&r0), Some(0), "Phi_m must be coprime to a != 0");
        let g = r0[0].clone();
        let mut coeffs = vec![Rational::zero(); self.coeffs.len()];
        for (i, c) in u0.iter().enumerate() {
            coeffs[i] = c / &g;
        }
        Ok(Cyclotomic { m: self.m, coeffs })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(result)
    }

    /// The ring automorphism zeta_m -> zeta_m^k, for gcd(k, m) = 1.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let m = self.m as i64;
        let kk = k.rem_euclid(m) as u64;
        if self.m > 1 && kk.gcd(&self.m) != 1 {
            return Err(Error::NonCoprimeGalois { k, m: self.m });
        }
        let terms: Vec<(i64, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| ((j as u64 * kk) as i64, c.clone()))
            .collect();
        Ok(Self::from_exponents(self.m, &terms))
    }

    /// Complex conjugation zeta -> zeta^{-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is always coprime to m")
    }

    /// True iff every element of the subgroup of (Z/m)* generated by
    /// `gens` fixes the element.
    pub fn is_in_fixed_field(&self, gens: &[u64]) -> Result<bool> {
        for h in subgroup_generated(self.m, gens)? {
            if self.galois(h as i64)? != *self {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Try to re-express the element at conductor d (d | m or m | d or
    /// otherwise via the lcm); returns None if the element does not lie
    /// in Q(zeta_d).
    pub fn try_conductor(&self, d: u64) -> Option<Self> {
        if d == self.m {
            return Some(self.clone());
        }
        if d % self.m == 0 {
            return Some(self.lift(d));
        }
        let m = self.m.lcm(&d);
        let lifted = if m == self.m { self.clone() } else { self.lift(m) };
        // fixed-field test for Gal(Q(zeta_m)/Q(zeta_d)) = {k = 1 mod d}
        for k in 1..m {
            if k.gcd(&m) == 1 && k % d == 1 % d {
                if lifted.galois(k as i64).ok()? != lifted {
                    return None;
                }
            }
        }
        // solve for coordinates over the lifted power basis of Q(zeta_d)
        let deg_d = euler_phi(d) as usize;
        let columns: Vec<Vec<Rational>> = (0..deg_d)
            .map(|j| Self::zeta_pow(d, j as i64).lift(m).coeffs)
            .collect();
        let sol = solve_linear(&columns, &lifted.coeffs)?;
        Some(Cyclotomic { m: d, coeffs: sol })
    }

    /// Optional normalization pass: the least divisor d of the conductor
    /// with the element in Q(zeta_d).
    pub fn minimize_conductor(&self) -> Self {
        for d in phi::divisors(self.m) {
            if let Some(v) = self.try_conductor(d) {
                return v;
            }
        }
        self.clone()
    }

    /// True iff the element is fixed by complex conjugation, i.e. real
    /// under every embedding.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }
}

/// Enumerate the subgroup of (Z/m)* generated by the given residues.
pub fn subgroup_generated(m: u64, gens: &[u64]) -> Result<Vec<u64>> {
    let reduce = |x: u64| if m == 1 { 0 } else { x % m };
    for &g in gens {
        let r = reduce(g);
        if m > 1 && r.gcd(&m) != 1 {
            return Err(Error::InvalidField(format!(
                "generator {g} is not coprime to the conductor {m}"
            )));
        }
    }
    let id = reduce(1);
    let mut seen = vec![id];
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = if m == 1 { 0 } else { (x * reduce(g)) % m };
            if !seen.contains(&y) {
                seen.push(y);
                frontier.push(y);
            }
        }
    }
    seen.sort_unstable();
    Ok(seen)
}

/// Solve sum_j c_j * columns[j] = target over Q by Gaussian elimination.
fn solve_linear(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let rows = target.len();
    let cols = columns.len();
    let mut aug: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(pivot_row, p);
        let inv = aug[pivot_row][col].clone().recip();
        for c in col..=cols {
            aug[pivot_row][c] = &aug[pivot_row][c] * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in col..=cols {
                    let delta = &f * &aug[pivot_row][c];
                    aug[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    // consistency: all-zero coefficient rows must have zero rhs
    for r in pivot_row..rows {
        if !aug[r][cols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rational::zero(); cols];
    for (r, &col) in pivots.iter().enumerate() {
        sol[col] = aug[r][cols].clone();
    }
    Some(sol)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Cyclotomic::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = Cyclotomic::common(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::common(self, rhs);
        let m = a.m;
        let d = a.coeffs.len();
        let mut conv = vec![Rational::zero(); 2 * d - 1];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if !cb.is_zero() {
                    conv[i + j] += ca * cb;
                }
            }
        }
        let terms: Vec<(i64, Rational)> = conv
            .into_iter()
            .enumerate()
            .map(|(k, c)| (k as i64, c))
            .collect();
        Cyclotomic::from_exponents(m, &terms)
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", parse::render(self))
    }
}

fn sqrt_impl(v: &Rational, num: bool) -> Option<BigInt> {
    let x = if num { v.numer() } else { v.denom() };
    let r = x.sqrt();
    if &(&r * &r) == x {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(v: &Rational) -> Option<Rational> {
    if v.is_negative() {
        return None;
    }
    let n = sqrt_impl(v, true)?;
    let d = sqrt_impl(v, false)?;
    Some(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let i = Cyclotomic::zeta(4);
        assert_eq!(&i * &i, Cyclotomic::from_int(-1));
    }

    #[test]
    fn primitive_fifth_roots_sum_to_minus_one() {
        let a = &Cyclotomic::zeta_pow(5, 1) + &Cyclotomic::zeta_pow(5, 4);
        let b = &Cyclotomic::zeta_pow(5, 2) + &Cyclotomic::zeta_pow(5, 3);
        assert_eq!(&a + &b, Cyclotomic::from_int(-1));
    }

    #[test]
    fn inverse_of_two_is_one_half() {
        let two = Cyclotomic::from_int(2);
        assert_eq!(two.inv().unwrap(), Cyclotomic::from_rational(q(1, 2)));
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert!(matches!(
            Cyclotomic::zero().inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn galois_identity_and_defining_action() {
        let z5 = Cyclotomic::zeta(5);
        assert_eq!(z5.galois(1).unwrap(), z5);
        assert_eq!(z5.galois(2).unwrap(), Cyclotomic::zeta_pow(5, 2));
    }

    #[test]
    fn galois_minus_one_fixes_real_subfield() {
        let a = &Cyclotomic::zeta(8) + &Cyclotomic::zeta_pow(8, -1);
        assert_eq!(a.galois(7).unwrap(), a);
        assert!(a.is_real());
    }

    #[test]
    fn galois_rejects_non_coprime() {
        assert!(matches!(
            Cyclotomic::zeta(8).galois(2),
            Err(Error::NonCoprimeGalois { .. })
        ));
    }

    #[test]
    fn fixed_field_membership() {
        let n = 7;
        let real = &Cyclotomic::zeta(n) + &Cyclotomic::zeta_pow(n, -1);
        assert!(real.is_in_fixed_field(&[n - 1]).unwrap());
        let z3 = Cyclotomic::zeta(3);
        assert!(!z3.is_in_fixed_field(&[2]).unwrap());
        let r = Cyclotomic::from_rational(q(7, 3));
        assert!(r.is_in_fixed_field(&[1]).unwrap());
    }

    #[test]
    fn conductor_lift_round_trip() {
        let z3 = Cyclotomic::zeta(3);
        let lifted = z3.lift(12);
        assert_eq!(lifted.conductor(), 12);
        assert_eq!(lifted, z3);
        assert_eq!(lifted.try_conductor(3).unwrap(), z3);
        assert_eq!(lifted.minimize_conductor().conductor(), 3);
    }

    #[test]
    fn try_conductor_fails_outside_subfield() {
        assert!(Cyclotomic::zeta(8).try_conductor(4).is_none());
    }

    #[test]
    fn zeta6_minimizes_to_conductor_3() {
        // zeta_6 = -zeta_3^2 lies in Q(zeta_3)
        let z6 = Cyclotomic::zeta(6);
        let min = z6.minimize_conductor();
        assert_eq!(min.conductor(), 3);
        assert_eq!(min, z6);
    }

    fn arb_cyclotomic(m: u64) -> impl Strategy<Value = Cyclotomic> {
        let d = euler_phi(m) as usize;
        proptest::collection::vec((-6i64..=6, 1i64..=4), d).prop_map(move |cs| {
            let terms: Vec<(i64, Rational)> = cs
                .into_iter()
                .enumerate()
                .map(|(k, (n, den))| (k as i64, q(n, den)))
                .collect();
            Cyclotomic::from_exponents(m, &terms)
        })
    }

    fn arb_conductor() -> impl Strategy<Value = u64> {
        1u64..=24
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn field_axioms((m, seed) in arb_conductor().prop_flat_map(|m| (Just(m), (arb_cyclotomic(m), arb_cyclotomic(m), arb_cyclotomic(m))))) {
            let (a, b, c) = seed;
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            let _ = m;
        }

        #[test]
        fn inverse_is_two_sided((m, a) in arb_conductor().prop_flat_map(|m| (Just(m), arb_cyclotomic(m)))) {
            prop_assume!(!a.is_zero());
            let inv = a.inv().unwrap();
            prop_assert_eq!(&a * &inv, Cyclotomic::one());
            let _ = m;
        }

        #[test]
        fn galois_is_ring_homomorphism((m, a, b) in arb_conductor().prop_flat_map(|m| (Just(m), arb_cyclotomic(m), arb_cyclotomic(m)))) {
            // pick the smallest nontrivial residue coprime to m
            let k = (1..=m as i64).find(|k| (*k as u64).gcd(&m) == 1 && (*k > 1 || m <= 2)).unwrap();
            let ga = a.galois(k).unwrap();
            let gb = b.galois(k).unwrap();
            prop_assert_eq!((&a + &b).galois(k).unwrap(), &ga + &gb);
            prop_assert_eq!((&a * &b).galois(k).unwrap(), &ga * &gb);
        }

        #[test]
        fn galois_composition_is_exponent_product((m, a) in arb_conductor().prop_flat_map(|m| (Just(m), arb_cyclotomic(m)))) {
            let units: Vec<i64> = (1..=m as i64).filter(|k| (*k as u64).gcd(&m) == 1).collect();
            for &j in units.iter().take(3) {
                for &k in units.iter().take(3) {
                    let two_step = a.galois(k).unwrap().galois(j).unwrap();
                    let one_step = a.galois((j * k) % m as i64).unwrap();
                    prop_assert_eq!(two_step, one_step);
                }
            }
        }
    }

    #[test]
    fn rational_sqrt_works() {
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&q(2, 1)), None);
        assert_eq!(rational_sqrt(&q(-4, 1)), None);
    }
}
