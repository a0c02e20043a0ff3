//! Certified real-interval evaluation of cyclotomic numbers.
//!
//! Real embeddings zeta_m -> exp(2 pi i k/m) are evaluated with exact
//! rational interval arithmetic: pi comes from a Machin formula with
//! alternating-series truncation bounds, cos and sin from Taylor series
//! on arguments reduced to [0, pi/4]. No floating point anywhere, so an
//! interval is a proof that the value lies inside it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Cyclotomic, Rational};
use crate::{Error, Result};

/// A closed interval with rational endpoints, guaranteed to contain the
/// exact real value it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RealInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted interval");
        RealInterval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        RealInterval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_interval(&self, other: &RealInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn add(&self, other: &RealInterval) -> Self {
        RealInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn neg(&self) -> Self {
        RealInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    /// Multiply by an exact rational scalar.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_negative() {
            RealInterval {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            RealInterval {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    /// Round endpoints outward to denominator 2^bits, keeping containment
    /// while bounding coefficient growth.
    pub fn round_dyadic(&self, bits: u32) -> Self {
        let scale = Rational::from_integer(BigInt::one() << bits);
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        RealInterval { lo, hi }
    }
}

fn pow2_inv(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits)
}

/// arctan(1/n) bracketed by consecutive partial sums of the alternating
/// Leibniz-type series.
fn arctan_inv(n: i64, bits: u32) -> RealInterval {
    let eps = pow2_inv(bits);
    let nsq = BigInt::from(n) * BigInt::from(n);
    let mut term = Rational::new(BigInt::one(), BigInt::from(n));
    let mut sum = Rational::zero();
    let mut i: u64 = 0;
    loop {
        let contribution = &term / Rational::from_integer(BigInt::from(2 * i as i64 + 1));
        if contribution < eps {
            // partial sum and partial sum +/- next term bracket the value
            return if i % 2 == 0 {
                RealInterval::new(sum.clone(), sum + contribution)
            } else {
                RealInterval::new(&sum - &contribution, sum)
            };
        }
        if i % 2 == 0 {
            sum += contribution;
        } else {
            sum -= contribution;
        }
        term /= Rational::from_integer(nsq.clone());
        i += 1;
    }
}

/// pi via Machin's formula 16 arctan(1/5) - 4 arctan(1/239).
pub fn pi_interval(bits: u32) -> RealInterval {
    let a = arctan_inv(5, bits + 6).scale(&Rational::from_integer(BigInt::from(16)));
    let b = arctan_inv(239, bits + 6).scale(&Rational::from_integer(BigInt::from(4)));
    a.add(&b.neg())
}

/// cos evaluated at an exact rational x with |x| <= 1, bracketed by
/// alternating partial sums.
fn cos_point(x: &Rational, bits: u32) -> RealInterval {
    let eps = pow2_inv(bits);
    let xsq = x * x;
    debug_assert!(xsq <= Rational::one());
    let mut term = Rational::one();
    let mut sum = Rational::zero();
    let mut i: u64 = 0;
    loop {
        if term.abs() < eps {
            // remaining tail lies between 0 and the pending signed term
            return if i % 2 == 0 {
                RealInterval::new(sum.clone(), &sum + &term)
            } else {
                RealInterval::new(&sum - &term, sum)
            };
        }
        if i % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        let denom = BigInt::from((2 * i + 1) * (2 * i + 2));
        term = &term * &xsq / Rational::from_integer(denom);
        i += 1;
    }
}

fn sin_point(x: &Rational, bits: u32) -> RealInterval {
    let eps = pow2_inv(bits);
    let xsq = x * x;
    debug_assert!(xsq <= Rational::one());
    let mut term = x.clone();
    let mut sum = Rational::zero();
    let mut i: u64 = 0;
    loop {
        if term.abs() < eps {
            return if i % 2 == 0 {
                RealInterval::new(sum.clone(), &sum + &term)
            } else {
                RealInterval::new(&sum - &term, sum)
            };
        }
        if i % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        let denom = BigInt::from((2 * i + 2) * (2 * i + 3));
        term = &term * &xsq / Rational::from_integer(denom);
        i += 1;
    }
}

/// cos applied to an interval inside [0, pi/4], where cos is decreasing.
fn cos_on_interval(x: &RealInterval, bits: u32) -> RealInterval {
    let lo = cos_point(&x.hi, bits);
    let hi = cos_point(&x.lo, bits);
    RealInterval::new(lo.lo, hi.hi)
}

/// sin applied to an interval inside [0, pi/4], where sin is increasing.
fn sin_on_interval(x: &RealInterval, bits: u32) -> RealInterval {
    let lo = sin_point(&x.lo, bits);
    let hi = sin_point(&x.hi, bits);
    RealInterval::new(lo.lo, hi.hi)
}

/// Certified interval for cos(2 pi q), q rational.
pub fn cos_two_pi(q: &Rational, bits: u32) -> RealInterval {
    let one = Rational::one();
    let mut q = q - q.floor();
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let quarter = Rational::new(BigInt::from(1), BigInt::from(4));
    let eighth = Rational::new(BigInt::from(1), BigInt::from(8));
    if q > half {
        q = &one - &q;
    }
    if q > quarter {
        return cos_two_pi(&(half - q), bits).neg();
    }
    let guard = bits + 6;
    let two_pi = pi_interval(guard).scale(&Rational::from_integer(BigInt::from(2)));
    if q > eighth {
        let angle = two_pi.scale(&(quarter - q));
        sin_on_interval(&angle, guard).round_dyadic(bits + 2)
    } else {
        let angle = two_pi.scale(&q);
        cos_on_interval(&angle, guard).round_dyadic(bits + 2)
    }
}

/// Result of evaluating a cyclotomic number under a real embedding.
#[derive(Clone, Debug)]
pub struct Embedded {
    /// Interval around the real part of the image.
    pub re: RealInterval,
    /// True iff the element is fixed by complex conjugation, so the
    /// image is exactly real under every embedding.
    pub certified_real: bool,
}

/// Evaluate the image of `a` under zeta_m -> exp(2 pi i k/m), returning a
/// certified interval for the real part of width at most 2^-precision_bits.
pub fn embed_real(a: &Cyclotomic, k: i64, precision_bits: u32) -> Result<Embedded> {
    let m = a.conductor();
    let kk = k.rem_euclid(m as i64) as u64;
    if m > 1 && kk.gcd(&m) != 1 {
        return Err(Error::NonCoprimeGalois { k, m });
    }
    let certified_real = a.is_real();
    if let Some(q) = a.as_rational() {
        return Ok(Embedded {
            re: RealInterval::point(q),
            certified_real,
        });
    }
    // per-term headroom so the summed width still meets the target
    let mut terms_bits = precision_bits + 4;
    loop {
        let mut acc = RealInterval::point(Rational::zero());
        for (j, c) in a.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = Rational::new(
                BigInt::from((j as u64 * kk) % m),
                BigInt::from(m),
            );
            acc = acc.add(&cos_two_pi(&q, terms_bits).scale(c));
        }
        if acc.width() <= pow2_inv(precision_bits) {
            return Ok(Embedded {
                re: acc,
                certified_real,
            });
        }
        terms_bits += 16;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pi_interval_brackets_pi() {
        let p = pi_interval(40);
        // 3.14159265358979 < pi < 3.14159265358980
        assert!(p.lo < q(314159265358980, 100000000000000));
        assert!(p.hi > q(314159265358979, 100000000000000));
        assert!(p.width() <= pow2_inv(40));
    }

    #[test]
    fn cos_two_pi_special_angles() {
        assert!(cos_two_pi(&q(0, 1), 30).contains(&q(1, 1)));
        assert!(cos_two_pi(&q(1, 2), 30).contains(&q(-1, 1)));
        assert!(cos_two_pi(&q(1, 4), 30).contains(&q(0, 1)));
        assert!(cos_two_pi(&q(1, 3), 30).contains(&q(-1, 2)));
        assert!(cos_two_pi(&q(1, 6), 30).contains(&q(1, 2)));
    }

    #[test]
    fn embed_sqrt2_contains_true_value() {
        let a = &Cyclotomic::zeta(8) + &Cyclotomic::zeta_pow(8, -1);
        let e = embed_real(&a, 1, 20).unwrap();
        assert!(e.certified_real);
        assert!(e.re.width() <= pow2_inv(20));
        // sqrt(2) in [lo, hi] iff lo^2 < 2 < hi^2 (endpoints positive)
        assert!(e.re.lo.is_positive());
        assert!(&e.re.lo * &e.re.lo < q(2, 1));
        assert!(&e.re.hi * &e.re.hi > q(2, 1));
    }

    #[test]
    fn embed_rational_is_exact_point() {
        let a = Cyclotomic::from_int(-1);
        let e = embed_real(&a, 1, 10).unwrap();
        assert_eq!(e.re, RealInterval::point(q(-1, 1)));
        assert!(e.certified_real);
    }

    #[test]
    fn embed_golden_ratio() {
        // (1 + sqrt 5)/2 with sqrt 5 = 2(zeta_5 + zeta_5^4) + 1
        let sqrt5 = (&Cyclotomic::zeta(5) + &Cyclotomic::zeta_pow(5, 4))
            .scale(&q(2, 1))
            + Cyclotomic::one();
        let phi = (&sqrt5 + &Cyclotomic::one()).scale(&q(1, 2));
        let e = embed_real(&phi, 1, 30).unwrap();
        // x^2 - x - 1 changes sign over the interval
        let p = |x: &Rational| x * x - x - Rational::one();
        assert!(p(&e.re.lo).is_negative());
        assert!(p(&e.re.hi).is_positive());
    }

    #[test]
    fn nested_precision_intervals() {
        let a = &Cyclotomic::zeta(7) + &Cyclotomic::zeta_pow(7, -1);
        for bits in [10u32, 20, 40] {
            let coarse = embed_real(&a, 1, bits).unwrap().re;
            let fine = embed_real(&a, 1, 2 * bits).unwrap().re;
            assert!(coarse.contains_interval(&fine), "bits = {bits}");
        }
    }

    #[test]
    fn non_real_element_flagged() {
        let e = embed_real(&Cyclotomic::zeta(5), 1, 20).unwrap();
        assert!(!e.certified_real);
        // real part of exp(2 pi i / 5) is cos(72 deg) ~ 0.309
        assert!(e.re.contains_interval(&cos_two_pi(&q(1, 5), 40)));
    }
}
