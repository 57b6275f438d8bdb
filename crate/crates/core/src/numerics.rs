//! Directed-rounding interval arithmetic at configurable precision, plus
//! rigorous enclosures of the constants the bound formulas consume.
//!
//! Every operation returns an outward-rounded enclosure: if `x ∈ X` and
//! `y ∈ Y` then `x ∘ y ∈ X ∘ Y`. Endpoints are MPFR floats, so each endpoint
//! is correctly rounded in its direction and the enclosure property is exact,
//! not heuristic.

use std::fmt;

use rug::float::{Constant, Round};
use rug::ops::{AssignRound, Pow, PowAssignRound};
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Working precision (bits) used when a caller does not choose one.
pub const DEFAULT_PRECISION: u32 = 100;

/// Terms of the zeta partial sum when a caller does not choose.
pub const ZETA_DEFAULT_TERMS: u64 = 10_000;

fn dn<T>(prec: u32, src: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = std::cmp::Ordering>,
{
    Float::with_val_round(prec, src, Round::Down).0
}

fn up<T>(prec: u32, src: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = std::cmp::Ordering>,
{
    Float::with_val_round(prec, src, Round::Up).0
}

/// Position of an enclosure relative to a point threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdCmp {
    /// The whole enclosure lies strictly below the threshold.
    Below,
    /// The whole enclosure lies strictly above the threshold.
    Above,
    /// The enclosure straddles (or touches) the threshold; no verdict.
    Straddles,
}

#[derive(Debug, Clone, Copy)]
enum SignClass {
    NonNeg,
    NonPos,
    Mixed,
}

/// A rigorously rounded enclosure `[lo, hi]` of a real number.
///
/// Immutable after construction; safe to share between threads.
#[derive(Clone, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

impl Interval {
    /// Builds an interval from endpoints, validating `lo ≤ hi`.
    pub fn from_endpoints(lo: Float, hi: Float) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::Domain(format!(
                "invalid interval endpoints [{}, {}]",
                lo, hi
            )));
        }
        Ok(Interval { lo, hi })
    }

    /// The point interval `[x, x]`.
    pub fn point(x: Float) -> Self {
        let hi = x.clone();
        Interval { lo: x, hi }
    }

    pub fn from_u64(prec: u32, v: u64) -> Self {
        Interval {
            lo: dn(prec, v),
            hi: up(prec, v),
        }
    }

    pub fn from_u128(prec: u32, v: u128) -> Self {
        let i = Integer::from(v);
        Self::from_integer(prec, &i)
    }

    pub fn from_i64(prec: u32, v: i64) -> Self {
        Interval {
            lo: dn(prec, v),
            hi: up(prec, v),
        }
    }

    pub fn from_integer(prec: u32, v: &Integer) -> Self {
        Interval {
            lo: dn(prec, v),
            hi: up(prec, v),
        }
    }

    pub fn from_rational(prec: u32, v: &Rational) -> Self {
        Interval {
            lo: dn(prec, v),
            hi: up(prec, v),
        }
    }

    pub fn from_f64(prec: u32, v: f64) -> Self {
        Interval {
            lo: dn(prec, v),
            hi: up(prec, v),
        }
    }

    /// Exact ratio `num/den` as an enclosure.
    pub fn from_ratio(prec: u32, num: i64, den: u64) -> Self {
        let q = Rational::from((num, den as i64));
        Self::from_rational(prec, &q)
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    /// Outward conversion to another working precision.
    pub fn to_prec(&self, prec: u32) -> Self {
        Interval {
            lo: dn(prec, &self.lo),
            hi: up(prec, &self.hi),
        }
    }

    /// `hi − lo`, rounded up.
    pub fn width(&self) -> Float {
        up(self.prec(), &self.hi - &self.lo)
    }

    /// Lower endpoint as an `f64`, rounded towards −∞ (still an enclosure).
    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64_round(Round::Down)
    }

    /// Upper endpoint as an `f64`, rounded towards +∞ (still an enclosure).
    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64_round(Round::Up)
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        self.lo <= *q && *q <= self.hi
    }

    pub fn contains_integer(&self, n: &Integer) -> bool {
        self.lo <= *n && *n <= self.hi
    }

    pub fn contains_float(&self, x: &Float) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// `self ⊇ other`.
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    fn sign_class(&self) -> SignClass {
        if self.lo >= 0 {
            SignClass::NonNeg
        } else if self.hi <= 0 {
            SignClass::NonPos
        } else {
            SignClass::Mixed
        }
    }

    /// Compares the enclosure against an exact rational threshold, proving
    /// `< q` from the upper bound and `> q` from the lower bound.
    pub fn cmp_threshold(&self, q: &Rational) -> ThresholdCmp {
        if self.hi < *q {
            ThresholdCmp::Below
        } else if self.lo > *q {
            ThresholdCmp::Above
        } else {
            ThresholdCmp::Straddles
        }
    }

    /// True iff the whole enclosure is provably `< other` everywhere.
    pub fn proved_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    /// True iff the whole enclosure is provably `≤ other` everywhere.
    pub fn proved_le(&self, other: &Interval) -> bool {
        self.hi <= other.lo
    }

    fn join_prec(&self, rhs: &Interval) -> u32 {
        self.prec().max(rhs.prec())
    }

    pub fn add(&self, rhs: &Interval) -> Interval {
        let prec = self.join_prec(rhs);
        Interval {
            lo: dn(prec, &self.lo + &rhs.lo),
            hi: up(prec, &self.hi + &rhs.hi),
        }
    }

    pub fn sub(&self, rhs: &Interval) -> Interval {
        let prec = self.join_prec(rhs);
        Interval {
            lo: dn(prec, &self.lo - &rhs.hi),
            hi: up(prec, &self.hi - &rhs.lo),
        }
    }

    /// Negation is exact in binary floating point; no rounding occurs.
    pub fn neg(&self) -> Interval {
        let prec = self.prec();
        Interval {
            lo: Float::with_val(prec, -&self.hi),
            hi: Float::with_val(prec, -&self.lo),
        }
    }

    pub fn mul(&self, rhs: &Interval) -> Interval {
        use SignClass::*;
        let prec = self.join_prec(rhs);
        let (a, b) = (self, rhs);
        let (lo, hi) = match (a.sign_class(), b.sign_class()) {
            (NonNeg, NonNeg) => (dn(prec, &a.lo * &b.lo), up(prec, &a.hi * &b.hi)),
            (NonNeg, NonPos) => (dn(prec, &a.hi * &b.lo), up(prec, &a.lo * &b.hi)),
            (NonNeg, Mixed) => (dn(prec, &a.hi * &b.lo), up(prec, &a.hi * &b.hi)),
            (NonPos, NonNeg) => (dn(prec, &a.lo * &b.hi), up(prec, &a.hi * &b.lo)),
            (NonPos, NonPos) => (dn(prec, &a.hi * &b.hi), up(prec, &a.lo * &b.lo)),
            (NonPos, Mixed) => (dn(prec, &a.lo * &b.hi), up(prec, &a.lo * &b.lo)),
            (Mixed, NonNeg) => (dn(prec, &a.lo * &b.hi), up(prec, &a.hi * &b.hi)),
            (Mixed, NonPos) => (dn(prec, &a.hi * &b.lo), up(prec, &a.lo * &b.lo)),
            (Mixed, Mixed) => {
                let l1 = dn(prec, &a.lo * &b.hi);
                let l2 = dn(prec, &a.hi * &b.lo);
                let h1 = up(prec, &a.lo * &b.lo);
                let h2 = up(prec, &a.hi * &b.hi);
                (if l1 < l2 { l1 } else { l2 }, if h1 > h2 { h1 } else { h2 })
            }
        };
        Interval { lo, hi }
    }

    /// Division; the divisor must not contain zero.
    pub fn div(&self, rhs: &Interval) -> Result<Interval> {
        let prec = self.join_prec(rhs);
        if rhs.lo > 0 {
            let lo = if self.lo >= 0 {
                dn(prec, &self.lo / &rhs.hi)
            } else {
                dn(prec, &self.lo / &rhs.lo)
            };
            let hi = if self.hi >= 0 {
                up(prec, &self.hi / &rhs.lo)
            } else {
                up(prec, &self.hi / &rhs.hi)
            };
            Ok(Interval { lo, hi })
        } else if rhs.hi < 0 {
            Ok(self.div(&rhs.neg())?.neg())
        } else {
            Err(Error::Domain(format!(
                "division by an enclosure containing zero: {}",
                rhs
            )))
        }
    }

    /// `1/self`; the interval must not contain zero.
    pub fn recip(&self) -> Result<Interval> {
        let one = Interval::from_u64(self.prec(), 1);
        one.div(self)
    }

    /// Natural logarithm; requires a strictly positive enclosure.
    pub fn ln(&self) -> Result<Interval> {
        if self.lo <= 0 {
            return Err(Error::Domain(format!(
                "log of an enclosure not strictly positive: {}",
                self
            )));
        }
        let mut lo = self.lo.clone();
        lo.ln_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.ln_round(Round::Up);
        Ok(Interval { lo, hi })
    }

    pub fn exp(&self) -> Interval {
        let mut lo = self.lo.clone();
        lo.exp_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.exp_round(Round::Up);
        Interval { lo, hi }
    }

    /// Square root; requires a non-negative enclosure.
    pub fn sqrt(&self) -> Result<Interval> {
        if self.lo < 0 {
            return Err(Error::Domain(format!(
                "sqrt of an enclosure containing negatives: {}",
                self
            )));
        }
        let mut lo = self.lo.clone();
        lo.sqrt_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.sqrt_round(Round::Up);
        Ok(Interval { lo, hi })
    }

    /// Integer power with sign analysis.
    pub fn pow_u(&self, k: u32) -> Interval {
        let prec = self.prec();
        if k == 0 {
            return Interval::from_u64(prec, 1);
        }
        match self.sign_class() {
            SignClass::NonNeg => {
                let mut lo = self.lo.clone();
                lo.pow_assign_round(k, Round::Down);
                let mut hi = self.hi.clone();
                hi.pow_assign_round(k, Round::Up);
                Interval { lo, hi }
            }
            SignClass::NonPos => {
                let p = self.neg().pow_u(k);
                if k.is_multiple_of(2) {
                    p
                } else {
                    p.neg()
                }
            }
            SignClass::Mixed => {
                if k % 2 == 1 {
                    let mut lo = self.lo.clone();
                    lo.pow_assign_round(k, Round::Down);
                    let mut hi = self.hi.clone();
                    hi.pow_assign_round(k, Round::Up);
                    Interval { lo, hi }
                } else {
                    let m = self.neg();
                    let mag = if m.hi > self.hi {
                        m.hi
                    } else {
                        self.hi.clone()
                    };
                    let mut hi = mag;
                    hi.pow_assign_round(k, Round::Up);
                    Interval {
                        lo: Float::with_val(prec, 0),
                        hi,
                    }
                }
            }
        }
    }

    /// Signed integer power; negative exponents require a zero-free interval.
    pub fn pow_i(&self, k: i32) -> Result<Interval> {
        if k >= 0 {
            Ok(self.pow_u(k as u32))
        } else {
            self.pow_u(k.unsigned_abs()).recip()
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Interval {{ lo: {}, hi: {}, prec: {} }}",
            self.lo,
            self.hi,
            self.prec()
        )
    }
}

/// Enclosure of π at the given precision.
pub fn pi(prec: u32) -> Interval {
    Interval {
        lo: dn(prec, Constant::Pi),
        hi: up(prec, Constant::Pi),
    }
}

/// Enclosure of the Euler–Mascheroni constant γ.
///
/// Width is one unit in the last place, well inside the `2^-(prec-4)`
/// contract.
pub fn euler_gamma(prec: u32) -> Result<Interval> {
    if prec < 53 {
        return Err(Error::Domain(format!(
            "euler_gamma requires precision ≥ 53, got {prec}"
        )));
    }
    Ok(Interval {
        lo: dn(prec, Constant::Euler),
        hi: up(prec, Constant::Euler),
    })
}

/// Enclosures of γ and e^γ at a fixed working precision.
#[derive(Clone)]
pub struct Constants {
    pub gamma: Interval,
    pub exp_gamma: Interval,
    prec: u32,
}

impl Constants {
    pub fn new(prec: u32) -> Result<Self> {
        let gamma = euler_gamma(prec)?;
        let exp_gamma = gamma.exp();
        Ok(Constants {
            gamma,
            exp_gamma,
            prec,
        })
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Enclosure of e^(−γ).
    pub fn exp_neg_gamma(&self) -> Interval {
        self.gamma.neg().exp()
    }
}

/// Rigorous enclosure of ζ(t) for an integer exponent t ≥ 2.
///
/// Partial sum of `n_terms` exact reciprocal powers plus an Euler–Maclaurin
/// bracket for the tail: for `f(x) = x^(−t)` (completely monotone) the
/// remainder after the B₄ term has the sign of, and is no larger than, the
/// first omitted term, so the tail lies between two exact rationals.
pub fn zeta_with_terms(t: u32, prec: u32, n_terms: u64) -> Result<Interval> {
    if t < 2 {
        return Err(Error::Domain(format!("zeta requires t ≥ 2, got {t}")));
    }
    let n_terms = n_terms.max(8);

    let mut sum = Interval::from_u64(prec, 1);
    for k in 2..=n_terms {
        let kt = Integer::from(k).pow(t);
        let term = Interval::from_integer(prec, &kt).recip()?;
        sum = sum.add(&term);
    }

    // Tail over k > N:
    //   S = 1/((t−1)·N^(t−1)) − 1/(2·N^t) + t/(12·N^(t+1))
    //       − t(t+1)(t+2)/(720·N^(t+3))
    //   tail ∈ [S, S + rem],
    //   rem = t(t+1)(t+2)(t+3)(t+4)/(30240·N^(t+5))
    let n = Integer::from(n_terms);
    let ti = Integer::from(t);
    let pow = |e: u32| -> Integer { n.clone().pow(e) };
    let term1 = Rational::from((Integer::from(1), (ti.clone() - 1u32) * pow(t - 1)));
    let term2 = Rational::from((Integer::from(1), 2 * pow(t)));
    let term3 = Rational::from((ti.clone(), 12 * pow(t + 1)));
    let c4 = ti.clone() * (ti.clone() + 1u32) * (ti.clone() + 2u32);
    let term4 = Rational::from((c4.clone(), 720 * pow(t + 3)));
    let c6 = c4 * (ti.clone() + 3u32) * (ti + 4u32);
    let rem = Rational::from((c6, 30240 * pow(t + 5)));

    let s = term1 - term2 + term3 - term4;
    let s_hi = s.clone() + rem;
    let tail = Interval {
        lo: dn(prec, &s),
        hi: up(prec, &s_hi),
    };

    Ok(sum.add(&tail))
}

/// ζ(t) at the default partial-sum length.
pub fn zeta(t: u32, prec: u32) -> Result<Interval> {
    zeta_with_terms(t, prec, ZETA_DEFAULT_TERMS)
}

/// Parses a plain decimal string (e.g. `"0.57721566490153286"`) into an
/// exact rational. Intended for exact threshold and digit-anchor tests.
pub fn rational_from_decimal(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Format(format!("empty decimal literal: {s:?}")));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(Error::Format(format!("invalid decimal literal: {s:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    let num = Integer::from_str_radix(&digits, 10)
        .map_err(|e| Error::Format(format!("invalid decimal literal {s:?}: {e}")))?;
    let den = Integer::from(10u32).pow(frac_part.len() as u32);
    Ok(Rational::from((num * sign, den)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn iv(prec: u32, lo: i64, hi: i64) -> Interval {
        Interval::from_endpoints(Float::with_val(prec, lo), Float::with_val(prec, hi)).unwrap()
    }

    #[test]
    fn add_exact_endpoints() {
        let r = iv(100, 1, 2).add(&iv(100, 3, 4));
        assert_eq!(*r.lo(), 4);
        assert_eq!(*r.hi(), 6);
    }

    #[test]
    fn mul_mixed_signs() {
        let r = iv(100, -1, 1).mul(&iv(100, -1, 1));
        assert_eq!(*r.lo(), -1);
        assert_eq!(*r.hi(), 1);

        let r = iv(100, -2, 3).mul(&iv(100, -5, 7));
        assert_eq!(*r.lo(), -15);
        assert_eq!(*r.hi(), 21);
    }

    #[test]
    fn log_of_e_is_one() {
        let e = Interval::from_u64(100, 1).exp();
        let one = e.ln().unwrap();
        assert!(one.contains_rational(&Rational::from(1)));
        let w = one.width();
        assert!(w < Float::with_val(100, 2f64.powi(-90)));
    }

    #[test]
    fn div_rejects_zero_crossing() {
        let r = iv(100, 1, 2).div(&iv(100, -1, 1));
        assert!(matches!(r, Err(Error::Domain(_))));
        let r = iv(100, 1, 2).div(&iv(100, 0, 1));
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn div_negative_divisor() {
        let r = iv(100, 6, 8).div(&iv(100, -2, -1)).unwrap();
        assert_eq!(*r.lo(), -8);
        assert_eq!(*r.hi(), -3);
    }

    #[test]
    fn ln_rejects_nonpositive() {
        assert!(iv(100, 0, 2).ln().is_err());
        assert!(iv(100, -3, -1).ln().is_err());
    }

    #[test]
    fn pow_cases() {
        let r = iv(100, -3, 2).pow_u(2);
        assert_eq!(*r.lo(), 0);
        assert_eq!(*r.hi(), 9);
        let r = iv(100, -3, 2).pow_u(3);
        assert_eq!(*r.lo(), -27);
        assert_eq!(*r.hi(), 8);
        let r = iv(100, 2, 3).pow_i(-2).unwrap();
        assert!(r.contains_rational(&Rational::from((1, 9))));
        assert!(r.contains_rational(&Rational::from((1, 4))));
    }

    #[test]
    fn threshold_comparison_uses_outer_bounds() {
        let q = Rational::from(1);
        assert_eq!(iv(100, -2, 0).cmp_threshold(&q), ThresholdCmp::Below);
        assert_eq!(iv(100, 2, 3).cmp_threshold(&q), ThresholdCmp::Above);
        assert_eq!(iv(100, 0, 2).cmp_threshold(&q), ThresholdCmp::Straddles);
    }

    /// γ by the Brent–McMillan recurrence, independent of MPFR's built-in
    /// constant. Plain (non-interval) arithmetic with generous guard bits;
    /// the truncation error of the method at n = 64 is far below 2^-300.
    fn gamma_brent_mcmillan(prec: u32) -> Float {
        let work = prec + 400;
        let n: u32 = 64;
        let n2 = Float::with_val(work, n * n);
        let mut b = Float::with_val(work, 1);
        let mut a = -Float::with_val(work, n).ln();
        let mut u = a.clone();
        let mut v = Float::with_val(work, 1);
        for k in 1u32..2000 {
            b = b * &n2 / (k * k);
            a = (a * &n2 / k + &b) / k;
            u += &a;
            v += &b;
            let floor = Float::with_val(work, 1) >> (work - 16);
            if k > 4 * n && a.clone().abs() < floor && b < floor {
                break;
            }
        }
        u / v
    }

    #[test]
    fn gamma_enclosure_matches_independent_oracle() {
        let g = euler_gamma(100).unwrap();
        let oracle = gamma_brent_mcmillan(256);
        assert!(g.contains_float(&oracle));

        // Digit-anchor from the oracle: 0.5772156649 ≤ γ < 0.5772156650.
        let lo_anchor = rational_from_decimal("0.5772156649").unwrap();
        let hi_anchor = rational_from_decimal("0.5772156650").unwrap();
        assert!(*g.lo() > lo_anchor);
        assert!(*g.hi() < hi_anchor);

        // Long frozen prefix, cross-checking the oracle itself.
        let frozen =
            rational_from_decimal("0.57721566490153286060651209008240243104215933593992").unwrap();
        let diff = Float::with_val(300, &oracle - &frozen).abs();
        assert!(diff < Float::with_val(300, 1e-49));

        let w = g.width();
        assert!(w < Float::with_val(100, 2f64.powi(-(100 - 4))));
    }

    #[test]
    fn exp_gamma_enclosure() {
        let c = Constants::new(100).unwrap();
        let lo_anchor = rational_from_decimal("1.7810724179901979852").unwrap();
        let hi_anchor = rational_from_decimal("1.7810724179901979853").unwrap();
        assert!(*c.exp_gamma.lo() > lo_anchor);
        assert!(*c.exp_gamma.hi() < hi_anchor);

        // exp(gamma) ⊆ exp_gamma by construction.
        assert!(c.exp_gamma.encloses(&c.gamma.exp()));

        // e^γ · e^(−γ) encloses 1.
        let prod = c.exp_gamma.mul(&c.exp_neg_gamma());
        assert!(prod.contains_rational(&Rational::from(1)));

        // Width contract holds for the exponentiated constant too.
        assert!(c.exp_gamma.width() < Float::with_val(100, 2f64.powi(-(100 - 4))));
    }

    #[test]
    fn gamma_requires_53_bits() {
        assert!(matches!(euler_gamma(52), Err(Error::Domain(_))));
    }

    #[test]
    fn zeta_two_matches_pi_squared_over_six() {
        // Independent closed-form oracle: π²/6 at 256 bits.
        let oracle = pi(256).pow_u(2).div(&Interval::from_u64(256, 6)).unwrap();
        let z = zeta(2, 100).unwrap();
        assert!(z.encloses(&oracle));
        assert!(z.width() < Float::with_val(100, 1e-25));

        let lo_anchor = rational_from_decimal("1.6449340668482264").unwrap();
        let hi_anchor = rational_from_decimal("1.6449340668482265").unwrap();
        assert!(*z.lo() > lo_anchor);
        assert!(*z.hi() < hi_anchor);
    }

    #[test]
    fn zeta_twenty_matches_brute_force_oracle() {
        // Brute-force partial sum at 256 bits with a plain integral sandwich:
        // sum_{k≤N} k^(−t) + [1/((t−1)(N+1)^(t−1)), 1/((t−1)N^(t−1))].
        let t = 20u32;
        let n: u64 = 100_000;
        let mut sum = Interval::from_u64(256, 1);
        for k in 2..=n {
            let kt = Integer::from(k).pow(t);
            sum = sum.add(&Interval::from_integer(256, &kt).recip().unwrap());
        }
        let t1 = Integer::from(t - 1);
        let lo_tail = Rational::from((
            Integer::from(1),
            t1.clone() * Integer::from(n + 1).pow(t - 1),
        ));
        let hi_tail = Rational::from((Integer::from(1), t1 * Integer::from(n).pow(t - 1)));
        let oracle =
            sum.add(&Interval::from_endpoints(dn(256, &lo_tail), up(256, &hi_tail)).unwrap());

        let z = zeta(20, 100).unwrap();
        assert!(z.encloses(&oracle) || oracle.encloses(&z));
        // Frozen window computed from the oracle.
        let lo_anchor = rational_from_decimal("1.000000953962033").unwrap();
        let hi_anchor = rational_from_decimal("1.000000953962034").unwrap();
        assert!(*z.lo() > lo_anchor);
        assert!(*z.hi() < hi_anchor);
    }

    #[test]
    fn zeta_strictly_between_one_and_two() {
        for t in [2u32, 3, 5, 10, 20, 50] {
            let z = zeta(t, 100).unwrap();
            assert!(*z.lo() > 1u32, "zeta({t}) lower bound");
            assert!(*z.hi() < 2u32, "zeta({t}) upper bound");
        }
    }

    #[test]
    fn zeta_nested_downward_in_t() {
        let mut prev = zeta(2, 100).unwrap();
        for t in 3..12 {
            let z = zeta(t, 100).unwrap();
            assert!(z.hi() <= prev.hi(), "sup zeta({t}) ≤ sup zeta({})", t - 1);
            prev = z;
        }
    }

    #[test]
    fn zeta_rejects_small_t() {
        assert!(matches!(zeta(1, 100), Err(Error::Domain(_))));
    }

    #[test]
    fn higher_precision_nests_inside_lower() {
        let z100 = zeta(2, 100).unwrap();
        let z200 = zeta(2, 200).unwrap();
        assert!(z100.encloses(&z200));

        let g100 = euler_gamma(100).unwrap();
        let g200 = euler_gamma(200).unwrap();
        assert!(g100.encloses(&g200));
        assert!(g200.width() < g100.width());
    }

    #[test]
    fn soundness_against_high_precision_oracle() {
        // Unit-sized version of the acceptance sweep: random rational inputs,
        // the 256-bit evaluation must be enclosed by the 100-bit one.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..2000 {
            let num = rng.gen_range(-1_000_000i64..1_000_000);
            let den = rng.gen_range(1u64..1_000_000);
            let q = Rational::from((num, den as i64));
            let x100 = Interval::from_rational(100, &q);
            let x256 = Interval::from_rational(256, &q);
            let op = rng.gen_range(0..5u8);
            let (r100, r256) = match op {
                0 => (x100.exp(), x256.exp()),
                1 => {
                    let s100 = x100.pow_u(2).add(&Interval::from_u64(100, 1));
                    let s256 = x256.pow_u(2).add(&Interval::from_u64(256, 1));
                    (s100.ln().unwrap(), s256.ln().unwrap())
                }
                2 => (x100.pow_u(3), x256.pow_u(3)),
                3 => {
                    let s100 = x100.pow_u(2).sqrt().unwrap();
                    let s256 = x256.pow_u(2).sqrt().unwrap();
                    (s100, s256)
                }
                _ => {
                    let d = Rational::from((rng.gen_range(1i64..999), 7));
                    let d100 = Interval::from_rational(100, &d);
                    let d256 = Interval::from_rational(256, &d);
                    (x100.div(&d100).unwrap(), x256.div(&d256).unwrap())
                }
            };
            assert!(
                r100.encloses(&r256),
                "op {op} on {q}: {r100:?} fails to enclose {r256:?}"
            );
        }
    }

    #[test]
    fn decimal_parser() {
        assert_eq!(
            rational_from_decimal("2.645").unwrap(),
            Rational::from((2645, 1000))
        );
        assert_eq!(
            rational_from_decimal("-0.5").unwrap(),
            Rational::from((-1, 2))
        );
        assert_eq!(rational_from_decimal("42").unwrap(), Rational::from(42));
        assert!(rational_from_decimal("abc").is_err());
        assert!(rational_from_decimal("1.2.3").is_err());
    }
}
