//! Explicit analytic machinery: the C₁ tail certificate, Mertens-product
//! bounds, and the bound functions g_B and g_∞ that dominate
//! `e^(−γ)·R_t(p_n#)`, together with the exponent certification logic.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{euler_gamma, pi, zeta, Interval};
use crate::primes::{streamed_mertens_product, PrimeTable};
use crate::report::{IvF64, MertensCheckReport, MertensUpperPoint};

/// Frontier up to which the square-root deviation bound for θ applies:
/// 2.169·10²⁵, exactly.
pub const DEFAULT_B: u128 = 21_690_000_000_000_000_000_000_000;

/// Largest prime reached by the extremal-number computation; the g_B test
/// is evaluated here.
pub const DEFAULT_SWITCH_PRIME: u64 = 29_996_208_012_611;

/// log X₀ for the split point X₀ = exp(2000) of the C₁ integral.
pub const DEFAULT_X0_LOG: u32 = 2000;

/// Smallest x for which the Mertens upper bound is valid.
pub const MERTENS_UPPER_MIN_X: u64 = 767_135_587;

/// Which value of C₁ feeds the bound functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum C1Source {
    /// The certified constant 2.645·10⁻⁹ used as-is.
    Constant,
    /// The upper end of a fresh [`c1_certificate`] run.
    Recomputed,
}

/// Coefficient of the linear term in g_∞'s denominator. The larger value is
/// the one backed by the deviation bound for log x ≥ 55 and is the
/// conservative choice (it can only make certification harder); the smaller
/// one is a circulated variant, kept selectable for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GInfCoeff {
    /// 1.388·10⁻¹⁰ (default, conservative).
    Proved1388,
    /// 1.338·10⁻¹⁰ (variant).
    Variant1338,
}

impl GInfCoeff {
    fn rational(self) -> Rational {
        let den = Integer::from(10u32).pow(13);
        match self {
            GInfCoeff::Proved1388 => Rational::from((Integer::from(1388), den)),
            GInfCoeff::Variant1338 => Rational::from((Integer::from(1338), den)),
        }
    }
}

/// The constants of a certification run.
#[derive(Debug, Clone, Serialize)]
pub struct GParams {
    /// Exponent under certification (t-free parameter), t ≥ 2.
    pub t: u32,
    /// Frontier constant B.
    pub b: u128,
    /// Prime at which g_B is evaluated.
    pub switch_prime: u64,
    /// log X₀ of the C₁ split point.
    pub x0_log: u32,
    /// Working precision in bits.
    pub precision: u32,
    pub c1_source: C1Source,
    pub ginf_coeff: GInfCoeff,
}

impl Default for GParams {
    fn default() -> Self {
        GParams {
            t: 2,
            b: DEFAULT_B,
            switch_prime: DEFAULT_SWITCH_PRIME,
            x0_log: DEFAULT_X0_LOG,
            precision: crate::numerics::DEFAULT_PRECISION,
            c1_source: C1Source::Constant,
            ginf_coeff: GInfCoeff::Proved1388,
        }
    }
}

impl GParams {
    pub fn validate(&self) -> Result<()> {
        if self.t < 2 {
            return Err(Error::Domain(format!("t must be ≥ 2, got {}", self.t)));
        }
        if self.precision < 53 {
            return Err(Error::Domain(format!(
                "precision must be ≥ 53 bits, got {}",
                self.precision
            )));
        }
        if self.switch_prime < 599 || (self.switch_prime as u128) > self.b {
            return Err(Error::Range(format!(
                "switch prime {} outside [599, B]",
                self.switch_prime
            )));
        }
        if self.x0_log < 60 {
            return Err(Error::Range(format!(
                "log X₀ must exceed log B ≈ 58.3, got {}",
                self.x0_log
            )));
        }
        Ok(())
    }

    fn with_precision(&self, precision: u32) -> GParams {
        GParams {
            precision,
            ..self.clone()
        }
    }
}

/// C₁ certificate pieces: the enclosure of the majorant of the deviation
/// integral Σ over [B, X₀] and [X₀, ∞).
#[derive(Debug, Clone)]
pub struct C1Certificate {
    /// 1.430·10⁻¹⁰ · (log log X₀ − log log B).
    pub piece1: Interval,
    /// 30.3 · 2·e^(−0.8c) · (c³/0.8 + 3c²/0.64 + 6c/0.512 + 6/0.4096),
    /// c = √(log X₀), via the substitution u = √(log t).
    pub piece2: Interval,
    pub total: Interval,
}

fn rat(prec: u32, num: i64, den_pow10: u32) -> Interval {
    let q = Rational::from((Integer::from(num), Integer::from(10u32).pow(den_pow10)));
    Interval::from_rational(prec, &q)
}

/// Recomputes the C₁ majorant from its closed forms.
///
/// The admissibility condition for the frontier B itself,
/// `4.92·√(B/log B) ≤ 3·10¹²`, holds with a thin margin:
///
/// ```
/// use robin_core::bounds::GParams;
/// use robin_core::numerics::Interval;
///
/// let params = GParams::default();
/// let b = Interval::from_u128(100, params.b);
/// let lhs = Interval::from_ratio(100, 492, 100)
///     .mul(&b.div(&b.ln().unwrap()).unwrap().sqrt().unwrap());
/// assert!(*lhs.hi() < 3.0e12_f64);
/// ```
pub fn c1_certificate(params: &GParams) -> Result<C1Certificate> {
    params.validate()?;
    let prec = params.precision;

    // piece 1: 1.430e−10 · (log log X₀ − log log B), log X₀ exact.
    let log_log_x0 = Interval::from_u64(prec, params.x0_log as u64).ln()?;
    let log_log_b = Interval::from_u128(prec, params.b).ln()?.ln()?;
    let piece1 = rat(prec, 1430, 13).mul(&log_log_x0.sub(&log_log_b));

    // piece 2: closed-form tail integral after u = √(log t).
    let c = Interval::from_u64(prec, params.x0_log as u64).sqrt()?;
    let sum = c
        .pow_u(3)
        .mul(&Interval::from_ratio(prec, 5, 4))
        .add(&c.pow_u(2).mul(&Interval::from_ratio(prec, 75, 16)))
        .add(&c.mul(&Interval::from_ratio(prec, 375, 32)))
        .add(&Interval::from_ratio(prec, 1875, 128));
    let decay = c.mul(&Interval::from_ratio(prec, 4, 5)).neg().exp();
    let piece2 = rat(prec, 303, 1)
        .mul(&Interval::from_u64(prec, 2))
        .mul(&decay)
        .mul(&sum);

    let total = piece1.add(&piece2);
    Ok(C1Certificate {
        piece1,
        piece2,
        total,
    })
}

/// The C₁ enclosure fed into the bound functions: `[0, upper]` where the
/// upper end comes from the configured source. Zero is a valid lower bound
/// because the certified integral has a non-negative integrand.
fn c1_interval(params: &GParams) -> Result<Interval> {
    let prec = params.precision;
    let hi = match params.c1_source {
        C1Source::Constant => rat(prec, 2645, 12),
        C1Source::Recomputed => c1_certificate(params)?.total,
    };
    Interval::from_endpoints(Float::with_val(prec, 0), hi.hi().clone())
}

/// Enclosure of exp(2/p), the factor dominating the Euler tail
/// Π_{p>p_n}(1 − p^(−t))^(−1).
pub fn tail_factor(p: &Interval) -> Result<Interval> {
    if *p.lo() <= 0 {
        return Err(Error::Domain(format!(
            "tail factor needs a positive prime enclosure, got {p}"
        )));
    }
    Ok(Interval::from_u64(p.prec(), 2).div(p)?.exp())
}

/// Shared constants for the correction-sum evaluations.
struct Consts {
    prec: u32,
    gamma: Interval,
    pi8: Interval,
    pi4: Interval,
    b: Interval,
    sqrt_b: Interval,
    log_b: Interval,
    c1: Interval,
    /// 1.02 as an exact ratio.
    c102: Interval,
    three: Interval,
    one: Interval,
}

impl Consts {
    fn new(params: &GParams) -> Result<Self> {
        params.validate()?;
        let prec = params.precision;
        let pi = pi(prec);
        let b = Interval::from_u128(prec, params.b);
        Ok(Consts {
            prec,
            gamma: euler_gamma(prec)?,
            pi8: pi.mul(&Interval::from_u64(prec, 8)),
            pi4: pi.mul(&Interval::from_u64(prec, 4)),
            sqrt_b: b.sqrt()?,
            log_b: b.ln()?,
            b,
            c1: c1_interval(params)?,
            c102: Interval::from_ratio(prec, 51, 50),
            three: Interval::from_u64(prec, 3),
            one: Interval::from_u64(prec, 1),
        })
    }

    /// The correction sum shared by the Mertens lower bound and g_B:
    /// `1.02/((x−1)·log x) + log x/(8π√x) + C₁ +
    /// ((log x+3)√B − (log B+3)√x)/(4π√(xB))`.
    fn correction_sum_b(&self, x: &Interval, lx: &Interval, sx: &Interval) -> Result<Interval> {
        let e1 = self.c102.div(&x.sub(&self.one).mul(lx))?;
        let e2 = lx.div(&self.pi8.mul(sx))?;
        let num = lx
            .add(&self.three)
            .mul(&self.sqrt_b)
            .sub(&self.log_b.add(&self.three).mul(sx));
        let den = self.pi4.mul(sx).mul(&self.sqrt_b);
        let e3 = num.div(&den)?;
        Ok(e1.add(&e2).add(&self.c1).add(&e3))
    }
}

/// Lower bound for Π_{p≤x}(1 − 1/p) on 599 ≤ x ≤ B:
/// `(e^(−γ)/log x)·exp(−E(x))` with E(x) the correction sum above.
///
/// The correction enters with a negative sign: the underlying estimate is an
/// upper bound `Π_{p≤x}(1 − 1/p)^(−1) ≤ e^γ·log x·exp(E(x))` for the inverse
/// product, which is the direction the g_B numerator consumes.
pub fn mertens_lower_rhs(x: &Interval, params: &GParams) -> Result<Interval> {
    let consts = Consts::new(params)?;
    if *x.lo() < 599 || x.hi() > consts.b.lo() {
        return Err(Error::Range(format!(
            "Mertens lower bound valid on [599, B], got {x}"
        )));
    }
    let lx = x.ln()?;
    let sx = x.sqrt()?;
    let e = consts.correction_sum_b(x, &lx, &sx)?;
    let lead = consts.gamma.neg().exp().div(&lx)?;
    Ok(lead.mul(&e.neg().exp()))
}

/// Upper bound for Π_{p≤x} p/(p−1) valid for x ≥ 767 135 587:
/// `e^γ·log x·exp(1.02/((x−1)log x) + 1/(6log³x) + 5/(8log⁴x))`.
pub fn mertens_upper_rhs(x: &Interval, prec: u32) -> Result<Interval> {
    if *x.lo() < MERTENS_UPPER_MIN_X {
        return Err(Error::Range(format!(
            "Mertens upper bound valid for x ≥ {MERTENS_UPPER_MIN_X}, got {x}"
        )));
    }
    let one = Interval::from_u64(prec, 1);
    let lx = x.ln()?;
    let e1 = Interval::from_ratio(prec, 51, 50).div(&x.sub(&one).mul(&lx))?;
    let e2 = one.div(&lx.pow_u(3).mul(&Interval::from_u64(prec, 6)))?;
    let e3 = Interval::from_u64(prec, 5).div(&lx.pow_u(4).mul(&Interval::from_u64(prec, 8)))?;
    let corr = e1.add(&e2).add(&e3).exp();
    Ok(euler_gamma(prec)?.exp().mul(&lx).mul(&corr))
}

/// Prepared evaluator for g_B and g_∞ at a fixed exponent t: the ζ(t)
/// enclosure and all constants are computed once.
pub struct BoundEvaluator {
    t: u32,
    zeta_t: Interval,
    consts: Consts,
    ginf_coeff: Interval,
    c14262: Interval,
}

impl BoundEvaluator {
    pub fn new(t: u32, params: &GParams) -> Result<Self> {
        params.validate()?;
        if t < 2 {
            return Err(Error::Domain(format!("t must be ≥ 2, got {t}")));
        }
        let prec = params.precision;
        Ok(BoundEvaluator {
            t,
            zeta_t: zeta(t, prec)?,
            consts: Consts::new(params)?,
            ginf_coeff: Interval::from_rational(prec, &params.ginf_coeff.rational()),
            c14262: Interval::from_ratio(prec, 14262, 10_000),
        })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn zeta_t(&self) -> &Interval {
        &self.zeta_t
    }

    /// g_B(p; t): numerator `exp(2/p + E(p))·log p`, denominator
    /// `ζ(t)·log(p − √p·log²p/(8π))`; valid on 599 ≤ p ≤ B.
    pub fn g_b(&self, p: &Interval) -> Result<Interval> {
        let c = &self.consts;
        if *p.lo() < 599 || p.hi() > c.b.lo() {
            return Err(Error::Range(format!("g_B domain is [599, B], got {p}")));
        }
        let lp = p.ln()?;
        let sp = p.sqrt()?;
        let tail = Interval::from_u64(c.prec, 2).div(p)?;
        let e = tail.add(&c.correction_sum_b(p, &lp, &sp)?);
        let num = e.exp().mul(&lp);

        let theta_floor = p.sub(&sp.mul(&lp.pow_u(2)).div(&c.pi8)?);
        if *theta_floor.lo() <= 1 {
            return Err(Error::Domain(format!(
                "θ floor not provably > 1 at {p}; denominator log would not be positive"
            )));
        }
        let den = self.zeta_t.mul(&theta_floor.ln()?);
        num.div(&den)
    }

    /// g_∞(p; t): numerator
    /// `exp(2/p + 1.02/((p−1)log p) + 1/(6log³p) + 5/(8log⁴p))·log p`,
    /// denominator `ζ(t)·log(p − coeff·p − 1.4262√p)`; valid for log p ≥ 55.
    pub fn g_inf(&self, p: &Interval) -> Result<Interval> {
        let c = &self.consts;
        let lp = p.ln()?;
        if *lp.lo() < 55 {
            return Err(Error::Range(format!(
                "g_∞ domain is log p ≥ 55, got log p = {lp}"
            )));
        }
        let sp = p.sqrt()?;
        let one = &c.one;
        let e1 = Interval::from_u64(c.prec, 2).div(p)?;
        let e2 = c.c102.div(&p.sub(one).mul(&lp))?;
        let e3 = one.div(&lp.pow_u(3).mul(&Interval::from_u64(c.prec, 6)))?;
        let e4 =
            Interval::from_u64(c.prec, 5).div(&lp.pow_u(4).mul(&Interval::from_u64(c.prec, 8)))?;
        let num = e1.add(&e2).add(&e3).add(&e4).exp().mul(&lp);

        let arg = p.mul(&one.sub(&self.ginf_coeff)).sub(&self.c14262.mul(&sp));
        if *arg.lo() <= 1 {
            return Err(Error::Domain(format!(
                "g_∞ denominator argument not provably > 1 at {p}"
            )));
        }
        let den = self.zeta_t.mul(&arg.ln()?);
        num.div(&den)
    }
}

/// One-shot g_B evaluation; prefer [`BoundEvaluator`] for sweeps.
pub fn g_b(p: &Interval, t: u32, params: &GParams) -> Result<Interval> {
    BoundEvaluator::new(t, params)?.g_b(p)
}

/// One-shot g_∞ evaluation; prefer [`BoundEvaluator`] for sweeps.
pub fn g_inf(p: &Interval, t: u32, params: &GParams) -> Result<Interval> {
    BoundEvaluator::new(t, params)?.g_inf(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertStatus {
    /// Both bound values are provably < 1.
    Proved,
    /// At least one bound value is provably > 1.
    Failed,
    /// Intervals straddle 1 even after the precision retry.
    Indeterminate,
}

/// Outcome of certifying one exponent t.
#[derive(Debug, Clone)]
pub struct CertResult {
    pub t: u32,
    pub g_b: Interval,
    pub g_inf: Interval,
    pub status: CertStatus,
    /// `1 − sup g_B`, rounded down (negative when failed).
    pub margin_b: f64,
    /// `1 − sup g_∞`, rounded down.
    pub margin_inf: f64,
    /// Precision at which the verdict was reached.
    pub precision: u32,
}

/// Serializable image of a [`CertResult`].
#[derive(Debug, Clone, Serialize)]
pub struct CertReport {
    pub t: u32,
    pub status: CertStatus,
    pub g_b: IvF64,
    pub g_inf: IvF64,
    pub margin_b: f64,
    pub margin_inf: f64,
    pub precision: u32,
}

impl CertResult {
    pub fn report(&self) -> CertReport {
        CertReport {
            t: self.t,
            status: self.status,
            g_b: IvF64::from(&self.g_b),
            g_inf: IvF64::from(&self.g_inf),
            margin_b: self.margin_b,
            margin_inf: self.margin_inf,
            precision: self.precision,
        }
    }
}

/// `1 − sup iv` with all roundings directed downward.
fn margin_below_one(iv: &Interval) -> f64 {
    Interval::from_u64(iv.prec(), 1).sub(iv).lo_f64()
}

fn classify(g_b: &Interval, g_inf: &Interval) -> CertStatus {
    let one = Rational::from(1);
    if *g_b.hi() < one && *g_inf.hi() < one {
        CertStatus::Proved
    } else if *g_b.lo() > one || *g_inf.lo() > one {
        CertStatus::Failed
    } else {
        CertStatus::Indeterminate
    }
}

/// Certifies one exponent: evaluates g_B at the switch prime and g_∞ at B,
/// proving both < 1 (Proved) or at least one > 1 (Failed) from interval
/// endpoints. An indeterminate comparison retries once at doubled precision.
pub fn certify_t(t: u32, params: &GParams) -> Result<CertResult> {
    let attempt = |params: &GParams| -> Result<(Interval, Interval)> {
        let eval = BoundEvaluator::new(t, params)?;
        let p = Interval::from_u64(params.precision, params.switch_prime);
        let b = Interval::from_u128(params.precision, params.b);
        Ok((eval.g_b(&p)?, eval.g_inf(&b)?))
    };

    let (mut gb, mut ginf) = attempt(params)?;
    let mut status = classify(&gb, &ginf);
    let mut precision = params.precision;
    if status == CertStatus::Indeterminate {
        precision *= 2;
        let retry = params.with_precision(precision);
        let (gb2, ginf2) = attempt(&retry)?;
        status = classify(&gb2, &ginf2);
        gb = gb2;
        ginf = ginf2;
    }
    Ok(CertResult {
        t,
        margin_b: margin_below_one(&gb),
        margin_inf: margin_below_one(&ginf),
        g_b: gb,
        g_inf: ginf,
        status,
        precision,
    })
}

/// Hard cap for the upward t scan; certification decays fast in t, so this
/// is never reached with meaningful parameters.
pub const T_SCAN_CAP: u32 = 128;

/// Scans t upward from 2 and returns the largest certifiable exponent along
/// with every per-t result (including the first failure). Because ζ(t)
/// decreases in t both bound values increase, so the first non-Proved t ends
/// the scan.
pub fn scan_t(params: &GParams) -> Result<(u32, Vec<CertResult>)> {
    let mut results = Vec::new();
    let mut best: Option<u32> = None;
    for t in 2..=T_SCAN_CAP {
        let r = certify_t(t, params)?;
        let status = r.status;
        results.push(r);
        match status {
            CertStatus::Proved => best = Some(t),
            _ => break,
        }
    }
    match best {
        Some(t) => Ok((t, results)),
        None => Err(Error::Domain(
            "certification fails already at t = 2 for these parameters".into(),
        )),
    }
}

/// The largest t for which [`certify_t`] proves both bounds.
pub fn max_certifiable_t(params: &GParams) -> Result<u32> {
    Ok(scan_t(params)?.0)
}

/// Which bound function a grid sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GKind {
    GB,
    GInf,
}

/// Evaluates a bound function on a geometric grid of exactly representable
/// f64 abscissas; used for CSV tables and sampled monotonicity checks.
pub fn g_grid(
    kind: GKind,
    t: u32,
    params: &GParams,
    points: usize,
    lo: f64,
    hi: f64,
) -> Result<Vec<(f64, Interval)>> {
    if points < 2 || lo.is_nan() || hi.is_nan() || lo <= 0.0 || hi <= lo {
        return Err(Error::Range(format!(
            "invalid grid: {points} points on [{lo}, {hi}]"
        )));
    }
    let eval = BoundEvaluator::new(t, params)?;
    let ratio = (hi / lo).ln() / (points - 1) as f64;
    let mut out = Vec::with_capacity(points);
    for i in 0..points {
        let x = if i + 1 == points {
            hi
        } else {
            lo * (ratio * i as f64).exp()
        };
        let xi = Interval::from_f64(params.precision, x);
        let g = match kind {
            GKind::GB => eval.g_b(&xi)?,
            GKind::GInf => eval.g_inf(&xi)?,
        };
        out.push((x, g));
    }
    Ok(out)
}

/// Checks sampled non-increase: both endpoint sequences of the grid must be
/// non-increasing.
///
/// Pointwise interval separation (`sup g(p_{i+1}) < inf g(p_i)`) is not
/// provable near B, where the true decrement of g_B falls below the width
/// contributed by the C₁ enclosure; that width is perfectly correlated
/// across grid points, so the endpoint sequences still reflect the
/// function's monotonicity faithfully.
pub fn grid_is_decreasing(rows: &[(f64, Interval)]) -> bool {
    rows.windows(2)
        .all(|w| w[1].1.hi() <= w[0].1.hi() && w[1].1.lo() <= w[0].1.lo())
}

/// Desk check of the Mertens bounds: the lower bound against sieved products
/// at `samples` seeded-random points of [599, table.limit], and the upper
/// bound at the given points (streamed, so they may exceed the table limit).
pub fn mertens_check(
    table: &PrimeTable,
    samples: u64,
    seed: u64,
    upper_points: &[u64],
    params: &GParams,
) -> Result<MertensCheckReport> {
    params.validate()?;
    if table.limit() < 599 {
        return Err(Error::Range(
            "table must cover at least [2, 599] for the lower-bound check".into(),
        ));
    }
    let prec = params.precision;

    // Sorted seeded sample of evaluation points.
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut xs: Vec<u64> = (0..samples)
        .map(|_| rng.gen_range(599..=table.limit()))
        .collect();
    xs.sort_unstable();
    xs.dedup();

    let mut lower_failures = Vec::new();
    let mut lower_min_gap = f64::INFINITY;
    {
        let mut next = 0usize;
        let mut check_at = |x: u64, inv_product: &Interval| -> Result<()> {
            let direct = inv_product.recip()?; // Π (1 − 1/p)
            let rhs = mertens_lower_rhs(&Interval::from_u64(prec, x), params)?;
            let gap = direct.sub(&rhs).lo_f64();
            if gap < 0.0 {
                lower_failures.push(x);
            }
            if gap < lower_min_gap {
                lower_min_gap = gap;
            }
            Ok(())
        };
        let mut acc = Interval::from_u64(prec, 1);
        for (_, p, inv) in table.mertens_iter() {
            while next < xs.len() && xs[next] < p {
                check_at(xs[next], &acc)?;
                next += 1;
            }
            acc = inv;
        }
        while next < xs.len() {
            check_at(xs[next], &acc)?;
            next += 1;
        }
    }

    // Upper bound at the requested points.
    let mut upper = Vec::new();
    let mut upper_passed = true;
    if !upper_points.is_empty() {
        for &x in upper_points {
            if x < MERTENS_UPPER_MIN_X {
                return Err(Error::Range(format!(
                    "upper-bound point {x} below validity threshold {MERTENS_UPPER_MIN_X}"
                )));
            }
        }
        for (x, empirical) in streamed_mertens_product(upper_points, prec) {
            let bound = mertens_upper_rhs(&Interval::from_u64(prec, x), prec)?;
            let holds = empirical.hi() <= bound.lo();
            upper_passed &= holds;
            upper.push(MertensUpperPoint {
                x,
                empirical: IvF64::from(&empirical),
                bound: IvF64::from(&bound),
                holds,
            });
        }
    }

    let lower_passed = lower_failures.is_empty();
    Ok(MertensCheckReport {
        lower_limit: table.limit(),
        lower_samples: samples,
        seed,
        lower_passed,
        lower_min_gap,
        lower_failures,
        upper_points: upper,
        upper_passed,
        passed: lower_passed && upper_passed,
    })
}
