//! The divisor-side arithmetic: σ, the generalized Dedekind Ψ_t, t-free
//! classification, the Robin predicate, the exhaustive small-n scan, and
//! R_t at primorials.

use std::time::Instant;

use rayon::prelude::*;
use rug::integer::IsPrime;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::bounds::tail_factor;
use crate::error::{Error, Result};
use crate::numerics::{zeta, Constants, Interval};
use crate::primes::PrimeTable;
use crate::report::ScanReport;

/// A canonical prime factorization: strictly increasing primes, exponents ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Validates ordering, exponents and primality (via GMP's probabilistic
    /// test, which has no known composite passing it in the u64 range).
    pub fn new(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut last = 1u64;
        for &(p, a) in &factors {
            if p <= last {
                return Err(Error::Structure(format!(
                    "primes must be strictly increasing, got {p} after {last}"
                )));
            }
            if a == 0 {
                return Err(Error::Structure(format!(
                    "exponent of {p} must be ≥ 1 (canonical form)"
                )));
            }
            if Integer::from(p).is_probably_prime(40) == IsPrime::No {
                return Err(Error::Structure(format!("{p} is not prime")));
            }
            last = p;
        }
        Ok(Factorization { factors })
    }

    /// Construction from parts the caller already knows to be valid
    /// (e.g. sieved primes).
    pub(crate) fn from_parts_unchecked(factors: Vec<(u64, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|&(_, a)| a >= 1));
        Factorization { factors }
    }

    /// The empty factorization of n = 1.
    pub fn one() -> Self {
        Factorization {
            factors: Vec::new(),
        }
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Reconstructs n = Π p^a exactly.
    pub fn value(&self) -> Integer {
        let mut n = Integer::from(1);
        for &(p, a) in &self.factors {
            n *= Integer::from(p).pow(a);
        }
        n
    }
}

/// Trial-division factorization; intended for moderate n (≲ 10¹²).
pub fn factor_u64(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    let mut rem = n;
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d * d <= rem {
        if rem.is_multiple_of(d) {
            let mut a = 0u32;
            while rem.is_multiple_of(d) {
                rem /= d;
                a += 1;
            }
            factors.push((d, a));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rem > 1 {
        factors.push((rem, 1));
    }
    Ok(Factorization::from_parts_unchecked(factors))
}

/// Exact sum of divisors σ(n) = Π (p^(a+1) − 1)/(p − 1).
pub fn sigma(f: &Factorization) -> Integer {
    let mut out = Integer::from(1);
    for &(p, a) in f.factors() {
        let num = Integer::from(p).pow(a + 1) - 1u32;
        out *= num / (Integer::from(p) - 1u32);
    }
    out
}

/// True iff every exponent is < t (no t-th prime power divides n). t ≥ 2.
pub fn is_t_free(f: &Factorization, t: u32) -> bool {
    debug_assert!(t >= 2);
    f.factors().iter().all(|&(_, a)| a < t)
}

/// Exact rational Ψ_t(n) = n·Π_{p|n} (1 − p^(−t))/(1 − p^(−1))
///                       = Π p^a · (p^t − 1)/(p^(t−1)·(p − 1)).
pub fn psi_t(f: &Factorization, t: u32) -> Rational {
    debug_assert!(t >= 2);
    let mut out = Rational::from(1);
    for &(p, a) in f.factors() {
        let num = Integer::from(p).pow(a) * (Integer::from(p).pow(t) - 1u32);
        let den = Integer::from(p).pow(t - 1) * (Integer::from(p) - 1u32);
        out *= Rational::from((num, den));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RiStatus {
    /// σ(n) < e^γ·n·log log n, proved.
    Holds,
    /// σ(n) > e^γ·n·log log n, proved.
    Violated,
    /// The enclosure straddles σ(n); retry at higher precision.
    Indeterminate,
}

/// Outcome of one Robin-inequality comparison.
#[derive(Debug, Clone)]
pub struct RiVerdict {
    pub n: Integer,
    pub sigma: Integer,
    /// Enclosure of σ(n) at working precision.
    pub lhs: Interval,
    /// Enclosure of e^γ·n·log log n.
    pub rhs: Interval,
    pub status: RiStatus,
}

/// Compares exact σ(n) against the enclosure of e^γ·n·log log n.
///
/// Requires n ≥ 3, so that log log n is defined and positive in the real
/// sense (log n > 1 once n > e).
pub fn ri_check(f: &Factorization, gamma: &Interval) -> Result<RiVerdict> {
    let n = f.value();
    if n < 3 {
        return Err(Error::Domain(format!(
            "Robin comparison needs n ≥ 3, got {n}"
        )));
    }
    let prec = gamma.prec();
    let s = sigma(f);
    let ni = Interval::from_integer(prec, &n);
    let loglog = ni.ln()?.ln()?;
    let rhs = gamma.exp().mul(&ni).mul(&loglog);
    let status = if *rhs.lo() > s {
        RiStatus::Holds
    } else if *rhs.hi() < s {
        RiStatus::Violated
    } else {
        RiStatus::Indeterminate
    };
    Ok(RiVerdict {
        lhs: Interval::from_integer(prec, &s),
        sigma: s,
        n,
        rhs,
        status,
    })
}

/// Hard cap on the scan range: keeps the σ array within u64 and the run
/// within desk scale.
const MAX_SCAN_LIMIT: u64 = 1 << 33;

const SCAN_SEGMENT: u64 = 1 << 20;

/// Exhaustive counterexample scan over 3 ≤ n ≤ limit.
///
/// σ(n) is sieved segment-by-segment with exact integer arithmetic
/// (segments run in parallel); the transcendental side is compared through
/// a conservative f64 fast path that escalates to interval arithmetic
/// whenever a verdict is not forced, so the returned list is unconditional.
pub fn small_scan(limit: u64, prec: u32) -> Result<ScanReport> {
    let started = Instant::now();
    if limit < 5041 {
        return Err(Error::Range(format!(
            "scan limit must be ≥ 5041 to cover the known counterexamples, got {limit}"
        )));
    }
    if limit > MAX_SCAN_LIMIT {
        return Err(Error::Resource(format!(
            "scan limit {limit} exceeds the supported maximum {MAX_SCAN_LIMIT}"
        )));
    }
    let consts = Constants::new(prec)?;
    // Outward f64 range of e^γ for the fast path.
    let eg_lo = consts.exp_gamma.lo_f64();
    let eg_hi = consts.exp_gamma.hi_f64();

    let n_segments = (limit / SCAN_SEGMENT + 1) as usize;
    let violations: Vec<Vec<u64>> = (0..n_segments)
        .into_par_iter()
        .map(|k| -> Result<Vec<u64>> {
            let lo = k as u64 * SCAN_SEGMENT;
            let hi = ((k as u64 + 1) * SCAN_SEGMENT).min(limit + 1);
            if hi <= lo {
                return Ok(Vec::new());
            }
            let len = (hi - lo) as usize;
            let mut sigma = vec![0u64; len];
            for d in 1..hi {
                let mut m = if d >= lo { d } else { lo.div_ceil(d) * d };
                while m < hi {
                    sigma[(m - lo) as usize] += d;
                    m += d;
                }
            }
            let mut out = Vec::new();
            for n in lo.max(3)..hi {
                let s = sigma[(n - lo) as usize];
                match classify_fast(n, s, eg_lo, eg_hi) {
                    Some(true) => out.push(n),
                    Some(false) => {}
                    None => {
                        if classify_exact(n, s, &consts)? {
                            out.push(n);
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;

    let counterexamples: Vec<u64> = violations.into_iter().flatten().collect();
    Ok(ScanReport {
        limit,
        max_counterexample: counterexamples.last().copied(),
        checked: limit - 2,
        elapsed_ms: started.elapsed().as_millis() as u64,
        counterexamples,
    })
}

/// Fast comparison of σ(n) against e^γ·n·log log n in f64.
///
/// Returns Some(violated) only when the margin makes the f64 verdict rigorous;
/// None demands the interval path. The 1e−12 relative band dominates the
/// few-ulp error of the f64 evaluation by more than two orders of magnitude.
fn classify_fast(n: u64, sigma: u64, eg_lo: f64, eg_hi: f64) -> Option<bool> {
    let nf = n as f64;
    let ll = nf.ln().ln();
    let rhs_lo = eg_lo * nf * ll;
    let rhs_hi = eg_hi * nf * ll;
    let band = 1e-12 * rhs_hi.abs() + 1e-9;
    let s = sigma as f64;
    if s > rhs_hi + band {
        Some(true)
    } else if s < rhs_lo - band {
        Some(false)
    } else {
        None
    }
}

/// Interval verdict on one n, retrying once at doubled precision.
fn classify_exact(n: u64, sigma: u64, consts: &Constants) -> Result<bool> {
    for prec in [consts.prec(), consts.prec() * 2] {
        let gamma = crate::numerics::euler_gamma(prec)?;
        let ni = Interval::from_u64(prec, n);
        let rhs = gamma.exp().mul(&ni).mul(&ni.ln()?.ln()?);
        if *rhs.hi() < sigma {
            return Ok(true);
        }
        if *rhs.lo() > sigma {
            return Ok(false);
        }
    }
    Err(Error::PrecisionExhausted(format!(
        "σ({n}) indistinguishable from e^γ·n·log log n at doubled precision"
    )))
}

/// Enclosure of R_t(p_n#) through the primorial product identity:
/// the Euler tail over p > p_n lies in [1, exp(2/p_n)], and
/// R_t = tail · Π_{p≤p_n}(1 − 1/p)^(−1) / (ζ(t)·log θ(p_n)).
///
/// Note the t-monotonicity runs upward: each retained factor (1 − p^(−t))
/// grows with t, so R_t(p_n#) increases toward Ψ_∞ as t does.
pub fn rt_primorial(n: usize, t: u32, table: &PrimeTable) -> Result<Interval> {
    if n < 2 {
        return Err(Error::Range(format!(
            "primorial index must be ≥ 2 so that log θ(p_n) is positive, got {n}"
        )));
    }
    let p = table.nth_prime(n)?;
    let prec = table.prec();
    let zeta_t = zeta(t, prec)?;
    let log_theta = table.primorial_log(n)?.ln()?;
    let mertens = table.mertens_product(p)?;
    let tail_hi = tail_factor(&Interval::from_u64(prec, p))?;
    let tail = Interval::from_endpoints(Float::with_val(prec, 1), tail_hi.hi().clone())?;
    tail.mul(&mertens).div(&zeta_t.mul(&log_theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::euler_gamma;
    use proptest::prelude::*;

    fn fact(pairs: &[(u64, u32)]) -> Factorization {
        Factorization::new(pairs.to_vec()).unwrap()
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(&Factorization::one()), 1);
        assert_eq!(sigma(&fact(&[(2, 1), (5, 1)])), 18);
        assert_eq!(sigma(&fact(&[(2, 4), (3, 2), (5, 1), (7, 1)])), 19344);
    }

    #[test]
    fn factorization_validation() {
        assert!(Factorization::new(vec![(4, 1)]).is_err());
        assert!(Factorization::new(vec![(3, 1), (2, 1)]).is_err());
        assert!(Factorization::new(vec![(2, 0)]).is_err());
        assert!(Factorization::new(vec![(2, 3), (3, 1)]).is_ok());
    }

    #[test]
    fn factor_round_trip() {
        for n in [2u64, 12, 5040, 55440, 1_048_576, 999_983] {
            let f = factor_u64(n).unwrap();
            assert_eq!(f.value(), n);
        }
        assert_eq!(factor_u64(1).unwrap(), Factorization::one());
    }

    #[test]
    fn sieved_sigma_matches_factored_sigma() {
        let limit = 100_000u64;
        let mut sieved = vec![0u64; (limit + 1) as usize];
        for d in 1..=limit {
            let mut m = d;
            while m <= limit {
                sieved[m as usize] += d;
                m += d;
            }
        }
        for n in 3..=limit {
            assert_eq!(sigma(&factor_u64(n).unwrap()), sieved[n as usize], "σ({n})");
        }
    }

    #[test]
    fn t_free_classification() {
        assert!(!is_t_free(&fact(&[(2, 20)]), 20));
        assert!(is_t_free(&fact(&[(2, 4), (3, 2), (5, 1), (7, 1)]), 5));
        assert!(is_t_free(&Factorization::one(), 2));
    }

    #[test]
    fn no_twenty_full_below_two_to_twenty() {
        // Exhaustive: smallest-prime-factor walk of every n < 2^20.
        let limit = 1u64 << 20;
        let mut spf = vec![0u32; limit as usize];
        for i in 2..limit as usize {
            if spf[i] == 0 {
                for m in (i..limit as usize).step_by(i) {
                    if spf[m] == 0 {
                        spf[m] = i as u32;
                    }
                }
            }
        }
        for n in 2..limit as usize {
            let mut rem = n;
            while rem > 1 {
                let p = spf[rem] as usize;
                let mut a = 0;
                while rem % p == 0 {
                    rem /= p;
                    a += 1;
                }
                assert!(a < 20, "{n} is 20-full");
            }
        }
        // And 2^20 itself is 20-full.
        assert!(!is_t_free(&fact(&[(2, 20)]), 20));
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi_t(&Factorization::one(), 2), 1);
        // Squarefree n: Ψ₂ coincides with σ.
        let f10 = fact(&[(2, 1), (5, 1)]);
        assert_eq!(psi_t(&f10, 2), Rational::from(18));
        // Ψ₅(12) = 3751/108, bounding σ(12) = 28 from above.
        let f12 = fact(&[(2, 2), (3, 1)]);
        let psi = psi_t(&f12, 5);
        assert_eq!(psi, Rational::from((3751, 108)));
        assert!(psi >= sigma(&f12));
    }

    #[test]
    fn psi_ratio_depends_only_on_radical() {
        for t in [2u32, 3, 7] {
            for p in [2u64, 3, 13] {
                let base = psi_t(&fact(&[(p, 1)]), t) / p;
                for a in 2..6 {
                    let f = fact(&[(p, a)]);
                    let ratio = psi_t(&f, t) / Rational::from(f.value());
                    assert_eq!(ratio, base, "Ψ_{t}({p}^{a})/{p}^{a}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn sigma_bounded_by_psi_on_t_free(
            t in 2u32..12,
            mask in 1u32..256,
            exps in proptest::array::uniform8(1u32..11),
        ) {
            let primes = [2u64, 3, 5, 7, 11, 13, 17, 19];
            let mut pairs = Vec::new();
            for (i, &p) in primes.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    pairs.push((p, exps[i].min(t - 1)));
                }
            }
            let f = Factorization::new(pairs).unwrap();
            prop_assume!(is_t_free(&f, t));
            prop_assert!(psi_t(&f, t) >= sigma(&f));
        }
    }

    #[test]
    fn ri_check_known_cases() {
        let gamma = euler_gamma(100).unwrap();
        let v = ri_check(&fact(&[(2, 4), (3, 2), (5, 1), (7, 1)]), &gamma).unwrap();
        assert_eq!(v.status, RiStatus::Violated); // 5040
        assert_eq!(v.sigma, 19344);

        let v = ri_check(&fact(&[(2, 4), (3, 2), (5, 1), (7, 1), (11, 1)]), &gamma).unwrap();
        assert_eq!(v.status, RiStatus::Holds); // 55440
        assert_eq!(v.sigma, 232128);

        let v = ri_check(&fact(&[(3, 1)]), &gamma).unwrap();
        assert_eq!(v.status, RiStatus::Violated); // n = 3

        assert!(ri_check(&fact(&[(2, 1)]), &gamma).is_err());
        assert!(ri_check(&Factorization::one(), &gamma).is_err());
    }

    const KNOWN_COUNTEREXAMPLES: [u64; 26] = [
        3, 4, 5, 6, 8, 9, 10, 12, 16, 18, 20, 24, 30, 36, 48, 60, 72, 84, 120, 180, 240, 360, 720,
        840, 2520, 5040,
    ];

    #[test]
    fn small_scan_finds_the_26_counterexamples() {
        let rep = small_scan(10_000, 100).unwrap();
        assert_eq!(rep.counterexamples, KNOWN_COUNTEREXAMPLES);
        assert_eq!(rep.max_counterexample, Some(5040));
        assert_eq!(rep.checked, 9998);
    }

    #[test]
    fn small_scan_agrees_with_ri_check() {
        let gamma = euler_gamma(100).unwrap();
        for n in 3..=6000u64 {
            let expect = KNOWN_COUNTEREXAMPLES.contains(&n);
            let v = ri_check(&factor_u64(n).unwrap(), &gamma).unwrap();
            assert_eq!(
                v.status == RiStatus::Violated,
                expect,
                "disagreement at {n}"
            );
        }
    }

    #[test]
    fn small_scan_rejects_short_limits() {
        assert!(matches!(small_scan(5000, 100), Err(Error::Range(_))));
        assert!(matches!(small_scan(1 << 40, 100), Err(Error::Resource(_))));
    }

    #[test]
    fn rt_primorial_at_six() {
        let table = PrimeTable::sieve(1000).unwrap();
        let r = rt_primorial(2, 20, &table).unwrap();
        // True value Ψ₂₀(6)/(6·log log 6) sits just above the lower end.
        let psi = psi_t(&fact(&[(2, 1), (3, 1)]), 20);
        let loglog6 = Interval::from_u64(100, 6).ln().unwrap().ln().unwrap();
        let truth = Interval::from_rational(100, &psi)
            .div(&Interval::from_u64(100, 6).mul(&loglog6))
            .unwrap();
        assert!(r.encloses(&truth), "{r:?} misses {truth:?}");
        assert!((r.lo_f64() - 5.144).abs() < 1e-3);
        // Upper end carries the exp(2/3) tail allowance.
        assert!(r.hi_f64() < 5.145 * 1.948);

        assert!(rt_primorial(1, 20, &table).is_err());
        assert!(rt_primorial(10_000, 20, &table).is_err());
    }

    #[test]
    fn rt_primorial_two_routes_overlap() {
        // Direct Ψ_t(210)/(210·log log 210) against the product identity.
        let table = PrimeTable::sieve(1000).unwrap();
        let r = rt_primorial(4, 20, &table).unwrap();
        let psi = psi_t(&fact(&[(2, 1), (3, 1), (5, 1), (7, 1)]), 20);
        let loglog = Interval::from_u64(100, 210).ln().unwrap().ln().unwrap();
        let direct = Interval::from_rational(100, &psi)
            .div(&Interval::from_u64(100, 210).mul(&loglog))
            .unwrap();
        assert!(r.encloses(&direct));
    }

    #[test]
    fn rt_primorial_grows_with_t() {
        // Each retained Euler factor (1 − p^(−t)) increases with t, so both
        // endpoints of the enclosure are non-decreasing in t.
        let table = PrimeTable::sieve(1000).unwrap();
        let mut prev = rt_primorial(4, 2, &table).unwrap();
        for t in 3..10 {
            let cur = rt_primorial(4, t, &table).unwrap();
            assert!(cur.lo() >= prev.lo());
            assert!(cur.hi() >= prev.hi());
            prev = cur;
        }
    }
}
