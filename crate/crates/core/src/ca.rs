//! Greedy enumeration of colossally-abundant-type extremal numbers with
//! interval-tracked logarithms.
//!
//! Each step multiplies the current n by the prime whose next exponent
//! increment yields the provably largest benefit
//! `log(σ(p^(a+1))/(p·σ(p^a)))/log p`. When the top two benefit enclosures
//! overlap, both are recomputed at doubled precision until they separate, so
//! the enumerated sequence is the true greedy sequence, not a rounded guess.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::divisor::{Factorization, RiStatus};
use crate::error::{Error, Result};
use crate::numerics::{euler_gamma, Interval};
use crate::primes::for_each_prime;
use crate::report::{CaRunReport, IvF64};

/// Exact benefit ratio σ(p^(a+1))/(p·σ(p^a)) = (p^(a+2)−1)/(p·(p^(a+1)−1)).
fn benefit_ratio(p: u64, a: u32) -> Rational {
    let num = Integer::from(p).pow(a + 2) - 1u32;
    let den = Integer::from(p) * (Integer::from(p).pow(a + 1) - 1u32);
    Rational::from((num, den))
}

/// Enclosure of the benefit of stepping prime p from exponent a to a+1:
/// `log(σ(p^(a+1))/(p·σ(p^a)))/log p`.
pub fn benefit(p: u64, a: u32, prec: u32) -> Result<Interval> {
    if p < 2 {
        return Err(Error::Domain(format!("benefit needs a prime ≥ 2, got {p}")));
    }
    let ratio = Interval::from_rational(prec, &benefit_ratio(p, a));
    ratio.ln()?.div(&Interval::from_u64(prec, p).ln()?)
}

struct FrontierEntry {
    /// Upper endpoint of the benefit enclosure; the heap key.
    key_hi: Float,
    benefit: Interval,
    prime: u64,
    prime_idx: usize,
    exp: u32,
    prec: u32,
}

impl FrontierEntry {
    fn new(prime: u64, prime_idx: usize, exp: u32, prec: u32) -> Result<Self> {
        let b = benefit(prime, exp, prec)?;
        Ok(FrontierEntry {
            key_hi: b.hi().clone(),
            benefit: b,
            prime,
            prime_idx,
            exp,
            prec,
        })
    }
}

impl Ord for FrontierEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        match self
            .key_hi
            .partial_cmp(&other.key_hi)
            .expect("benefit keys are finite")
        {
            // Deterministic order under equal keys: smaller prime first.
            Ordering::Equal => other.prime.cmp(&self.prime),
            o => o,
        }
    }
}

impl PartialOrd for FrontierEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for FrontierEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for FrontierEntry {}

/// Configuration of an enumeration run.
#[derive(Debug, Clone)]
pub struct CaConfig {
    /// Base working precision for benefits and verdicts.
    pub precision: u32,
    /// Extra bits for the running log accumulators, so enclosure widths stay
    /// within the linear budget over long runs.
    pub guard_bits: u32,
    /// Serialize state every this many steps (when a path is set).
    pub checkpoint_every: u64,
    pub checkpoint_path: Option<PathBuf>,
    /// Maintain σ(n)/n as an exact rational while n < 10¹⁰⁰ and verify the
    /// log accumulator against it after every step.
    pub track_exact: bool,
    /// Precision ceiling for benefit separation.
    pub max_separation_bits: u32,
}

impl Default for CaConfig {
    fn default() -> Self {
        CaConfig {
            precision: crate::numerics::DEFAULT_PRECISION,
            guard_bits: 32,
            checkpoint_every: 1_000_000,
            checkpoint_path: None,
            track_exact: false,
            max_separation_bits: 1 << 14,
        }
    }
}

/// Verdict on the inequality at one enumerated state, in the log domain.
#[derive(Debug, Clone)]
pub struct StateVerdict {
    pub status: RiStatus,
    /// Enclosure of `(γ + log log log n) − log(σ(n)/n)`; `None` when the
    /// verdict came from the sign rule (n ≤ e, where the right side is
    /// non-positive while σ(n)/n > 1).
    pub margin: Option<Interval>,
}

/// Stop exact σ(n)/n tracking once log n exceeds ln(10¹⁰⁰).
const EXACT_TRACK_LOG_CAP: f64 = 230.2585092994046;

/// The greedy enumerator and its interval-tracked state.
pub struct CaEnumerator {
    cfg: CaConfig,
    acc_prec: u32,
    gamma: Interval,
    primes: Vec<u64>,
    prime_limit: u64,
    /// Exponent per admitted prime index; the last admitted prime is the
    /// fresh candidate and may carry exponent 0.
    exps: Vec<u32>,
    frontier: BinaryHeap<FrontierEntry>,
    log_n: Interval,
    log_sigma_ratio: Interval,
    steps: u64,
    ties: u64,
    violations: Vec<u64>,
    violations_beyond_5040: u64,
    min_margin_beyond_5040: f64,
    checkpoints_written: u64,
    exact_ratio: Option<Rational>,
    ln_5040_hi: Float,
}

impl CaEnumerator {
    pub fn new(cfg: CaConfig) -> Result<Self> {
        if cfg.precision < 53 {
            return Err(Error::Domain(format!(
                "precision must be ≥ 53 bits, got {}",
                cfg.precision
            )));
        }
        let acc_prec = cfg.precision + cfg.guard_bits;
        let gamma = euler_gamma(acc_prec)?;
        let ln_5040_hi = Interval::from_u64(acc_prec, 5040).ln()?.hi().clone();
        let exact_ratio = cfg.track_exact.then(|| Rational::from(1));
        let mut this = CaEnumerator {
            acc_prec,
            gamma,
            primes: Vec::new(),
            prime_limit: 0,
            exps: Vec::new(),
            frontier: BinaryHeap::new(),
            log_n: Interval::from_u64(acc_prec, 0),
            log_sigma_ratio: Interval::from_u64(acc_prec, 0),
            steps: 0,
            ties: 0,
            violations: Vec::new(),
            violations_beyond_5040: 0,
            min_margin_beyond_5040: f64::INFINITY,
            checkpoints_written: 0,
            exact_ratio,
            ln_5040_hi,
            cfg,
        };
        this.ensure_primes(1)?;
        this.admit(0)?;
        Ok(this)
    }

    fn ensure_primes(&mut self, count: usize) -> Result<()> {
        while self.primes.len() < count {
            self.prime_limit = (self.prime_limit * 2).max(1 << 16);
            let mut fresh = Vec::new();
            for_each_prime(self.prime_limit, |p| fresh.push(p));
            self.primes = fresh;
        }
        Ok(())
    }

    /// Admits the prime with the given index as the fresh frontier
    /// candidate. Benefits of unused primes strictly decrease in p
    /// (log(1+1/p) falls, log p grows), so keeping exactly one unused prime
    /// in the frontier loses no candidate.
    fn admit(&mut self, idx: usize) -> Result<()> {
        self.ensure_primes(idx + 1)?;
        debug_assert_eq!(idx, self.exps.len());
        self.exps.push(0);
        let p = self.primes[idx];
        self.frontier
            .push(FrontierEntry::new(p, idx, 0, self.cfg.precision)?);
        Ok(())
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn log_n(&self) -> &Interval {
        &self.log_n
    }

    pub fn log_sigma_ratio(&self) -> &Interval {
        &self.log_sigma_ratio
    }

    pub fn ties(&self) -> u64 {
        self.ties
    }

    /// Exponent vector (prime, exponent), zero entries trimmed.
    pub fn exponents(&self) -> Vec<(u64, u32)> {
        self.primes
            .iter()
            .zip(&self.exps)
            .filter(|&(_, &a)| a > 0)
            .map(|(&p, &a)| (p, a))
            .collect()
    }

    pub fn factorization(&self) -> Factorization {
        Factorization::from_parts_unchecked(self.exponents())
    }

    /// Pops the provably maximal frontier entry. Overlapping top candidates
    /// are recomputed at doubled precision until separated; exactly equal
    /// enclosures fall back to the smaller prime and are recorded as a tie.
    fn separate_top(&mut self) -> Result<FrontierEntry> {
        loop {
            let top = self.frontier.pop().expect("frontier never empty");
            let runner_hi = match self.frontier.peek() {
                None => return Ok(top),
                Some(r) => r.key_hi.clone(),
            };
            if *top.benefit.lo() > runner_hi {
                return Ok(top);
            }
            let runner = self.frontier.pop().expect("peeked");
            if top.prec >= self.cfg.max_separation_bits
                && runner.prec >= self.cfg.max_separation_bits
            {
                if top.benefit == runner.benefit {
                    self.ties += 1;
                    let (winner, loser) = if top.prime < runner.prime {
                        (top, runner)
                    } else {
                        (runner, top)
                    };
                    self.frontier.push(loser);
                    return Ok(winner);
                }
                return Err(Error::PrecisionExhausted(format!(
                    "benefits of {}^{} and {}^{} not separated at {} bits",
                    top.prime, top.exp, runner.prime, runner.exp, top.prec
                )));
            }
            for e in [top, runner] {
                let prec = (e.prec * 2).min(self.cfg.max_separation_bits);
                self.frontier
                    .push(FrontierEntry::new(e.prime, e.prime_idx, e.exp, prec)?);
            }
        }
    }

    /// Executes one greedy step; returns the prime stepped and its new
    /// exponent.
    pub fn next_step(&mut self) -> Result<(u64, u32)> {
        let entry = self.separate_top()?;
        let (p, idx, a) = (entry.prime, entry.prime_idx, entry.exp);
        debug_assert_eq!(self.exps[idx], a);
        self.exps[idx] = a + 1;
        // CA structural invariant: exponents non-increasing in p.
        if idx > 0 {
            assert!(
                self.exps[idx] <= self.exps[idx - 1],
                "exponent vector no longer non-increasing at prime {p}"
            );
        }

        self.log_n = self.log_n.add(&Interval::from_u64(self.acc_prec, p).ln()?);
        let ratio = benefit_ratio(p, a);
        self.log_sigma_ratio = self
            .log_sigma_ratio
            .add(&Interval::from_rational(self.acc_prec, &ratio).ln()?);

        if let Some(exact) = self.exact_ratio.as_mut() {
            *exact *= ratio;
            if self.log_n.hi_f64() > EXACT_TRACK_LOG_CAP {
                self.exact_ratio = None;
            }
        }

        self.frontier
            .push(FrontierEntry::new(p, idx, a + 1, self.cfg.precision)?);
        if idx + 1 == self.exps.len() {
            self.admit(idx + 1)?;
        }
        self.steps += 1;
        Ok((p, a + 1))
    }

    /// Checks σ(n)/n < e^γ·log log n for the current state in the log
    /// domain: `log(σ(n)/n)` against `γ + log log log n`.
    pub fn check_ri(&self) -> Result<StateVerdict> {
        if *self.log_n.hi() <= 1 {
            // log log n ≤ 0 while σ(n)/n > 1: violated by sign alone.
            return Ok(StateVerdict {
                status: RiStatus::Violated,
                margin: None,
            });
        }
        if *self.log_n.lo() <= 1 {
            return Ok(StateVerdict {
                status: RiStatus::Indeterminate,
                margin: None,
            });
        }
        let rhs = self.gamma.add(&self.log_n.ln()?.ln()?);
        let margin = rhs.sub(&self.log_sigma_ratio);
        let status = if *margin.lo() > 0 {
            RiStatus::Holds
        } else if *margin.hi() < 0 {
            RiStatus::Violated
        } else {
            RiStatus::Indeterminate
        };
        Ok(StateVerdict {
            status,
            margin: Some(margin),
        })
    }

    /// Rebuilds both log accumulators from the exponent vector at a higher
    /// precision; used when a verdict comes back indeterminate.
    fn refine_state_precision(&mut self, new_acc_prec: u32) -> Result<()> {
        self.acc_prec = new_acc_prec;
        self.gamma = euler_gamma(new_acc_prec)?;
        let mut log_n = Interval::from_u64(new_acc_prec, 0);
        let mut log_ratio = Interval::from_u64(new_acc_prec, 0);
        for (&p, &a) in self.primes.iter().zip(&self.exps) {
            if a == 0 {
                continue;
            }
            log_n = log_n.add(
                &Interval::from_u64(new_acc_prec, p)
                    .ln()?
                    .mul(&Interval::from_u64(new_acc_prec, a as u64)),
            );
            // σ(p^a)/p^a = (p^(a+1) − 1)/(p^a·(p − 1))
            let num = Integer::from(p).pow(a + 1) - 1u32;
            let den = Integer::from(p).pow(a) * (Integer::from(p) - 1u32);
            let q = Rational::from((num, den));
            log_ratio = log_ratio.add(&Interval::from_rational(new_acc_prec, &q).ln()?);
        }
        self.log_n = log_n;
        self.log_sigma_ratio = log_ratio;
        Ok(())
    }

    /// Verifies the log accumulator against the exact σ(n)/n rational, when
    /// tracking is active and still within range.
    pub fn exact_consistent(&self) -> Option<bool> {
        self.exact_ratio
            .as_ref()
            .map(|q| self.log_sigma_ratio.exp().contains_rational(q))
    }

    /// Runs until log₁₀(n) ≥ 10^target, checking the inequality at every
    /// state. Violations at n ≤ 5040 are expected and recorded; any later
    /// one clears `ri_holds_beyond_5040`.
    pub fn run_to_target(&mut self, target_log10_exponent: f64) -> Result<CaRunReport> {
        if target_log10_exponent.is_nan() || target_log10_exponent < 1.0 {
            return Err(Error::Range(format!(
                "target exponent must be ≥ 1, got {target_log10_exponent}"
            )));
        }
        let started = Instant::now();
        let threshold = Interval::from_f64(self.acc_prec, 10f64.powf(target_log10_exponent))
            .mul(&Interval::from_u64(self.acc_prec, 10).ln()?);
        let thr_hi = threshold.hi().clone();

        // Enclosure endpoints are always finite, so `<` is a total order here.
        while *self.log_n.lo() < thr_hi {
            self.next_step()?;
            let mut verdict = self.check_ri()?;
            if verdict.status == RiStatus::Indeterminate {
                self.refine_state_precision(self.acc_prec * 2)?;
                verdict = self.check_ri()?;
            }
            match verdict.status {
                RiStatus::Holds => {
                    if *self.log_n.lo() > self.ln_5040_hi {
                        let m = verdict
                            .margin
                            .as_ref()
                            .expect("holds implies compared margin")
                            .lo_f64();
                        if m < self.min_margin_beyond_5040 {
                            self.min_margin_beyond_5040 = m;
                        }
                    }
                }
                RiStatus::Violated => {
                    let n = self.factorization().value();
                    if n <= 5040 {
                        self.violations.push(n.to_u64().expect("≤ 5040"));
                    } else {
                        self.violations_beyond_5040 += 1;
                    }
                }
                RiStatus::Indeterminate => {
                    return Err(Error::PrecisionExhausted(format!(
                        "inequality check indeterminate at step {} even after refinement",
                        self.steps
                    )));
                }
            }
            if let Some(path) = self.cfg.checkpoint_path.clone() {
                if self.cfg.checkpoint_every > 0
                    && self.steps.is_multiple_of(self.cfg.checkpoint_every)
                {
                    self.save_checkpoint(&path)?;
                    self.checkpoints_written += 1;
                }
            }
            if self.cfg.track_exact {
                if let Some(false) = self.exact_consistent() {
                    return Err(Error::Structure(format!(
                        "exact σ(n)/n left the log enclosure at step {}",
                        self.steps
                    )));
                }
            }
        }

        let ln10 = Interval::from_u64(self.acc_prec, 10).ln()?;
        let log10_n = self.log_n.div(&ln10)?;
        let form = to_primorial_form(&self.exponents())?;
        Ok(CaRunReport {
            target_log10_exponent,
            steps: self.steps,
            final_log10_n: IvF64::from(&log10_n),
            final_primorial_form: form.to_string(),
            violations: self.violations.clone(),
            ri_holds_beyond_5040: self.violations_beyond_5040 == 0,
            min_margin_beyond_5040: self.min_margin_beyond_5040,
            log_n_width: self.log_n.width().to_f64(),
            ties: self.ties,
            checkpoints_written: self.checkpoints_written,
            precision: self.cfg.precision,
            elapsed_ms: started.elapsed().as_millis() as u64,
        })
    }

    /// Serializes the full state (exponents and exact interval endpoints as
    /// hex significand/exponent pairs) so a run can resume bit-identically.
    pub fn save_checkpoint<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let file = CheckpointFile {
            schema_version: CHECKPOINT_VERSION,
            precision: self.cfg.precision,
            guard_bits: self.cfg.guard_bits,
            acc_prec: self.acc_prec,
            steps: self.steps,
            ties: self.ties,
            checkpoints_written: self.checkpoints_written,
            exponents: self.exps.clone(),
            log_n: IvHex::encode(&self.log_n),
            log_sigma_ratio: IvHex::encode(&self.log_sigma_ratio),
            violations: self.violations.clone(),
            violations_beyond_5040: self.violations_beyond_5040,
            min_margin_beyond_5040: self
                .min_margin_beyond_5040
                .is_finite()
                .then_some(self.min_margin_beyond_5040),
            exact_ratio: self
                .exact_ratio
                .as_ref()
                .map(|q| (q.numer().to_string_radix(16), q.denom().to_string_radix(16))),
        };
        let tmp = path.as_ref().with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_string(&file).expect("serializable"))?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Restores an enumerator from [`save_checkpoint`](Self::save_checkpoint)
    /// output; the frontier is rebuilt from the exponent vector.
    pub fn resume<P: AsRef<Path>>(path: P, cfg: CaConfig) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: CheckpointFile =
            serde_json::from_str(&text).map_err(|e| Error::Format(format!("checkpoint: {e}")))?;
        if file.schema_version != CHECKPOINT_VERSION {
            return Err(Error::Format(format!(
                "checkpoint: unsupported schema version {}",
                file.schema_version
            )));
        }
        if file.precision != cfg.precision || file.guard_bits != cfg.guard_bits {
            return Err(Error::Format(format!(
                "checkpoint precision {}+{} does not match configuration {}+{}",
                file.precision, file.guard_bits, cfg.precision, cfg.guard_bits
            )));
        }
        for w in file.exponents.windows(2) {
            if w[1] > w[0] {
                return Err(Error::Format(
                    "checkpoint: exponents not non-increasing".into(),
                ));
            }
        }

        let mut this = CaEnumerator::new(cfg)?;
        this.acc_prec = file.acc_prec;
        this.gamma = euler_gamma(file.acc_prec)?;
        this.ensure_primes(file.exponents.len())?;
        this.exps = file.exponents;
        this.steps = file.steps;
        this.ties = file.ties;
        this.checkpoints_written = file.checkpoints_written;
        this.violations = file.violations;
        this.violations_beyond_5040 = file.violations_beyond_5040;
        this.min_margin_beyond_5040 = file.min_margin_beyond_5040.unwrap_or(f64::INFINITY);
        this.log_n = IvHex::decode(&file.log_n, file.acc_prec)?;
        this.log_sigma_ratio = IvHex::decode(&file.log_sigma_ratio, file.acc_prec)?;
        this.exact_ratio = match file.exact_ratio {
            Some((num, den)) => {
                let n = Integer::from_str_radix(&num, 16)
                    .map_err(|e| Error::Format(format!("checkpoint rational: {e}")))?;
                let d = Integer::from_str_radix(&den, 16)
                    .map_err(|e| Error::Format(format!("checkpoint rational: {e}")))?;
                Some(Rational::from((n, d)))
            }
            None => None,
        };

        this.frontier.clear();
        for (idx, (&p, &a)) in this.primes.iter().zip(&this.exps).enumerate() {
            this.frontier
                .push(FrontierEntry::new(p, idx, a, this.cfg.precision)?);
        }
        Ok(this)
    }
}

const CHECKPOINT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct FloatHex {
    /// Significand in hex (sign included).
    mant: String,
    /// Binary exponent: value = mant·2^exp.
    exp: i64,
}

impl FloatHex {
    fn encode(f: &Float) -> FloatHex {
        if f.is_zero() {
            return FloatHex {
                mant: "0".into(),
                exp: 0,
            };
        }
        let (mant, exp) = f.to_integer_exp().expect("finite");
        FloatHex {
            mant: mant.to_string_radix(16),
            exp: exp as i64,
        }
    }

    fn decode(&self, prec: u32) -> Result<Float> {
        let mant = Integer::from_str_radix(&self.mant, 16)
            .map_err(|e| Error::Format(format!("checkpoint float: {e}")))?;
        let mut f = Float::with_val(prec.max(mant.significant_bits()), mant);
        f <<= self.exp as i32;
        Ok(f)
    }
}

#[derive(Serialize, Deserialize)]
struct IvHex {
    lo: FloatHex,
    hi: FloatHex,
}

impl IvHex {
    fn encode(iv: &Interval) -> IvHex {
        IvHex {
            lo: FloatHex::encode(iv.lo()),
            hi: FloatHex::encode(iv.hi()),
        }
    }

    fn decode(&self, prec: u32) -> Result<Interval> {
        Interval::from_endpoints(self.lo.decode(prec)?, self.hi.decode(prec)?)
    }
}

#[derive(Serialize, Deserialize)]
struct CheckpointFile {
    schema_version: u32,
    precision: u32,
    guard_bits: u32,
    acc_prec: u32,
    steps: u64,
    ties: u64,
    checkpoints_written: u64,
    exponents: Vec<u32>,
    log_n: IvHex,
    log_sigma_ratio: IvHex,
    violations: Vec<u64>,
    violations_beyond_5040: u64,
    /// Absent while no state beyond 5040 has been checked (JSON cannot carry
    /// the infinity sentinel).
    min_margin_beyond_5040: Option<f64>,
    exact_ratio: Option<(String, String)>,
}

/// A primorial-power decomposition: terms `(q, m)` mean `(q#)^m`, with the
/// top primes strictly decreasing. Expansion reproduces the exponent map
/// exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimorialForm {
    terms: Vec<(u64, u32)>,
}

/// Greedy decomposition of a non-increasing exponent vector on consecutive
/// primes: the multiplicity of q# is the exponent drop at q.
pub fn to_primorial_form(exponents: &[(u64, u32)]) -> Result<PrimorialForm> {
    // Must be consecutive primes starting at 2 with non-increasing exponents.
    let mut expected = Integer::from(1);
    for w in exponents.windows(2) {
        if w[1].1 > w[0].1 {
            return Err(Error::Structure(format!(
                "exponents must be non-increasing: {} has {} after {} with {}",
                w[1].0, w[1].1, w[0].0, w[0].1
            )));
        }
    }
    for &(p, _) in exponents {
        expected = expected.next_prime();
        if expected != p {
            return Err(Error::Structure(format!(
                "primes must be consecutive from 2; expected {expected}, got {p}"
            )));
        }
    }
    let mut terms = Vec::new();
    for (i, &(p, a)) in exponents.iter().enumerate() {
        let next = exponents.get(i + 1).map_or(0, |&(_, b)| b);
        if a > next {
            terms.push((p, a - next));
        }
    }
    terms.reverse();
    Ok(PrimorialForm { terms })
}

impl PrimorialForm {
    pub fn terms(&self) -> &[(u64, u32)] {
        &self.terms
    }

    /// Expands back to the exponent vector on consecutive primes.
    pub fn expand(&self) -> Vec<(u64, u32)> {
        let top = match self.terms.first() {
            Some(&(q, _)) => q,
            None => return Vec::new(),
        };
        let mut primes = Vec::new();
        let mut p = Integer::from(1);
        loop {
            p = p.next_prime();
            let pu = p.to_u64().expect("small prime");
            if pu > top {
                break;
            }
            primes.push(pu);
        }
        let mut out: Vec<(u64, u32)> = primes.into_iter().map(|p| (p, 0)).collect();
        for &(q, m) in &self.terms {
            for entry in out.iter_mut() {
                if entry.0 <= q {
                    entry.1 += m;
                }
            }
        }
        out
    }
}

impl std::fmt::Display for PrimorialForm {
    /// Renders like `44293#·3271#·(7#)^4·2^19`; 2# is written as plain 2.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(q, m)| match (q, m) {
                (2, 1) => "2".to_string(),
                (2, m) => format!("2^{m}"),
                (q, 1) => format!("{q}#"),
                (q, m) => format!("({q}#)^{m}"),
            })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// Runs a fresh enumeration to the target and returns the report together
/// with the final enumerator state.
pub fn enumerate_until(
    target_log10_exponent: f64,
    cfg: CaConfig,
) -> Result<(CaRunReport, CaEnumerator)> {
    let mut e = CaEnumerator::new(cfg)?;
    let report = e.run_to_target(target_log10_exponent)?;
    Ok((report, e))
}
