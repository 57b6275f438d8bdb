//! Segmented prime sieve, Chebyshev θ, primorial logarithms, and Mertens
//! partial products, all with interval-tracked prefix sums.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numerics::{pi, Interval, DEFAULT_PRECISION};
use crate::report::ThetaCheckReport;

/// Numbers spanned by one sieve segment. Tuned for cache residency.
const SEGMENT_SPAN: u64 = 1 << 24;

/// Limits below this go through the plain in-memory sieve.
const SIMPLE_LIMIT: u64 = 1 << 22;

/// Primes per stored prefix checkpoint.
const CHECKPOINT_STRIDE: usize = 1 << 16;

/// Default memory budget for materialized prime tables (bytes).
const DEFAULT_BUDGET: u64 = 2 << 30;

fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).is_none_or(|s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if limit >= 2 {
        out.push(2);
    }
    if limit < 3 {
        return out;
    }
    let half = ((limit - 1) / 2) as usize; // odd 2i+1 for i in 1..=half
    let mut composite = vec![false; half + 1];
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut m = (p * p - 1) / 2;
            while m <= half {
                composite[m] = true;
                m += p;
            }
        }
        i += 1;
    }
    for (j, &c) in composite.iter().enumerate().skip(1) {
        if !c {
            out.push((2 * j + 1) as u64);
        }
    }
    out
}

/// Streams every prime ≤ `limit` in increasing order through `f`, sieving
/// disjoint segments so no full-range table is materialized.
pub fn for_each_prime<F: FnMut(u64)>(limit: u64, mut f: F) {
    if limit < 2 {
        return;
    }
    if limit <= SIMPLE_LIMIT {
        for p in simple_sieve(limit) {
            f(p);
        }
        return;
    }
    let base = simple_sieve(isqrt(limit));
    f(2);
    let mut words: Vec<u64> = Vec::new();
    let mut lo = 3u64;
    while lo <= limit {
        let span = SEGMENT_SPAN.min(limit - lo + 2);
        let len = (span as usize).div_ceil(2); // odds in [lo, lo + span)
        let hi = lo + 2 * len as u64; // exclusive, odd-aligned
        words.clear();
        words.resize(len.div_ceil(64), 0);
        for &p in base.iter().skip(1) {
            if p.saturating_mul(p) >= hi {
                break;
            }
            let mut start = p * p;
            if start < lo {
                start = lo.div_ceil(p) * p;
                if start % 2 == 0 {
                    start += p;
                }
            }
            let mut idx = ((start - lo) / 2) as usize;
            while idx < len {
                words[idx / 64] |= 1 << (idx % 64);
                idx += p as usize;
            }
        }
        for idx in 0..len {
            if words[idx / 64] & (1 << (idx % 64)) == 0 {
                let n = lo + 2 * idx as u64;
                if n <= limit {
                    f(n);
                }
            }
        }
        lo = hi;
    }
}

fn ln_u64(prec: u32, v: u64) -> Result<Interval> {
    Interval::from_u64(prec, v).ln()
}

/// Interval of the factor `p/(p−1) = (1 − 1/p)^(−1)`.
fn mertens_factor(prec: u32, p: u64) -> Result<Interval> {
    Interval::from_u64(prec, p).div(&Interval::from_u64(prec, p - 1))
}

/// A sieve-backed store of the primes up to a limit, with lazily built
/// interval checkpoints of θ(p) = Σ_{q≤p} log q and of the Mertens partial
/// product Π_{q≤p} (1 − 1/q)^(−1).
///
/// Immutable after construction; safe to share across threads.
pub struct PrimeTable {
    limit: u64,
    prec: u32,
    primes: Vec<u64>,
    theta_ckpt: OnceLock<Vec<Interval>>,
    mertens_ckpt: OnceLock<Vec<Interval>>,
}

impl PrimeTable {
    /// Sieves all primes up to `limit` at the default working precision.
    pub fn sieve(limit: u64) -> Result<Self> {
        Self::sieve_with(limit, DEFAULT_PRECISION, DEFAULT_BUDGET)
    }

    /// Sieves with an explicit precision and memory budget.
    pub fn sieve_with(limit: u64, prec: u32, budget_bytes: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Range(format!(
                "sieve limit must be ≥ 2, got {limit}"
            )));
        }
        // π(x) < x/(ln x − 1.1) for x ≥ 60; 8 bytes per stored prime.
        let estimate = if limit < 64 {
            64 * 8
        } else {
            (limit as f64 / ((limit as f64).ln() - 1.1) * 8.0) as u64
        };
        if estimate > budget_bytes {
            return Err(Error::Resource(format!(
                "sieving to {limit} needs ≈{estimate} bytes of prime storage, budget is {budget_bytes}"
            )));
        }
        let mut primes = Vec::with_capacity((estimate / 8) as usize);
        for_each_prime(limit, |p| primes.push(p));
        Ok(PrimeTable {
            limit,
            prec,
            primes,
            theta_ckpt: OnceLock::new(),
            mertens_ckpt: OnceLock::new(),
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn prime_count(&self) -> usize {
        self.primes.len()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// The n-th prime, 1-based.
    pub fn nth_prime(&self, n: usize) -> Result<u64> {
        if n == 0 || n > self.primes.len() {
            return Err(Error::Range(format!(
                "prime index {n} out of range 1..={}",
                self.primes.len()
            )));
        }
        Ok(self.primes[n - 1])
    }

    /// Number of primes ≤ x.
    pub fn count_upto(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p <= x)
    }

    fn theta_checkpoints(&self) -> &[Interval] {
        self.theta_ckpt.get_or_init(|| {
            let mut out = Vec::with_capacity(self.primes.len() / CHECKPOINT_STRIDE + 1);
            let mut acc = Interval::from_u64(self.prec, 0);
            out.push(acc.clone());
            for (i, &p) in self.primes.iter().enumerate() {
                acc = acc.add(&ln_u64(self.prec, p).expect("prime ≥ 2"));
                if (i + 1) % CHECKPOINT_STRIDE == 0 {
                    out.push(acc.clone());
                }
            }
            out
        })
    }

    fn mertens_checkpoints(&self) -> &[Interval] {
        self.mertens_ckpt.get_or_init(|| {
            let mut out = Vec::with_capacity(self.primes.len() / CHECKPOINT_STRIDE + 1);
            let mut acc = Interval::from_u64(self.prec, 1);
            out.push(acc.clone());
            for (i, &p) in self.primes.iter().enumerate() {
                acc = acc.mul(&mertens_factor(self.prec, p).expect("prime ≥ 2"));
                if (i + 1) % CHECKPOINT_STRIDE == 0 {
                    out.push(acc.clone());
                }
            }
            out
        })
    }

    /// Enclosure of θ over the first `m` primes.
    fn theta_by_count(&self, m: usize) -> Interval {
        let ckpts = self.theta_checkpoints();
        let k = m / CHECKPOINT_STRIDE;
        let mut acc = ckpts[k].clone();
        for &p in &self.primes[k * CHECKPOINT_STRIDE..m] {
            acc = acc.add(&ln_u64(self.prec, p).expect("prime ≥ 2"));
        }
        acc
    }

    /// Enclosure of the Chebyshev function θ(x) = Σ_{p≤x} log p.
    pub fn theta(&self, x: u64) -> Result<Interval> {
        if x > self.limit {
            return Err(Error::Range(format!(
                "θ({x}) beyond table limit {}",
                self.limit
            )));
        }
        Ok(self.theta_by_count(self.count_upto(x)))
    }

    /// Enclosure of log(p_n#) = θ(p_n), n 1-based.
    pub fn primorial_log(&self, n: usize) -> Result<Interval> {
        if n == 0 || n > self.primes.len() {
            return Err(Error::Range(format!(
                "primorial index {n} out of range 1..={}",
                self.primes.len()
            )));
        }
        Ok(self.theta_by_count(n))
    }

    /// Enclosure of Π_{p≤x} (1 − 1/p)^(−1).
    pub fn mertens_product(&self, x: u64) -> Result<Interval> {
        if x > self.limit {
            return Err(Error::Range(format!(
                "Mertens product at {x} beyond table limit {}",
                self.limit
            )));
        }
        let m = self.count_upto(x);
        let ckpts = self.mertens_checkpoints();
        let k = m / CHECKPOINT_STRIDE;
        let mut acc = ckpts[k].clone();
        for &p in &self.primes[k * CHECKPOINT_STRIDE..m] {
            acc = acc.mul(&mertens_factor(self.prec, p)?);
        }
        Ok(acc)
    }

    /// Iterator over `(n, p_n, θ(p_n))` prefix enclosures.
    pub fn theta_iter(&self) -> ThetaIter<'_> {
        ThetaIter {
            table: self,
            idx: 0,
            acc: Interval::from_u64(self.prec, 0),
        }
    }

    /// Iterator over `(n, p_n, Π_{p≤p_n} (1 − 1/p)^(−1))` prefix enclosures.
    pub fn mertens_iter(&self) -> MertensIter<'_> {
        MertensIter {
            table: self,
            idx: 0,
            acc: Interval::from_u64(self.prec, 1),
        }
    }

    /// Writes the sieved primes to a versioned binary cache.
    pub fn save_cache<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        let mut hash = Fnv1a::new();
        let put = |w: &mut BufWriter<File>, hash: &mut Fnv1a, bytes: &[u8]| -> Result<()> {
            hash.update(bytes);
            w.write_all(bytes)?;
            Ok(())
        };
        put(&mut w, &mut hash, CACHE_MAGIC)?;
        put(&mut w, &mut hash, &CACHE_VERSION.to_le_bytes())?;
        put(&mut w, &mut hash, &self.limit.to_le_bytes())?;
        put(&mut w, &mut hash, &(self.primes.len() as u64).to_le_bytes())?;
        for &p in &self.primes {
            put(&mut w, &mut hash, &p.to_le_bytes())?;
        }
        w.write_all(&hash.finish().to_le_bytes())?;
        w.flush()?;
        Ok(())
    }

    /// Reads a table back from [`save_cache`](Self::save_cache) output.
    pub fn load_cache<P: AsRef<Path>>(path: P, prec: u32) -> Result<Self> {
        let mut r = BufReader::new(File::open(path)?);
        let mut hash = Fnv1a::new();
        let mut buf8 = [0u8; 8];
        let mut buf4 = [0u8; 4];

        r.read_exact(&mut buf4)?;
        hash.update(&buf4);
        if &buf4 != CACHE_MAGIC {
            return Err(Error::Format("sieve cache: bad magic".into()));
        }
        r.read_exact(&mut buf4)?;
        hash.update(&buf4);
        let version = u32::from_le_bytes(buf4);
        if version != CACHE_VERSION {
            return Err(Error::Format(format!(
                "sieve cache: unsupported version {version}"
            )));
        }
        r.read_exact(&mut buf8)?;
        hash.update(&buf8);
        let limit = u64::from_le_bytes(buf8);
        r.read_exact(&mut buf8)?;
        hash.update(&buf8);
        let count = u64::from_le_bytes(buf8) as usize;

        let mut primes = Vec::with_capacity(count);
        let mut last = 0u64;
        for _ in 0..count {
            r.read_exact(&mut buf8)?;
            hash.update(&buf8);
            let p = u64::from_le_bytes(buf8);
            if p <= last || p > limit {
                return Err(Error::Format("sieve cache: primes not increasing".into()));
            }
            primes.push(p);
            last = p;
        }
        r.read_exact(&mut buf8)?;
        let want = u64::from_le_bytes(buf8);
        if want != hash.finish() {
            return Err(Error::Format("sieve cache: checksum mismatch".into()));
        }
        Ok(PrimeTable {
            limit,
            prec,
            primes,
            theta_ckpt: OnceLock::new(),
            mertens_ckpt: OnceLock::new(),
        })
    }
}

const CACHE_MAGIC: &[u8; 4] = b"RPTC";
const CACHE_VERSION: u32 = 1;

struct Fnv1a(u64);

impl Fnv1a {
    fn new() -> Self {
        Fnv1a(0xcbf2_9ce4_8422_2325)
    }
    fn update(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    fn finish(&self) -> u64 {
        self.0
    }
}

pub struct ThetaIter<'a> {
    table: &'a PrimeTable,
    idx: usize,
    acc: Interval,
}

impl Iterator for ThetaIter<'_> {
    /// `(n, p_n, θ(p_n))`, n 1-based.
    type Item = (usize, u64, Interval);

    fn next(&mut self) -> Option<Self::Item> {
        let p = *self.table.primes.get(self.idx)?;
        self.idx += 1;
        self.acc = self
            .acc
            .add(&ln_u64(self.table.prec, p).expect("prime ≥ 2"));
        Some((self.idx, p, self.acc.clone()))
    }
}

pub struct MertensIter<'a> {
    table: &'a PrimeTable,
    idx: usize,
    acc: Interval,
}

impl Iterator for MertensIter<'_> {
    /// `(n, p_n, Π_{p≤p_n} (1 − 1/p)^(−1))`, n 1-based.
    type Item = (usize, u64, Interval);

    fn next(&mut self) -> Option<Self::Item> {
        let p = *self.table.primes.get(self.idx)?;
        self.idx += 1;
        self.acc = self
            .acc
            .mul(&mertens_factor(self.table.prec, p).expect("prime ≥ 2"));
        Some((self.idx, p, self.acc.clone()))
    }
}

/// Streams Π_{p≤x} (1 − 1/p)^(−1) up to `max(points)` without materializing
/// a table, returning the enclosure at each requested point in input order.
pub fn streamed_mertens_product(points: &[u64], prec: u32) -> Vec<(u64, Interval)> {
    let mut sorted: Vec<u64> = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let max = match sorted.last() {
        Some(&m) => m,
        None => return Vec::new(),
    };
    let mut acc = Interval::from_u64(prec, 1);
    let mut at_point: Vec<(u64, Interval)> = Vec::with_capacity(sorted.len());
    let mut next = 0usize;
    for_each_prime(max, |p| {
        while next < sorted.len() && sorted[next] < p {
            at_point.push((sorted[next], acc.clone()));
            next += 1;
        }
        acc = acc.mul(&mertens_factor(prec, p).expect("prime ≥ 2"));
    });
    while next < sorted.len() {
        at_point.push((sorted[next], acc.clone()));
        next += 1;
    }
    points
        .iter()
        .map(|&x| {
            let i = at_point
                .binary_search_by_key(&x, |&(rx, _)| rx)
                .expect("point recorded");
            (x, at_point[i].1.clone())
        })
        .collect()
}

/// Smallest x for which the θ deviation bound `√x·log²x/(8π)` is valid.
pub const THETA_BOUND_MIN_X: u64 = 599;

/// Rigorous enclosure of `√x·log²x/(8π)`.
fn deviation_bound(prec: u32, x: u64) -> Result<Interval> {
    let xi = Interval::from_u64(prec, x);
    let num = xi.sqrt()?.mul(&xi.ln()?.pow_u(2));
    let denom = pi(prec).mul(&Interval::from_u64(prec, 8));
    num.div(&denom)
}

/// Conservative f64 lower bound of `√x·log²x/(8π)`; a relative haircut of
/// 1e−13 dominates the few-ulp error of the f64 evaluation.
fn deviation_bound_f64_lo(x: u64) -> f64 {
    let xf = x as f64;
    let l = xf.ln();
    (xf.sqrt() * l * l / (8.0 * std::f64::consts::PI)) * (1.0 - 1e-13)
}

struct DeviationScan {
    prec: u32,
    checked: u64,
    escalations: u64,
    failures: Vec<u64>,
    min_slack: f64,
    min_slack_at: u64,
}

impl DeviationScan {
    fn new(prec: u32) -> Self {
        DeviationScan {
            prec,
            checked: 0,
            escalations: 0,
            failures: Vec::new(),
            min_slack: f64::INFINITY,
            min_slack_at: 0,
        }
    }

    /// `lhs_hi` must be a rigorous f64 upper bound of the deviation under
    /// test; `exact` recomputes the deviation as an interval on escalation.
    fn note(
        &mut self,
        x: u64,
        lhs_hi: f64,
        exact: impl FnOnce() -> Result<Interval>,
    ) -> Result<()> {
        self.checked += 1;
        let mut slack = deviation_bound_f64_lo(x) - lhs_hi;
        if slack < 0.0 {
            self.escalations += 1;
            let diff = deviation_bound(self.prec, x)?.sub(&exact()?);
            slack = diff.lo_f64();
            if slack < 0.0 {
                self.failures.push(x);
            }
        }
        if slack < self.min_slack {
            self.min_slack = slack;
            self.min_slack_at = x;
        }
        Ok(())
    }
}

/// Checks `|θ(x) − x| ≤ √x·log²x/(8π)` at every point of `[x_min, x_max]`
/// where the deviation is locally maximal.
///
/// θ(x) − x decreases and x − θ(x) increases between consecutive primes, and
/// the bound is increasing on the range, so it suffices to check
/// `θ(p) − p ≤ bound(p)` at each prime p and `r − θ(p) ≤ bound(r)` at the
/// right end r of each prime gap.
///
/// Runs a conservative f64 fast path and escalates to full interval
/// arithmetic whenever the fast path cannot prove the inequality.
pub fn theta_bound_check(x_min: u64, x_max: u64, table: &PrimeTable) -> Result<ThetaCheckReport> {
    if x_min < THETA_BOUND_MIN_X {
        return Err(Error::Range(format!(
            "θ deviation bound requires x ≥ {THETA_BOUND_MIN_X}, got {x_min}"
        )));
    }
    if x_min >= x_max {
        return Err(Error::Range(format!(
            "empty check range [{x_min}, {x_max}]"
        )));
    }
    if x_max > table.limit {
        return Err(Error::Range(format!(
            "x_max {x_max} beyond table limit {}",
            table.limit
        )));
    }

    let prec = table.prec;
    let mut scan = DeviationScan::new(prec);
    let mut theta = Interval::from_u64(prec, 0);
    let mut prev: Option<(u64, Interval)> = None;

    for &p in table.primes.iter() {
        if p > x_max {
            break;
        }
        if let Some((prev_p, ref th)) = prev {
            // When x_min lands strictly inside this gap, θ − x peaks at the
            // left end x_min.
            if prev_p < x_min && x_min < p {
                let lhs_hi = th.hi_f64() - x_min as f64;
                scan.note(x_min, lhs_hi, || {
                    Ok(th.sub(&Interval::from_u64(prec, x_min)))
                })?;
            }
            // Gap (prev_p, p): x − θ is maximal as x approaches p.
            if p > x_min {
                let lhs_hi = p as f64 - th.lo_f64();
                scan.note(p, lhs_hi, || Ok(Interval::from_u64(prec, p).sub(th)))?;
            }
        }
        theta = theta.add(&ln_u64(prec, p)?);
        if p >= x_min {
            // At p itself: θ jumps; θ(p) − p is maximal here.
            let lhs_hi = theta.hi_f64() - p as f64;
            let th = &theta;
            scan.note(p, lhs_hi, || Ok(th.sub(&Interval::from_u64(prec, p))))?;
        }
        prev = Some((p, theta.clone()));
    }

    // Tail [last_prime, x_max].
    if let Some((lp, ref th)) = prev {
        if x_max > lp {
            let lhs_hi = x_max as f64 - th.lo_f64();
            scan.note(
                x_max,
                lhs_hi,
                || Ok(Interval::from_u64(prec, x_max).sub(th)),
            )?;
        }
    }

    Ok(ThetaCheckReport {
        x_min,
        x_max,
        points_checked: scan.checked,
        passed: scan.failures.is_empty(),
        min_slack: scan.min_slack,
        min_slack_at: scan.min_slack_at,
        escalations: scan.escalations,
        failures: scan.failures,
    })
}
