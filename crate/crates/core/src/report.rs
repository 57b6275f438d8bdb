//! Machine-readable outcomes of verification runs.
//!
//! Reports carry outward-rounded `f64` projections of interval quantities:
//! `lo` is rounded down and `hi` up, so a report never overstates a margin.

use serde::Serialize;

use crate::numerics::Interval;

/// Outward `f64` image of an interval, for reports.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IvF64 {
    pub lo: f64,
    pub hi: f64,
}

impl From<&Interval> for IvF64 {
    fn from(iv: &Interval) -> Self {
        IvF64 {
            lo: iv.lo_f64(),
            hi: iv.hi_f64(),
        }
    }
}

/// Outcome of the Chebyshev θ deviation check over `[x_min, x_max]`.
#[derive(Debug, Clone, Serialize)]
pub struct ThetaCheckReport {
    pub x_min: u64,
    pub x_max: u64,
    pub points_checked: u64,
    pub passed: bool,
    /// Smallest observed `bound − |θ(x) − x|` over all checked points
    /// (conservatively rounded down).
    pub min_slack: f64,
    pub min_slack_at: u64,
    /// Points where the fast float path was inconclusive and the full
    /// interval evaluation decided.
    pub escalations: u64,
    pub failures: Vec<u64>,
}

/// Outcome of the exhaustive small-n counterexample scan.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub limit: u64,
    pub counterexamples: Vec<u64>,
    pub max_counterexample: Option<u64>,
    pub checked: u64,
    pub elapsed_ms: u64,
}

/// One evaluation point of the Mertens upper-bound check.
#[derive(Debug, Clone, Serialize)]
pub struct MertensUpperPoint {
    pub x: u64,
    pub empirical: IvF64,
    pub bound: IvF64,
    pub holds: bool,
}

/// Outcome of an extremal-number enumeration run.
#[derive(Debug, Clone, Serialize)]
pub struct CaRunReport {
    pub target_log10_exponent: f64,
    pub steps: u64,
    /// log₁₀ of the final n reached.
    pub final_log10_n: IvF64,
    pub final_primorial_form: String,
    /// Exact values of every state that violates the inequality (all ≤ 5040
    /// unless `ri_holds_beyond_5040` is false).
    pub violations: Vec<u64>,
    pub ri_holds_beyond_5040: bool,
    /// Smallest proved log-domain margin `(γ + log log log n) − log(σ(n)/n)`
    /// over all states with n > 5040.
    pub min_margin_beyond_5040: f64,
    /// Width of the log n enclosure at the end of the run.
    pub log_n_width: f64,
    pub ties: u64,
    pub checkpoints_written: u64,
    pub precision: u32,
    pub elapsed_ms: u64,
}

/// Outcome of the Mertens product desk checks.
#[derive(Debug, Clone, Serialize)]
pub struct MertensCheckReport {
    pub lower_limit: u64,
    pub lower_samples: u64,
    pub seed: u64,
    pub lower_passed: bool,
    /// Smallest proved gap `product − rhs` across the sampled points.
    pub lower_min_gap: f64,
    pub lower_failures: Vec<u64>,
    pub upper_points: Vec<MertensUpperPoint>,
    pub upper_passed: bool,
    pub passed: bool,
}
