//! Rigorous verification toolkit for Robin's inequality
//! `σ(n) < e^γ · n · log log n` and its restriction to t-free integers.
//!
//! Everything numeric runs in directed-rounding interval arithmetic at a
//! configurable working precision (default 100 bits), so every reported
//! verdict — a counterexample list, a bound certification, a margin — is a
//! proved statement about real numbers, not a floating-point impression.
//!
//! Modules:
//! - [`numerics`]: interval arithmetic, ζ(t), γ, π enclosures.
//! - [`primes`]: segmented sieve, Chebyshev θ, Mertens partial products.
//! - [`divisor`]: σ, the generalized Dedekind Ψ_t, the Robin predicate,
//!   counterexample scans, and R_t at primorials.
//! - [`bounds`]: explicit bound functions g_B and g_∞, the C₁ certificate,
//!   Mertens-product bounds, and the t certification logic.
//! - [`ca`]: greedy enumeration of colossally-abundant extremal numbers with
//!   interval-tracked logarithms.
//! - [`report`]: machine-readable run reports.

pub mod bounds;
pub mod ca;
pub mod divisor;
pub mod error;
pub mod numerics;
pub mod primes;
pub mod report;

pub use error::{Error, Result};
pub use numerics::{Constants, Interval, DEFAULT_PRECISION};
