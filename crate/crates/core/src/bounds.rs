//! Index bounds for uniform covers in terms of the largest index multiplicity `M`.
//!
//! `c(M)` is the least positive integer `x` with `∏_{p≤x} p/(p−1) ≤ x/M`. Every prime dividing an
//! index of a qualifying cover lies below `c(M)`, at most `π(c(M))` distinct primes occur, and the
//! least index satisfies `log n_1 ≤ α(M)·θ(c(M)) ≤ l(M)` with
//! `α(M) = 2 + ⌊log₂(ζ(2)·c(M))⌋` and `l(M) = (2 + log₂(ζ(2)c(M)))·π(c(M))·log c(M)`.
//!
//! `c(M)` and the premise of the `q`-bound are decided exactly. The asymptotic forms
//! (`c(M) ≈ e^γ M log M` and friends) are reported as diagnostics only.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{self, default_sieve, ArithError};
use crate::ExactRational;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `log₂(ζ(2)·c)` values closer than this to an integer are re-decided exactly.
pub const FLOOR_GUARD_BAND: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("M must be at least 2, got {0}")]
    MultiplicityTooSmall(u64),
    #[error("q must be greater than 1, got {0}")]
    QTooSmall(u64),
    #[error("sieve capacity exhausted before c({0}) was found")]
    SieveExhausted(u64),
    #[error("could not decide floor(log2(zeta(2) * {0})) at 256-bit precision")]
    Undecidable(u64),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn check_m(m: u64) -> Result<(), BoundsError> {
    if m < 2 {
        Err(BoundsError::MultiplicityTooSmall(m))
    } else {
        Ok(())
    }
}

/// Whether `∏_{p≤x} p/(p−1) ≤ x/M`, decided exactly.
pub fn defining_inequality_holds(x: u64, m: u64) -> Result<bool, BoundsError> {
    let (num, den) = arith::mertens_fraction(x)?;
    Ok(num * m <= den * x)
}

/// The least positive `x` with `∏_{p≤x} p/(p−1) ≤ x/M`.
///
/// The product is constant between consecutive primes, so on `[p_i, p_{i+1})` the first solution
/// is `max(p_i, ⌈M·∏_{j≤i} p_j/(p_j−1)⌉)` whenever that lies below `p_{i+1}`.
pub fn c_of(m: u64) -> Result<u64, BoundsError> {
    check_m(m)?;
    let sieve = default_sieve();
    let primes = sieve.primes_up_to(sieve.capacity())?;
    // [1, 2): empty product, needs x ≥ M, impossible for M ≥ 2.
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let m_big = BigUint::from(m);
    for w in primes.windows(2) {
        let (p, next) = (w[0], w[1]);
        num *= p;
        den *= p - 1;
        let need = (&m_big * &num + &den - 1u32) / &den;
        let x = need.to_u64().map_or(u64::MAX, |n| n.max(p));
        if x < next {
            return Ok(x);
        }
    }
    Err(BoundsError::SieveExhausted(m))
}

/// π enclosed as `[lo, hi] / 2^bits` from Machin's formula in fixed point.
fn pi_interval(bits: u64) -> (BigInt, BigInt) {
    // arctan(1/x) with a bound on the accumulated truncation error, in units of 2^-bits
    fn arctan_inv(x: u64, bits: u64) -> (BigInt, BigInt) {
        let one = BigInt::one() << bits;
        let x2 = BigInt::from(x * x);
        let mut power = &one / BigInt::from(x);
        let mut sum = BigInt::zero();
        let mut n = 0u64;
        while !power.is_zero() {
            let term = &power / BigInt::from(2 * n + 1);
            if n.is_multiple_of(2) {
                sum += term;
            } else {
                sum -= term;
            }
            power /= &x2;
            n += 1;
        }
        // each term is off by < 3 units, and the omitted tail by < 1
        (sum, BigInt::from(3 * n + 1))
    }
    let (a5, e5) = arctan_inv(5, bits);
    let (a239, e239) = arctan_inv(239, bits);
    let mid = a5 * 16 - a239 * 4;
    let err = e5 * 16 + e239 * 4;
    (&mid - &err, mid + err)
}

/// `⌊log₂(ζ(2)·c)⌋` with ζ(2) = π²/6; binary64 unless the value sits within
/// [`FLOOR_GUARD_BAND`] of an integer, in which case (or when `force_exact`) the floor is decided
/// against a rigorous 256-bit enclosure of π.
pub fn floor_log2_zeta2_times(c: u64, force_exact: bool) -> Result<(u32, bool), BoundsError> {
    assert!(c >= 1);
    let l = (PI * PI / 6.0 * c as f64).log2();
    let nearest = l.round();
    if !force_exact && (l - nearest).abs() >= FLOOR_GUARD_BAND {
        return Ok((l.floor() as u32, false));
    }
    // ζ(2)c ≥ 2^k  ⇔  π²·c ≥ 6·2^k
    const BITS: u64 = 256;
    let (lo, hi) = pi_interval(BITS);
    let scale = BigInt::one() << (2 * BITS);
    let c_big = BigInt::from(c);
    let lo2 = &lo * &lo * &c_big;
    let hi2 = &hi * &hi * &c_big;
    let mut k = nearest.max(0.0) as u32 + 1;
    loop {
        let threshold = BigInt::from(6u32) * (BigInt::one() << k) * &scale;
        if lo2 >= threshold {
            return Ok((k, true));
        }
        if hi2 >= threshold {
            return Err(BoundsError::Undecidable(c));
        }
        if k == 0 {
            // ζ(2)·c ≥ ζ(2) > 1 = 2^0
            return Err(BoundsError::Undecidable(c));
        }
        k -= 1;
    }
}

/// `α(M) = 2 + ⌊log₂(ζ(2)·c)⌋`.
pub fn alpha_of_c(c: u64) -> Result<(u32, bool), BoundsError> {
    floor_log2_zeta2_times(c, false).map(|(f, escalated)| (2 + f, escalated))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub m: u64,
    pub c: u64,
    pub pi_c: u64,
    pub theta_c: f64,
    pub alpha: u32,
    /// The floor in `alpha` needed the exact π enclosure.
    pub alpha_escalated: bool,
    /// `α(M)·θ(c(M))`, the tighter bound on `log n_1`.
    pub alpha_theta: f64,
    /// `l(M) = (2 + log₂(ζ(2)c))·π(c)·log c`.
    pub l_value: f64,
    /// `e^γ·M·log M`, the leading term of the prime bound.
    pub prime_bound_float: f64,
    /// `c / (e^γ M log M)`.
    pub c_ratio: f64,
    /// `e^γ/log 2 · M log² M`, the leading term of the bound on `log n_1`.
    pub log_index_leading: f64,
    pub notes: Vec<String>,
}

pub fn bound_report(m: u64) -> Result<BoundReport, BoundsError> {
    let c = c_of(m)?;
    let counts = arith::prime_counts(c)?;
    let (alpha, alpha_escalated) = alpha_of_c(c)?;
    let zeta2 = PI * PI / 6.0;
    let cf = c as f64;
    let mf = m as f64;
    let l_value = (2.0 + (zeta2 * cf).log2()) * counts.pi as f64 * cf.ln();
    let prime_bound_float = EULER_GAMMA.exp() * mf * mf.ln();
    Ok(BoundReport {
        m,
        c,
        pi_c: counts.pi,
        theta_c: counts.theta,
        alpha,
        alpha_escalated,
        alpha_theta: alpha as f64 * counts.theta,
        l_value,
        prime_bound_float,
        c_ratio: cf / prime_bound_float,
        log_index_leading: EULER_GAMMA.exp() / 2f64.ln() * mf * mf.ln().powi(2),
        notes: vec![
            "asymptotic comparisons (e^γ M log M, e^γ M, e^γ/log 2 · M log² M) are heuristic: \
             the O-constants are not known"
                .to_string(),
        ],
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QBoundReport {
    pub q: u64,
    pub m: u64,
    pub c: u64,
    /// `q < M·∏_{p≤q} p/(p−1)`.
    pub premise_holds: bool,
    /// `q < c(M)`.
    pub conclusion_holds: bool,
    pub implication_holds: bool,
}

pub fn check_q_bound(q: u64, m: u64) -> Result<QBoundReport, BoundsError> {
    check_q_bound_with(q, m, c_of(m)?)
}

/// [`check_q_bound`] with `c(M)` already known, for sweeps.
pub fn check_q_bound_with(q: u64, m: u64, c: u64) -> Result<QBoundReport, BoundsError> {
    check_m(m)?;
    if q < 2 {
        return Err(BoundsError::QTooSmall(q));
    }
    let (num, den) = arith::mertens_fraction(q)?;
    let premise_holds = den * q < num * m;
    let conclusion_holds = q < c;
    Ok(QBoundReport {
        q,
        m,
        c,
        premise_holds,
        conclusion_holds,
        implication_holds: !premise_holds || conclusion_holds,
    })
}

/// Exact `∏_{p≤x} p/(p−1)` for every `x` in `1..=max`, sharing the running product.
pub fn mertens_table(max: u64) -> Result<Vec<ExactRational>, BoundsError> {
    let primes = default_sieve().primes_up_to(max)?;
    let mut out = Vec::with_capacity(max as usize);
    let mut cur = ExactRational::one();
    let mut next = primes.iter().peekable();
    for x in 1..=max {
        if next.peek() == Some(&&x) {
            cur *= crate::rational(x, x - 1);
            next.next();
        }
        out.push(cur.clone());
    }
    Ok(out)
}
