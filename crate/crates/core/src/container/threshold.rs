//! Hypothesis check of the container theorem for the complete template on
//! `K_n`, with `ε = n^(-1/3) / ((r-1)(r-2))` and `τ = √8640 · 2^9 · n^(-1/3)`.
//! Every comparison is raised to the sixth power first.

use super::{complete_graph_stats, delta_tau_radical, CodegreeWeights, RainbowHypergraphStats, UNIFORMITY};
use crate::error::{Error, Result};
use crate::exact::{falling_factorial, nth_root_bounds, ratio, rational_from, rational_pow, serde_dec, Count, Interval};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::cmp::Ordering;

/// `12 · 6!`
const TWELVE_FACT: u64 = 12 * 720;
const BRACKET_BITS: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainerConstants {
    pub r: u32,
    #[serde(serialize_with = "serde_dec::count")]
    pub n: Count,
    /// `ε^6 = 1 / (n^2 ((r-1)(r-2))^6)`
    #[serde(serialize_with = "serde_dec::rational")]
    pub epsilon_sixth: BigRational,
    /// `τ^6 = 8640^3 · 2^54 / n^2`
    #[serde(serialize_with = "serde_dec::rational")]
    pub tau_sixth: BigRational,
    /// `1 / (200 · 6 · 6!^2)`
    #[serde(serialize_with = "serde_dec::rational")]
    pub tau_threshold: BigRational,
    /// `(ε / (12 · 6!))^6`
    #[serde(serialize_with = "serde_dec::rational")]
    pub delta_threshold_sixth: BigRational,
    /// Upper bound `1000 · 6 · 6!^3` on the container constant.
    #[serde(serialize_with = "serde_dec::count")]
    pub c_bound: Count,
}

impl ContainerConstants {
    pub fn new(n: &BigUint, r: u32) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if r < 3 {
            return Err(Error::InvalidArgument(format!("ε is undefined for r = {r}")));
        }
        let n2 = n * n;
        let rr = BigUint::from((r as u64 - 1) * (r as u64 - 2));
        let epsilon_sixth = ratio(1u32, &n2 * rr.pow(6));
        let tau_sixth = ratio(BigUint::from(TWELVE_FACT).pow(3) << 54u32, n2);
        let fact = falling_factorial(UNIFORMITY as u64, UNIFORMITY as u64);
        let tau_threshold = ratio(1u32, BigUint::from(200 * UNIFORMITY as u64) * &fact * &fact);
        let delta_threshold_sixth = &epsilon_sixth / rational_from(BigUint::from(TWELVE_FACT).pow(6));
        let c_bound = BigUint::from(1000 * UNIFORMITY as u64) * fact.pow(3);
        Ok(ContainerConstants {
            r,
            n: n.clone(),
            epsilon_sixth,
            tau_sixth,
            tau_threshold,
            delta_threshold_sixth,
            c_bound,
        })
    }

    pub fn epsilon(&self, bits: u64) -> Interval {
        nth_root_bounds(&self.epsilon_sixth, 6, bits)
    }

    pub fn tau(&self, bits: u64) -> Interval {
        nth_root_bounds(&self.tau_sixth, 6, bits)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainerCheck {
    pub constants: ContainerConstants,
    pub weights: CodegreeWeights,
    pub stats: RainbowHypergraphStats,
    /// No rainbow `K_4` exists (`r < 6` or `n < 4`).
    pub vacuous: bool,
    pub epsilon_below_half: bool,
    pub tau_below_half: bool,
    pub tau_ok: bool,
    pub delta_ok: bool,
    pub passes: bool,
    #[serde(serialize_with = "serde_dec::interval")]
    pub epsilon: Interval,
    #[serde(serialize_with = "serde_dec::interval")]
    pub tau: Interval,
    /// Bracket of `Δ(H, τ) · 12 · 6! / ε`; the condition asks for `<= 1`.
    #[serde(serialize_with = "serde_dec::opt_interval")]
    pub delta_ratio: Option<Interval>,
    /// Approximate `c N τ log(1/ε) log(1/τ)` with `c` at its bound, for
    /// reporting only.
    pub container_exponent: Option<f64>,
}

pub fn container_hypothesis_check(n: &BigUint, r: u32, weights: CodegreeWeights) -> Result<ContainerCheck> {
    let constants = ContainerConstants::new(n, r)?;
    let stats = complete_graph_stats(n, r);
    let vacuous = stats.edge_count.is_zero();
    let half_sixth = ratio(1u32, 64u32);
    let epsilon_below_half = constants.epsilon_sixth < half_sixth;
    let tau_below_half = constants.tau_sixth < half_sixth;
    let tau_ok = constants.tau_sixth < rational_pow(&constants.tau_threshold, 6);
    let (delta_ok, delta_ratio) = if vacuous {
        (false, None)
    } else {
        let scale = &constants.epsilon_sixth / rational_from(BigUint::from(TWELVE_FACT).pow(6));
        let sum = delta_tau_radical(&stats, &constants.tau_sixth, &scale, weights)?;
        let ok = match sum.compare(&BigRational::one()) {
            Some(ord) => ord != Ordering::Greater,
            None => return Err(Error::Undecided),
        };
        (ok, Some(sum.bounds(BRACKET_BITS)))
    };
    let epsilon = constants.epsilon(BRACKET_BITS);
    let tau = constants.tau(BRACKET_BITS);
    let container_exponent = exponent_estimate(&stats.vertex_count, &constants, &epsilon, &tau);
    let passes = !vacuous && epsilon_below_half && tau_below_half && tau_ok && delta_ok;
    Ok(ContainerCheck {
        constants,
        weights,
        stats,
        vacuous,
        epsilon_below_half,
        tau_below_half,
        tau_ok,
        delta_ok,
        passes,
        epsilon,
        tau,
        delta_ratio,
        container_exponent,
    })
}

fn exponent_estimate(n_vertices: &BigUint, k: &ContainerConstants, eps: &Interval, tau: &Interval) -> Option<f64> {
    let eps = eps.hi.to_f64()?;
    let tau = tau.hi.to_f64()?;
    if eps <= 0.0 || tau <= 0.0 {
        return None;
    }
    let value = k.c_bound.to_f64()? * n_vertices.to_f64()? * tau * (1.0 / eps).ln() * (1.0 / tau).ln();
    value.is_finite().then_some(value)
}

/// Least `n` passing the check, by doubling then bisection.
pub fn min_n_for_container(r: u32, weights: CodegreeWeights) -> Result<Count> {
    if r < 6 {
        return Err(Error::InvalidArgument(format!("rainbow K_4 needs r >= 6, got {r}")));
    }
    let passes = |n: &BigUint| container_hypothesis_check(n, r, weights).map(|c| c.passes);
    let mut lo = BigUint::from(3u32);
    let mut hi = BigUint::from(4u32);
    while !passes(&hi)? {
        lo = hi.clone();
        hi <<= 1;
    }
    // invariant: lo fails, hi passes
    while &hi - &lo > BigUint::one() {
        let mid: BigUint = (&lo + &hi) >> 1;
        if passes(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
