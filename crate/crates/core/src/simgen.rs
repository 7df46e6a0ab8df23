//! Synthetic series pairs with one planted variable-length motif.
//!
//! The background is a moving-average process of order [`MA_ORDER`] with
//! unit weights: each step is the sum of the last `MA_ORDER` i.i.d.
//! Gaussian innovations. Both series read the same process, the
//! second one lagged by `delay` steps, so backgrounds are correlated with a
//! delayed structure. A single period of a unit-amplitude sine of length
//! `motif_len_u` overwrites a random stretch of `U`, and a time-stretched
//! copy of length `motif_len_w` overwrites `W` at the same position shifted
//! by `delay`. Uniform mixing noise of weight `gamma` is then applied to
//! both series with independent draws.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{Interval, TimeSeries};

/// Order of the moving-average background.
pub const MA_ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSpec {
    pub length_u: usize,
    pub length_w: usize,
    pub motif_len_u: usize,
    pub motif_len_w: usize,
    pub delay: i64,
    pub innovation_variance: f64,
    pub gamma: f64,
    pub seed: u64,
    pub dims: usize,
}

impl Default for SimulationSpec {
    fn default() -> Self {
        SimulationSpec {
            length_u: 2000,
            length_w: 2000,
            motif_len_u: 60,
            motif_len_w: 80,
            delay: 20,
            innovation_variance: 4.0,
            gamma: 0.0,
            seed: 0,
            dims: 1,
        }
    }
}

impl SimulationSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidSpec(msg.to_string()));
        if self.length_u == 0 || self.length_w == 0 || self.dims == 0 {
            return bad("lengths and dims must be positive");
        }
        if self.motif_len_u == 0 || self.motif_len_w == 0 {
            return bad("motif lengths must be positive");
        }
        if self.motif_len_u > self.length_u || self.motif_len_w > self.length_w {
            return bad("motif longer than its series");
        }
        if !(self.innovation_variance.is_finite() && self.innovation_variance > 0.0) {
            return bad("innovation variance must be positive");
        }
        if !(0.0..=1.0).contains(&self.gamma) {
            return Err(Error::InvalidGamma(self.gamma));
        }
        Ok(())
    }
}

/// Planted motif positions, inclusive and 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub interval_u: Interval,
    pub interval_w: Interval,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedPair {
    pub u: TimeSeries,
    pub w: TimeSeries,
    pub ground_truth: GroundTruth,
}

/// One period of `sin(2 pi t / len)`, `t = 0..len`.
fn sine_period(len: usize) -> impl Iterator<Item = f64> {
    (0..len).map(move |t| (TAU * t as f64 / len as f64).sin())
}

pub fn generate_pair(spec: &SimulationSpec) -> Result<SimulatedPair> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let normal = Normal::new(0.0, spec.innovation_variance.sqrt()).expect("variance checked positive");

    // W[t + delay] and U[t] read the same smoothed sample
    let off_w = (-spec.delay).max(0) as usize;
    let off_u = (off_w as i64 + spec.delay) as usize;
    let base_len = (spec.length_u + off_u).max(spec.length_w + off_w);

    let dims = spec.dims;
    let mut u = vec![0.0; spec.length_u * dims];
    let mut w = vec![0.0; spec.length_w * dims];
    for d in 0..dims {
        let innovations: Vec<f64> = (0..base_len + MA_ORDER - 1).map(|_| normal.sample(&mut rng)).collect();
        let smoothed = moving_sum(&innovations, MA_ORDER);
        for t in 0..spec.length_u {
            u[t * dims + d] = smoothed[t + off_u];
        }
        for t in 0..spec.length_w {
            w[t * dims + d] = smoothed[t + off_w];
        }
    }

    let start_u = rng.gen_range(0..=spec.length_u - spec.motif_len_u);
    let start_w = (start_u as i64 + spec.delay).clamp(0, (spec.length_w - spec.motif_len_w) as i64) as usize;
    for (k, s) in sine_period(spec.motif_len_u).enumerate() {
        u[(start_u + k) * dims..(start_u + k + 1) * dims].fill(s);
    }
    for (k, s) in sine_period(spec.motif_len_w).enumerate() {
        w[(start_w + k) * dims..(start_w + k + 1) * dims].fill(s);
    }

    let noise_seed_u: u64 = rng.gen();
    let noise_seed_w: u64 = rng.gen();
    let u = add_noise(&TimeSeries::new(u, dims)?, spec.gamma, noise_seed_u)?;
    let w = add_noise(&TimeSeries::new(w, dims)?, spec.gamma, noise_seed_w)?;
    Ok(SimulatedPair {
        u,
        w,
        ground_truth: GroundTruth {
            interval_u: Interval::from_window(start_u + 1, spec.motif_len_u),
            interval_w: Interval::from_window(start_w + 1, spec.motif_len_w),
        },
    })
}

/// Unit-weight MA: each output sums `order` consecutive innovations.
fn moving_sum(x: &[f64], order: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len() + 1 - order);
    let mut sum: f64 = x[..order].iter().sum();
    out.push(sum);
    for t in order..x.len() {
        sum += x[t] - x[t - order];
        out.push(sum);
    }
    out
}

/// `(1 - gamma) * x + gamma * noise`, with noise uniform over each
/// dimension's `[min, max]` in `x`.
pub fn add_noise(x: &TimeSeries, gamma: f64, seed: u64) -> Result<TimeSeries> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::InvalidGamma(gamma));
    }
    if gamma == 0.0 {
        return Ok(x.clone());
    }
    let dims = x.dims();
    let ranges: Vec<(f64, f64)> = (0..dims)
        .map(|d| {
            x.channel(d)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = x.values().to_vec();
    for (idx, v) in out.iter_mut().enumerate() {
        let (lo, hi) = ranges[idx % dims];
        let noise = if hi > lo { rng.gen_range(lo..=hi) } else { lo };
        *v = (1.0 - gamma) * *v + gamma * noise;
    }
    TimeSeries::new(out, dims)
}
