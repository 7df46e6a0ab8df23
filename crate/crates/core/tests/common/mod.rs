#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subseq_dtw::{TimeSeries, WindowPair};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_series(rng: &mut ChaCha8Rng, len: usize, dims: usize) -> TimeSeries {
    let values = (0..len * dims).map(|_| rng.gen_range(-3.0..3.0)).collect();
    TimeSeries::new(values, dims).unwrap()
}

/// n, m in [20, 120], dims in {1, 3}, windows in [3, 15].
pub fn random_instance(rng: &mut ChaCha8Rng) -> (TimeSeries, TimeSeries, WindowPair) {
    let dims = if rng.gen_bool(0.5) { 1 } else { 3 };
    let n = rng.gen_range(20..=120);
    let m = rng.gen_range(20..=120);
    let u = random_series(rng, n, dims);
    let w = random_series(rng, m, dims);
    let wp = WindowPair::new(rng.gen_range(3..=15), rng.gen_range(3..=15)).unwrap();
    (u, w, wp)
}

/// Series drawn from a handful of levels, so exact ties are common.
pub fn coarse_instance(rng: &mut ChaCha8Rng) -> (TimeSeries, TimeSeries, WindowPair) {
    let n = rng.gen_range(10..=40);
    let m = rng.gen_range(10..=40);
    let level = |rng: &mut ChaCha8Rng| rng.gen_range(0..3) as f64;
    let u = TimeSeries::new((0..n).map(|_| level(rng)).collect(), 1).unwrap();
    let w = TimeSeries::new((0..m).map(|_| level(rng)).collect(), 1).unwrap();
    let wp = WindowPair::new(rng.gen_range(2..=6), rng.gen_range(2..=6)).unwrap();
    (u, w, wp)
}

pub fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-9 * a.abs().max(b.abs())
}
