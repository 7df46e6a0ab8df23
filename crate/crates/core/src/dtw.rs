//! Exact windowed DTW over a precomputed distance matrix, a slope-adjusted
//! Sakoe-Chiba banded variant, and an exhaustive path-enumeration oracle.
//!
//! Every function reads the subsequence pair `U[a, a+omega_u-1]` and
//! `W[b, b+omega_w-1]` straight out of the distance matrix, so a DTW
//! evaluation costs `omega_u * omega_w` cell updates and no point distances.

use crate::error::{Error, Result};
use crate::metrics::DistanceMatrix;
use crate::types::{Grid, StartPair, WarpingPath};

/// Placements in flight at once in [`DtwScratch::exact_stream`] and
/// [`DtwScratch::exact_strip`].
pub const LANES: usize = 8;

/// Largest window accepted by [`dtw_path_oracle`].
pub const ORACLE_WINDOW_LIMIT: usize = 8;

/// Which DTW variant a search evaluates at each surviving placement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DtwMode {
    #[default]
    Exact,
    Banded { radius: usize },
}

impl DtwMode {
    pub fn radius(self) -> Option<usize> {
        match self {
            DtwMode::Exact => None,
            DtwMode::Banded { radius } => Some(radius),
        }
    }
}

/// Slope-adjusted band radius used when the caller asks for a band without
/// choosing one: `max(ceil(0.1 * max(wu, ww)), |wu - ww|, 1)`.
pub fn default_band_radius(omega_u: usize, omega_w: usize) -> usize {
    let tenth = omega_u.max(omega_w).div_ceil(10);
    tenth.max(omega_u.abs_diff(omega_w)).max(1)
}

/// Whether the 1-based window cell `(p, q)` lies inside the band
/// `|q - 1 - (p - 1) * (ww - 1) / max(wu - 1, 1)| <= radius`.
///
/// Evaluated in integers so band membership is exact.
pub fn band_contains(p: usize, q: usize, omega_u: usize, omega_w: usize, radius: usize) -> bool {
    let denom = omega_u.saturating_sub(1).max(1) as i128;
    let lhs = (q as i128 - 1) * denom - (p as i128 - 1) * (omega_w as i128 - 1);
    lhs.abs() <= radius as i128 * denom
}

/// Inclusive 0-based column range of band row `row` (0-based), or `None`
/// when the row has no cell inside the window.
fn band_row_range(row: usize, omega_u: usize, omega_w: usize, radius: usize) -> Option<(usize, usize)> {
    let denom = omega_u.saturating_sub(1).max(1) as i128;
    let center = row as i128 * (omega_w as i128 - 1);
    let r = radius as i128 * denom;
    // smallest q0 with q0*denom >= center - r, largest with q0*denom <= center + r
    let lo = div_ceil(center - r, denom).max(0);
    let hi = div_floor(center + r, denom).min(omega_w as i128 - 1);
    (lo <= hi).then_some((lo as usize, hi as usize))
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

fn check_fits(m: &DistanceMatrix, omega_u: usize, omega_w: usize, start: StartPair) -> Result<(usize, usize)> {
    if omega_u == 0 || omega_w == 0 {
        return Err(Error::ZeroWindow);
    }
    if start.a == 0 || start.b == 0 || start.a + omega_u - 1 > m.n() || start.b + omega_w - 1 > m.m() {
        return Err(Error::IndexOutOfRange {
            row: start.a + omega_u - 1,
            col: start.b + omega_w - 1,
            rows: m.n(),
            cols: m.m(),
        });
    }
    Ok((start.a - 1, start.b - 1))
}

/// Min-pool values (the smallest distance in matrix row `i` over columns
/// `j..j+omega_w`) stored by column, so one placement's row minima are
/// contiguous.
#[derive(Debug, Clone)]
pub struct RowMinima {
    by_col: Grid,
}

impl RowMinima {
    pub fn new(min_pool: &Grid) -> Self {
        RowMinima {
            by_col: min_pool.transpose(),
        }
    }

    /// Asks the cache for what [`RowMinima::tails`] will read.
    pub(crate) fn prefetch(&self, row0: usize, col0: usize, len: usize) {
        prefetch(self.window(row0, col0, len));
    }

    /// Row minima of rows `row0..row0 + len` for the window at `col0`.
    fn window(&self, row0: usize, col0: usize, len: usize) -> &[f64] {
        &self.by_col.row(col0)[row0..row0 + len]
    }

    /// `tail[r]` = sum of the row minima below row `r` of the window.
    fn tails(&self, row0: usize, col0: usize, len: usize, mut put: impl FnMut(usize, f64)) {
        let mut acc = 0.0;
        for (r, &v) in self.window(row0, col0, len).iter().enumerate().rev() {
            put(r, acc);
            acc += v;
        }
    }
}

/// When to give up on a DTW evaluation: once no completion of the rows
/// computed so far can come in at or below `value`. With `row_minima` the
/// rows not yet computed also count, each at least its row minimum.
#[derive(Debug, Clone, Copy)]
pub struct Cutoff<'a> {
    pub value: f64,
    pub row_minima: Option<&'a RowMinima>,
}

impl Cutoff<'_> {
    pub const NONE: Cutoff<'static> = Cutoff {
        value: f64::INFINITY,
        row_minima: None,
    };

    pub fn at(value: f64) -> Self {
        Cutoff {
            value,
            row_minima: None,
        }
    }
}

/// `bound > cutoff`, with a relative margin so summation-order rounding in
/// `bound` never abandons an evaluation that would land on `cutoff`.
fn exceeds(bound: f64, cutoff: f64) -> bool {
    bound * (1.0 - 1e-12) > cutoff
}

/// Supplies placements to [`DtwScratch::exact_stream`] and collects results.
pub trait LaneFeed {
    /// The next placement as `(tag, row0, col0)`, 0-based, or `None` when
    /// there is nothing more to start.
    fn next(&mut self) -> Option<(usize, usize, usize)>;
    /// Current abandonment threshold; may only decrease over the stream.
    fn cutoff(&self) -> f64;
    fn finish(&mut self, tag: usize, value: f64);
}

/// Rows ahead of the current one that [`DtwScratch::exact_stream`] asks
/// the cache to load; its lanes jump around the matrix.
const PREFETCH_ROWS: usize = 3;

#[inline(always)]
pub(crate) fn prefetch(span: &[f64]) {
    #[cfg(target_arch = "x86_64")]
    for chunk in span.chunks(8) {
        use std::arch::x86_64::{_mm_prefetch, _MM_HINT_T0};
        // SAFETY: a prefetch is only a hint and never faults; sse is part
        // of the x86_64 baseline
        unsafe { _mm_prefetch::<_MM_HINT_T0>(chunk.as_ptr().cast()) };
    }
    #[cfg(not(target_arch = "x86_64"))]
    let _ = span;
}

/// Minimum of two values known not to be NaN; compiles to a bare `min`
/// instruction where `f64::min` adds NaN handling to the hot loop.
#[inline(always)]
fn fmin(a: f64, b: f64) -> f64 {
    if a < b {
        a
    } else {
        b
    }
}

/// Rolling-row buffers reused across many DTW evaluations.
#[derive(Debug, Default, Clone)]
pub struct DtwScratch {
    prev: Vec<f64>,
    cur: Vec<f64>,
    lanes_prev: Vec<[f64; LANES]>,
    lanes_cur: Vec<[f64; LANES]>,
    tail: Vec<f64>,
    lanes_tail: Vec<[f64; LANES]>,
}

impl DtwScratch {
    pub fn new() -> Self {
        Self::default()
    }

    /// Exact DTW at 0-based offsets `(row0, col0)`. The caller guarantees
    /// the window fits.
    pub fn exact(&mut self, m: &DistanceMatrix, omega_u: usize, omega_w: usize, row0: usize, col0: usize) -> f64 {
        self.exact_within(m, omega_u, omega_w, row0, col0, Cutoff::NONE)
    }

    /// As [`exact`](Self::exact), but returns infinity as soon as the
    /// result is known to exceed the cutoff. Any result at or below the
    /// cutoff is exact.
    pub fn exact_within(
        &mut self,
        m: &DistanceMatrix,
        omega_u: usize,
        omega_w: usize,
        row0: usize,
        col0: usize,
        cutoff: Cutoff,
    ) -> f64 {
        self.fill_tail(omega_u, row0, col0, cutoff);
        let limit = cutoff.value;
        let cols = m.m();
        let data = m.as_slice();
        self.prev.clear();
        self.prev.resize(omega_w, 0.0);
        self.cur.clear();
        self.cur.resize(omega_w, 0.0);

        let first = &data[row0 * cols + col0..][..omega_w];
        let mut acc = 0.0;
        for (p, &d) in self.prev.iter_mut().zip(first) {
            acc += d;
            *p = acc;
        }
        if exceeds(self.prev[0] + self.tail[0], limit) {
            return f64::INFINITY;
        }
        for r in 1..omega_u {
            let row = &data[(row0 + r) * cols + col0..][..omega_w];
            let prev = &self.prev[..omega_w];
            let cur = &mut self.cur[..omega_w];
            let mut left = prev[0] + row[0];
            let mut row_min = left;
            cur[0] = left;
            for q in 1..omega_w {
                let up = fmin(prev[q], prev[q - 1]);
                left = row[q] + fmin(up, left);
                row_min = fmin(row_min, left);
                cur[q] = left;
            }
            std::mem::swap(&mut self.prev, &mut self.cur);
            if exceeds(row_min + self.tail[r], limit) {
                return f64::INFINITY;
            }
        }
        self.prev[omega_w - 1]
    }

    /// `tail[r]`: sum of the row minima below row `r`, or zeros.
    fn fill_tail(&mut self, omega_u: usize, row0: usize, col0: usize, cutoff: Cutoff) {
        self.tail.clear();
        self.tail.resize(omega_u, 0.0);
        if let Some(rm) = cutoff.row_minima {
            let tail = &mut self.tail;
            rm.tails(row0, col0, omega_u, |r, t| tail[r] = t);
        }
    }

    /// Exact DTW for the `LANES` placements `(row0, col0 + k)`, which read
    /// overlapping stretches of each matrix row.
    pub fn exact_strip(
        &mut self,
        m: &DistanceMatrix,
        omega_u: usize,
        omega_w: usize,
        row0: usize,
        col0: usize,
    ) -> [f64; LANES] {
        let cols = m.m();
        let data = m.as_slice();
        let span = omega_w + LANES - 1;
        self.lanes_prev.clear();
        self.lanes_prev.resize(omega_w, [0.0; LANES]);
        self.lanes_cur.clear();
        self.lanes_cur.resize(omega_w, [0.0; LANES]);
        let load = |row: &[f64], q: usize| -> [f64; LANES] { row[q..q + LANES].try_into().expect("LANES wide") };

        let first = &data[row0 * cols + col0..][..span];
        let mut acc = [0.0; LANES];
        for q in 0..omega_w {
            let d = load(first, q);
            for k in 0..LANES {
                acc[k] += d[k];
            }
            self.lanes_prev[q] = acc;
        }
        for r in 1..omega_u {
            let row = &data[(row0 + r) * cols + col0..][..span];
            let prev = &self.lanes_prev[..omega_w];
            let cur = &mut self.lanes_cur[..omega_w];
            let d = load(row, 0);
            let mut left = [0.0; LANES];
            for k in 0..LANES {
                left[k] = prev[0][k] + d[k];
            }
            cur[0] = left;
            for q in 1..omega_w {
                let d = load(row, q);
                for k in 0..LANES {
                    left[k] = d[k] + fmin(fmin(prev[q][k], prev[q - 1][k]), left[k]);
                }
                cur[q] = left;
            }
            std::mem::swap(&mut self.lanes_prev, &mut self.lanes_cur);
        }
        self.lanes_prev[omega_w - 1]
    }

    /// Banded counterpart of [`exact_strip`](Self::exact_strip); lanes
    /// whose band disconnects the corners come back as infinity.
    #[allow(clippy::too_many_arguments)]
    pub fn banded_strip(
        &mut self,
        m: &DistanceMatrix,
        omega_u: usize,
        omega_w: usize,
        row0: usize,
        col0: usize,
        radius: usize,
    ) -> [f64; LANES] {
        const INF: [f64; LANES] = [f64::INFINITY; LANES];
        let cols = m.m();
        let data = m.as_slice();
        let span = omega_w + LANES - 1;
        self.lanes_prev.clear();
        self.lanes_prev.resize(omega_w, INF);
        self.lanes_cur.clear();
        self.lanes_cur.resize(omega_w, INF);
        let load = |row: &[f64], q: usize| -> [f64; LANES] { row[q..q + LANES].try_into().expect("LANES wide") };

        let Some((0, hi0)) = band_row_range(0, omega_u, omega_w, radius) else {
            return INF;
        };
        let first = &data[row0 * cols + col0..][..span];
        let mut acc = [0.0; LANES];
        for q in 0..=hi0 {
            let d = load(first, q);
            for k in 0..LANES {
                acc[k] += d[k];
            }
            self.lanes_prev[q] = acc;
        }
        let mut stale: Option<(usize, usize)> = None;
        let mut prev_range = (0, hi0);
        for r in 1..omega_u {
            if let Some((lo, hi)) = stale {
                self.lanes_cur[lo..=hi].fill(INF);
            }
            let Some((lo, hi)) = band_row_range(r, omega_u, omega_w, radius) else {
                return INF;
            };
            let row = &data[(row0 + r) * cols + col0..][..span];
            let prev = &self.lanes_prev[..omega_w];
            let cur = &mut self.lanes_cur[..omega_w];
            let mut left = INF;
            for q in lo..=hi {
                let d = load(row, q);
                let diag = if q > 0 { prev[q - 1] } else { INF };
                for k in 0..LANES {
                    left[k] = d[k] + fmin(fmin(prev[q][k], diag[k]), left[k]);
                }
                cur[q] = left;
            }
            stale = Some(prev_range);
            prev_range = (lo, hi);
            std::mem::swap(&mut self.lanes_prev, &mut self.lanes_cur);
        }
        self.lanes_prev[omega_w - 1]
    }

    /// Exact DTW over a stream of placements, `LANES` in flight at a time.
    ///
    /// Each lane walks its own placement row by row; when a placement
    /// completes, or its partial cost plus the row minima still ahead
    /// exceeds `feed.cutoff()`, the lane reports it and takes the next one.
    /// Abandoned placements report infinity. Any reported value at or below
    /// the cutoff in force when it was reported is exact.
    pub fn exact_stream<F: LaneFeed>(
        &mut self,
        m: &DistanceMatrix,
        omega_u: usize,
        omega_w: usize,
        row_minima: Option<&RowMinima>,
        feed: &mut F,
    ) {
        let cols = m.m();
        let data = m.as_slice();
        self.lanes_prev.clear();
        self.lanes_prev.resize(omega_w, [0.0; LANES]);
        self.lanes_cur.clear();
        self.lanes_cur.resize(omega_w, [0.0; LANES]);
        self.lanes_tail.clear();
        self.lanes_tail.resize(omega_u, [0.0; LANES]);

        // (tag, row0, col0, next row) per lane; idle lanes replay a live
        // lane's placement and their output is dropped
        let mut slots: [Option<(usize, usize, usize, usize)>; LANES] = [None; LANES];
        loop {
            for k in 0..LANES {
                while slots[k].is_none() {
                    let Some((tag, r0, c0)) = feed.next() else { break };
                    for r in 1..omega_u.min(PREFETCH_ROWS + 1) {
                        prefetch(&data[(r0 + r) * cols + c0..][..omega_w]);
                    }
                    let first = &data[r0 * cols + c0..][..omega_w];
                    let mut acc = 0.0;
                    for (q, &d) in first.iter().enumerate() {
                        acc += d;
                        self.lanes_prev[q][k] = acc;
                    }
                    match row_minima {
                        Some(rm) => {
                            let tail = &mut self.lanes_tail;
                            rm.tails(r0, c0, omega_u, |r, t| tail[r][k] = t);
                        }
                        None => self.lanes_tail.iter_mut().for_each(|t| t[k] = 0.0),
                    }
                    if omega_u == 1 {
                        feed.finish(tag, acc);
                    } else if exceeds(self.lanes_prev[0][k] + self.lanes_tail[0][k], feed.cutoff()) {
                        feed.finish(tag, f64::INFINITY);
                    } else {
                        slots[k] = Some((tag, r0, c0, 1));
                    }
                }
            }
            let Some(live) = slots.iter().flatten().next().copied() else {
                return;
            };
            let rows: [&[f64]; LANES] = std::array::from_fn(|k| {
                let (_, r0, c0, r) = slots[k].unwrap_or(live);
                if r + PREFETCH_ROWS < omega_u {
                    prefetch(&data[(r0 + r + PREFETCH_ROWS) * cols + c0..][..omega_w]);
                }
                &data[(r0 + r) * cols + c0..][..omega_w]
            });
            let prev = &self.lanes_prev[..omega_w];
            let cur = &mut self.lanes_cur[..omega_w];
            let mut left = [0.0; LANES];
            for k in 0..LANES {
                left[k] = prev[0][k] + rows[k][0];
            }
            cur[0] = left;
            for q in 1..omega_w {
                for k in 0..LANES {
                    left[k] = rows[k][q] + fmin(fmin(prev[q][k], prev[q - 1][k]), left[k]);
                }
                cur[q] = left;
            }
            let row_min = cur.iter().fold([f64::INFINITY; LANES], |mut acc, c| {
                for k in 0..LANES {
                    acc[k] = fmin(acc[k], c[k]);
                }
                acc
            });
            std::mem::swap(&mut self.lanes_prev, &mut self.lanes_cur);
            let cutoff = feed.cutoff();
            for k in 0..LANES {
                let Some((tag, r0, c0, r)) = slots[k] else { continue };
                if r + 1 == omega_u {
                    feed.finish(tag, self.lanes_prev[omega_w - 1][k]);
                    slots[k] = None;
                } else if exceeds(row_min[k] + self.lanes_tail[r][k], cutoff) {
                    feed.finish(tag, f64::INFINITY);
                    slots[k] = None;
                } else {
                    slots[k] = Some((tag, r0, c0, r + 1));
                }
            }
        }
    }

    /// Banded DTW at 0-based offsets; `f64::INFINITY` when the band
    /// disconnects the corners.
    pub fn banded(
        &mut self,
        m: &DistanceMatrix,
        omega_u: usize,
        omega_w: usize,
        row0: usize,
        col0: usize,
        radius: usize,
    ) -> f64 {
        self.banded_within(m, omega_u, omega_w, row0, col0, radius, Cutoff::NONE)
    }

    /// Banded DTW abandoned early like [`exact_within`](Self::exact_within).
    #[allow(clippy::too_many_arguments)]
    pub fn banded_within(
        &mut self,
        m: &DistanceMatrix,
        omega_u: usize,
        omega_w: usize,
        row0: usize,
        col0: usize,
        radius: usize,
        cutoff: Cutoff,
    ) -> f64 {
        const INF: f64 = f64::INFINITY;
        self.fill_tail(omega_u, row0, col0, cutoff);
        let limit = cutoff.value;
        let cols = m.m();
        let data = m.as_slice();
        self.prev.clear();
        self.prev.resize(omega_w, INF);
        self.cur.clear();
        self.cur.resize(omega_w, INF);

        let Some((lo0, hi0)) = band_row_range(0, omega_u, omega_w, radius) else {
            return INF;
        };
        if lo0 != 0 {
            return INF;
        }
        let first = &data[row0 * cols + col0..][..omega_w];
        let mut acc = 0.0;
        for q in lo0..=hi0 {
            acc += first[q];
            self.prev[q] = acc;
        }
        // columns written into `cur` two rows ago, reset before reuse
        let mut stale: Option<(usize, usize)> = None;
        let mut prev_range = (lo0, hi0);
        for r in 1..omega_u {
            if let Some((lo, hi)) = stale {
                self.cur[lo..=hi].fill(INF);
            }
            let Some((lo, hi)) = band_row_range(r, omega_u, omega_w, radius) else {
                return INF;
            };
            let row = &data[(row0 + r) * cols + col0..][..omega_w];
            let mut left = INF;
            let mut row_min = INF;
            for q in lo..=hi {
                let up = if q > 0 {
                    fmin(self.prev[q], self.prev[q - 1])
                } else {
                    self.prev[q]
                };
                left = row[q] + fmin(up, left);
                row_min = fmin(row_min, left);
                self.cur[q] = left;
            }
            stale = Some(prev_range);
            prev_range = (lo, hi);
            std::mem::swap(&mut self.prev, &mut self.cur);
            if exceeds(row_min + self.tail[r], limit) {
                return INF;
            }
        }
        self.prev[omega_w - 1]
    }

    pub fn evaluate(
        &mut self,
        mode: DtwMode,
        m: &DistanceMatrix,
        omega_u: usize,
        omega_w: usize,
        row0: usize,
        col0: usize,
    ) -> f64 {
        self.evaluate_within(mode, m, omega_u, omega_w, row0, col0, Cutoff::NONE)
    }

    /// Dispatches to [`exact_within`](Self::exact_within) or
    /// [`banded_within`](Self::banded_within).
    #[allow(clippy::too_many_arguments)]
    pub fn evaluate_within(
        &mut self,
        mode: DtwMode,
        m: &DistanceMatrix,
        omega_u: usize,
        omega_w: usize,
        row0: usize,
        col0: usize,
        cutoff: Cutoff,
    ) -> f64 {
        match mode {
            DtwMode::Exact => self.exact_within(m, omega_u, omega_w, row0, col0, cutoff),
            DtwMode::Banded { radius } => self.banded_within(m, omega_u, omega_w, row0, col0, radius, cutoff),
        }
    }
}

/// DTW between `U[a, a+omega_u-1]` and `W[b, b+omega_w-1]`, with 1-based
/// `start = (a, b)`.
pub fn dtw_windowed(m: &DistanceMatrix, omega_u: usize, omega_w: usize, start: StartPair) -> Result<f64> {
    let (r0, c0) = check_fits(m, omega_u, omega_w, start)?;
    Ok(DtwScratch::new().exact(m, omega_u, omega_w, r0, c0))
}

/// DTW restricted to the slope-adjusted Sakoe-Chiba band of `radius`.
pub fn dtw_banded(
    m: &DistanceMatrix,
    omega_u: usize,
    omega_w: usize,
    start: StartPair,
    radius: usize,
) -> Result<f64> {
    if radius == 0 {
        return Err(Error::InvalidRadius);
    }
    let (r0, c0) = check_fits(m, omega_u, omega_w, start)?;
    let d = DtwScratch::new().banded(m, omega_u, omega_w, r0, c0, radius);
    if d.is_finite() {
        Ok(d)
    } else {
        Err(Error::BandInfeasible {
            omega_u,
            omega_w,
            radius,
        })
    }
}

/// The full `omega_u x omega_w` accumulated-distance grid for one placement.
#[derive(Debug, Clone, PartialEq)]
pub struct AccumulatedDistance {
    pub grid: Grid,
    pub origin: StartPair,
}

impl AccumulatedDistance {
    pub fn compute(m: &DistanceMatrix, omega_u: usize, omega_w: usize, start: StartPair) -> Result<Self> {
        let (r0, c0) = check_fits(m, omega_u, omega_w, start)?;
        let mut ad = Grid::filled(omega_u, omega_w, 0.0);
        let mut acc = 0.0;
        for i in 0..omega_u {
            acc += m.get(r0 + i, c0);
            ad.set(i, 0, acc);
        }
        acc = 0.0;
        for j in 0..omega_w {
            acc += m.get(r0, c0 + j);
            ad.set(0, j, acc);
        }
        for i in 1..omega_u {
            for j in 1..omega_w {
                let best = ad.get(i - 1, j).min(ad.get(i - 1, j - 1)).min(ad.get(i, j - 1));
                ad.set(i, j, m.get(r0 + i, c0 + j) + best);
            }
        }
        Ok(AccumulatedDistance { grid: ad, origin: start })
    }

    pub fn distance(&self) -> f64 {
        self.grid.get(self.grid.rows() - 1, self.grid.cols() - 1)
    }

    /// One optimal warping path, recovered by backtracking from the far corner.
    pub fn path(&self) -> WarpingPath {
        let (mut i, mut j) = (self.grid.rows() - 1, self.grid.cols() - 1);
        let mut steps = vec![(i, j)];
        while i > 0 || j > 0 {
            if i == 0 {
                j -= 1;
            } else if j == 0 {
                i -= 1;
            } else {
                let diag = self.grid.get(i - 1, j - 1);
                let up = self.grid.get(i - 1, j);
                let left = self.grid.get(i, j - 1);
                if diag <= up && diag <= left {
                    i -= 1;
                    j -= 1;
                } else if up <= left {
                    i -= 1;
                } else {
                    j -= 1;
                }
            }
            steps.push((i, j));
        }
        steps.reverse();
        WarpingPath {
            steps: steps
                .into_iter()
                .map(|(i, j)| (self.origin.a + i, self.origin.b + j))
                .collect(),
        }
    }
}

/// Minimum path cost by enumerating every warping path. Only for tiny
/// windows; used to check the recurrence.
pub fn dtw_path_oracle(
    m: &DistanceMatrix,
    omega_u: usize,
    omega_w: usize,
    start: StartPair,
) -> Result<(f64, WarpingPath)> {
    if omega_u > ORACLE_WINDOW_LIMIT || omega_w > ORACLE_WINDOW_LIMIT {
        return Err(Error::InstanceTooLarge {
            omega_u,
            omega_w,
            limit: ORACLE_WINDOW_LIMIT,
        });
    }
    let (r0, c0) = check_fits(m, omega_u, omega_w, start)?;
    let mut best = (f64::INFINITY, Vec::new());
    let mut stack = vec![(0usize, 0usize)];
    enumerate_paths(m, r0, c0, omega_u, omega_w, &mut stack, &mut best);
    let steps = best
        .1
        .into_iter()
        .map(|(i, j)| (start.a + i, start.b + j))
        .collect();
    Ok((best.0, WarpingPath { steps }))
}

fn enumerate_paths(
    m: &DistanceMatrix,
    r0: usize,
    c0: usize,
    omega_u: usize,
    omega_w: usize,
    path: &mut Vec<(usize, usize)>,
    best: &mut (f64, Vec<(usize, usize)>),
) {
    let &(i, j) = path.last().expect("path starts nonempty");
    if i == omega_u - 1 && j == omega_w - 1 {
        let cost: f64 = path.iter().map(|&(p, q)| m.get(r0 + p, c0 + q)).sum();
        if cost < best.0 {
            *best = (cost, path.clone());
        }
        return;
    }
    for (di, dj) in [(1, 1), (1, 0), (0, 1)] {
        let (ni, nj) = (i + di, j + dj);
        if ni < omega_u && nj < omega_w {
            path.push((ni, nj));
            enumerate_paths(m, r0, c0, omega_u, omega_w, path, best);
            path.pop();
        }
    }
}

/// Minimum over warping paths that stay inside the band, by enumeration.
/// Test oracle for the banded recurrence.
#[doc(hidden)]
pub fn banded_path_oracle(
    m: &DistanceMatrix,
    omega_u: usize,
    omega_w: usize,
    start: StartPair,
    radius: usize,
) -> Result<f64> {
    let (r0, c0) = check_fits(m, omega_u, omega_w, start)?;
    let mut best = f64::INFINITY;
    let mut stack = vec![(0usize, 0usize, m.get(r0, c0))];
    while let Some((i, j, cost)) = stack.pop() {
        if !band_contains(i + 1, j + 1, omega_u, omega_w, radius) {
            continue;
        }
        if i == omega_u - 1 && j == omega_w - 1 {
            best = best.min(cost);
            continue;
        }
        for (di, dj) in [(1, 1), (1, 0), (0, 1)] {
            let (ni, nj) = (i + di, j + dj);
            if ni < omega_u && nj < omega_w {
                stack.push((ni, nj, cost + m.get(r0 + ni, c0 + nj)));
            }
        }
    }
    Ok(best)
}
