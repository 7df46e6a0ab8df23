//! Domain types shared by every stage of the search.
//!
//! User-facing start indices (`CandidatePair`, `StartPair`, `SearchResult`,
//! `WarpingPath`) are 1-based. Grid and matrix accessors are 0-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row-major grid of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Grid {
    pub fn filled(rows: usize, cols: usize, value: f64) -> Self {
        Grid {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "grid data has wrong length");
        Grid { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged grid rows");
            data.extend_from_slice(r);
        }
        Grid::from_vec(rows.len(), cols, data)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col]
    }

    pub fn try_get(&self, row: usize, col: usize) -> Result<f64> {
        if row < self.rows && col < self.cols {
            Ok(self.data[row * self.cols + col])
        } else {
            Err(Error::IndexOutOfRange {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.cols + col] = value;
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, row: usize) -> &mut [f64] {
        &mut self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Minimum entry with its (row, col); first occurrence in row-major order.
    pub fn argmin(&self) -> Option<(usize, usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (idx, &v) in self.data.iter().enumerate() {
            if best.is_none_or(|(_, b)| v < b) {
                best = Some((idx, v));
            }
        }
        best.map(|(idx, v)| (idx / self.cols, idx % self.cols, v))
    }

    pub fn transpose(&self) -> Grid {
        let mut out = Grid::filled(self.cols, self.rows, 0.0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }
}

/// A length-by-dims series of finite values.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    length: usize,
    dims: usize,
    values: Vec<f64>,
}

impl TimeSeries {
    /// Builds a series from row-major values (`length * dims` entries).
    pub fn new(values: Vec<f64>, dims: usize) -> Result<Self> {
        if dims == 0 || values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if !values.len().is_multiple_of(dims) {
            return Err(Error::InvalidArgument(format!(
                "{} values do not divide into {dims} dimensions",
                values.len()
            )));
        }
        if let Some(idx) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue {
                step: idx / dims + 1,
                dim: idx % dims + 1,
            });
        }
        Ok(TimeSeries {
            length: values.len() / dims,
            dims,
            values,
        })
    }

    pub fn from_1d(values: &[f64]) -> Result<Self> {
        Self::new(values.to_vec(), 1)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dims = rows.first().map_or(0, Vec::len);
        let mut values = Vec::with_capacity(rows.len() * dims);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dims {
                return Err(Error::RaggedRows {
                    line: i + 1,
                    expected: dims,
                    found: r.len(),
                });
            }
            values.extend_from_slice(r);
        }
        Self::new(values, dims)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    #[inline]
    pub fn dims(&self) -> usize {
        self.dims
    }

    /// The point at 0-based time step `t`.
    #[inline]
    pub fn point(&self, t: usize) -> &[f64] {
        &self.values[t * self.dims..(t + 1) * self.dims]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.dims)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Values of one dimension across all time steps.
    pub fn channel(&self, dim: usize) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().skip(dim).step_by(self.dims).copied()
    }

    /// Contiguous slice of time steps `[start, end)` (0-based) as a new series.
    pub fn slice(&self, start: usize, end: usize) -> Result<Self> {
        if start >= end || end > self.length {
            return Err(Error::IntervalOutOfBounds {
                start: start + 1,
                end,
            });
        }
        Self::new(
            self.values[start * self.dims..end * self.dims].to_vec(),
            self.dims,
        )
    }
}

/// Window lengths for the two series of one query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowPair {
    pub omega_u: usize,
    pub omega_w: usize,
}

impl WindowPair {
    pub fn new(omega_u: usize, omega_w: usize) -> Result<Self> {
        if omega_u == 0 || omega_w == 0 {
            return Err(Error::ZeroWindow);
        }
        Ok(WindowPair { omega_u, omega_w })
    }

    pub fn swapped(self) -> Self {
        WindowPair {
            omega_u: self.omega_w,
            omega_w: self.omega_u,
        }
    }
}

/// A validated search problem: two series of equal dimension and windows
/// that fit inside them.
#[derive(Debug, Clone, Copy)]
pub struct Query<'a> {
    pub u: &'a TimeSeries,
    pub w: &'a TimeSeries,
    pub windows: WindowPair,
}

impl Query<'_> {
    /// Number of placements `(n - omega_u + 1) * (m - omega_w + 1)`.
    pub fn placements(&self) -> usize {
        (self.u.len() - self.windows.omega_u + 1) * (self.w.len() - self.windows.omega_w + 1)
    }
}

pub fn validate_query<'a>(
    u: &'a TimeSeries,
    w: &'a TimeSeries,
    windows: WindowPair,
) -> Result<Query<'a>> {
    if u.dims() != w.dims() {
        return Err(Error::DimensionMismatch {
            left: u.dims(),
            right: w.dims(),
        });
    }
    if windows.omega_u == 0 || windows.omega_w == 0 {
        return Err(Error::ZeroWindow);
    }
    if windows.omega_u > u.len() {
        return Err(Error::WindowTooLarge {
            window: windows.omega_u,
            length: u.len(),
        });
    }
    if windows.omega_w > w.len() {
        return Err(Error::WindowTooLarge {
            window: windows.omega_w,
            length: w.len(),
        });
    }
    Ok(Query { u, w, windows })
}

/// Ordered alignment of 1-based index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WarpingPath {
    pub steps: Vec<(usize, usize)>,
}

impl WarpingPath {
    /// Checks the boundary and step conditions against `U[a,b]` and `W[c,d]`.
    pub fn is_valid_between(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        let (Some(&first), Some(&last)) = (self.steps.first(), self.steps.last()) else {
            return false;
        };
        if first != (a, c) || last != (b, d) {
            return false;
        }
        self.steps.windows(2).all(|s| {
            let di = s[1].0 as isize - s[0].0 as isize;
            let dj = s[1].1 as isize - s[0].1 as isize;
            matches!((di, dj), (0, 1) | (1, 0) | (1, 1))
        })
    }

    /// Sum of `m[i-1][j-1]` over every step.
    pub fn cost(&self, m: &Grid) -> f64 {
        self.steps.iter().map(|&(i, j)| m.get(i - 1, j - 1)).sum()
    }
}

/// A placement that survived pruning, with its lower bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidatePair {
    pub a: usize,
    pub b: usize,
    pub lower_bound: f64,
}

/// A 1-based start-index pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StartPair {
    pub a: usize,
    pub b: usize,
}

impl StartPair {
    pub fn swapped(self) -> Self {
        StartPair {
            a: self.b,
            b: self.a,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub pairs_total: usize,
    pub pairs_after_prune: usize,
    pub dtw_evaluations: usize,
    pub runtime_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub shortest_dist: f64,
    pub solutions: Vec<StartPair>,
    pub swapped: bool,
    pub window_a: usize,
    pub window_b: usize,
    pub normalized: bool,
    pub band_radius: Option<usize>,
    pub stats: SearchStats,
}

/// Inclusive 1-based interval of time steps, serialized as `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if start == 0 || end < start {
            return Err(Error::IntervalOutOfBounds { start, end });
        }
        Ok(Interval { start, end })
    }

    /// The interval covered by a window of `len` steps starting at `start`.
    pub fn from_window(start: usize, len: usize) -> Self {
        Interval {
            start,
            end: start + len - 1,
        }
    }

    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end < self.start
    }

    /// Number of time steps shared with `other`.
    pub fn overlap(&self, other: &Interval) -> usize {
        let lo = self.start.max(other.start);
        let hi = self.end.min(other.end);
        if hi >= lo {
            hi - lo + 1
        } else {
            0
        }
    }
}

impl From<(usize, usize)> for Interval {
    fn from((start, end): (usize, usize)) -> Self {
        Interval { start, end }
    }
}

impl From<Interval> for (usize, usize) {
    fn from(i: Interval) -> Self {
        (i.start, i.end)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(len: usize, dims: usize) -> TimeSeries {
        TimeSeries::new((0..len * dims).map(|v| v as f64).collect(), dims).unwrap()
    }

    #[test]
    fn validate_accepts_fitting_windows() {
        let u = series(10, 2);
        let w = series(8, 2);
        let q = validate_query(&u, &w, WindowPair::new(4, 3).unwrap()).unwrap();
        assert_eq!(q.placements(), 7 * 6);
    }

    #[test]
    fn validate_rejects_dims_mismatch() {
        let u = series(10, 2);
        let w = series(8, 3);
        let err = validate_query(&u, &w, WindowPair::new(4, 3).unwrap()).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn validate_rejects_oversized_window() {
        let u = series(10, 2);
        let w = series(8, 2);
        let err = validate_query(&u, &w, WindowPair::new(11, 3).unwrap()).unwrap_err();
        assert!(matches!(err, Error::WindowTooLarge { window: 11, length: 10 }));
    }

    #[test]
    fn construction_rejects_invalid_fields() {
        assert!(matches!(
            TimeSeries::new(vec![1.0, f64::NAN], 1),
            Err(Error::NonFiniteValue { step: 2, dim: 1 })
        ));
        assert!(matches!(TimeSeries::new(vec![], 1), Err(Error::EmptySeries)));
        assert!(matches!(TimeSeries::new(vec![1.0], 0), Err(Error::EmptySeries)));
        assert!(TimeSeries::new(vec![1.0, 2.0, 3.0], 2).is_err());
        assert!(matches!(WindowPair::new(0, 3), Err(Error::ZeroWindow)));
    }

    #[test]
    fn warping_path_validity() {
        let p = WarpingPath {
            steps: vec![(1, 1), (2, 2), (3, 2)],
        };
        assert!(p.is_valid_between(1, 3, 1, 2));
        assert!(!p.is_valid_between(1, 3, 1, 3));
        let jump = WarpingPath {
            steps: vec![(1, 1), (3, 2)],
        };
        assert!(!jump.is_valid_between(1, 3, 1, 2));
    }

    #[test]
    fn grid_argmin_takes_first_minimum() {
        let g = Grid::from_rows(&[vec![3.0, 1.0], vec![1.0, 2.0]]);
        assert_eq!(g.argmin(), Some((0, 1, 1.0)));
        assert!(g.try_get(2, 0).is_err());
    }
}
