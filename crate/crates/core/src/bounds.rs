//! Lower and upper DTW bounds for every window placement.
//!
//! For windows `omega_u >= omega_w` the lower bound of a placement `(i, j)`
//! sums, over each of the `omega_u` rows, the smallest distance inside the
//! `omega_w` columns the pair spans. Every warping path visits every row at
//! least once and stays in those columns, so this never exceeds the DTW.
//! The upper bound is the cost of one fixed warping path: diagonal for
//! `omega_w - 1` steps, then straight down the last column.
//!
//! Both grids are built in `O(n * m)` total: the row minima with a monotone
//! deque and the window sums from prefix sums.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::metrics::DistanceMatrix;
use crate::types::{Grid, WarpingPath, WindowPair};

/// Absolute slack on every bound-versus-distance comparison. Covers the
/// 1e-9 tie tolerance of the search plus rounding: prefix-sum bounds and the
/// DTW recurrence add in different orders, so a bound mathematically equal
/// to a DTW value can differ from it in the last few bits.
pub const PRUNE_MARGIN: f64 = 2e-9;

/// Sliding-window minimum of `values` over windows of `width`, written to `out`
/// (`values.len() - width + 1` entries).
fn sliding_min(values: &[f64], width: usize, deque: &mut VecDeque<usize>, out: &mut [f64]) {
    deque.clear();
    for (idx, &v) in values.iter().enumerate() {
        while deque.back().is_some_and(|&b| values[b] >= v) {
            deque.pop_back();
        }
        deque.push_back(idx);
        if deque[0] + width <= idx {
            deque.pop_front();
        }
        if idx + 1 >= width {
            out[idx + 1 - width] = values[deque[0]];
        }
    }
}

/// `MinPool[i, j] = min(M[i, j..j+omega_w-1])`, an `n x (m - omega_w + 1)` grid.
pub fn min_pool(m: &DistanceMatrix, omega_w: usize) -> Result<Grid> {
    if omega_w == 0 {
        return Err(Error::ZeroWindow);
    }
    if omega_w > m.m() {
        return Err(Error::WindowTooLarge {
            window: omega_w,
            length: m.m(),
        });
    }
    let cols = m.m() - omega_w + 1;
    let mut out = Grid::filled(m.n(), cols, 0.0);
    let mut deque = VecDeque::with_capacity(omega_w + 1);
    for i in 0..m.n() {
        sliding_min(m.row(i), omega_w, &mut deque, out.row_mut(i));
    }
    Ok(out)
}

/// `MinPath[i, j] = sum(MinPool[i..i+omega_u-1, j])`.
pub fn lower_bound_matrix(min_pool: &Grid, omega_u: usize) -> Result<Grid> {
    if omega_u == 0 {
        return Err(Error::ZeroWindow);
    }
    let (n, cols) = (min_pool.rows(), min_pool.cols());
    if omega_u > n {
        return Err(Error::WindowTooLarge {
            window: omega_u,
            length: n,
        });
    }
    let mut prefix = Grid::filled(n + 1, cols, 0.0);
    for i in 0..n {
        for j in 0..cols {
            let v = prefix.get(i, j) + min_pool.get(i, j);
            prefix.set(i + 1, j, v);
        }
    }
    let rows = n - omega_u + 1;
    let mut out = Grid::filled(rows, cols, 0.0);
    for i in 0..rows {
        let (top, bottom) = (prefix.row(i), prefix.row(i + omega_u));
        for (j, cell) in out.row_mut(i).iter_mut().enumerate() {
            // clamp rounding noise so the bound stays nonnegative
            *cell = (bottom[j] - top[j]).max(0.0);
        }
    }
    Ok(out)
}

/// `MaxPath[i, j]`: cost of the diagonal-then-last-column path. Requires
/// `omega_u >= omega_w`.
pub fn upper_bound_matrix(m: &DistanceMatrix, omega_u: usize, omega_w: usize) -> Result<Grid> {
    if omega_u == 0 || omega_w == 0 {
        return Err(Error::ZeroWindow);
    }
    if omega_u < omega_w {
        return Err(Error::WindowOrderViolated { omega_u, omega_w });
    }
    let (n, mm) = (m.n(), m.m());
    if omega_u > n {
        return Err(Error::WindowTooLarge {
            window: omega_u,
            length: n,
        });
    }
    if omega_w > mm {
        return Err(Error::WindowTooLarge {
            window: omega_w,
            length: mm,
        });
    }
    // diag[i][j] = sum of M[i-k-1][j-k-1] along the diagonal ending above-left of (i, j)
    let mut diag = Grid::filled(n + 1, mm + 1, 0.0);
    // col[i][j] = sum of M[0..i][j]
    let mut col = Grid::filled(n + 1, mm, 0.0);
    for i in 0..n {
        let row = m.row(i);
        for j in 0..mm {
            diag.set(i + 1, j + 1, diag.get(i, j) + row[j]);
            col.set(i + 1, j, col.get(i, j) + row[j]);
        }
    }
    let rows = n - omega_u + 1;
    let cols = mm - omega_w + 1;
    let tail = omega_w - 1;
    let mut out = Grid::filled(rows, cols, 0.0);
    for i in 0..rows {
        for j in 0..cols {
            let diagonal = diag.get(i + tail, j + tail) - diag.get(i, j);
            let column = col.get(i + omega_u, j + tail) - col.get(i + tail, j + tail);
            out.set(i, j, (diagonal + column).max(0.0));
        }
    }
    Ok(out)
}

/// The fixed path behind the upper bound for 1-based placement `(i, j)`.
pub fn upper_bound_path(i: usize, j: usize, omega_u: usize, omega_w: usize) -> Result<WarpingPath> {
    if omega_u < omega_w {
        return Err(Error::WindowOrderViolated { omega_u, omega_w });
    }
    let steps = (0..omega_u)
        .map(|k| {
            if k + 1 < omega_w {
                (i + k, j + k)
            } else {
                (i + k, j + omega_w - 1)
            }
        })
        .collect();
    Ok(WarpingPath { steps })
}

/// Lower/upper bound grids for one query in canonical orientation
/// (`omega_u >= omega_w`).
#[derive(Debug, Clone)]
pub struct BoundMatrices {
    pub min_pool: Grid,
    pub min_path: Grid,
    pub max_path: Grid,
    pub min_of_max_path: f64,
}

impl BoundMatrices {
    pub fn compute(m: &DistanceMatrix, windows: WindowPair) -> Result<Self> {
        let WindowPair { omega_u, omega_w } = windows;
        let max_path = upper_bound_matrix(m, omega_u, omega_w)?;
        let min_pool = min_pool(m, omega_w)?;
        let min_path = lower_bound_matrix(&min_pool, omega_u)?;
        let min_of_max_path = max_path.argmin().map(|(_, _, v)| v).unwrap_or(f64::INFINITY);
        Ok(BoundMatrices {
            min_pool,
            min_path,
            max_path,
            min_of_max_path,
        })
    }

    /// Number of placements.
    pub fn placements(&self) -> usize {
        self.min_path.rows() * self.min_path.cols()
    }
}

/// True when 1-based placement `(i, j)` provably cannot reach the minimum
/// DTW: its lower bound exceeds the smallest upper bound. Ties survive.
pub fn prune_predicate(bm: &BoundMatrices, i: usize, j: usize) -> Result<bool> {
    if i == 0 || j == 0 {
        return Err(Error::IndexOutOfRange {
            row: i,
            col: j,
            rows: bm.min_path.rows(),
            cols: bm.min_path.cols(),
        });
    }
    let lb = bm.min_path.try_get(i - 1, j - 1)?;
    Ok(bm.min_of_max_path + PRUNE_MARGIN < lb)
}
