//! Pointwise Euclidean distance, the full pairwise distance matrix and
//! whole-series z-normalization.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::types::{Grid, TimeSeries};

/// Euclidean distance between two points of equal dimension.
pub fn point_distance(u: &[f64], w: &[f64]) -> Result<f64> {
    if u.len() != w.len() {
        return Err(Error::DimensionMismatch {
            left: u.len(),
            right: w.len(),
        });
    }
    Ok(euclidean(u, w))
}

#[inline]
fn euclidean(u: &[f64], w: &[f64]) -> f64 {
    if u.len() == 1 {
        return (u[0] - w[0]).abs();
    }
    u.iter()
        .zip(w)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// `n x m` matrix of pointwise distances between two series.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix(Grid);

impl DistanceMatrix {
    /// Wraps an arbitrary grid, checking every entry is finite and nonnegative.
    pub fn from_grid(grid: Grid) -> Result<Self> {
        if grid.rows() == 0 || grid.cols() == 0 {
            return Err(Error::EmptySeries);
        }
        for i in 0..grid.rows() {
            for (j, &v) in grid.row(i).iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::NonFiniteValue {
                        step: i + 1,
                        dim: j + 1,
                    });
                }
            }
        }
        Ok(DistanceMatrix(grid))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn m(&self) -> usize {
        self.0.cols()
    }

    pub fn grid(&self) -> &Grid {
        &self.0
    }

    pub fn transpose(&self) -> DistanceMatrix {
        DistanceMatrix(self.0.transpose())
    }
}

impl Deref for DistanceMatrix {
    type Target = Grid;

    fn deref(&self) -> &Grid {
        &self.0
    }
}

pub fn distance_matrix(u: &TimeSeries, w: &TimeSeries) -> Result<DistanceMatrix> {
    if u.dims() != w.dims() {
        return Err(Error::DimensionMismatch {
            left: u.dims(),
            right: w.dims(),
        });
    }
    let (n, m) = (u.len(), w.len());
    let mut grid = Grid::filled(n, m, 0.0);
    for i in 0..n {
        let ui = u.point(i);
        for (j, cell) in grid.row_mut(i).iter_mut().enumerate() {
            *cell = euclidean(ui, w.point(j));
        }
    }
    Ok(DistanceMatrix(grid))
}

/// Per-dimension z-score over the whole series using the population
/// standard deviation. Constant dimensions map to zeros.
pub fn z_normalize(x: &TimeSeries) -> Result<TimeSeries> {
    if x.len() < 2 {
        return Err(Error::SeriesTooShort {
            length: x.len(),
            min: 2,
        });
    }
    let dims = x.dims();
    let len = x.len() as f64;
    let mut out = x.values().to_vec();
    for d in 0..dims {
        let mean = x.channel(d).sum::<f64>() / len;
        let var = x.channel(d).map(|v| (v - mean) * (v - mean)).sum::<f64>() / len;
        let sd = var.sqrt();
        for v in out.iter_mut().skip(d).step_by(dims) {
            *v = if sd > 0.0 { (*v - mean) / sd } else { 0.0 };
        }
    }
    TimeSeries::new(out, dims)
}
