//! Exact search for the most similar pair of subsequences between two
//! multidimensional time series, where the two windows may differ in length.
//!
//! Every window placement gets a cheap lower bound (row-wise minimum over
//! the shorter window's columns) and upper bound (cost of one fixed warping
//! path). Placements whose lower bound exceeds the smallest upper bound are
//! dropped, the rest are evaluated with full DTW in ascending lower-bound
//! order, and evaluation stops as soon as the next lower bound exceeds the
//! best distance found. The answer, including every tied optimum, is the
//! same as evaluating DTW at every placement.
//!
//! ```
//! use subseq_dtw::{infer_most_similar, SearchOptions, TimeSeries, WindowPair};
//!
//! let u = TimeSeries::from_1d(&[0.0, 1.0, 3.0]).unwrap();
//! let w = TimeSeries::from_1d(&[0.0, 2.0]).unwrap();
//! let r = infer_most_similar(&u, &w, WindowPair::new(2, 2).unwrap(), &SearchOptions::default()).unwrap();
//! assert_eq!(r.shortest_dist, 1.0);
//! assert_eq!((r.solutions[0].a, r.solutions[0].b), (1, 1));
//! ```

pub mod bounds;
pub mod cli;
pub mod dtw;
pub mod error;
pub mod eval;
pub mod io;
pub mod metrics;
pub mod search;
pub mod simgen;
pub mod types;

pub use error::{Error, Result};
pub use metrics::{distance_matrix, z_normalize, DistanceMatrix};
pub use search::{
    brute_force_search, infer_most_similar, top_k_search, Normalization, RankedMatch, SearchOptions, TopKResult,
};
pub use types::{SearchResult, SearchStats, StartPair, TimeSeries, WindowPair};
