//! Look inside the pruning: lower and upper bound grids, the candidate
//! list, and how much of it the early exit actually touches.
//!
//!     cargo run --example bound_inspection

use subseq_dtw::bounds::BoundMatrices;
use subseq_dtw::dtw::DtwMode;
use subseq_dtw::search::{find_candidates, find_optimal_solutions_with};
use subseq_dtw::{distance_matrix, TimeSeries, WindowPair};

fn main() -> subseq_dtw::Result<()> {
    let u = TimeSeries::from_1d(&[5.0, 5.0, 1.0, 3.0, 2.0, 4.0, 9.0, 8.0, 9.0, 1.0, 3.0])?;
    let w = TimeSeries::from_1d(&[0.0, 1.0, 3.0, 2.0, 4.0, 7.0, 6.0])?;
    // bounds assume the first window is the longer one
    let wp = WindowPair::new(5, 4)?;
    let m = distance_matrix(&u, &w)?;
    let bm = BoundMatrices::compute(&m, wp)?;

    println!("lower bound (rows a, cols b):");
    for i in 0..bm.min_path.rows() {
        let row: Vec<String> = bm.min_path.row(i).iter().map(|v| format!("{v:5.1}")).collect();
        println!("  {}", row.join(" "));
    }
    println!("upper bound:");
    for i in 0..bm.max_path.rows() {
        let row: Vec<String> = bm.max_path.row(i).iter().map(|v| format!("{v:5.1}")).collect();
        println!("  {}", row.join(" "));
    }
    println!("smallest upper bound {}", bm.min_of_max_path);

    let candidates = find_candidates(&bm);
    println!("{} of {} placements kept:", candidates.len(), bm.placements());
    for c in &candidates {
        println!("  ({}, {}) lb {}", c.a, c.b, c.lower_bound);
    }
    let with_exit = find_optimal_solutions_with(&m, wp, &candidates, &bm.min_path, DtwMode::Exact, true)?;
    let without = find_optimal_solutions_with(&m, wp, &candidates, &bm.min_path, DtwMode::Exact, false)?;
    println!(
        "optimum {} at {:?}; {} evaluations with early exit, {} without",
        with_exit.shortest_dist, with_exit.solutions, with_exit.stats.dtw_evaluations, without.stats.dtw_evaluations
    );
    Ok(())
}
