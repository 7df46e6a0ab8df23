//! Smallest possible query: two short 1-d series, equal windows.
//!
//!     cargo run --example basic_search

use subseq_dtw::{brute_force_search, infer_most_similar, SearchOptions, TimeSeries, WindowPair};

fn main() -> subseq_dtw::Result<()> {
    let u = TimeSeries::from_1d(&[0.0, 1.0, 3.0])?;
    let w = TimeSeries::from_1d(&[0.0, 2.0])?;
    let wp = WindowPair::new(2, 2)?;

    let result = infer_most_similar(&u, &w, wp, &SearchOptions::default())?;
    println!("{}", serde_json::to_string_pretty(&result)?);

    // the full table the pruned search avoided computing
    let bf = brute_force_search(&u, &w, wp, &SearchOptions::default())?;
    for a in 0..bf.table.rows() {
        for b in 0..bf.table.cols() {
            println!("DTW(U[{}..], W[{}..]) = {}", a + 1, b + 1, bf.table.get(a, b));
        }
    }
    assert_eq!(bf.result.solutions, result.solutions);
    Ok(())
}
