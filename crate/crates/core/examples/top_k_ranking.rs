//! The k closest placements, first with every placement competing and then
//! with an exclusion zone that keeps near-duplicates out.
//!
//!     cargo run --release --example top_k_ranking

use subseq_dtw::simgen::{generate_pair, SimulationSpec};
use subseq_dtw::{top_k_search, SearchOptions, WindowPair};

fn main() -> subseq_dtw::Result<()> {
    let pair = generate_pair(&SimulationSpec {
        length_u: 500,
        length_w: 500,
        motif_len_u: 40,
        motif_len_w: 50,
        gamma: 0.1,
        seed: 3,
        ..SimulationSpec::default()
    })?;
    let wp = WindowPair::new(40, 50)?;

    for exclusion in [None, Some(25)] {
        let opts = SearchOptions {
            exclusion,
            ..SearchOptions::default()
        };
        let top = top_k_search(&pair.u, &pair.w, wp, 5, &opts)?;
        println!("exclusion {exclusion:?}: {} DTW evaluations of {}", top.stats.dtw_evaluations, top.stats.pairs_total);
        for m in &top.matches {
            println!("  #{} a={:4} b={:4} d={:.4}", m.rank, m.a, m.b, m.distance);
        }
    }
    println!("planted at {:?} / {:?}", pair.ground_truth.interval_u, pair.ground_truth.interval_w);
    Ok(())
}
