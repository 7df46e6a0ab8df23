//! A small runtime sweep over series length for the four methods, printed
//! as CSV. The `bench` subcommand of the binary does the same at any size.
//!
//!     cargo run --release --example bench_sweep

use subseq_dtw::cli::Method;
use subseq_dtw::simgen::{generate_pair, SimulationSpec};
use subseq_dtw::WindowPair;

fn main() -> subseq_dtw::Result<()> {
    let wp = WindowPair::new(60, 80)?;
    println!("method,length,runtime_ms,pairs_total,dtw_evaluations,shortest_dist");
    for length in [250, 500, 1000] {
        let pair = generate_pair(&SimulationSpec {
            length_u: length,
            length_w: length,
            gamma: 0.1,
            seed: 1,
            ..SimulationSpec::default()
        })?;
        for method in [Method::Bruteforce, Method::BruteforceBand, Method::Sp, Method::SpBand] {
            let (r, ms) = method.run(&pair.u, &pair.w, wp)?;
            println!(
                "{},{length},{ms:.1},{},{},{}",
                method.name(),
                r.stats.pairs_total,
                r.stats.dtw_evaluations,
                r.shortest_dist
            );
        }
    }
    Ok(())
}
