//! Sakoe-Chiba constrained search next to the unconstrained one, for a few
//! band radii. A narrow band can settle on a worse alignment.
//!
//!     cargo run --release --example banded_search

use subseq_dtw::dtw::default_band_radius;
use subseq_dtw::simgen::{generate_pair, SimulationSpec};
use subseq_dtw::{infer_most_similar, SearchOptions, WindowPair};

fn main() -> subseq_dtw::Result<()> {
    let pair = generate_pair(&SimulationSpec {
        length_u: 800,
        length_w: 800,
        seed: 11,
        gamma: 0.15,
        ..SimulationSpec::default()
    })?;
    let wp = WindowPair::new(60, 80)?;
    let exact = infer_most_similar(&pair.u, &pair.w, wp, &SearchOptions::default())?;
    println!("exact     d={:.4} at {:?} ({:.0} ms)", exact.shortest_dist, exact.solutions[0], exact.stats.runtime_ms);

    let default = default_band_radius(60, 80);
    println!("default radius {default}");
    for radius in [3, 10, default, 40, 80] {
        let opts = SearchOptions {
            band: Some(radius),
            ..SearchOptions::default()
        };
        match infer_most_similar(&pair.u, &pair.w, wp, &opts) {
            Ok(r) => println!(
                "radius {radius:3} d={:.4} at {:?} ({} evaluations, {:.0} ms)",
                r.shortest_dist, r.solutions[0], r.stats.dtw_evaluations, r.stats.runtime_ms
            ),
            Err(e) => println!("radius {radius:3} {e}"),
        }
    }
    Ok(())
}
