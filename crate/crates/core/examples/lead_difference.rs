//! Who leads whom: a small group where each individual replays a shared
//! track a few steps after the previous one. The lead-difference grid should
//! put the earliest mover on top.
//!
//!     cargo run --release --example lead_difference

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subseq_dtw::cli::lead_grid;
use subseq_dtw::{SearchOptions, TimeSeries};

fn main() -> subseq_dtw::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    // a 2-d random walk everyone follows
    let mut track = vec![[0.0f64; 2]; 260];
    for t in 1..track.len() {
        track[t] = [track[t - 1][0] + rng.gen_range(-1.0..1.0), track[t - 1][1] + rng.gen_range(-1.0..1.0)];
    }
    let lags = [("ID1", 6), ("ID2", 0), ("ID3", 12), ("ID4", 3)];
    let mut group = Vec::new();
    for (id, lag) in lags {
        let values: Vec<f64> = (0..200)
            .flat_map(|t| {
                let p = track[t + 40 - lag];
                [p[0] + rng.gen_range(-0.2..0.2), p[1] + rng.gen_range(-0.2..0.2)]
            })
            .collect();
        group.push((id.to_string(), TimeSeries::new(values, 2)?));
    }

    let grid = lead_grid(&group, 30, 100, &SearchOptions::default())?;
    print!("{}", grid.to_csv());
    let sums = grid.row_sums();
    for (id, s) in grid.ids.iter().zip(&sums) {
        println!("{id}: {s:+}");
    }
    println!("top leader: {}", grid.ids[grid.top_leader().expect("non-empty group")]);
    Ok(())
}
