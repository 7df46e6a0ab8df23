//! Pairwise most-similar 90-day stretches between price series, each
//! z-normalized first. Pass CSV files of daily closes (one value per row);
//! without arguments three synthetic random walks are used.
//!
//!     cargo run --release --example stock_similarity -- NVDA.csv VSH.csv TSN.csv

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subseq_dtw::io::ingest_csv;
use subseq_dtw::{infer_most_similar, Normalization, SearchOptions, TimeSeries, WindowPair};

fn synthetic(seed: u64) -> subseq_dtw::Result<TimeSeries> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut price = 100.0;
    let closes: Vec<f64> = (0..253)
        .map(|_| {
            price *= 1.0 + rng.gen_range(-0.03..0.031);
            price
        })
        .collect();
    TimeSeries::from_1d(&closes)
}

fn main() -> subseq_dtw::Result<()> {
    let paths: Vec<String> = std::env::args().skip(1).collect();
    let mut named = Vec::new();
    if paths.is_empty() {
        for (i, name) in ["AAA", "BBB", "CCC"].into_iter().enumerate() {
            named.push((name.to_string(), synthetic(i as u64)?));
        }
    } else {
        for p in &paths {
            let name = Path::new(p).file_stem().unwrap_or_default().to_string_lossy().into_owned();
            named.push((name, ingest_csv(p)?));
        }
    }
    let opts = SearchOptions {
        normalization: Normalization::ZScore,
        ..SearchOptions::default()
    };
    let wp = WindowPair::new(90, 90)?;
    for i in 0..named.len() {
        for j in i + 1..named.len() {
            let r = infer_most_similar(&named[i].1, &named[j].1, wp, &opts)?;
            let s = r.solutions[0];
            println!(
                "{:>6} - {:<6} {:.3}  (days {}..{} vs {}..{})",
                named[i].0,
                named[j].0,
                r.shortest_dist,
                s.a,
                s.a + 89,
                s.b,
                s.b + 89
            );
        }
    }
    Ok(())
}
