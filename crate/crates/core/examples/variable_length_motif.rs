//! Plant a 60-step sine in one series and an 80-step stretched copy in the
//! other, then recover both with windows of different lengths.
//!
//!     cargo run --release --example variable_length_motif -- [length] [gamma] [seed]

use subseq_dtw::eval::{predicted_intervals, score_intervals};
use subseq_dtw::simgen::{generate_pair, SimulationSpec};
use subseq_dtw::{infer_most_similar, SearchOptions, WindowPair};

fn main() -> subseq_dtw::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_string());
    let spec = SimulationSpec {
        length_u: arg(0, "1000").parse().expect("length"),
        length_w: arg(0, "1000").parse().expect("length"),
        gamma: arg(1, "0.1").parse().expect("gamma"),
        seed: arg(2, "7").parse().expect("seed"),
        ..SimulationSpec::default()
    };
    let pair = generate_pair(&spec)?;
    let gt = pair.ground_truth;
    println!("planted U{:?} W{:?}", (gt.interval_u.start, gt.interval_u.end), (gt.interval_w.start, gt.interval_w.end));

    let wp = WindowPair::new(spec.motif_len_u, spec.motif_len_w)?;
    let r = infer_most_similar(&pair.u, &pair.w, wp, &SearchOptions::default())?;
    let (pu, pw) = predicted_intervals(&r).expect("at least one solution");
    println!("found   U{:?} W{:?} at distance {:.4}", (pu.start, pu.end), (pw.start, pw.end), r.shortest_dist);

    let s = score_intervals(pu, pw, &gt)?;
    println!("tp {} fp {} fn {} -> F1 {:.3}", s.tp, s.fp, s.fn_, s.f1);
    let st = r.stats;
    println!(
        "placements {}, kept by bounds {}, DTW evaluations {} ({:.1}%), {:.0} ms",
        st.pairs_total,
        st.pairs_after_prune,
        st.dtw_evaluations,
        100.0 * st.dtw_evaluations as f64 / st.pairs_total as f64,
        st.runtime_ms
    );
    Ok(())
}
