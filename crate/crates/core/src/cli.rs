//! Command-line front end. Every subcommand reads local files, writes its
//! artifacts, and on failure prints `{"error": <kind>, "message": ...}` to
//! stderr and exits nonzero.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::BoundMatrices;
use crate::dtw::default_band_radius;
use crate::error::{Error, Result};
use crate::eval::{lead_difference, predicted_intervals, score_intervals, LeadDifferenceGrid};
use crate::io::{bounds_csv, ingest_csv, read_json, write_json, write_series, write_text};
use crate::metrics::{distance_matrix, z_normalize};
use crate::search::{brute_force_search, infer_most_similar, top_k_search, Normalization, SearchOptions};
use crate::simgen::{generate_pair, GroundTruth, SimulationSpec};
use crate::types::{Interval, SearchResult, TimeSeries, WindowPair};

#[derive(Debug, Parser)]
#[command(name = "subseq-dtw", version, about = "Most similar subsequence pairs under DTW")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find every optimal start pair for one window pair.
    Search(SearchArgs),
    /// Rank the k most similar placements.
    Topk(TopkArgs),
    /// Generate a series pair with a planted motif.
    Simulate(SimulateArgs),
    /// Score a search result against ground truth.
    Evaluate(EvaluateArgs),
    /// Lead-difference grid over a directory of per-individual series.
    Lead(LeadArgs),
    /// Runtime and counter sweep over simulated instances.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum NormalizeArg {
    Zscore,
    #[default]
    None,
}

impl From<NormalizeArg> for Normalization {
    fn from(n: NormalizeArg) -> Self {
        match n {
            NormalizeArg::Zscore => Normalization::ZScore,
            NormalizeArg::None => Normalization::None,
        }
    }
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long)]
    pub wa: usize,
    #[arg(long)]
    pub wb: usize,
    #[arg(long, value_enum, default_value_t)]
    pub normalize: NormalizeArg,
    /// Sakoe-Chiba radius; omit for unconstrained DTW.
    #[arg(long)]
    pub band: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the lower- and upper-bound matrices as CSV.
    #[arg(long)]
    pub dump_bounds: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TopkArgs {
    #[command(flatten)]
    pub query: QueryArgs,
    #[arg(long)]
    pub k: usize,
    /// Chebyshev radius around ranked start pairs that later matches may not enter.
    #[arg(long)]
    pub exclusion: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub len_a: usize,
    #[arg(long)]
    pub len_b: usize,
    #[arg(long)]
    pub motif_a: usize,
    #[arg(long)]
    pub motif_b: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub delay: i64,
    #[arg(long)]
    pub gamma: f64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub dims: usize,
    #[arg(long)]
    pub out_a: PathBuf,
    #[arg(long)]
    pub out_b: PathBuf,
    #[arg(long)]
    pub out_gt: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// A search result, or a document with `interval_u` and `interval_w`.
    #[arg(long)]
    pub pred: PathBuf,
    #[arg(long)]
    pub gt: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct LeadArgs {
    /// Directory of CSV files, one per individual; the file stem is the id.
    #[arg(long)]
    pub dir: PathBuf,
    #[arg(long)]
    pub window: usize,
    #[arg(long)]
    pub k: usize,
    /// First time step used, 1-based.
    #[arg(long)]
    pub from: usize,
    /// Last time step used, inclusive.
    #[arg(long)]
    pub to: usize,
    #[arg(long, value_enum, default_value_t)]
    pub normalize: NormalizeArg,
    #[arg(long)]
    pub exclusion: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub lengths: Vec<usize>,
    /// Window pairs as `wa:wb`, or a single value for equal windows.
    #[arg(long, value_delimiter = ',', required = true)]
    pub windows: Vec<WindowSpec>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub gammas: Vec<f64>,
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    pub methods: Vec<Method>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub seeds: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    pub warmup: usize,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowSpec {
    pub wa: usize,
    pub wb: usize,
}

impl std::str::FromStr for WindowSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad window {t:?}: {e}"));
        match s.split_once(':') {
            Some((a, b)) => Ok(WindowSpec { wa: num(a)?, wb: num(b)? }),
            None => num(s).map(|w| WindowSpec { wa: w, wb: w }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Bruteforce,
    BruteforceBand,
    Sp,
    SpBand,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Bruteforce => "bruteforce",
            Method::BruteforceBand => "bruteforce-band",
            Method::Sp => "sp",
            Method::SpBand => "sp-band",
        }
    }

    fn banded(self) -> bool {
        matches!(self, Method::BruteforceBand | Method::SpBand)
    }

    /// Runs the method once, returning the result and wall-clock milliseconds.
    pub fn run(self, u: &TimeSeries, w: &TimeSeries, wp: WindowPair) -> Result<(SearchResult, f64)> {
        let options = SearchOptions {
            band: self.banded().then(|| default_band_radius(wp.omega_u, wp.omega_w)),
            ..SearchOptions::default()
        };
        let start = Instant::now();
        let result = match self {
            Method::Bruteforce | Method::BruteforceBand => brute_force_search(u, w, wp, &options)?.result,
            Method::Sp | Method::SpBand => infer_most_similar(u, w, wp, &options)?,
        };
        Ok((result, start.elapsed().as_secs_f64() * 1e3))
    }
}

/// Parses `args` (program name first), runs the command, and reports errors.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report("UsageError", e.to_string().trim());
            return ExitCode::from(2);
        }
    };
    match execute(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            report(e.kind(), &e.to_string());
            ExitCode::FAILURE
        }
    }
}

fn report(kind: &str, message: &str) {
    let doc = serde_json::json!({ "error": kind, "message": message });
    eprintln!("{doc}");
}

pub fn execute(command: &Command) -> Result<()> {
    match command {
        Command::Search(a) => run_search(a),
        Command::Topk(a) => run_topk(a),
        Command::Simulate(a) => run_simulate(a),
        Command::Evaluate(a) => run_evaluate(a),
        Command::Lead(a) => run_lead(a),
        Command::Bench(a) => run_bench(a),
    }
}

fn load_query(q: &QueryArgs) -> Result<(TimeSeries, TimeSeries, WindowPair, SearchOptions)> {
    let u = ingest_csv(&q.a)?;
    let w = ingest_csv(&q.b)?;
    let wp = WindowPair::new(q.wa, q.wb)?;
    let options = SearchOptions {
        normalization: q.normalize.into(),
        band: q.band,
        exclusion: None,
    };
    Ok((u, w, wp, options))
}

pub fn run_search(args: &SearchArgs) -> Result<()> {
    let (u, w, wp, options) = load_query(&args.query)?;
    let result = infer_most_similar(&u, &w, wp, &options)?;
    if let Some(path) = &args.dump_bounds {
        write_text(path, &bounds_dump(&u, &w, wp, options.normalization)?)?;
    }
    write_json(&args.out, &result)
}

/// Bound matrices indexed by the caller's `(a, b)`, whichever series the
/// search treated as the longer-window one.
fn bounds_dump(u: &TimeSeries, w: &TimeSeries, wp: WindowPair, norm: Normalization) -> Result<String> {
    let (u, w) = match norm {
        Normalization::ZScore => (z_normalize(u)?, z_normalize(w)?),
        Normalization::None => (u.clone(), w.clone()),
    };
    let swap = wp.omega_w > wp.omega_u;
    let bm = if swap {
        BoundMatrices::compute(&distance_matrix(&w, &u)?, wp.swapped())?
    } else {
        BoundMatrices::compute(&distance_matrix(&u, &w)?, wp)?
    };
    Ok(if swap {
        bounds_csv(&bm.min_path.transpose(), &bm.max_path.transpose(), bm.min_of_max_path)
    } else {
        bounds_csv(&bm.min_path, &bm.max_path, bm.min_of_max_path)
    })
}

pub fn run_topk(args: &TopkArgs) -> Result<()> {
    let (u, w, wp, mut options) = load_query(&args.query)?;
    options.exclusion = args.exclusion;
    let top = top_k_search(&u, &w, wp, args.k, &options)?;
    if top.truncated {
        eprintln!("warning: only {} matches available for k = {}", top.matches.len(), args.k);
    }
    write_json(&args.out, &top.matches)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroundTruthDoc {
    pub interval_u: Interval,
    pub interval_w: Interval,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<SimulationSpec>,
}

impl GroundTruthDoc {
    pub fn truth(&self) -> GroundTruth {
        GroundTruth {
            interval_u: self.interval_u,
            interval_w: self.interval_w,
        }
    }
}

pub fn run_simulate(args: &SimulateArgs) -> Result<()> {
    let spec = SimulationSpec {
        length_u: args.len_a,
        length_w: args.len_b,
        motif_len_u: args.motif_a,
        motif_len_w: args.motif_b,
        delay: args.delay,
        gamma: args.gamma,
        seed: args.seed,
        dims: args.dims,
        ..SimulationSpec::default()
    };
    let pair = generate_pair(&spec)?;
    write_series(&args.out_a, &pair.u)?;
    write_series(&args.out_b, &pair.w)?;
    let doc = GroundTruthDoc {
        interval_u: pair.ground_truth.interval_u,
        interval_w: pair.ground_truth.interval_w,
        spec: Some(spec),
    };
    write_json(&args.out_gt, &doc)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Prediction {
    Search(SearchResult),
    Intervals(GroundTruthDoc),
}

pub fn run_evaluate(args: &EvaluateArgs) -> Result<()> {
    let (pred_u, pred_w) = match read_json::<Prediction>(&args.pred)? {
        Prediction::Search(r) => predicted_intervals(&r)
            .ok_or_else(|| Error::InvalidArgument("search result has no solutions".into()))?,
        Prediction::Intervals(d) => (d.interval_u, d.interval_w),
    };
    let gt: GroundTruthDoc = read_json(&args.gt)?;
    let scores = score_intervals(pred_u, pred_w, &gt.truth())?;
    write_json(&args.out, &scores)
}

/// CSV files in `dir`, ordered by numeric id where the stems are numbers.
pub fn individual_files(dir: &Path) -> Result<Vec<(String, PathBuf)>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
            let id = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            files.push((id, path));
        }
    }
    files.sort_by_key(|x| id_key(&x.0));
    Ok(files)
}

fn id_key(id: &str) -> (String, u64, String) {
    let digits = id.trim_start_matches(|c: char| !c.is_ascii_digit());
    let prefix = &id[..id.len() - digits.len()];
    match digits.parse() {
        Ok(n) => (prefix.to_string(), n, String::new()),
        Err(_) => (prefix.to_string(), u64::MAX, id.to_string()),
    }
}

/// Lead-difference grid over every pair of individuals, each restricted to
/// time steps `from..=to`.
pub fn lead_grid(
    series: &[(String, TimeSeries)],
    window: usize,
    k: usize,
    options: &SearchOptions,
) -> Result<LeadDifferenceGrid> {
    let wp = WindowPair::new(window, window)?;
    let mut grid = LeadDifferenceGrid::new(series.iter().map(|s| s.0.clone()).collect());
    for i in 0..series.len() {
        for j in i + 1..series.len() {
            let top = top_k_search(&series[i].1, &series[j].1, wp, k, options)?;
            grid.insert_pair(i, j, &lead_difference(&series[i].0, &series[j].0, &top.matches));
        }
    }
    Ok(grid)
}

pub fn run_lead(args: &LeadArgs) -> Result<()> {
    if args.from == 0 || args.to < args.from {
        return Err(Error::InvalidArgument(format!("bad step range {}..{}", args.from, args.to)));
    }
    let files = individual_files(&args.dir)?;
    if files.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "{} holds {} csv files, need at least 2",
            args.dir.display(),
            files.len()
        )));
    }
    let mut series = Vec::with_capacity(files.len());
    for (id, path) in files {
        let s = ingest_csv(&path)?;
        let s = s.slice(args.from - 1, args.to.min(s.len()))?;
        series.push((id, s));
    }
    let options = SearchOptions {
        normalization: args.normalize.into(),
        band: None,
        exclusion: args.exclusion,
    };
    let grid = lead_grid(&series, args.window, args.k, &options)?;
    write_text(&args.out, &grid.to_csv())
}

pub const BENCH_HEADER: &str = "method,length,window_a,window_b,gamma,seed,runtime_ms,pairs_total,pairs_after_prune,dtw_evaluations,shortest_dist,a,b,f1";

/// Median of the measured runs; the mean of the middle two for even counts.
fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

pub fn run_bench(args: &BenchArgs) -> Result<()> {
    if args.reps == 0 {
        return Err(Error::InvalidArgument("reps must be at least 1".into()));
    }
    let mut out = String::from(BENCH_HEADER);
    out.push('\n');
    for &length in &args.lengths {
        for &ws in &args.windows {
            for &gamma in &args.gammas {
                for &seed in &args.seeds {
                    let spec = SimulationSpec {
                        length_u: length,
                        length_w: length,
                        motif_len_u: ws.wa,
                        motif_len_w: ws.wb,
                        gamma,
                        seed,
                        ..SimulationSpec::default()
                    };
                    let pair = generate_pair(&spec)?;
                    let wp = WindowPair::new(ws.wa, ws.wb)?;
                    for &method in &args.methods {
                        for _ in 0..args.warmup {
                            method.run(&pair.u, &pair.w, wp)?;
                        }
                        let mut times = Vec::with_capacity(args.reps);
                        let mut last = None;
                        for _ in 0..args.reps {
                            let (r, ms) = method.run(&pair.u, &pair.w, wp)?;
                            times.push(ms);
                            last = Some(r);
                        }
                        let r = last.expect("reps >= 1");
                        let f1 = predicted_intervals(&r)
                            .map(|(pu, pw)| score_intervals(pu, pw, &pair.ground_truth))
                            .transpose()?
                            .map_or(0.0, |s| s.f1);
                        let s = r.stats;
                        let first = r.solutions[0];
                        writeln!(
                            out,
                            "{},{length},{},{},{gamma},{seed},{:.3},{},{},{},{},{},{},{f1}",
                            method.name(),
                            ws.wa,
                            ws.wb,
                            median(times),
                            s.pairs_total,
                            s.pairs_after_prune,
                            s.dtw_evaluations,
                            r.shortest_dist,
                            first.a,
                            first.b,
                        )
                        .expect("writing to a String");
                    }
                }
            }
        }
    }
    write_text(&args.out, &out)
}
