//! Strategic-pruning search for the most similar subsequence pair, its
//! top-k generalization, and the brute-force sliding-window baseline.
//!
//! All three run on the canonical orientation `omega_u >= omega_w`: when the
//! caller's second window is longer the two series are exchanged up front
//! and every reported start pair is mapped back before returning.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundMatrices, PRUNE_MARGIN};
use crate::dtw::{band_contains, prefetch, Cutoff, DtwMode, DtwScratch, LaneFeed, RowMinima, LANES};
use crate::error::{Error, Result};
use crate::metrics::{distance_matrix, z_normalize, DistanceMatrix};
use crate::types::{
    validate_query, CandidatePair, Grid, SearchResult, SearchStats, StartPair, TimeSeries, WindowPair,
};

/// Two DTW values closer than this are treated as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    #[default]
    None,
    #[serde(rename = "zscore")]
    ZScore,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOptions {
    pub normalization: Normalization,
    /// Sakoe-Chiba radius; `None` evaluates unconstrained DTW.
    ///
    /// With a band the search is exact for the banded distance, not for
    /// the unconstrained one.
    pub band: Option<usize>,
    /// Top-k only: suppress a match whose start pair lies within this
    /// Chebyshev distance of an already ranked match.
    pub exclusion: Option<usize>,
}

impl SearchOptions {
    fn mode(&self) -> Result<DtwMode> {
        match self.band {
            None => Ok(DtwMode::Exact),
            Some(0) => Err(Error::InvalidRadius),
            Some(radius) => Ok(DtwMode::Banded { radius }),
        }
    }
}

/// One entry of a top-k ranking, 1-based rank and start indices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankedMatch {
    pub rank: usize,
    pub a: usize,
    pub b: usize,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopKResult {
    pub matches: Vec<RankedMatch>,
    /// Fewer than k matches exist (or survive the exclusion zone).
    pub truncated: bool,
    pub swapped: bool,
    pub stats: SearchStats,
}

/// Brute-force output: the optimum and the full DTW table in the caller's
/// orientation (`table[a-1][b-1]`).
#[derive(Debug, Clone)]
pub struct BruteForceOutput {
    pub result: SearchResult,
    pub table: Grid,
}

/// The query in canonical orientation, ready for bounds and DTW.
struct Prepared {
    m: DistanceMatrix,
    windows: WindowPair,
    caller_windows: WindowPair,
    swapped: bool,
    normalized: bool,
    mode: DtwMode,
}

impl Prepared {
    fn new(u: &TimeSeries, w: &TimeSeries, wp: WindowPair, options: &SearchOptions) -> Result<Self> {
        let mode = options.mode()?;
        validate_query(u, w, wp)?;
        let normalized = options.normalization == Normalization::ZScore;
        let (nu, nw);
        let (u, w) = if normalized {
            nu = z_normalize(u)?;
            nw = z_normalize(w)?;
            (&nu, &nw)
        } else {
            (u, w)
        };
        let swapped = wp.omega_w > wp.omega_u;
        let (m, windows) = if swapped {
            (distance_matrix(w, u)?, wp.swapped())
        } else {
            (distance_matrix(u, w)?, wp)
        };
        Ok(Prepared {
            m,
            windows,
            caller_windows: wp,
            swapped,
            normalized,
            mode,
        })
    }

    fn to_caller(&self, p: StartPair) -> StartPair {
        if self.swapped {
            p.swapped()
        } else {
            p
        }
    }

    /// Whether `MaxPath` bounds the DTW variant being evaluated. The fixed
    /// path can leave a narrow band, and then it bounds nothing.
    fn upper_bound_valid(&self) -> bool {
        match self.mode {
            DtwMode::Exact => true,
            DtwMode::Banded { radius } => fixed_path_within_band(self.windows, radius),
        }
    }

    fn result(&self, shortest_dist: f64, mut solutions: Vec<StartPair>, stats: SearchStats) -> SearchResult {
        for s in &mut solutions {
            *s = self.to_caller(*s);
        }
        solutions.sort();
        SearchResult {
            shortest_dist,
            solutions,
            swapped: self.swapped,
            window_a: self.caller_windows.omega_u,
            window_b: self.caller_windows.omega_w,
            normalized: self.normalized,
            band_radius: self.mode.radius(),
            stats,
        }
    }
}

/// Whether the diagonal-then-column upper-bound path stays inside the band.
pub fn fixed_path_within_band(windows: WindowPair, radius: usize) -> bool {
    let WindowPair { omega_u, omega_w } = windows;
    (0..omega_u).all(|k| band_contains(k + 1, k.min(omega_w - 1) + 1, omega_u, omega_w, radius))
}

fn candidates_below(bm: &BoundMatrices, threshold: f64) -> Vec<CandidatePair> {
    let mut out = Vec::new();
    for i in 0..bm.min_path.rows() {
        for (j, &lb) in bm.min_path.row(i).iter().enumerate() {
            if lb <= threshold + PRUNE_MARGIN {
                out.push(CandidatePair {
                    a: i + 1,
                    b: j + 1,
                    lower_bound: lb,
                });
            }
        }
    }
    out.sort_unstable_by(|x, y| {
        x.lower_bound
            .total_cmp(&y.lower_bound)
            .then(x.a.cmp(&y.a))
            .then(x.b.cmp(&y.b))
    });
    out
}

/// Placements whose lower bound does not exceed the smallest upper bound,
/// in ascending lower-bound order (ties by start pair).
pub fn find_candidates(bm: &BoundMatrices) -> Vec<CandidatePair> {
    candidates_below(bm, bm.min_of_max_path)
}

/// Evaluates candidates in order, keeping the incumbent minimum and its
/// tie set, and stops at the first candidate whose lower bound exceeds the
/// incumbent. Indices in the result are in the orientation of `m`.
pub fn find_optimal_solutions(
    m: &DistanceMatrix,
    windows: WindowPair,
    candidates: &[CandidatePair],
    min_path: &Grid,
    mode: DtwMode,
) -> Result<SearchResult> {
    find_optimal_solutions_with(m, windows, candidates, min_path, mode, true)
}

/// [`find_optimal_solutions`] with the early exit optionally disabled.
pub fn find_optimal_solutions_with(
    m: &DistanceMatrix,
    windows: WindowPair,
    candidates: &[CandidatePair],
    min_path: &Grid,
    mode: DtwMode,
    early_exit: bool,
) -> Result<SearchResult> {
    let (shortest_dist, solutions, dtw_evaluations) =
        optimal_over_candidates(m, windows, candidates, mode, early_exit, None)?;
    Ok(SearchResult {
        shortest_dist,
        solutions,
        swapped: false,
        window_a: windows.omega_u,
        window_b: windows.omega_w,
        normalized: false,
        band_radius: mode.radius(),
        stats: SearchStats {
            pairs_total: min_path.rows() * min_path.cols(),
            pairs_after_prune: candidates.len(),
            dtw_evaluations,
            runtime_ms: 0.0,
        },
    })
}

/// Running minimum with every start pair within the tie band of it.
struct Incumbent {
    shortest: f64,
    ties: Vec<(StartPair, f64)>,
}

impl Default for Incumbent {
    fn default() -> Self {
        Incumbent {
            shortest: f64::INFINITY,
            ties: Vec::new(),
        }
    }
}

impl Incumbent {
    fn offer(&mut self, pair: StartPair, d: f64) {
        if d < self.shortest - TIE_TOLERANCE {
            self.shortest = d;
            self.ties.clear();
            self.ties.push((pair, d));
        } else if d <= self.shortest + TIE_TOLERANCE {
            self.ties.push((pair, d));
            self.shortest = self.shortest.min(d);
        }
    }
}

/// Hands out candidates in lower-bound order until the next one's bound
/// exceeds the incumbent. With several evaluations in flight a candidate
/// past the sequential stopping point may still start, but its lower bound
/// keeps it out of the tie band, so the answer is unchanged.
struct CandidateFeed<'a> {
    m: &'a DistanceMatrix,
    windows: WindowPair,
    row_minima: Option<&'a RowMinima>,
    candidates: &'a [CandidatePair],
    next: usize,
    early_exit: bool,
    best: Incumbent,
    evaluations: usize,
}

impl LaneFeed for CandidateFeed<'_> {
    fn next(&mut self) -> Option<(usize, usize, usize)> {
        let c = self.candidates.get(self.next)?;
        if self.early_exit && self.best.shortest + PRUNE_MARGIN < c.lower_bound {
            self.next = self.candidates.len();
            return None;
        }
        // the matrix is large and lanes jump around it
        if let Some(ahead) = self.candidates.get(self.next + 2 * LANES) {
            prefetch(&self.m.row(ahead.a - 1)[ahead.b - 1..][..self.windows.omega_w]);
            if let Some(rm) = self.row_minima {
                rm.prefetch(ahead.a - 1, ahead.b - 1, self.windows.omega_u);
            }
        }
        self.next += 1;
        self.evaluations += 1;
        Some((self.next - 1, c.a - 1, c.b - 1))
    }

    // anything above the tie band cannot change the answer
    fn cutoff(&self) -> f64 {
        self.best.shortest + TIE_TOLERANCE
    }

    fn finish(&mut self, tag: usize, value: f64) {
        let c = &self.candidates[tag];
        self.best.offer(StartPair { a: c.a, b: c.b }, value);
    }
}

fn optimal_over_candidates(
    m: &DistanceMatrix,
    windows: WindowPair,
    candidates: &[CandidatePair],
    mode: DtwMode,
    early_exit: bool,
    row_minima: Option<&RowMinima>,
) -> Result<(f64, Vec<StartPair>, usize)> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidates);
    }
    let WindowPair { omega_u, omega_w } = windows;
    let mut scratch = DtwScratch::new();
    let mut feed = CandidateFeed {
        m,
        windows,
        row_minima,
        candidates,
        next: 0,
        early_exit,
        best: Incumbent::default(),
        evaluations: 0,
    };
    match mode {
        DtwMode::Exact => scratch.exact_stream(m, omega_u, omega_w, row_minima, &mut feed),
        DtwMode::Banded { .. } => {
            while let Some((i, r0, c0)) = feed.next() {
                let cutoff = Cutoff {
                    value: feed.cutoff(),
                    row_minima,
                };
                let d = scratch.evaluate_within(mode, m, omega_u, omega_w, r0, c0, cutoff);
                feed.finish(i, d);
            }
        }
    }
    let CandidateFeed { best, evaluations, .. } = feed;
    let Incumbent { shortest, mut ties } = best;
    if !shortest.is_finite() {
        return Err(Error::BandInfeasible {
            omega_u,
            omega_w,
            radius: mode.radius().unwrap_or(0),
        });
    }
    ties.retain(|&(_, d)| d <= shortest + TIE_TOLERANCE);
    let mut solutions: Vec<StartPair> = ties.into_iter().map(|(p, _)| p).collect();
    solutions.sort();
    Ok((shortest, solutions, evaluations))
}

/// Finds every start pair `(a, b)` minimizing the DTW between
/// `U[a, a+omega_u-1]` and `W[b, b+omega_w-1]`, pruning with the bounds.
pub fn infer_most_similar(
    u: &TimeSeries,
    w: &TimeSeries,
    wp: WindowPair,
    options: &SearchOptions,
) -> Result<SearchResult> {
    let start = Instant::now();
    let prep = Prepared::new(u, w, wp, options)?;
    let bm = BoundMatrices::compute(&prep.m, prep.windows)?;
    let threshold = if prep.upper_bound_valid() {
        bm.min_of_max_path
    } else {
        f64::INFINITY
    };
    let candidates = candidates_below(&bm, threshold);
    let (shortest, solutions, dtw_evaluations) =
        optimal_over_candidates(&prep.m, prep.windows, &candidates, prep.mode, true, Some(&RowMinima::new(&bm.min_pool)))?;
    let stats = SearchStats {
        pairs_total: bm.placements(),
        pairs_after_prune: candidates.len(),
        dtw_evaluations,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(prep.result(shortest, solutions, stats))
}

/// Evaluates DTW at every placement.
pub fn brute_force_search(
    u: &TimeSeries,
    w: &TimeSeries,
    wp: WindowPair,
    options: &SearchOptions,
) -> Result<BruteForceOutput> {
    let start = Instant::now();
    let prep = Prepared::new(u, w, wp, options)?;
    let WindowPair { omega_u, omega_w } = prep.windows;
    let rows = prep.m.n() - omega_u + 1;
    let cols = prep.m.m() - omega_w + 1;
    let mut table = Grid::filled(rows, cols, 0.0);
    let mut scratch = DtwScratch::new();
    let mut best = f64::INFINITY;
    for i in 0..rows {
        let mut j = 0;
        while j + LANES <= cols {
            let ds = match prep.mode {
                DtwMode::Exact => scratch.exact_strip(&prep.m, omega_u, omega_w, i, j),
                DtwMode::Banded { radius } => scratch.banded_strip(&prep.m, omega_u, omega_w, i, j, radius),
            };
            table.row_mut(i)[j..j + LANES].copy_from_slice(&ds);
            j += LANES;
        }
        for j in j..cols {
            let d = scratch.evaluate(prep.mode, &prep.m, omega_u, omega_w, i, j);
            table.set(i, j, d);
        }
        best = table.row(i).iter().fold(best, |acc, &d| acc.min(d));
    }
    if !best.is_finite() {
        return Err(Error::BandInfeasible {
            omega_u,
            omega_w,
            radius: prep.mode.radius().unwrap_or(0),
        });
    }
    let mut solutions = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if table.get(i, j) <= best + TIE_TOLERANCE {
                solutions.push(StartPair { a: i + 1, b: j + 1 });
            }
        }
    }
    let stats = SearchStats {
        pairs_total: rows * cols,
        pairs_after_prune: rows * cols,
        dtw_evaluations: rows * cols,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let table = if prep.swapped { table.transpose() } else { table };
    Ok(BruteForceOutput {
        result: prep.result(best, solutions, stats),
        table,
    })
}

/// `(distance, start pair)` ordered by distance, then lexicographically.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Scored(f64, StartPair);

impl Eq for Scored {}

impl PartialOrd for Scored {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scored {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

fn ranked(scored: impl IntoIterator<Item = Scored>) -> Vec<RankedMatch> {
    scored
        .into_iter()
        .enumerate()
        .map(|(i, Scored(distance, p))| RankedMatch {
            rank: i + 1,
            a: p.a,
            b: p.b,
            distance,
        })
        .collect()
}

/// Accepted start pairs bucketed on an `exclusion`-sized grid so the
/// Chebyshev check only scans neighbouring cells.
struct ExclusionZone {
    radius: usize,
    cells: HashMap<(usize, usize), Vec<StartPair>>,
}

impl ExclusionZone {
    fn new(radius: usize) -> Self {
        ExclusionZone {
            radius,
            cells: HashMap::new(),
        }
    }

    fn cell(&self, p: StartPair) -> (usize, usize) {
        let side = self.radius.max(1);
        (p.a / side, p.b / side)
    }

    fn blocks(&self, p: StartPair) -> bool {
        let (ca, cb) = self.cell(p);
        for da in ca.saturating_sub(1)..=ca + 1 {
            for db in cb.saturating_sub(1)..=cb + 1 {
                if let Some(list) = self.cells.get(&(da, db)) {
                    if list
                        .iter()
                        .any(|q| q.a.abs_diff(p.a).max(q.b.abs_diff(p.b)) <= self.radius)
                    {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn insert(&mut self, p: StartPair) {
        let c = self.cell(p);
        self.cells.entry(c).or_default().push(p);
    }
}

/// Greedy ranking over `sorted`: take entries in order, skipping any within
/// the exclusion zone of one already taken, until `k` are taken.
fn greedy_select(sorted: &[Scored], k: usize, exclusion: Option<usize>) -> Vec<Scored> {
    let mut out = Vec::with_capacity(k.min(sorted.len()));
    let Some(radius) = exclusion else {
        out.extend(sorted.iter().take(k).copied());
        return out;
    };
    let mut zone = ExclusionZone::new(radius);
    for s in sorted {
        if out.len() == k {
            break;
        }
        if !zone.blocks(s.1) {
            zone.insert(s.1);
            out.push(*s);
        }
    }
    out
}

/// Ranks a full DTW table (caller orientation) — the reference the pruned
/// top-k must reproduce.
pub fn rank_table(table: &Grid, k: usize, exclusion: Option<usize>) -> Vec<RankedMatch> {
    let mut all: Vec<Scored> = (0..table.rows())
        .flat_map(|i| (0..table.cols()).map(move |j| (i, j)))
        .map(|(i, j)| Scored(table.get(i, j), StartPair { a: i + 1, b: j + 1 }))
        .collect();
    all.sort();
    ranked(greedy_select(&all, k, exclusion))
}

/// The `k` placements with the smallest DTW, ascending, ties broken by
/// `(a, b)`. Exact: a placement is only skipped when its lower bound
/// exceeds the current k-th best verified distance.
pub fn top_k_search(
    u: &TimeSeries,
    w: &TimeSeries,
    wp: WindowPair,
    k: usize,
    options: &SearchOptions,
) -> Result<TopKResult> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let start = Instant::now();
    let prep = Prepared::new(u, w, wp, options)?;
    let bm = BoundMatrices::compute(&prep.m, prep.windows)?;
    let total = bm.placements();
    let (selected, pairs_after_prune, dtw_evaluations) = match options.exclusion {
        None => top_k_plain(&prep, &bm, k),
        Some(radius) => top_k_excluding(&prep, &bm, k, radius),
    };
    if selected.first().is_some_and(|s| !s.0.is_finite()) {
        let WindowPair { omega_u, omega_w } = prep.windows;
        return Err(Error::BandInfeasible {
            omega_u,
            omega_w,
            radius: prep.mode.radius().unwrap_or(0),
        });
    }
    let truncated = selected.len() < k;
    Ok(TopKResult {
        matches: ranked(selected),
        truncated,
        swapped: prep.swapped,
        stats: SearchStats {
            pairs_total: total,
            pairs_after_prune,
            dtw_evaluations,
            runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    })
}

fn top_k_plain(prep: &Prepared, bm: &BoundMatrices, k: usize) -> (Vec<Scored>, usize, usize) {
    let WindowPair { omega_u, omega_w } = prep.windows;
    let row_minima = RowMinima::new(&bm.min_pool);
    // the k smallest upper bounds belong to k placements whose DTW can only
    // be lower, so the k-th smallest DTW never exceeds the k-th smallest upper bound
    let initial = if k <= bm.placements() && prep.upper_bound_valid() {
        let mut uppers = bm.max_path.as_slice().to_vec();
        let (_, kth, _) = uppers.select_nth_unstable_by(k - 1, f64::total_cmp);
        *kth
    } else {
        f64::INFINITY
    };
    let candidates = candidates_below(bm, initial);
    let mut heap: BinaryHeap<Scored> = BinaryHeap::with_capacity(k + 1);
    let mut scratch = DtwScratch::new();
    let mut evaluations = 0;
    for c in &candidates {
        let incumbent = if heap.len() == k {
            heap.peek().map_or(initial, |s| s.0)
        } else {
            initial
        };
        if incumbent + PRUNE_MARGIN < c.lower_bound {
            break;
        }
        let cutoff = Cutoff {
            value: incumbent + TIE_TOLERANCE,
            row_minima: Some(&row_minima),
        };
        let d = scratch.evaluate_within(prep.mode, &prep.m, omega_u, omega_w, c.a - 1, c.b - 1, cutoff);
        evaluations += 1;
        let s = Scored(d, prep.to_caller(StartPair { a: c.a, b: c.b }));
        if heap.len() < k {
            heap.push(s);
        } else if heap.peek().is_some_and(|top| s < *top) {
            heap.pop();
            heap.push(s);
        }
    }
    (heap.into_sorted_vec(), candidates.len(), evaluations)
}

fn top_k_excluding(prep: &Prepared, bm: &BoundMatrices, k: usize, radius: usize) -> (Vec<Scored>, usize, usize) {
    let WindowPair { omega_u, omega_w } = prep.windows;
    // mutually excluded placements can share the smallest upper bounds, so
    // no initial threshold applies here
    let candidates = candidates_below(bm, f64::INFINITY);
    let mut scratch = DtwScratch::new();
    let mut evaluated: Vec<Scored> = Vec::new();
    let mut next = 0;
    let mut batch = k.max(64);
    loop {
        let end = (next + batch).min(candidates.len());
        for c in &candidates[next..end] {
            let d = scratch.evaluate(prep.mode, &prep.m, omega_u, omega_w, c.a - 1, c.b - 1);
            evaluated.push(Scored(d, prep.to_caller(StartPair { a: c.a, b: c.b })));
        }
        next = end;
        evaluated.sort();
        let selected = greedy_select(&evaluated, k, Some(radius));
        if next == candidates.len() {
            return (selected, candidates.len(), evaluated.len());
        }
        // every unevaluated placement has DTW >= its lower bound, so once
        // the k-th pick sits below the next lower bound the picks are final
        if selected.len() == k {
            let kth = selected[k - 1].0;
            if kth + PRUNE_MARGIN < candidates[next].lower_bound {
                return (selected, candidates.len(), evaluated.len());
            }
        }
        batch *= 2;
    }
}
