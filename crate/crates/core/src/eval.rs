//! Interval scoring against planted ground truth, and the lead-difference
//! statistic over top-k matches between pairs of individuals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::search::RankedMatch;
use crate::simgen::GroundTruth;
use crate::types::{Interval, SearchResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
}

impl ConfusionCounts {
    pub fn precision(&self) -> f64 {
        ratio(self.tp, self.tp + self.fp)
    }

    pub fn recall(&self) -> f64 {
        ratio(self.tp, self.tp + self.fn_)
    }

    /// Harmonic mean of precision and recall; 0 when either is undefined.
    pub fn f1(&self) -> f64 {
        let (p, r) = (self.precision(), self.recall());
        if p + r > 0.0 {
            2.0 * p * r / (p + r)
        } else {
            0.0
        }
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl From<ConfusionCounts> for Scores {
    fn from(c: ConfusionCounts) -> Self {
        Scores {
            tp: c.tp,
            fp: c.fp,
            fn_: c.fn_,
            precision: c.precision(),
            recall: c.recall(),
            f1: c.f1(),
        }
    }
}

fn check(iv: Interval) -> Result<Interval> {
    Interval::new(iv.start, iv.end)
}

/// Pools the time-step index sets of both series: TP counts predicted steps
/// inside the truth, FP predicted steps outside it, FN missed truth steps.
pub fn score_intervals(pred_u: Interval, pred_w: Interval, gt: &GroundTruth) -> Result<Scores> {
    let mut counts = ConfusionCounts::default();
    for (pred, truth) in [(pred_u, gt.interval_u), (pred_w, gt.interval_w)] {
        let (pred, truth) = (check(pred)?, check(truth)?);
        let hit = pred.overlap(&truth);
        counts.tp += hit;
        counts.fp += pred.len() - hit;
        counts.fn_ += truth.len() - hit;
    }
    Ok(counts.into())
}

/// As [`score_intervals`], also rejecting intervals past the series ends.
pub fn score_intervals_within(
    pred_u: Interval,
    pred_w: Interval,
    gt: &GroundTruth,
    len_u: usize,
    len_w: usize,
) -> Result<Scores> {
    for (iv, len) in [(pred_u, len_u), (gt.interval_u, len_u), (pred_w, len_w), (gt.interval_w, len_w)] {
        if iv.end > len {
            return Err(Error::IntervalOutOfBounds {
                start: iv.start,
                end: iv.end,
            });
        }
    }
    score_intervals(pred_u, pred_w, gt)
}

/// Predicted intervals from a search result's first (lexicographically
/// smallest) optimal start pair.
pub fn predicted_intervals(result: &SearchResult) -> Option<(Interval, Interval)> {
    result.solutions.first().map(|s| {
        (
            Interval::from_window(s.a, result.window_a),
            Interval::from_window(s.b, result.window_b),
        )
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeadDifferenceCell {
    pub leader_id: String,
    pub follower_id: String,
    pub lead_count: usize,
    pub follow_count: usize,
    pub difference: i64,
}

/// Counts matches where the leader's window starts first (`a < b`) against
/// those where it starts later. Equal starts count for neither.
pub fn lead_difference(leader_id: &str, follower_id: &str, matches: &[RankedMatch]) -> LeadDifferenceCell {
    let lead_count = matches.iter().filter(|m| m.a < m.b).count();
    let follow_count = matches.iter().filter(|m| m.a > m.b).count();
    LeadDifferenceCell {
        leader_id: leader_id.to_string(),
        follower_id: follower_id.to_string(),
        lead_count,
        follow_count,
        difference: lead_count as i64 - follow_count as i64,
    }
}

/// Square leader-by-follower grid of `L - F`; the diagonal stays zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadDifferenceGrid {
    pub ids: Vec<String>,
    pub cells: Vec<Vec<i64>>,
}

impl LeadDifferenceGrid {
    pub fn new(ids: Vec<String>) -> Self {
        let n = ids.len();
        LeadDifferenceGrid {
            ids,
            cells: vec![vec![0; n]; n],
        }
    }

    /// Stores a cell and its role-exchanged mirror.
    pub fn insert_pair(&mut self, leader: usize, follower: usize, cell: &LeadDifferenceCell) {
        self.cells[leader][follower] = cell.difference;
        self.cells[follower][leader] = -cell.difference;
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.cells.iter().map(|r| r.iter().sum()).collect()
    }

    /// Index of the leader with the largest row sum (first on ties).
    pub fn top_leader(&self) -> Option<usize> {
        let sums = self.row_sums();
        (0..sums.len()).max_by(|&a, &b| sums[a].cmp(&sums[b]).then(b.cmp(&a)))
    }

    /// CSV with a header of follower ids; each row starts with the leader id.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("leader");
        for id in &self.ids {
            out.push(',');
            out.push_str(id);
        }
        out.push('\n');
        for (id, row) in self.ids.iter().zip(&self.cells) {
            out.push_str(id);
            for v in row {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn iv(s: usize, e: usize) -> Interval {
        Interval::new(s, e).unwrap()
    }

    fn m(a: usize, b: usize) -> RankedMatch {
        RankedMatch {
            rank: 0,
            a,
            b,
            distance: 0.0,
        }
    }

    /// Index-set oracle: explicit sets per series, tagged by series.
    fn oracle(pred: [Interval; 2], truth: [Interval; 2]) -> (usize, usize, usize) {
        let set = |ivs: [Interval; 2]| -> BTreeSet<(usize, usize)> {
            ivs.iter()
                .enumerate()
                .flat_map(|(s, iv)| (iv.start..=iv.end).map(move |t| (s, t)))
                .collect()
        };
        let (p, t) = (set(pred), set(truth));
        (p.intersection(&t).count(), p.difference(&t).count(), t.difference(&p).count())
    }

    #[test]
    fn perfect_and_disjoint_predictions() {
        let gt = GroundTruth {
            interval_u: iv(10, 69),
            interval_w: iv(30, 109),
        };
        assert_eq!(score_intervals(iv(10, 69), iv(30, 109), &gt).unwrap().f1, 1.0);
        let s = score_intervals(iv(200, 259), iv(300, 379), &gt).unwrap();
        assert_eq!(s.f1, 0.0);
        assert_eq!(s.tp, 0);
    }

    #[test]
    fn partial_overlap_example() {
        let gt = GroundTruth {
            interval_u: iv(100, 159),
            interval_w: iv(200, 279),
        };
        let s = score_intervals(iv(130, 189), iv(200, 279), &gt).unwrap();
        assert_eq!(oracle([iv(130, 189), iv(200, 279)], [gt.interval_u, gt.interval_w]), (110, 30, 30));
        assert_eq!((s.tp, s.fp, s.fn_), (110, 30, 30));
        assert!((s.precision - 110.0 / 140.0).abs() < 1e-12);
        assert!((s.recall - 110.0 / 140.0).abs() < 1e-12);
        assert!((s.f1 - 0.7857142857142857).abs() < 1e-12);
    }

    #[test]
    fn malformed_intervals_rejected() {
        let gt = GroundTruth {
            interval_u: iv(1, 5),
            interval_w: iv(1, 5),
        };
        let bad = Interval { start: 0, end: 3 };
        assert!(matches!(score_intervals(bad, iv(1, 5), &gt), Err(Error::IntervalOutOfBounds { .. })));
        assert!(matches!(
            score_intervals_within(iv(1, 5), iv(3, 9), &gt, 10, 8),
            Err(Error::IntervalOutOfBounds { .. })
        ));
    }

    #[test]
    fn lead_difference_examples() {
        let all_lead = [m(1, 3), m(2, 9), m(5, 6)];
        assert_eq!(lead_difference("a", "b", &all_lead).difference, 3);
        let sym = [m(1, 5), m(5, 1), m(2, 7), m(7, 2), m(4, 4)];
        let c = lead_difference("a", "b", &sym);
        assert_eq!((c.lead_count, c.follow_count, c.difference), (2, 2, 0));
        let c = lead_difference("x", "y", &[m(1, 5), m(3, 2), m(4, 9)]);
        assert_eq!((c.lead_count, c.follow_count, c.difference), (2, 1, 1));
    }

    #[test]
    fn grid_csv_and_leader() {
        let mut g = LeadDifferenceGrid::new(vec!["1".into(), "2".into(), "3".into()]);
        g.insert_pair(2, 0, &lead_difference("3", "1", &[m(1, 4), m(2, 6)]));
        g.insert_pair(2, 1, &lead_difference("3", "2", &[m(1, 4)]));
        g.insert_pair(0, 1, &lead_difference("1", "2", &[m(4, 1)]));
        assert_eq!(g.row_sums(), vec![-3, 0, 3]);
        assert_eq!(g.top_leader(), Some(2));
        assert_eq!(g.to_csv(), "leader,1,2,3\n1,0,-1,-2\n2,1,0,-1\n3,2,1,0\n");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn interval() -> impl Strategy<Value = Interval> {
            (1usize..50, 0usize..30).prop_map(|(s, l)| Interval { start: s, end: s + l })
        }

        proptest! {
            #[test]
            fn score_swap_symmetry(pu in interval(), pw in interval(), gu in interval(), gw in interval()) {
                let gt = GroundTruth { interval_u: gu, interval_w: gw };
                let rev = GroundTruth { interval_u: pu, interval_w: pw };
                let s = score_intervals(pu, pw, &gt).unwrap();
                let r = score_intervals(gu, gw, &rev).unwrap();
                prop_assert_eq!(s.tp, r.tp);
                prop_assert_eq!(s.fp, r.fn_);
                prop_assert_eq!(s.fn_, r.fp);
                prop_assert!((0.0..=1.0).contains(&s.f1));
                prop_assert_eq!(s.f1 == 1.0, pu == gu && pw == gw);
                prop_assert_eq!((s.tp, s.fp, s.fn_), oracle([pu, pw], [gu, gw]));
            }

            #[test]
            fn lead_difference_antisymmetric(pairs in prop::collection::vec((1usize..30, 1usize..30), 0..40)) {
                let forward: Vec<RankedMatch> = pairs.iter().map(|&(a, b)| m(a, b)).collect();
                let backward: Vec<RankedMatch> = pairs.iter().map(|&(a, b)| m(b, a)).collect();
                let f = lead_difference("i", "j", &forward);
                let b = lead_difference("j", "i", &backward);
                prop_assert_eq!(f.difference, -b.difference);
                prop_assert!(f.lead_count + f.follow_count <= pairs.len());
            }
        }
    }
}
