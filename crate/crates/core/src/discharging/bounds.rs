//! Per-face statistics and the budget formulas for 10+-faces.

use std::collections::BTreeMap;

use serde::Serialize;

use super::classify::{adjacent_faces, FaceRoles};
use super::Charge;
use crate::embedding::{FaceId, PlaneEmbedding, Richness};

/// `i -> t_i`: the number of boundary runs with `i` vertices (`i >= 2`),
/// and under key 1 the number of boundary positions on no run. Zero counts
/// are left out.
pub type PathCounts = BTreeMap<usize, usize>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceStats {
    pub len: usize,
    /// Incident 3-vertices, per corner.
    pub s3: usize,
    /// Adjacent 5-faces, per shared edge.
    pub r5: usize,
    /// Adjacent bad 5-faces, per shared edge.
    pub b5: usize,
    /// Semi-rich 4-vertices and 5+-vertices on the face.
    pub s: usize,
    /// Run counts; empty for faces shorter than 10.
    pub t: PathCounts,
    /// 2, 1 or 0 for lengths 10, 11 and 12+.
    pub x: usize,
}

fn slack(len: usize) -> usize {
    match len {
        10 => 2,
        11 => 1,
        _ => 0,
    }
}

/// Splits the boundary of `f` into maximal runs of consecutive edges that
/// each border a 5- or shorter face. A boundary made entirely of such
/// edges counts as one run of `len(f)` vertices.
pub fn path_stats(emb: &PlaneEmbedding, f: FaceId) -> PathCounts {
    let darts = &emb.face(f).darts;
    let len = darts.len();
    let marked: Vec<bool> = darts.iter().map(|&d| emb.face_len(emb.across(d)) <= 5).collect();
    let mut t = PathCounts::new();
    let Some(start) = marked.iter().position(|&m| !m) else {
        if len > 0 {
            t.insert(len, 1);
        }
        return t;
    };
    let mut on_runs = 0;
    let mut run = 0;
    for k in 1..=len {
        let i = (start + k) % len;
        if marked[i] {
            run += 1;
        } else if run > 0 {
            *t.entry(run + 1).or_default() += 1;
            on_runs += run + 1;
            run = 0;
        }
    }
    if len > on_runs {
        t.insert(1, len - on_runs);
    }
    debug_assert_eq!(t.iter().map(|(i, c)| i * c).sum::<usize>(), len);
    t
}

pub fn face_stats(emb: &PlaneEmbedding, roles: &FaceRoles, f: FaceId) -> FaceStats {
    let g = emb.graph();
    let len = emb.face_len(f);
    let vs = &emb.face(f).vertices;
    let adj = adjacent_faces(emb, f);
    let s = vs
        .iter()
        .filter(|&&v| {
            g.degree(v) >= 5 || (g.degree(v) == 4 && roles.richness_to(v, f) == Some(Richness::SemiRich))
        })
        .count();
    FaceStats {
        len,
        s3: vs.iter().filter(|&&v| g.degree(v) == 3).count(),
        r5: adj.iter().filter(|&&h| emb.face_len(h) == 5).count(),
        b5: adj.iter().filter(|&&h| roles.bad_five[h]).count(),
        s,
        t: if len >= 10 { path_stats(emb, f) } else { PathCounts::new() },
        x: slack(len),
    }
}

fn third(n: usize) -> Charge {
    Charge::new(n as i64, 3)
}

fn sixth(n: usize) -> Charge {
    Charge::new(n as i64, 6)
}

fn weighted(t: &PathCounts) -> usize {
    t.iter().map(|(i, c)| i * c).sum()
}

/// What a 10+-face of length `d_f` can afford, in the long form summed
/// over runs. Panics unless `t` describes a boundary of length `d_f` and
/// the long form equals `(2/3) d_f - x/3`.
pub fn lemma5_bound(t: &PathCounts, d_f: usize) -> Charge {
    assert!(d_f >= 10, "face of length {d_f}");
    assert_eq!(weighted(t), d_f, "run counts do not cover the face");
    let t1 = t.get(&1).copied().unwrap_or(0);
    let runs: usize = t.range(2..).map(|(_, c)| c).sum();
    let excess: usize = t.range(3..).map(|(i, c)| (i - 2) * c).sum();
    let x = slack(d_f);
    let long = third(weighted(t)) + third(2 * runs) + third(t1) + third(excess) - third(x);
    let closed = Charge::new(2 * d_f as i64, 3) - third(x);
    assert_eq!(long, closed);
    long
}

/// The most a 10+-face with run counts `t` may need to send.
pub fn lemma6_bound(t: &PathCounts) -> Charge {
    let runs: usize = t.range(2..).map(|(_, c)| c).sum();
    let long_runs: usize = t.range(6..).map(|(i, c)| (i - 5) * c).sum();
    let three_plus: usize = t.range(3..).map(|(_, c)| c).sum();
    third(weighted(t)) + third(2 * runs) + sixth(long_runs) + sixth(three_plus)
}
