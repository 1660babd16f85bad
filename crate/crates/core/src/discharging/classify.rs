//! Vertex and face roles that the rules key on.

use serde::Serialize;

use crate::embedding::{FaceId, PlaneEmbedding, Richness};
use crate::graph::{EdgeId, Vertex};

/// `good` gives to `poor` across the shared (3,3)-edge `edge`.
///
/// The side condition on the two boundary paths of `good` is checked only
/// as far as it is spelled out (a 3-vertex, then a 4+-vertex, then a
/// 3+-vertex); matches are meant for review.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GoodPair {
    pub good: FaceId,
    pub poor: FaceId,
    pub edge: EdgeId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceRoles {
    /// 3-vertex on a 3-face.
    pub triangular: Vec<bool>,
    /// 4+-vertex rich to some incident 10+-face.
    pub special: Vec<bool>,
    /// For each 4+-vertex, its standing towards each distinct incident
    /// 10+-face.
    pub richness: Vec<Vec<(FaceId, Richness)>>,
    /// 5-face of five 3-vertices adjacent to exactly two 5-faces.
    pub bad_five: Vec<bool>,
    pub good_pairs: Vec<GoodPair>,
    /// Pairs of distinct faces sharing more than one edge; adjacency is
    /// counted once per shared edge.
    pub repeated_adjacency: Vec<(FaceId, FaceId)>,
}

impl FaceRoles {
    pub fn richness_to(&self, v: Vertex, f: FaceId) -> Option<Richness> {
        self.richness[v].iter().find(|&&(g, _)| g == f).map(|&(_, r)| r)
    }
}

/// Faces across each boundary edge of `f`, one entry per shared edge,
/// skipping `f` itself.
pub(crate) fn adjacent_faces(emb: &PlaneEmbedding, f: FaceId) -> Vec<FaceId> {
    emb.face_adjacency(f).into_iter().map(|(_, g)| g).filter(|&g| g != f).collect()
}

fn degrees_match(emb: &PlaneEmbedding, g: FaceId, threes: usize) -> bool {
    let mut d: Vec<usize> = emb.face(g).vertices.iter().map(|&v| emb.graph().degree(v)).collect();
    d.sort_unstable();
    d.len() == threes + 1 && d[..threes].iter().all(|&x| x == 3) && d[threes] >= 4
}

/// A (3,3,4+)-face or a (3,3,3,3,4+)-face.
fn is_anchor_face(emb: &PlaneEmbedding, g: FaceId) -> bool {
    match emb.face_len(g) {
        3 => degrees_match(emb, g, 2),
        5 => degrees_match(emb, g, 4),
        _ => false,
    }
}

/// Walking the boundary of `f` from position `start` (forward or backward),
/// the first vertex is a 3-vertex, the second is a 4+-vertex incident to
/// an anchor face adjacent to both `f` and `f2`, and the third is a
/// 3+-vertex.
fn path_end_ok(emb: &PlaneEmbedding, f: FaceId, f2: FaceId, start: usize, forward: bool) -> bool {
    let vs = &emb.face(f).vertices;
    let len = vs.len();
    let at = |k: usize| if forward { vs[(start + k) % len] } else { vs[(start + len * 2 - k) % len] };
    let g = emb.graph();
    let (u, w1, w2) = (at(0), at(1), at(2));
    g.degree(u) == 3
        && g.degree(w1) >= 4
        && g.degree(w2) >= 3
        && emb
            .faces_at(w1)
            .into_iter()
            .any(|h| h != f && h != f2 && is_anchor_face(emb, h) && emb.faces_adjacent(h, f) && emb.faces_adjacent(h, f2))
}

fn good_pairs(emb: &PlaneEmbedding) -> Vec<GoodPair> {
    let g = emb.graph();
    let mut out: Vec<GoodPair> = Vec::new();
    for poor in 0..emb.faces().len() {
        let face = emb.face(poor);
        if face.len() != 10 || face.vertices.iter().any(|&v| g.degree(v) != 3) {
            continue;
        }
        for &d in &face.darts {
            let good = emb.across(d);
            if good == poor || emb.face_len(good) < 10 {
                continue;
            }
            // On `good` the edge runs the other way: position q holds the
            // head of `d`, position q + 1 its tail.
            let r = emb.reverse(d);
            let q = emb.dart_position(r);
            let len = emb.face_len(good);
            let tail_end = path_end_ok(emb, good, poor, (q + 1) % len, true);
            let head_end = path_end_ok(emb, good, poor, q, false);
            if tail_end && head_end && !out.iter().any(|p| p.good == good && p.poor == poor) {
                out.push(GoodPair { good, poor, edge: emb.dart_edge(d) });
            }
        }
    }
    out.sort_by_key(|p| (p.good, p.poor));
    out
}

pub fn classify_face_roles(emb: &PlaneEmbedding) -> FaceRoles {
    let g = emb.graph();
    let n = g.n();
    let nf = emb.faces().len();
    let triangular = (0..n)
        .map(|v| g.degree(v) == 3 && emb.corners(v).iter().any(|c| emb.face_len(c.face) == 3))
        .collect();
    let richness: Vec<Vec<(FaceId, Richness)>> = (0..n)
        .map(|v| {
            if g.degree(v) < 4 {
                return Vec::new();
            }
            emb.faces_at(v)
                .into_iter()
                .filter(|&f| emb.face_len(f) >= 10)
                .map(|f| (f, emb.classify_vertex(v, f).expect("incident")))
                .collect()
        })
        .collect();
    let special = richness.iter().map(|r| r.iter().any(|&(_, x)| x == Richness::Rich)).collect();
    let bad_five = (0..nf)
        .map(|f| {
            emb.face_len(f) == 5
                && emb.face(f).vertices.iter().all(|&v| g.degree(v) == 3)
                && adjacent_faces(emb, f).iter().filter(|&&h| emb.face_len(h) == 5).count() == 2
        })
        .collect();
    let mut repeated_adjacency = Vec::new();
    for f in 0..nf {
        let mut adj = adjacent_faces(emb, f);
        adj.sort_unstable();
        for w in adj.windows(2) {
            if w[0] == w[1] && f < w[0] && !repeated_adjacency.contains(&(f, w[0])) {
                repeated_adjacency.push((f, w[0]));
            }
        }
    }
    FaceRoles { triangular, special, richness, bad_five, good_pairs: good_pairs(emb), repeated_adjacency }
}
