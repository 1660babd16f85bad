//! Rotation-system plane embeddings and facial walks.
//!
//! A dart is a directed edge `u -> v`. Following a face means: from dart
//! `u -> v`, continue with `v -> w` where `w` is the rotation successor of
//! `u` at `v`. Every dart lies on exactly one facial walk; a face's length is
//! its number of darts, which counts boundary vertices with repetition.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, GraphError, Vertex};

pub type FaceId = usize;
pub type DartId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("rotation system is not genus 0: V - E + F = {euler}")]
    NotGenusZero { euler: i64 },
    #[error("vertex {vertex} is not on face {face}")]
    NotOnFace { vertex: Vertex, face: FaceId },
    #[error("no plane embedding found: {0}")]
    NonPlanarOrTooLarge(EmbedFailure),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("embedding file: {0}")]
    Json(String),
}

/// Why [`brute_force_embed`] gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedFailure {
    /// Every rotation system was tried and none is genus 0.
    NonPlanar,
    /// The graph exceeds the vertex bound or the rotation budget.
    TooLarge,
    Disconnected,
}

impl std::fmt::Display for EmbedFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EmbedFailure::NonPlanar => "graph is not planar",
            EmbedFailure::TooLarge => "graph exceeds the brute-force bound",
            EmbedFailure::Disconnected => "graph is not connected",
        })
    }
}

/// Cyclic order of neighbors around each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    pub order: Vec<Vec<Vertex>>,
}

impl RotationSystem {
    pub fn new(order: Vec<Vec<Vertex>>) -> Self {
        RotationSystem { order }
    }

    /// Rotation induced by a straight-line drawing: neighbors sorted
    /// counter-clockwise by angle.
    pub fn from_coordinates(g: &Graph, pts: &[(f64, f64)]) -> Self {
        let order = (0..g.n())
            .map(|v| {
                let (x0, y0) = pts[v];
                let mut nbrs = g.neighbors(v).to_vec();
                nbrs.sort_by(|&a, &b| {
                    let ta = (pts[a].1 - y0).atan2(pts[a].0 - x0);
                    let tb = (pts[b].1 - y0).atan2(pts[b].0 - x0);
                    ta.total_cmp(&tb)
                });
                nbrs
            })
            .collect();
        RotationSystem { order }
    }

    /// The graph described by the rotation lists, checking that they are
    /// symmetric and free of loops and repeats.
    pub fn to_graph(&self) -> Result<Graph, EmbeddingError> {
        let n = self.order.len();
        let mut pairs = Vec::new();
        for (u, list) in self.order.iter().enumerate() {
            let distinct: BTreeSet<_> = list.iter().collect();
            if distinct.len() != list.len() {
                return Err(EmbeddingError::InvalidRotation(format!("vertex {u} lists a neighbor twice")));
            }
            for &v in list {
                if v >= n {
                    return Err(EmbeddingError::InvalidRotation(format!("vertex {u} lists unknown vertex {v}")));
                }
                if !self.order[v].contains(&u) {
                    return Err(EmbeddingError::InvalidRotation(format!("{u} lists {v} but not conversely")));
                }
                pairs.push((u, v));
            }
        }
        Ok(Graph::new(n, pairs)?)
    }

    fn validate_for(&self, g: &Graph) -> Result<(), EmbeddingError> {
        if self.order.len() != g.n() {
            return Err(EmbeddingError::InvalidRotation(format!(
                "rotation covers {} vertices, graph has {}",
                self.order.len(),
                g.n()
            )));
        }
        for v in 0..g.n() {
            let mut sorted = self.order[v].clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(EmbeddingError::InvalidRotation(format!(
                    "order at vertex {v} is not a permutation of its neighbors"
                )));
            }
        }
        Ok(())
    }
}

/// A facial walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Darts in walk order.
    pub darts: Vec<DartId>,
    /// `vertices[i]` is the tail of `darts[i]`.
    pub vertices: Vec<Vertex>,
}

impl Face {
    /// Boundary length, counting repeated vertices.
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

/// Position of a vertex occurrence on a facial walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Corner {
    pub face: FaceId,
    pub pos: usize,
}

/// `classify_vertex` outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Richness {
    Poor,
    SemiRich,
    Rich,
}

/// A connected graph with a genus-0 rotation system and its traced faces.
#[derive(Debug, Clone)]
pub struct PlaneEmbedding {
    graph: Graph,
    rotation: RotationSystem,
    dart_ends: Vec<(Vertex, Vertex)>,
    dart_edge: Vec<EdgeId>,
    reverse: Vec<DartId>,
    dart_face: Vec<FaceId>,
    dart_pos: Vec<usize>,
    faces: Vec<Face>,
    corners: Vec<Vec<Corner>>,
}

struct Darts {
    offset: Vec<usize>,
    ends: Vec<(Vertex, Vertex)>,
    reverse: Vec<DartId>,
    next: Vec<DartId>,
}

fn build_darts(rot: &RotationSystem) -> Darts {
    let n = rot.order.len();
    let mut offset = Vec::with_capacity(n + 1);
    let mut total = 0;
    for list in &rot.order {
        offset.push(total);
        total += list.len();
    }
    offset.push(total);
    let mut ends = Vec::with_capacity(total);
    for (u, list) in rot.order.iter().enumerate() {
        ends.extend(list.iter().map(|&v| (u, v)));
    }
    let pos_of = |v: Vertex, u: Vertex| rot.order[v].iter().position(|&w| w == u).expect("symmetric");
    let mut reverse = vec![0; total];
    let mut next = vec![0; total];
    for d in 0..total {
        let (u, v) = ends[d];
        let p = pos_of(v, u);
        reverse[d] = offset[v] + p;
        next[d] = offset[v] + (p + 1) % rot.order[v].len();
    }
    Darts { offset, ends, reverse, next }
}

/// Traces the faces of `rot` on `g` and checks Euler's formula.
pub fn trace_faces(g: &Graph, rot: &RotationSystem) -> Result<PlaneEmbedding, EmbeddingError> {
    PlaneEmbedding::new(g.clone(), rot.clone())
}

impl PlaneEmbedding {
    pub fn new(graph: Graph, rotation: RotationSystem) -> Result<Self, EmbeddingError> {
        rotation.validate_for(&graph)?;
        if !graph.is_connected() || graph.n() == 0 {
            return Err(EmbeddingError::Disconnected);
        }
        let darts = build_darts(&rotation);
        let total = darts.ends.len();
        let mut dart_face = vec![usize::MAX; total];
        let mut dart_pos = vec![0; total];
        let mut faces = Vec::new();
        for start in 0..total {
            if dart_face[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut face = Face { darts: Vec::new(), vertices: Vec::new() };
            let mut cur = start;
            while dart_face[cur] == usize::MAX {
                dart_face[cur] = id;
                dart_pos[cur] = face.darts.len();
                face.darts.push(cur);
                face.vertices.push(darts.ends[cur].0);
                cur = darts.next[cur];
            }
            faces.push(face);
        }
        if faces.is_empty() {
            // A single vertex: one face with an empty boundary.
            faces.push(Face { darts: Vec::new(), vertices: Vec::new() });
        }
        let euler = graph.n() as i64 - graph.edge_count() as i64 + faces.len() as i64;
        if euler != 2 {
            return Err(EmbeddingError::NotGenusZero { euler });
        }
        let mut corners = vec![Vec::new(); graph.n()];
        for (fid, face) in faces.iter().enumerate() {
            for (pos, &v) in face.vertices.iter().enumerate() {
                corners[v].push(Corner { face: fid, pos });
            }
        }
        let dart_edge = darts
            .ends
            .iter()
            .map(|&(u, v)| graph.edge_id(u, v).expect("dart of an edge"))
            .collect();
        debug_assert_eq!(darts.offset.len(), graph.n() + 1);
        Ok(PlaneEmbedding {
            graph,
            rotation,
            dart_ends: darts.ends,
            dart_edge,
            reverse: darts.reverse,
            dart_face,
            dart_pos,
            faces,
            corners,
        })
    }

    /// Loads the JSON embedding document `{"n": .., "rotation": [[..], ..]}`.
    pub fn from_json(text: &str) -> Result<Self, EmbeddingError> {
        let file: EmbeddingFile = serde_json::from_str(text).map_err(|e| EmbeddingError::Json(e.to_string()))?;
        if file.rotation.len() != file.n {
            return Err(EmbeddingError::Json(format!(
                "n = {} but rotation has {} entries",
                file.n,
                file.rotation.len()
            )));
        }
        let rot = RotationSystem::new(file.rotation);
        let g = rot.to_graph()?;
        PlaneEmbedding::new(g, rot)
    }

    pub fn to_json(&self) -> String {
        let file = EmbeddingFile { n: self.graph.n(), rotation: self.rotation.order.clone() };
        serde_json::to_string(&file).expect("serializable")
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &RotationSystem {
        &self.rotation
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn face_len(&self, f: FaceId) -> usize {
        self.faces[f].len()
    }

    pub fn dart_count(&self) -> usize {
        self.dart_ends.len()
    }

    pub fn dart_ends(&self, d: DartId) -> (Vertex, Vertex) {
        self.dart_ends[d]
    }

    pub fn dart_edge(&self, d: DartId) -> EdgeId {
        self.dart_edge[d]
    }

    pub fn reverse(&self, d: DartId) -> DartId {
        self.reverse[d]
    }

    pub fn dart_face(&self, d: DartId) -> FaceId {
        self.dart_face[d]
    }

    /// Face on the other side of dart `d`.
    pub fn across(&self, d: DartId) -> FaceId {
        self.dart_face[self.reverse[d]]
    }

    /// Position of dart `d` within its face's walk.
    pub fn dart_position(&self, d: DartId) -> usize {
        self.dart_pos[d]
    }

    /// Vertex occurrences on facial walks, grouped by vertex.
    pub fn corners(&self, v: Vertex) -> &[Corner] {
        &self.corners[v]
    }

    /// Distinct faces incident to `v`.
    pub fn faces_at(&self, v: Vertex) -> BTreeSet<FaceId> {
        self.corners[v].iter().map(|c| c.face).collect()
    }

    pub fn is_on_face(&self, v: Vertex, f: FaceId) -> bool {
        self.faces[f].vertices.contains(&v)
    }

    /// For each boundary dart of `f`, the edge and the face across it.
    /// Across a bridge the neighbor is `f` itself.
    pub fn face_adjacency(&self, f: FaceId) -> Vec<(EdgeId, FaceId)> {
        self.faces[f]
            .darts
            .iter()
            .map(|&d| (self.dart_edge[d], self.across(d)))
            .collect()
    }

    /// Whether faces `f` and `g` share at least one edge.
    pub fn faces_adjacent(&self, f: FaceId, g: FaceId) -> bool {
        self.faces[f].darts.iter().any(|&d| self.across(d) == g)
    }

    /// Whether faces share an edge, counted with multiplicity.
    pub fn shared_edges(&self, f: FaceId, g: FaceId) -> usize {
        self.faces[f].darts.iter().filter(|&&d| self.across(d) == g).count()
    }

    /// Poor, semi-rich or rich: the number of distinct 3-faces incident to
    /// `v` that share an edge with `f` is two or more, one, or zero.
    pub fn classify_vertex(&self, v: Vertex, f: FaceId) -> Result<Richness, EmbeddingError> {
        if !self.is_on_face(v, f) {
            return Err(EmbeddingError::NotOnFace { vertex: v, face: f });
        }
        let count = self
            .faces_at(v)
            .into_iter()
            .filter(|&t| t != f && self.face_len(t) == 3 && self.faces_adjacent(t, f))
            .count();
        Ok(match count {
            0 => Richness::Rich,
            1 => Richness::SemiRich,
            _ => Richness::Poor,
        })
    }

    /// Σ over vertices and faces of `(d(x) - 4)`.
    pub fn charge_sum(&self) -> i64 {
        let v: i64 = (0..self.graph.n()).map(|v| self.graph.degree(v) as i64 - 4).sum();
        let f: i64 = self.faces.iter().map(|f| f.len() as i64 - 4).sum();
        v + f
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct EmbeddingFile {
    n: usize,
    rotation: Vec<Vec<Vertex>>,
}

/// Default vertex bound for [`brute_force_embed`].
pub const BRUTE_FORCE_MAX_N: usize = 9;
/// Default cap on search nodes visited by [`brute_force_embed`].
pub const BRUTE_FORCE_BUDGET: u64 = 20_000_000;

/// Searches the rotation systems of a small connected graph for one that is
/// genus 0, using the default bounds.
pub fn brute_force_embed(g: &Graph) -> Result<PlaneEmbedding, EmbeddingError> {
    brute_force_embed_with(g, BRUTE_FORCE_MAX_N, BRUTE_FORCE_BUDGET)
}

pub fn brute_force_embed_with(g: &Graph, max_n: usize, budget: u64) -> Result<PlaneEmbedding, EmbeddingError> {
    let fail = |why| Err(EmbeddingError::NonPlanarOrTooLarge(why));
    if g.n() > max_n {
        return fail(EmbedFailure::TooLarge);
    }
    if !g.is_connected() || g.n() == 0 {
        return fail(EmbedFailure::Disconnected);
    }
    let (n, e) = (g.n(), g.edge_count());
    if n >= 3 && e > 3 * n - 6 {
        return fail(EmbedFailure::NonPlanar);
    }
    if e == 0 {
        // A lone vertex: no darts, one face.
        return PlaneEmbedding::new(g.clone(), RotationSystem::new(vec![Vec::new()]));
    }
    let mut search = EdgeInsertion::new(g);
    match search.run(0, budget) {
        Some(true) => PlaneEmbedding::new(g.clone(), RotationSystem::new(search.rot)),
        Some(false) => fail(EmbedFailure::NonPlanar),
        None => fail(EmbedFailure::TooLarge),
    }
}

enum Step {
    /// Attach a new vertex to a placed one.
    Pendant { from: Vertex, new: Vertex },
    /// Join two placed vertices across a face.
    Chord(Vertex, Vertex),
}

/// Builds a rotation system edge by edge: vertices in BFS order, each first
/// hung into a corner of its parent, then joined to earlier neighbors by
/// chords across a face holding both ends. Every genus-0 rotation system of
/// `g` restricts to one of every connected prefix, so trying all corners
/// finds one whenever it exists; a chord with no common face ends the
/// branch.
struct EdgeInsertion {
    steps: Vec<Step>,
    rot: Vec<Vec<Vertex>>,
    nodes: u64,
}

impl EdgeInsertion {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut pos = vec![usize::MAX; n];
        let mut order = vec![0];
        pos[0] = 0;
        let mut steps = Vec::new();
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in g.neighbors(x) {
                if pos[y] != usize::MAX {
                    continue;
                }
                pos[y] = order.len();
                order.push(y);
                steps.push(Step::Pendant { from: x, new: y });
                for &z in g.neighbors(y) {
                    if z != x && pos[z] < pos[y] {
                        steps.push(Step::Chord(y, z));
                    }
                }
            }
        }
        EdgeInsertion { steps, rot: vec![Vec::new(); n], nodes: 0 }
    }

    /// Faces of the current partial system as corner lists: `(v, a)` is
    /// the corner at `v` entered from `a`.
    fn faces(&self) -> Vec<Vec<(Vertex, Vertex)>> {
        let mut seen: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
        let mut out = Vec::new();
        for (u, list) in self.rot.iter().enumerate() {
            for &v in list {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                while seen.insert((a, b)) {
                    face.push((b, a));
                    let r = &self.rot[b];
                    let p = r.iter().position(|&w| w == a).expect("symmetric");
                    let c = r[(p + 1) % r.len()];
                    (a, b) = (b, c);
                }
                out.push(face);
            }
        }
        out
    }

    fn insert_after(&mut self, v: Vertex, after: Option<Vertex>, w: Vertex) {
        let at = after.map_or(0, |a| self.rot[v].iter().position(|&x| x == a).expect("present") + 1);
        self.rot[v].insert(at, w);
    }

    fn remove(&mut self, v: Vertex, w: Vertex) {
        self.rot[v].retain(|&x| x != w);
    }

    fn run(&mut self, i: usize, budget: u64) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > budget {
            return None;
        }
        let Some(step) = self.steps.get(i) else { return Some(true) };
        let options: Vec<(Vertex, Option<Vertex>, Vertex, Option<Vertex>)> = match *step {
            Step::Pendant { from, new } => {
                if self.rot[from].is_empty() {
                    vec![(from, None, new, None)]
                } else {
                    self.rot[from].iter().map(|&a| (from, Some(a), new, None)).collect()
                }
            }
            Step::Chord(u, w) => {
                let mut out = Vec::new();
                for face in self.faces() {
                    for &(x, a) in &face {
                        if x != u {
                            continue;
                        }
                        for &(y, c) in &face {
                            if y == w {
                                out.push((u, Some(a), w, Some(c)));
                            }
                        }
                    }
                }
                out
            }
        };
        for (u, a, w, c) in options {
            self.insert_after(u, a, w);
            self.insert_after(w, c, u);
            match self.run(i + 1, budget) {
                Some(false) => {}
                done => return done,
            }
            self.remove(u, w);
            self.remove(w, u);
        }
        Some(false)
    }
}
