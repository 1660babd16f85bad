//! Correspondence (DP) coloring: list assignments, matching assignments,
//! cover graphs and the exact coloring search.
//!
//! A matching assignment carries, for every edge `uv`, a matching between
//! the colors of `u` and the colors of `v`. A DP-coloring picks one color per
//! vertex so that no edge has both of its chosen colors matched to each
//! other; equivalently, the chosen cover-graph nodes form an independent
//! transversal of the per-vertex cliques.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, Vertex};

/// Colors are small non-negative integers.
pub type Color = u16;

/// Colors must stay below this so residual lists fit in a `u64` bitmask.
pub const MAX_COLORS: usize = 64;

const UNMATCHED: Color = Color::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DpError {
    #[error("invalid matching on edge {u}-{v}: {reason}")]
    InvalidMatching { u: Vertex, v: Vertex, reason: String },
    #[error("list assignment has {got} lists for {n} vertices")]
    ListCountMismatch { n: usize, got: usize },
    #[error("list of vertex {0} is empty")]
    EmptyList(Vertex),
    #[error("color {0} exceeds the supported range (< {MAX_COLORS})")]
    ColorOutOfRange(usize),
    #[error("lists are not all of size {expected}: vertex {vertex} has {got}")]
    NonUniformLists { expected: usize, vertex: Vertex, got: usize },
    #[error("edge set is not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("matching file line {line}: {reason}")]
    MatchingFile { line: usize, reason: String },
}

/// Per-vertex color lists, each sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn new(mut lists: Vec<Vec<Color>>) -> Result<Self, DpError> {
        for (v, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.is_empty() {
                return Err(DpError::EmptyList(v));
            }
            if let Some(&c) = list.last() {
                if c as usize >= MAX_COLORS {
                    return Err(DpError::ColorOutOfRange(c as usize));
                }
            }
        }
        Ok(ListAssignment { lists })
    }

    /// `L(v) = {0, .., k-1}` for every vertex.
    pub fn uniform(n: usize, k: usize) -> Self {
        assert!((1..=MAX_COLORS).contains(&k));
        ListAssignment { lists: vec![(0..k as Color).collect(); n] }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: Vertex) -> &[Color] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    pub fn contains(&self, v: Vertex, c: Color) -> bool {
        self.lists[v].binary_search(&c).is_ok()
    }

    fn mask(&self, v: Vertex) -> u64 {
        self.lists[v].iter().fold(0, |m, &c| m | 1 << c)
    }

    /// The common list size, if all lists have the same size.
    pub fn uniform_size(&self) -> Option<usize> {
        let k = self.lists.first()?.len();
        self.lists.iter().all(|l| l.len() == k).then_some(k)
    }
}

/// A matching between the colors of an edge's endpoints, stored as partial
/// permutation arrays indexed by color.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Matching {
    /// `low[c]`: partner at the larger endpoint of the color `c` at the
    /// smaller endpoint.
    low: Vec<Color>,
    high: Vec<Color>,
}

impl Matching {
    pub fn empty() -> Self {
        Matching::default()
    }

    /// `{(i, i) : i < k}`.
    pub fn identity(k: usize) -> Self {
        let ids: Vec<Color> = (0..k as Color).collect();
        Matching { low: ids.clone(), high: ids }
    }

    /// Full matching `i -> perm[i]` from the smaller to the larger endpoint.
    pub fn from_permutation(perm: &[Color]) -> Self {
        let mut m = Matching::empty();
        for (i, &j) in perm.iter().enumerate() {
            m.insert(i as Color, j).expect("permutation is injective");
        }
        m
    }

    /// Pairs `(color at smaller endpoint, color at larger endpoint)`.
    pub fn from_pairs(pairs: &[(Color, Color)]) -> Result<Self, String> {
        let mut m = Matching::empty();
        for &(a, b) in pairs {
            m.insert(a, b)?;
        }
        Ok(m)
    }

    fn insert(&mut self, a: Color, b: Color) -> Result<(), String> {
        if a as usize >= MAX_COLORS || b as usize >= MAX_COLORS {
            return Err(format!("color out of range in pair {a}-{b}"));
        }
        for (side, c) in [(&mut self.low, a), (&mut self.high, b)] {
            if side.len() <= c as usize {
                side.resize(c as usize + 1, UNMATCHED);
            }
        }
        if self.low[a as usize] != UNMATCHED {
            return Err(format!("color {a} matched twice"));
        }
        if self.high[b as usize] != UNMATCHED {
            return Err(format!("color {b} matched twice"));
        }
        self.low[a as usize] = b;
        self.high[b as usize] = a;
        Ok(())
    }

    /// Partner of color `c` at the smaller endpoint.
    pub fn partner_of_low(&self, c: Color) -> Option<Color> {
        self.low.get(c as usize).copied().filter(|&p| p != UNMATCHED)
    }

    /// Partner of color `c` at the larger endpoint.
    pub fn partner_of_high(&self, c: Color) -> Option<Color> {
        self.high.get(c as usize).copied().filter(|&p| p != UNMATCHED)
    }

    pub fn pairs(&self) -> Vec<(Color, Color)> {
        self.low
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != UNMATCHED)
            .map(|(a, &b)| (a as Color, b))
            .collect()
    }

    pub fn size(&self) -> usize {
        self.low.iter().filter(|&&b| b != UNMATCHED).count()
    }

    pub fn contains(&self, a: Color, b: Color) -> bool {
        self.partner_of_low(a) == Some(b)
    }

    pub fn is_subset_of(&self, other: &Matching) -> bool {
        self.pairs().into_iter().all(|(a, b)| other.contains(a, b))
    }
}

/// One matching per edge of the graph, indexed by [`EdgeId`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatchingAssignment {
    matchings: Vec<Matching>,
}

impl MatchingAssignment {
    pub fn empty(g: &Graph) -> Self {
        MatchingAssignment { matchings: vec![Matching::empty(); g.edge_count()] }
    }

    /// Identity matchings on every edge: colorings are proper colorings.
    pub fn identity(g: &Graph, k: usize) -> Self {
        MatchingAssignment { matchings: vec![Matching::identity(k); g.edge_count()] }
    }

    pub fn from_matchings(matchings: Vec<Matching>) -> Self {
        MatchingAssignment { matchings }
    }

    pub fn matching(&self, e: EdgeId) -> &Matching {
        &self.matchings[e]
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    pub fn set(&mut self, e: EdgeId, m: Matching) {
        self.matchings[e] = m;
    }

    /// Partner at `to` of color `c` at `from`, across the edge `from-to`.
    pub fn partner(&self, g: &Graph, from: Vertex, to: Vertex, c: Color) -> Option<Color> {
        let e = g.edge_id(from, to)?;
        self.partner_on(e, from < to, c)
    }

    #[inline]
    fn partner_on(&self, e: EdgeId, from_low: bool, c: Color) -> Option<Color> {
        let m = &self.matchings[e];
        if from_low {
            m.partner_of_low(c)
        } else {
            m.partner_of_high(c)
        }
    }

    /// Checks edge count, membership of matched colors in the lists and
    /// injectivity (the latter is structural in [`Matching`]).
    pub fn validate(&self, g: &Graph, lists: &ListAssignment) -> Result<(), DpError> {
        if lists.len() != g.n() {
            return Err(DpError::ListCountMismatch { n: g.n(), got: lists.len() });
        }
        if self.matchings.len() != g.edge_count() {
            return Err(DpError::InvalidMatching {
                u: 0,
                v: 0,
                reason: format!("{} matchings for {} edges", self.matchings.len(), g.edge_count()),
            });
        }
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            for (a, b) in self.matchings[e].pairs() {
                if !lists.contains(u, a) || !lists.contains(v, b) {
                    return Err(DpError::InvalidMatching {
                        u,
                        v,
                        reason: format!("pair {a}-{b} uses a color outside the lists"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Whether every matching of `self` is contained in the one of `other`.
    pub fn is_subset_of(&self, other: &MatchingAssignment) -> bool {
        self.matchings.iter().zip(&other.matchings).all(|(a, b)| a.is_subset_of(b))
    }
}

/// The cover graph: nodes `(v, c)` for `c in L(v)`, a clique on each
/// `L_v`, and exactly the matching edges between adjacent vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverGraph {
    pub nodes: Vec<(Vertex, Color)>,
    pub edges: Vec<(usize, usize)>,
}

impl CoverGraph {
    pub fn node_index(&self, v: Vertex, c: Color) -> Option<usize> {
        self.nodes.binary_search(&(v, c)).ok()
    }

    /// Whether the given nodes are pairwise non-adjacent.
    pub fn is_independent(&self, chosen: &[usize]) -> bool {
        let mut mark = vec![false; self.nodes.len()];
        for &x in chosen {
            mark[x] = true;
        }
        !self.edges.iter().any(|&(a, b)| mark[a] && mark[b])
    }
}

pub fn build_cover(g: &Graph, lists: &ListAssignment, m: &MatchingAssignment) -> Result<CoverGraph, DpError> {
    m.validate(g, lists)?;
    let nodes: Vec<(Vertex, Color)> = (0..g.n())
        .flat_map(|v| lists.list(v).iter().map(move |&c| (v, c)))
        .collect();
    let mut cover = CoverGraph { nodes, edges: Vec::new() };
    let mut start = 0;
    for v in 0..g.n() {
        let k = lists.list(v).len();
        for i in 0..k {
            for j in i + 1..k {
                cover.edges.push((start + i, start + j));
            }
        }
        start += k;
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        for (a, b) in m.matching(e).pairs() {
            let x = cover.node_index(u, a).expect("validated");
            let y = cover.node_index(v, b).expect("validated");
            cover.edges.push((x, y));
        }
    }
    Ok(cover)
}

/// One color per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DpColoring(pub Vec<Color>);

impl DpColoring {
    pub fn color(&self, v: Vertex) -> Color {
        self.0[v]
    }
}

/// Independent validity check: every color comes from its list and no edge
/// has its two chosen colors matched.
pub fn is_valid_coloring(g: &Graph, lists: &ListAssignment, m: &MatchingAssignment, coloring: &[Color]) -> bool {
    coloring.len() == g.n()
        && (0..g.n()).all(|v| lists.contains(v, coloring[v]))
        && g
            .edges()
            .iter()
            .enumerate()
            .all(|(e, &(u, v))| !m.matching(e).contains(coloring[u], coloring[v]))
}

/// Checks a partial coloring (`None` = uncolored) on the colored vertices.
pub fn is_valid_partial(g: &Graph, lists: &ListAssignment, m: &MatchingAssignment, partial: &[Option<Color>]) -> bool {
    partial.len() == g.n()
        && partial
            .iter()
            .enumerate()
            .all(|(v, c)| c.is_none_or(|c| lists.contains(v, c)))
        && g.edges().iter().enumerate().all(|(e, &(u, v))| match (partial[u], partial[v]) {
            (Some(a), Some(b)) => !m.matching(e).contains(a, b),
            _ => true,
        })
}

/// Finds a DP-coloring or proves none exists.
pub fn find_coloring(g: &Graph, lists: &ListAssignment, m: &MatchingAssignment) -> Result<Option<DpColoring>, DpError> {
    m.validate(g, lists)?;
    Ok(search_unchecked(g, lists, m))
}

/// Exact search without input validation, for hot loops whose inputs are
/// valid by construction.
pub(crate) fn search_unchecked(g: &Graph, lists: &ListAssignment, m: &MatchingAssignment) -> Option<DpColoring> {
    let domains: Vec<u64> = (0..g.n()).map(|v| lists.mask(v)).collect();
    let incident: Vec<Vec<(Vertex, EdgeId)>> = (0..g.n())
        .map(|v| g.neighbors(v).iter().map(|&w| (w, g.edge_id(v, w).expect("edge"))).collect())
        .collect();
    let mut search = Search {
        incident: &incident,
        m,
        domains,
        color: vec![UNMATCHED; g.n()],
        trail: Vec::new(),
    };
    search.solve(g.n()).then_some(DpColoring(search.color))
}

struct Search<'a> {
    incident: &'a [Vec<(Vertex, EdgeId)>],
    m: &'a MatchingAssignment,
    domains: Vec<u64>,
    color: Vec<Color>,
    trail: Vec<(Vertex, u64)>,
}

impl Search<'_> {
    /// Fail-first: the uncolored vertex with the fewest remaining colors,
    /// smallest index on ties.
    fn pick(&self) -> Option<Vertex> {
        (0..self.color.len())
            .filter(|&v| self.color[v] == UNMATCHED)
            .min_by_key(|&v| (self.domains[v].count_ones(), v))
    }

    fn solve(&mut self, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        let v = self.pick().expect("uncolored vertex remains");
        let mut options = self.domains[v];
        while options != 0 {
            let c = options.trailing_zeros() as Color;
            options &= options - 1;
            let mark = self.trail.len();
            self.color[v] = c;
            let mut wiped = false;
            for &(w, e) in &self.incident[v] {
                if self.color[w] != UNMATCHED {
                    continue;
                }
                if let Some(p) = self.m.partner_on(e, v < w, c) {
                    let bit = 1u64 << p;
                    if self.domains[w] & bit != 0 {
                        self.trail.push((w, self.domains[w]));
                        self.domains[w] &= !bit;
                        if self.domains[w] == 0 {
                            wiped = true;
                            break;
                        }
                    }
                }
            }
            if !wiped && self.solve(remaining - 1) {
                return true;
            }
            while self.trail.len() > mark {
                let (w, d) = self.trail.pop().expect("trail entry");
                self.domains[w] = d;
            }
            self.color[v] = UNMATCHED;
        }
        false
    }
}

/// Result of [`from_list_assignment`]: lists relabeled to `[k]` plus the
/// matching assignment pairing equal original colors.
#[derive(Debug, Clone)]
pub struct ListReduction {
    pub lists: ListAssignment,
    pub matching: MatchingAssignment,
    /// `original[v][i]` is the original color behind relabeled color `i`.
    pub original: Vec<Vec<Color>>,
}

impl ListReduction {
    /// Transports a coloring of the relabeled instance back to the original
    /// colors.
    pub fn pull_back(&self, coloring: &DpColoring) -> Vec<Color> {
        coloring.0.iter().enumerate().map(|(v, &c)| self.original[v][c as usize]).collect()
    }
}

/// Reduces `L'`-coloring to DP-coloring: each list is mapped to `[k]` by
/// rank, and each edge matches the ranks of shared colors.
pub fn from_list_assignment(g: &Graph, lists: &ListAssignment) -> Result<ListReduction, DpError> {
    let k = lists.list(0).len();
    for v in 0..lists.len() {
        if lists.list(v).len() != k {
            return Err(DpError::NonUniformLists { expected: k, vertex: v, got: lists.list(v).len() });
        }
    }
    if lists.len() != g.n() {
        return Err(DpError::ListCountMismatch { n: g.n(), got: lists.len() });
    }
    let matchings = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let pairs: Vec<(Color, Color)> = lists
                .list(u)
                .iter()
                .enumerate()
                .filter_map(|(i, c)| {
                    let j = lists.list(v).binary_search(c).ok()?;
                    Some((i as Color, j as Color))
                })
                .collect();
            Matching::from_pairs(&pairs).expect("ranks of distinct colors")
        })
        .collect();
    Ok(ListReduction {
        lists: ListAssignment::uniform(g.n(), k),
        matching: MatchingAssignment::from_matchings(matchings),
        original: lists.lists().to_vec(),
    })
}

/// A relabeled matching assignment together with the per-vertex color
/// permutations that produced it.
#[derive(Debug, Clone)]
pub struct GaugeNormalized {
    pub matching: MatchingAssignment,
    /// `relabel[v][old] = new`.
    pub relabel: Vec<Vec<Color>>,
}

impl GaugeNormalized {
    /// Maps a coloring of the normalized instance back to the original.
    pub fn transport_back(&self, coloring: &DpColoring) -> DpColoring {
        let inverse: Vec<Vec<Color>> = self
            .relabel
            .iter()
            .map(|p| {
                let mut inv = vec![0; p.len()];
                for (old, &new) in p.iter().enumerate() {
                    inv[new as usize] = old as Color;
                }
                inv
            })
            .collect();
        DpColoring(coloring.0.iter().enumerate().map(|(v, &c)| inverse[v][c as usize]).collect())
    }
}

/// Relabels colors vertex by vertex so that every edge of the spanning
/// forest `tree` carries the identity matching. Lists must be `[k]`, and
/// tree edges must carry perfect matchings.
pub fn gauge_normalize(g: &Graph, k: usize, m: &MatchingAssignment, tree: &[EdgeId]) -> Result<GaugeNormalized, DpError> {
    let components = g.components().len();
    if tree.len() + components != g.n() {
        return Err(DpError::NotSpanningTree(format!(
            "{} edges cannot span {} vertices in {} components",
            tree.len(),
            g.n(),
            components
        )));
    }
    let mut tree_adj: Vec<Vec<(Vertex, EdgeId)>> = vec![Vec::new(); g.n()];
    for &e in tree {
        let &(u, v) = g
            .edges()
            .get(e)
            .ok_or_else(|| DpError::NotSpanningTree(format!("edge id {e} out of range")))?;
        if m.matching(e).size() != k {
            return Err(DpError::InvalidMatching { u, v, reason: "tree edge matching is not perfect".into() });
        }
        tree_adj[u].push((v, e));
        tree_adj[v].push((u, e));
    }
    let mut relabel: Vec<Option<Vec<Color>>> = vec![None; g.n()];
    for root in 0..g.n() {
        if relabel[root].is_some() {
            continue;
        }
        relabel[root] = Some((0..k as Color).collect());
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            let px = relabel[x].clone().expect("assigned");
            for &(y, e) in &tree_adj[x] {
                if relabel[y].is_some() {
                    continue;
                }
                // sigma_y(b) = sigma_x(a) for each matched pair (a at x, b at y).
                let mut py = vec![UNMATCHED; k];
                for a in 0..k as Color {
                    let b = m.partner_on(e, x < y, a).expect("perfect matching");
                    py[b as usize] = px[a as usize];
                }
                relabel[y] = Some(py);
                stack.push(y);
            }
        }
    }
    let relabel: Vec<Vec<Color>> = relabel.into_iter().map(|p| p.expect("all vertices reached")).collect();
    if tree.iter().collect::<std::collections::BTreeSet<_>>().len() != tree.len() {
        return Err(DpError::NotSpanningTree("repeated edge".into()));
    }
    let matchings = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            let pairs: Vec<(Color, Color)> = m
                .matching(e)
                .pairs()
                .into_iter()
                .map(|(a, b)| (relabel[u][a as usize], relabel[v][b as usize]))
                .collect();
            Matching::from_pairs(&pairs).expect("relabeling preserves injectivity")
        })
        .collect();
    let normalized = MatchingAssignment::from_matchings(matchings);
    for &e in tree {
        if *normalized.matching(e) != Matching::identity(k) {
            // Only possible when `tree` contains a cycle.
            return Err(DpError::NotSpanningTree("tree edges contain a cycle".into()));
        }
    }
    Ok(GaugeNormalized { matching: normalized, relabel })
}

/// Parsed matching-assignment file.
#[derive(Debug, Clone)]
pub struct MatchingFile {
    /// Set by a `default identity k=K` directive.
    pub default_identity: Option<usize>,
    /// Explicit per-edge matchings keyed by `(min, max)` endpoints, as pairs
    /// `(color at first-listed vertex, color at second-listed vertex)`
    /// normalized to the smaller endpoint first.
    pub edges: BTreeMap<(Vertex, Vertex), Vec<(Color, Color)>>,
}

impl MatchingFile {
    /// Parses lines `u v : a-b, c-d` and the `default identity k=K`
    /// directive. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, DpError> {
        let mut out = MatchingFile { default_identity: None, edges: BTreeMap::new() };
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: String| DpError::MatchingFile { line: idx + 1, reason };
            if let Some(rest) = line.strip_prefix("default") {
                let rest = rest.trim();
                let k = rest
                    .strip_prefix("identity")
                    .map(str::trim)
                    .and_then(|r| r.strip_prefix("k="))
                    .and_then(|r| r.trim().parse::<usize>().ok())
                    .ok_or_else(|| err("expected `default identity k=K`".into()))?;
                out.default_identity = Some(k);
                continue;
            }
            let (head, body) = line.split_once(':').ok_or_else(|| err("expected `u v : pairs`".into()))?;
            let ends: Vec<usize> = head
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| err(format!("bad vertex `{t}`"))))
                .collect::<Result<_, _>>()?;
            let [u, v] = ends[..] else {
                return Err(err("expected two vertices before `:`".into()));
            };
            let mut pairs = Vec::new();
            for tok in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let (a, b) = tok.split_once('-').ok_or_else(|| err(format!("bad pair `{tok}`")))?;
                let a: Color = a.trim().parse().map_err(|_| err(format!("bad color `{a}`")))?;
                let b: Color = b.trim().parse().map_err(|_| err(format!("bad color `{b}`")))?;
                pairs.push(if u <= v { (a, b) } else { (b, a) });
            }
            out.edges.insert((u.min(v), u.max(v)), pairs);
        }
        Ok(out)
    }

    /// Builds the assignment for `g`; edges not listed get the identity if
    /// the directive is present, otherwise the empty matching.
    pub fn to_assignment(&self, g: &Graph) -> Result<MatchingAssignment, DpError> {
        let mut m = match self.default_identity {
            Some(k) => MatchingAssignment::identity(g, k),
            None => MatchingAssignment::empty(g),
        };
        for (&(u, v), pairs) in &self.edges {
            let e = g.edge_id(u, v).ok_or_else(|| DpError::InvalidMatching {
                u,
                v,
                reason: "not an edge of the graph".into(),
            })?;
            let matching = Matching::from_pairs(pairs).map_err(|reason| DpError::InvalidMatching { u, v, reason })?;
            m.set(e, matching);
        }
        Ok(m)
    }
}

/// Writes every edge's matching explicitly, one line per edge.
pub fn format_matching_file(g: &Graph, m: &MatchingAssignment) -> String {
    let mut s = String::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let pairs: Vec<String> = m.matching(e).pairs().iter().map(|(a, b)| format!("{a}-{b}")).collect();
        let _ = writeln!(s, "{u} {v} : {}", pairs.join(", "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn brute_force(g: &Graph, k: usize, m: &MatchingAssignment) -> bool {
        let lists = ListAssignment::uniform(g.n(), k);
        let total = k.pow(g.n() as u32);
        (0..total).any(|mut code| {
            let c: Vec<Color> = (0..g.n())
                .map(|_| {
                    let x = (code % k) as Color;
                    code /= k;
                    x
                })
                .collect();
            is_valid_coloring(g, &lists, m, &c)
        })
    }

    #[test]
    fn cover_counts() {
        let k2 = families::complete(2);
        let l = ListAssignment::uniform(2, 2);
        let c = build_cover(&k2, &l, &MatchingAssignment::identity(&k2, 2)).unwrap();
        assert_eq!((c.nodes.len(), c.edges.len()), (4, 4));
        let c = build_cover(&k2, &l, &MatchingAssignment::empty(&k2)).unwrap();
        assert_eq!((c.nodes.len(), c.edges.len()), (4, 2));
        let c3 = families::cycle(3);
        let c = build_cover(&c3, &ListAssignment::uniform(3, 3), &MatchingAssignment::identity(&c3, 3)).unwrap();
        assert_eq!((c.nodes.len(), c.edges.len()), (9, 18));
    }

    #[test]
    fn invalid_matching_rejected() {
        let k2 = families::complete(2);
        let l = ListAssignment::uniform(2, 2);
        let m = MatchingAssignment::from_matchings(vec![Matching::from_pairs(&[(0, 2)]).unwrap()]);
        assert!(matches!(build_cover(&k2, &l, &m), Err(DpError::InvalidMatching { .. })));
        assert!(Matching::from_pairs(&[(0, 1), (0, 0)]).is_err());
        assert!(Matching::from_pairs(&[(0, 1), (1, 1)]).is_err());
    }

    #[test]
    fn c4_with_one_swap() {
        let c4 = families::cycle(4);
        let l = ListAssignment::uniform(4, 2);
        let id = MatchingAssignment::identity(&c4, 2);
        let col = find_coloring(&c4, &l, &id).unwrap().unwrap();
        assert!(is_valid_coloring(&c4, &l, &id, &col.0));
        let mut twisted = id.clone();
        twisted.set(0, Matching::from_pairs(&[(0, 1), (1, 0)]).unwrap());
        assert_eq!(find_coloring(&c4, &l, &twisted).unwrap(), None);
        assert!(!brute_force(&c4, 2, &twisted));
    }

    #[test]
    fn single_vertex() {
        let g = Graph::empty(1);
        let l = ListAssignment::uniform(1, 1);
        assert_eq!(find_coloring(&g, &l, &MatchingAssignment::empty(&g)).unwrap(), Some(DpColoring(vec![0])));
    }

    #[test]
    fn list_reduction_examples() {
        let k2 = families::complete(2);
        let same = ListAssignment::new(vec![vec![1, 2, 3], vec![1, 2, 3]]).unwrap();
        let r = from_list_assignment(&k2, &same).unwrap();
        assert_eq!(r.matching.matching(0), &Matching::identity(3));

        let l = ListAssignment::new(vec![vec![1, 2], vec![2, 3]]).unwrap();
        let r = from_list_assignment(&k2, &l).unwrap();
        assert_eq!(r.matching.matching(0).pairs(), vec![(1, 0)]);

        let disjoint = ListAssignment::new(vec![vec![1, 2], vec![3, 4]]).unwrap();
        let r = from_list_assignment(&k2, &disjoint).unwrap();
        assert_eq!(r.matching.matching(0).size(), 0);

        let ragged = ListAssignment::new(vec![vec![1, 2], vec![3]]).unwrap();
        assert!(matches!(from_list_assignment(&k2, &ragged), Err(DpError::NonUniformLists { .. })));
    }

    #[test]
    fn list_reduction_pulls_back() {
        // Odd cycle with lists {0,1},{1,2},{0,2}: a proper list coloring exists.
        let c3 = families::cycle(3);
        let l = ListAssignment::new(vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let r = from_list_assignment(&c3, &l).unwrap();
        let col = find_coloring(&c3, &r.lists, &r.matching).unwrap().unwrap();
        let orig = r.pull_back(&col);
        for &(u, v) in c3.edges() {
            assert_ne!(orig[u], orig[v]);
        }
        for v in 0..3 {
            assert!(l.contains(v, orig[v]));
        }
    }

    #[test]
    fn gauge_examples() {
        let c4 = families::cycle(4);
        let tree = c4.spanning_forest();
        let id = MatchingAssignment::identity(&c4, 2);
        let g = gauge_normalize(&c4, 2, &id, &tree).unwrap();
        assert_eq!(g.matching, id);

        // Swap on a tree edge migrates to the single non-tree edge.
        let mut m = id.clone();
        let swap = Matching::from_pairs(&[(0, 1), (1, 0)]).unwrap();
        m.set(tree[0], swap.clone());
        let g = gauge_normalize(&c4, 2, &m, &tree).unwrap();
        let non_tree: Vec<EdgeId> = (0..4).filter(|e| !tree.contains(e)).collect();
        assert_eq!(non_tree.len(), 1);
        for e in 0..4 {
            let expect = if e == non_tree[0] { &swap } else { &Matching::identity(2) };
            assert_eq!(g.matching.matching(e), expect);
        }
        assert!(matches!(gauge_normalize(&c4, 2, &m, &tree[..2]), Err(DpError::NotSpanningTree(_))));
    }

    #[test]
    fn matching_file_roundtrip() {
        let c4 = families::cycle(4);
        let f = MatchingFile::parse("default identity k=2\n# twist\n3 0 : 0-1, 1-0\n").unwrap();
        let m = f.to_assignment(&c4).unwrap();
        assert_eq!(m.matching(c4.edge_id(0, 3).unwrap()).pairs(), vec![(0, 1), (1, 0)]);
        assert_eq!(m.matching(0), &Matching::identity(2));
        let back = MatchingFile::parse(&format_matching_file(&c4, &m)).unwrap().to_assignment(&c4).unwrap();
        assert_eq!(back, m);
        // Orientation: pairs are written as (first-listed, second-listed).
        let f = MatchingFile::parse("1 0 : 0-1\n").unwrap();
        let m = f.to_assignment(&families::complete(2)).unwrap();
        assert_eq!(m.matching(0).pairs(), vec![(1, 0)]);
        assert!(MatchingFile::parse("0 1 0-1").is_err());
        assert!(MatchingFile::parse("default identity k=x").is_err());
    }
}
