//! Reducible configurations: residual lists after coloring `G - H`, the
//! near-degenerate ordering conditions, constructive extension, and
//! pattern-driven certification.
//!
//! For an ordering `v1, .., vl` of `H` the conditions are:
//!
//! 1. `v1 vl` is an edge and `|A(v1)| > |A(vl)| >= 1`;
//! 2. `d(vl) <= k` and `vl` has a neighbor outside `H`;
//! 3. every interior `vi` has at most `k - 1` neighbors among
//!    `v1, .., v(i-1)` and `G - H` together.
//!
//! When they hold, any coloring of `G - H` extends to `G`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dp::{is_valid_coloring, is_valid_partial, Color, DpColoring, ListAssignment, Matching, MatchingAssignment};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("partial coloring is not a valid coloring of G - H: {0}")]
    InvalidPartial(String),
    #[error("ordering conditions violated: {0:?}")]
    ConditionsViolated(Vec<OrderingFailure>),
    #[error("vertex {vertex} has degree {degree}, not below k = {k}")]
    DegreeNotBelowK { vertex: Vertex, degree: usize, k: usize },
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("no color left for vertex {0}")]
    Stuck(Vertex),
}

/// Why an ordering fails the conditions. Indices are 1-based positions in
/// the ordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OrderingFailure {
    /// Fewer than two vertices, a repeat, or a vertex out of range.
    BadOrdering(String),
    /// `v1 vl` is not an edge.
    EndsNotAdjacent,
    /// `d(vl) > k`.
    LastDegree { degree: usize },
    /// `vl` has no neighbor outside `H`.
    LastHasNoOutsideNeighbor,
    /// Interior vertex with too many earlier or outside neighbors.
    Interior { index: usize, count: usize },
    /// `|A(v1)| > |A(vl)| >= 1` is not guaranteed for every coloring of
    /// `G - H`; bounds shown are worst-case.
    Condition1NotGuaranteed { first_min: usize, last_max: usize, last_min: usize },
    /// `|A(v1)| > |A(vl)| >= 1` fails for the actual residual lists.
    Condition1 { first: usize, last: usize },
}

impl fmt::Display for OrderingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingFailure::BadOrdering(s) => write!(f, "bad ordering: {s}"),
            OrderingFailure::EndsNotAdjacent => write!(f, "(1) first and last vertices not adjacent"),
            OrderingFailure::LastDegree { degree } => write!(f, "(2) last vertex has degree {degree}"),
            OrderingFailure::LastHasNoOutsideNeighbor => write!(f, "(2) last vertex has no neighbor outside H"),
            OrderingFailure::Interior { index, count } => {
                write!(f, "(3) v{index} has {count} earlier/outside neighbors")
            }
            OrderingFailure::Condition1NotGuaranteed { first_min, last_max, last_min } => write!(
                f,
                "(1) not guaranteed: |A(v1)| >= {first_min}, {last_min} <= |A(vl)| <= {last_max}"
            ),
            OrderingFailure::Condition1 { first, last } => write!(f, "(1) fails: |A(v1)| = {first}, |A(vl)| = {last}"),
        }
    }
}

/// Outcome of checking an ordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderingReport {
    pub failures: Vec<OrderingFailure>,
    /// Neighbors outside `H`, per ordering position.
    pub outside: Vec<usize>,
    /// Earlier neighbors inside `H`, per ordering position.
    pub earlier: Vec<usize>,
}

impl OrderingReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Degree data of an ordering, either read from a host graph or declared by
/// a pattern.
struct OrderShape {
    adjacent_ends: bool,
    last_degree: usize,
    outside: Vec<usize>,
    earlier: Vec<usize>,
}

fn shape_in_host(g: &Graph, order: &[Vertex]) -> Result<OrderShape, OrderingFailure> {
    if order.len() < 2 {
        return Err(OrderingFailure::BadOrdering("need at least two vertices".into()));
    }
    let mut pos = vec![None; g.n()];
    for (i, &v) in order.iter().enumerate() {
        if v >= g.n() {
            return Err(OrderingFailure::BadOrdering(format!("vertex {v} out of range")));
        }
        if pos[v].replace(i).is_some() {
            return Err(OrderingFailure::BadOrdering(format!("vertex {v} repeated")));
        }
    }
    let mut outside = vec![0; order.len()];
    let mut earlier = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        for &w in g.neighbors(v) {
            match pos[w] {
                None => outside[i] += 1,
                Some(j) if j < i => earlier[i] += 1,
                Some(_) => {}
            }
        }
    }
    let last = *order.last().expect("nonempty");
    Ok(OrderShape {
        adjacent_ends: g.has_edge(order[0], last),
        last_degree: g.degree(last),
        outside,
        earlier,
    })
}

fn structural_failures(shape: &OrderShape, k: usize) -> Vec<OrderingFailure> {
    let l = shape.outside.len();
    let mut out = Vec::new();
    if !shape.adjacent_ends {
        out.push(OrderingFailure::EndsNotAdjacent);
    }
    if shape.last_degree > k {
        out.push(OrderingFailure::LastDegree { degree: shape.last_degree });
    }
    if shape.outside[l - 1] == 0 {
        out.push(OrderingFailure::LastHasNoOutsideNeighbor);
    }
    for i in 1..l - 1 {
        let count = shape.earlier[i] + shape.outside[i];
        if count + 1 > k {
            out.push(OrderingFailure::Interior { index: i + 1, count });
        }
    }
    out
}

/// Worst-case residual bounds with lists of size `k` and perfect matchings:
/// each colored outside neighbor removes exactly one color, possibly the
/// same one as another neighbor.
fn guaranteed_condition1(shape: &OrderShape, k: usize) -> Option<OrderingFailure> {
    let l = shape.outside.len();
    let first_min = k.saturating_sub(shape.outside[0]);
    let last_out = shape.outside[l - 1];
    let last_min = k.saturating_sub(last_out);
    let last_max = if last_out == 0 { k } else { k - 1 };
    (first_min <= last_max || last_min == 0).then_some(OrderingFailure::Condition1NotGuaranteed {
        first_min,
        last_max,
        last_min,
    })
}

/// Checks conditions (2) and (3) exactly, and whether (1) holds for every
/// coloring of `G - H` under perfect matchings with lists of size `k`.
pub fn check_lemma2_structural(g: &Graph, order: &[Vertex], k: usize) -> OrderingReport {
    match shape_in_host(g, order) {
        Err(f) => OrderingReport { failures: vec![f], outside: Vec::new(), earlier: Vec::new() },
        Ok(shape) => {
            let mut failures = structural_failures(&shape, k);
            failures.extend(guaranteed_condition1(&shape, k));
            OrderingReport { failures, outside: shape.outside, earlier: shape.earlier }
        }
    }
}

/// Checks all three conditions against concrete residual list sizes
/// (`residual[i]` is `|A(v_{i+1})|`).
pub fn check_ordering_exact(g: &Graph, order: &[Vertex], k: usize, residual: &[usize]) -> OrderingReport {
    match shape_in_host(g, order) {
        Err(f) => OrderingReport { failures: vec![f], outside: Vec::new(), earlier: Vec::new() },
        Ok(shape) => {
            let mut failures = structural_failures(&shape, k);
            let (first, last) = (residual[0], residual[residual.len() - 1]);
            if !(first > last && last >= 1) {
                failures.push(OrderingFailure::Condition1 { first, last });
            }
            OrderingReport { failures, outside: shape.outside, earlier: shape.earlier }
        }
    }
}

/// `A(v)` for each vertex of `h` (in the given order): colors of `L(v)` not
/// matched to the chosen color of any colored neighbor outside `h`.
///
/// `partial` is indexed by vertices of `G`; every vertex outside `h` must be
/// colored and every vertex of `h` uncolored.
pub fn residual_lists(
    g: &Graph,
    h: &[Vertex],
    lists: &ListAssignment,
    m: &MatchingAssignment,
    partial: &[Option<Color>],
) -> Result<Vec<Vec<Color>>, ReduceError> {
    let in_h: BTreeSet<Vertex> = h.iter().copied().collect();
    if partial.len() != g.n() {
        return Err(ReduceError::InvalidPartial(format!("{} entries for {} vertices", partial.len(), g.n())));
    }
    for v in 0..g.n() {
        match (in_h.contains(&v), partial[v]) {
            (true, Some(_)) => return Err(ReduceError::InvalidPartial(format!("vertex {v} of H is colored"))),
            (false, None) => return Err(ReduceError::InvalidPartial(format!("vertex {v} outside H is uncolored"))),
            _ => {}
        }
    }
    if !is_valid_partial(g, lists, m, partial) {
        return Err(ReduceError::InvalidPartial("a matched pair of colors is used".into()));
    }
    Ok(h.iter()
        .map(|&v| {
            lists
                .list(v)
                .iter()
                .copied()
                .filter(|&c| {
                    g.neighbors(v).iter().all(|&w| match partial[w] {
                        Some(cw) if !in_h.contains(&w) => m.partner(g, v, w, c) != Some(cw),
                        _ => true,
                    })
                })
                .collect()
        })
        .collect())
}

fn blocked(g: &Graph, m: &MatchingAssignment, coloring: &[Option<Color>], v: Vertex, c: Color) -> bool {
    g.neighbors(v)
        .iter()
        .any(|&w| coloring[w].is_some_and(|cw| m.partner(g, v, w, c) == Some(cw)))
}

/// Extends a coloring of `G - H` along `order`. The conditions are checked
/// against the actual residual lists first.
///
/// `v1` takes the smallest residual color whose partner at `vl` is not
/// available to `vl`, so `v1` never costs `vl` a color; interior vertices
/// and then `vl` are colored greedily with the smallest free color.
pub fn extend_coloring(
    g: &Graph,
    order: &[Vertex],
    lists: &ListAssignment,
    m: &MatchingAssignment,
    partial: &[Option<Color>],
) -> Result<DpColoring, ReduceError> {
    let k = lists.uniform_size().ok_or_else(|| ReduceError::InvalidPartial("lists must share one size".into()))?;
    let residual = residual_lists(g, order, lists, m, partial)?;
    let sizes: Vec<usize> = residual.iter().map(Vec::len).collect();
    let report = check_ordering_exact(g, order, k, &sizes);
    if !report.holds() {
        return Err(ReduceError::ConditionsViolated(report.failures));
    }
    let first = order[0];
    let last = *order.last().expect("at least two");
    let last_avail = &residual[residual.len() - 1];
    let mut coloring = partial.to_vec();
    let c1 = residual[0]
        .iter()
        .copied()
        .find(|&c| m.partner(g, first, last, c).is_none_or(|p| !last_avail.contains(&p)))
        .ok_or(ReduceError::Stuck(first))?;
    coloring[first] = Some(c1);
    for (i, &v) in order.iter().enumerate().skip(1) {
        let c = residual[i]
            .iter()
            .copied()
            .find(|&c| !blocked(g, m, &coloring, v, c))
            .ok_or(ReduceError::Stuck(v))?;
        coloring[v] = Some(c);
    }
    let full: Vec<Color> = coloring.into_iter().map(|c| c.expect("all colored")).collect();
    debug_assert!(is_valid_coloring(g, lists, m, &full));
    Ok(DpColoring(full))
}

/// Adds pairs to the matching of every edge touching `h` until it is
/// perfect, pairing free colors in increasing order. Other edges are left
/// alone. A coloring valid for the result is valid for `m`.
pub fn saturate_matchings(g: &Graph, lists: &ListAssignment, m: &MatchingAssignment, h: &[Vertex]) -> MatchingAssignment {
    let matchings = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            let cur = m.matching(e);
            if !h.contains(&u) && !h.contains(&v) {
                return cur.clone();
            }
            let mut pairs = cur.pairs();
            let free_u: Vec<Color> = lists.list(u).iter().copied().filter(|&c| cur.partner_of_low(c).is_none()).collect();
            let free_v: Vec<Color> = lists.list(v).iter().copied().filter(|&c| cur.partner_of_high(c).is_none()).collect();
            pairs.extend(free_u.into_iter().zip(free_v));
            Matching::from_pairs(&pairs).expect("free colors are unmatched")
        })
        .collect();
    MatchingAssignment::from_matchings(matchings)
}

/// Extension for arbitrary (possibly partial) matchings: saturate the
/// matchings around `H`, then extend. Succeeds whenever the ordering
/// passes [`check_lemma2_structural`] and lists have size `k`.
pub fn extend_reducible(
    g: &Graph,
    order: &[Vertex],
    lists: &ListAssignment,
    m: &MatchingAssignment,
    partial: &[Option<Color>],
) -> Result<DpColoring, ReduceError> {
    let full = saturate_matchings(g, lists, m, order);
    let c = extend_coloring(g, order, lists, &full, partial)?;
    debug_assert!(is_valid_coloring(g, lists, m, &c.0));
    Ok(c)
}

/// Colors a vertex of degree below `|L(v)|` given a coloring of the rest.
pub fn min_degree_extend(
    g: &Graph,
    v: Vertex,
    lists: &ListAssignment,
    m: &MatchingAssignment,
    partial: &[Option<Color>],
) -> Result<DpColoring, ReduceError> {
    let k = lists.list(v).len();
    if g.degree(v) >= k {
        return Err(ReduceError::DegreeNotBelowK { vertex: v, degree: g.degree(v), k });
    }
    residual_lists(g, &[v], lists, m, partial)?;
    let mut coloring = partial.to_vec();
    let c = lists
        .list(v)
        .iter()
        .copied()
        .find(|&c| !blocked(g, m, &coloring, v, c))
        .ok_or(ReduceError::Stuck(v))?;
    coloring[v] = Some(c);
    Ok(DpColoring(coloring.into_iter().map(|c| c.expect("all colored")).collect()))
}

/// Degree requirements of one pattern vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PatternVertex {
    pub host_degree: usize,
    pub outside_neighbors: usize,
}

/// A configuration: a small graph whose vertices carry exact host degrees,
/// plus the ordering used for extension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigPattern {
    pub vertices: Vec<PatternVertex>,
    pub edges: Vec<[usize; 2]>,
    pub order: Vec<usize>,
}

impl ConfigPattern {
    pub fn from_json(text: &str) -> Result<Self, ReduceError> {
        let p: ConfigPattern = serde_json::from_str(text).map_err(|e| ReduceError::InvalidPattern(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn graph(&self) -> Result<Graph, ReduceError> {
        Graph::new(self.vertices.len(), self.edges.iter().map(|&[a, b]| (a, b)))
            .map_err(|e| ReduceError::InvalidPattern(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), ReduceError> {
        let h = self.graph()?;
        if h.edge_count() != self.edges.len() {
            return Err(ReduceError::InvalidPattern("repeated edge".into()));
        }
        for (i, pv) in self.vertices.iter().enumerate() {
            if h.degree(i) + pv.outside_neighbors != pv.host_degree {
                return Err(ReduceError::InvalidPattern(format!(
                    "vertex {i}: {} pattern neighbors + {} outside != host degree {}",
                    h.degree(i),
                    pv.outside_neighbors,
                    pv.host_degree
                )));
            }
        }
        let mut sorted = self.order.clone();
        sorted.sort_unstable();
        if sorted != (0..self.vertices.len()).collect::<Vec<_>>() {
            return Err(ReduceError::InvalidPattern("order is not a permutation of the vertices".into()));
        }
        Ok(())
    }

    /// The ordering conditions evaluated on the declared degrees alone, as
    /// if the pattern occurred induced.
    pub fn check_static(&self, k: usize) -> OrderingReport {
        let h = match self.graph() {
            Ok(h) => h,
            Err(e) => {
                return OrderingReport {
                    failures: vec![OrderingFailure::BadOrdering(e.to_string())],
                    outside: Vec::new(),
                    earlier: Vec::new(),
                }
            }
        };
        if self.order.len() < 2 {
            return OrderingReport {
                failures: vec![OrderingFailure::BadOrdering("need at least two vertices".into())],
                outside: Vec::new(),
                earlier: Vec::new(),
            };
        }
        let pos: Vec<usize> = {
            let mut p = vec![0; self.order.len()];
            for (i, &v) in self.order.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        let outside: Vec<usize> = self.order.iter().map(|&v| self.vertices[v].outside_neighbors).collect();
        let earlier: Vec<usize> = self
            .order
            .iter()
            .enumerate()
            .map(|(i, &v)| h.neighbors(v).iter().filter(|&&w| pos[w] < i).count())
            .collect();
        let last = *self.order.last().expect("nonempty");
        let shape = OrderShape {
            adjacent_ends: h.has_edge(self.order[0], last),
            last_degree: self.vertices[last].host_degree,
            outside,
            earlier,
        };
        let mut failures = structural_failures(&shape, k);
        failures.extend(guaranteed_condition1(&shape, k));
        OrderingReport { failures, outside: shape.outside, earlier: shape.earlier }
    }
}

/// All injective, edge-preserving maps of the pattern into `g` that send
/// each pattern vertex to a host vertex of exactly the required degree.
/// Each map is listed by image of pattern vertex `0, 1, ..`, in
/// lexicographic order.
pub fn find_pattern(g: &Graph, p: &ConfigPattern) -> Vec<Vec<Vertex>> {
    let Ok(h) = p.graph() else { return Vec::new() };
    let l = p.vertices.len();
    if l > g.n() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut image: Vec<Vertex> = Vec::with_capacity(l);
    let mut used = vec![false; g.n()];
    fn go(
        g: &Graph,
        h: &Graph,
        p: &ConfigPattern,
        image: &mut Vec<Vertex>,
        used: &mut [bool],
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let i = image.len();
        if i == p.vertices.len() {
            out.push(image.clone());
            return;
        }
        let need = p.vertices[i].host_degree;
        let earlier: Vec<Vertex> = h.neighbors(i).iter().copied().filter(|&j| j < i).collect();
        let candidates: Vec<Vertex> = match earlier.first() {
            Some(&j) => g.neighbors(image[j]).to_vec(),
            None => (0..g.n()).collect(),
        };
        for x in candidates {
            if used[x] || g.degree(x) != need || !earlier.iter().all(|&j| g.has_edge(image[j], x)) {
                continue;
            }
            used[x] = true;
            image.push(x);
            go(g, h, p, image, used, out);
            image.pop();
            used[x] = false;
        }
    }
    go(g, &h, p, &mut image, &mut used, &mut out);
    out
}

/// Certification outcome for one pattern in one host.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certification {
    pub reducible: bool,
    /// Pattern ordering that was checked.
    pub order: Vec<usize>,
    pub embeddings: Vec<Vec<Vertex>>,
    /// Embeddings whose host ordering fails, with the reasons.
    pub failures: Vec<(Vec<Vertex>, Vec<OrderingFailure>)>,
}

fn certify_with_order(g: &Graph, p: &ConfigPattern, order: &[usize], k: usize) -> Certification {
    let embeddings = find_pattern(g, p);
    let mut failures = Vec::new();
    for emb in &embeddings {
        if order.len() == 1 {
            // A single vertex of degree below k: greedy extension.
            let v = emb[0];
            if g.degree(v) >= k {
                failures.push((emb.clone(), vec![OrderingFailure::LastDegree { degree: g.degree(v) }]));
            }
            continue;
        }
        let host_order: Vec<Vertex> = order.iter().map(|&i| emb[i]).collect();
        let report = check_lemma2_structural(g, &host_order, k);
        if !report.holds() {
            failures.push((emb.clone(), report.failures));
        }
    }
    Certification { reducible: failures.is_empty(), order: order.to_vec(), embeddings, failures }
}

/// Whether every occurrence of `p` in `g`, taken in the pattern's ordering,
/// satisfies the conditions for all colorings of the rest of the graph.
/// No occurrence means nothing to reduce, reported as reducible.
pub fn certify_reducible(g: &Graph, p: &ConfigPattern, k: usize) -> Certification {
    certify_with_order(g, p, &p.order, k)
}

/// Tries every ordering of the pattern (at most 8 vertices) and returns the
/// first that certifies, or the pattern's own ordering's failure.
pub fn certify_reducible_any_order(g: &Graph, p: &ConfigPattern, k: usize) -> Result<Certification, ReduceError> {
    let l = p.vertices.len();
    if l > 8 {
        return Err(ReduceError::InvalidPattern(format!("{l} vertices is too many for order search")));
    }
    let mut order: Vec<usize> = (0..l).collect();
    loop {
        let c = certify_with_order(g, p, &order, k);
        if c.reducible {
            return Ok(c);
        }
        let Some(i) = (0..l.saturating_sub(1)).rev().find(|&i| order[i] < order[i + 1]) else {
            return Ok(certify_reducible(g, p, k));
        };
        let j = (i + 1..l).rev().find(|&j| order[j] > order[i]).expect("successor exists");
        order.swap(i, j);
        order[i + 1..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::find_coloring;
    use crate::families;

    fn pv(host_degree: usize, outside_neighbors: usize) -> PatternVertex {
        PatternVertex { host_degree, outside_neighbors }
    }

    #[test]
    fn residual_examples() {
        // Path 0-1: H = {1}, 0 colored.
        let g = families::path(2);
        let l = ListAssignment::uniform(2, 3);
        let partial = [Some(0), None];
        let full = MatchingAssignment::identity(&g, 3);
        assert_eq!(residual_lists(&g, &[1], &l, &full, &partial).unwrap(), vec![vec![1, 2]]);
        let empty = MatchingAssignment::empty(&g);
        assert_eq!(residual_lists(&g, &[1], &l, &empty, &partial).unwrap(), vec![vec![0, 1, 2]]);
        // Isolated vertex in H keeps its whole list.
        let g2 = Graph::new(2, []).unwrap();
        let m2 = MatchingAssignment::empty(&g2);
        assert_eq!(residual_lists(&g2, &[1], &l, &m2, &partial).unwrap(), vec![vec![0, 1, 2]]);
        assert!(matches!(
            residual_lists(&g, &[1], &l, &full, &[None, None]),
            Err(ReduceError::InvalidPartial(_))
        ));
    }

    /// Host for the guaranteed example: H = path a-b-c plus edge a-c
    /// (a triangle), with one outside neighbor on c.
    fn triangle_with_tail() -> Graph {
        // 0 = v1, 1 = v2, 2 = vl, 3 outside on vl.
        Graph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn structural_guaranteed() {
        let g = triangle_with_tail();
        let r = check_lemma2_structural(&g, &[0, 1, 2], 3);
        assert!(r.holds(), "{:?}", r.failures);
        assert_eq!(r.outside, vec![0, 0, 1]);
    }

    #[test]
    fn structural_condition3_violation() {
        // v2 has three outside neighbors.
        let g = Graph::new(7, [(0, 1), (1, 2), (0, 2), (2, 3), (1, 4), (1, 5), (1, 6)]).unwrap();
        let r = check_lemma2_structural(&g, &[0, 1, 2], 3);
        assert_eq!(r.failures, vec![OrderingFailure::Interior { index: 2, count: 4 }]);
    }

    #[test]
    fn condition1_not_guaranteed_on_four_cycle() {
        // H = 4-cycle a b c d (ordered), a has outside neighbor z, d has
        // outside neighbors x, y.
        let (a, b, c, d, z, x, y) = (0, 1, 2, 3, 4, 5, 6);
        let g = Graph::new(7, [(a, b), (b, c), (c, d), (d, a), (a, z), (d, x), (d, y)]).unwrap();
        let r = check_lemma2_structural(&g, &[a, b, c, d], 3);
        assert!(r
            .failures
            .iter()
            .any(|f| matches!(f, OrderingFailure::Condition1NotGuaranteed { .. })));
        // Witness by brute force: perfect matchings and a coloring of
        // {z, x, y} with |A(a)| = |A(d)|.
        let l = ListAssignment::uniform(7, 3);
        let perms = crate::solver::permutations(3);
        let mut witnessed = false;
        'outer: for pz in &perms {
            for px in &perms {
                for py in &perms {
                    let mut m = MatchingAssignment::identity(&g, 3);
                    m.set(g.edge_id(a, z).unwrap(), Matching::from_permutation(pz));
                    m.set(g.edge_id(d, x).unwrap(), Matching::from_permutation(px));
                    m.set(g.edge_id(d, y).unwrap(), Matching::from_permutation(py));
                    for code in 0..27u32 {
                        let mut partial = vec![None; 7];
                        partial[z] = Some((code % 3) as Color);
                        partial[x] = Some((code / 3 % 3) as Color);
                        partial[y] = Some((code / 9) as Color);
                        let res = residual_lists(&g, &[a, b, c, d], &l, &m, &partial).unwrap();
                        if res[0].len() == res[3].len() {
                            witnessed = true;
                            break 'outer;
                        }
                    }
                }
            }
        }
        assert!(witnessed);
    }

    #[test]
    fn extend_single_edge() {
        // H = {0, 1}, edge 0-1; vertex 1 has outside neighbors 2 and 3,
        // so |A(1)| = 1 when they kill two different colors.
        let g = Graph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let l = ListAssignment::uniform(4, 3);
        for p01 in crate::solver::permutations(3) {
            let mut m = MatchingAssignment::identity(&g, 3);
            m.set(0, Matching::from_permutation(&p01));
            let partial = [None, None, Some(0), Some(1)];
            let c = extend_coloring(&g, &[0, 1], &l, &m, &partial).unwrap();
            assert!(is_valid_coloring(&g, &l, &m, &c.0));
            assert_eq!(&c.0[2..], &[0, 1]);
        }
    }

    #[test]
    fn extend_rejects_equal_residuals() {
        // Both ends lose exactly one color.
        let g = Graph::new(4, [(0, 1), (0, 2), (1, 3)]).unwrap();
        let l = ListAssignment::uniform(4, 3);
        let m = MatchingAssignment::identity(&g, 3);
        let err = extend_coloring(&g, &[0, 1], &l, &m, &[None, None, Some(0), Some(0)]).unwrap_err();
        assert_eq!(err, ReduceError::ConditionsViolated(vec![OrderingFailure::Condition1 { first: 2, last: 2 }]));
    }

    #[test]
    fn min_degree_examples() {
        let g = Graph::empty(1);
        let l = ListAssignment::uniform(1, 3);
        assert_eq!(min_degree_extend(&g, 0, &l, &MatchingAssignment::empty(&g), &[None]).unwrap().0, vec![0]);
        let p = families::path(3);
        let l = ListAssignment::uniform(3, 3);
        let m = MatchingAssignment::identity(&p, 3);
        let c = min_degree_extend(&p, 1, &l, &m, &[Some(0), None, Some(1)]).unwrap();
        assert_eq!(c.0, vec![0, 2, 1]);
        let k4 = families::complete(4);
        assert!(matches!(
            min_degree_extend(&k4, 0, &ListAssignment::uniform(4, 3), &MatchingAssignment::identity(&k4, 3), &[None, Some(0), Some(1), Some(2)]),
            Err(ReduceError::DegreeNotBelowK { .. })
        ));
    }

    fn edge_pattern(d: usize) -> ConfigPattern {
        ConfigPattern {
            vertices: vec![pv(d, d - 1), pv(d, d - 1)],
            edges: vec![[0, 1]],
            order: vec![0, 1],
        }
    }

    #[test]
    fn find_edges_in_cubic_graph() {
        let p = families::petersen();
        let found = find_pattern(&p, &edge_pattern(3));
        assert_eq!(found.len(), 2 * p.edge_count());
    }

    #[test]
    fn find_triangles_in_k4() {
        let tri = ConfigPattern {
            vertices: vec![pv(3, 1); 3],
            edges: vec![[0, 1], [1, 2], [0, 2]],
            order: vec![0, 1, 2],
        };
        assert_eq!(find_pattern(&families::complete(4), &tri).len(), 24);
        assert!(find_pattern(&families::complete(2), &tri).is_empty());
    }

    #[test]
    fn pattern_validation() {
        let bad = ConfigPattern { vertices: vec![pv(3, 1), pv(3, 2)], edges: vec![[0, 1]], order: vec![0, 1] };
        assert!(bad.validate().is_err());
        let json = r#"{"vertices":[{"hostDegree":3,"outsideNeighbors":2},{"hostDegree":3,"outsideNeighbors":2}],
                       "edges":[[0,1]],"order":[0,1]}"#;
        let p = ConfigPattern::from_json(json).unwrap();
        assert_eq!(p, edge_pattern(3));
        assert_eq!(ConfigPattern::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn certify_low_degree_vertex() {
        let p = ConfigPattern { vertices: vec![pv(2, 2)], edges: vec![], order: vec![0] };
        let g = families::cycle(5);
        let c = certify_reducible(&g, &p, 3);
        assert!(c.reducible);
        assert_eq!(c.embeddings.len(), 5);
        // Same pattern at k = 2 is not reducible.
        assert!(!certify_reducible(&g, &p, 2).reducible);
    }

    #[test]
    fn certify_interior_violation() {
        // Triangle v1 v2 vl, v2 of degree 5: two earlier + three outside.
        let p = ConfigPattern {
            vertices: vec![pv(2, 0), pv(5, 3), pv(3, 1)],
            edges: vec![[0, 1], [1, 2], [0, 2]],
            order: vec![0, 1, 2],
        };
        p.validate().unwrap();
        let g = Graph::new(7, [(0, 1), (1, 2), (0, 2), (2, 3), (1, 4), (1, 5), (1, 6)]).unwrap();
        let c = certify_reducible(&g, &p, 3);
        assert!(!c.reducible);
        assert_eq!(c.embeddings.len(), 1);
        assert!(!p.check_static(3).holds());
    }

    #[test]
    fn certify_and_extend_triangle_with_tail() {
        let g = triangle_with_tail();
        let p = ConfigPattern {
            vertices: vec![pv(2, 0), pv(2, 0), pv(3, 1)],
            edges: vec![[0, 1], [1, 2], [0, 2]],
            order: vec![0, 1, 2],
        };
        assert!(p.check_static(3).holds());
        let c = certify_reducible(&g, &p, 3);
        assert!(c.reducible);
        assert_eq!(c.embeddings, vec![vec![0, 1, 2], vec![1, 0, 2]]);
        let l = ListAssignment::uniform(4, 3);
        for pt in crate::solver::permutations(3) {
            let mut m = MatchingAssignment::identity(&g, 3);
            m.set(g.edge_id(2, 3).unwrap(), Matching::from_permutation(&pt));
            for c3 in 0..3 {
                let partial = [None, None, None, Some(c3)];
                let col = extend_coloring(&g, &[0, 1, 2], &l, &m, &partial).unwrap();
                assert!(is_valid_coloring(&g, &l, &m, &col.0));
                assert!(find_coloring(&g, &l, &m).unwrap().is_some());
            }
        }
    }

    #[test]
    fn order_search_finds_alternative() {
        // Pattern ordered badly (tail vertex first); order search recovers.
        let g = triangle_with_tail();
        let p = ConfigPattern {
            vertices: vec![pv(3, 1), pv(2, 0), pv(2, 0)],
            edges: vec![[0, 1], [1, 2], [0, 2]],
            order: vec![0, 1, 2],
        };
        assert!(!certify_reducible(&g, &p, 3).reducible);
        let c = certify_reducible_any_order(&g, &p, 3).unwrap();
        assert!(c.reducible);
        assert_eq!(c.order, vec![1, 2, 0]);
    }

    #[test]
    fn saturation_is_superset() {
        let g = families::cycle(4);
        let l = ListAssignment::uniform(4, 3);
        let mut m = MatchingAssignment::empty(&g);
        m.set(0, Matching::from_pairs(&[(2, 0)]).unwrap());
        let s = saturate_matchings(&g, &l, &m, &[0, 1, 2, 3]);
        assert!(m.is_subset_of(&s));
        assert!(s.matchings().iter().all(|x| x.size() == 3));
        let only_first = saturate_matchings(&g, &l, &m, &[0]);
        let sizes: Vec<usize> = only_first.matchings().iter().map(Matching::size).collect();
        // Cycle edges (0,1), (0,3) touch vertex 0.
        assert_eq!(sizes, vec![3, 3, 0, 0]);
    }
}
