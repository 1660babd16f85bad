//! Simple undirected graphs on dense vertex indices.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Vertex index, always in `0..n`.
pub type Vertex = usize;

/// Index into [`Graph::edges`].
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("malformed graph6 input: {0}")]
    MalformedGraph6(String),
    #[error("malformed edge list at line {line}: {reason}")]
    MalformedEdgeList { line: usize, reason: String },
}

/// A simple undirected graph.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted. Neighbor lists are
/// sorted as well, so iteration order is deterministic everywhere.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate pairs collapse; a self-loop
    /// or an out-of-range endpoint is an error.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    /// Builds a graph whose vertex count is one more than the largest
    /// endpoint mentioned.
    pub fn from_edge_list(pairs: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let n = pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Graph::new(n, pairs.iter().copied())
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of edge `uv` in [`Graph::edges`], in either orientation.
    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// BFS spanning forest, returned as edge ids. Each component is rooted at
    /// its smallest vertex.
    pub fn spanning_forest(&self) -> Vec<EdgeId> {
        let mut seen = vec![false; self.n];
        let mut tree = Vec::with_capacity(self.n.saturating_sub(1));
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        tree.push(self.edge_id(u, w).expect("adjacent"));
                        queue.push_back(w);
                    }
                }
            }
        }
        tree.sort_unstable();
        tree
    }

    /// |E| - |V| + (number of components).
    pub fn cyclomatic_number(&self) -> usize {
        self.edges.len() + self.components().len() - self.n
    }

    /// Degeneracy: the largest minimum degree over all subgraphs.
    pub fn degeneracy(&self) -> usize {
        self.degeneracy_order().1
    }

    /// Smallest-last elimination order together with the degeneracy.
    pub fn degeneracy_order(&self) -> (Vec<Vertex>, usize) {
        let mut deg = self.degrees();
        let mut removed = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        let mut degeneracy = 0;
        for _ in 0..self.n {
            let v = (0..self.n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (deg[v], v))
                .expect("vertices remain");
            degeneracy = degeneracy.max(deg[v]);
            removed[v] = true;
            order.push(v);
            for &w in &self.adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                }
            }
        }
        (order, degeneracy)
    }

    /// Induced subgraph on `V(G) \ removed`, re-indexed densely in increasing
    /// order. The second value maps each old vertex to its new index.
    pub fn delete_vertices(&self, removed: &[Vertex]) -> (Graph, Vec<Option<Vertex>>) {
        let mut gone = vec![false; self.n];
        for &v in removed {
            gone[v] = true;
        }
        let mut map = vec![None; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if !gone[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let pairs = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((map[u]?, map[v]?)));
        let g = Graph::new(next, pairs).expect("induced subgraph of a simple graph");
        (g, map)
    }

    /// Induced subgraph on `keep`, indexed by position in `keep`.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut pos = vec![None; self.n];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = Some(i);
        }
        let pairs = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((pos[u]?, pos[v]?)));
        Graph::new(keep.len(), pairs).expect("induced subgraph of a simple graph")
    }

    /// Parses the plain edge-list format: one `u v` pair per line, `#`
    /// comments, blank lines ignored. An optional `n N` line fixes the vertex
    /// count so isolated vertices can be expressed.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut declared_n = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |reason: &str| GraphError::MalformedEdgeList { line: idx + 1, reason: reason.to_string() };
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() == 2 && toks[0] == "n" {
                declared_n = Some(toks[1].parse::<usize>().map_err(|_| bad("bad vertex count"))?);
                continue;
            }
            if toks.len() != 2 {
                return Err(bad("expected two vertex indices"));
            }
            let u = toks[0].parse::<usize>().map_err(|_| bad("bad vertex index"))?;
            let v = toks[1].parse::<usize>().map_err(|_| bad("bad vertex index"))?;
            pairs.push((u, v));
        }
        match declared_n {
            Some(n) => Graph::new(n, pairs),
            None => Graph::from_edge_list(&pairs),
        }
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}
