//! Batch check of DP-3-colorability over a stream of small graphs: keep the
//! planar ones avoiding a forbidden set of cycle lengths, search each
//! exhaustively, and tally.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::cycles::{cycle_spectrum, satisfied_variants, ForbiddenVariant, DEFAULT_MAX_LEN};
use crate::embedding::{brute_force_embed, EmbedFailure, EmbeddingError};
use crate::graph::Graph;
use crate::graph6::parse_graph6;
use crate::solver::{is_dp_k_colorable, AdversaryCertificate, SearchOptions, SolverError, Verdict};

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub variants: Vec<ForbiddenVariant>,
    pub k: usize,
    /// Graphs with more vertices are skipped.
    pub n_max: usize,
    /// Per-graph search settings; `jobs` there is ignored in favor of
    /// per-graph parallelism.
    pub search: SearchOptions,
    pub jobs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            variants: ForbiddenVariant::ALL.to_vec(),
            k: 3,
            n_max: crate::embedding::BRUTE_FORCE_MAX_N,
            search: SearchOptions::default(),
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Skip {
    Malformed(String),
    TooLarge,
    /// Every requested variant has a forbidden cycle.
    CycleCondition,
    NonPlanar,
    /// Planarity could not be decided within the embedding budget.
    PlanarityUnknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Skipped(Skip),
    Colorable { cases: u64 },
    Refuted(AdversaryCertificate),
    BudgetExceeded { required: u64, budget: u64, scanned: u64 },
}

#[derive(Debug, Clone)]
pub struct GraphResult {
    /// Position in the input stream, counting from 0.
    pub index: usize,
    pub graph6: String,
    /// Requested variants the graph satisfies.
    pub variants: BTreeSet<ForbiddenVariant>,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    /// Planar graphs satisfying the variant.
    pub checked: usize,
    pub colorable: usize,
    pub refuted: usize,
    pub budget: usize,
}

#[derive(Debug, Clone)]
pub struct VerifySummary {
    pub k: usize,
    pub total: usize,
    pub per_variant: Vec<(ForbiddenVariant, Tally)>,
    pub skipped: Vec<(String, usize)>,
    pub results: Vec<GraphResult>,
}

impl VerifySummary {
    pub fn refutations(&self) -> impl Iterator<Item = &GraphResult> {
        self.results.iter().filter(|r| matches!(r.outcome, Outcome::Refuted(_)))
    }

    pub fn budget_count(&self) -> usize {
        self.results.iter().filter(|r| matches!(r.outcome, Outcome::BudgetExceeded { .. })).count()
    }

    /// Fixed-width table, one row per variant, then skip reasons.
    pub fn render(&self) -> String {
        let mut s = format!("graphs read: {}\n", self.total);
        s.push_str(&format!("{:<10} {:>8} {:>10} {:>8} {:>7}\n", "variant", "checked", "colorable", "refuted", "budget"));
        for (v, t) in &self.per_variant {
            s.push_str(&format!(
                "{:<10} {:>8} {:>10} {:>8} {:>7}\n",
                v.label(),
                t.checked,
                t.colorable,
                t.refuted,
                t.budget
            ));
        }
        for (why, n) in &self.skipped {
            s.push_str(&format!("skipped ({why}): {n}\n"));
        }
        for r in self.refutations() {
            s.push_str(&format!("refuted: #{} {}\n", r.index, r.graph6));
            if let (Outcome::Refuted(c), Ok(g)) = (&r.outcome, parse_graph6(&r.graph6)) {
                s.push_str(&c.to_matching_file(&g));
            }
        }
        s
    }
}

fn skip_label(s: &Skip) -> &'static str {
    match s {
        Skip::Malformed(_) => "malformed",
        Skip::TooLarge => "too large",
        Skip::CycleCondition => "cycle condition",
        Skip::NonPlanar => "non-planar",
        Skip::PlanarityUnknown => "planarity unknown",
    }
}

/// Deletes vertices of degree at most 1 and suppresses degree-2 vertices
/// (joining their neighbors, or just deleting them when the neighbors are
/// already adjacent) until neither applies. Planarity is unchanged.
pub fn planarity_core(g: &Graph) -> Graph {
    let mut adj: Vec<BTreeSet<usize>> = (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; g.n()];
    while let Some(v) = (0..g.n()).find(|&v| alive[v] && adj[v].len() <= 2) {
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for &w in &nbrs {
            adj[w].remove(&v);
        }
        adj[v].clear();
        alive[v] = false;
        if let [a, b] = nbrs[..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    let keep: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
    let index = |v: usize| keep.binary_search(&v).expect("kept");
    let pairs = keep.iter().flat_map(|&u| adj[u].iter().filter(move |&&w| u < w).map(move |&w| (index(u), index(w))));
    Graph::new(keep.len(), pairs).expect("simple")
}

/// Planarity of the reduced graph: the edge bound `e <= 3n - 6`, then
/// exhaustive rotation search on each component.
pub fn is_planar_small(g: &Graph) -> Result<bool, EmbedFailure> {
    let core = planarity_core(g);
    for comp in core.components() {
        let h = core.induced(&comp);
        if h.n() >= 3 && h.edge_count() > 3 * h.n() - 6 {
            return Ok(false);
        }
        match brute_force_embed(&h) {
            Ok(_) => {}
            Err(EmbeddingError::NonPlanarOrTooLarge(EmbedFailure::NonPlanar)) => return Ok(false),
            Err(EmbeddingError::NonPlanarOrTooLarge(why)) => return Err(why),
            Err(_) => return Err(EmbedFailure::TooLarge),
        }
    }
    Ok(true)
}

fn check_one(index: usize, line: &str, opts: &VerifyOptions) -> GraphResult {
    let graph6 = line.trim().to_string();
    let result = |variants, outcome| GraphResult { index, graph6: graph6.clone(), variants, outcome };
    let g = match parse_graph6(&graph6) {
        Ok(g) => g,
        Err(e) => return result(BTreeSet::new(), Outcome::Skipped(Skip::Malformed(e.to_string()))),
    };
    if g.n() > opts.n_max {
        return result(BTreeSet::new(), Outcome::Skipped(Skip::TooLarge));
    }
    let spectrum = cycle_spectrum(&g, DEFAULT_MAX_LEN);
    let variants: BTreeSet<ForbiddenVariant> =
        satisfied_variants(&spectrum).into_iter().filter(|v| opts.variants.contains(v)).collect();
    if variants.is_empty() {
        return result(variants, Outcome::Skipped(Skip::CycleCondition));
    }
    match is_planar_small(&g) {
        Ok(true) => {}
        Ok(false) => return result(variants, Outcome::Skipped(Skip::NonPlanar)),
        Err(_) => return result(variants, Outcome::Skipped(Skip::PlanarityUnknown)),
    }
    let search = SearchOptions { jobs: 1, ..opts.search };
    let outcome = match is_dp_k_colorable(&g, opts.k, &search) {
        Ok(Verdict::Colorable { cases }) => Outcome::Colorable { cases },
        Ok(Verdict::Certificate(c)) => Outcome::Refuted(c),
        Err(SolverError::BudgetExceeded { required, budget, scanned }) => {
            Outcome::BudgetExceeded { required, budget, scanned }
        }
        Err(e) => Outcome::Skipped(Skip::Malformed(e.to_string())),
    };
    result(variants, outcome)
}

/// Checks every graph6 line of `lines` (blank lines and `>>graph6<<`-only
/// headers are ignored). Output order follows input order regardless of
/// `jobs`.
pub fn verify_stream(lines: &[String], opts: &VerifyOptions) -> VerifySummary {
    let lines: Vec<&str> = lines.iter().map(|l| l.trim()).filter(|l| !l.is_empty() && *l != ">>graph6<<").collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.max(1)).build().expect("thread pool");
    let results: Vec<GraphResult> =
        pool.install(|| lines.par_iter().enumerate().map(|(i, l)| check_one(i, l, opts)).collect());
    let per_variant = opts
        .variants
        .iter()
        .map(|&v| {
            let mut t = Tally::default();
            for r in results.iter().filter(|r| r.variants.contains(&v)) {
                match r.outcome {
                    Outcome::Colorable { .. } => t.colorable += 1,
                    Outcome::Refuted(_) => t.refuted += 1,
                    Outcome::BudgetExceeded { .. } => t.budget += 1,
                    Outcome::Skipped(_) => continue,
                }
                t.checked += 1;
            }
            (v, t)
        })
        .collect();
    let mut skipped: Vec<(String, usize)> = Vec::new();
    for r in &results {
        if let Outcome::Skipped(s) = &r.outcome {
            let label = skip_label(s).to_string();
            match skipped.iter_mut().find(|(l, _)| *l == label) {
                Some((_, n)) => *n += 1,
                None => skipped.push((label, 1)),
            }
        }
    }
    skipped.sort();
    VerifySummary { k: opts.k, total: results.len(), per_variant, skipped, results }
}
