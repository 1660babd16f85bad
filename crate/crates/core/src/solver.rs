//! Chromatic number, choosability and DP-chromatic number by exhaustive
//! adversarial search.
//!
//! For DP-k-colorability the adversary only needs full permutation matchings
//! (adding matched pairs only adds cover-graph edges) and may assume the
//! identity on a spanning forest (relabeling colors at a vertex preserves
//! colorability). That leaves `(k!)^c` cases where `c` is the cyclomatic
//! number.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::dp::{
    find_coloring, format_matching_file, from_list_assignment, search_unchecked, Color, DpError, ListAssignment,
    Matching, MatchingAssignment, MAX_COLORS,
};
use crate::graph::{EdgeId, Graph, Vertex};

/// Default cap on adversary cases per decision.
pub const DEFAULT_BUDGET: u64 = 100_000_000;
/// Default vertex bound for choosability enumeration.
pub const DEFAULT_CHOICE_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("budget exceeded: {required} cases needed, budget {budget}, scanned {scanned} without a certificate")]
    BudgetExceeded { required: u64, budget: u64, scanned: u64 },
    #[error("graph has {n} vertices; choosability enumeration is limited to {max}")]
    TooLarge { n: usize, max: usize },
    #[error("k = {0} is outside the supported range")]
    BadK(usize),
    #[error(transparent)]
    Dp(#[from] DpError),
}

/// Knobs shared by the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
    pub choice_max_n: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, jobs: 1, choice_max_n: DEFAULT_CHOICE_MAX_N }
    }
}

/// Lists and matchings under which no coloring exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdversaryCertificate {
    pub k: usize,
    pub lists: ListAssignment,
    pub matching: MatchingAssignment,
}

impl AdversaryCertificate {
    /// Re-runs the coloring search; true when no coloring exists.
    pub fn replay(&self, g: &Graph) -> Result<bool, DpError> {
        Ok(find_coloring(g, &self.lists, &self.matching)?.is_none())
    }

    /// Matching-file text, readable back with [`crate::dp::MatchingFile`]; the
    /// lists are `0..k` everywhere.
    pub fn to_matching_file(&self, g: &Graph) -> String {
        format!(
            "# no coloring from lists 0..{} under these matchings\n{}",
            self.k - 1,
            format_matching_file(g, &self.matching)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<C> {
    /// Every case admits a coloring; `cases` were examined.
    Colorable { cases: u64 },
    /// The first failing case in enumeration order.
    Certificate(C),
}

impl<C> Verdict<C> {
    pub fn is_colorable(&self) -> bool {
        matches!(self, Verdict::Colorable { .. })
    }

    pub fn certificate(&self) -> Option<&C> {
        match self {
            Verdict::Certificate(c) => Some(c),
            Verdict::Colorable { .. } => None,
        }
    }
}

/// A list assignment with no proper coloring from the lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListCertificate {
    pub k: usize,
    pub lists: ListAssignment,
}

impl ListCertificate {
    /// True when no proper coloring from the lists exists.
    pub fn replay(&self, g: &Graph) -> Result<bool, DpError> {
        let r = from_list_assignment(g, &self.lists)?;
        Ok(find_coloring(g, &r.lists, &r.matching)?.is_none())
    }

    /// One `v: c1 c2 ..` line per vertex.
    pub fn to_text(&self) -> String {
        self.lists
            .lists()
            .iter()
            .enumerate()
            .map(|(v, l)| {
                let cs: Vec<String> = l.iter().map(Color::to_string).collect();
                format!("{v}: {}\n", cs.join(" "))
            })
            .collect()
    }
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

// ---------------------------------------------------------------------------
// Proper coloring

/// Size of a maximum clique, by simple branch and bound.
pub fn clique_number(g: &Graph) -> usize {
    fn grow(g: &Graph, clique: usize, cands: Vec<Vertex>, best: &mut usize) {
        if clique + cands.len() <= *best {
            return;
        }
        if cands.is_empty() {
            *best = clique;
            return;
        }
        for (i, &v) in cands.iter().enumerate() {
            if clique + cands.len() - i <= *best {
                return;
            }
            let next: Vec<Vertex> = cands[i + 1..].iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            grow(g, clique + 1, next, best);
        }
    }
    let mut best = 0;
    grow(g, 0, (0..g.n()).collect(), &mut best);
    best
}

/// A proper coloring with colors `0..k`, if one exists.
pub fn proper_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    // Color in reverse smallest-last order; a new color is only tried as the
    // next unused one.
    let (mut order, _) = g.degeneracy_order();
    order.reverse();
    let mut color = vec![usize::MAX; g.n()];
    fn go(g: &Graph, k: usize, order: &[Vertex], i: usize, used: usize, color: &mut [usize]) -> bool {
        let Some(&v) = order.get(i) else { return true };
        for c in 0..k.min(used + 1) {
            if g.neighbors(v).iter().all(|&w| color[w] != c) {
                color[v] = c;
                if go(g, k, order, i + 1, used.max(c + 1), color) {
                    return true;
                }
                color[v] = usize::MAX;
            }
        }
        false
    }
    go(g, k, &order, 0, 0, &mut color).then_some(color)
}

/// Chromatic number.
pub fn chi(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    (clique_number(g).max(1)..)
        .find(|&k| proper_coloring(g, k).is_some())
        .expect("n colors always suffice")
}

// ---------------------------------------------------------------------------
// DP-coloring adversary

/// All permutations of `0..k` in lexicographic order; index 0 is the
/// identity.
pub fn permutations(k: usize) -> Vec<Vec<Color>> {
    let mut out = Vec::new();
    let mut cur: Vec<Color> = (0..k as Color).collect();
    loop {
        out.push(cur.clone());
        // Next lexicographic permutation.
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// The normalized adversary space for one graph and `k`.
struct DpSpace<'a> {
    g: &'a Graph,
    k: usize,
    lists: ListAssignment,
    free_edges: Vec<EdgeId>,
    perms: Vec<Matching>,
    total: Option<u64>,
}

impl<'a> DpSpace<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        let tree = g.spanning_forest();
        let free_edges: Vec<EdgeId> = (0..g.edge_count()).filter(|e| tree.binary_search(e).is_err()).collect();
        let perms: Vec<Matching> = permutations(k).iter().map(|p| Matching::from_permutation(p)).collect();
        let total = (0..free_edges.len()).try_fold(1u64, |acc, _| acc.checked_mul(perms.len() as u64));
        DpSpace { g, k, lists: ListAssignment::uniform(g.n(), k), free_edges, perms, total }
    }

    fn base(&self) -> MatchingAssignment {
        MatchingAssignment::identity(self.g, self.k)
    }

    /// Digits of `case`, most significant (first free edge) first.
    fn digits(&self, mut case: u64) -> Vec<usize> {
        let radix = self.perms.len() as u64;
        let mut d = vec![0; self.free_edges.len()];
        for slot in d.iter_mut().rev() {
            *slot = (case % radix) as usize;
            case /= radix;
        }
        d
    }

    fn assignment(&self, digits: &[usize]) -> MatchingAssignment {
        let mut m = self.base();
        for (&e, &d) in self.free_edges.iter().zip(digits) {
            m.set(e, self.perms[d].clone());
        }
        m
    }

    /// Scans cases `start..start + len` in order, returning the first that
    /// is not colorable.
    fn scan(&self, start: u64, len: u64) -> Option<MatchingAssignment> {
        if len == 0 {
            return None;
        }
        let radix = self.perms.len();
        let mut digits = self.digits(start);
        let mut m = self.assignment(&digits);
        for step in 0..len {
            if search_unchecked(self.g, &self.lists, &m).is_none() {
                return Some(m);
            }
            if step + 1 == len {
                break;
            }
            // Odometer increment, last free edge fastest.
            for pos in (0..digits.len()).rev() {
                digits[pos] += 1;
                if digits[pos] < radix {
                    m.set(self.free_edges[pos], self.perms[digits[pos]].clone());
                    break;
                }
                digits[pos] = 0;
                m.set(self.free_edges[pos], self.perms[0].clone());
            }
        }
        None
    }
}

/// Decides DP-k-colorability over the normalized adversary space.
///
/// Returns the lexicographically first failing assignment (free edges in
/// edge order, permutations in lexicographic order) as the certificate.
pub fn is_dp_k_colorable(g: &Graph, k: usize, opts: &SearchOptions) -> Result<Verdict<AdversaryCertificate>, SolverError> {
    if k == 0 || k > MAX_COLORS.min(8) {
        return Err(SolverError::BadK(k));
    }
    let space = DpSpace::new(g, k);
    let certify = |matching| Verdict::Certificate(AdversaryCertificate { k, lists: space.lists.clone(), matching });
    let total = match space.total {
        Some(t) if t <= opts.budget => t,
        other => {
            let required = other.unwrap_or(u64::MAX);
            return match space.scan(0, opts.budget) {
                Some(m) => Ok(certify(m)),
                None => Err(SolverError::BudgetExceeded { required, budget: opts.budget, scanned: opts.budget }),
            };
        }
    };
    let found = if opts.jobs <= 1 || total < 64 {
        space.scan(0, total)
    } else {
        let blocks = (opts.jobs as u64 * 16).min(total);
        let block_len = total.div_ceil(blocks);
        with_pool(opts.jobs, || {
            (0..blocks).into_par_iter().find_map_first(|b| {
                let start = b * block_len;
                space.scan(start, block_len.min(total.saturating_sub(start)))
            })
        })
    };
    Ok(match found {
        Some(m) => certify(m),
        None => Verdict::Colorable { cases: total },
    })
}

/// `chi_dp` outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiDp {
    pub value: usize,
    /// Certificate showing the graph is not DP-(value-1)-colorable.
    pub lower_witness: Option<AdversaryCertificate>,
    /// The value was accepted without search because it exceeds the
    /// degeneracy (greedy coloring along a smallest-last order never fails).
    pub by_degeneracy: bool,
}

/// DP-chromatic number: the least `k` passing [`is_dp_k_colorable`].
pub fn chi_dp(g: &Graph, opts: &SearchOptions) -> Result<ChiDp, SolverError> {
    if g.n() == 0 {
        return Ok(ChiDp { value: 0, lower_witness: None, by_degeneracy: false });
    }
    let degeneracy = g.degeneracy();
    let mut witness = None;
    for k in 1.. {
        if k > degeneracy {
            return Ok(ChiDp { value: k, lower_witness: witness, by_degeneracy: true });
        }
        match is_dp_k_colorable(g, k, opts)? {
            Verdict::Colorable { .. } => return Ok(ChiDp { value: k, lower_witness: witness, by_degeneracy: false }),
            Verdict::Certificate(c) => witness = Some(c),
        }
    }
    unreachable!()
}

// ---------------------------------------------------------------------------
// Choosability

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Canonical list systems: colors are introduced in increasing order, so two
/// systems differing by a global color permutation are enumerated once.
///
/// Systems with a private color are skipped. A color of `L(v)` is private
/// when no neighbor's list has it; swapping it for a color some neighbor
/// has cannot make the system colorable (recolor `v` with the private
/// color), and strictly lowers the number of private colors. So a bad
/// system exists iff one exists where every vertex has no private color or
/// has all neighbor colors inside its own list.
struct ListSpace<'a> {
    g: &'a Graph,
    k: usize,
    /// `count[v][used]`: canonical completions of vertices `v..` given that
    /// `used` colors have appeared. Counts ignore the pruning, so they bound
    /// the leaves visited from above.
    count: Vec<Vec<u64>>,
    /// `closes[i]`: vertices whose own list and all neighbor lists are
    /// known once vertex `i` has a list.
    closes: Vec<Vec<Vertex>>,
}

impl<'a> ListSpace<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        let n = g.n();
        let max_used = n * k;
        let mut count = vec![vec![0u64; max_used + 1]; n + 1];
        count[n].iter_mut().for_each(|c| *c = 1);
        for v in (0..n).rev() {
            for used in 0..=max_used {
                let mut total = 0u64;
                for fresh in 0..=k {
                    if used + fresh > max_used || k - fresh > used {
                        continue;
                    }
                    let ways = binomial(used as u64, (k - fresh) as u64);
                    total = total.saturating_add(ways.saturating_mul(count[v + 1][used + fresh]));
                }
                count[v][used] = total;
            }
        }
        let mut closes = vec![Vec::new(); n];
        for v in 0..n {
            let last = g.neighbors(v).iter().copied().fold(v, usize::max);
            closes[last].push(v);
        }
        ListSpace { g, k, count, closes }
    }

    fn no_private_color(&self, lists: &[Vec<Color>], v: Vertex) -> bool {
        let seen = |c: Color| self.g.neighbors(v).iter().any(|&w| lists[w].contains(&c));
        lists[v].iter().all(|&c| seen(c))
            || self.g.neighbors(v).iter().all(|&w| lists[w].iter().all(|c| lists[v].contains(c)))
    }

    fn total(&self) -> u64 {
        self.count[0][0]
    }

    /// Canonical lists for one vertex, in lexicographic order, given `used`.
    fn choices(&self, used: usize) -> Vec<Vec<Color>> {
        let k = self.k;
        let mut out = Vec::new();
        for fresh in 0..=k {
            if k - fresh > used {
                continue;
            }
            for old in combinations(used, k - fresh) {
                let mut list: Vec<Color> = old.into_iter().map(|c| c as Color).collect();
                list.extend((used..used + fresh).map(|c| c as Color));
                out.push(list);
            }
        }
        out.sort();
        out
    }

    fn colorable(&self, lists: &[Vec<Color>]) -> bool {
        let l = ListAssignment::new(lists.to_vec()).expect("nonempty lists");
        let r = from_list_assignment(self.g, &l).expect("uniform lists");
        search_unchecked(self.g, &r.lists, &r.matching).is_some()
    }

    /// Depth-first scan; stops at the first non-colorable system or when
    /// `budget` leaves have been visited.
    fn scan(&self, prefix: &mut Vec<Vec<Color>>, used: usize, visited: &AtomicU64, budget: u64) -> Option<Vec<Vec<Color>>> {
        if prefix.len() == self.g.n() {
            if visited.fetch_add(1, Ordering::Relaxed) >= budget {
                return None;
            }
            return (!self.colorable(prefix)).then(|| prefix.clone());
        }
        let i = prefix.len();
        for list in self.choices(used) {
            let new_used = used.max(list.last().map_or(0, |&c| c as usize + 1));
            prefix.push(list);
            if !self.closes[i].iter().all(|&v| self.no_private_color(prefix, v)) {
                prefix.pop();
                continue;
            }
            let found = self.scan(prefix, new_used, visited, budget);
            prefix.pop();
            if found.is_some() {
                return found;
            }
            if visited.load(Ordering::Relaxed) >= budget {
                return None;
            }
        }
        None
    }
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < r - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    go(0, n, r, &mut cur, &mut out);
    out
}

/// Decides k-choosability by enumerating canonical k-list systems over a
/// pool of `k * n` colors.
pub fn is_k_choosable(g: &Graph, k: usize, opts: &SearchOptions) -> Result<Verdict<ListCertificate>, SolverError> {
    if k == 0 || k * g.n() > MAX_COLORS {
        return Err(SolverError::BadK(k));
    }
    if g.n() > opts.choice_max_n {
        return Err(SolverError::TooLarge { n: g.n(), max: opts.choice_max_n });
    }
    if g.n() == 0 {
        return Ok(Verdict::Colorable { cases: 1 });
    }
    let space = ListSpace::new(g, k);
    let total = space.total();
    let certify = |lists: Vec<Vec<Color>>| {
        Verdict::Certificate(ListCertificate { k, lists: ListAssignment::new(lists).expect("nonempty") })
    };
    if total > opts.budget {
        let visited = AtomicU64::new(0);
        return match space.scan(&mut Vec::new(), 0, &visited, opts.budget) {
            Some(l) => Ok(certify(l)),
            None if visited.load(Ordering::Relaxed) < opts.budget => {
                Ok(Verdict::Colorable { cases: visited.load(Ordering::Relaxed) })
            }
            None => Err(SolverError::BudgetExceeded { required: total, budget: opts.budget, scanned: opts.budget }),
        };
    }
    // Blocks: all canonical prefixes of the first two vertices, in order.
    let first: Vec<Color> = (0..k as Color).collect();
    let mut prefixes = Vec::new();
    if g.n() == 1 {
        prefixes.push((vec![first], k));
    } else {
        for second in space.choices(k) {
            let used = k.max(second.last().map_or(0, |&c| c as usize + 1));
            prefixes.push((vec![first.clone(), second], used));
        }
    }
    let visited = AtomicU64::new(0);
    let run = |(prefix, used): &(Vec<Vec<Color>>, usize)| space.scan(&mut prefix.clone(), *used, &visited, u64::MAX);
    let found = if opts.jobs <= 1 {
        prefixes.iter().find_map(run)
    } else {
        with_pool(opts.jobs, || prefixes.par_iter().find_map_first(run))
    };
    Ok(match found {
        Some(l) => certify(l),
        None => Verdict::Colorable { cases: visited.into_inner() },
    })
}

/// `chi_list` outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiList {
    pub value: usize,
    pub lower_witness: Option<ListCertificate>,
    pub by_degeneracy: bool,
}

/// Choosability: the least `k` passing [`is_k_choosable`].
pub fn chi_list(g: &Graph, opts: &SearchOptions) -> Result<ChiList, SolverError> {
    if g.n() == 0 {
        return Ok(ChiList { value: 0, lower_witness: None, by_degeneracy: false });
    }
    let degeneracy = g.degeneracy();
    let mut witness = None;
    for k in 1.. {
        if k > degeneracy {
            return Ok(ChiList { value: k, lower_witness: witness, by_degeneracy: true });
        }
        match is_k_choosable(g, k, opts)? {
            Verdict::Colorable { .. } => return Ok(ChiList { value: k, lower_witness: witness, by_degeneracy: false }),
            Verdict::Certificate(c) => witness = Some(c),
        }
    }
    unreachable!()
}
