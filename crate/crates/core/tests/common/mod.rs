//! Reference implementations used as oracles by the integration tests.
//! Nothing here calls into the search code under test.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use dpcolor::dp::{Color, ListAssignment, Matching, MatchingAssignment};
use dpcolor::graph::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

pub const FIXTURE: &str = include_str!("../data/connected_upto7.g6");

pub fn fixture_lines() -> Vec<String> {
    FIXTURE.lines().map(str::to_string).filter(|l| !l.trim().is_empty()).collect()
}

/// graph6 decoding straight from the bit layout: pairs `(i, j)`, `i < j`,
/// ordered by `j` then `i`, six bits per character after the size prefix.
/// Edges come back sorted.
pub fn decode_graph6(s: &str) -> (usize, Vec<(usize, usize)>) {
    let bytes: Vec<u32> = s.trim().bytes().map(|b| b as u32 - 63).collect();
    let (n, rest) = if bytes[0] < 63 {
        (bytes[0] as usize, &bytes[1..])
    } else {
        (((bytes[1] << 12) | (bytes[2] << 6) | bytes[3]) as usize, &bytes[4..])
    };
    let bit = |k: usize| (rest[k / 6] >> (5 - k % 6)) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges.sort_unstable();
    (n, edges)
}

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

/// Cycle lengths by following every simple path from every start vertex.
pub fn naive_cycle_lengths(g: &Graph) -> BTreeSet<usize> {
    fn walk(adj: &[Vec<usize>], start: usize, path: &mut Vec<usize>, found: &mut BTreeSet<usize>) {
        let last = *path.last().unwrap();
        for &w in &adj[last] {
            if w == start && path.len() >= 3 {
                found.insert(path.len());
            } else if !path.contains(&w) {
                path.push(w);
                walk(adj, start, path, found);
                path.pop();
            }
        }
    }
    let adj = adjacency(g.n(), g.edges());
    let mut found = BTreeSet::new();
    for s in 0..g.n() {
        walk(&adj, s, &mut vec![s], &mut found);
    }
    found
}

/// Proper chromatic number by trying every coloring.
pub fn brute_chromatic(g: &Graph) -> usize {
    let n = g.n();
    (1..=n.max(1))
        .find(|&k| {
            (0..k.pow(n as u32)).any(|mut code| {
                let c: Vec<usize> = (0..n)
                    .map(|_| {
                        let x = code % k;
                        code /= k;
                        x
                    })
                    .collect();
                g.edges().iter().all(|&(u, v)| c[u] != c[v])
            })
        })
        .unwrap_or(0)
}

/// Every partial matching between `0..k` and `0..k`, as pair lists.
pub fn all_partial_matchings(k: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(k: usize, a: usize, used: &mut Vec<bool>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if a == k {
            out.push(cur.clone());
            return;
        }
        go(k, a + 1, used, cur, out);
        for b in 0..k {
            if !used[b] {
                used[b] = true;
                cur.push((a, b));
                go(k, a + 1, used, cur, out);
                cur.pop();
                used[b] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(k, 0, &mut vec![false; k], &mut Vec::new(), &mut out);
    out
}

/// DP-k-colorability over the full adversary space: lists `0..k`, every
/// edge free to take any partial matching. Colorings are bits of a mask;
/// each edge choice kills the colorings using one of its matched pairs,
/// and the adversary wins if it can kill them all. Needs `k^n <= 128`.
pub fn brute_dp_colorable(g: &Graph, k: usize) -> bool {
    let n = g.n();
    let total = k.pow(n as u32);
    assert!(total <= 128, "{k}^{n} colorings do not fit a mask");
    let colorings: Vec<Vec<usize>> = (0..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let x = code % k;
                    code /= k;
                    x
                })
                .collect()
        })
        .collect();
    let all: u128 = if total == 128 { u128::MAX } else { (1u128 << total) - 1 };
    let matchings = all_partial_matchings(k);
    let kills: Vec<Vec<u128>> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let mut ks: Vec<u128> = matchings
                .iter()
                .map(|pairs| {
                    colorings
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| pairs.contains(&(c[u], c[v])))
                        .fold(0u128, |m, (i, _)| m | (1 << i))
                })
                .collect();
            ks.sort_unstable();
            ks.dedup();
            // Large kills first: wins show up early.
            ks.sort_by_key(|k| std::cmp::Reverse(k.count_ones()));
            ks
        })
        .collect();
    fn adversary_wins(kills: &[Vec<u128>], e: usize, alive: u128, seen: &mut HashSet<(usize, u128)>) -> bool {
        if alive == 0 {
            return true;
        }
        if e == kills.len() || !seen.insert((e, alive)) {
            return false;
        }
        kills[e].iter().any(|&k| adversary_wins(kills, e + 1, alive & !k, seen))
    }
    !adversary_wins(&kills, 0, all, &mut HashSet::new())
}

/// Validity from first principles: list membership, and no edge joins a
/// matched pair.
pub fn valid_dp(g: &Graph, lists: &ListAssignment, m: &MatchingAssignment, c: &[Color]) -> bool {
    c.len() == g.n()
        && (0..g.n()).all(|v| lists.list(v).contains(&c[v]))
        && g.edges().iter().enumerate().all(|(e, &(u, v))| !m.matching(e).pairs().contains(&(c[u], c[v])))
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).filter(|_| rng.gen_bool(p)).collect();
    Graph::new(n, pairs).unwrap()
}

/// Lists of size `k` drawn from `0..palette`.
pub fn random_lists<R: Rng>(rng: &mut R, n: usize, k: usize, palette: usize) -> ListAssignment {
    let colors: Vec<Color> = (0..palette as Color).collect();
    ListAssignment::new((0..n).map(|_| colors.choose_multiple(rng, k).copied().collect()).collect()).unwrap()
}

/// A random matching per edge between the endpoint lists; perfect with
/// probability `p_full`, otherwise of random size.
pub fn random_matchings<R: Rng>(rng: &mut R, g: &Graph, lists: &ListAssignment, p_full: f64) -> MatchingAssignment {
    let ms = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let mut a = lists.list(u).to_vec();
            let mut b = lists.list(v).to_vec();
            a.shuffle(rng);
            b.shuffle(rng);
            let max = a.len().min(b.len());
            let size = if rng.gen_bool(p_full) { max } else { rng.gen_range(0..=max) };
            let pairs: Vec<(Color, Color)> = a.into_iter().zip(b).take(size).collect();
            Matching::from_pairs(&pairs).unwrap()
        })
        .collect();
    MatchingAssignment::from_matchings(ms)
}

/// Random valid coloring of every vertex not in `skip`, built greedily in a
/// random order with random choices; `None` if `tries` attempts all stall.
pub fn random_partial_coloring<R: Rng>(
    rng: &mut R,
    g: &Graph,
    lists: &ListAssignment,
    m: &MatchingAssignment,
    skip: &[usize],
    tries: usize,
) -> Option<Vec<Option<Color>>> {
    let conflicts = |c: &[Option<Color>], v: usize, x: Color| {
        g.neighbors(v).iter().any(|&w| {
            let e = g.edge_id(v, w).unwrap();
            let pair = if v < w { (Some(x), c[w]) } else { (c[w], Some(x)) };
            match pair {
                (Some(a), Some(b)) => m.matching(e).pairs().contains(&(a, b)),
                _ => false,
            }
        })
    };
    'attempt: for _ in 0..tries {
        let mut order: Vec<usize> = (0..g.n()).filter(|v| !skip.contains(v)).collect();
        order.shuffle(rng);
        let mut c = vec![None; g.n()];
        for v in order {
            let options: Vec<Color> = lists.list(v).iter().copied().filter(|&x| !conflicts(&c, v, x)).collect();
            match options.choose(rng) {
                Some(&x) => c[v] = Some(x),
                None => continue 'attempt,
            }
        }
        return Some(c);
    }
    None
}

/// Colors of `L(v)`, `v` in `h`, not matched to the color of a neighbor
/// outside `h`.
pub fn residual(g: &Graph, h: &[usize], lists: &ListAssignment, m: &MatchingAssignment, partial: &[Option<Color>]) -> Vec<Vec<Color>> {
    h.iter()
        .map(|&v| {
            lists
                .list(v)
                .iter()
                .copied()
                .filter(|&c| {
                    g.neighbors(v).iter().filter(|w| !h.contains(w)).all(|&w| {
                        let e = g.edge_id(v, w).unwrap();
                        let cw = partial[w].unwrap();
                        let pair = if v < w { (c, cw) } else { (cw, c) };
                        !m.matching(e).pairs().contains(&pair)
                    })
                })
                .collect()
        })
        .collect()
}

/// The three ordering conditions, read literally: ends adjacent with
/// `|A(v1)| > |A(vl)| >= 1`; `d(vl) <= k` with a neighbor outside;
/// each interior vertex has at most `k - 1` neighbors that are earlier or
/// outside.
pub fn ordering_conditions_hold(g: &Graph, order: &[usize], k: usize, residual: &[Vec<Color>]) -> bool {
    let l = order.len();
    if l < 2 {
        return false;
    }
    let (first, last) = (order[0], order[l - 1]);
    let pos = |w: usize| order.iter().position(|&x| x == w);
    let one = g.has_edge(first, last) && residual[0].len() > residual[l - 1].len() && !residual[l - 1].is_empty();
    let two = g.degree(last) <= k && g.neighbors(last).iter().any(|&w| pos(w).is_none());
    let three = (1..l - 1).all(|i| {
        let back = g.neighbors(order[i]).iter().filter(|&&w| pos(w).is_none_or(|j| j < i)).count();
        back < k
    });
    one && two && three
}

pub struct Instance {
    pub g: Graph,
    /// The uncolored vertices, in extension order.
    pub h: Vec<usize>,
    pub lists: ListAssignment,
    pub m: MatchingAssignment,
    pub partial: Vec<Option<Color>>,
}

/// Graph with a vertex of degree below 3, lists of size 3, random partial
/// matchings and a random coloring of everything else.
pub fn low_degree_instance<R: Rng>(rng: &mut R) -> Instance {
    loop {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.2..0.7);
        let g = random_graph(rng, n, p);
        let v = rng.gen_range(0..n);
        if g.degree(v) >= 3 {
            continue;
        }
        let palette = rng.gen_range(3..=6);
        let lists = random_lists(rng, n, 3, palette);
        let m = random_matchings(rng, &g, &lists, 0.5);
        if let Some(partial) = random_partial_coloring(rng, &g, &lists, &m, &[v], 10) {
            return Instance { g, h: vec![v], lists, m, partial };
        }
    }
}

/// Random instance meeting the ordering conditions for `k = 3` on the
/// actual residual lists. Returns the instance and the number of rejected
/// draws.
pub fn ordered_instance<R: Rng>(rng: &mut R) -> (Instance, usize) {
    let mut rejected = 0;
    loop {
        let n = rng.gen_range(3..=8);
        let l = rng.gen_range(2..=(n - 1).min(5));
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(rng);
        let h: Vec<usize> = vs[..l].to_vec();
        let p = rng.gen_range(0.15..0.5);
        let base = random_graph(rng, n, p);
        let mut pairs = base.edges().to_vec();
        pairs.push((h[0], h[l - 1]));
        let g = Graph::new(n, pairs).unwrap();
        let palette = rng.gen_range(3..=6);
        let lists = random_lists(rng, n, 3, palette);
        let m = random_matchings(rng, &g, &lists, 0.5);
        let Some(partial) = random_partial_coloring(rng, &g, &lists, &m, &h, 10) else {
            rejected += 1;
            continue;
        };
        let a = residual(&g, &h, &lists, &m, &partial);
        if ordering_conditions_hold(&g, &h, 3, &a) {
            return (Instance { g, h, lists, m, partial }, rejected);
        }
        rejected += 1;
    }
}
