//! Named graphs and plane embeddings used by tests, benches and the CLI.

use std::f64::consts::TAU;

use rand::Rng;

use crate::embedding::{FaceId, PlaneEmbedding, RotationSystem};
use crate::graph::{Graph, Vertex};

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("simple")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("simple")
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("simple")
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::new(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).expect("simple")
}

/// Petersen graph: outer 5-cycle `0..5`, spokes `i - (i+5)`, inner pentagram.
pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, e).expect("simple")
}

/// Wheel with a hub `0` and rim `1..=rim`.
pub fn wheel(rim: usize) -> Graph {
    let mut e: Vec<(Vertex, Vertex)> = (1..=rim).map(|i| (0, i)).collect();
    e.extend((0..rim).map(|i| (1 + i, 1 + (i + 1) % rim)));
    Graph::new(rim + 1, e).expect("simple")
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut e = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                e.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                e.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::new(rows * cols, e).expect("simple")
}

fn ring(start: usize, len: usize, radius: f64, phase: f64) -> Vec<(usize, (f64, f64))> {
    (0..len)
        .map(|i| {
            let a = phase + TAU * i as f64 / len as f64;
            (start + i, (radius * a.cos(), radius * a.sin()))
        })
        .collect()
}

fn coords(n: usize, rings: &[Vec<(usize, (f64, f64))>]) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0); n];
    for r in rings {
        for &(v, p) in r {
            out[v] = p;
        }
    }
    out
}

fn straight_line(g: Graph, pts: &[(f64, f64)]) -> PlaneEmbedding {
    let rot = RotationSystem::from_coordinates(&g, pts);
    PlaneEmbedding::new(g, rot).expect("straight-line drawing is plane")
}

/// Prism over an `m`-gon: outer ring `0..m`, inner ring `m..2m`.
pub fn prism_graph(m: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..m {
        e.push((i, (i + 1) % m));
        e.push((m + i, m + (i + 1) % m));
        e.push((i, m + i));
    }
    Graph::new(2 * m, e).expect("simple")
}

pub fn cube() -> Graph {
    prism_graph(4)
}

/// Dodecahedron as concentric rings: outer pentagon `0..5`, middle decagon
/// `5..15`, inner pentagon `15..20`.
pub fn dodecahedron() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, 5 + 2 * i));
        e.push((5 + 2 * i + 1, 15 + i));
        e.push((15 + i, 15 + (i + 1) % 5));
    }
    for j in 0..10 {
        e.push((5 + j, 5 + (j + 1) % 10));
    }
    Graph::new(20, e).expect("simple")
}

/// Places a new neighbor `x` of `u` into the corner of `u` that follows the
/// walk from `prev`, i.e. right after `prev` in the rotation at `u`.
fn insert_after(order: &mut [Vec<Vertex>], u: Vertex, prev: Vertex, x: Vertex) {
    let at = order[u].iter().position(|&w| w == prev).expect("prev is a neighbor");
    order[u].insert(at + 1, x);
}

fn corner_prev(emb: &PlaneEmbedding, f: FaceId, pos: usize) -> Option<Vertex> {
    let vs = &emb.face(f).vertices;
    (!vs.is_empty()).then(|| vs[(pos + vs.len() - 1) % vs.len()])
}

/// Random connected plane embedding on `n` vertices: a random tree grown
/// by attaching pendants into random corners, then up to `chords` extra
/// edges, each drawn inside a random face between two non-adjacent
/// vertices on its boundary.
pub fn random_plane<R: Rng + ?Sized>(rng: &mut R, n: usize, chords: usize) -> PlaneEmbedding {
    assert!(n >= 1);
    let mut order: Vec<Vec<Vertex>> = vec![Vec::new()];
    let mut emb = embed(&order);
    for x in 1..n {
        order.push(Vec::new());
        let u = rng.gen_range(0..x);
        let corners = emb.corners(u);
        match corners.is_empty() {
            true => order[u].push(x),
            false => {
                let c = corners[rng.gen_range(0..corners.len())];
                let prev = corner_prev(&emb, c.face, c.pos).expect("nonempty face");
                insert_after(&mut order, u, prev, x);
            }
        }
        order[x].push(u);
        emb = embed(&order);
    }
    for _ in 0..chords {
        let f = rng.gen_range(0..emb.faces().len());
        let len = emb.face_len(f);
        let options: Vec<(usize, usize)> = (0..len)
            .flat_map(|i| (i + 1..len).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                let (u, w) = (emb.face(f).vertices[i], emb.face(f).vertices[j]);
                u != w && !emb.graph().has_edge(u, w)
            })
            .collect();
        if options.is_empty() {
            continue;
        }
        let (i, j) = options[rng.gen_range(0..options.len())];
        let (u, w) = (emb.face(f).vertices[i], emb.face(f).vertices[j]);
        let pu = corner_prev(&emb, f, i).expect("nonempty");
        let pw = corner_prev(&emb, f, j).expect("nonempty");
        insert_after(&mut order, u, pu, w);
        insert_after(&mut order, w, pw, u);
        emb = embed(&order);
    }
    emb
}

fn embed(order: &[Vec<Vertex>]) -> PlaneEmbedding {
    let rot = RotationSystem::new(order.to_vec());
    let g = rot.to_graph().expect("simple by construction");
    PlaneEmbedding::new(g, rot).expect("face insertions keep genus 0")
}

pub mod plane {
    //! Plane embeddings from straight-line drawings.
    use super::*;

    pub fn cycle(n: usize) -> PlaneEmbedding {
        let g = super::cycle(n);
        let pts = coords(n, &[ring(0, n, 1.0, 0.0)]);
        straight_line(g, &pts)
    }

    pub fn tetrahedron() -> PlaneEmbedding {
        let g = complete(4);
        let pts = coords(4, &[vec![(0, (0.0, 0.0))], ring(1, 3, 1.0, 0.0)]);
        straight_line(g, &pts)
    }

    pub fn prism(m: usize) -> PlaneEmbedding {
        let pts = coords(2 * m, &[ring(0, m, 2.0, 0.0), ring(m, m, 1.0, 0.0)]);
        straight_line(prism_graph(m), &pts)
    }

    pub fn cube() -> PlaneEmbedding {
        prism(4)
    }

    pub fn wheel(rim: usize) -> PlaneEmbedding {
        let pts = coords(rim + 1, &[vec![(0, (0.0, 0.0))], ring(1, rim, 1.0, 0.0)]);
        straight_line(super::wheel(rim), &pts)
    }

    pub fn dodecahedron() -> PlaneEmbedding {
        // Even middle vertices sit under the outer pentagon, odd ones over
        // the inner pentagon.
        let pts = coords(
            20,
            &[ring(0, 5, 3.0, 0.0), ring(5, 10, 2.0, 0.0), ring(15, 5, 1.0, TAU / 10.0)],
        );
        straight_line(super::dodecahedron(), &pts)
    }

    pub fn grid(rows: usize, cols: usize) -> PlaneEmbedding {
        let pts: Vec<(f64, f64)> = (0..rows * cols)
            .map(|v| ((v % cols) as f64, (v / cols) as f64))
            .collect();
        straight_line(super::grid(rows, cols), &pts)
    }

    /// Truncated tetrahedron: four triangles joined in a tetrahedral pattern,
    /// giving four 3-faces and four 6-faces.
    pub fn truncated_tetrahedron() -> PlaneEmbedding {
        // Central triangle 0,1,2; outer triangles {3,4,5}, {6,7,8}, {9,10,11}
        // placed around it.
        let e = [
            (0, 1), (1, 2), (2, 0),
            (3, 4), (4, 5), (5, 3),
            (6, 7), (7, 8), (8, 6),
            (9, 10), (10, 11), (11, 9),
            (0, 3), (1, 6), (2, 9),
            (4, 11), (5, 7), (8, 10),
        ];
        let g = Graph::new(12, e).expect("simple");
        let a = |k: f64| (k * TAU / 3.0 + TAU / 4.0).sin_cos();
        let at = |k: f64, r: f64| {
            let (s, c) = a(k);
            (r * c, r * s)
        };
        let mut pts = vec![(0.0, 0.0); 12];
        for i in 0..3 {
            let k = i as f64;
            pts[i] = at(k, 1.0);
            pts[3 + 3 * i] = at(k, 2.0);
            pts[4 + 3 * i] = at(k - 0.18, 4.0);
            pts[5 + 3 * i] = at(k + 0.18, 4.0);
        }
        // Outer triangles are {3,4,5}, {6,7,8}, {9,10,11} with attachments
        // 4-11, 5-7, 8-10 joining neighboring triangles.
        straight_line(g, &pts)
    }

    fn polar(r: f64, degrees: f64) -> (f64, f64) {
        let a = degrees.to_radians();
        (r * a.cos(), r * a.sin())
    }

    /// A 10-face `c0..c10` of 3-vertices (the bounded face of the inner
    /// ring) whose edges alternate between triangles `c(2j-1) c(2j) W_j`
    /// and 10-faces closed off by six-vertex paths between consecutive
    /// `W`s. Path vertices carry pendants into the outer face so every
    /// vertex next to a `W` has degree 3.
    ///
    /// Vertices: ring `0..10`, `W` hubs `10..15`, path vertices `15..45`,
    /// pendants `45..75`.
    pub fn ringed_decagon() -> PlaneEmbedding {
        let mut e = Vec::new();
        let mut pts = vec![(0.0, 0.0); 75];
        for i in 0..10 {
            e.push((i, (i + 1) % 10));
            pts[i] = polar(1.0, 36.0 * i as f64);
        }
        for j in 0..5 {
            let hub = 10 + j;
            let (a, b) = ((2 * j + 1) % 10, (2 * j + 2) % 10);
            e.push((a, hub));
            e.push((b, hub));
            let mid = 54.0 + 72.0 * j as f64;
            pts[hub] = polar(2.0, mid);
            let next_hub = 10 + (j + 1) % 5;
            let mut prev = hub;
            for s in 0..6 {
                let p = 15 + 6 * j + s;
                let angle = mid + 72.0 * (s + 1) as f64 / 7.0;
                pts[p] = polar(3.0, angle);
                pts[p + 30] = polar(4.0, angle);
                e.push((prev, p));
                e.push((p, p + 30));
                prev = p;
            }
            e.push((prev, next_hub));
        }
        straight_line(Graph::new(75, e).expect("simple"), &pts)
    }

    /// Inner pentagon `0..5` of 3-vertices with spokes to `5..10`; the
    /// outer cycle through `5..10` is subdivided by `10` (between 5 and 6)
    /// and `11` (between 6 and 7), so exactly two faces next to the
    /// pentagon are 5-faces.
    pub fn pentagon_between_pentagons() -> PlaneEmbedding {
        let mut e = Vec::new();
        let mut pts = vec![(0.0, 0.0); 12];
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, 5 + i));
            pts[i] = polar(1.0, 72.0 * i as f64);
            pts[5 + i] = polar(2.0, 72.0 * i as f64);
        }
        e.extend([(5, 10), (10, 6), (6, 11), (11, 7), (7, 8), (8, 9), (9, 5)]);
        pts[10] = polar(2.0, 36.0);
        pts[11] = polar(2.0, 108.0);
        straight_line(Graph::new(12, e).expect("simple"), &pts)
    }

    /// An 11-cycle `0..11` (the outer face) with triangles hung inside on
    /// edges 0-1, 1-2, 3-4, 5-6, 7-8 and 9-10 via apexes `11..17`: one
    /// 3-vertex run and four 2-vertex runs along the outer face.
    pub fn hendecagon_with_triangles() -> PlaneEmbedding {
        let mut e: Vec<(Vertex, Vertex)> = (0..11).map(|i| (i, (i + 1) % 11)).collect();
        let mut pts: Vec<(f64, f64)> = (0..11).map(|i| polar(2.0, 360.0 * i as f64 / 11.0)).collect();
        for (a, i) in [0, 1, 3, 5, 7, 9].into_iter().zip(11..) {
            e.push((a, i));
            e.push((a + 1, i));
            pts.push(polar(1.5, 360.0 * (a as f64 + 0.5) / 11.0));
        }
        straight_line(Graph::new(17, e).expect("simple"), &pts)
    }
}
