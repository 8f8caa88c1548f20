//! Reference implementations written directly from the definitions, with
//! no code shared with the library: dense boolean matrices, union-find,
//! brute-force permutations.

use std::collections::BTreeSet;

use gemtopo::graph::ColoredGraph;
use gemtopo::surface::CwSurface;

/// Rank over GF(2) by textbook row reduction.
pub fn gf2_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn root(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        r
    }

    fn join(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.root(a), self.root(b));
        self.0[ra] = rb;
    }

    fn count(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.root(x) == x).count()
    }
}

/// Connected components of the subgraph on `colors`, nodes `0..n` black
/// and `n..2n` white.
pub fn component_count(g: &ColoredGraph, colors: &[usize]) -> usize {
    let n = g.half_size();
    let mut d = Dsu::new(2 * n);
    for &c in colors {
        for b in 0..n {
            d.join(b, n + g.matching(c)[b]);
        }
    }
    d.count()
}

/// All cyclic orders of `0..=rank` up to rotation and reversal, by
/// enumerating every permutation and keeping the smallest equivalent.
pub fn jacket_orders(rank: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    let mut perm: Vec<usize> = (0..=rank).collect();
    permutations(&mut perm, 0, &mut |p| {
        out.insert(canonical_cycle(p));
    });
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

pub fn canonical_cycle(p: &[usize]) -> Vec<usize> {
    let n = p.len();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        for dir in [1, n - 1] {
            let v: Vec<usize> = (0..n).map(|t| p[(start + t * dir) % n]).collect();
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
    }
    best.unwrap()
}

/// Genus of the jacket with cyclic color order `order`, from the Euler
/// characteristic of its ribbon graph.
pub fn jacket_genus(g: &ColoredGraph, order: &[usize]) -> usize {
    let faces: usize = (0..order.len())
        .map(|t| component_count(g, &[order[t], order[(t + 1) % order.len()]]))
        .sum();
    let chi = g.node_count() as i64 - g.line_count() as i64 + faces as i64;
    usize::try_from((2 - chi) / 2).expect("non-negative genus")
}

/// Central genus from a single jacket count: the surface made of all
/// special-color bubbles' jackets for the square order, with one tube per
/// special line, has genus `2n + 1 - F/2`.
pub fn central_genus(g: &ColoredGraph, square_order: [usize; 4]) -> usize {
    let faces: usize = (0..4)
        .map(|t| component_count(g, &[square_order[t], square_order[(t + 1) % 4]]))
        .sum();
    2 * g.half_size() + 1 - faces / 2
}

fn edge_rows(s: &CwSurface) -> Vec<Vec<bool>> {
    s.edges
        .iter()
        .map(|e| {
            let mut row = vec![false; s.vertices.len()];
            row[e.from] ^= true;
            row[e.to] ^= true;
            row
        })
        .collect()
}

fn walk_row(s: &CwSurface, walk: &[gemtopo::surface::DirEdge]) -> Vec<bool> {
    let mut row = vec![false; s.edges.len()];
    for d in walk {
        row[d.edge] ^= true;
    }
    row
}

fn face_rows(s: &CwSurface) -> Vec<Vec<bool>> {
    s.faces.iter().map(|f| walk_row(s, &f.walk)).collect()
}

/// Dimension of the first GF(2) homology: `E - rank ∂1 - rank ∂2`.
pub fn h1_rank(s: &CwSurface) -> usize {
    s.edges.len() - gf2_rank(edge_rows(s)) - gf2_rank(face_rows(s))
}

/// Rank of the span of the given walks in homology.
pub fn homology_span(s: &CwSurface, walks: &[&[gemtopo::surface::DirEdge]]) -> usize {
    let faces = face_rows(s);
    let base = gf2_rank(faces.clone());
    let mut all = faces;
    all.extend(walks.iter().map(|w| walk_row(s, w)));
    gf2_rank(all) - base
}

/// Whether a walk is a closed loop in the surface's 1-skeleton.
pub fn is_closed(s: &CwSurface, walk: &[gemtopo::surface::DirEdge]) -> bool {
    let ends = |d: &gemtopo::surface::DirEdge| {
        let e = &s.edges[d.edge];
        if d.forward {
            (e.from, e.to)
        } else {
            (e.to, e.from)
        }
    };
    !walk.is_empty()
        && (0..walk.len()).all(|t| ends(&walk[t]).1 == ends(&walk[(t + 1) % walk.len()]).0)
}

/// Genus of a closed orientable surface from `V - E + F`.
pub fn surface_genus(s: &CwSurface) -> usize {
    let chi = s.vertices.len() as i64 - s.edges.len() as i64 + s.faces.len() as i64;
    usize::try_from((2 - chi) / 2).expect("non-negative genus")
}
