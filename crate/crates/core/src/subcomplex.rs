//! Bubbles, bicolored cycles, jackets and the Gurau degree.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{self, Color, ColoredGraph, Node};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SubcomplexError {
    #[error("empty color set")]
    EmptyColorSet,
    #[error("a bubble needs at least two colors")]
    TooFewColors,
    #[error("color {0} out of range")]
    ColorOutOfRange(Color),
    #[error("bicolored cycles need two distinct colors, got {0} twice")]
    SameColor(Color),
}

/// A connected component of the subgraph spanned by a color subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bubble {
    /// Original colors, ascending. Color `k` of `graph` is `colors[k]`.
    pub colors: Vec<Color>,
    /// Dense ids (in the parent graph) of the nodes, ascending.
    pub nodes: Vec<usize>,
    /// The bubble as a graph of rank `colors.len() - 1`.
    pub graph: ColoredGraph,
    /// Parent positive index of each bubble positive node.
    pub pos_map: Vec<usize>,
    /// Parent negative index of each bubble negative node.
    pub neg_map: Vec<usize>,
}

impl Bubble {
    /// Parent node of a bubble node.
    pub fn parent_node(&self, node: Node) -> Node {
        match node.sign {
            graph::Sign::Pos => Node::pos(self.pos_map[node.index]),
            graph::Sign::Neg => Node::neg(self.neg_map[node.index]),
        }
    }

    /// Bubble-local color of an original color.
    pub fn local_color(&self, color: Color) -> Option<Color> {
        self.colors.iter().position(|&c| c == color)
    }
}

/// Alternating cycle in two colors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BicoloredCycle {
    pub colors: (Color, Color),
    /// Nodes in order, starting at a positive node and leaving it along
    /// `colors.0`.
    pub walk: Vec<Node>,
}

impl BicoloredCycle {
    /// Number of lines (equal to the number of nodes; always even).
    pub fn length(&self) -> usize {
        self.walk.len()
    }
}

/// A cyclic color order modulo rotation and reversal, with its faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jacket {
    pub order: Vec<Color>,
    pub faces: Vec<BicoloredCycle>,
    pub genus: usize,
}

impl Jacket {
    pub fn euler_characteristic(&self, g: &ColoredGraph) -> i64 {
        g.node_count() as i64 - g.line_count() as i64 + self.faces.len() as i64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    CertifiedSphere,
    Surface { genus: usize },
    Unknown,
}

/// Topology certificate for a bubble. `degree` is the Gurau degree (for
/// rank 2 this equals the surface genus).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BubbleTopology {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub degree: usize,
}

impl BubbleTopology {
    pub fn is_certified_sphere(&self) -> bool {
        matches!(
            self.verdict,
            Verdict::CertifiedSphere | Verdict::Surface { genus: 0 }
        )
    }
}

fn check_colors(g: &ColoredGraph, colors: &[Color]) -> Result<Vec<Color>, SubcomplexError> {
    if colors.is_empty() {
        return Err(SubcomplexError::EmptyColorSet);
    }
    if let Some(&c) = colors.iter().find(|&&c| c > g.rank()) {
        return Err(SubcomplexError::ColorOutOfRange(c));
    }
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() < 2 {
        return Err(SubcomplexError::TooFewColors);
    }
    Ok(sorted)
}

/// Bubbles on `colors`, ordered by smallest node id.
pub fn bubbles(g: &ColoredGraph, colors: &[Color]) -> Result<Vec<Bubble>, SubcomplexError> {
    let colors = check_colors(g, colors)?;
    let comps = graph::components(g, &colors).expect("colors checked");
    let n = g.half_size();
    let bubbles = comps
        .into_iter()
        .map(|nodes| {
            let pos_map: Vec<usize> = nodes.iter().copied().filter(|&v| v < n).collect();
            let neg_map: Vec<usize> = nodes.iter().filter(|&&v| v >= n).map(|&v| v - n).collect();
            let mut neg_local = vec![usize::MAX; n];
            for (k, &w) in neg_map.iter().enumerate() {
                neg_local[w] = k;
            }
            let matchings = colors
                .iter()
                .map(|&c| {
                    pos_map
                        .iter()
                        .map(|&b| neg_local[g.matching(c)[b]])
                        .collect()
                })
                .collect();
            let graph = ColoredGraph::new(colors.len() - 1, matchings)
                .expect("a component restricted to its colors is a valid colored graph");
            Bubble {
                colors: colors.clone(),
                nodes,
                graph,
                pos_map,
                neg_map,
            }
        })
        .collect();
    Ok(bubbles)
}

/// All `{i, j}`-cycles: orbits of `π_j⁻¹ ∘ π_i` on the positive nodes.
pub fn bicolored_cycles(
    g: &ColoredGraph,
    i: Color,
    j: Color,
) -> Result<Vec<BicoloredCycle>, SubcomplexError> {
    if i == j {
        return Err(SubcomplexError::SameColor(i));
    }
    for c in [i, j] {
        if c > g.rank() {
            return Err(SubcomplexError::ColorOutOfRange(c));
        }
    }
    let inv_j = g.inverse(j);
    let mut seen = vec![false; g.half_size()];
    let mut cycles = Vec::new();
    for start in 0..g.half_size() {
        if seen[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut b = start;
        loop {
            seen[b] = true;
            let w = g.matching(i)[b];
            walk.push(Node::pos(b));
            walk.push(Node::neg(w));
            b = inv_j[w];
            if b == start {
                break;
            }
        }
        cycles.push(BicoloredCycle {
            colors: (i, j),
            walk,
        });
    }
    Ok(cycles)
}

/// Number of `{i, j}`-cycles without materializing them.
pub fn cycle_count(g: &ColoredGraph, i: Color, j: Color) -> usize {
    let inv_j = g.inverse(j);
    let mut seen = vec![false; g.half_size()];
    let mut count = 0;
    for start in 0..g.half_size() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut b = start;
        while !seen[b] {
            seen[b] = true;
            b = inv_j[g.matching(i)[b]];
        }
    }
    count
}

/// Canonical cyclic orders of `0..=rank`: start at 0, second entry smaller
/// than the last; sorted lexicographically. There are `rank!/2` of them
/// (one for rank 2).
pub fn cyclic_orders(rank: usize) -> Vec<Vec<Color>> {
    let mut rest: Vec<Color> = (1..=rank).collect();
    let mut out = Vec::new();
    permute(&mut rest, 0, &mut |p| {
        if p.len() < 2 || p[0] < p[p.len() - 1] {
            let mut order = vec![0];
            order.extend_from_slice(p);
            out.push(order);
        }
    });
    out.sort();
    out
}

fn permute(items: &mut Vec<Color>, k: usize, visit: &mut dyn FnMut(&[Color])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Number of faces of the jacket with the given cyclic order.
pub fn jacket_face_count(g: &ColoredGraph, order: &[Color]) -> usize {
    let k = order.len();
    (0..k)
        .map(|t| cycle_count(g, order[t], order[(t + 1) % k]))
        .sum()
}

/// Genus of the jacket with the given cyclic order.
pub fn jacket_genus(g: &ColoredGraph, order: &[Color]) -> usize {
    let chi = g.node_count() as i64 - g.line_count() as i64 + jacket_face_count(g, order) as i64;
    debug_assert!(
        chi <= 2 && chi % 2 == 0,
        "jacket Euler characteristic {chi}"
    );
    ((2 - chi) / 2) as usize
}

pub fn jacket(g: &ColoredGraph, order: &[Color]) -> Jacket {
    let k = order.len();
    let faces = (0..k)
        .flat_map(|t| {
            bicolored_cycles(g, order[t], order[(t + 1) % k]).expect("distinct colors in order")
        })
        .collect();
    Jacket {
        order: order.to_vec(),
        faces,
        genus: jacket_genus(g, order),
    }
}

/// All `rank!/2` jackets in canonical order.
pub fn jackets(g: &ColoredGraph) -> Vec<Jacket> {
    cyclic_orders(g.rank())
        .par_iter()
        .map(|order| jacket(g, order))
        .collect()
}

/// Sum of all jacket genera.
pub fn gurau_degree(g: &ColoredGraph) -> usize {
    cyclic_orders(g.rank())
        .iter()
        .map(|order| jacket_genus(g, order))
        .sum()
}

/// Sound but incomplete topology certificate for a bubble.
pub fn classify_bubble(b: &Bubble) -> BubbleTopology {
    classify_graph(&b.graph)
}

pub fn classify_graph(g: &ColoredGraph) -> BubbleTopology {
    match g.rank() {
        // a bicolored cycle is a circle
        1 => BubbleTopology {
            verdict: Verdict::CertifiedSphere,
            degree: 0,
        },
        2 => {
            let genus = gurau_degree(g);
            BubbleTopology {
                verdict: Verdict::Surface { genus },
                degree: genus,
            }
        }
        _ => {
            let degree = gurau_degree(g);
            let verdict = if degree == 0 {
                Verdict::CertifiedSphere
            } else {
                Verdict::Unknown
            };
            BubbleTopology { verdict, degree }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ManifoldVerdict {
    CertifiedManifold,
    /// Some vertex link is a closed surface of positive genus (rank 3 only).
    NotManifold,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BubbleEntry {
    pub missing_color: Color,
    pub index: usize,
    pub nodes: usize,
    pub topology: BubbleTopology,
    /// For rank-4 graphs: whether all of this bubble's own 3-bubbles are
    /// certified spheres.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub links_certified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifoldReport {
    pub verdict: ManifoldVerdict,
    pub bubbles: Vec<BubbleEntry>,
}

impl ManifoldReport {
    pub fn uncertified(&self) -> impl Iterator<Item = &BubbleEntry> {
        self.bubbles
            .iter()
            .filter(|b| !b.topology.is_certified_sphere())
    }
}

/// Classifies every d-bubble (one color removed).
pub fn manifold_report(g: &ColoredGraph) -> ManifoldReport {
    let mut entries = Vec::new();
    for missing in g.colors() {
        let colors = graph::complement(g, &[missing]);
        for (index, b) in bubbles(g, &colors).expect("d >= 2").into_iter().enumerate() {
            let topology = classify_bubble(&b);
            let links_certified = (g.rank() == 4).then(|| {
                b.graph.colors().all(|m| {
                    let sub = graph::complement(&b.graph, &[m]);
                    bubbles(&b.graph, &sub)
                        .expect("rank-3 bubble")
                        .iter()
                        .all(|s| classify_bubble(s).is_certified_sphere())
                })
            });
            entries.push(BubbleEntry {
                missing_color: missing,
                index,
                nodes: b.nodes.len(),
                topology,
                links_certified,
            });
        }
    }
    let disproven = entries
        .iter()
        .any(|e| matches!(e.topology.verdict, Verdict::Surface { genus } if genus > 0));
    let verdict = if disproven {
        ManifoldVerdict::NotManifold
    } else if entries.iter().all(|e| e.topology.is_certified_sphere()) {
        ManifoldVerdict::CertifiedManifold
    } else {
        ManifoldVerdict::Unknown
    };
    ManifoldReport {
        verdict,
        bubbles: entries,
    }
}
