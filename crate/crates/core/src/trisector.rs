//! Trisection diagrams of rank-4 graphs.
//!
//! For a special color `c` and a pairing `{j1,j2} | {k1,k2}` of the other
//! four colors, every ĉ-bubble is realized by the quadrangulation dual to
//! its jacket with cyclic order `(j1, k1, j2, k2)`: squares are bubble
//! nodes, edges are bubble lines, vertices are the jacket's bicolored
//! cycles. Each square has its interior disc removed (it becomes an annulus
//! of four quadrilaterals) and every `c`-colored line becomes a tube of four
//! rectangles joining the two holes of its endpoints. The result is the
//! central surface; its genus is `Σ g_J + L`.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{self, Color, ColoredGraph, Defect, LineId, Node};
use crate::subcomplex::{self, Bubble};
use crate::surface::{
    self, CurveOnSurface, CwSurface, DirEdge, Edge, EdgeLabel, Face, FaceLabel, Family,
    FamilySelection, Provenance, SurfaceError, VertexLabel,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TrisectError {
    #[error("expected a rank-4 graph, got rank {0}")]
    WrongRank(usize),
    #[error("special color {0} out of range")]
    BadColor(Color),
    #[error("pairs {0:?} | {1:?} do not partition the non-special colors")]
    BadPairPartition([Color; 2], [Color; 2]),
    #[error("invalid graph: {0}")]
    Invalid(Defect),
    #[error("surface genus {surface} differs from predicted central genus {predicted}")]
    GenusMismatch { surface: usize, predicted: usize },
    #[error("surface construction failed: {0}")]
    Surface(#[from] SurfaceError),
}

/// Special color plus a pairing of the remaining four colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TrisectionChoice {
    pub special: Color,
    pub alpha_pair: [Color; 2],
    pub beta_pair: [Color; 2],
}

impl TrisectionChoice {
    pub fn new(
        special: Color,
        alpha_pair: [Color; 2],
        beta_pair: [Color; 2],
    ) -> Result<Self, TrisectError> {
        if special > 4 {
            return Err(TrisectError::BadColor(special));
        }
        let mut all = [
            special,
            alpha_pair[0],
            alpha_pair[1],
            beta_pair[0],
            beta_pair[1],
        ];
        all.sort_unstable();
        if all != [0, 1, 2, 3, 4] {
            return Err(TrisectError::BadPairPartition(alpha_pair, beta_pair));
        }
        Ok(TrisectionChoice {
            special,
            alpha_pair,
            beta_pair,
        })
    }

    /// All 15 choices: special color ascending, then the three pairings of
    /// the remaining colors `r0 < r1 < r2 < r3` as `r0r1|r2r3`, `r0r2|r1r3`,
    /// `r0r3|r1r2`.
    pub fn all() -> Vec<TrisectionChoice> {
        let mut out = Vec::with_capacity(15);
        for special in 0..=4 {
            let r: Vec<Color> = (0..=4).filter(|&x| x != special).collect();
            for (a, b) in [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))] {
                out.push(TrisectionChoice {
                    special,
                    alpha_pair: [r[a.0], r[a.1]],
                    beta_pair: [r[b.0], r[b.1]],
                });
            }
        }
        out
    }

    /// Side colors of every square in cyclic order `(j1, k1, j2, k2)`.
    pub fn square_order(&self) -> [Color; 4] {
        [
            self.alpha_pair[0],
            self.beta_pair[0],
            self.alpha_pair[1],
            self.beta_pair[1],
        ]
    }

    pub fn non_special(&self) -> Vec<Color> {
        (0..=4).filter(|&x| x != self.special).collect()
    }
}

/// ĉ-bubbles collapsed to points, joined by the `c`-colored lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapsedGraph {
    pub special: Color,
    pub node_count: usize,
    /// (bubble of the positive end, bubble of the negative end, line).
    pub edges: Vec<(usize, usize, LineId)>,
    pub loop_rank: usize,
}

fn check_graph(g: &ColoredGraph) -> Result<(), TrisectError> {
    if g.rank() != 4 {
        return Err(TrisectError::WrongRank(g.rank()));
    }
    graph::require_valid(g).map_err(TrisectError::Invalid)
}

fn special_bubbles(g: &ColoredGraph, special: Color) -> Vec<Bubble> {
    subcomplex::bubbles(g, &graph::complement(g, &[special])).expect("four colors")
}

/// Bubble index of every node (dense id).
fn bubble_index(g: &ColoredGraph, bubbles: &[Bubble]) -> Vec<usize> {
    let mut of = vec![0; g.node_count()];
    for (a, b) in bubbles.iter().enumerate() {
        for &v in &b.nodes {
            of[v] = a;
        }
    }
    of
}

pub fn collapse(g: &ColoredGraph, special: Color) -> Result<CollapsedGraph, TrisectError> {
    check_graph(g)?;
    if special > 4 {
        return Err(TrisectError::BadColor(special));
    }
    let bubbles = special_bubbles(g, special);
    Ok(collapse_with(g, special, &bubbles))
}

fn collapse_with(g: &ColoredGraph, special: Color, bubbles: &[Bubble]) -> CollapsedGraph {
    let of = bubble_index(g, bubbles);
    let n = g.half_size();
    let edges: Vec<_> = (0..n)
        .map(|black| {
            let line = LineId {
                color: special,
                black,
            };
            (of[black], of[n + g.white_of(line)], line)
        })
        .collect();
    CollapsedGraph {
        special,
        node_count: bubbles.len(),
        loop_rank: edges.len() + 1 - bubbles.len(),
        edges,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralGenus {
    pub genus: usize,
    pub bubble_genera: Vec<usize>,
    pub loop_rank: usize,
}

pub fn central_genus(
    g: &ColoredGraph,
    choice: TrisectionChoice,
) -> Result<CentralGenus, TrisectError> {
    check_graph(g)?;
    let bubbles = special_bubbles(g, choice.special);
    Ok(central_genus_with(g, choice, &bubbles))
}

fn central_genus_with(
    g: &ColoredGraph,
    choice: TrisectionChoice,
    bubbles: &[Bubble],
) -> CentralGenus {
    let order = choice.square_order();
    let bubble_genera: Vec<usize> = bubbles
        .iter()
        .map(|b| {
            let local: Vec<Color> = order
                .iter()
                .map(|&c| b.local_color(c).expect("bubble color"))
                .collect();
            subcomplex::jacket_genus(&b.graph, &local)
        })
        .collect();
    let loop_rank = collapse_with(g, choice.special, bubbles).loop_rank;
    CentralGenus {
        genus: bubble_genera.iter().sum::<usize>() + loop_rank,
        bubble_genera,
        loop_rank,
    }
}

/// Cell ids of the central surface, kept alongside it for curve tracing.
struct SurfaceIndex {
    order: [Color; 4],
    half: usize,
    /// Edge of the non-special line at (color, black).
    line_edge: Vec<Vec<usize>>,
    /// `diagonal[v][t]`, `inner_arc[v][t]` for dense node `v`.
    diagonal: Vec<[usize; 4]>,
    inner_arc: Vec<[usize; 4]>,
    /// `longitudinal[black][t]` for the special line at `black`.
    longitudinal: Vec<[usize; 4]>,
}

impl SurfaceIndex {
    fn side(&self, color: Color) -> usize {
        self.order
            .iter()
            .position(|&c| c == color)
            .expect("non-special color")
    }

    fn line_edge_at(&self, g: &ColoredGraph, node: Node, color: Color) -> usize {
        self.line_edge[color][g.line_at(node, color).black]
    }

    fn dense(&self, node: Node) -> usize {
        node.dense(self.half)
    }
}

fn build(
    g: &ColoredGraph,
    choice: TrisectionChoice,
    bubbles: &[Bubble],
) -> (CwSurface, SurfaceIndex) {
    let n = g.half_size();
    let order = choice.square_order();
    let of = bubble_index(g, bubbles);

    let mut vertices = Vec::new();
    let mut corner_vertex = vec![vec![usize::MAX; 2 * n]; 4];
    // corner vertices grouped by bubble, then corner, then cycle
    let cycles: Vec<Vec<subcomplex::BicoloredCycle>> = (0..4)
        .map(|t| subcomplex::bicolored_cycles(g, order[t], order[(t + 1) % 4]).expect("distinct"))
        .collect();
    for bubble in 0..bubbles.len() {
        for (t, cs) in cycles.iter().enumerate() {
            for cyc in cs.iter().filter(|c| of[c.walk[0].dense(n)] == bubble) {
                let id = vertices.len();
                vertices.push(VertexLabel::Corner {
                    bubble,
                    colors: [order[t], order[(t + 1) % 4]],
                    through: cyc.walk[0],
                });
                for v in &cyc.walk {
                    corner_vertex[t][v.dense(n)] = id;
                }
            }
        }
    }
    let inner_base = vertices.len();
    let inner = |v: usize, t: usize| inner_base + 4 * v + t % 4;
    for v in 0..2 * n {
        for t in 0..4 {
            vertices.push(VertexLabel::Inner {
                node: Node::from_dense(v, n),
                corner: [order[t], order[(t + 1) % 4]],
            });
        }
    }

    let mut edges = Vec::new();
    let mut line_edge = vec![vec![usize::MAX; n]; 5];
    for (t, &color) in order.iter().enumerate() {
        for black in 0..n {
            line_edge[color][black] = edges.len();
            edges.push(Edge {
                from: corner_vertex[(t + 3) % 4][black],
                to: corner_vertex[t][black],
                label: EdgeLabel::Line {
                    line: LineId { color, black },
                },
            });
        }
    }
    let mut diagonal = vec![[0; 4]; 2 * n];
    let mut inner_arc = vec![[0; 4]; 2 * n];
    for v in 0..2 * n {
        let node = Node::from_dense(v, n);
        for t in 0..4 {
            diagonal[v][t] = edges.len();
            edges.push(Edge {
                from: corner_vertex[t][v],
                to: inner(v, t),
                label: EdgeLabel::Diagonal {
                    node,
                    corner: [order[t], order[(t + 1) % 4]],
                },
            });
        }
        for t in 0..4 {
            inner_arc[v][t] = edges.len();
            edges.push(Edge {
                from: inner(v, t + 3),
                to: inner(v, t),
                label: EdgeLabel::InnerArc {
                    node,
                    side: order[t],
                },
            });
        }
    }
    let mut longitudinal = vec![[0; 4]; n];
    for (black, slots) in longitudinal.iter_mut().enumerate() {
        let line = LineId {
            color: choice.special,
            black,
        };
        let white = n + g.white_of(line);
        for (t, slot) in slots.iter_mut().enumerate() {
            *slot = edges.len();
            edges.push(Edge {
                from: inner(black, t),
                to: inner(white, t),
                label: EdgeLabel::Longitudinal {
                    line,
                    corner: [order[t], order[(t + 1) % 4]],
                },
            });
        }
    }

    let idx = SurfaceIndex {
        order,
        half: n,
        line_edge,
        diagonal,
        inner_arc,
        longitudinal,
    };

    let mut faces = Vec::new();
    for v in 0..2 * n {
        let node = Node::from_dense(v, n);
        for (t, &color) in order.iter().enumerate() {
            let side = idx.line_edge_at(g, node, color);
            let (d_end, d_start) = (idx.diagonal[v][t], idx.diagonal[v][(t + 3) % 4]);
            let arc = idx.inner_arc[v][t];
            let walk = if node.is_pos() {
                vec![
                    DirEdge::fwd(side),
                    DirEdge::fwd(d_end),
                    DirEdge::rev(arc),
                    DirEdge::rev(d_start),
                ]
            } else {
                vec![
                    DirEdge::rev(side),
                    DirEdge::fwd(d_start),
                    DirEdge::fwd(arc),
                    DirEdge::rev(d_end),
                ]
            };
            faces.push(Face {
                walk,
                label: FaceLabel::Quad { node, side: color },
            });
        }
    }
    for black in 0..n {
        let line = LineId {
            color: choice.special,
            black,
        };
        let white = n + g.white_of(line);
        for (t, &color) in order.iter().enumerate() {
            faces.push(Face {
                walk: vec![
                    DirEdge::fwd(idx.inner_arc[black][t]),
                    DirEdge::fwd(idx.longitudinal[black][t]),
                    DirEdge::rev(idx.inner_arc[white][t]),
                    DirEdge::rev(idx.longitudinal[black][(t + 3) % 4]),
                ],
                label: FaceLabel::TubeRect { line, side: color },
            });
        }
    }
    (
        CwSurface {
            vertices,
            edges,
            faces,
        },
        idx,
    )
}

/// The central surface for `choice`.
pub fn build_surface(
    g: &ColoredGraph,
    choice: TrisectionChoice,
) -> Result<CwSurface, TrisectError> {
    check_graph(g)?;
    let bubbles = special_bubbles(g, choice.special);
    let (s, _) = build(g, choice, &bubbles);
    s.check()?;
    Ok(s)
}

/// Jacket-strand curves of one family: the `{σ_s, σ_{s+2}}`-cycles, each
/// pushed onto the side `σ_{s+1}` of the squares it crosses.
fn strand_curves(
    g: &ColoredGraph,
    idx: &SurfaceIndex,
    of: &[usize],
    family: Family,
    s: usize,
) -> Vec<CurveOnSurface> {
    let (p, q, push) = (idx.order[s], idx.order[s + 2], idx.order[s + 1]);
    let mut per_bubble = vec![0usize; of.iter().max().map_or(0, |m| m + 1)];
    subcomplex::bicolored_cycles(g, p, q)
        .expect("distinct")
        .into_iter()
        .map(|cyc| {
            let bubble = of[idx.dense(cyc.walk[0])];
            let cycle = per_bubble[bubble];
            per_bubble[bubble] += 1;
            let walk = cyc
                .walk
                .iter()
                .map(|&node| {
                    let e = idx.line_edge_at(g, node, push);
                    if node.is_pos() {
                        DirEdge::rev(e)
                    } else {
                        DirEdge::fwd(e)
                    }
                })
                .collect();
            let pair = if p < q { [p, q] } else { [q, p] };
            CurveOnSurface {
                family,
                provenance: Provenance::JacketCycle {
                    bubble,
                    pair,
                    cycle,
                },
                walk,
            }
        })
        .collect()
}

/// Candidate attaching curves, in the order alpha, beta, gamma.
fn candidates(
    g: &ColoredGraph,
    choice: TrisectionChoice,
    bubbles: &[Bubble],
    idx: &SurfaceIndex,
) -> Vec<CurveOnSurface> {
    let n = g.half_size();
    let of = bubble_index(g, bubbles);
    let special = choice.special;
    let mut out = Vec::new();

    for (family, s) in [(Family::Alpha, 0), (Family::Beta, 1)] {
        for black in 0..n {
            let line = LineId {
                color: special,
                black,
            };
            // alpha: boundary of the positive end's hole; beta: negative end's
            let v = match family {
                Family::Alpha => black,
                _ => n + g.white_of(line),
            };
            out.push(CurveOnSurface {
                family,
                provenance: Provenance::Stabilization { line },
                walk: (0..4).map(|t| DirEdge::fwd(idx.inner_arc[v][t])).collect(),
            });
        }
        out.extend(strand_curves(g, idx, &of, family, s));
    }

    for color in choice.non_special() {
        let t = idx.side(color);
        for (cycle, cyc) in subcomplex::bicolored_cycles(g, special, color)
            .expect("distinct")
            .into_iter()
            .enumerate()
        {
            let mut walk = Vec::with_capacity(3 * cyc.length() / 2);
            let m = cyc.walk.len();
            for k in (0..m).step_by(2) {
                let (pos, neg, next) = (cyc.walk[k], cyc.walk[k + 1], cyc.walk[(k + 2) % m]);
                walk.push(DirEdge::fwd(idx.longitudinal[pos.index][t]));
                walk.push(DirEdge::rev(idx.diagonal[idx.dense(neg)][t]));
                walk.push(DirEdge::fwd(idx.diagonal[idx.dense(next)][t]));
            }
            out.push(CurveOnSurface {
                family: Family::Gamma,
                provenance: Provenance::ZeroICycle { color, cycle },
                walk,
            });
        }
    }
    out
}

/// Candidate curves on a surface previously built for the same choice.
pub fn candidate_curves(
    g: &ColoredGraph,
    choice: TrisectionChoice,
) -> Result<(CwSurface, Vec<CurveOnSurface>), TrisectError> {
    check_graph(g)?;
    let bubbles = special_bubbles(g, choice.special);
    let (s, idx) = build(g, choice, &bubbles);
    let curves = candidates(g, choice, &bubbles, &idx);
    Ok((s, curves))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum DiagramStatus {
    Trisection,
    /// Every uncertified 4-bubble lacks the special color.
    QuasiTrisection {
        bubbles: Vec<UncertifiedBubble>,
    },
    Uncertified {
        bubbles: Vec<UncertifiedBubble>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UncertifiedBubble {
    pub missing_color: Color,
    pub index: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramCurve {
    pub family: Family,
    pub provenance: Provenance,
    pub walk: Vec<DirEdge>,
    pub selected: bool,
}

impl DiagramCurve {
    pub fn as_curve(&self) -> CurveOnSurface {
        CurveOnSurface {
            family: self.family,
            provenance: self.provenance,
            walk: self.walk.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelectionFailure {
    pub family: Family,
    pub achieved: usize,
    pub target: usize,
}

/// A central surface with its three curve families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrisectionDiagram {
    pub choice: TrisectionChoice,
    pub genus: usize,
    pub bubble_genera: Vec<usize>,
    #[serde(rename = "L")]
    pub loop_rank: usize,
    pub surface: CwSurface,
    pub curves: Vec<DiagramCurve>,
    pub failures: Vec<SelectionFailure>,
    pub status: DiagramStatus,
}

impl TrisectionDiagram {
    pub fn selected(&self, family: Family) -> impl Iterator<Item = &DiagramCurve> {
        self.curves
            .iter()
            .filter(move |c| c.family == family && c.selected)
    }

    pub fn candidates(&self, family: Family) -> impl Iterator<Item = &DiagramCurve> {
        self.curves.iter().filter(move |c| c.family == family)
    }

    pub fn curve_list(&self) -> Vec<CurveOnSurface> {
        self.curves.iter().map(DiagramCurve::as_curve).collect()
    }
}

fn status_for(g: &ColoredGraph, special: Color) -> DiagramStatus {
    let report = subcomplex::manifold_report(g);
    let bubbles: Vec<UncertifiedBubble> = report
        .uncertified()
        .map(|e| UncertifiedBubble {
            missing_color: e.missing_color,
            index: e.index,
            degree: e.topology.degree,
        })
        .collect();
    if bubbles.is_empty() {
        DiagramStatus::Trisection
    } else if bubbles.iter().all(|b| b.missing_color == special) {
        DiagramStatus::QuasiTrisection { bubbles }
    } else {
        DiagramStatus::Uncertified { bubbles }
    }
}

pub fn trisect(
    g: &ColoredGraph,
    choice: TrisectionChoice,
) -> Result<TrisectionDiagram, TrisectError> {
    check_graph(g)?;
    let bubbles = special_bubbles(g, choice.special);
    let genus = central_genus_with(g, choice, &bubbles);
    let (s, idx) = build(g, choice, &bubbles);
    let (_, surface_genus) = surface::euler_genus(&s)?;
    if surface_genus != genus.genus {
        return Err(TrisectError::GenusMismatch {
            surface: surface_genus,
            predicted: genus.genus,
        });
    }
    let curves = candidates(g, choice, &bubbles, &idx);
    let selection = surface::select_independent(&s, &curves, genus.genus)?;
    let mut selected = vec![false; curves.len()];
    for i in selection.iter().flat_map(|f| f.selected.iter()) {
        selected[*i] = true;
    }
    let failures = selection
        .iter()
        .filter(|f| f.failed())
        .map(|f: &FamilySelection| SelectionFailure {
            family: f.family,
            achieved: f.achieved,
            target: f.target,
        })
        .collect();
    Ok(TrisectionDiagram {
        choice,
        genus: genus.genus,
        bubble_genera: genus.bubble_genera,
        loop_rank: genus.loop_rank,
        surface: s,
        curves: curves
            .into_iter()
            .zip(selected)
            .map(|(c, selected)| DiagramCurve {
                family: c.family,
                provenance: c.provenance,
                walk: c.walk,
                selected,
            })
            .collect(),
        failures,
        status: status_for(g, choice.special),
    })
}

/// One diagram per choice, in [`TrisectionChoice::all`] order.
pub fn enumerate_all(g: &ColoredGraph) -> Result<Vec<TrisectionDiagram>, TrisectError> {
    check_graph(g)?;
    TrisectionChoice::all()
        .into_par_iter()
        .map(|c| trisect(g, c))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuasiClass {
    /// Every 4-bubble is a certified sphere.
    AllSphereBubbles,
    /// One ĉ-bubble, all other 4-bubbles certified.
    InGs,
    /// Every uncertified 4-bubble is a ĉ-bubble.
    InGsBar,
    OutOfScope,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiEntry {
    pub special: Color,
    pub class: QuasiClass,
}

/// Classification of the graph against the quasi-trisection graph classes,
/// for each choice of special color.
pub fn quasi_check(g: &ColoredGraph) -> Result<Vec<QuasiEntry>, TrisectError> {
    check_graph(g)?;
    let report = subcomplex::manifold_report(g);
    let uncertified: Vec<_> = report.uncertified().collect();
    Ok((0..=4)
        .map(|special| {
            let class = if uncertified.is_empty() {
                QuasiClass::AllSphereBubbles
            } else if uncertified.iter().all(|e| e.missing_color == special) {
                let count = report
                    .bubbles
                    .iter()
                    .filter(|e| e.missing_color == special)
                    .count();
                if count == 1 {
                    QuasiClass::InGs
                } else {
                    QuasiClass::InGsBar
                }
            } else {
                QuasiClass::OutOfScope
            };
            QuasiEntry { special, class }
        })
        .collect())
}
