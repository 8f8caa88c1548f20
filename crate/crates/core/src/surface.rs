//! Combinatorial closed surfaces, their GF(2) first homology, and the
//! selection of homologically independent attaching curves.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::gf2::{BitVec, ReducedBasis};
use crate::graph::{Color, LineId, Node};

/// An edge traversed in a direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirEdge {
    pub edge: usize,
    pub forward: bool,
}

impl DirEdge {
    pub fn fwd(edge: usize) -> Self {
        DirEdge {
            edge,
            forward: true,
        }
    }

    pub fn rev(edge: usize) -> Self {
        DirEdge {
            edge,
            forward: false,
        }
    }

    pub fn reversed(self) -> Self {
        DirEdge {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

/// Serialized as a signed 1-based edge id: `+k` is edge `k - 1` forward.
impl Serialize for DirEdge {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let id = self.edge as i64 + 1;
        serializer.serialize_i64(if self.forward { id } else { -id })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum VertexLabel {
    /// A bicolored cycle of a bubble: a corner of the jacket quadrangulation.
    Corner {
        bubble: usize,
        colors: [Color; 2],
        through: Node,
    },
    /// Inner vertex of a square's annulus, at the given corner.
    Inner {
        node: Node,
        corner: [Color; 2],
    },
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum EdgeLabel {
    /// A square side: a line of the graph.
    Line {
        line: LineId,
    },
    /// Corner-to-inner-vertex edge inside a square.
    Diagonal {
        node: Node,
        corner: [Color; 2],
    },
    /// Inner boundary arc of a square's annulus, parallel to a side.
    InnerArc {
        node: Node,
        side: Color,
    },
    /// Edge running along the tube of a special-color line.
    Longitudinal {
        line: LineId,
        corner: [Color; 2],
    },
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum FaceLabel {
    /// Annulus quadrilateral of a square, next to one side.
    Quad {
        node: Node,
        side: Color,
    },
    /// Rectangle of a tube, between the inner arcs of one side color.
    TubeRect {
        line: LineId,
        side: Color,
    },
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: EdgeLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub walk: Vec<DirEdge>,
    pub label: FaceLabel,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("edge {edge} lies on {sides} face sides")]
    NotClosed { edge: usize, sides: usize },
    #[error("surface has {0} connected components")]
    NotConnected(usize),
    #[error("face {face} is not a closed walk")]
    BadFace { face: usize },
    #[error("edge {edge} has an endpoint outside the vertex set")]
    BadEdge { edge: usize },
    #[error("curve {curve} is not a closed walk on the surface")]
    CurveNotOnSurface { curve: usize },
}

/// A finite 2-dimensional CW complex whose 2-cells are attached along
/// closed edge walks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CwSurface {
    pub vertices: Vec<VertexLabel>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
}

impl CwSurface {
    pub fn tail(&self, d: DirEdge) -> usize {
        let e = &self.edges[d.edge];
        if d.forward {
            e.from
        } else {
            e.to
        }
    }

    pub fn head(&self, d: DirEdge) -> usize {
        let e = &self.edges[d.edge];
        if d.forward {
            e.to
        } else {
            e.from
        }
    }

    /// Whether `walk` is a nonempty closed walk over existing edges.
    pub fn is_closed_walk(&self, walk: &[DirEdge]) -> bool {
        if walk.is_empty() || walk.iter().any(|d| d.edge >= self.edges.len()) {
            return false;
        }
        (0..walk.len()).all(|t| self.head(walk[t]) == self.tail(walk[(t + 1) % walk.len()]))
    }

    /// Checks the cell structure: edge endpoints exist, faces are closed
    /// walks, every edge is used by exactly two face sides, and the
    /// 1-skeleton is connected.
    pub fn check(&self) -> Result<(), SurfaceError> {
        let v = self.vertices.len();
        for (edge, e) in self.edges.iter().enumerate() {
            if e.from >= v || e.to >= v {
                return Err(SurfaceError::BadEdge { edge });
            }
        }
        for (face, f) in self.faces.iter().enumerate() {
            if !self.is_closed_walk(&f.walk) {
                return Err(SurfaceError::BadFace { face });
            }
        }
        let mut sides = vec![0usize; self.edges.len()];
        for f in &self.faces {
            for d in &f.walk {
                sides[d.edge] += 1;
            }
        }
        if let Some((edge, &s)) = sides.iter().enumerate().find(|(_, &s)| s != 2) {
            return Err(SurfaceError::NotClosed { edge, sides: s });
        }
        let comps = self.component_count();
        if comps != 1 {
            return Err(SurfaceError::NotConnected(comps));
        }
        Ok(())
    }

    /// Every edge traversed once in each direction by the faces.
    pub fn is_orientable_as_given(&self) -> bool {
        let mut seen = vec![[false; 2]; self.edges.len()];
        for f in &self.faces {
            for d in &f.walk {
                let slot = &mut seen[d.edge][d.forward as usize];
                if *slot {
                    return false;
                }
                *slot = true;
            }
        }
        seen.iter().all(|s| s[0] && s[1])
    }

    fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            parent[a] = b;
        }
        (0..self.vertices.len())
            .filter(|&x| find(&mut parent, x) == x)
            .count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Mod-2 edge vector of a walk.
    pub fn chain(&self, walk: &[DirEdge]) -> BitVec {
        let mut v = BitVec::zeros(self.edges.len());
        for d in walk {
            v.flip(d.edge);
        }
        v
    }

    /// Basis of the boundary space `im ∂₂`.
    pub fn boundary_basis(&self) -> ReducedBasis {
        let mut basis = ReducedBasis::new(self.edges.len());
        for f in &self.faces {
            basis.insert(&self.chain(&f.walk));
        }
        basis
    }

    /// Rank of `∂₁` (edges to vertices).
    pub fn edge_boundary_rank(&self) -> usize {
        let mut basis = ReducedBasis::new(self.vertices.len());
        for e in &self.edges {
            let mut col = BitVec::zeros(self.vertices.len());
            col.flip(e.from);
            col.flip(e.to);
            basis.insert(&col);
        }
        basis.rank()
    }
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// (χ, genus) of a closed connected surface.
pub fn euler_genus(s: &CwSurface) -> Result<(i64, usize), SurfaceError> {
    s.check()?;
    let chi = s.euler_characteristic();
    debug_assert_eq!(chi % 2, 0);
    Ok((chi, ((2 - chi) / 2) as usize))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    Alpha,
    Beta,
    Gamma,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Alpha, Family::Beta, Family::Gamma];

    pub fn name(self) -> &'static str {
        match self {
            Family::Alpha => "alpha",
            Family::Beta => "beta",
            Family::Gamma => "gamma",
        }
    }
}

/// Where a candidate curve comes from. The derived order is the greedy
/// selection order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum Provenance {
    /// Meridian of the tube around a special-color line.
    Stabilization { line: LineId },
    /// A bicolored cycle of one bubble, drawn through opposite square sides.
    JacketCycle {
        bubble: usize,
        pair: [Color; 2],
        cycle: usize,
    },
    /// A cycle alternating the special color and `color`.
    ZeroICycle { color: Color, cycle: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveOnSurface {
    pub family: Family,
    pub provenance: Provenance,
    pub walk: Vec<DirEdge>,
}

/// Homology class: canonical representative modulo boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct H1Class(pub BitVec);

impl H1Class {
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct HomologyData {
    /// Dimension of `H₁(s; GF(2))`.
    pub h1_rank: usize,
    pub classes: Vec<H1Class>,
    pub family_rank: BTreeMap<Family, usize>,
}

/// GF(2) homology of the surface and the classes of the given curves.
pub fn h1_rank_and_classes(
    s: &CwSurface,
    curves: &[CurveOnSurface],
) -> Result<HomologyData, SurfaceError> {
    for (curve, c) in curves.iter().enumerate() {
        if !s.is_closed_walk(&c.walk) {
            return Err(SurfaceError::CurveNotOnSurface { curve });
        }
    }
    let boundaries = s.boundary_basis();
    let h1_rank = s.edges.len() - s.edge_boundary_rank() - boundaries.rank();
    let classes = curves
        .iter()
        .map(|c| H1Class(boundaries.reduce(&s.chain(&c.walk))))
        .collect();
    let mut family_rank = BTreeMap::new();
    for fam in Family::ALL {
        let mut span = boundaries.clone();
        for c in curves.iter().filter(|c| c.family == fam) {
            span.insert(&s.chain(&c.walk));
        }
        family_rank.insert(fam, span.rank() - boundaries.rank());
    }
    Ok(HomologyData {
        h1_rank,
        classes,
        family_rank,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySelection {
    pub family: Family,
    /// Indices into the candidate list, in selection order.
    pub selected: Vec<usize>,
    pub achieved: usize,
    pub target: usize,
}

impl FamilySelection {
    pub fn failed(&self) -> bool {
        self.achieved < self.target
    }
}

/// Greedy, deterministic choice of homologically independent curves per
/// family, in provenance order, stopping at `target`. A family whose
/// candidates span less than `target` is reported with `achieved < target`.
pub fn select_independent(
    s: &CwSurface,
    curves: &[CurveOnSurface],
    target: usize,
) -> Result<Vec<FamilySelection>, SurfaceError> {
    for (curve, c) in curves.iter().enumerate() {
        if !s.is_closed_walk(&c.walk) {
            return Err(SurfaceError::CurveNotOnSurface { curve });
        }
    }
    let boundaries = s.boundary_basis();
    let mut out = Vec::new();
    for family in Family::ALL {
        let mut order: Vec<usize> = (0..curves.len())
            .filter(|&i| curves[i].family == family)
            .collect();
        order.sort_by_key(|&i| curves[i].provenance);
        let mut span = boundaries.clone();
        let mut selected = Vec::new();
        for i in order {
            if selected.len() == target {
                break;
            }
            if span.insert(&s.chain(&curves[i].walk)) {
                selected.push(i);
            }
        }
        out.push(FamilySelection {
            family,
            achieved: selected.len(),
            selected,
            target,
        });
    }
    Ok(out)
}

/// Whether the surface stays connected after cutting along every edge used
/// by the given curves.
pub fn cut_is_connected(s: &CwSurface, curves: &[&CurveOnSurface]) -> bool {
    let mut cut = vec![false; s.edges.len()];
    for c in curves {
        for d in &c.walk {
            cut[d.edge] = true;
        }
    }
    let mut sides: Vec<Vec<usize>> = vec![Vec::new(); s.edges.len()];
    for (fi, f) in s.faces.iter().enumerate() {
        for d in &f.walk {
            sides[d.edge].push(fi);
        }
    }
    let mut parent: Vec<usize> = (0..s.faces.len()).collect();
    for (e, fs) in sides.iter().enumerate() {
        if cut[e] {
            continue;
        }
        for w in fs.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    (0..s.faces.len())
        .filter(|&x| find(&mut parent, x) == x)
        .count()
        <= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(from: usize, to: usize) -> Edge {
        Edge {
            from,
            to,
            label: EdgeLabel::Plain,
        }
    }

    fn face(walk: Vec<DirEdge>) -> Face {
        Face {
            walk,
            label: FaceLabel::Plain,
        }
    }

    /// Boundary of a tetrahedron.
    fn tetrahedron() -> CwSurface {
        // edges: 0:01 1:02 2:03 3:12 4:13 5:23
        let e = vec![
            edge(0, 1),
            edge(0, 2),
            edge(0, 3),
            edge(1, 2),
            edge(1, 3),
            edge(2, 3),
        ];
        let f = vec![
            face(vec![DirEdge::fwd(0), DirEdge::fwd(3), DirEdge::rev(1)]),
            face(vec![DirEdge::fwd(1), DirEdge::fwd(5), DirEdge::rev(2)]),
            face(vec![DirEdge::fwd(2), DirEdge::rev(4), DirEdge::rev(0)]),
            face(vec![DirEdge::fwd(4), DirEdge::rev(5), DirEdge::rev(3)]),
        ];
        CwSurface {
            vertices: vec![VertexLabel::Plain; 4],
            edges: e,
            faces: f,
        }
    }

    /// One vertex, two loops, one square `a b a⁻¹ b⁻¹`.
    fn torus() -> CwSurface {
        CwSurface {
            vertices: vec![VertexLabel::Plain],
            edges: vec![edge(0, 0), edge(0, 0)],
            faces: vec![face(vec![
                DirEdge::fwd(0),
                DirEdge::fwd(1),
                DirEdge::rev(0),
                DirEdge::rev(1),
            ])],
        }
    }

    fn curve(family: Family, walk: Vec<DirEdge>, cycle: usize) -> CurveOnSurface {
        CurveOnSurface {
            family,
            provenance: Provenance::ZeroICycle { color: 1, cycle },
            walk,
        }
    }

    #[test]
    fn euler_examples() {
        let t = tetrahedron();
        assert_eq!(euler_genus(&t), Ok((2, 0)));
        assert!(t.is_orientable_as_given());
        assert_eq!(euler_genus(&torus()), Ok((0, 1)));
    }

    #[test]
    fn euler_errors() {
        let mut t = tetrahedron();
        t.faces.pop();
        assert!(matches!(
            euler_genus(&t),
            Err(SurfaceError::NotClosed { .. })
        ));
        let mut two = torus();
        two.vertices.push(VertexLabel::Plain);
        two.edges.extend([edge(1, 1), edge(1, 1)]);
        two.faces.push(face(vec![
            DirEdge::fwd(2),
            DirEdge::fwd(3),
            DirEdge::rev(2),
            DirEdge::rev(3),
        ]));
        assert_eq!(euler_genus(&two), Err(SurfaceError::NotConnected(2)));
    }

    #[test]
    fn torus_homology() {
        let s = torus();
        let curves = vec![
            curve(Family::Alpha, vec![DirEdge::fwd(0)], 0),
            curve(Family::Alpha, vec![DirEdge::rev(0)], 1),
            curve(Family::Beta, vec![DirEdge::fwd(1)], 0),
            curve(
                Family::Gamma,
                vec![
                    DirEdge::fwd(0),
                    DirEdge::fwd(1),
                    DirEdge::rev(0),
                    DirEdge::rev(1),
                ],
                0,
            ),
        ];
        let h = h1_rank_and_classes(&s, &curves).unwrap();
        assert_eq!(h.h1_rank, 2);
        assert_eq!(h.classes[0], h.classes[1]);
        assert!(!h.classes[0].is_zero());
        assert!(h.classes[3].is_zero(), "face boundary is null-homologous");
        assert_eq!(h.family_rank[&Family::Alpha], 1);
        assert_eq!(h.family_rank[&Family::Gamma], 0);

        let sel = select_independent(&s, &curves, 1).unwrap();
        assert_eq!(sel[0].selected, vec![0]);
        assert_eq!(sel[1].selected, vec![2]);
        assert!(sel[2].failed());
        assert!(cut_is_connected(&s, &[&curves[0]]));
    }

    #[test]
    fn tetrahedron_cycles_are_boundaries() {
        let s = tetrahedron();
        let c = curve(
            Family::Gamma,
            vec![DirEdge::fwd(0), DirEdge::fwd(3), DirEdge::rev(1)],
            0,
        );
        let h = h1_rank_and_classes(&s, std::slice::from_ref(&c)).unwrap();
        assert_eq!(h.h1_rank, 0);
        assert!(h.classes[0].is_zero());
        assert!(!cut_is_connected(&s, &[&c]));
    }

    #[test]
    fn empty_selection() {
        let sel = select_independent(&torus(), &[], 0).unwrap();
        assert!(sel.iter().all(|f| f.selected.is_empty() && !f.failed()));
    }

    #[test]
    fn rejects_open_curve() {
        let bad = curve(Family::Alpha, vec![DirEdge::fwd(7)], 0);
        assert_eq!(
            h1_rank_and_classes(&tetrahedron(), &[bad]).unwrap_err(),
            SurfaceError::CurveNotOnSurface { curve: 0 }
        );
        let open = curve(Family::Alpha, vec![DirEdge::fwd(0)], 0);
        assert!(select_independent(&tetrahedron(), &[open], 1).is_err());
    }
}
