//! Heegaard splittings of rank-3 graphs from jackets, and the genus of the
//! splitting along the dual 1-skeleton.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{self, Color, ColoredGraph, Defect};
use crate::subcomplex::{self, BicoloredCycle};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HeegaardError {
    #[error("expected a rank-3 graph, got rank {0}")]
    WrongRank(usize),
    #[error("pairs {0:?} and {1:?} do not partition the colors")]
    BadPairPartition([Color; 2], [Color; 2]),
    #[error("invalid graph: {0}")]
    Invalid(Defect),
}

/// Two disjoint color pairs covering the four colors of a rank-3 graph:
/// the pairs that are *not* adjacent in the jacket's cyclic order.
pub type PairPartition = ([Color; 2], [Color; 2]);

/// The three pair partitions of `{0,1,2,3}` in fixed order.
pub const PAIR_PARTITIONS: [PairPartition; 3] =
    [([0, 1], [2, 3]), ([0, 2], [1, 3]), ([0, 3], [1, 2])];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeegaardData {
    pub pairs: PairPartition,
    /// Cyclic color order of the jacket (`i, k, j, l`).
    pub jacket_order: Vec<Color>,
    pub jacket_faces: usize,
    /// Genus from the Euler characteristic of the jacket.
    pub genus_sigma: usize,
    /// Genus from `1 + V/2 - F/2`.
    pub genus_sigma_reduced: usize,
    pub alpha_candidates: Vec<BicoloredCycle>,
    pub beta_candidates: Vec<BicoloredCycle>,
    pub skeleton_genus: usize,
    /// `genus_sigma - skeleton_genus`.
    pub comparison: i64,
}

fn check_rank3(g: &ColoredGraph) -> Result<(), HeegaardError> {
    if g.rank() != 3 {
        return Err(HeegaardError::WrongRank(g.rank()));
    }
    graph::require_valid(g).map_err(HeegaardError::Invalid)
}

fn check_pairs((a, b): PairPartition) -> Result<(), HeegaardError> {
    let mut all = [a[0], a[1], b[0], b[1]];
    all.sort_unstable();
    if all != [0, 1, 2, 3] {
        return Err(HeegaardError::BadPairPartition(a, b));
    }
    Ok(())
}

pub fn heegaard_split(
    g: &ColoredGraph,
    pairs: PairPartition,
) -> Result<HeegaardData, HeegaardError> {
    check_rank3(g)?;
    check_pairs(pairs)?;
    let ([i, j], [k, l]) = pairs;
    let order = [i, k, j, l];
    let faces = subcomplex::jacket_face_count(g, &order);

    let v = g.node_count() as i64;
    let e = g.line_count() as i64;
    let f = faces as i64;
    // every node is 4-valent: 2E = 4V
    debug_assert_eq!(2 * e, 4 * v);
    let chi = v - e + f;
    let genus_sigma = (2 - chi) / 2;
    let genus_sigma_reduced = 1 + v / 2 - f / 2;
    assert_eq!(
        genus_sigma, genus_sigma_reduced,
        "the two Heegaard genus formulas disagree"
    );

    let (skeleton_genus, _) = skeleton_parts(g);
    Ok(HeegaardData {
        pairs,
        jacket_order: order.to_vec(),
        jacket_faces: faces,
        genus_sigma: genus_sigma as usize,
        genus_sigma_reduced: genus_sigma_reduced as usize,
        alpha_candidates: subcomplex::bicolored_cycles(g, i, j).expect("distinct colors"),
        beta_candidates: subcomplex::bicolored_cycles(g, k, l).expect("distinct colors"),
        skeleton_genus,
        comparison: genus_sigma - skeleton_genus as i64,
    })
}

/// (genus, V_T*) of the dual 1-skeleton: vertices are tetrahedra (graph
/// nodes), edges are triangles (graph lines); genus is its loop number.
fn skeleton_parts(g: &ColoredGraph) -> (usize, usize) {
    let vertices = g.node_count();
    let edges = g.line_count();
    (edges - vertices + 1, vertices)
}

/// Dual-skeleton splitting genus and the closed-form comparison
/// `-(V_T* + F_J) / 2` against the jacket splitting for `pairs`.
pub fn dual_skeleton_genus(
    g: &ColoredGraph,
    pairs: PairPartition,
) -> Result<(usize, i64), HeegaardError> {
    check_rank3(g)?;
    check_pairs(pairs)?;
    let (genus, vertices) = skeleton_parts(g);
    let ([i, j], [k, l]) = pairs;
    let faces = subcomplex::jacket_face_count(g, &[i, k, j, l]);
    let sum = (vertices + faces) as i64;
    debug_assert_eq!(sum % 2, 0);
    Ok((genus, -sum / 2))
}
