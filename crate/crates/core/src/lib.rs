//! Topology of colored graphs (GEMs): bubbles, jackets and the Gurau
//! degree, Heegaard splittings of rank-3 graphs, and trisection diagrams of
//! rank-4 graphs.

pub mod gf2;
pub mod graph;
pub mod heegaard;
pub mod moves;
pub mod subcomplex;
pub mod surface;
pub mod trisector;

pub use graph::{ColoredGraph, LineId, Node};
pub use trisector::{TrisectionChoice, TrisectionDiagram};
