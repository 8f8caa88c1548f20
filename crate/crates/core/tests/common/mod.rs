#![allow(dead_code)]

pub mod oracle;

use gemtopo::graph::{self, ColoredGraph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn random(rank: usize, half: usize, seed: u64) -> ColoredGraph {
    graph::random_connected(rank, half, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Random connected graphs of the given rank with `1..=max_half` nodes per
/// side.
pub fn graphs(rank: usize, max_half: usize) -> impl Strategy<Value = ColoredGraph> {
    (1..=max_half, any::<u64>()).prop_map(move |(half, seed)| random(rank, half, seed))
}

pub fn pillow(rank: usize, color: usize) -> ColoredGraph {
    let mut m = vec![vec![0, 1]; rank + 1];
    m[color] = vec![1, 0];
    ColoredGraph::new(rank, m).unwrap()
}
