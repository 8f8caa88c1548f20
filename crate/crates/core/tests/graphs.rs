mod common;

use common::{graphs, oracle, random};
use gemtopo::graph::{self, ColoredGraph, Defect, ParseError};
use gemtopo::subcomplex;
use proptest::prelude::*;

proptest! {
    #[test]
    fn text_round_trip(g in (2usize..=5).prop_flat_map(|d| graphs(d, 6))) {
        let text = graph::serialize(&g);
        let back = graph::parse(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(graph::serialize(&back), text);
    }

    #[test]
    fn records_may_come_in_any_order(g in graphs(4, 5), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let text = graph::serialize(&g);
        let mut lines: Vec<&str> = text.lines().collect();
        let (head, body) = lines.split_at_mut(3);
        body.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let shuffled = format!("{}\n# shuffled\n{}\n", head.join("\n"), body.join("\n"));
        prop_assert_eq!(graph::parse(&shuffled).unwrap(), g);
    }

    #[test]
    fn random_graphs_are_valid(g in (2usize..=5).prop_flat_map(|d| graphs(d, 7))) {
        prop_assert!(graph::validate(&g).ok());
        prop_assert_eq!(oracle::component_count(&g, &g.colors().collect::<Vec<_>>()), 1);
    }

    #[test]
    fn bubble_partition_matches_union_find(g in graphs(4, 6), mask in 1u32..31) {
        let colors: Vec<usize> = (0..5).filter(|c| mask & (1 << c) != 0).collect();
        prop_assume!(colors.len() >= 2);
        let bubbles = subcomplex::bubbles(&g, &colors).unwrap();
        prop_assert_eq!(bubbles.len(), oracle::component_count(&g, &colors));
        let mut all: Vec<usize> = bubbles.iter().flat_map(|b| b.nodes.clone()).collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..g.node_count()).collect::<Vec<_>>());
        for b in &bubbles {
            prop_assert_eq!(b.graph.rank(), colors.len() - 1);
            if colors.len() > 2 {
                prop_assert!(graph::validate(&b.graph).ok());
            }
        }
    }

    #[test]
    fn bicolored_cycles_alternate(g in graphs(3, 6), i in 0usize..4, j in 0usize..4) {
        prop_assume!(i != j);
        let cycles = subcomplex::bicolored_cycles(&g, i, j).unwrap();
        prop_assert_eq!(cycles.len(), oracle::component_count(&g, &[i, j]));
        prop_assert_eq!(cycles.len(), subcomplex::cycle_count(&g, i, j));
        let total: usize = cycles.iter().map(|c| c.length()).sum();
        prop_assert_eq!(total, g.node_count());
        for c in &cycles {
            for (t, node) in c.walk.iter().enumerate() {
                let next = c.walk[(t + 1) % c.walk.len()];
                let color = if t % 2 == 0 { i } else { j };
                prop_assert_eq!(g.neighbor(*node, color), next);
            }
        }
    }
}

#[test]
fn melon_is_the_smallest_graph() {
    for d in 2..=6 {
        let m = graph::generate_melon(d).unwrap();
        assert_eq!((m.half_size(), m.line_count()), (1, d + 1));
        assert!(graph::validate(&m).ok());
    }
    assert_eq!(graph::generate_melon(1), Err(Defect::BadRank(1)));
}

#[test]
fn parse_rejections() {
    let cases = [
        ("gem 2\nrank 2\nhalf 1\n", "Syntax"),
        ("gem 1\nrank 2\nhalf 1\n0 1 1\n1 1 1\n2 1 2\n", "OutOfRange"),
        (
            "gem 1\nrank 2\nhalf 1\n0 1 1\n0 1 1\n1 1 1\n2 1 1\n",
            "DuplicateLine",
        ),
        (
            "gem 1\nrank 2\nhalf 2\n0 1 1\n0 2 2\n1 1 1\n1 2 2\n2 1 1\n",
            "MissingLine",
        ),
        (
            "gem 1\nrank 2\nhalf 2\n0 1 1\n0 2 1\n1 1 1\n1 2 2\n2 1 1\n2 2 2\n",
            "Semantic",
        ),
        ("gem 1\nrank 1\nhalf 1\n0 1 1\n1 1 1\n", "Semantic"),
        ("gem 1\nrank 2\n", "Syntax"),
        ("gem 1\nrank two\nhalf 1\n", "Syntax"),
    ];
    for (text, kind) in cases {
        let e = graph::parse(text).unwrap_err();
        let got = match e {
            ParseError::Syntax { .. } => "Syntax",
            ParseError::OutOfRange { .. } => "OutOfRange",
            ParseError::DuplicateLine { .. } => "DuplicateLine",
            ParseError::MissingLine { .. } => "MissingLine",
            ParseError::Semantic(_) => "Semantic",
        };
        assert_eq!(got, kind, "{text:?}: {e}");
    }
}

#[test]
fn validate_lists_every_defect() {
    let g = ColoredGraph::from_raw(1, 2, vec![vec![0, 0], vec![0, 1]]);
    let kinds: Vec<&str> = graph::validate(&g)
        .defects
        .iter()
        .map(Defect::kind)
        .collect();
    assert_eq!(kinds, ["BadRank", "MatchingNotBijective"]);
    let two = ColoredGraph::new(2, vec![vec![0, 1]; 3]).unwrap();
    assert_eq!(
        graph::validate(&two).defects,
        vec![Defect::Disconnected { components: 2 }]
    );
}

#[test]
fn seeded_generation_is_reproducible() {
    assert_eq!(random(4, 5, 11), random(4, 5, 11));
    assert_ne!(random(4, 5, 11), random(4, 5, 12));
}
