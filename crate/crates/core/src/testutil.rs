//! Shared generators for the test suites.

use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub(crate) fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let bits = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), bits).prop_map(move |flags| {
            let mut g = Graph::empty(n);
            let mut it = flags.into_iter();
            for j in 1..n {
                for i in 0..j {
                    if it.next().unwrap() {
                        g.add_edge(i, j);
                    }
                }
            }
            g
        })
    })
}
