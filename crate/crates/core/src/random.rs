//! Seeded Erdős–Rényi graphs for property tests and sweeps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, RootedGraph};

/// Deterministic generator for a given seed.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p): each of the `n(n-1)/2` pairs is an edge independently with
/// probability `p`, pairs visited in lexicographic order.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, edges).expect("distinct ordered pairs form a simple graph")
}

/// G(n, p) with a uniformly random root; `n` must be positive.
pub fn rooted_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> RootedGraph {
    let graph = gnp(n, p, rng);
    let root = rng.gen_range(0..n);
    RootedGraph::new(graph, root).expect("root drawn from 0..n")
}
