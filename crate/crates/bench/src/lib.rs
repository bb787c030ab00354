//! Fixed inputs for the criterion benches.

use unbalanced_core::generate::{gen_bioriented_clique, gen_planted, gen_random, NoiseParams};
use unbalanced_core::{LabeledDigraph, SubdivisionPattern};

pub fn clique(n: usize) -> LabeledDigraph {
    gen_bioriented_clique(n).expect("n >= 1").digraph
}

/// Sparse random digraph, about `degree` out-arcs per vertex.
pub fn sparse(n: usize, degree: f64, seed: u64) -> LabeledDigraph {
    gen_random(n, (degree / n as f64).min(1.0), 0.5, 0.5, seed)
        .expect("valid probabilities")
        .digraph
}

/// Directed triangle, every arc `|P| ≡ r (mod 3)`.
pub fn triangle() -> SubdivisionPattern {
    SubdivisionPattern::from_tuples(3, &[(0, 1, 1, 1, 1, 3), (1, 2, 1, 1, 2, 3), (2, 0, 1, 1, 0, 3)])
        .expect("valid pattern")
}

pub fn planted_triangle(extra: usize, seed: u64) -> LabeledDigraph {
    let noise = NoiseParams {
        extra_vertices: extra,
        extra_arcs: 2 * extra,
        label_prob: 0.5,
    };
    gen_planted(&triangle(), noise, seed).expect("valid noise").digraph
}
