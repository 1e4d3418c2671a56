#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use zerr::channel::ChannelHypergraph;
use zerr::{ChannelSpec, Graph, VectorSet};

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::new((0..n).map(|i| format!("v{i}"))).unwrap();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                g.add_edge(u, v).unwrap();
            }
            k += 1;
        }
    }
    g
}

/// Graphs on `1..=max_n` vertices, each pair an edge with probability 1/2.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let bits: Vec<bool> = (0..n * n.saturating_sub(1) / 2).map(|_| rng.random_bool(p)).collect();
    graph_from_bits(n, &bits)
}

/// Random bipartite graph with both sides nonempty when `n >= 2`.
pub fn random_bipartite(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let left = rng.random_range(1..n.max(2));
    let mut g = Graph::new((0..n).map(|i| format!("v{i}"))).unwrap();
    for u in 0..left.min(n) {
        for v in left..n {
            if rng.random_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Channel whose outputs are the edges of `g` plus one private output per
/// vertex, so its confusability graph is exactly `g`.
pub fn channel_for_graph(g: &Graph) -> ChannelSpec {
    let mut edges: Vec<(String, Vec<String>)> = g
        .edges()
        .into_iter()
        .enumerate()
        .map(|(k, (u, v))| (format!("e{k}"), vec![g.label(u).to_string(), g.label(v).to_string()]))
        .collect();
    edges.extend(g.labels().iter().map(|l| (format!("own_{l}"), vec![l.clone()])));
    ChannelSpec::uniform(ChannelHypergraph::new(g.labels().to_vec(), edges).unwrap())
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Columns of the Q factor of a complex Gaussian matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, d: usize) -> DMatrix<Complex64> {
    let m = DMatrix::from_fn(d, d, |_, _| random_complex(rng));
    m.qr().q()
}

pub fn basis_vector_set(q: &DMatrix<Complex64>) -> VectorSet {
    let d = q.nrows();
    VectorSet::new(
        d,
        (0..d).map(|j| (format!("b{j}"), q.column(j).iter().copied().collect::<Vec<_>>())),
    )
    .unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
