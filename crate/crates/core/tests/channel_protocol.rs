mod common;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use zerr::certify::{certify, CertifyInput, Verdict};
use zerr::channel::{parallel_compose, ChannelHypergraph};
use zerr::graph::{self, Graph};
use zerr::protocol::{self, full_codebook, Codebook};
use zerr::quantum::{c, real};
use zerr::{cabello18, ChannelSpec, NamedConstruction, VectorSet};

/// Random channel with non-uniform probabilities; every input reaches at
/// least one output.
fn random_channel(rng: &mut ChaCha8Rng, n: usize, m: usize) -> ChannelSpec {
    let inputs: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut members = vec![Vec::new(); m];
    for x in 0..n {
        members[rng.random_range(0..m)].push(x);
        for row in members.iter_mut() {
            if rng.random_bool(0.3) && !row.contains(&x) {
                row.push(x);
            }
        }
    }
    members.retain(|r| !r.is_empty());
    for r in members.iter_mut() {
        r.sort();
    }
    let mut weights: Vec<Vec<f64>> = members.iter().map(|r| r.iter().map(|_| rng.random_range(0.1..1.0)).collect()).collect();
    let mut totals = vec![0.0; n];
    for (r, w) in members.iter().zip(&weights) {
        for (&x, &q) in r.iter().zip(w) {
            totals[x] += q;
        }
    }
    for (r, w) in members.iter().zip(weights.iter_mut()) {
        for (&x, q) in r.iter().zip(w.iter_mut()) {
            *q /= totals[x];
        }
    }
    let edges: Vec<(String, Vec<String>)> = members
        .iter()
        .enumerate()
        .map(|(k, r)| (format!("y{k}"), r.iter().map(|&x| inputs[x].clone()).collect()))
        .collect();
    let h = ChannelHypergraph::new(inputs, edges).unwrap();
    ChannelSpec::new(h, weights).unwrap()
}

#[test]
fn composition_confusability_is_the_strong_product() {
    let mut rng = common::rng(21);
    for _ in 0..40 {
        let (n, m) = (rng.random_range(1..6), rng.random_range(1..5));
        let a = random_channel(&mut rng, n, m);
        let (n, m) = (rng.random_range(1..5), rng.random_range(1..5));
        let b = random_channel(&mut rng, n, m);
        let joint = parallel_compose(&a, &b);
        assert_eq!(joint.confusability_graph(), a.confusability_graph().strong_product(&b.confusability_graph()));
        for x in 0..joint.inputs().len() {
            let s: f64 = joint.transitions(x).iter().map(|&(_, p)| p).sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn perfect_classical_assistance_scales_capacity() {
    let mut rng = common::rng(5);
    for _ in 0..30 {
        let (n, m) = (rng.random_range(1..8), rng.random_range(1..6));
        let ch = random_channel(&mut rng, n, m);
        let a = ch.zero_error_code().unwrap().size;
        for d in 1..=4 {
            let joint = parallel_compose(&ch, &ChannelSpec::perfect_classical(d).unwrap());
            let g = joint.confusability_graph();
            assert_eq!(graph::independence_number_exact(&g).unwrap().size, d * a);
            let comps = g.component_indices().len();
            assert_eq!(comps, d * ch.confusability_graph().component_indices().len());
        }
    }
}

#[test]
fn zero_error_codes_have_disjoint_supports() {
    let mut rng = common::rng(9);
    for _ in 0..30 {
        let ch = random_channel(&mut rng, 8, 5);
        let code = ch.zero_error_code().unwrap();
        for (i, a) in code.members.iter().enumerate() {
            for b in &code.members[i + 1..] {
                let sa = ch.support(a).unwrap();
                assert!(ch.support(b).unwrap().iter().all(|y| !sa.contains(y)));
            }
        }
    }
}

#[test]
fn channel_validation() {
    let h = || ChannelHypergraph::new(["a", "b"], [("y0", vec!["a", "b"]), ("y1", vec!["b"])]).unwrap();
    assert!(ChannelSpec::new(h(), vec![vec![1.0, 0.5], vec![0.5]]).is_ok());
    assert!(ChannelSpec::new(h(), vec![vec![1.0, 0.5], vec![0.4]]).is_err());
    assert!(ChannelSpec::new(h(), vec![vec![1.0, 0.0], vec![1.0]]).is_err());
    assert!(ChannelSpec::new(h(), vec![vec![1.0]]).is_err());
    assert!(ChannelHypergraph::new(["a", "b"], [("y0", vec!["a"])]).is_err());
    assert!(ChannelHypergraph::new(["a"], [("y0", vec!["a", "z"])]).is_err());
}

#[test]
fn monte_carlo_is_deterministic_and_thread_independent() {
    let c = cabello18();
    let cb = full_codebook(&c);
    let a = protocol::simulate_monte_carlo(&c, &cb, 3000, 42).unwrap();
    let b = protocol::simulate_monte_carlo_serial(&c, &cb, 3000, 42).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.successes, a.trials);
    let other = protocol::simulate_monte_carlo(&c, &cb, 3000, 43).unwrap();
    assert_ne!(a.transcript, other.transcript);
}

#[test]
fn monte_carlo_sees_a_broken_representation() {
    let c = cabello18();
    let bad = c.vectors.with_replaced("v1", real(&[1.0, 0.3, 0.0, 0.0])).unwrap();
    let broken = NamedConstruction::new("broken", bad, c.channel.clone());
    let cb = full_codebook(&broken);
    assert!(!protocol::verify_zero_error_exhaustive(&broken, &cb).passed());
    let r = protocol::simulate_monte_carlo(&broken, &cb, 5000, 1);
    // Either the measurement cannot be built or some trial decodes wrongly.
    if let Ok(r) = r {
        assert!(r.successes < r.trials);
    }
}

#[test]
fn partial_codebooks() {
    let c = cabello18();
    let cb = Codebook::new([("hello".to_string(), "v5".to_string()), ("world".to_string(), "v18".to_string())]).unwrap();
    let r = protocol::verify_zero_error_exhaustive(&c, &cb);
    assert_eq!(r.certified, Some(2));
    assert_eq!(r.pairs_checked, 4);
    assert!(Codebook::new([("a".to_string(), "v1".to_string()), ("b".to_string(), "v1".to_string())]).is_err());
}

#[test]
fn qubit_protocol_on_a_square() {
    // C4 confusability graph realized by two qubit bases: superadditivity is
    // impossible (C4 is perfect), and the certifier says so.
    let inputs = ["p", "q", "r", "s"];
    let vs = VectorSet::new(
        2,
        [
            ("p", vec![c(1.0, 0.0), c(0.0, 0.0)]),
            ("q", vec![c(0.0, 0.0), c(1.0, 0.0)]),
            ("r", vec![c(1.0, 0.0), c(1.0, 0.0)]),
            ("s", vec![c(1.0, 0.0), c(-1.0, 0.0)]),
        ],
    )
    .unwrap();
    let h = ChannelHypergraph::new(
        inputs,
        [("pq", vec!["p", "q"]), ("qr", vec!["q", "r"]), ("rs", vec!["r", "s"]), ("sp", vec!["s", "p"])],
    );
    // q and r share an output but are not orthogonal.
    let ch = ChannelSpec::uniform(h.unwrap());
    assert_eq!(ch.confusability_graph(), Graph::from_edges(inputs, &[("p", "q"), ("q", "r"), ("r", "s"), ("p", "s")]).unwrap());
    let cert = certify(
        CertifyInput {
            name: "square",
            channel: &ch,
            vectors: Some(&vs),
        },
        2,
    )
    .unwrap();
    assert_eq!(cert.verdict, Verdict::NoGoPerfectGraph);
    let con = NamedConstruction::new("square", vs, ch);
    assert!(!protocol::verify_zero_error_exhaustive(&con, &full_codebook(&con)).passed());
}

#[test]
fn perfect_channels_are_never_superadditive() {
    let mut rng = common::rng(77);
    for _ in 0..60 {
        let n = rng.random_range(2..12);
        let g = common::random_bipartite(&mut rng, n, 0.5);
        let ch = common::channel_for_graph(&g);
        for d in 1..=5 {
            let cert = certify(
                CertifyInput {
                    name: "bipartite",
                    channel: &ch,
                    vectors: None,
                },
                d,
            )
            .unwrap();
            assert_eq!(cert.verdict, Verdict::NoGoPerfectGraph);
            cert.validate().unwrap();
        }
    }
}
