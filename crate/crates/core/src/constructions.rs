//! Built-in vector constructions paired with their channel hypergraphs.
//!
//! * [`cabello18`]: 18 real vectors in dimension 4 forming 9 orthonormal
//!   bases, each vector in exactly two bases. Each basis is one channel
//!   output.
//! * [`xu_family`]: for `m >= 1`, the `3 + 9m + 9m²` qutrit vectors built
//!   from the `3m`-th roots of unity. Channel outputs are the maximal cliques
//!   of the orthogonality graph, so every output has two or three members.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Deserialize;

use crate::channel::{ChannelHypergraph, ChannelSpec};
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::limits::Limits;
use crate::quantum::{self, orthogonality_graph, real, VectorSet, TOL};
use crate::report::Check;

/// Vertex count, independence number and quantum dimension a construction
/// is expected to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prediction {
    pub vertices: usize,
    pub alpha: usize,
    pub dimension: usize,
}

#[derive(Debug, Clone)]
pub struct NamedConstruction {
    pub name: String,
    pub vectors: VectorSet,
    pub channel: ChannelSpec,
    pub predicted: Option<Prediction>,
}

impl NamedConstruction {
    /// Pairs a vector set with a channel. Labels are not required to match
    /// here; [`verify_construction`] reports mismatches.
    pub fn new(name: impl Into<String>, vectors: VectorSet, channel: ChannelSpec) -> Self {
        NamedConstruction {
            name: name.into(),
            vectors,
            channel,
            predicted: None,
        }
    }

    pub fn hypergraph(&self) -> &ChannelHypergraph {
        self.channel.hypergraph()
    }

    pub fn confusability_graph(&self) -> Graph {
        self.channel.confusability_graph()
    }

    pub fn orthogonality_graph(&self) -> Graph {
        orthogonality_graph(&self.vectors, TOL)
    }
}

#[derive(Deserialize)]
struct TableFile {
    dimension: usize,
    vectors: Vec<(String, Vec<f64>)>,
    hyperedges: Vec<(String, Vec<String>)>,
}

const CABELLO18_TABLE: &str = include_str!("../data/cabello18.json");

/// The 18-vector, 9-basis construction in dimension 4.
pub fn cabello18() -> NamedConstruction {
    let table: TableFile = serde_json::from_str(CABELLO18_TABLE).expect("embedded table parses");
    let vectors = VectorSet::new(
        table.dimension,
        table.vectors.iter().map(|(l, v)| (l.clone(), real(v))),
    )
    .expect("embedded vectors are valid");
    let h = ChannelHypergraph::new(
        table.vectors.iter().map(|(l, _)| l.clone()),
        table.hyperedges,
    )
    .expect("embedded hypergraph is valid");
    NamedConstruction {
        name: "cabello18".into(),
        vectors,
        channel: ChannelSpec::uniform(h),
        predicted: Some(Prediction {
            vertices: 18,
            alpha: 4,
            dimension: 4,
        }),
    }
}

/// Vector count of [`xu_family`]`(m)`: `3 + 9m + 9m²`.
pub fn xu_family_size(m: usize) -> usize {
    3 + 9 * m + 9 * m * m
}

/// Predicted independence number `3m(m+1)`.
pub fn xu_family_alpha(m: usize) -> usize {
    3 * m * (m + 1)
}

/// Qutrit family over `ω = e^{2πi/(3m)}`: the standard basis `e0, e1, e2`,
/// `a{i} = (1, -ω^i, 0)`, `b{i} = (1, 0, -ω^i)`, `c{i} = (0, 1, -ω^i)` and
/// `d{i}_{j} = (1, ω^i, ω^j)` for `i, j ∈ 1..=3m`.
pub fn xu_family(m: usize) -> Result<NamedConstruction> {
    if m == 0 {
        return Err(Error::InvalidArgument("xu_family needs m >= 1".into()));
    }
    let k = 3 * m;
    let w = |i: usize| Complex64::from_polar(1.0, 2.0 * PI * (i % k) as f64 / k as f64);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut entries: Vec<(String, Vec<Complex64>)> = vec![
        ("e0".into(), vec![one, zero, zero]),
        ("e1".into(), vec![zero, one, zero]),
        ("e2".into(), vec![zero, zero, one]),
    ];
    for i in 1..=k {
        entries.push((format!("a{i}"), vec![one, -w(i), zero]));
    }
    for i in 1..=k {
        entries.push((format!("b{i}"), vec![one, zero, -w(i)]));
    }
    for i in 1..=k {
        entries.push((format!("c{i}"), vec![zero, one, -w(i)]));
    }
    for i in 1..=k {
        for j in 1..=k {
            entries.push((format!("d{i}_{j}"), vec![one, w(i), w(j)]));
        }
    }
    let vectors = VectorSet::new(3, entries)
        .map_err(|e| Error::InvalidVectors(format!("xu_family({m}) template collision: {e}")))?;
    let g = orthogonality_graph(&vectors, TOL);
    let hyperedges: Vec<(String, Vec<String>)> = graph::maximal_cliques(&g)
        .into_iter()
        .enumerate()
        .map(|(n, c)| {
            (
                format!("h{}", n + 1),
                c.into_iter().map(|v| g.label(v).to_string()).collect(),
            )
        })
        .collect();
    let h = ChannelHypergraph::new(vectors.labels().iter().cloned(), hyperedges)?;
    Ok(NamedConstruction {
        name: format!("xu{m}"),
        vectors,
        channel: ChannelSpec::uniform(h),
        predicted: Some(Prediction {
            vertices: xu_family_size(m),
            alpha: xu_family_alpha(m),
            dimension: 3,
        }),
    })
}

#[derive(Debug, Clone)]
pub struct ConstructionReport {
    pub name: String,
    pub checks: Vec<Check>,
    /// Facts that do not affect the verdict.
    pub notes: Vec<String>,
    /// Independence number of the confusability graph, when computed.
    pub alpha: Option<usize>,
}

impl ConstructionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

pub fn verify_construction(c: &NamedConstruction) -> ConstructionReport {
    verify_construction_with(c, Limits::from_env())
}

/// Checks label coincidence, per-hyperedge orthogonality, that every
/// confusable pair is orthogonal, and the predicted counts.
pub fn verify_construction_with(c: &NamedConstruction, limits: Limits) -> ConstructionReport {
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let h = c.hypergraph();
    let vs = &c.vectors;

    let inputs: BTreeSet<&str> = h.inputs().iter().map(String::as_str).collect();
    let labels: BTreeSet<&str> = vs.labels().iter().map(String::as_str).collect();
    let missing: Vec<&&str> = inputs.difference(&labels).collect();
    let extra: Vec<&&str> = labels.difference(&inputs).collect();
    let labels_ok = missing.is_empty() && extra.is_empty();
    checks.push(Check::new(
        "labels_coincide",
        labels_ok,
        if labels_ok {
            format!("{} inputs, each with a vector", inputs.len())
        } else {
            format!("inputs without vectors: {missing:?}; vectors without inputs: {extra:?}")
        },
    ));

    let mut worst: f64 = 0.0;
    let mut bad_edges = Vec::new();
    let mut full_bases = 0;
    for (y, e) in h.hyperedges().iter().enumerate() {
        let members = h.members(y);
        if members.len() > vs.dimension() {
            bad_edges.push(format!("{}: {} members > dimension {}", e.label, members.len(), vs.dimension()));
            continue;
        }
        let report = quantum::verify_orthonormal_basis(vs, &members);
        worst = worst.max(report.max_residual);
        let structural: Vec<&String> = report
            .violations
            .iter()
            .filter(|v| !v.contains("members for dimension"))
            .collect();
        if structural.is_empty() {
            if report.is_basis {
                full_bases += 1;
            }
        } else {
            bad_edges.push(format!("{}: {}", e.label, structural.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("; ")));
        }
    }
    checks.push(Check::new(
        "hyperedge_orthogonality",
        bad_edges.is_empty(),
        if bad_edges.is_empty() {
            format!("{} hyperedges, max residual {worst:.3e}", h.hyperedges().len())
        } else {
            bad_edges.join(" | ")
        },
    ));
    notes.push(format!(
        "{full_bases} of {} hyperedges are complete orthonormal bases",
        h.hyperedges().len()
    ));

    let conf = c.confusability_graph();
    let orth = c.orthogonality_graph();
    if labels_ok {
        let mut non_orth = Vec::new();
        let mut extra_orth = 0;
        for (u, v) in conf.edges() {
            let (a, b) = (conf.label(u), conf.label(v));
            let (i, j) = (orth.index_of(a).unwrap(), orth.index_of(b).unwrap());
            if !orth.adjacent(i, j) {
                non_orth.push(format!("{a}-{b}"));
            }
        }
        for (i, j) in orth.edges() {
            let (u, v) = (conf.index_of(orth.label(i)).unwrap(), conf.index_of(orth.label(j)).unwrap());
            if !conf.adjacent(u, v) {
                extra_orth += 1;
            }
        }
        checks.push(Check::new(
            "confusable_pairs_orthogonal",
            non_orth.is_empty(),
            if non_orth.is_empty() {
                format!("all {} confusable pairs orthogonal", conf.edge_count())
            } else {
                format!("confusable but not orthogonal: {}", non_orth.join(", "))
            },
        ));
        notes.push(if extra_orth == 0 && non_orth.is_empty() {
            "confusability graph equals orthogonality graph".to_string()
        } else {
            format!(
                "orthogonality graph has {} edges, confusability graph {}; {extra_orth} orthogonal pairs share no output",
                orth.edge_count(),
                conf.edge_count()
            )
        });
    }

    let mut alpha = None;
    if let Some(p) = c.predicted {
        checks.push(Check::new(
            "predicted_vertices",
            p.vertices == conf.len(),
            format!("predicted {}, found {}", p.vertices, conf.len()),
        ));
        checks.push(Check::new(
            "predicted_dimension",
            p.dimension == vs.dimension(),
            format!("predicted {}, found {}", p.dimension, vs.dimension()),
        ));
        match graph::independence_number_with_limit(&conf, limits.alpha) {
            Ok(w) => {
                checks.push(Check::new(
                    "predicted_alpha",
                    w.size == p.alpha,
                    format!("predicted {}, computed {} (witness {:?})", p.alpha, w.size, w.members),
                ));
                alpha = Some(w.size);
            }
            Err(e) => notes.push(format!("predicted_alpha not checked: {e}")),
        }
    }

    ConstructionReport {
        name: c.name.clone(),
        checks,
        notes,
        alpha,
    }
}
