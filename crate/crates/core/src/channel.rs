//! Discrete memoryless classical channels in hypergraph form.
//!
//! Each output `y` is a hyperedge: the set of inputs that can produce it.
//! Only supports matter for zero-error analysis; probabilities are carried
//! for simulation.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, product_label, Graph, IndependentSetWitness};
use crate::limits::Limits;

/// Row sums must match 1 within this tolerance.
pub const ROW_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperedge {
    pub label: String,
    /// Input indices, ascending.
    pub support: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelHypergraph {
    inputs: Vec<String>,
    input_index: HashMap<String, usize>,
    hyperedges: Vec<Hyperedge>,
}

impl ChannelHypergraph {
    /// Validates: unique input and output labels, nonempty supports over
    /// known inputs, and every input covered by some hyperedge.
    pub fn new<S, L, M>(inputs: impl IntoIterator<Item = S>, hyperedges: impl IntoIterator<Item = (L, Vec<M>)>) -> Result<Self>
    where
        S: Into<String>,
        L: Into<String>,
        M: AsRef<str>,
    {
        let inputs: Vec<String> = inputs.into_iter().map(Into::into).collect();
        let mut input_index = HashMap::with_capacity(inputs.len());
        for (i, x) in inputs.iter().enumerate() {
            if input_index.insert(x.clone(), i).is_some() {
                return Err(Error::InvalidChannel(format!("duplicate input label {x:?}")));
            }
        }
        let mut seen_outputs = HashMap::new();
        let mut edges = Vec::new();
        for (label, members) in hyperedges {
            let label: String = label.into();
            if seen_outputs.insert(label.clone(), ()).is_some() {
                return Err(Error::InvalidChannel(format!("duplicate output label {label:?}")));
            }
            if members.is_empty() {
                return Err(Error::InvalidChannel(format!("output {label:?} has empty support")));
            }
            let mut support = Vec::with_capacity(members.len());
            for m in &members {
                let m = m.as_ref();
                let i = *input_index
                    .get(m)
                    .ok_or_else(|| Error::UnknownLabel(m.to_string()))?;
                support.push(i);
            }
            support.sort_unstable();
            if support.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidChannel(format!("output {label:?} lists an input twice")));
            }
            edges.push(Hyperedge { label, support });
        }
        let mut covered = vec![false; inputs.len()];
        for e in &edges {
            for &i in &e.support {
                covered[i] = true;
            }
        }
        if let Some(i) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidChannel(format!(
                "input {:?} produces no output",
                inputs[i]
            )));
        }
        Ok(ChannelHypergraph {
            inputs,
            input_index,
            hyperedges: edges,
        })
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    pub fn input_index(&self, x: &str) -> Option<usize> {
        self.input_index.get(x).copied()
    }

    pub fn output_index(&self, y: &str) -> Option<usize> {
        self.hyperedges.iter().position(|e| e.label == y)
    }

    /// Support labels of hyperedge `y`.
    pub fn members(&self, y: usize) -> Vec<&str> {
        self.hyperedges[y]
            .support
            .iter()
            .map(|&i| self.inputs[i].as_str())
            .collect()
    }

    /// Indices of the hyperedges containing input `x`.
    pub fn outputs_of(&self, x: usize) -> Vec<usize> {
        self.hyperedges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.support.binary_search(&x).is_ok())
            .map(|(y, _)| y)
            .collect()
    }

    /// Inputs adjacent iff they share a hyperedge.
    pub fn confusability_graph(&self) -> Graph {
        let mut g = Graph::new(self.inputs.iter().cloned()).expect("inputs are unique");
        for e in &self.hyperedges {
            for (k, &u) in e.support.iter().enumerate() {
                for &v in &e.support[k + 1..] {
                    g.add_edge(u, v).expect("support has no repeats");
                }
            }
        }
        g
    }
}

/// Free-function form of [`ChannelHypergraph::confusability_graph`].
pub fn confusability_graph(h: &ChannelHypergraph) -> Graph {
    h.confusability_graph()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec {
    hypergraph: ChannelHypergraph,
    /// `probs[y][k]` is `P(y | support[y][k])`.
    probs: Vec<Vec<f64>>,
}

impl ChannelSpec {
    /// `probs[y]` must align with the (ascending) support of hyperedge `y`.
    pub fn new(hypergraph: ChannelHypergraph, probs: Vec<Vec<f64>>) -> Result<Self> {
        if probs.len() != hypergraph.hyperedges.len() {
            return Err(Error::InvalidChannel("one probability row per output required".into()));
        }
        let mut row_sums = vec![0.0; hypergraph.inputs.len()];
        for (e, p) in hypergraph.hyperedges.iter().zip(&probs) {
            if p.len() != e.support.len() {
                return Err(Error::InvalidChannel(format!(
                    "output {:?}: {} probabilities for {} supported inputs",
                    e.label,
                    p.len(),
                    e.support.len()
                )));
            }
            for (&x, &q) in e.support.iter().zip(p) {
                if !(q > 0.0 && q <= 1.0) {
                    return Err(Error::InvalidChannel(format!(
                        "P({:?} | {:?}) = {q} is outside (0, 1]",
                        e.label, hypergraph.inputs[x]
                    )));
                }
                row_sums[x] += q;
            }
        }
        for (x, s) in row_sums.iter().enumerate() {
            if (s - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::InvalidChannel(format!(
                    "probabilities for input {:?} sum to {s}",
                    hypergraph.inputs[x]
                )));
            }
        }
        Ok(ChannelSpec { hypergraph, probs })
    }

    /// `P(y|x) = 1 / #{hyperedges containing x}` on every incidence.
    pub fn uniform(hypergraph: ChannelHypergraph) -> Self {
        let mut degree = vec![0usize; hypergraph.inputs.len()];
        for e in &hypergraph.hyperedges {
            for &x in &e.support {
                degree[x] += 1;
            }
        }
        let probs = hypergraph
            .hyperedges
            .iter()
            .map(|e| e.support.iter().map(|&x| 1.0 / degree[x] as f64).collect())
            .collect();
        ChannelSpec { hypergraph, probs }
    }

    /// Identity channel on `d` symbols labeled `"0".."d-1"`.
    pub fn perfect_classical(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("perfect channel needs d >= 1".into()));
        }
        let labels: Vec<String> = (0..d).map(|i| i.to_string()).collect();
        let h = ChannelHypergraph::new(
            labels.clone(),
            labels.iter().map(|l| (l.clone(), vec![l.clone()])),
        )?;
        Ok(ChannelSpec::uniform(h))
    }

    pub fn hypergraph(&self) -> &ChannelHypergraph {
        &self.hypergraph
    }

    pub fn inputs(&self) -> &[String] {
        &self.hypergraph.inputs
    }

    /// `P(y|x)`, zero off the support.
    pub fn prob(&self, x: usize, y: usize) -> f64 {
        let e = &self.hypergraph.hyperedges[y];
        match e.support.binary_search(&x) {
            Ok(k) => self.probs[y][k],
            Err(_) => 0.0,
        }
    }

    /// `(output index, P(y|x))` for every output reachable from input `x`.
    pub fn transitions(&self, x: usize) -> Vec<(usize, f64)> {
        self.hypergraph
            .outputs_of(x)
            .into_iter()
            .map(|y| (y, self.prob(x, y)))
            .collect()
    }

    /// `Γ(x)`: labels of the outputs with `P(y|x) > 0`.
    pub fn support(&self, x: &str) -> Result<Vec<&str>> {
        let i = self
            .hypergraph
            .input_index(x)
            .ok_or_else(|| Error::UnknownLabel(x.to_string()))?;
        Ok(self
            .transitions(i)
            .into_iter()
            .filter(|&(_, p)| p > 0.0)
            .map(|(y, _)| self.hypergraph.hyperedges[y].label.as_str())
            .collect())
    }

    pub fn confusability_graph(&self) -> Graph {
        self.hypergraph.confusability_graph()
    }

    /// Maximum one-shot zero-error code, with output supports of the
    /// members re-checked for pairwise disjointness.
    pub fn zero_error_code(&self) -> Result<IndependentSetWitness> {
        self.zero_error_code_with(Limits::from_env())
    }

    pub fn zero_error_code_with(&self, limits: Limits) -> Result<IndependentSetWitness> {
        let g = self.confusability_graph();
        let code = graph::independence_number_with_limit(&g, limits.alpha)?;
        let supports: Vec<Vec<&str>> = code
            .members
            .iter()
            .map(|m| self.support(m))
            .collect::<Result<_>>()?;
        for (i, a) in supports.iter().enumerate() {
            for (j, b) in supports.iter().enumerate().skip(i + 1) {
                if a.iter().any(|y| b.contains(y)) {
                    return Err(Error::Verification(format!(
                        "code members {:?} and {:?} share an output",
                        code.members[i], code.members[j]
                    )));
                }
            }
        }
        Ok(code)
    }

    /// Serializable form with explicit probabilities.
    pub fn to_file(&self) -> ChannelFile {
        let h = &self.hypergraph;
        ChannelFile {
            inputs: h.inputs.clone(),
            outputs: h
                .hyperedges
                .iter()
                .zip(&self.probs)
                .map(|(e, p)| OutputEntry {
                    label: e.label.clone(),
                    support: e.support.iter().map(|&i| h.inputs[i].clone()).collect(),
                    probs: Some(
                        e.support
                            .iter()
                            .zip(p)
                            .map(|(&i, &q)| (h.inputs[i].clone(), q))
                            .collect(),
                    ),
                })
                .collect(),
        }
    }
}

pub fn uniform_channel_from_hypergraph(h: &ChannelHypergraph) -> ChannelSpec {
    ChannelSpec::uniform(h.clone())
}

pub fn perfect_classical(d: usize) -> Result<ChannelSpec> {
    ChannelSpec::perfect_classical(d)
}

/// Parallel use of two channels: inputs and outputs are pairs labeled
/// `"a|b"` (left-major), and `P((y,y')|(x,x')) = P_a(y|x) P_b(y'|x')`.
pub fn parallel_compose(a: &ChannelSpec, b: &ChannelSpec) -> ChannelSpec {
    let (ha, hb) = (&a.hypergraph, &b.hypergraph);
    let nb = hb.inputs.len();
    let inputs: Vec<String> = ha
        .inputs
        .iter()
        .flat_map(|x| hb.inputs.iter().map(move |x2| product_label(x, x2)))
        .collect();
    let mut hyperedges = Vec::new();
    let mut probs = Vec::new();
    for (ea, pa) in ha.hyperedges.iter().zip(&a.probs) {
        for (eb, pb) in hb.hyperedges.iter().zip(&b.probs) {
            let mut support = Vec::with_capacity(ea.support.len() * eb.support.len());
            let mut row = Vec::with_capacity(support.capacity());
            for (&x, &p) in ea.support.iter().zip(pa) {
                for (&x2, &q) in eb.support.iter().zip(pb) {
                    support.push(x * nb + x2);
                    row.push(p * q);
                }
            }
            hyperedges.push(Hyperedge {
                label: product_label(&ea.label, &eb.label),
                support,
            });
            probs.push(row);
        }
    }
    let input_index = inputs
        .iter()
        .enumerate()
        .map(|(i, l)| (l.clone(), i))
        .collect();
    ChannelSpec {
        hypergraph: ChannelHypergraph {
            inputs,
            input_index,
            hyperedges,
        },
        probs,
    }
}

/// JSON form of a channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelFile {
    pub inputs: Vec<String>,
    pub outputs: Vec<OutputEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputEntry {
    pub label: String,
    pub support: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probs: Option<BTreeMap<String, f64>>,
}

impl TryFrom<ChannelFile> for ChannelSpec {
    type Error = Error;

    /// Outputs either all carry `probs` or none do; without them the
    /// uniform rule applies.
    fn try_from(f: ChannelFile) -> Result<ChannelSpec> {
        let with_probs = f.outputs.iter().filter(|o| o.probs.is_some()).count();
        if with_probs != 0 && with_probs != f.outputs.len() {
            return Err(Error::InvalidChannel(
                "either every output or no output must list probs".into(),
            ));
        }
        let h = ChannelHypergraph::new(
            f.inputs.iter().cloned(),
            f.outputs.iter().map(|o| (o.label.clone(), o.support.clone())),
        )?;
        if with_probs == 0 {
            return Ok(ChannelSpec::uniform(h));
        }
        let mut probs = Vec::with_capacity(f.outputs.len());
        for (o, e) in f.outputs.iter().zip(&h.hyperedges) {
            let table = o.probs.as_ref().expect("checked above");
            if let Some(extra) = table.keys().find(|k| !o.support.contains(k)) {
                return Err(Error::InvalidChannel(format!(
                    "output {:?} gives a probability for {extra:?} outside its support",
                    o.label
                )));
            }
            let row = e
                .support
                .iter()
                .map(|&i| {
                    table.get(&h.inputs[i]).copied().ok_or_else(|| {
                        Error::InvalidChannel(format!(
                            "output {:?} has no probability for {:?}",
                            o.label, h.inputs[i]
                        ))
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            probs.push(row);
        }
        ChannelSpec::new(h, probs)
    }
}
