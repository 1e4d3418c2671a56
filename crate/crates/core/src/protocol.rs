//! Joint use of a noisy classical channel and a perfect quantum channel.
//!
//! The sender maps a message to a vertex `v`, sends the label `v` through the
//! classical channel and the normalized state `|ψ_v>` through the quantum
//! channel (modeled as the identity). The receiver sees an output hyperedge
//! `h ∋ v`, measures in the projective measurement determined by `h`, and
//! reads off `v`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::NamedConstruction;
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::limits::Limits;
use crate::par;
use crate::quantum::{self, CVector};

/// Decoding counts as certain when the transmitted vertex has Born
/// probability at least `1 - DECODE_TOL` and every other outcome at most
/// `DECODE_TOL`.
pub const DECODE_TOL: f64 = 1e-9;

/// Born probabilities below this are floating-point noise and are never
/// sampled.
pub const SAMPLING_FLOOR: f64 = 1e-12;

/// Message ↔ vertex bijection onto a subset of the inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Codebook {
    messages: Vec<String>,
    vertices: Vec<String>,
}

impl Codebook {
    pub fn new(pairs: impl IntoIterator<Item = (String, String)>) -> Result<Self> {
        let (messages, vertices): (Vec<String>, Vec<String>) = pairs.into_iter().unzip();
        let unique = |xs: &[String]| xs.iter().collect::<HashSet<_>>().len() == xs.len();
        if !unique(&messages) {
            return Err(Error::InvalidArgument("codebook repeats a message".into()));
        }
        if !unique(&vertices) {
            return Err(Error::InvalidArgument("codebook maps two messages to one vertex".into()));
        }
        Ok(Codebook { messages, vertices })
    }

    pub fn len(&self) -> usize {
        self.messages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.messages.is_empty()
    }

    pub fn messages(&self) -> &[String] {
        &self.messages
    }

    pub fn vertex(&self, message: &str) -> Option<&str> {
        self.messages
            .iter()
            .position(|m| m == message)
            .map(|i| self.vertices[i].as_str())
    }

    pub fn message(&self, vertex: &str) -> Option<&str> {
        self.vertices
            .iter()
            .position(|v| v == vertex)
            .map(|i| self.messages[i].as_str())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.messages
            .iter()
            .zip(&self.vertices)
            .map(|(m, v)| (m.as_str(), v.as_str()))
    }
}

/// One message per vertex: `m{k}` ↦ the `k`-th channel input.
pub fn full_codebook(c: &NamedConstruction) -> Codebook {
    Codebook::new(
        c.hypergraph()
            .inputs()
            .iter()
            .enumerate()
            .map(|(k, v)| (format!("m{}", k + 1), v.clone())),
    )
    .expect("inputs are unique")
}

/// Classical label and unit quantum state for `message`.
pub fn encode(message: &str, cb: &Codebook, c: &NamedConstruction) -> Result<(String, CVector)> {
    let v = cb
        .vertex(message)
        .ok_or_else(|| Error::UnknownLabel(message.to_string()))?;
    Ok((v.to_string(), c.vectors.normalized(v)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    pub outcome: String,
    pub probability: f64,
    pub distribution: Vec<(String, f64)>,
}

/// Measures `state` in the measurement of hyperedge `output`. The reported
/// outcome is the most likely one; ties go to the smaller label.
pub fn decode(output: &str, state: &CVector, c: &NamedConstruction) -> Result<Decoded> {
    let h = c.hypergraph();
    let y = h
        .output_index(output)
        .ok_or_else(|| Error::UnknownLabel(output.to_string()))?;
    if state.len() != c.vectors.dimension() {
        return Err(Error::DimensionMismatch {
            expected: c.vectors.dimension(),
            got: state.len(),
        });
    }
    let m = quantum::measurement_from_hyperedge(&c.vectors, &h.members(y))?;
    let distribution = quantum::born_probabilities(&m, state)?;
    let (outcome, probability) = distribution
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
        .cloned()
        .expect("measurements have at least one outcome");
    Ok(Decoded {
        outcome,
        probability,
        distribution,
    })
}

/// Evidence record for one transmission.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub message: String,
    pub vertex: String,
    pub output: String,
    /// Empty when the receiver's measurement could not be formed.
    pub decoded: String,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairFailure {
    pub message: String,
    pub vertex: String,
    pub output: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExhaustiveReport {
    pub messages: usize,
    pub pairs_checked: usize,
    /// Smallest Born probability of the correct vertex over all pairs.
    pub min_correct_probability: f64,
    /// Largest Born probability of any wrong outcome over all pairs.
    pub max_wrong_probability: f64,
    pub failures: Vec<PairFailure>,
    pub transcript: Vec<TranscriptEntry>,
    /// Number of messages sent with certainty; present iff no failures.
    pub certified: Option<usize>,
}

impl ExhaustiveReport {
    pub fn passed(&self) -> bool {
        self.certified.is_some()
    }
}

struct PairOutcome {
    entry: TranscriptEntry,
    correct: f64,
    wrong: f64,
    failure: Option<String>,
}

fn check_pair(c: &NamedConstruction, message: &str, vertex: &str, y: usize) -> PairOutcome {
    let output = c.hypergraph().hyperedges()[y].label.clone();
    let entry = |decoded: String, probability: f64| TranscriptEntry {
        message: message.to_string(),
        vertex: vertex.to_string(),
        output: output.clone(),
        decoded,
        probability,
    };
    let decoded = c
        .vectors
        .normalized(vertex)
        .and_then(|state| decode(&output, &state, c));
    match decoded {
        Err(e) => PairOutcome {
            entry: entry(String::new(), 0.0),
            correct: 0.0,
            wrong: 1.0,
            failure: Some(e.to_string()),
        },
        Ok(d) => {
            let correct = d
                .distribution
                .iter()
                .find(|(o, _)| o == vertex)
                .map_or(0.0, |(_, p)| *p);
            let wrong = d
                .distribution
                .iter()
                .filter(|(o, _)| o != vertex)
                .map(|(_, p)| *p)
                .fold(0.0, f64::max);
            let failure = (correct < 1.0 - DECODE_TOL || wrong > DECODE_TOL).then(|| {
                format!("decoded {} with p = {:.3e}; correct vertex p = {correct:.3e}", d.outcome, d.probability)
            });
            PairOutcome {
                entry: entry(d.outcome, d.probability),
                correct,
                wrong,
                failure,
            }
        }
    }
}

/// Decodes every message over every output it can produce and certifies the
/// codebook size if all of them decode with certainty. The report is sorted
/// by message, then output, whatever the thread count.
pub fn verify_zero_error_exhaustive(c: &NamedConstruction, cb: &Codebook) -> ExhaustiveReport {
    let pairs: Vec<(&str, &str)> = cb.pairs().collect();
    let per_message = par::map(&pairs, |&(message, vertex)| {
        match c.hypergraph().input_index(vertex) {
            None => vec![PairOutcome {
                entry: TranscriptEntry {
                    message: message.to_string(),
                    vertex: vertex.to_string(),
                    output: String::new(),
                    decoded: String::new(),
                    probability: 0.0,
                },
                correct: 0.0,
                wrong: 1.0,
                failure: Some(format!("vertex {vertex:?} is not a channel input")),
            }],
            Some(x) => c
                .channel
                .transitions(x)
                .into_iter()
                .filter(|&(_, p)| p > 0.0)
                .map(|(y, _)| check_pair(c, message, vertex, y))
                .collect(),
        }
    });
    let mut report = ExhaustiveReport {
        messages: cb.len(),
        pairs_checked: 0,
        min_correct_probability: 1.0,
        max_wrong_probability: 0.0,
        failures: Vec::new(),
        transcript: Vec::new(),
        certified: None,
    };
    for outcome in per_message.into_iter().flatten() {
        report.pairs_checked += 1;
        report.min_correct_probability = report.min_correct_probability.min(outcome.correct);
        report.max_wrong_probability = report.max_wrong_probability.max(outcome.wrong);
        if let Some(reason) = outcome.failure {
            report.failures.push(PairFailure {
                message: outcome.entry.message.clone(),
                vertex: outcome.entry.vertex.clone(),
                output: outcome.entry.output.clone(),
                reason,
            });
        }
        report.transcript.push(outcome.entry);
    }
    if report.failures.is_empty() && report.pairs_checked > 0 {
        report.certified = Some(cb.len());
    }
    report
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub trials: usize,
    pub successes: usize,
    pub seed: u64,
    pub transcript: Vec<TranscriptEntry>,
}

impl SimulationReport {
    pub fn success_fraction(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

fn sample_index(rng: &mut ChaCha8Rng, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    let mut u = rng.random::<f64>() * total;
    for (i, &w) in weights.iter().enumerate() {
        if u < w {
            return i;
        }
        u -= w;
    }
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
}

/// Generator for trial `t`: the seed picks the key and `t` the stream, so
/// each trial's randomness is independent of how trials are scheduled.
fn trial_rng(seed: u64, t: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t as u64);
    rng
}

fn run_trial(c: &NamedConstruction, cb: &Codebook, seed: u64, t: usize) -> TranscriptEntry {
    let mut rng = trial_rng(seed, t);
    let k = rng.random_range(0..cb.len());
    let message = cb.messages[k].clone();
    let vertex = cb.vertices[k].clone();
    let mut entry = TranscriptEntry {
        message,
        vertex: vertex.clone(),
        output: String::new(),
        decoded: String::new(),
        probability: 0.0,
    };
    let Some(x) = c.hypergraph().input_index(&vertex) else {
        return entry;
    };
    let transitions = c.channel.transitions(x);
    let weights: Vec<f64> = transitions.iter().map(|&(_, p)| p).collect();
    let y = transitions[sample_index(&mut rng, &weights)].0;
    entry.output = c.hypergraph().hyperedges()[y].label.clone();
    let decoded = c
        .vectors
        .normalized(&vertex)
        .and_then(|state| decode(&entry.output, &state, c));
    if let Ok(d) = decoded {
        let weights: Vec<f64> = d
            .distribution
            .iter()
            .map(|&(_, p)| if p < SAMPLING_FLOOR { 0.0 } else { p })
            .collect();
        let (outcome, p) = d.distribution[sample_index(&mut rng, &weights)].clone();
        entry.decoded = outcome;
        entry.probability = p;
    }
    entry
}

/// Samples `trials` transmissions of uniformly random messages, with channel
/// outputs drawn from the channel probabilities and measurement outcomes
/// from the Born rule. Identical `(seed, trials)` give identical
/// transcripts, serial or parallel.
pub fn simulate_monte_carlo(c: &NamedConstruction, cb: &Codebook, trials: usize, seed: u64) -> Result<SimulationReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1".into()));
    }
    if cb.is_empty() {
        return Err(Error::InvalidArgument("codebook is empty".into()));
    }
    let transcript = par::map_range(trials, |t| run_trial(c, cb, seed, t));
    let successes = transcript.iter().filter(|e| e.decoded == e.vertex).count();
    Ok(SimulationReport {
        trials,
        successes,
        seed,
        transcript,
    })
}

/// Same as [`simulate_monte_carlo`] on a single thread.
pub fn simulate_monte_carlo_serial(c: &NamedConstruction, cb: &Codebook, trials: usize, seed: u64) -> Result<SimulationReport> {
    if trials == 0 || cb.is_empty() {
        return Err(Error::InvalidArgument("trials and codebook must be nonempty".into()));
    }
    let transcript: Vec<TranscriptEntry> = (0..trials).map(|t| run_trial(c, cb, seed, t)).collect();
    let successes = transcript.iter().filter(|e| e.decoded == e.vertex).count();
    Ok(SimulationReport {
        trials,
        successes,
        seed,
        transcript,
    })
}

/// Zero-error capacity with a perfect classical `d`-level channel:
/// `α(G ⊠ K̄_d)`, checked against `d·α(G)`.
pub fn classical_baseline(c: &NamedConstruction, d: usize) -> Result<usize> {
    classical_baseline_for_graph(&c.confusability_graph(), d, Limits::from_env())
}

pub fn classical_baseline_for_graph(g: &Graph, d: usize, limits: Limits) -> Result<usize> {
    let product = g.strong_product(&Graph::edgeless(d)?);
    let joint = graph::independence_number_with_limit(&product, limits.alpha)?.size;
    let single = graph::independence_number_with_limit(g, limits.alpha)?.size;
    if joint != d * single {
        return Err(Error::Verification(format!(
            "α(G ⊠ K̄_{d}) = {joint} but {d}·α(G) = {}",
            d * single
        )));
    }
    Ok(joint)
}

/// Summary line closing a JSON-lines transcript.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranscriptSummary {
    pub name: String,
    pub mode: String,
    /// Certified message count of this protocol.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub achieved: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub successes: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cabello18, xu_family};
    use crate::quantum::real;

    fn swapped_cabello() -> NamedConstruction {
        let mut c = cabello18();
        let v1: Vec<f64> = c.vectors.get("v1").unwrap().iter().map(|z| z.re).collect();
        let v3: Vec<f64> = c.vectors.get("v3").unwrap().iter().map(|z| z.re).collect();
        c.vectors = c.vectors.with_replaced("v1", real(&v3)).unwrap();
        c.vectors = c.vectors.with_replaced("v3", real(&v1)).unwrap();
        c
    }

    #[test]
    fn codebook_bijection() {
        let c = cabello18();
        let cb = full_codebook(&c);
        assert_eq!(cb.len(), 18);
        assert_eq!(cb.vertex("m1"), Some("v1"));
        assert_eq!(cb.message("v18"), Some("m18"));
        assert!(Codebook::new([("a".into(), "v1".into()), ("b".into(), "v1".into())]).is_err());
        assert!(Codebook::new([("a".into(), "v1".into()), ("a".into(), "v2".into())]).is_err());
        assert_eq!(full_codebook(&xu_family(1).unwrap()).len(), 21);
    }

    #[test]
    fn encode_normalizes() {
        let c = xu_family(1).unwrap();
        let cb = full_codebook(&c);
        for m in cb.messages() {
            let (_, s) = encode(m, &cb, &c).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-12);
        }
        let (v, _) = encode("m1", &cb, &c).unwrap();
        assert_eq!(v, "e0");
        assert!(encode("nope", &cb, &c).is_err());
    }

    #[test]
    fn decode_recovers_vertex() {
        let c = cabello18();
        let cb = full_codebook(&c);
        let (v, s) = encode("m3", &cb, &c).unwrap();
        for y in c.channel.support(&v).unwrap() {
            let d = decode(y, &s, &c).unwrap();
            assert_eq!(d.outcome, v);
            assert!((d.probability - 1.0).abs() < 1e-12);
            assert_eq!(cb.message(&d.outcome), Some("m3"));
        }
        assert!(decode("h99", &s, &c).is_err());
        let short = CVector::from_vec(real(&[1.0, 0.0, 0.0]));
        assert!(matches!(decode("h1", &short, &c), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn decode_two_member_edge_and_residual() {
        let c = xu_family(1).unwrap();
        let h = c.hypergraph();
        let y = h.hyperedges().iter().position(|e| e.support.len() == 2).unwrap();
        let members = h.members(y);
        let label = h.hyperedges()[y].label.clone();
        let s = c.vectors.normalized(members[0]).unwrap();
        let d = decode(&label, &s, &c).unwrap();
        assert_eq!(d.outcome, members[0]);
        assert_eq!(d.distribution.len(), 3);
        // The residual direction: cross product of the two conjugated members.
        let a = c.vectors.normalized(members[0]).unwrap().conjugate();
        let b = c.vectors.normalized(members[1]).unwrap().conjugate();
        let perp = CVector::from_vec(vec![
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
        .normalize();
        let d = decode(&label, &perp, &c).unwrap();
        assert_eq!(d.outcome, quantum::RESIDUAL);
        assert!((d.probability - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exhaustive_cabello18_certifies_18() {
        let c = cabello18();
        let r = verify_zero_error_exhaustive(&c, &full_codebook(&c));
        assert_eq!(r.pairs_checked, 36);
        assert_eq!(r.certified, Some(18));
        assert!(r.min_correct_probability >= 1.0 - DECODE_TOL);
        assert!(r.max_wrong_probability <= DECODE_TOL);
    }

    #[test]
    fn exhaustive_xu_family() {
        for (m, n) in [(1, 21), (2, 57)] {
            let c = xu_family(m).unwrap();
            let r = verify_zero_error_exhaustive(&c, &full_codebook(&c));
            assert_eq!(r.certified, Some(n));
        }
    }

    #[test]
    fn exhaustive_reports_corruption() {
        let c = swapped_cabello();
        let r = verify_zero_error_exhaustive(&c, &full_codebook(&c));
        assert!(!r.passed());
        // Inside h1 the swap is invisible; h2 and h3 no longer form bases.
        assert!(!r.failures.iter().any(|f| f.output == "h1"));
        assert!(r.failures.iter().any(|f| f.message == "m1" && f.output == "h2"));
        assert!(r.failures.iter().any(|f| f.message == "m3" && f.output == "h3"));
        let mut sorted = r.transcript.clone();
        sorted.sort_by_key(|e| (e.message[1..].parse::<usize>().unwrap(), e.output[1..].parse::<usize>().unwrap()));
        assert_eq!(sorted, r.transcript);
    }

    #[test]
    fn monte_carlo_is_exact_and_deterministic() {
        let c = cabello18();
        let cb = full_codebook(&c);
        let a = simulate_monte_carlo(&c, &cb, 2000, 7).unwrap();
        assert_eq!(a.successes, 2000);
        let b = simulate_monte_carlo_serial(&c, &cb, 2000, 7).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        let other = simulate_monte_carlo(&c, &cb, 2000, 8).unwrap();
        assert_ne!(a.transcript, other.transcript);
        let one = simulate_monte_carlo(&c, &cb, 1, 0).unwrap();
        assert_eq!(one.transcript.len(), 1);
        assert!(simulate_monte_carlo(&c, &cb, 0, 0).is_err());
    }

    #[test]
    fn monte_carlo_sees_corruption() {
        let c = swapped_cabello();
        let r = simulate_monte_carlo(&c, &full_codebook(&c), 2000, 1).unwrap();
        assert!(r.success_fraction() < 1.0);
    }

    #[test]
    fn outputs_are_sampled_by_probability() {
        let c = cabello18();
        let cb = full_codebook(&c);
        let r = simulate_monte_carlo(&c, &cb, 4000, 3).unwrap();
        let hits = r.transcript.iter().filter(|e| e.vertex == "v1").collect::<Vec<_>>();
        let h1 = hits.iter().filter(|e| e.output == "h1").count() as f64;
        let frac = h1 / hits.len() as f64;
        assert!((frac - 0.5).abs() < 0.15, "{frac}");
    }

    #[test]
    fn baselines() {
        assert_eq!(classical_baseline(&cabello18(), 4).unwrap(), 16);
        assert_eq!(classical_baseline(&cabello18(), 1).unwrap(), 4);
        // α(𝒢_1) = 9, so the baseline with a 3-level channel is 27.
        assert_eq!(classical_baseline(&xu_family(1).unwrap(), 3).unwrap(), 27);
    }
}
