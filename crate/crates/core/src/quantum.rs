//! Small-dimension complex linear algebra: labeled vector sets, orthogonality
//! graphs, projective measurements built from hyperedges, Born rule.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Orthogonality, idempotence and normalization tolerance.
pub const TOL: f64 = 1e-9;
/// Tolerance on the total of a Born distribution.
pub const PROB_SUM_TOL: f64 = 1e-12;
/// Outcome label of the residual projector of an incomplete hyperedge.
pub const RESIDUAL: &str = "⊥";

pub type CVector = DVector<Complex64>;
pub type CMatrix = DMatrix<Complex64>;

/// Hermitian inner product `<u|v>`, conjugate-linear in `u`.
pub fn inner_product(u: &[Complex64], v: &[Complex64]) -> Result<Complex64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    Ok(u.iter().zip(v).map(|(a, b)| a.conj() * b).sum())
}

/// `|<û|v̂>|` for nonzero `u`, `v`.
fn overlap(u: &CVector, v: &CVector) -> f64 {
    u.dotc(v).norm() / (u.norm() * v.norm())
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorSet {
    dimension: usize,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    vectors: Vec<CVector>,
}

impl VectorSet {
    /// Rejects dimension < 2, wrong lengths, zero vectors, repeated labels,
    /// and pairs equal up to a global phase.
    pub fn new<S: Into<String>>(
        dimension: usize,
        entries: impl IntoIterator<Item = (S, Vec<Complex64>)>,
    ) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::InvalidVectors(format!("dimension {dimension} < 2")));
        }
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        let mut vectors: Vec<CVector> = Vec::new();
        for (label, comps) in entries {
            let label: String = label.into();
            if comps.len() != dimension {
                return Err(Error::InvalidVectors(format!(
                    "{label:?} has {} components, expected {dimension}",
                    comps.len()
                )));
            }
            let v = CVector::from_vec(comps);
            if v.norm() == 0.0 || !v.norm().is_finite() {
                return Err(Error::InvalidVectors(format!("{label:?} is zero or not finite")));
            }
            if let Some(j) = vectors.iter().position(|w| overlap(w, &v) > 1.0 - TOL) {
                return Err(Error::InvalidVectors(format!(
                    "{label:?} equals {:?} up to a phase",
                    labels[j]
                )));
            }
            if index.insert(label.clone(), labels.len()).is_some() {
                return Err(Error::InvalidVectors(format!("duplicate label {label:?}")));
            }
            labels.push(label);
            vectors.push(v);
        }
        Ok(VectorSet {
            dimension,
            labels,
            index,
            vectors,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn get(&self, label: &str) -> Option<&CVector> {
        self.index_of(label).map(|i| &self.vectors[i])
    }

    pub fn vector(&self, i: usize) -> &CVector {
        &self.vectors[i]
    }

    /// Unit-norm copy of the vector labeled `label`.
    pub fn normalized(&self, label: &str) -> Result<CVector> {
        self.get(label)
            .map(|v| v.normalize())
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Copy with the vector at `label` replaced, bypassing validation.
    /// Used to build faulty constructions for negative tests.
    pub fn with_replaced(&self, label: &str, v: Vec<Complex64>) -> Result<Self> {
        let i = self
            .index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        if v.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: v.len(),
            });
        }
        let mut out = self.clone();
        out.vectors[i] = CVector::from_vec(v);
        Ok(out)
    }

    pub fn to_file(&self) -> VectorSetFile {
        VectorSetFile {
            dimension: self.dimension,
            vectors: self
                .labels
                .iter()
                .zip(&self.vectors)
                .map(|(l, v)| {
                    let comps: Vec<[f64; 2]> = v.iter().map(|c| [c.re, c.im]).collect();
                    (l.clone(), serde_json::json!(comps))
                })
                .collect(),
        }
    }
}

/// JSON form: `{"dimension": d, "vectors": {"v1": [[re, im], ...], ...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorSetFile {
    pub dimension: usize,
    pub vectors: serde_json::Map<String, serde_json::Value>,
}

impl VectorSetFile {
    pub fn into_vector_set(self) -> Result<VectorSet> {
        let mut entries = Vec::with_capacity(self.vectors.len());
        for (label, value) in self.vectors {
            let comps: Vec<[f64; 2]> = serde_json::from_value(value).map_err(|e| {
                Error::InvalidVectors(format!("{label:?}: components must be [re, im] pairs ({e})"))
            })?;
            entries.push((label, comps.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()));
        }
        VectorSet::new(self.dimension, entries)
    }
}

/// Vertices are the labels; `u ~ v` iff `|<u,v>| / (|u| |v|) < tol`.
pub fn orthogonality_graph(vs: &VectorSet, tol: f64) -> Graph {
    let mut g = Graph::new(vs.labels.iter().cloned()).expect("labels are unique");
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if overlap(&vs.vectors[i], &vs.vectors[j]) < tol {
                g.add_edge(i, j).expect("i != j");
            }
        }
    }
    g
}

/// Projective measurement: labeled projectors summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub dimension: usize,
    pub projectors: Vec<(String, CMatrix)>,
}

/// Largest entrywise deviations from the projector-algebra identities.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProjectorResiduals {
    pub idempotence: f64,
    pub hermiticity: f64,
    pub orthogonality: f64,
    pub completeness: f64,
}

impl ProjectorResiduals {
    pub fn max(&self) -> f64 {
        self.idempotence
            .max(self.hermiticity)
            .max(self.orthogonality)
            .max(self.completeness)
    }
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// `|v><v|` for unit `v`.
pub fn rank_one_projector(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

impl Measurement {
    /// Builds a measurement after checking the projector identities within
    /// [`TOL`].
    pub fn new(dimension: usize, projectors: Vec<(String, CMatrix)>) -> Result<Self> {
        let m = Measurement {
            dimension,
            projectors,
        };
        if m.projectors.iter().any(|(_, p)| p.shape() != (dimension, dimension)) {
            return Err(Error::InvalidArgument("projector shape differs from dimension".into()));
        }
        let r = m.residuals();
        if r.max() > TOL {
            return Err(Error::Verification(format!("not a projective measurement: {r:?}")));
        }
        Ok(m)
    }

    pub fn residuals(&self) -> ProjectorResiduals {
        let d = self.dimension;
        let mut r = ProjectorResiduals::default();
        let mut sum = CMatrix::zeros(d, d);
        for (i, (_, p)) in self.projectors.iter().enumerate() {
            r.idempotence = r.idempotence.max(max_abs(&(p * p - p)));
            r.hermiticity = r.hermiticity.max(max_abs(&(p - p.adjoint())));
            for (_, q) in &self.projectors[i + 1..] {
                r.orthogonality = r.orthogonality.max(max_abs(&(p * q)));
            }
            sum += p;
        }
        r.completeness = max_abs(&(sum - CMatrix::identity(d, d)));
        r
    }

    pub fn outcomes(&self) -> impl Iterator<Item = &str> {
        self.projectors.iter().map(|(l, _)| l.as_str())
    }
}

/// One rank-one projector per member of `edge`, plus the residual projector
/// `I - Σ Π` labeled [`RESIDUAL`] when the edge is smaller than the dimension.
pub fn measurement_from_hyperedge<S: AsRef<str>>(vs: &VectorSet, edge: &[S]) -> Result<Measurement> {
    let d = vs.dimension;
    if edge.len() > d {
        return Err(Error::EdgeTooLarge {
            size: edge.len(),
            dimension: d,
        });
    }
    let units: Vec<CVector> = edge
        .iter()
        .map(|l| vs.normalized(l.as_ref()))
        .collect::<Result<_>>()?;
    for i in 0..units.len() {
        for j in i + 1..units.len() {
            let o = units[i].dotc(&units[j]).norm();
            if o >= TOL {
                return Err(Error::NonOrthogonal(
                    edge[i].as_ref().to_string(),
                    edge[j].as_ref().to_string(),
                    o,
                ));
            }
        }
    }
    let mut projectors: Vec<(String, CMatrix)> = edge
        .iter()
        .zip(&units)
        .map(|(l, u)| (l.as_ref().to_string(), rank_one_projector(u)))
        .collect();
    if edge.len() < d {
        let sum = projectors
            .iter()
            .fold(CMatrix::zeros(d, d), |acc, (_, p)| acc + p);
        projectors.push((RESIDUAL.to_string(), CMatrix::identity(d, d) - sum));
    }
    Measurement::new(d, projectors)
}

/// Born distribution `p(o) = <ψ|Π_o|ψ>`, in measurement order.
pub fn born_probabilities(m: &Measurement, state: &CVector) -> Result<Vec<(String, f64)>> {
    if state.len() != m.dimension {
        return Err(Error::DimensionMismatch {
            expected: m.dimension,
            got: state.len(),
        });
    }
    let norm = state.norm();
    if (norm - 1.0).abs() > TOL {
        return Err(Error::Unnormalized(norm));
    }
    Ok(m.projectors
        .iter()
        .map(|(l, p)| (l.clone(), state.dotc(&(p * state)).re))
        .collect())
}

/// Outcome of checking whether an edge is an orthonormal basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisReport {
    pub is_basis: bool,
    /// Largest `|<û_i|û_j>|` over distinct members.
    pub max_residual: f64,
    pub violations: Vec<String>,
}

/// Whether the normalized vectors of `edge` form an orthonormal basis of the
/// whole space. Violations are reported, not raised.
pub fn verify_orthonormal_basis<S: AsRef<str>>(vs: &VectorSet, edge: &[S]) -> BasisReport {
    let mut violations = Vec::new();
    if edge.len() != vs.dimension {
        violations.push(format!("{} members for dimension {}", edge.len(), vs.dimension));
    }
    let mut units = Vec::new();
    for l in edge {
        match vs.normalized(l.as_ref()) {
            Ok(u) => units.push((l.as_ref(), u)),
            Err(_) => violations.push(format!("unknown label {:?}", l.as_ref())),
        }
    }
    let mut max_residual: f64 = 0.0;
    for i in 0..units.len() {
        for j in i + 1..units.len() {
            let o = units[i].1.dotc(&units[j].1).norm();
            max_residual = max_residual.max(o);
            if o >= TOL {
                violations.push(format!("{} and {} overlap by {o:e}", units[i].0, units[j].0));
            }
        }
    }
    BasisReport {
        is_basis: violations.is_empty(),
        max_residual,
        violations,
    }
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Real vector as complex components.
pub fn real(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&x| c(x, 0.0)).collect()
}
