//! Zero-error capacity toolkit.
//!
//! Exact independence/clique numbers and strong products for confusability
//! graphs, classical channels as hypergraphs, small-dimension projective
//! measurements, the two built-in vector constructions, the joint
//! noisy-classical + perfect-quantum transmission protocol, and the
//! certifier that decides whether a channel exhibits one-shot zero-error
//! superadditivity under that protocol.

pub mod bits;
pub mod certify;
pub mod channel;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod io;
pub mod limits;
pub mod par;
pub mod protocol;
pub mod quantum;
pub mod report;

pub use certify::{certify, Certificate, Evidence, Verdict};
pub use channel::{ChannelHypergraph, ChannelSpec, Hyperedge};
pub use constructions::{cabello18, xu_family, NamedConstruction, Prediction};
pub use error::{Error, Result};
pub use graph::{Graph, IndependentSetWitness, PerfectnessVerdict};
pub use limits::Limits;
pub use protocol::{Codebook, TranscriptEntry};
pub use quantum::{Measurement, VectorSet};
