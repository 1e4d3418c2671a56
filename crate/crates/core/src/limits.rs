use std::env;

use crate::error::{Error, Result};

/// Environment variable overriding every vertex-count cap.
pub const LIMIT_ENV: &str = "ZERR_SOLVER_LIMIT";

/// Vertex-count caps for the exponential-time solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Exact independence / clique number.
    pub alpha: usize,
    /// Odd-hole / odd-antihole enumeration.
    pub perfect: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            alpha: 128,
            perfect: 64,
        }
    }
}

impl Limits {
    /// Defaults, with both caps replaced by `ZERR_SOLVER_LIMIT` when it is set
    /// to a valid count.
    pub fn from_env() -> Self {
        match env::var(LIMIT_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            Some(n) => Limits::uniform(n),
            None => Limits::default(),
        }
    }

    pub fn uniform(n: usize) -> Self {
        Limits {
            alpha: n,
            perfect: n,
        }
    }
}

pub(crate) fn check(vertices: usize, limit: usize) -> Result<()> {
    if vertices > limit {
        Err(Error::SizeLimit { vertices, limit })
    } else {
        Ok(())
    }
}
