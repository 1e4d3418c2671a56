//! Perfect-graph recognition through odd holes and odd antiholes.
//!
//! A graph is perfect iff neither it nor its complement contains an induced
//! cycle of odd length >= 5. Holes are found by extending chordless paths
//! from each start vertex `s` through vertices larger than `s`, so every hole
//! is discovered from its smallest vertex.

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::Result;
use crate::limits::{self, Limits};

use super::{Graph, PerfectnessVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HoleKind {
    /// Induced odd cycle of the graph itself.
    Hole,
    /// Induced odd cycle of the complement.
    Antihole,
}

impl std::fmt::Display for HoleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HoleKind::Hole => "hole",
            HoleKind::Antihole => "antihole",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddHole {
    pub kind: HoleKind,
    /// Cycle order, starting at the smallest label.
    pub cycle: Vec<String>,
}

pub fn is_perfect(g: &Graph) -> Result<PerfectnessVerdict> {
    is_perfect_with_limit(g, Limits::from_env().perfect)
}

pub fn is_perfect_with_limit(g: &Graph, limit: usize) -> Result<PerfectnessVerdict> {
    limits::check(g.len(), limit)?;
    let witness = find_odd_hole(g)
        .map(|c| (HoleKind::Hole, c))
        .or_else(|| find_odd_hole(&g.complement()).map(|c| (HoleKind::Antihole, c)))
        .map(|(kind, cycle)| OddHole {
            kind,
            cycle: canonical_cycle(g, &cycle),
        });
    Ok(PerfectnessVerdict {
        is_perfect: witness.is_none(),
        witness,
    })
}

/// Some induced cycle of odd length >= 5, as vertex indices in cycle order.
pub fn find_odd_hole(g: &Graph) -> Option<Vec<usize>> {
    let n = g.len();
    (0..n).find_map(|s| {
        let mut blocked = Bits::empty(n);
        for v in 0..=s {
            blocked.insert(v);
        }
        let mut path = vec![s];
        extend(g, &mut path, &blocked)
    })
}

/// `blocked` holds every vertex that may not follow the current last vertex:
/// vertices <= start, and the closed neighborhoods of interior path vertices.
fn extend(g: &Graph, path: &mut Vec<usize>, blocked: &Bits) -> Option<Vec<usize>> {
    let start = path[0];
    let last = *path.last().expect("path starts nonempty");
    let mut next_blocked = blocked.clone();
    if path.len() > 1 {
        // `last` becomes interior once the path grows past it.
        next_blocked.union_with(g.neighbor_bits(last));
        next_blocked.insert(last);
    }
    let candidates: Vec<usize> = g
        .neighbors(last)
        .filter(|&w| !blocked.contains(w) && !path.contains(&w))
        .collect();
    for w in candidates {
        if path.len() > 1 && g.adjacent(w, start) {
            let len = path.len() + 1;
            if len >= 5 && len % 2 == 1 {
                let mut cycle = path.clone();
                cycle.push(w);
                return Some(cycle);
            }
            continue;
        }
        path.push(w);
        let found = extend(g, path, &next_blocked);
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn canonical_cycle(g: &Graph, cycle: &[usize]) -> Vec<String> {
    let labels: Vec<&str> = cycle.iter().map(|&v| g.label(v)).collect();
    let k = labels.len();
    let first = (0..k).min_by_key(|&i| labels[i]).expect("nonempty cycle");
    let forward = labels[(first + 1) % k] <= labels[(first + k - 1) % k];
    (0..k)
        .map(|i| {
            let j = if forward { first + i } else { first + k - i };
            labels[j % k].to_string()
        })
        .collect()
}

/// Re-checks a witness: odd length >= 5, distinct known vertices, and a
/// chordless cycle in `g` (hole) or in its complement (antihole).
pub fn verify_odd_hole(g: &Graph, hole: &OddHole) -> bool {
    let k = hole.cycle.len();
    if k < 5 || k.is_multiple_of(2) {
        return false;
    }
    let Some(idx) = hole
        .cycle
        .iter()
        .map(|l| g.index_of(l))
        .collect::<Option<Vec<_>>>()
    else {
        return false;
    };
    let mut distinct = idx.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != k {
        return false;
    }
    let edge = |a: usize, b: usize| match hole.kind {
        HoleKind::Hole => g.adjacent(a, b),
        HoleKind::Antihole => !g.adjacent(a, b),
    };
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            edge(idx[i], idx[j]) == consecutive
        })
    })
}
