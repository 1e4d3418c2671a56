//! Undirected simple graphs over labeled vertices.

mod mis;
mod perfect;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{Error, Result};

pub use mis::{
    clique_number, independence_number_bruteforce, independence_number_exact,
    independence_number_with_limit, maximum_clique, BRUTEFORCE_LIMIT,
};
pub use perfect::{find_odd_hole, is_perfect, is_perfect_with_limit, verify_odd_hole, HoleKind, OddHole};

/// Separator between the left and right parts of a product vertex label.
pub const PRODUCT_SEPARATOR: char = '|';

/// Escapes `|` and `\` so that composite labels stay unambiguous.
pub fn escape_label(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    for c in label.chars() {
        if c == '\\' || c == PRODUCT_SEPARATOR {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

/// Label of the pair `(left, right)` in a product.
pub fn product_label(left: &str, right: &str) -> String {
    format!(
        "{}{}{}",
        escape_label(left),
        PRODUCT_SEPARATOR,
        escape_label(right)
    )
}

/// Inverse of [`product_label`]; `None` if `label` has no unescaped separator.
pub fn split_product_label(label: &str) -> Option<(String, String)> {
    let mut left = String::new();
    let mut chars = label.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => left.push(chars.next()?),
            PRODUCT_SEPARATOR => {
                let mut right = String::new();
                let mut rest = chars;
                while let Some(c) = rest.next() {
                    match c {
                        '\\' => right.push(rest.next()?),
                        PRODUCT_SEPARATOR => return None,
                        c => right.push(c),
                    }
                }
                return Some((left, right));
            }
            c => left.push(c),
        }
    }
    None
}

#[derive(Clone)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Bits>,
}

impl Graph {
    /// Edgeless graph on the given labels.
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex label {l:?}")));
            }
        }
        let n = labels.len();
        Ok(Graph {
            labels,
            index,
            adj: vec![Bits::empty(n); n],
        })
    }

    /// Builds a graph from labels and label-pair edges. Duplicate edges,
    /// self-loops and unknown endpoints are rejected.
    pub fn from_edges<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        edges: &[(impl AsRef<str>, impl AsRef<str>)],
    ) -> Result<Self> {
        let mut g = Graph::new(labels)?;
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let u = g.require(a)?;
            let v = g.require(b)?;
            if u != v && g.adjacent(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge {a:?} -- {b:?}")));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Adds the edge `u -- v` (idempotent). Self-loops are rejected.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.len();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!("vertex index out of range ({u}, {v})")));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop on {:?}", self.labels[u])));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
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

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter()
    }

    pub(crate) fn neighbor_bits(&self, u: usize) -> &Bits {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bits::len).sum::<usize>() / 2
    }

    /// Edges as index pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    /// Whether `members` (indices) are pairwise non-adjacent.
    pub fn is_independent(&self, members: &[usize]) -> bool {
        members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| !self.adjacent(u, v)))
    }

    /// Whether `members` (indices) are pairwise adjacent.
    pub fn is_clique(&self, members: &[usize]) -> bool {
        members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| u != v && self.adjacent(u, v)))
    }

    /// Induced subgraph on `vertices`, in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.iter().map(|&v| self.labels[v].clone()))
            .expect("labels of a valid graph are unique");
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    g.adj[i].insert(j);
                    g.adj[j].insert(i);
                }
            }
        }
        g
    }

    /// Same vertices, adjacency negated off the diagonal.
    pub fn complement(&self) -> Graph {
        let n = self.len();
        let mut g = self.clone();
        for u in 0..n {
            let mut row = Bits::full(n);
            row.difference_with(&self.adj[u]);
            row.remove(u);
            g.adj[u] = row;
        }
        g
    }

    /// Strong product: `(u,i) ~ (v,j)` iff `u = v` and `i ~ j`, or `u ~ v`
    /// and `i = j`, or `u ~ v` and `i ~ j`. Vertex `(u,i)` is labeled `"u|i"`
    /// and sits at index `u * |V(h)| + i`.
    pub fn strong_product(&self, h: &Graph) -> Graph {
        let (n, k) = (self.len(), h.len());
        let labels: Vec<String> = (0..n)
            .flat_map(|u| (0..k).map(move |i| (u, i)))
            .map(|(u, i)| product_label(&self.labels[u], &h.labels[i]))
            .collect();
        let mut g = Graph::new(labels).expect("escaped product labels are unique");
        for a in 0..n * k {
            let (u, i) = (a / k, a % k);
            for b in a + 1..n * k {
                let (v, j) = (b / k, b % k);
                let left = u == v || self.adjacent(u, v);
                let right = i == j || h.adjacent(i, j);
                if left && right {
                    g.adj[a].insert(b);
                    g.adj[b].insert(a);
                }
            }
        }
        g
    }

    /// Connected components as vertex-index lists, each sorted, ordered by
    /// smallest member.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Maximal connected induced subgraphs.
    pub fn connected_components(&self) -> Vec<Graph> {
        self.component_indices()
            .iter()
            .map(|c| self.induced_subgraph(c))
            .collect()
    }

    /// Edgeless graph `K̄_d` on labels `"0".."d-1"`.
    pub fn edgeless(d: usize) -> Result<Graph> {
        if d == 0 {
            return Err(Error::InvalidArgument("edgeless graph needs d >= 1".into()));
        }
        Graph::new((0..d).map(|i| i.to_string()))
    }

    /// Complete graph `K_d` on labels `"0".."d-1"`.
    pub fn complete(d: usize) -> Result<Graph> {
        if d == 0 {
            return Err(Error::InvalidArgument("complete graph needs d >= 1".into()));
        }
        Ok(Graph::edgeless(d)?.complement())
    }

    /// Cycle `C_n` on labels `"0".."n-1"`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidArgument("cycle needs n >= 3".into()));
        }
        let mut g = Graph::edgeless(n)?;
        for i in 0..n {
            g.add_edge(i, (i + 1) % n)?;
        }
        Ok(g)
    }

    /// Path `P_n` on labels `"0".."n-1"`.
    pub fn path(n: usize) -> Result<Graph> {
        let mut g = Graph::edgeless(n)?;
        for i in 1..n {
            g.add_edge(i - 1, i)?;
        }
        Ok(g)
    }

    /// Serializable form with label-pair edges.
    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.labels.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(u, v)| [self.labels[u].clone(), self.labels[v].clone()])
                .collect(),
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &self.to_file().edges)
            .finish()
    }
}

/// JSON form: `{"vertices": [...], "edges": [["a","b"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl TryFrom<GraphFile> for Graph {
    type Error = Error;

    fn try_from(f: GraphFile) -> Result<Graph> {
        let edges: Vec<(&str, &str)> = f
            .edges
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        Graph::from_edges(f.vertices.iter().cloned(), &edges)
    }
}

/// A maximum independent set (or clique) with its size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentSetWitness {
    pub size: usize,
    /// Sorted vertex labels.
    pub members: Vec<String>,
}

impl IndependentSetWitness {
    pub(crate) fn from_indices(g: &Graph, indices: &[usize]) -> Self {
        let mut members: Vec<String> = indices.iter().map(|&i| g.labels[i].clone()).collect();
        members.sort();
        IndependentSetWitness {
            size: members.len(),
            members,
        }
    }

    /// Re-checks the witness against `g`: known labels, no duplicates, no
    /// two members adjacent.
    pub fn verify(&self, g: &Graph) -> bool {
        let Some(idx) = self
            .members
            .iter()
            .map(|m| g.index_of(m))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == self.size && g.is_independent(&idx)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectnessVerdict {
    pub is_perfect: bool,
    pub witness: Option<OddHole>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strong_product_of_edgeless_is_edgeless() {
        let p = Graph::edgeless(2).unwrap().strong_product(&Graph::edgeless(3).unwrap());
        assert_eq!(p.len(), 6);
        assert_eq!(p.edge_count(), 0);
        assert_eq!(p.label(4), "1|1");
    }

    #[test]
    fn strong_product_of_complete_is_complete() {
        let k2 = Graph::complete(2).unwrap();
        let p = k2.strong_product(&k2);
        assert_eq!(p.edge_count(), 6);
        assert!(p.is_clique(&[0, 1, 2, 3]));
    }

    #[test]
    fn strong_product_adjacency_clauses() {
        // P_3 ⊠ P_2: check each clause on explicit pairs.
        let p3 = Graph::path(3).unwrap();
        let p2 = Graph::path(2).unwrap();
        let g = p3.strong_product(&p2);
        let at = |u: usize, i: usize| u * 2 + i;
        assert!(g.adjacent(at(0, 0), at(0, 1))); // u = v, i ~ j
        assert!(g.adjacent(at(0, 0), at(1, 0))); // u ~ v, i = j
        assert!(g.adjacent(at(0, 0), at(1, 1))); // u ~ v, i ~ j
        assert!(!g.adjacent(at(0, 0), at(2, 0))); // u !~ v
        assert!(!g.adjacent(at(0, 0), at(2, 1)));
        assert_eq!(g.len(), 6);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(5).unwrap().complement(), Graph::edgeless(5).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.complement().complement(), c5);
        // C_5's complement is the pentagram 0-2-4-1-3-0, again a 5-cycle.
        let comp = c5.complement();
        let order = [0, 2, 4, 1, 3];
        for k in 0..5 {
            assert!(comp.adjacent(order[k], order[(k + 1) % 5]));
        }
        assert_eq!(comp.edge_count(), 5);
        assert!(comp.neighbors(0).all(|v| comp.degree(v) == 2));
    }

    #[test]
    fn components() {
        assert_eq!(Graph::edgeless(3).unwrap().connected_components().len(), 3);
        assert_eq!(Graph::cycle(7).unwrap().connected_components().len(), 1);
        let c5 = Graph::cycle(5).unwrap();
        let p = c5.strong_product(&Graph::edgeless(3).unwrap());
        let comps = p.connected_components();
        assert_eq!(comps.len(), 3);
        for (d, comp) in comps.iter().enumerate() {
            let stripped: Vec<String> = comp
                .labels()
                .iter()
                .map(|l| {
                    let (left, right) = split_product_label(l).unwrap();
                    assert_eq!(right, d.to_string());
                    left
                })
                .collect();
            let relabeled = Graph::from_edges(
                stripped.clone(),
                &comp
                    .edges()
                    .iter()
                    .map(|&(u, v)| (stripped[u].clone(), stripped[v].clone()))
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            assert_eq!(relabeled, c5);
        }
    }

    #[test]
    fn constructors_reject_zero() {
        assert!(Graph::edgeless(0).is_err());
        assert!(Graph::complete(0).is_err());
        assert_eq!(Graph::edgeless(4).unwrap().edge_count(), 0);
        assert_eq!(Graph::complete(4).unwrap().edge_count(), 6);
    }

    #[test]
    fn invalid_graphs_rejected() {
        assert!(Graph::new(["a", "a"]).is_err());
        assert!(Graph::from_edges(["a", "b"], &[("a", "a")]).is_err());
        assert!(Graph::from_edges(["a", "b"], &[("a", "b"), ("b", "a")]).is_err());
        assert!(Graph::from_edges(["a", "b"], &[("a", "c")]).is_err());
    }

    #[test]
    fn label_escaping_round_trips() {
        let l = product_label("a|b", "c\\d");
        assert_eq!(l, "a\\|b|c\\\\d");
        assert_eq!(split_product_label(&l), Some(("a|b".into(), "c\\d".into())));
        let g = Graph::new(["x|y", "x"]).unwrap();
        let h = Graph::new(["y", "y|z"]).unwrap();
        assert_eq!(g.strong_product(&h).len(), 4);
    }
}

/// All maximal cliques (Bron–Kerbosch with pivoting), each as ascending
/// vertex indices, listed in lexicographic order. Isolated vertices are
/// maximal cliques of size one.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    fn expand(g: &Graph, r: &mut Vec<usize>, mut p: Bits, mut x: Bits, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| (g.neighbor_bits(u).intersection_len(&p), std::cmp::Reverse(u)))
            .expect("p is nonempty");
        let mut todo = p.clone();
        todo.difference_with(g.neighbor_bits(pivot));
        for v in todo.iter() {
            let mut np = p.clone();
            np.intersect_with(g.neighbor_bits(v));
            let mut nx = x.clone();
            nx.intersect_with(g.neighbor_bits(v));
            r.push(v);
            expand(g, r, np, nx, out);
            r.pop();
            p.remove(v);
            x.insert(v);
        }
    }
    let n = g.len();
    let mut out = Vec::new();
    expand(g, &mut Vec::new(), Bits::full(n), Bits::empty(n), &mut out);
    out.sort();
    out
}
