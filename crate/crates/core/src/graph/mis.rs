//! Exact maximum independent set by branch and bound.
//!
//! The graph is split into connected components, which are solved
//! independently (in parallel under the `parallel` feature). Within a
//! component the search branches on a maximum-degree vertex of the remaining
//! candidate set, ties broken by label order, and prunes with a greedy clique
//! cover of the candidates. Vertices of candidate degree 0 or 1 are taken
//! without branching; some maximum independent set always contains them.

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::limits::{self, Limits};
use crate::par;

use super::{Graph, IndependentSetWitness};

/// Largest graph accepted by [`independence_number_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 24;

/// Maximum independent set, capped by [`Limits::from_env`].
pub fn independence_number_exact(g: &Graph) -> Result<IndependentSetWitness> {
    independence_number_with_limit(g, Limits::from_env().alpha)
}

pub fn independence_number_with_limit(g: &Graph, limit: usize) -> Result<IndependentSetWitness> {
    limits::check(g.len(), limit)?;
    let comps = g.component_indices();
    let parts = par::map(&comps, |comp| {
        let sub = g.induced_subgraph(comp);
        solve_connected(&sub)
            .into_iter()
            .map(|i| comp[i])
            .collect::<Vec<_>>()
    });
    let members: Vec<usize> = parts.into_iter().flatten().collect();
    Ok(IndependentSetWitness::from_indices(g, &members))
}

/// Maximum clique, computed as a maximum independent set of the complement.
pub fn maximum_clique(g: &Graph) -> Result<IndependentSetWitness> {
    limits::check(g.len(), Limits::from_env().alpha)?;
    independence_number_with_limit(&g.complement(), usize::MAX)
}

pub fn clique_number(g: &Graph) -> Result<usize> {
    Ok(maximum_clique(g)?.size)
}

/// Independence number by enumerating every vertex subset. Test oracle.
pub fn independence_number_bruteforce(g: &Graph) -> Result<usize> {
    let n = g.len();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::SizeLimit {
            vertices: n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|u| g.neighbors(u).fold(0u32, |m, v| m | 1 << v))
        .collect();
    let mut independent = vec![false; 1 << n];
    independent[0] = true;
    let mut best = 0;
    for mask in 1u32..(1u32 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let ok = independent[rest as usize] && adj[low] & rest == 0;
        independent[mask as usize] = ok;
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    Ok(best)
}

fn label_ranks(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
    let mut rank = vec![0; g.len()];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    rank
}

fn solve_connected(g: &Graph) -> Vec<usize> {
    let n = g.len();
    let mut s = Search {
        g,
        rank: label_ranks(g),
        best: Vec::new(),
        current: Vec::with_capacity(n),
    };
    s.best = s.greedy(Bits::full(n));
    s.branch(Bits::full(n));
    s.best
}

struct Search<'a> {
    g: &'a Graph,
    rank: Vec<usize>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search<'_> {
    fn degree_in(&self, v: usize, p: &Bits) -> usize {
        self.g.neighbor_bits(v).intersection_len(p)
    }

    fn greedy(&self, mut p: Bits) -> Vec<usize> {
        let mut out = Vec::new();
        while !p.is_empty() {
            let v = p
                .iter()
                .min_by_key(|&v| (self.degree_in(v, &p), self.rank[v]))
                .expect("nonempty");
            out.push(v);
            p.remove(v);
            p.difference_with(self.g.neighbor_bits(v));
        }
        out
    }

    /// Number of cliques in a greedy clique cover of `p`; an upper bound on
    /// the independence number of `G[p]`.
    fn clique_cover_bound(&self, p: &Bits) -> usize {
        let mut joinable: Vec<Bits> = Vec::new();
        for v in p.iter() {
            match joinable.iter_mut().find(|c| c.contains(v)) {
                Some(c) => c.intersect_with(self.g.neighbor_bits(v)),
                None => {
                    let mut c = self.g.neighbor_bits(v).clone();
                    c.intersect_with(p);
                    joinable.push(c);
                }
            }
        }
        joinable.len()
    }

    fn branch(&mut self, mut p: Bits) {
        let mark = self.current.len();
        self.reduce(&mut p);
        if p.is_empty() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
        } else if self.current.len() + self.clique_cover_bound(&p) > self.best.len() {
            let v = p
                .iter()
                .max_by(|&a, &b| {
                    self.degree_in(a, &p)
                        .cmp(&self.degree_in(b, &p))
                        .then(self.rank[b].cmp(&self.rank[a]))
                })
                .expect("nonempty");

            let mut with = p.clone();
            with.remove(v);
            with.difference_with(self.g.neighbor_bits(v));
            self.current.push(v);
            self.branch(with);
            self.current.pop();

            p.remove(v);
            self.branch(p);
        }
        self.current.truncate(mark);
    }

    /// Takes every candidate of degree 0 or 1 until none remain.
    fn reduce(&mut self, p: &mut Bits) {
        loop {
            let pick = p.iter().find(|&v| self.degree_in(v, p) <= 1);
            let Some(v) = pick else { break };
            self.current.push(v);
            p.remove(v);
            p.difference_with(self.g.neighbor_bits(v));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_families() {
        for n in 1..=6 {
            let e = Graph::edgeless(n).unwrap();
            assert_eq!(independence_number_exact(&e).unwrap().size, n);
            assert_eq!(independence_number_bruteforce(&e).unwrap(), n);
            let k = Graph::complete(n).unwrap();
            assert_eq!(independence_number_exact(&k).unwrap().size, 1);
            assert_eq!(clique_number(&k).unwrap(), n);
        }
    }

    #[test]
    fn cycles_and_paths() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(independence_number_bruteforce(&c5).unwrap(), 2);
        assert_eq!(independence_number_exact(&c5).unwrap().size, 2);
        assert_eq!(clique_number(&c5).unwrap(), 2);
        // P_4: of the 16 subsets, the independent ones have size <= 2.
        let p4 = Graph::path(4).unwrap();
        assert_eq!(independence_number_bruteforce(&p4).unwrap(), 2);
        assert_eq!(independence_number_exact(&p4).unwrap().size, 2);
        for n in 3..=12 {
            assert_eq!(independence_number_exact(&Graph::cycle(n).unwrap()).unwrap().size, n / 2);
        }
    }

    #[test]
    fn c5_times_edgeless_3_has_alpha_6() {
        let g = Graph::cycle(5).unwrap().strong_product(&Graph::edgeless(3).unwrap());
        assert_eq!(independence_number_bruteforce(&g).unwrap(), 6);
        let w = independence_number_exact(&g).unwrap();
        assert_eq!(w.size, 6);
        assert!(w.verify(&g));
    }

    #[test]
    fn c5_squared_has_alpha_5() {
        let c5 = Graph::cycle(5).unwrap();
        let g = c5.strong_product(&c5);
        assert_eq!(independence_number_exact(&g).unwrap().size, 5);
    }

    #[test]
    fn witness_is_sorted_and_stable() {
        let g = Graph::cycle(9).unwrap();
        let a = independence_number_exact(&g).unwrap();
        let b = independence_number_exact(&g).unwrap();
        assert_eq!(a, b);
        let mut sorted = a.members.clone();
        sorted.sort();
        assert_eq!(a.members, sorted);
    }

    #[test]
    fn limits_are_enforced() {
        let g = Graph::edgeless(30).unwrap();
        assert!(matches!(
            independence_number_bruteforce(&g),
            Err(Error::SizeLimit { vertices: 30, limit: 24 })
        ));
        assert!(matches!(
            independence_number_with_limit(&g, 10),
            Err(Error::SizeLimit { .. })
        ));
    }
}
