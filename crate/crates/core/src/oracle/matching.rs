//! Perfect matchings and the exhaustive loom check.

use crate::graph::{edge, EdgeGraph, EdgeKind, EdgeSet, Interval, Vertex};
use crate::params::LeaperParams;

use super::search::{Enumeration, SearchBudget};

/// All perfect matchings of `g`, matching the smallest free vertex first.
pub fn enumerate_perfect_matchings<V: Vertex>(g: &EdgeGraph<V>, limit: usize, budget: SearchBudget) -> Enumeration<EdgeSet<V>> {
    struct Walk<'a, V: Vertex> {
        g: &'a EdgeGraph<V>,
        verts: Vec<V>,
        limit: usize,
        budget: u64,
        nodes: u64,
        found: Vec<EdgeSet<V>>,
    }
    impl<V: Vertex> Walk<'_, V> {
        /// Returns false when the walk must stop.
        fn go(&mut self, used: &mut Vec<bool>, chosen: &mut EdgeSet<V>) -> bool {
            self.nodes += 1;
            if self.nodes > self.budget {
                return false;
            }
            let Some(i) = used.iter().position(|u| !u) else {
                self.found.push(chosen.clone());
                return self.found.len() < self.limit;
            };
            let u = self.verts[i];
            used[i] = true;
            for &w in self.g.neighbors(u) {
                let j = self.verts.binary_search(&w).unwrap();
                if used[j] {
                    continue;
                }
                used[j] = true;
                chosen.insert(edge(u, w));
                let more = self.go(used, chosen);
                chosen.remove(&edge(u, w));
                used[j] = false;
                if !more {
                    used[i] = false;
                    return false;
                }
            }
            used[i] = false;
            true
        }
    }
    let verts: Vec<V> = g.vertices().collect();
    let mut w = Walk { g, verts, limit, budget: budget.max_nodes, nodes: 0, found: Vec::new() };
    let mut used = vec![false; w.verts.len()];
    let finished = w.go(&mut used, &mut EdgeSet::new());
    let truncated = !finished && w.found.len() >= limit;
    Enumeration { complete: finished, truncated, nodes: w.nodes, items: w.found }
}

/// The edges of one kind of the projection graph on `[0; n - 1]`.
pub fn kind_graph(leaper: LeaperParams, n: i64, kind: EdgeKind) -> EdgeGraph<i64> {
    let iv = Interval::of_size(n).expect("positive size");
    let step = if kind == EdgeKind::Short { leaper.p() } else { leaper.q() };
    let mut g = EdgeGraph::new(iv.iter());
    for u in iv.iter().filter(|u| iv.contains(u + step)) {
        g.add_edge(u, u + step).expect("inside the interval");
    }
    g
}

/// Every alternating pseudotour of `Π(p, q, n)`: unions of a short and a long perfect matching.
pub fn enumerate_looms(leaper: LeaperParams, n: i64, limit: usize) -> Vec<EdgeSet<i64>> {
    let budget = SearchBudget::default();
    let shorts = enumerate_perfect_matchings(&kind_graph(leaper, n, EdgeKind::Short), limit, budget);
    let longs = enumerate_perfect_matchings(&kind_graph(leaper, n, EdgeKind::Long), limit, budget);
    let mut out = Vec::new();
    for s in &shorts.items {
        for l in &longs.items {
            out.push(s.union(l).copied().collect());
            if out.len() >= limit {
                return out;
            }
        }
    }
    out
}
