//! Looms: the unique pseudotours of `Π(p, q, 2kpq)` whose cycles alternate short and long edges.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    decompose_edges, edge, edge_kind, CycleDecomposition, EdgeGraph, EdgeKind, EdgeSet, Interval,
};
use crate::params::LeaperParams;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loom {
    leaper: LeaperParams,
    k: i64,
    graph: EdgeGraph<i64>,
    cycles: CycleDecomposition<i64>,
}

/// Short neighbour of `u` in any loom: `u + p` when `floor(u / p)` is even, else `u - p`.
pub fn loom_short_neighbor(leaper: LeaperParams, u: i64) -> i64 {
    let p = leaper.p();
    if (u / p) % 2 == 0 {
        u + p
    } else {
        u - p
    }
}

/// Long neighbour of `u` in any loom: `u + q` when `floor(u / q)` is even, else `u - q`.
pub fn loom_long_neighbor(leaper: LeaperParams, u: i64) -> i64 {
    let q = leaper.q();
    if (u / q) % 2 == 0 {
        u + q
    } else {
        u - q
    }
}

/// Builds the loom on `[0; 2kpq - 1]`.
pub fn build_loom(leaper: LeaperParams, k: i64) -> Result<Loom> {
    if k < 1 {
        return Err(Error::PreconditionUnmet(format!("loom order {k}")));
    }
    let n = 2 * k * leaper.p() * leaper.q();
    let interval = Interval::of_size(n)?;
    let mut edges = EdgeSet::new();
    for u in interval.iter() {
        edges.insert(edge(u, loom_short_neighbor(leaper, u)));
        edges.insert(edge(u, loom_long_neighbor(leaper, u)));
    }
    let graph = EdgeGraph::from_edges(interval.iter(), edges.iter().copied())?;
    let cycles = decompose_edges(interval.iter(), &edges)?;
    Ok(Loom {
        leaper,
        k,
        graph,
        cycles,
    })
}

impl Loom {
    pub fn leaper(&self) -> LeaperParams {
        self.leaper
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn interval(&self) -> Interval {
        Interval::of_size(2 * self.k * self.leaper.p() * self.leaper.q()).unwrap()
    }

    pub fn graph(&self) -> &EdgeGraph<i64> {
        &self.graph
    }

    pub fn cycles(&self) -> &CycleDecomposition<i64> {
        &self.cycles
    }

    pub fn edges(&self) -> EdgeSet<i64> {
        self.graph.edge_set()
    }

    pub fn short_neighbor(&self, u: i64) -> i64 {
        loom_short_neighbor(self.leaper, u)
    }

    pub fn long_neighbor(&self, u: i64) -> i64 {
        loom_long_neighbor(self.leaper, u)
    }
}

/// Number of cycles of the smallest loom and a quarter of its longest cycle length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoomStats {
    pub eta: i64,
    pub xi: i64,
}

pub fn loom_stats(leaper: LeaperParams) -> LoomStats {
    let stats = |loom: &Loom| {
        let count = loom.cycles.len() as i64;
        let longest = loom.cycles.cycles.iter().map(Vec::len).max().unwrap_or(0) as i64;
        (count, longest)
    };
    let (eta, longest) = stats(&build_loom(leaper, 1).expect("order one"));
    let (eta2, longest2) = stats(&build_loom(leaper, 2).expect("order two"));
    assert_eq!(
        (eta2, longest2),
        (2 * eta, longest),
        "the order-two loom is two copies of the order-one loom"
    );
    assert_eq!(longest % 4, 0);
    let s = LoomStats {
        eta,
        xi: longest / 4,
    };
    let half = leaper.p() * leaper.q() / 2;
    assert!(s.eta <= half && s.xi <= half, "loom statistics exceed pq/2");
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexClass {
    Straight,
    Turn,
}

/// Straight or turn in the order-two loom, by the parity of `floor(u/p) + floor(u/q)`.
pub fn classify_vertex(leaper: LeaperParams, u: i64) -> VertexClass {
    if (u / leaper.p() + u / leaper.q()) % 2 == 1 {
        VertexClass::Straight
    } else {
        VertexClass::Turn
    }
}

/// Straight or turn read off the loom's edges directly.
pub fn classify_geometric(loom: &Loom, u: i64) -> VertexClass {
    let (s, l) = (loom.short_neighbor(u), loom.long_neighbor(u));
    if (s < u) != (l < u) {
        VertexClass::Straight
    } else {
        VertexClass::Turn
    }
}

/// A cycle `u, u + 2p, ..., u + 2pq, u + 2pq - 2q, ..., u` through two corresponding straights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shaft {
    pub base: i64,
    pub parity: i64,
    pub cycle: Vec<i64>,
}

pub fn shaft(leaper: LeaperParams, base: i64) -> Result<Shaft> {
    let (p, q) = (leaper.p(), leaper.q());
    if base < 0 || base >= 2 * p * q || classify_vertex(leaper, base) != VertexClass::Straight {
        return Err(Error::PreconditionUnmet(format!(
            "{base} is not a straight in the first half"
        )));
    }
    let mut cycle: Vec<i64> = (0..=q).map(|i| base + 2 * p * i).collect();
    cycle.extend((1..p).rev().map(|i| base + 2 * q * i));
    let distinct: BTreeSet<i64> = cycle.iter().copied().collect();
    assert_eq!(distinct.len(), cycle.len(), "shafts are simple cycles");
    Ok(Shaft {
        base,
        parity: base.rem_euclid(2),
        cycle,
    })
}

/// All shafts, ordered by base vertex.
pub fn enumerate_shafts(leaper: LeaperParams) -> Vec<Shaft> {
    let n = 2 * leaper.p() * leaper.q();
    (0..n)
        .filter(|&u| classify_vertex(leaper, u) == VertexClass::Straight)
        .map(|u| shaft(leaper, u).expect("straight base"))
        .collect()
}

/// A path `u1 u2 u3 u4` whose outer edges share a kind, whose middle edge has the other kind
/// and whose outer moves point in opposite directions.
pub type Bracket = [i64; 4];

pub fn is_bracket(leaper: LeaperParams, b: &Bracket, kind: EdgeKind) -> bool {
    let pair = leaper.pair();
    edge_kind(pair, b[0], b[1]) == Some(kind)
        && edge_kind(pair, b[2], b[3]) == Some(kind)
        && edge_kind(pair, b[1], b[2]) == Some(kind.other())
        && ((b[1] - b[0]) > 0) != ((b[3] - b[2]) > 0)
}

fn check_alternating(leaper: LeaperParams, cycle: &[i64]) -> Result<()> {
    let n = cycle.len();
    if n < 4 || n % 2 == 1 {
        return Err(Error::PreconditionUnmet(
            "cycle does not alternate short and long edges".into(),
        ));
    }
    let kinds: Vec<Option<EdgeKind>> = (0..n)
        .map(|i| edge_kind(leaper.pair(), cycle[i], cycle[(i + 1) % n]))
        .collect();
    for i in 0..n {
        if kinds[i].is_none() || kinds[i] == kinds[(i + 1) % n] {
            return Err(Error::PreconditionUnmet(
                "cycle does not alternate short and long edges".into(),
            ));
        }
    }
    Ok(())
}

/// A bracket of the given kind in an alternating cycle.
///
/// Long brackets are anchored at the leftmost vertex; short brackets are found by scanning
/// the cycle in order.
pub fn find_bracket(leaper: LeaperParams, cycle: &[i64], kind: EdgeKind) -> Result<Bracket> {
    check_alternating(leaper, cycle)?;
    let n = cycle.len();
    if kind == EdgeKind::Long {
        let u2 = *cycle.iter().min().unwrap();
        let b = [
            u2 + leaper.q(),
            u2,
            u2 + leaper.p(),
            u2 + leaper.p() + leaper.q(),
        ];
        let members: BTreeSet<i64> = cycle.iter().copied().collect();
        if b.iter().all(|u| members.contains(u)) && is_bracket(leaper, &b, kind) {
            return Ok(b);
        }
    }
    for i in 0..n {
        let b = [
            cycle[i],
            cycle[(i + 1) % n],
            cycle[(i + 2) % n],
            cycle[(i + 3) % n],
        ];
        if is_bracket(leaper, &b, kind) {
            return Ok(b);
        }
    }
    Err(Error::BracketNotFound(format!(
        "{kind:?} bracket in a cycle of length {n}"
    )))
}

/// The order-`k` loom together with every alternating 4-cycle having two opposite edges in it.
pub fn build_lstar(leaper: LeaperParams, k: i64) -> Result<(EdgeGraph<i64>, usize)> {
    let loom = build_loom(leaper, k)?;
    let iv = loom.interval();
    let mut g = loom.graph.clone();
    let (p, q) = (leaper.p(), leaper.q());
    for u in iv.iter() {
        for ep in [-p, p] {
            for dq in [-q, q] {
                let quad = [u, u + ep, u + ep + dq, u + dq];
                if !quad.iter().all(|&v| iv.contains(v)) {
                    continue;
                }
                let has = |a: i64, b: i64| loom.graph.has_edge(a, b);
                let shorts = has(quad[0], quad[1]) && has(quad[2], quad[3]);
                let longs = has(quad[1], quad[2]) && has(quad[3], quad[0]);
                if shorts || longs {
                    for i in 0..4 {
                        g.add_edge(quad[i], quad[(i + 1) % 4])?;
                    }
                }
            }
        }
    }
    let components = g.component_count();
    Ok((g, components))
}

/// Given the vertices of a closed walk, returns the smallest `d` in `(0, m + n)` that is not a
/// difference of two visited vertices.
pub fn missing_difference(visited: &[i64], m: i64, n: i64) -> Option<i64> {
    let set: BTreeSet<i64> = visited.iter().copied().collect();
    (1..m + n).find(|&d| !set.iter().any(|&u| set.contains(&(u + d))))
}

/// Whether the difference `d` occurs among the visited vertices.
pub fn realises_difference(visited: &[i64], d: i64) -> bool {
    let set: BTreeSet<i64> = visited.iter().copied().collect();
    set.iter().any(|&u| set.contains(&(u + d)))
}

/// Vertices visited by the walk starting at 0 that applies `moves` in order.
pub fn walk_vertices(moves: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(moves.len() + 1);
    let mut cur = 0;
    out.push(cur);
    for &m in moves {
        cur += m;
        out.push(cur);
    }
    out
}

/// An even turn lying on an even shaft, showing that even shafts cover more than half of
/// the even vertices of the order-two loom.
pub fn shaft_turn_witness(leaper: LeaperParams) -> (i64, Shaft) {
    let (p, q) = (leaper.p(), leaper.q());
    let (turn, base) = if p % 2 == 0 {
        (2 * p * q - p, p)
    } else {
        (2 * p * q + p - 1, 2 * p * q - p - 1)
    };
    (
        turn,
        shaft(leaper, base).expect("witness base is a straight"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::pencil;

    fn lp(p: i64, q: i64) -> LeaperParams {
        LeaperParams::new(p, q).unwrap()
    }

    #[test]
    fn small_looms() {
        let l = build_loom(LeaperParams::knight(), 1).unwrap();
        assert_eq!(l.cycles().cycles, vec![vec![0, 1, 3, 2]]);
        assert_eq!(build_loom(lp(3, 4), 1).unwrap().cycles().len(), 2);
        let z = build_loom(lp(2, 3), 1).unwrap();
        assert_eq!(z.cycles().len(), 1);
        assert_eq!(z.cycles().cycles[0].len(), 12);
        assert_eq!(loom_stats(lp(2, 3)), LoomStats { eta: 1, xi: 3 });
        assert_eq!(
            loom_stats(LeaperParams::knight()),
            LoomStats { eta: 1, xi: 1 }
        );
        assert_eq!(loom_stats(lp(3, 4)).eta, 2);
    }

    #[test]
    fn loom_is_union_of_pencils() {
        for l in LeaperParams::all_up_to_sum(11) {
            for k in 1..=2 {
                let loom = build_loom(l, k).unwrap();
                let (p, q) = (l.p(), l.q());
                let mut expected = EdgeSet::new();
                for i in 0..k * q {
                    let a = Interval::with_len(2 * i * p, p).unwrap();
                    expected.extend(pencil(l.pair(), a, a.shift(p)).unwrap());
                }
                for i in 0..k * p {
                    let a = Interval::with_len(2 * i * q, q).unwrap();
                    expected.extend(pencil(l.pair(), a, a.shift(q)).unwrap());
                }
                assert_eq!(loom.edges(), expected);
                for c in &loom.cycles().cycles {
                    assert_eq!(c.len() % 4, 0);
                }
            }
        }
    }

    #[test]
    fn straights_and_turns() {
        let knight = LeaperParams::knight();
        assert_eq!(classify_vertex(knight, 1), VertexClass::Straight);
        assert_eq!(classify_vertex(knight, 0), VertexClass::Turn);
        for l in LeaperParams::all_up_to_sum(13) {
            let loom = build_loom(l, 2).unwrap();
            let pq = l.p() * l.q();
            for u in 0..4 * pq {
                assert_eq!(classify_vertex(l, u), classify_geometric(&loom, u));
                if u < 3 * pq {
                    assert_ne!(classify_vertex(l, u), classify_vertex(l, u + pq));
                }
            }
        }
    }

    #[test]
    fn shafts() {
        let knight = LeaperParams::knight();
        let s = enumerate_shafts(knight);
        let cycles: Vec<_> = s.iter().map(|s| s.cycle.clone()).collect();
        assert_eq!(cycles, vec![vec![1, 3, 5], vec![2, 4, 6]]);
        let z = enumerate_shafts(lp(2, 3));
        let s7 = z.iter().find(|s| s.base == 7).unwrap();
        assert_eq!(s7.cycle, vec![7, 11, 15, 19, 13]);
        for l in LeaperParams::all_up_to_sum(13) {
            let all = enumerate_shafts(l);
            for parity in 0..2 {
                let count = all.iter().filter(|s| s.parity == parity).count() as i64;
                assert_eq!(count, l.p() * l.q() / 2);
            }
            let (turn, s) = shaft_turn_witness(l);
            assert_eq!(turn % 2, s.parity);
            assert!(s.cycle.contains(&turn));
            assert_eq!(classify_vertex(l, turn), VertexClass::Turn);
        }
    }

    #[test]
    fn brackets() {
        let knight = LeaperParams::knight();
        let c = [0, 1, 3, 2];
        let b = find_bracket(knight, &c, EdgeKind::Long).unwrap();
        assert!(is_bracket(knight, &b, EdgeKind::Long));
        assert!(find_bracket(knight, &[0, 1, 2, 3], EdgeKind::Short).is_err());
        let z = build_loom(lp(2, 3), 1).unwrap();
        let b = find_bracket(lp(2, 3), &z.cycles().cycles[0], EdgeKind::Long).unwrap();
        assert_eq!(b[1], 0);
    }

    #[test]
    fn lstar_small() {
        let (_, comps) = build_lstar(lp(3, 4), 1).unwrap();
        assert!(comps > 1);
        assert!(LeaperParams::new(3, 5).is_err());
        build_lstar(LeaperParams::knight(), 1).unwrap();
    }

    #[test]
    fn walk_negative_control() {
        let (m, n) = (2, 3);
        let moves: Vec<i64> = (0..m + n)
            .map(|i| {
                if (m * i) % (m + n) < (m * (i + 1)) % (m + n) {
                    m
                } else {
                    -n
                }
            })
            .collect();
        let visited = walk_vertices(&moves);
        assert_eq!(*visited.last().unwrap(), 0);
        assert_eq!(missing_difference(&visited, m, n), None);
        assert!(!realises_difference(&visited, m + n));
    }
}
