use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, EdgeSet, Interval};
use crate::params::{CoprimePair, Regime};

use super::{add_pencil, ProjectionTour};

/// The ladder of order `k` for a wide pair: short pencils between consecutive blocks of
/// size `a` in the first `2ka` vertices and long pencils between consecutive blocks of size
/// `b`, all over `[0; 2kb - 1]`.
///
/// Its vertices of degree one are the last `2kd`; it is a disjoint union of `kd` paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ladder {
    pair: CoprimePair,
    k: i64,
    edges: EdgeSet<i64>,
}

pub(crate) fn ladder_edges(pair: CoprimePair, k: i64) -> EdgeSet<i64> {
    let (a, b) = (pair.a(), pair.b());
    let mut edges = EdgeSet::new();
    for i in 0..k {
        add_pencil(&mut edges, 2 * i * a, (2 * i + 1) * a, a);
        add_pencil(&mut edges, 2 * i * b, (2 * i + 1) * b, b);
    }
    edges
}

impl Ladder {
    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn edges(&self) -> &EdgeSet<i64> {
        &self.edges
    }

    pub fn interval(&self) -> Interval {
        Interval::of_size(2 * self.k * self.pair.b()).unwrap()
    }

    /// The `j`-th block (1-based) of `d` degree-one vertices.
    pub fn end_block(&self, j: i64) -> Interval {
        let d = self.pair.d();
        let iv = self.interval();
        Interval::with_len(iv.hi + 1 - 2 * self.k * d + (j - 1) * d, d).unwrap()
    }

    /// Pairs of path endpoints, each listed once with the smaller endpoint first.
    /// Fails if the edges contain a cycle.
    pub fn path_endpoints(&self) -> Result<Vec<(i64, i64)>> {
        let mut adj: BTreeMap<i64, Vec<i64>> =
            self.interval().iter().map(|u| (u, Vec::new())).collect();
        for &(u, v) in &self.edges {
            adj.get_mut(&u).unwrap().push(v);
            adj.get_mut(&v).unwrap().push(u);
        }
        let mut seen = BTreeMap::new();
        let mut out = Vec::new();
        for (&start, n) in &adj {
            if n.len() != 1 || seen.contains_key(&start) {
                continue;
            }
            let mut prev = start;
            let mut cur = n[0];
            seen.insert(start, ());
            while adj[&cur].len() == 2 {
                seen.insert(cur, ());
                let next = if adj[&cur][0] == prev {
                    adj[&cur][1]
                } else {
                    adj[&cur][0]
                };
                prev = cur;
                cur = next;
            }
            seen.insert(cur, ());
            out.push((start.min(cur), start.max(cur)));
        }
        if seen.len() as i64 != self.interval().len() {
            return Err(Error::MalformedExtension("ladder contains a cycle".into()));
        }
        Ok(out)
    }

    /// Checks that position `i` of end block `j` is joined to position `(i + r) mod d` of
    /// end block `2k + 1 - j`.
    pub fn check_endpoint_map(&self) -> Result<()> {
        let (d, r) = (self.pair.d(), self.pair.r());
        let ends: BTreeMap<i64, i64> = self
            .path_endpoints()?
            .into_iter()
            .flat_map(|(u, v)| [(u, v), (v, u)])
            .collect();
        for j in 1..=self.k {
            for i in 0..d {
                let from = self.end_block(j).lo + i;
                let to = self.end_block(2 * self.k + 1 - j).lo + (i + r) % d;
                if ends.get(&from) != Some(&to) {
                    return Err(Error::MalformedExtension(format!(
                        "path from {from} does not end at {to}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Builds the ladder of order `k`, verifying its endpoint map.
pub fn build_ladder(pair: CoprimePair, k: i64) -> Result<Ladder> {
    if pair.regime() != Regime::Wide {
        return Err(Error::WrongRegime("2a > b".into()));
    }
    if k < 1 || 2 * k > pair.alpha() {
        return Err(Error::PreconditionUnmet(format!(
            "ladder order {k} needs 1 <= 2k <= {}",
            pair.alpha()
        )));
    }
    let ladder = Ladder {
        pair,
        k,
        edges: ladder_edges(pair, k),
    };
    ladder.check_endpoint_map()?;
    Ok(ladder)
}

/// Size of the base tour for a wide pair: `alpha(a + b) + d` for even `alpha`, `+ 2d` for odd.
pub fn wide_base_size(pair: CoprimePair) -> i64 {
    let alpha = pair.alpha();
    alpha * (pair.a() + pair.b())
        + if alpha % 2 == 0 {
            pair.d()
        } else {
            2 * pair.d()
        }
}

/// Lays out consecutive runs from a start position.
struct Cursor(i64);

impl Cursor {
    fn take(&mut self, len: i64) -> (i64, i64) {
        let run = (self.0, len);
        self.0 += len;
        run
    }
}

/// Adds the pencils of a chain of equally sized runs given by their start positions.
fn pencil_chain(edges: &mut EdgeSet<i64>, starts: &[i64], len: i64) {
    for w in starts.windows(2) {
        add_pencil(edges, w[0], w[1], len);
    }
}

/// The base tour of a wide pair: a translated ladder on the left, a reflected ladder on the
/// right and pencils through the middle.
pub fn tour_base_wide(pair: CoprimePair) -> Result<ProjectionTour> {
    if pair.regime() != Regime::Wide {
        return Err(Error::WrongRegime("2a > b".into()));
    }
    let (a, d, r, alpha) = (pair.a(), pair.d(), pair.r(), pair.alpha());
    let n = wide_base_size(pair);
    let k = alpha / 2;
    let local = ladder_edges(pair, k);
    let mut edges: EdgeSet<i64> = local.clone();
    edges.extend(local.iter().map(|&(u, v)| edge(n - 1 - u, n - 1 - v)));

    let mut cur = Cursor(2 * k * a);
    if alpha % 2 == 0 {
        let ds: Vec<i64> = (0..=2 * k).map(|_| cur.take(d).0).collect();
        let (d1, dlast) = (ds[0], ds[2 * k as usize]);
        add_pencil(&mut edges, d1, dlast + r, d - r);
        add_pencil(&mut edges, d1 + d - r, dlast, r);
    } else {
        let dp: Vec<i64> = (0..2 * k).map(|_| cur.take(d).0).collect();
        let k1 = cur.take(r).0;
        let l1 = cur.take(d - r).0;
        let k2 = cur.take(r).0;
        let l2 = cur.take(d - r).0;
        let k3 = cur.take(r).0;
        let o: Vec<i64> = (0..2 * k - 1).map(|_| cur.take(d).0).collect();
        let m1 = cur.take(r).0;
        let n1 = cur.take(d - r).0;
        let m2 = cur.take(r).0;
        let n2 = cur.take(d - r).0;
        let m3 = cur.take(r).0;
        let dpp: Vec<i64> = (0..2 * k).map(|_| cur.take(d).0).collect();
        debug_assert_eq!(cur.0 + 2 * k * a, n);

        // Blocks are 1-based in the description; index with j - 1.
        let dp_ = |j: i64| dp[(j - 1) as usize];
        let dpp_ = |j: i64| dpp[(j - 1) as usize];
        let o_ = |j: i64| o[(j - 1) as usize];
        let tk = 2 * k;

        pencil_chain(&mut edges, &[dp_(1), l1, n1, l2, n2, dpp_(tk) + r], d - r);
        pencil_chain(&mut edges, &[dp_(1) + d - r, k2, m2, dpp_(tk)], r);
        add_pencil(&mut edges, dp_(2), o_(1), d - r);
        pencil_chain(&mut edges, &[dp_(2) + d - r, k3, m3, o_(1) + d - r], r);
        for j in 3..=tk {
            add_pencil(&mut edges, dp_(j), o_(j - 1), d);
        }
        for j in 1..=tk - 2 {
            add_pencil(&mut edges, o_(j), dpp_(j), d);
        }
        pencil_chain(&mut edges, &[o_(tk - 1), k1, m1, dpp_(tk - 1)], r);
        add_pencil(&mut edges, o_(tk - 1) + r, dpp_(tk - 1) + r, d - r);
    }
    ProjectionTour::new(pair, Interval::of_size(n)?, edges)
}

/// Merges tours on adjacent intervals by trading two forced short edges for two long edges.
pub fn concat_tours(left: &ProjectionTour, right: &ProjectionTour) -> Result<ProjectionTour> {
    let pair = left.pair();
    if pair.regime() != Regime::Wide {
        return Err(Error::WrongRegime("2a > b".into()));
    }
    let (li, ri) = (left.interval(), right.interval());
    if right.pair() != pair || ri.lo != li.hi + 1 {
        return Err(Error::NotAdjacent(format!("{li} and {ri}")));
    }
    let (a, b) = (pair.a(), pair.b());
    let u = li.hi - pair.d() + 1;
    let mut edges: EdgeSet<i64> = left.edges().union(right.edges()).copied().collect();
    let removed = [edge(u - a, u), edge(u - a + b, u + b)];
    for e in removed {
        if !edges.remove(&e) {
            return Err(Error::UnsupportedSplit(format!(
                "forced edge {}-{} missing",
                e.0, e.1
            )));
        }
    }
    edges.insert(edge(u - a, u - a + b));
    edges.insert(edge(u, u + b));
    ProjectionTour::new(pair, Interval::new(li.lo, ri.hi)?, edges)
}
