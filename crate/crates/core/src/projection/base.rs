use crate::error::{Error, Result};
use crate::graph::{edge, EdgeSet, Interval};
use crate::params::CoprimePair;

use super::ProjectionTour;

/// The single cycle of the projection graph on `a + b` vertices.
pub fn tour_pst(pair: CoprimePair) -> ProjectionTour {
    let (a, b) = (pair.a(), pair.b());
    let n = a + b;
    let mut edges = EdgeSet::new();
    for i in 0..n {
        edges.insert(edge((a * i) % n, (a * (i + 1)) % n));
    }
    ProjectionTour::new(pair, Interval::of_size(n).unwrap(), edges)
        .expect("the projection graph on a + b vertices is a cycle")
}

/// `k` translated copies of [`tour_pst`] stitched together left to right.
pub fn tour_pmt(pair: CoprimePair, k: i64) -> Result<ProjectionTour> {
    if k < 1 {
        return Err(Error::NoTour(format!("{k} copies")));
    }
    let (a, b) = (pair.a(), pair.b());
    let n = a + b;
    let base = tour_pst(pair);
    let mut edges = EdgeSet::new();
    for i in 0..k {
        edges.extend(super::shift_edges(base.edges(), i * n));
    }
    let (pu, pv, pw) = ((b - a) / 2, (a + b) / 2, (3 * a + b) / 2);
    for i in 0..k - 1 {
        let (vi, wi) = (i * n + pv, i * n + pw);
        let (uj, vj) = ((i + 1) * n + pu, (i + 1) * n + pv);
        edges.remove(&edge(vi, wi));
        edges.remove(&edge(uj, vj));
        edges.insert(edge(vi, uj));
        edges.insert(edge(wi, vj));
    }
    ProjectionTour::new(pair, Interval::of_size(k * n).unwrap(), edges)
}

/// The unique knight projection tour: short edges at both ends plus every long edge.
pub fn tour_pkt(n: i64) -> Result<ProjectionTour> {
    if n < 3 {
        return Err(Error::NoTour(format!(
            "the knight projection graph on {n} vertices"
        )));
    }
    let mut edges: EdgeSet<i64> = (0..n - 2).map(|u| (u, u + 2)).collect();
    edges.insert((0, 1));
    edges.insert((n - 2, n - 1));
    ProjectionTour::new(
        CoprimePair::new(1, 2).unwrap(),
        Interval::of_size(n).unwrap(),
        edges,
    )
}
