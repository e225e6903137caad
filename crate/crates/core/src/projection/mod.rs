//! Hamiltonian cycles of projection graphs.

mod base;
mod extension;
mod ladder;
mod recipe;
mod split;

pub use base::{tour_pkt, tour_pmt, tour_pst};
pub(crate) use extension::default_width;
pub use extension::{
    chain_extensions, growth_extension, join_extensions, make_extension, Extension,
};
pub use ladder::{build_ladder, concat_tours, tour_base_wide, wide_base_size, Ladder};
pub use recipe::{mu_pi_bound, projection_tour, recipe_for, Recipe};
pub use split::{extend_tour, find_split, insert_chain, End, Split};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, edge_kind, verify_tour, Edge, EdgeSet, Interval};
use crate::params::CoprimePair;

/// A verified Hamiltonian cycle of a projection graph on `interval`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionTour {
    pair: CoprimePair,
    interval: Interval,
    edges: EdgeSet<i64>,
}

impl ProjectionTour {
    /// Checks that every edge is short or long and that the edges form one cycle on `interval`.
    pub fn new(pair: CoprimePair, interval: Interval, edges: EdgeSet<i64>) -> Result<Self> {
        for &(u, v) in &edges {
            if edge_kind(pair, u, v).is_none() || !interval.contains(u) || !interval.contains(v) {
                return Err(Error::NotAnEdge(format!("{u}-{v}")));
            }
        }
        if interval.len() < 3 {
            return Err(Error::NoTour(format!("{} vertices", interval.len())));
        }
        verify_tour(interval.iter(), &edges)?;
        Ok(ProjectionTour {
            pair,
            interval,
            edges,
        })
    }

    pub fn pair(&self) -> CoprimePair {
        self.pair
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn len(&self) -> i64 {
        self.interval.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> &EdgeSet<i64> {
        &self.edges
    }

    pub fn contains(&self, u: i64, v: i64) -> bool {
        self.edges.contains(&edge(u, v))
    }

    /// The canonical vertex sequence.
    pub fn cycle(&self) -> Vec<i64> {
        verify_tour(self.interval.iter(), &self.edges).expect("validated at construction")
    }

    pub fn shift(&self, by: i64) -> ProjectionTour {
        ProjectionTour {
            pair: self.pair,
            interval: self.interval.shift(by),
            edges: shift_edges(&self.edges, by),
        }
    }

    /// The two tour neighbours of `u`.
    pub fn neighbors(&self, u: i64) -> Vec<i64> {
        let pair = self.pair;
        [u - pair.b(), u - pair.a(), u + pair.a(), u + pair.b()]
            .into_iter()
            .filter(|&v| self.contains(u, v))
            .collect()
    }
}

pub(crate) fn shift_edges(edges: &EdgeSet<i64>, by: i64) -> EdgeSet<i64> {
    edges.iter().map(|&(u, v)| (u + by, v + by)).collect()
}

/// Adds the pencil between the runs starting at `from` and `to` of length `len`.
pub(crate) fn add_pencil(edges: &mut EdgeSet<i64>, from: i64, to: i64, len: i64) {
    for i in 0..len {
        edges.insert(edge(from + i, to + i));
    }
}

pub(crate) fn path_edges(path: &[i64]) -> impl Iterator<Item = Edge<i64>> + '_ {
    path.windows(2).map(|w| edge(w[0], w[1]))
}
