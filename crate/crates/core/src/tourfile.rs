//! The JSON tour file format shared by the command line tool and the file provider.

use serde::{Deserialize, Serialize};

use crate::assembly::BoardTour;
use crate::error::{Error, Result};
use crate::graph::{build_leaper_graph, build_projection_graph, cycle_edges, decompose_degree2, Cell, EdgeSet, Interval};
use crate::params::{CoprimePair, LeaperParams};
use crate::projection::ProjectionTour;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSpec {
    pub a: i64,
    pub b: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeaperSpec {
    pub p: i64,
    pub q: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSpec {
    pub lo: i64,
    pub hi: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoardSpec {
    pub height: i64,
    pub width: i64,
}

/// Tours are stored as a vertex sequence; `edges` may replace it to describe any subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TourBody {
    Projection {
        params: PairSpec,
        interval: IntervalSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cycle: Option<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        edges: Option<Vec<[i64; 2]>>,
    },
    Board {
        params: LeaperSpec,
        board: BoardSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cycle: Option<Vec<[i64; 2]>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        edges: Option<Vec<[[i64; 2]; 2]>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TourFile {
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: TourBody,
    /// Construction trace, or `["external"]`.
    pub provenance: Vec<String>,
}

/// Result of checking a tour file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Tour { vertices: usize },
    Pseudotour { cycles: usize },
    Invalid(Error),
}

fn cell_pair(c: Cell) -> [i64; 2] {
    [c.x, c.y]
}

impl TourFile {
    pub fn from_board(t: &BoardTour) -> Self {
        let l = t.leaper();
        TourFile {
            schema_version: SCHEMA_VERSION,
            body: TourBody::Board {
                params: LeaperSpec { p: l.p(), q: l.q() },
                board: BoardSpec { height: t.height(), width: t.width() },
                cycle: Some(t.cycle().into_iter().map(cell_pair).collect()),
                edges: None,
            },
            provenance: if t.trace.is_empty() { vec!["external".into()] } else { t.trace.clone() },
        }
    }

    pub fn from_projection(t: &ProjectionTour, provenance: Vec<String>) -> Self {
        let iv = t.interval();
        TourFile {
            schema_version: SCHEMA_VERSION,
            body: TourBody::Projection {
                params: PairSpec { a: t.pair().a(), b: t.pair().b() },
                interval: IntervalSpec { lo: iv.lo, hi: iv.hi },
                cycle: Some(t.cycle()),
                edges: None,
            },
            provenance,
        }
    }

    /// A projection file listing `edges` directly, for pseudotours such as looms.
    pub fn from_projection_edges(pair: CoprimePair, interval: Interval, edges: &EdgeSet<i64>, provenance: Vec<String>) -> Self {
        TourFile {
            schema_version: SCHEMA_VERSION,
            body: TourBody::Projection {
                params: PairSpec { a: pair.a(), b: pair.b() },
                interval: IntervalSpec { lo: interval.lo, hi: interval.hi },
                cycle: None,
                edges: Some(edges.iter().map(|&(u, v)| [u, v]).collect()),
            },
            provenance,
        }
    }

    /// A board file listing `edges` directly, for pseudotours such as scarves.
    pub fn from_board_edges(leaper: LeaperParams, height: i64, width: i64, edges: &EdgeSet<Cell>, provenance: Vec<String>) -> Self {
        TourFile {
            schema_version: SCHEMA_VERSION,
            body: TourBody::Board {
                params: LeaperSpec { p: leaper.p(), q: leaper.q() },
                board: BoardSpec { height, width },
                cycle: None,
                edges: Some(edges.iter().map(|&(u, v)| [cell_pair(u), cell_pair(v)]).collect()),
            },
            provenance,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: TourFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if f.schema_version != SCHEMA_VERSION {
            return Err(Error::Format(format!("unsupported schema version {}", f.schema_version)));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tour files serialise") + "\n"
    }

    /// Checks the stored subgraph against its graph: a tour, a pseudotour or neither.
    pub fn verify(&self) -> Verification {
        let result = match &self.body {
            TourBody::Projection { .. } => self.projection_edges().and_then(|(pair, iv, edges)| {
                let g = build_projection_graph(pair, iv);
                decompose_degree2(&g, &edges).map(|d| (d.len(), iv.len() as usize))
            }),
            TourBody::Board { .. } => self.board_edges().and_then(|(leaper, cols, rows, edges)| {
                let g = build_leaper_graph(leaper, cols, rows);
                decompose_degree2(&g, &edges).map(|d| (d.len(), (cols.len() * rows.len()) as usize))
            }),
        };
        match result {
            Ok((1, vertices)) => Verification::Tour { vertices },
            Ok((cycles, _)) => Verification::Pseudotour { cycles },
            Err(e) => Verification::Invalid(e),
        }
    }

    /// Parameters, interval and edge set of a projection file.
    pub fn projection_edges(&self) -> Result<(CoprimePair, Interval, EdgeSet<i64>)> {
        let TourBody::Projection { params, interval, cycle, edges } = &self.body else {
            return Err(Error::Format("not a projection tour".into()));
        };
        let pair = CoprimePair::new(params.a, params.b)?;
        let iv = Interval::new(interval.lo, interval.hi)?;
        let set = match (cycle, edges) {
            (Some(c), None) => sequence_edges(c)?,
            (None, Some(es)) => es.iter().map(|&[u, v]| crate::graph::edge(u, v)).collect(),
            _ => return Err(Error::Format("exactly one of cycle and edges is required".into())),
        };
        Ok((pair, iv, set))
    }

    /// Parameters, columns, rows and edge set of a board file.
    pub fn board_edges(&self) -> Result<(LeaperParams, Interval, Interval, EdgeSet<Cell>)> {
        let TourBody::Board { params, board, cycle, edges } = &self.body else {
            return Err(Error::Format("not a board tour".into()));
        };
        let leaper = LeaperParams::new(params.p, params.q)?;
        let cols = Interval::of_size(board.width)?;
        let rows = Interval::of_size(board.height)?;
        let cell = |[x, y]: [i64; 2]| Cell::new(x, y);
        let set = match (cycle, edges) {
            (Some(c), None) => sequence_edges(&c.iter().map(|&p| cell(p)).collect::<Vec<_>>())?,
            (None, Some(es)) => es.iter().map(|&[u, v]| crate::graph::edge(cell(u), cell(v))).collect(),
            _ => return Err(Error::Format("exactly one of cycle and edges is required".into())),
        };
        Ok((leaper, cols, rows, set))
    }

    pub fn to_board_tour(&self) -> Result<BoardTour> {
        let (leaper, cols, rows, edges) = self.board_edges()?;
        BoardTour::new(leaper, cols.len(), rows.len(), edges, self.provenance.clone())
    }

    pub fn to_projection_tour(&self) -> Result<ProjectionTour> {
        let (pair, iv, edges) = self.projection_edges()?;
        ProjectionTour::new(pair, iv, edges)
    }
}

fn sequence_edges<V: crate::graph::Vertex>(seq: &[V]) -> Result<EdgeSet<V>> {
    if seq.len() < 3 {
        return Err(Error::Format("a cycle needs at least three vertices".into()));
    }
    let edges: EdgeSet<V> = cycle_edges(seq).into_iter().collect();
    if edges.len() != seq.len() {
        return Err(Error::Format("cycle repeats an edge".into()));
    }
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projection::projection_tour;

    #[test]
    fn round_trips() {
        let t = projection_tour(CoprimePair::new(2, 3).unwrap(), 27).unwrap();
        let f = TourFile::from_projection(&t, vec!["test".into()]);
        let back = TourFile::parse(&f.to_json()).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_projection_tour().unwrap(), t);
        assert_eq!(back.verify(), Verification::Tour { vertices: 27 });
        assert!(f.to_json().contains("\"kind\": \"projection\""));
    }

    #[test]
    fn rejects_damage() {
        assert!(matches!(TourFile::parse("{\"schema_version\": 1, \"kind\""), Err(Error::Format(_))));
        let t = projection_tour(CoprimePair::new(1, 2).unwrap(), 6).unwrap();
        let mut f = TourFile::from_projection(&t, vec![]);
        let mut es: Vec<[i64; 2]> = t.edges().iter().map(|&(u, v)| [u, v]).collect();
        es.pop();
        if let TourBody::Projection { cycle, edges, .. } = &mut f.body {
            *cycle = None;
            *edges = Some(es);
        }
        assert!(matches!(f.verify(), Verification::Invalid(Error::DegreeViolation { .. })));
    }
}
