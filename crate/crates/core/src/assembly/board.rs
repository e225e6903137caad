use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    decompose_edges, edge, is_leaper_move, verify_tour, Cell, Edge, EdgeSet, Interval,
};
use crate::params::LeaperParams;
use crate::scarf::board_cells;
use crate::switch::Switch;

/// A verified closed tour of a leaper on the board `[0; width - 1] × [0; height - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoardTour {
    leaper: LeaperParams,
    width: i64,
    height: i64,
    edges: EdgeSet<Cell>,
    /// Short notes on how the tour was assembled.
    pub trace: Vec<String>,
}

impl BoardTour {
    pub fn new(
        leaper: LeaperParams,
        width: i64,
        height: i64,
        edges: EdgeSet<Cell>,
        trace: Vec<String>,
    ) -> Result<Self> {
        let (cols, rows) = (Interval::of_size(width)?, Interval::of_size(height)?);
        for &(a, b) in &edges {
            if !is_leaper_move(leaper, a, b) {
                return Err(Error::NotAnEdge(format!("{a}-{b}")));
            }
        }
        verify_tour(board_cells(cols, rows), &edges)?;
        Ok(BoardTour {
            leaper,
            width,
            height,
            edges,
            trace,
        })
    }

    /// Builds a tour from a cyclic cell sequence.
    pub fn from_cycle(
        leaper: LeaperParams,
        width: i64,
        height: i64,
        cycle: &[Cell],
    ) -> Result<Self> {
        let edges: EdgeSet<Cell> = crate::graph::cycle_edges(cycle).into_iter().collect();
        if edges.len() != cycle.len() {
            return Err(Error::NotATour(0));
        }
        BoardTour::new(leaper, width, height, edges, vec!["external".into()])
    }

    pub fn leaper(&self) -> LeaperParams {
        self.leaper
    }

    pub fn width(&self) -> i64 {
        self.width
    }

    pub fn height(&self) -> i64 {
        self.height
    }

    pub fn edges(&self) -> &EdgeSet<Cell> {
        &self.edges
    }

    pub fn contains(&self, a: Cell, b: Cell) -> bool {
        self.edges.contains(&edge(a, b))
    }

    /// The canonical cell sequence.
    pub fn cycle(&self) -> Vec<Cell> {
        let cells = board_cells(
            Interval::of_size(self.width).unwrap(),
            Interval::of_size(self.height).unwrap(),
        );
        decompose_edges(cells, &self.edges)
            .expect("verified")
            .cycles
            .remove(0)
    }

    /// The same tour with columns and rows exchanged.
    pub fn transpose(&self) -> BoardTour {
        BoardTour {
            leaper: self.leaper,
            width: self.height,
            height: self.width,
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| edge(a.transpose(), b.transpose()))
                .collect(),
            trace: self.trace.clone(),
        }
    }

    /// The first universal joint of the tour: an edge `(u, v)-(u - p, v + q)` with
    /// `q - p <= u < q` and `p <= v < 2p`.
    pub fn joint(&self) -> Option<Edge<Cell>> {
        universal_joints(self.leaper)
            .into_iter()
            .find(|&(a, b)| self.edges.contains(&edge(a, b)))
    }
}

/// All candidate universal joint edges, as `((u, v), (u - p, v + q))`.
pub fn universal_joints(leaper: LeaperParams) -> Vec<Edge<Cell>> {
    let (p, q) = (leaper.p(), leaper.q());
    let mut out = Vec::new();
    for u in q - p..q {
        for v in p..2 * p {
            out.push((Cell::new(u, v), Cell::new(u - p, v + q)));
        }
    }
    out
}

/// Places `joint` to the right of `plain` and merges the two tours with one rhombus switch
/// through the joint and the forced corner cell of `plain`.
pub fn stitch_joint(plain: &BoardTour, joint: &BoardTour) -> Result<BoardTour> {
    if plain.height != joint.height {
        return Err(Error::HeightMismatch(plain.height, joint.height));
    }
    if plain.leaper != joint.leaper {
        return Err(Error::Assembly("tours belong to different leapers".into()));
    }
    let leaper = plain.leaper;
    let (p, q) = (leaper.p(), leaper.q());
    let (j0, _) = joint.joint().ok_or(Error::NoJoint)?;
    let n = plain.width;
    let (u, v) = (j0.x + n, j0.y);
    let corners = [
        Cell::new(u, v),
        Cell::new(u - p, v + q),
        Cell::new(u - p - q, v - p + q),
        Cell::new(u - q, v - p),
    ];
    let mut edges = plain.edges.clone();
    edges.extend(
        joint
            .edges
            .iter()
            .map(|&(a, b)| (Cell::new(a.x + n, a.y), Cell::new(b.x + n, b.y))),
    );
    let s = Switch::rhombus(leaper, corners)?;
    let (ins, outs) = s.in_out(&edges)?;
    for e in &ins {
        edges.remove(e);
    }
    edges.extend(outs);
    let mut trace = plain.trace.clone();
    trace.push(format!(
        "stitch width {} at joint {}-{}",
        joint.width, corners[0], corners[1]
    ));
    BoardTour::new(leaper, n + joint.width, plain.height, edges, trace)
}
