//! Scarves: products of a loom on the columns with a pattern pseudotour on the rows.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{decompose_edges, edge, edge_kind, Cell, CycleDecomposition, EdgeSet, Interval};
use crate::loom::Loom;
use crate::params::LeaperParams;

/// All leaper edges whose column projection lies in `gx` and whose row projection lies in `gy`.
///
/// A leaper edge pairs a short projection with a long one, so each pair of opposite-kind
/// projections yields exactly two edges.
pub fn product(leaper: LeaperParams, gx: &EdgeSet<i64>, gy: &EdgeSet<i64>) -> EdgeSet<Cell> {
    let pair = leaper.pair();
    let mut out = EdgeSet::new();
    for &(x1, x2) in gx {
        let Some(kx) = edge_kind(pair, x1, x2) else {
            continue;
        };
        for &(y1, y2) in gy {
            if edge_kind(pair, y1, y2) != Some(kx.other()) {
                continue;
            }
            out.insert(edge(Cell::new(x1, y1), Cell::new(x2, y2)));
            out.insert(edge(Cell::new(x1, y2), Cell::new(x2, y1)));
        }
    }
    out
}

/// A pseudotour of the form loom × pattern on the board `loom.interval() × rows`.
#[derive(Clone, Debug)]
pub struct Scarf {
    loom: Loom,
    rows: Interval,
    pattern: EdgeSet<i64>,
    edges: EdgeSet<Cell>,
    cycles: CycleDecomposition<Cell>,
}

pub fn board_cells(cols: Interval, rows: Interval) -> impl Iterator<Item = Cell> {
    rows.iter()
        .flat_map(move |y| cols.iter().map(move |x| Cell::new(x, y)))
}

/// Builds the scarf of `loom` and the pattern pseudotour `pattern` on `rows`.
pub fn build_scarf(loom: &Loom, rows: Interval, pattern: &EdgeSet<i64>) -> Result<Scarf> {
    let pair = loom.leaper().pair();
    for &(u, v) in pattern {
        if edge_kind(pair, u, v).is_none() || !rows.contains(u) || !rows.contains(v) {
            return Err(Error::NotAnEdge(format!("{u}-{v}")));
        }
    }
    decompose_edges(rows.iter(), pattern)?;
    let edges = product(loom.leaper(), &loom.edges(), pattern);
    let cycles = decompose_edges(board_cells(loom.interval(), rows), &edges)?;
    Ok(Scarf {
        loom: loom.clone(),
        rows,
        pattern: pattern.clone(),
        edges,
        cycles,
    })
}

impl Scarf {
    pub fn leaper(&self) -> LeaperParams {
        self.loom.leaper()
    }

    pub fn loom(&self) -> &Loom {
        &self.loom
    }

    pub fn cols(&self) -> Interval {
        self.loom.interval()
    }

    pub fn rows(&self) -> Interval {
        self.rows
    }

    pub fn pattern(&self) -> &EdgeSet<i64> {
        &self.pattern
    }

    pub fn edges(&self) -> &EdgeSet<Cell> {
        &self.edges
    }

    pub fn cycles(&self) -> &CycleDecomposition<Cell> {
        &self.cycles
    }

    /// Neighbours of `v` in the pattern.
    pub fn pattern_neighbors(&self, v: i64) -> Vec<i64> {
        let (p, q) = (self.leaper().p(), self.leaper().q());
        [v - q, v - p, v + p, v + q]
            .into_iter()
            .filter(|&w| self.pattern.contains(&edge(v, w)))
            .collect()
    }

    /// Whether the pattern is a single cycle.
    pub fn pattern_is_tour(&self) -> bool {
        decompose_edges(self.rows.iter(), &self.pattern)
            .map(|d| d.is_tour())
            .unwrap_or(false)
    }
}

/// One of the two braids of a loom cycle, identified by its parity class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SignatureId {
    pub loom_cycle: usize,
    pub class: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Braid {
    pub id: SignatureId,
    /// Indices into the scarf's cycle decomposition.
    pub cycles: Vec<usize>,
    /// Columns whose even cells belong to this braid.
    pub signature: BTreeSet<i64>,
}

/// Position of every column in its loom cycle, as `(cycle index, position)`.
pub fn loom_positions(loom: &Loom) -> BTreeMap<i64, (usize, usize)> {
    let mut map = BTreeMap::new();
    for (c, cyc) in loom.cycles().cycles.iter().enumerate() {
        for (i, &x) in cyc.iter().enumerate() {
            map.insert(x, (c, i));
        }
    }
    map
}

/// The braid a cell belongs to: class 0 holds the cells `(x_i, y)` with `i ≡ x_i + y (mod 2)`.
pub fn braid_of(positions: &BTreeMap<i64, (usize, usize)>, cell: Cell) -> SignatureId {
    let (c, i) = positions[&cell.x];
    let class = ((i as i64 + cell.x + cell.y).rem_euclid(2)) as u8;
    SignatureId {
        loom_cycle: c,
        class,
    }
}

/// The columns forming the signature of a braid.
pub fn signature_columns(loom: &Loom, id: SignatureId) -> BTreeSet<i64> {
    loom.cycles().cycles[id.loom_cycle]
        .iter()
        .enumerate()
        .filter(|(i, _)| (*i % 2) as u8 == id.class)
        .map(|(_, &x)| x)
        .collect()
}

/// Groups the scarf's cycles into braids, two per loom cycle.
pub fn decompose_braids(scarf: &Scarf) -> Result<Vec<Braid>> {
    let positions = loom_positions(&scarf.loom);
    let mut braids: BTreeMap<SignatureId, Vec<usize>> = BTreeMap::new();
    for c in 0..scarf.loom.cycles().len() {
        for class in 0..2 {
            braids.insert(
                SignatureId {
                    loom_cycle: c,
                    class,
                },
                Vec::new(),
            );
        }
    }
    for (idx, cycle) in scarf.cycles.cycles.iter().enumerate() {
        let id = braid_of(&positions, cycle[0]);
        if cycle.iter().any(|&cell| braid_of(&positions, cell) != id) {
            return Err(Error::Assembly(format!("cycle {idx} crosses braids")));
        }
        braids.get_mut(&id).unwrap().push(idx);
    }
    Ok(braids
        .into_iter()
        .map(|(id, cycles)| Braid {
            id,
            cycles,
            signature: signature_columns(&scarf.loom, id),
        })
        .collect())
}

/// Checks that every cycle visits every row exactly twice, on cells of opposite parity.
pub fn row_visit_check(scarf: &Scarf) -> Result<()> {
    if scarf.rows.len() % 2 == 0 {
        return Err(Error::PreconditionUnmet(format!(
            "height {} is even",
            scarf.rows.len()
        )));
    }
    if !scarf.pattern_is_tour() {
        return Err(Error::PreconditionUnmet("pattern is not a tour".into()));
    }
    for (idx, cycle) in scarf.cycles.cycles.iter().enumerate() {
        let mut visits: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for cell in cycle {
            visits.entry(cell.y).or_default().push(cell.parity());
        }
        let ok = visits.len() as i64 == scarf.rows.len()
            && visits.values().all(|v| v.len() == 2 && v[0] != v[1]);
        if !ok {
            return Err(Error::Assembly(format!(
                "cycle {idx} breaks the row visit rule"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_projection_graph;
    use crate::loom::build_loom;
    use crate::projection::{projection_tour, tour_pkt};

    fn lp(p: i64, q: i64) -> LeaperParams {
        LeaperParams::new(p, q).unwrap()
    }

    #[test]
    fn product_basics() {
        let l = lp(2, 3);
        let single = product(
            l,
            &[(0, 2)].into_iter().collect(),
            &[(0, 3)].into_iter().collect(),
        );
        assert_eq!(single.len(), 2);
        assert!(product(l, &[(0, 2)].into_iter().collect(), &EdgeSet::new()).is_empty());
        let loom = build_loom(l, 1).unwrap();
        let rows = Interval::of_size(5).unwrap();
        let all = build_projection_graph(l.pair(), rows).edge_set();
        let s = build_scarf(&loom, rows, &all).unwrap();
        assert_eq!(s.edges().len(), 60);
    }

    #[test]
    fn knight_scarf() {
        let knight = LeaperParams::knight();
        let loom = build_loom(knight, 2).unwrap();
        let t = tour_pkt(5).unwrap();
        let s = build_scarf(&loom, t.interval(), t.edges()).unwrap();
        assert_eq!(s.cycles().len(), 4);
        assert!(s.cycles().cycles.iter().all(|c| c.len() == 10));
        let braids = decompose_braids(&s).unwrap();
        assert_eq!(braids.len(), 4);
        assert!(braids.iter().all(|b| b.cycles.len() == 1));
        row_visit_check(&s).unwrap();
        let t = tour_pkt(6).unwrap();
        let s = build_scarf(&loom, t.interval(), t.edges()).unwrap();
        assert!(matches!(
            row_visit_check(&s),
            Err(Error::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn zebra_scarf_cells() {
        let z = lp(2, 3);
        let loom = build_loom(z, 1).unwrap();
        let t = projection_tour(z.pair(), 17).unwrap();
        let s = build_scarf(&loom, t.interval(), t.edges()).unwrap();
        assert_eq!(s.edges().len(), 204);
        row_visit_check(&s).unwrap();
        assert_eq!(s.cycles().len(), 6);
        let braids = decompose_braids(&s).unwrap();
        assert_eq!(braids.len(), 2);
        assert!(braids.iter().all(|b| b.cycles.len() == 3));
    }
}
