//! Switches: alternating cycles whose flipping stitches pseudotour cycles together.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    cycle_edges, decompose_edges, edge, is_leaper_move, Cell, CycleDecomposition, Edge, EdgeKind,
    EdgeSet, Interval,
};
use crate::loom::{find_bracket, is_bracket, loom_stats, Shaft};
use crate::params::LeaperParams;
use crate::scarf::{
    board_cells, braid_of, decompose_braids, loom_positions, Braid, Scarf, SignatureId,
};

/// A spanning degree-two subgraph of the leaper graph on `cols × rows`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pseudotour {
    leaper: LeaperParams,
    cols: Interval,
    rows: Interval,
    edges: EdgeSet<Cell>,
}

impl Pseudotour {
    pub fn new(
        leaper: LeaperParams,
        cols: Interval,
        rows: Interval,
        edges: EdgeSet<Cell>,
    ) -> Result<Self> {
        for &(a, b) in &edges {
            if !is_leaper_move(leaper, a, b) {
                return Err(Error::NotAnEdge(format!("{a}-{b}")));
            }
        }
        decompose_edges(board_cells(cols, rows), &edges)?;
        Ok(Pseudotour {
            leaper,
            cols,
            rows,
            edges,
        })
    }

    pub fn from_scarf(scarf: &Scarf) -> Self {
        Pseudotour {
            leaper: scarf.leaper(),
            cols: scarf.cols(),
            rows: scarf.rows(),
            edges: scarf.edges().clone(),
        }
    }

    /// Joins pseudotours on boards that share columns and have adjacent row ranges.
    pub fn stack(parts: &[Pseudotour]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Assembly("nothing to stack".into()))?;
        let mut edges = EdgeSet::new();
        let mut hi = first.rows.lo - 1;
        for p in parts {
            if p.cols != first.cols || p.rows.lo != hi + 1 {
                return Err(Error::Assembly("parts are not stacked".into()));
            }
            hi = p.rows.hi;
            edges.extend(p.edges.iter().copied());
        }
        Ok(Pseudotour {
            leaper: first.leaper,
            cols: first.cols,
            rows: Interval::new(first.rows.lo, hi)?,
            edges,
        })
    }

    pub fn leaper(&self) -> LeaperParams {
        self.leaper
    }

    pub fn cols(&self) -> Interval {
        self.cols
    }

    pub fn rows(&self) -> Interval {
        self.rows
    }

    pub fn edges(&self) -> &EdgeSet<Cell> {
        &self.edges
    }

    pub fn into_edges(self) -> EdgeSet<Cell> {
        self.edges
    }

    pub fn has_edge(&self, a: Cell, b: Cell) -> bool {
        self.edges.contains(&edge(a, b))
    }

    pub fn cycles(&self) -> CycleDecomposition<Cell> {
        decompose_edges(board_cells(self.cols, self.rows), &self.edges)
            .expect("degree two by construction")
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn is_tour(&self) -> bool {
        self.cycle_count() == 1
    }
}

/// A closed sequence of cells joined by leaper moves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Switch {
    cells: Vec<Cell>,
}

impl Switch {
    pub fn new(leaper: LeaperParams, cells: Vec<Cell>) -> Result<Self> {
        let n = cells.len();
        if n < 4 || n % 2 == 1 {
            return Err(Error::NotASwitch(format!("length {n}")));
        }
        if cells.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(Error::NotASwitch("repeated cell".into()));
        }
        for i in 0..n {
            if !is_leaper_move(leaper, cells[i], cells[(i + 1) % n]) {
                return Err(Error::NotASwitch(format!(
                    "{}-{} is not a move",
                    cells[i],
                    cells[(i + 1) % n]
                )));
            }
        }
        Ok(Switch { cells })
    }

    pub fn rhombus(leaper: LeaperParams, corners: [Cell; 4]) -> Result<Self> {
        Switch::new(leaper, corners.to_vec())
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn edges(&self) -> Vec<Edge<Cell>> {
        cycle_edges(&self.cells)
    }

    /// Splits the edges into those in `g` and those outside it, requiring alternation.
    pub fn in_out(&self, g: &EdgeSet<Cell>) -> Result<(Vec<Edge<Cell>>, Vec<Edge<Cell>>)> {
        let all = self.edges();
        let even: Vec<_> = all.iter().step_by(2).copied().collect();
        let odd: Vec<_> = all.iter().skip(1).step_by(2).copied().collect();
        let inside = |es: &[Edge<Cell>]| es.iter().all(|e| g.contains(e));
        let outside = |es: &[Edge<Cell>]| es.iter().all(|e| !g.contains(e));
        if inside(&even) && outside(&odd) {
            Ok((even, odd))
        } else if inside(&odd) && outside(&even) {
            Ok((odd, even))
        } else {
            Err(Error::NotASwitch(
                "does not alternate between the pseudotour and its complement".into(),
            ))
        }
    }

    /// Indices of the cycles holding the in-edges; they must be pairwise distinct.
    pub fn touched(&self, g: &EdgeSet<Cell>, index: &BTreeMap<Cell, usize>) -> Result<Vec<usize>> {
        let (ins, _) = self.in_out(g)?;
        let ids: Vec<usize> = ins.iter().map(|e| index[&e.0]).collect();
        if ids.iter().collect::<BTreeSet<_>>().len() != ids.len() {
            return Err(Error::NotASwitch("two in-edges share a cycle".into()));
        }
        Ok(ids)
    }
}

fn apply(edges: &mut EdgeSet<Cell>, ins: &[Edge<Cell>], outs: &[Edge<Cell>]) {
    for e in ins {
        edges.remove(e);
    }
    edges.extend(outs.iter().copied());
}

/// Flips a single switch after validating it against `g`.
pub fn flip_switch(g: &Pseudotour, s: &Switch) -> Result<Pseudotour> {
    let index = g.cycles().cycle_index();
    s.touched(&g.edges, &index)?;
    let (ins, outs) = s.in_out(&g.edges)?;
    let mut edges = g.edges.clone();
    apply(&mut edges, &ins, &outs);
    Pseudotour::new(g.leaper, g.cols, g.rows, edges)
}

/// Union-find over cycle indices.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[derive(Clone, Debug)]
pub struct FlipOutcome {
    pub pseudotour: Pseudotour,
    /// Indices of the switches that were flipped, in order.
    pub flipped: Vec<usize>,
}

/// Checks that no two switches share an edge.
pub fn check_edge_disjoint(switches: &[Switch]) -> Result<()> {
    let mut seen: BTreeMap<Edge<Cell>, usize> = BTreeMap::new();
    for (i, s) in switches.iter().enumerate() {
        for e in s.edges() {
            if let Some(j) = seen.insert(e, i) {
                if j != i {
                    return Err(Error::NotEdgeDisjoint(format!(
                        "switches {j} and {i} share {}-{}",
                        e.0, e.1
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Merges every cycle touched by a connecting system of pairwise edge-disjoint rhombus
/// switches, flipping one switch per edge of a spanning tree.
pub fn flip_rhombus_system(g: &Pseudotour, switches: &[Switch]) -> Result<FlipOutcome> {
    if let Some(s) = switches.iter().find(|s| s.len() != 4) {
        return Err(Error::NotASwitch(format!(
            "length {} is not a rhombus",
            s.len()
        )));
    }
    check_edge_disjoint(switches)?;
    let cycles = g.cycles();
    let index = cycles.cycle_index();
    let mut uf = UnionFind::new(cycles.len());
    let mut touched_all = BTreeSet::new();
    let mut flipped = Vec::new();
    let mut edges = g.edges.clone();
    for (i, s) in switches.iter().enumerate() {
        let t = s.touched(&g.edges, &index)?;
        touched_all.extend(t.iter().copied());
        if uf.union(t[0], t[1]) {
            let (ins, outs) = s.in_out(&g.edges)?;
            apply(&mut edges, &ins, &outs);
            flipped.push(i);
        }
    }
    if let Some(&first) = touched_all.iter().next() {
        let root = uf.find(first);
        if touched_all.iter().any(|&c| uf.find(c) != root) {
            return Err(Error::NotConnecting);
        }
    }
    let pseudotour = Pseudotour::new(g.leaper, g.cols, g.rows, edges)?;
    let expected = cycles.len() - flipped.len();
    if pseudotour.cycle_count() != expected {
        return Err(Error::Assembly(format!(
            "expected {expected} cycles after flipping"
        )));
    }
    Ok(FlipOutcome {
        pseudotour,
        flipped,
    })
}

/// Rhombus switches connecting the cycles of one braid, drawn from the rows of designated
/// edge pairs `(e', e'')` of consecutive extension copies.
pub fn braid_rhombus_system(
    scarf: &Scarf,
    braid: &Braid,
    designated: &[(Edge<i64>, Edge<i64>)],
) -> Result<Vec<Switch>> {
    let leaper = scarf.leaper();
    if leaper.p() == 1 {
        return Err(Error::PreconditionUnmet(
            "braids are single cycles when p = 1".into(),
        ));
    }
    let xi = loom_stats(leaper).xi as usize;
    if designated.len() < xi {
        return Err(Error::PreconditionUnmet(format!(
            "chain of {} copies is shorter than {xi}",
            designated.len()
        )));
    }
    if braid.cycles.len() <= 1 {
        return Ok(Vec::new());
    }
    let g = scarf.edges();
    let cycles = scarf.cycles();
    let index = cycles.cycle_index();
    let positions = loom_positions(scarf.loom());
    let local: BTreeMap<usize, usize> = braid
        .cycles
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    let mut uf = UnionFind::new(braid.cycles.len());
    let mut merged = 0;
    let mut used: BTreeSet<Edge<Cell>> = BTreeSet::new();
    let mut out = Vec::new();
    let loom_cycle = &scarf.loom().cycles().cycles[braid.id.loom_cycle];
    let n = loom_cycle.len();
    let brackets: Vec<[i64; 4]> = (0..n)
        .map(|i| {
            [
                loom_cycle[i],
                loom_cycle[(i + 1) % n],
                loom_cycle[(i + 2) % n],
                loom_cycle[(i + 3) % n],
            ]
        })
        .filter(|b| is_bracket(leaper, b, EdgeKind::Short))
        .collect();
    if brackets.is_empty() {
        find_bracket(leaper, loom_cycle, EdgeKind::Short)?;
    }
    'outer: for x in &brackets {
        for &((y1, z1), (y2, z2)) in designated {
            let candidates = [
                [
                    Cell::new(x[0], y1),
                    Cell::new(x[1], z1),
                    Cell::new(x[2], z2),
                    Cell::new(x[3], y2),
                ],
                [
                    Cell::new(x[2], y1),
                    Cell::new(x[3], z1),
                    Cell::new(x[0], z2),
                    Cell::new(x[1], y2),
                ],
            ];
            for corners in candidates {
                if corners.iter().any(|&c| braid_of(&positions, c) != braid.id) {
                    continue;
                }
                let Ok(s) = Switch::rhombus(leaper, corners) else {
                    continue;
                };
                let Ok(t) = s.touched(g, &index) else {
                    continue;
                };
                let (Some(&a), Some(&b)) = (local.get(&t[0]), local.get(&t[1])) else {
                    continue;
                };
                if s.edges().iter().any(|e| used.contains(e)) {
                    continue;
                }
                if uf.union(a, b) {
                    used.extend(s.edges());
                    out.push(s);
                    merged += 1;
                    if merged + 1 == braid.cycles.len() {
                        break 'outer;
                    }
                }
            }
        }
    }
    if merged + 1 != braid.cycles.len() {
        return Err(Error::NotConnecting);
    }
    Ok(out)
}

/// The comb of index `v` and the given shaft.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comb {
    pub index: i64,
    pub v_short: i64,
    pub v_long: i64,
    pub shaft: Shaft,
    pub switch: Switch,
}

/// Whether `v` meets one short and one long pattern edge; returns its short and long neighbours.
pub fn mixed_neighbors(scarf: &Scarf, v: i64) -> Option<(i64, i64)> {
    let p = scarf.leaper().p();
    let n = scarf.pattern_neighbors(v);
    if n.len() != 2 {
        return None;
    }
    let short: Vec<i64> = n.iter().copied().filter(|w| (w - v).abs() == p).collect();
    let long: Vec<i64> = n.iter().copied().filter(|w| (w - v).abs() != p).collect();
    (short.len() == 1 && long.len() == 1).then(|| (short[0], long[0]))
}

/// Builds the comb: each shaft edge of length `2p` becomes a tooth through the long
/// neighbour's row, each edge of length `2q` a tooth through the short neighbour's row.
pub fn build_comb(scarf: &Scarf, v: i64, shaft: &Shaft) -> Result<Comb> {
    let leaper = scarf.leaper();
    let (v_short, v_long) = mixed_neighbors(scarf, v).ok_or(Error::NotMixed(v))?;
    let s = &shaft.cycle;
    let mut cells = Vec::with_capacity(2 * s.len());
    for i in 0..s.len() {
        let (a, b) = (s[i], s[(i + 1) % s.len()]);
        let row = if (a - b).abs() == 2 * leaper.p() {
            v_long
        } else {
            v_short
        };
        cells.push(Cell::new(a, v));
        cells.push(Cell::new((a + b) / 2, row));
    }
    if cells.iter().any(|c| !scarf.cols().contains(c.x)) {
        return Err(Error::PreconditionUnmet("shaft leaves the loom".into()));
    }
    let switch = Switch::new(leaper, cells)?;
    if scarf.rows().len() % 2 == 1 && scarf.pattern_is_tour() {
        let index = scarf.cycles().cycle_index();
        switch.touched(scarf.edges(), &index)?;
    } else {
        switch.in_out(scarf.edges())?;
    }
    Ok(Comb {
        index: v,
        v_short,
        v_long,
        shaft: shaft.clone(),
        switch,
    })
}

/// The signatures of the braids holding cycles that the comb touches.
pub fn comb_touch_signatures(scarf: &Scarf, comb: &Comb) -> Result<BTreeSet<SignatureId>> {
    let positions = loom_positions(scarf.loom());
    let (ins, _) = comb.switch.in_out(scarf.edges())?;
    Ok(ins.iter().map(|e| braid_of(&positions, e.0)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperedge {
    pub parity: i64,
    pub shaft_base: i64,
    /// The comb index the touch set was measured with.
    pub index: i64,
    pub members: BTreeSet<SignatureId>,
}

/// Signatures joined by the touch sets of combs over every shaft and index parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureHypergraph {
    pub signatures: Vec<SignatureId>,
    pub hyperedges: Vec<Hyperedge>,
}

impl SignatureHypergraph {
    fn components(&self, chosen: &[usize]) -> (usize, bool) {
        let pos: BTreeMap<SignatureId, usize> = self
            .signatures
            .iter()
            .enumerate()
            .map(|(i, s)| (*s, i))
            .collect();
        let mut uf = UnionFind::new(self.signatures.len());
        let mut covered = BTreeSet::new();
        for &h in chosen {
            let m: Vec<usize> = self.hyperedges[h].members.iter().map(|s| pos[s]).collect();
            covered.extend(m.iter().copied());
            for w in m.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let roots: BTreeSet<usize> = (0..self.signatures.len()).map(|i| uf.find(i)).collect();
        (roots.len(), covered.len() == self.signatures.len())
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.hyperedges.len()).collect();
        self.components(&all) == (1, true)
    }

    /// A minimal set of hyperedges whose union is connected and covers every signature.
    pub fn spanning_selection(&self) -> Result<Vec<usize>> {
        if !self.is_connected() {
            return Err(Error::DisconnectedHypergraph);
        }
        let pos: BTreeMap<SignatureId, usize> = self
            .signatures
            .iter()
            .enumerate()
            .map(|(i, s)| (*s, i))
            .collect();
        let mut uf = UnionFind::new(self.signatures.len());
        let mut chosen = Vec::new();
        for (h, e) in self.hyperedges.iter().enumerate() {
            let m: Vec<usize> = e.members.iter().map(|s| pos[s]).collect();
            let mut joins = false;
            for w in m.windows(2) {
                joins |= uf.union(w[0], w[1]);
            }
            if joins {
                chosen.push(h);
            }
        }
        let mut i = 0;
        while i < chosen.len() {
            let mut without = chosen.clone();
            without.remove(i);
            if self.components(&without) == (1, true) {
                chosen = without;
            } else {
                i += 1;
            }
        }
        Ok(chosen)
    }
}

/// The hypergraph measured in situ with the given comb indices (one per parity).
pub fn build_hypergraph_with(scarf: &Scarf, indices: &[i64]) -> Result<SignatureHypergraph> {
    if scarf.loom().k() != 2 {
        return Err(Error::PreconditionUnmet(
            "hypergraph needs the order-two loom".into(),
        ));
    }
    let braids = decompose_braids(scarf)?;
    let signatures: Vec<SignatureId> = braids.iter().map(|b| b.id).collect();
    let shafts = crate::loom::enumerate_shafts(scarf.leaper());
    let mut hyperedges = Vec::new();
    for &v in indices {
        for s in &shafts {
            let comb = build_comb(scarf, v, s)?;
            let members = comb_touch_signatures(scarf, &comb)?;
            hyperedges.push(Hyperedge {
                parity: v.rem_euclid(2),
                shaft_base: s.base,
                index: v,
                members,
            });
        }
    }
    Ok(SignatureHypergraph {
        signatures,
        hyperedges,
    })
}

/// The smallest mixed pattern vertex of each parity, in parity order.
pub fn mixed_representatives(scarf: &Scarf) -> Vec<i64> {
    let mut out = Vec::new();
    for parity in 0..2 {
        if let Some(v) = scarf
            .rows()
            .iter()
            .find(|&v| v.rem_euclid(2) == parity && mixed_neighbors(scarf, v).is_some())
        {
            out.push(v);
        }
    }
    out
}

/// The hypergraph measured with the smallest mixed vertex of each parity.
pub fn build_hypergraph(scarf: &Scarf) -> Result<SignatureHypergraph> {
    let h = build_hypergraph_with(scarf, &mixed_representatives(scarf))?;
    if !h.is_connected() {
        return Err(Error::DisconnectedHypergraph);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_projection_graph;
    use crate::loom::{build_loom, enumerate_shafts, shaft};
    use crate::projection::{projection_tour, recipe_for, tour_pkt};
    use crate::scarf::build_scarf;

    fn lp(p: i64, q: i64) -> LeaperParams {
        LeaperParams::new(p, q).unwrap()
    }

    fn c(x: i64, y: i64) -> Cell {
        Cell::new(x, y)
    }

    fn knight_scarf(m: i64) -> Scarf {
        let loom = build_loom(LeaperParams::knight(), 2).unwrap();
        let t = tour_pkt(m).unwrap();
        build_scarf(&loom, t.interval(), t.edges()).unwrap()
    }

    /// Every rhombus switch of `g` inside its board.
    fn all_rhombi(g: &Pseudotour) -> Vec<Switch> {
        let index = g.cycles().cycle_index();
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for &(a, b) in g.edges() {
            for &(c2, d2) in g.edges() {
                for corners in [[a, b, c2, d2], [a, b, d2, c2]] {
                    let Ok(s) = Switch::rhombus(g.leaper(), corners) else {
                        continue;
                    };
                    if s.touched(g.edges(), &index).is_ok() {
                        let key: BTreeSet<Edge<Cell>> = s.edges().into_iter().collect();
                        if seen.insert(key) {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn toy_flips() {
        let k = LeaperParams::knight();
        let g = Pseudotour::from_scarf(&knight_scarf(5));
        assert_eq!(g.cycle_count(), 4);
        let s = Switch::rhombus(k, [c(2, 0), c(3, 2), c(5, 3), c(4, 1)]).unwrap();
        let h = flip_switch(&g, &s).unwrap();
        assert_eq!(h.cycle_count(), 3);
        assert!(matches!(flip_switch(&h, &s), Err(Error::NotASwitch(_))));
        let out = flip_rhombus_system(&g, &[s.clone()]).unwrap();
        assert_eq!(out.flipped, vec![0]);
        assert!(matches!(
            flip_rhombus_system(&g, &[s.clone(), s]),
            Err(Error::NotEdgeDisjoint(_))
        ));

        let mut disjoint: Vec<Switch> = Vec::new();
        for r in all_rhombi(&g) {
            let trial: Vec<Switch> = disjoint.iter().cloned().chain([r.clone()]).collect();
            if check_edge_disjoint(&trial).is_ok() {
                disjoint.push(r);
            }
        }
        let index = g.cycles().cycle_index();
        let touched: BTreeSet<usize> = disjoint
            .iter()
            .flat_map(|s| s.touched(g.edges(), &index).unwrap())
            .collect();
        match flip_rhombus_system(&g, &disjoint) {
            Ok(out) => {
                assert_eq!(out.flipped.len(), touched.len() - 1);
                assert!(out.flipped.len() < disjoint.len());
                assert_eq!(out.pseudotour.cycle_count(), 4 - out.flipped.len());
            }
            Err(e) => assert_eq!(e, Error::NotConnecting),
        }
    }

    #[test]
    fn zebra_comb_cells() {
        let z = lp(2, 3);
        let loom = build_loom(z, 2).unwrap();
        let rows = Interval::of_size(5).unwrap();
        let scarf = build_scarf(
            &loom,
            rows,
            &build_projection_graph(z.pair(), rows).edge_set(),
        )
        .unwrap();
        let comb = build_comb(&scarf, 0, &shaft(z, 7).unwrap()).unwrap();
        let expected = [
            (7, 0),
            (9, 3),
            (11, 0),
            (13, 3),
            (15, 0),
            (17, 3),
            (19, 0),
            (16, 2),
            (13, 0),
            (10, 2),
        ];
        let got: Vec<(i64, i64)> = comb.switch.cells().iter().map(|c| (c.x, c.y)).collect();
        assert_eq!(got, expected);
        let before = Pseudotour::from_scarf(&scarf);
        let after = flip_switch(&before, &comb.switch).unwrap();
        assert_eq!(before.cycle_count() - after.cycle_count(), 4);
    }

    #[test]
    fn knight_comb_and_pure_index() {
        let k = LeaperParams::knight();
        let loom = build_loom(k, 2).unwrap();
        let t = tour_pkt(7).unwrap();
        let scarf = build_scarf(&loom, t.interval(), t.edges()).unwrap();
        let comb = build_comb(&scarf, 0, &shaft(k, 1).unwrap()).unwrap();
        assert!(comb_touch_signatures(&scarf, &comb).unwrap().len() >= 2);
        let pure = scarf
            .rows()
            .iter()
            .find(|&v| mixed_neighbors(&scarf, v).is_none())
            .unwrap();
        assert_eq!(
            build_comb(&scarf, pure, &shaft(k, 1).unwrap()).unwrap_err(),
            Error::NotMixed(pure)
        );
    }

    #[test]
    fn touch_sets_do_not_depend_on_pattern() {
        for l in [lp(2, 3), lp(2, 5), lp(3, 4), lp(2, 7)] {
            let loom = build_loom(l, 2).unwrap();
            let mut tables = Vec::new();
            let heights = (15..)
                .filter(|m| m % 2 == 1 && recipe_for(l.pair(), *m).is_some())
                .take(2);
            for m in heights {
                let t = projection_tour(l.pair(), m).unwrap();
                let scarf = build_scarf(&loom, t.interval(), t.edges()).unwrap();
                let h = build_hypergraph(&scarf).unwrap();
                let table: Vec<_> = h
                    .hyperedges
                    .iter()
                    .map(|e| (e.parity, e.shaft_base, e.members.clone()))
                    .collect();
                let eta = loom_stats(l).eta as usize;
                assert!(h.spanning_selection().unwrap().len() < 4 * eta);
                tables.push(table);
            }
            assert_eq!(tables[0], tables[1], "{l}");
        }
    }

    #[test]
    fn more_than_half_touched() {
        let z = lp(2, 5);
        let loom = build_loom(z, 2).unwrap();
        let t = projection_tour(z.pair(), 21).unwrap();
        let scarf = build_scarf(&loom, t.interval(), t.edges()).unwrap();
        let index = scarf.cycles().cycle_index();
        let total = scarf.cycles().len();
        let reps = mixed_representatives(&scarf);
        assert_eq!(reps.len(), 2);
        for v in reps {
            for parity in 0..2 {
                let mut touched = BTreeSet::new();
                for s in enumerate_shafts(z).iter().filter(|s| s.parity == parity) {
                    let comb = build_comb(&scarf, v, s).unwrap();
                    touched.extend(comb.switch.touched(scarf.edges(), &index).unwrap());
                }
                assert!(2 * touched.len() > total);
            }
        }
    }
}
