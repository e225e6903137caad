use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cell, EdgeKind, Interval};
use crate::loom::{build_loom, find_bracket, shaft, Loom};
use crate::params::LeaperParams;
use crate::scarf::{build_scarf, decompose_braids, Scarf};
use crate::switch::{
    braid_rhombus_system, build_comb, build_hypergraph_with, check_edge_disjoint,
    comb_touch_signatures, flip_rhombus_system, flip_switch, Comb, Hyperedge, Pseudotour, Switch,
    UnionFind,
};

use super::board::BoardTour;
use super::pattern::{build_pattern, knight_pattern, part_minimum, required_copies, PatternLayout};
use super::thresholds::{partition_height, stable_start, PartitionPlan};

/// The combs to flip: one hyperedge per leading part, forming a minimal connected
/// spanning subgraph of the signature hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignaturePlan {
    pub hyperedges: Vec<Hyperedge>,
}

impl SignaturePlan {
    /// Number of parts that need a comb (at least one).
    pub fn ell(&self) -> usize {
        self.hyperedges.len().max(1)
    }
}

fn comb_shafts_p1(leaper: LeaperParams) -> [i64; 2] {
    [1, 2 * leaper.q() - 2]
}

/// Measures the signature hypergraph on a pattern of the minimum part size and selects
/// a spanning set of hyperedges.
pub fn signature_plan(leaper: LeaperParams) -> Result<SignaturePlan> {
    if leaper.is_knight() {
        return Ok(SignaturePlan {
            hyperedges: Vec::new(),
        });
    }
    let loom = build_loom(leaper, 2)?;
    let rows = Interval::of_size(part_minimum(leaper))?;
    let layout = build_pattern(leaper, rows, required_copies(leaper))?;
    let scarf = build_scarf(&loom, rows, layout.tour.edges())?;
    let mixed = layout.mixed_in_copy(layout.comb_copy);
    if leaper.p() == 1 {
        let v = *mixed
            .first()
            .ok_or_else(|| Error::Assembly("comb copy has no mixed vertex".into()))?;
        let mut hyperedges = Vec::new();
        for base in comb_shafts_p1(leaper) {
            let comb = build_comb(&scarf, v, &shaft(leaper, base)?)?;
            let members = comb_touch_signatures(&scarf, &comb)?;
            hyperedges.push(Hyperedge {
                parity: v.rem_euclid(2),
                shaft_base: base,
                index: v,
                members,
            });
        }
        return Ok(SignaturePlan { hyperedges });
    }
    let mut indices = Vec::new();
    for parity in 0..2 {
        let v = mixed
            .iter()
            .copied()
            .find(|v| v.rem_euclid(2) == parity)
            .ok_or_else(|| {
                Error::Assembly(format!("comb copy has no mixed vertex of parity {parity}"))
            })?;
        indices.push(v);
    }
    let h = build_hypergraph_with(&scarf, &indices)?;
    let chosen = h.spanning_selection()?;
    Ok(SignaturePlan {
        hyperedges: chosen
            .into_iter()
            .map(|i| h.hyperedges[i].clone())
            .collect(),
    })
}

/// A tour of the board of width `4pq` and height `m`.
pub fn tour_4pq(leaper: LeaperParams, m: i64) -> Result<BoardTour> {
    tour_4pq_with_plan(leaper, m, &signature_plan(leaper)?)
}

/// A tour of the `m × 4pq` board that contains a universal joint.
pub fn tour_4pq_with_joint(leaper: LeaperParams, m: i64) -> Result<BoardTour> {
    let t = tour_4pq(leaper, m)?;
    let (a, b) = t.joint().ok_or(Error::NoJoint)?;
    let mut t = t;
    t.trace.push(format!("joint {a}-{b}"));
    Ok(t)
}

/// [`tour_4pq`] with a precomputed signature plan, for building many heights.
pub fn tour_4pq_with_plan(leaper: LeaperParams, m: i64, plan: &SignaturePlan) -> Result<BoardTour> {
    let part_min = part_minimum(leaper);
    let ell = plan.ell() as i64;
    let parts = partition_height(m, part_min, ell).map_err(|_| Error::BelowThreshold {
        n: m,
        bound: stable_start(part_min, ell),
    })?;
    if leaper.is_knight() {
        return knight_tour(m, &parts);
    }
    let loom = build_loom(leaper, 2)?;
    let (p, q) = (leaper.p(), leaper.q());
    let starts = parts.starts();
    let mut trace = vec![format!("parts {:?}", parts.parts)];
    let mut pieces = Vec::new();
    let mut combs: Vec<Comb> = Vec::new();
    let mut rhombi: Vec<Switch> = Vec::new();
    for (i, (&lo, &len)) in starts.iter().zip(&parts.parts).enumerate() {
        let rows = Interval::with_len(lo, len)?;
        let layout = build_pattern(leaper, rows, required_copies(leaper))?;
        let scarf = build_scarf(&loom, rows, layout.tour.edges())?;
        if let Some(e) = plan.hyperedges.get(i) {
            let comb = part_comb(&scarf, &layout, e)?;
            trace.push(format!(
                "part {i}: comb index {} on shaft {}",
                comb.index, comb.shaft.base
            ));
            combs.push(comb);
        }
        if p >= 2 {
            let designated: Vec<_> = layout
                .chain_copies
                .iter()
                .filter_map(|&c| layout.designated(c))
                .collect();
            for braid in decompose_braids(&scarf)? {
                rhombi.extend(braid_rhombus_system(&scarf, &braid, &designated)?);
            }
        }
        pieces.push(Pseudotour::from_scarf(&scarf));
    }
    let w = if 3 * p < q { q - 1 } else { (p + q) / 2 };
    for &next in &starts[1..] {
        rhombi.extend(boundary_rhombi(&loom, next + w)?);
    }
    let mut all: Vec<Switch> = combs.iter().map(|c| c.switch.clone()).collect();
    all.extend(rhombi.iter().cloned());
    check_edge_disjoint(&all)?;

    let mut g = Pseudotour::stack(&pieces)?;
    for comb in &combs {
        let before = g.cycle_count();
        g = flip_switch(&g, &comb.switch)?;
        let merged = before - g.cycle_count();
        if merged as i64 != p + q - 1 {
            return Err(Error::Assembly(format!(
                "comb {} merged {} cycles",
                comb.index,
                merged + 1
            )));
        }
    }
    trace.push(format!("{} cycles after combs", g.cycle_count()));

    let cycles = g.cycles();
    let index = cycles.cycle_index();
    let live: Vec<Switch> = rhombi
        .into_iter()
        .filter(|s| s.touched(g.edges(), &index).is_ok())
        .collect();
    let mut uf = UnionFind::new(cycles.len());
    let mut components = cycles.len();
    for s in &live {
        let t = s.touched(g.edges(), &index)?;
        if uf.union(t[0], t[1]) {
            components -= 1;
        }
    }
    if components != 1 {
        return Err(Error::Assembly(format!(
            "{} cycles remain in {components} components",
            cycles.len()
        )));
    }
    let outcome = flip_rhombus_system(&g, &live)?;
    trace.push(format!(
        "flipped {} of {} rhombi",
        outcome.flipped.len(),
        live.len()
    ));
    BoardTour::new(leaper, 4 * p * q, m, outcome.pseudotour.into_edges(), trace)
}

/// A comb in the part's comb copy whose touch set matches the selected hyperedge.
fn part_comb(scarf: &Scarf, layout: &PatternLayout, e: &Hyperedge) -> Result<Comb> {
    let leaper = scarf.leaper();
    let s = shaft(leaper, e.shaft_base)?;
    let mixed = layout.mixed_in_copy(layout.comb_copy);
    for v in mixed {
        if leaper.p() >= 2 && v.rem_euclid(2) != e.parity {
            continue;
        }
        let Ok(comb) = build_comb(scarf, v, &s) else {
            continue;
        };
        if leaper.p() == 1 || comb_touch_signatures(scarf, &comb)? == e.members {
            return Ok(comb);
        }
    }
    Err(Error::Assembly(format!(
        "no comb on shaft {} matches the plan",
        e.shaft_base
    )))
}

/// The two rhombi per loom cycle joining the braids across a part boundary, with `w1`
/// the row at position `w` of the upper part.
fn boundary_rhombi(loom: &Loom, w1: i64) -> Result<Vec<Switch>> {
    let leaper = loom.leaper();
    let (p, q) = (leaper.p(), leaper.q());
    let ws = [w1, w1 - p, w1 - p - q, w1 - q];
    let mut out = Vec::new();
    for cycle in &loom.cycles().cycles {
        let u = find_bracket(leaper, cycle, EdgeKind::Long)?;
        let cell = |i: usize, j: usize| Cell::new(u[i], ws[j]);
        out.push(Switch::rhombus(
            leaper,
            [cell(0, 0), cell(1, 1), cell(2, 2), cell(3, 3)],
        )?);
        out.push(Switch::rhombus(
            leaper,
            [cell(0, 2), cell(1, 3), cell(2, 0), cell(3, 1)],
        )?);
    }
    Ok(out)
}

fn knight_tour(m: i64, parts: &PartitionPlan) -> Result<BoardTour> {
    let knight = LeaperParams::knight();
    let loom = build_loom(knight, 2)?;
    let spine = shaft(knight, 1)?;
    let mut pieces = Vec::new();
    let mut scarves = Vec::new();
    for (&lo, &len) in parts.starts().iter().zip(&parts.parts) {
        let rows = Interval::with_len(lo, len)?;
        let pattern = knight_pattern(rows)?;
        let scarf = build_scarf(&loom, rows, pattern.edges())?;
        pieces.push(Pseudotour::from_scarf(&scarf));
        scarves.push(scarf);
    }
    let mut g = Pseudotour::stack(&pieces)?;
    let c = Cell::new;
    for scarf in &scarves {
        let a = scarf.rows().lo;
        g = flip_switch(
            &g,
            &Switch::rhombus(knight, [c(2, a), c(3, a + 2), c(5, a + 3), c(4, a + 1)])?,
        )?;
        let comb = build_comb(scarf, a, &spine)?;
        g = flip_switch(&g, &comb.switch)?;
    }
    for scarf in &scarves[..scarves.len() - 1] {
        let b = scarf.rows().hi;
        g = flip_switch(
            &g,
            &Switch::rhombus(knight, [c(1, b), c(3, b - 1), c(2, b + 1), c(0, b + 2)])?,
        )?;
    }
    let trace = vec![
        format!("parts {:?}", parts.parts),
        "knight rhombus and comb per part".into(),
    ];
    BoardTour::new(knight, 8, m, g.into_edges(), trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knight_small() {
        let k = LeaperParams::knight();
        for m in [5, 7, 9, 10, 11, 12, 14, 15] {
            let t = tour_4pq(k, m).unwrap_or_else(|e| panic!("m={m}: {e}"));
            assert_eq!((t.width(), t.height()), (8, m));
        }
        assert!(matches!(tour_4pq(k, 4), Err(Error::BelowThreshold { .. })));
        let t = tour_4pq_with_joint(k, 10).unwrap();
        assert_eq!(t.joint(), Some((Cell::new(1, 1), Cell::new(0, 3))));
    }

    #[test]
    fn zebra_and_giraffe() {
        for (p, q) in [(2, 3), (1, 4)] {
            let l = LeaperParams::new(p, q).unwrap();
            let plan = signature_plan(l).unwrap();
            let bound = stable_start(part_minimum(l), plan.ell() as i64);
            for m in [bound, bound + 1] {
                let t =
                    tour_4pq_with_plan(l, m, &plan).unwrap_or_else(|e| panic!("{l} m={m}: {e}"));
                assert_eq!(t.height(), m);
                assert!(t.joint().is_some(), "{l} m={m}");
            }
        }
    }
}
