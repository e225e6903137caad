//! Independent checkers shared by the acceptance and property targets. Nothing here calls
//! the library's own verification code.

#![allow(dead_code)]

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use leaper_core::graph::{edge, Cell, EdgeKind, EdgeSet};
use leaper_core::loom::{build_loom, enumerate_shafts};
use leaper_core::projection::{build_ladder, mu_pi_bound, projection_tour};
use leaper_core::scarf::{build_scarf, Scarf};
use leaper_core::switch::{build_comb, flip_switch, mixed_neighbors, Pseudotour, Switch};
use leaper_core::{CoprimePair, Interval, LeaperParams};
use rand::seq::SliceRandom;
use rand::Rng;

/// Cycles of a graph in which every vertex of `vertices` must have degree exactly two.
pub fn cycles_of<V: Copy + Ord>(vertices: &[V], edges: impl IntoIterator<Item = (V, V)>) -> Result<Vec<Vec<V>>, String> {
    let mut adj: BTreeMap<V, Vec<V>> = vertices.iter().map(|&v| (v, Vec::new())).collect();
    let mut seen_edges = BTreeSet::new();
    for (u, v) in edges {
        let key = if u < v { (u, v) } else { (v, u) };
        if u == v || !seen_edges.insert(key) {
            return Err("loop or repeated edge".into());
        }
        adj.get_mut(&u).ok_or("edge leaves the vertex set")?.push(v);
        adj.get_mut(&v).ok_or("edge leaves the vertex set")?.push(u);
    }
    if adj.values().any(|n| n.len() != 2) {
        return Err("a vertex does not have degree two".into());
    }
    let mut done = BTreeSet::new();
    let mut out = Vec::new();
    for &start in vertices {
        if done.contains(&start) {
            continue;
        }
        let mut cycle = vec![start];
        done.insert(start);
        let (mut prev, mut cur) = (start, adj[&start][0]);
        while cur != start {
            cycle.push(cur);
            done.insert(cur);
            let n = &adj[&cur];
            let next = if n[0] == prev { n[1] } else { n[0] };
            prev = cur;
            cur = next;
        }
        out.push(cycle);
    }
    Ok(out)
}

pub fn board_cells(width: i64, height: i64) -> Vec<Cell> {
    (0..height).flat_map(|y| (0..width).map(move |x| Cell::new(x, y))).collect()
}

pub fn is_move(p: i64, q: i64, a: Cell, b: Cell) -> bool {
    let (dx, dy) = ((a.x - b.x).abs(), (a.y - b.y).abs());
    (dx, dy) == (p, q) || (dx, dy) == (q, p)
}

/// `Ok(())` when `edges` is a single Hamiltonian cycle of the leaper graph on the board.
pub fn check_board_tour(p: i64, q: i64, width: i64, height: i64, edges: &EdgeSet<Cell>) -> Result<(), String> {
    if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| !is_move(p, q, a, b)) {
        return Err(format!("{a}-{b} is not a move"));
    }
    let cycles = cycles_of(&board_cells(width, height), edges.iter().copied())?;
    match cycles.len() {
        1 => Ok(()),
        n => Err(format!("{n} cycles")),
    }
}

/// `Ok(())` when `edges` is a Hamiltonian cycle of `Π(a, b, [0; n - 1])`.
pub fn check_projection_tour(a: i64, b: i64, n: i64, edges: &EdgeSet<i64>) -> Result<(), String> {
    if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| (v - u).abs() != a && (v - u).abs() != b) {
        return Err(format!("{u}-{v} is not an edge"));
    }
    let verts: Vec<i64> = (0..n).collect();
    let cycles = cycles_of(&verts, edges.iter().copied())?;
    match cycles.len() {
        1 => Ok(()),
        k => Err(format!("{k} cycles")),
    }
}

/// Checks the path structure of the order-`k` ladder: degree two on the first `2ka`
/// vertices, degree one on the last `2kd`, no cycles, and position `i` of end block `j`
/// joined to position `(i + r) mod d` of end block `2k + 1 - j`.
pub fn check_ladder_endpoints(pair: CoprimePair, k: i64) -> Result<(), String> {
    let (a, b) = (pair.a(), pair.b());
    let (d, r) = (b - a, a % (b - a));
    let ladder = build_ladder(pair, k).map_err(|e| e.to_string())?;
    let n = 2 * k * b;
    let mut adj: BTreeMap<i64, Vec<i64>> = (0..n).map(|u| (u, Vec::new())).collect();
    for &(u, v) in ladder.edges() {
        adj.get_mut(&u).unwrap().push(v);
        adj.get_mut(&v).unwrap().push(u);
    }
    for (&u, nb) in &adj {
        let want = if u < 2 * k * a { 2 } else { 1 };
        if nb.len() != want {
            return Err(format!("vertex {u} has degree {}", nb.len()));
        }
    }
    let mut visited = 0;
    let mut ends = BTreeMap::new();
    for start in 2 * k * a..n {
        if ends.contains_key(&start) {
            continue;
        }
        let (mut prev, mut cur) = (start, adj[&start][0]);
        visited += 1;
        while adj[&cur].len() == 2 {
            let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
            prev = cur;
            cur = next;
            visited += 1;
        }
        visited += 1;
        ends.insert(start, cur);
        ends.insert(cur, start);
    }
    if visited != n {
        return Err(format!("paths cover {visited} of {n} vertices; the rest lie on cycles"));
    }
    let block = |j: i64| n - 2 * k * d + (j - 1) * d;
    for j in 1..=k {
        for i in 0..d {
            let want = block(2 * k + 1 - j) + (i + r) % d;
            if ends[&(block(j) + i)] != want || ends[&want] != block(j) + i {
                return Err(format!("block {j} position {i} is not joined to {want}"));
            }
        }
    }
    Ok(())
}

/// A random closed walk with `k n` moves `+m` and `k m` moves `-n`.
pub fn random_walk(rng: &mut impl Rng, m: i64, n: i64, k: i64) -> Vec<i64> {
    let mut moves: Vec<i64> = std::iter::repeat(m).take((k * n) as usize).chain(std::iter::repeat(-n).take((k * m) as usize)).collect();
    moves.shuffle(rng);
    let mut cur = 0;
    let mut out = vec![0];
    for mv in moves {
        cur += mv;
        out.push(cur);
    }
    out
}

pub fn realised(visited: &[i64], d: i64) -> bool {
    let set: BTreeSet<i64> = visited.iter().copied().collect();
    set.iter().any(|u| set.contains(&(u + d)))
}

/// The walk along the unique tour of `Π(m, n, m + n)`: `+m` when it stays inside, `-n` otherwise.
pub fn tour_walk(m: i64, n: i64) -> Vec<i64> {
    let mut cur = 0;
    let mut out = vec![0];
    for _ in 0..m + n {
        cur = if cur + m < m + n { cur + m } else { cur - n };
        out.push(cur);
    }
    out
}

/// Coprime `m < n` with `m + n <= max_sum`.
pub fn walk_pairs(max_sum: i64) -> Vec<(i64, i64)> {
    CoprimePair::all_up_to_sum(max_sum).into_iter().map(|p| (p.a(), p.b())).collect()
}

/// Whether `cycle` (a sequence of loom vertices) contains a bracket of `kind`, scanned
/// over every rotation in both orientations.
pub fn has_bracket(p: i64, q: i64, cycle: &[i64], kind: EdgeKind) -> bool {
    let n = cycle.len();
    let kind_of = |u: i64, v: i64| match (v - u).abs() {
        x if x == p => Some(EdgeKind::Short),
        x if x == q => Some(EdgeKind::Long),
        _ => None,
    };
    let other = if kind == EdgeKind::Short { EdgeKind::Long } else { EdgeKind::Short };
    for rev in [false, true] {
        let seq: Vec<i64> = if rev { cycle.iter().rev().copied().collect() } else { cycle.to_vec() };
        for s in 0..n {
            let u: Vec<i64> = (0..4).map(|i| seq[(s + i) % n]).collect();
            if kind_of(u[0], u[1]) == Some(kind)
                && kind_of(u[2], u[3]) == Some(kind)
                && kind_of(u[1], u[2]) == Some(other)
                && ((u[1] - u[0]) > 0) != ((u[3] - u[2]) > 0)
            {
                return true;
            }
        }
    }
    false
}

/// A scarf built from a random leaper with `p + q <= 9`, loom order 1 or 2 and an odd
/// height pattern tour.
pub fn random_scarf(rng: &mut impl Rng) -> Scarf {
    let leapers = LeaperParams::all_up_to_sum(9);
    let l = *leapers.choose(rng).unwrap();
    let k = rng.gen_range(1..=2);
    let bound = mu_pi_bound(l.pair());
    let m = rng.gen_range(bound..bound + 30) | 1;
    let loom = build_loom(l, k).unwrap();
    let pattern = projection_tour(l.pair(), m).unwrap();
    build_scarf(&loom, Interval::of_size(m).unwrap(), pattern.edges()).unwrap()
}

/// Every cycle visits each row exactly twice, on cells of opposite parity.
pub fn check_row_visits(width: i64, height: i64, edges: &EdgeSet<Cell>) -> Result<(), String> {
    let cycles = cycles_of(&board_cells(width, height), edges.iter().copied())?;
    for c in &cycles {
        let mut rows: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for cell in c {
            rows.entry(cell.y).or_default().push((cell.x + cell.y).rem_euclid(2));
        }
        if rows.len() as i64 != height {
            return Err(format!("a cycle misses {} rows", height - rows.len() as i64));
        }
        if let Some((y, v)) = rows.iter().find(|(_, v)| v.len() != 2 || v[0] == v[1]) {
            return Err(format!("row {y} visited with parities {v:?}"));
        }
    }
    Ok(())
}

/// A random switch candidate for the scarf: a comb on a random shaft, or a random rhombus.
pub fn random_switch(rng: &mut impl Rng, scarf: &Scarf) -> Option<Switch> {
    let l = scarf.leaper();
    let (p, q) = (l.p(), l.q());
    if rng.gen_bool(0.5) {
        let mixed: Vec<i64> = scarf.rows().iter().filter(|&v| mixed_neighbors(scarf, v).is_some()).collect();
        let v = *mixed.choose(rng)?;
        let s = enumerate_shafts(l).choose(rng)?.clone();
        build_comb(scarf, v, &s).ok().map(|c| c.switch)
    } else {
        let (width, height) = (scarf.cols().len(), scarf.rows().len());
        let c0 = Cell::new(rng.gen_range(0..width), rng.gen_range(0..height));
        let moves = [(p, q), (q, p), (p, -q), (q, -p), (-p, q), (-q, p), (-p, -q), (-q, -p)];
        let (a, b) = (*moves.choose(rng)?, *moves.choose(rng)?);
        let c1 = Cell::new(c0.x + a.0, c0.y + a.1);
        let c2 = Cell::new(c1.x + b.0, c1.y + b.1);
        let c3 = Cell::new(c2.x - a.0, c2.y - a.1);
        let inside = |c: Cell| (0..width).contains(&c.x) && (0..height).contains(&c.y);
        if ![c1, c2, c3].into_iter().all(inside) {
            return None;
        }
        Switch::rhombus(l, [c0, c1, c2, c3]).ok()
    }
}

/// Flips `s` and checks the cycle count drops by one less than the number of cycles holding
/// its in-edges. `None` when `s` is not a switch of `edges`.
pub fn check_flip(l: LeaperParams, width: i64, height: i64, edges: &EdgeSet<Cell>, s: &Switch) -> Option<Result<(), String>> {
    let cells = board_cells(width, height);
    let before = cycles_of(&cells, edges.iter().copied()).ok()?;
    let cycle_of: BTreeMap<Cell, usize> = before.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&x| (x, i))).collect();
    let ring = s.cells();
    let n = ring.len();
    let sides: Vec<(Cell, Cell)> = (0..n).map(|i| edge(ring[i], ring[(i + 1) % n])).collect();
    let even_in = sides.iter().step_by(2).all(|e| edges.contains(e)) && sides.iter().skip(1).step_by(2).all(|e| !edges.contains(e));
    let odd_in = sides.iter().skip(1).step_by(2).all(|e| edges.contains(e)) && sides.iter().step_by(2).all(|e| !edges.contains(e));
    if !even_in && !odd_in {
        return None;
    }
    let ins: Vec<(Cell, Cell)> = sides.iter().skip(if even_in { 0 } else { 1 }).step_by(2).copied().collect();
    let touched: BTreeSet<usize> = ins.iter().map(|e| cycle_of[&e.0]).collect();
    if touched.len() != ins.len() {
        return None;
    }
    let g = Pseudotour::new(l, Interval::of_size(width).ok()?, Interval::of_size(height).ok()?, edges.clone()).ok()?;
    let flipped = match flip_switch(&g, s) {
        Ok(f) => f,
        Err(e) => return Some(Err(format!("valid switch rejected: {e}"))),
    };
    Some(match cycles_of(&cells, flipped.edges().iter().copied()) {
        Err(e) => Err(e),
        Ok(after) if after.len() + touched.len() - 1 == before.len() => Ok(()),
        Ok(after) => Err(format!("{} cycles became {}, {} touched", before.len(), after.len(), touched.len())),
    })
}
