//! Intervals, cells, undirected graphs and the degree-two verification kernel.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Debug, Display};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{CoprimePair, LeaperParams};

/// The integer interval `[lo; hi]`, never empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// `[0; n - 1]`.
    pub fn of_size(n: i64) -> Result<Self> {
        Interval::new(0, n - 1)
    }

    pub fn with_len(lo: i64, len: i64) -> Result<Self> {
        Interval::new(lo, lo + len - 1)
    }

    pub fn len(&self) -> i64 {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, u: i64) -> bool {
        self.lo <= u && u <= self.hi
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    /// The `k` smallest elements, or the whole interval when `k` exceeds its size.
    pub fn first(&self, k: i64) -> Interval {
        Interval {
            lo: self.lo,
            hi: (self.lo + k - 1).min(self.hi),
        }
    }

    /// The `k` largest elements, or the whole interval when `k` exceeds its size.
    pub fn last(&self, k: i64) -> Interval {
        Interval {
            lo: (self.hi - k + 1).max(self.lo),
            hi: self.hi,
        }
    }

    pub fn shift(&self, by: i64) -> Interval {
        Interval {
            lo: self.lo + by,
            hi: self.hi + by,
        }
    }
}

impl Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {}]", self.lo, self.hi)
    }
}

/// A board cell; `x` is the column, `y` the row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const fn new(x: i64, y: i64) -> Self {
        Cell { x, y }
    }

    pub fn parity(&self) -> i64 {
        (self.x + self.y).rem_euclid(2)
    }

    pub fn transpose(&self) -> Cell {
        Cell {
            x: self.y,
            y: self.x,
        }
    }
}

impl Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Vertex types usable in [`EdgeGraph`].
pub trait Vertex: Copy + Ord + Debug + Display {}
impl<T: Copy + Ord + Debug + Display> Vertex for T {}

/// An unordered edge stored with its endpoints sorted.
pub type Edge<V> = (V, V);
pub type EdgeSet<V> = BTreeSet<Edge<V>>;

pub fn edge<V: Ord>(u: V, v: V) -> Edge<V> {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

fn show_edge<V: Display>(e: &Edge<V>) -> String {
    format!("{}-{}", e.0, e.1)
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGraph<V: Vertex> {
    adj: BTreeMap<V, Vec<V>>,
    edge_count: usize,
}

impl<V: Vertex> EdgeGraph<V> {
    pub fn new(vertices: impl IntoIterator<Item = V>) -> Self {
        EdgeGraph {
            adj: vertices.into_iter().map(|v| (v, Vec::new())).collect(),
            edge_count: 0,
        }
    }

    /// Builds a graph on `vertices` from `edges`; duplicate edges are merged.
    pub fn from_edges(
        vertices: impl IntoIterator<Item = V>,
        edges: impl IntoIterator<Item = Edge<V>>,
    ) -> Result<Self> {
        let mut g = EdgeGraph::new(vertices);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: V, v: V) -> Result<bool> {
        if u == v || !self.adj.contains_key(&u) || !self.adj.contains_key(&v) {
            return Err(Error::NotAnEdge(show_edge(&(u, v))));
        }
        let nu = self.adj.get_mut(&u).unwrap();
        match nu.binary_search(&v) {
            Ok(_) => return Ok(false),
            Err(pos) => nu.insert(pos, v),
        }
        let nv = self.adj.get_mut(&v).unwrap();
        let pos = nv.binary_search(&u).unwrap_err();
        nv.insert(pos, u);
        self.edge_count += 1;
        Ok(true)
    }

    pub fn remove_edge(&mut self, u: V, v: V) -> bool {
        let Some(nu) = self.adj.get_mut(&u) else {
            return false;
        };
        let Ok(pos) = nu.binary_search(&v) else {
            return false;
        };
        nu.remove(pos);
        let nv = self.adj.get_mut(&v).unwrap();
        let pos = nv.binary_search(&u).unwrap();
        nv.remove(pos);
        self.edge_count -= 1;
        true
    }

    pub fn has_vertex(&self, v: V) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: V, v: V) -> bool {
        self.adj
            .get(&u)
            .is_some_and(|n| n.binary_search(&v).is_ok())
    }

    pub fn neighbors(&self, v: V) -> &[V] {
        self.adj.get(&v).map(|n| n.as_slice()).unwrap_or(&[])
    }

    pub fn degree(&self, v: V) -> usize {
        self.neighbors(v).len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = V> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Edges in lexicographic order, each with its smaller endpoint first.
    pub fn edges(&self) -> impl Iterator<Item = Edge<V>> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, n)| n.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn edge_set(&self) -> EdgeSet<V> {
        self.edges().collect()
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for v in self.vertices() {
            if !seen.insert(v) {
                continue;
            }
            count += 1;
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
        }
        count
    }
}

/// Short or long edge of a projection graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Short,
    Long,
}

impl EdgeKind {
    pub fn other(self) -> EdgeKind {
        match self {
            EdgeKind::Short => EdgeKind::Long,
            EdgeKind::Long => EdgeKind::Short,
        }
    }
}

/// Classifies `uv` as a short or long edge of the projection graph, if it is one.
pub fn edge_kind(pair: CoprimePair, u: i64, v: i64) -> Option<EdgeKind> {
    let diff = (u - v).abs();
    if diff == pair.a() {
        Some(EdgeKind::Short)
    } else if diff == pair.b() {
        Some(EdgeKind::Long)
    } else {
        None
    }
}

/// The projection graph on `interval`: `u` and `v` adjacent iff `|u - v|` is `a` or `b`.
pub fn build_projection_graph(pair: CoprimePair, interval: Interval) -> EdgeGraph<i64> {
    let mut g = EdgeGraph::new(interval.iter());
    for u in interval.iter() {
        for step in [pair.a(), pair.b()] {
            if interval.contains(u + step) {
                g.add_edge(u, u + step)
                    .expect("endpoints lie in the interval");
            }
        }
    }
    g
}

/// Whether two cells are joined by a move of the leaper.
pub fn is_leaper_move(leaper: LeaperParams, a: Cell, b: Cell) -> bool {
    let dx = (a.x - b.x).abs();
    let dy = (a.y - b.y).abs();
    (dx == leaper.p() && dy == leaper.q()) || (dx == leaper.q() && dy == leaper.p())
}

/// The leaper graph on columns `xs` and rows `ys`.
pub fn build_leaper_graph(leaper: LeaperParams, xs: Interval, ys: Interval) -> EdgeGraph<Cell> {
    let cells = ys
        .iter()
        .flat_map(|y| xs.iter().map(move |x| Cell::new(x, y)));
    let mut g = EdgeGraph::new(cells);
    let (p, q) = (leaper.p(), leaper.q());
    let moves = [(p, q), (q, p), (p, -q), (q, -p)];
    for y in ys.iter() {
        for x in xs.iter() {
            for (dx, dy) in moves {
                let (nx, ny) = (x + dx, y + dy);
                if xs.contains(nx) && ys.contains(ny) {
                    g.add_edge(Cell::new(x, y), Cell::new(nx, ny))
                        .expect("cells lie on the board");
                }
            }
        }
    }
    g
}

/// The projections of a leaper edge onto the column and row axes.
pub fn projections(a: Cell, b: Cell) -> (Edge<i64>, Edge<i64>) {
    (edge(a.x, b.x), edge(a.y, b.y))
}

/// The edges joining corresponding elements of `first` and `second`.
pub fn pencil(pair: CoprimePair, first: Interval, second: Interval) -> Result<Vec<Edge<i64>>> {
    if first.len() != second.len() {
        return Err(Error::PencilSizeMismatch(first.len(), second.len()));
    }
    let offset = second.lo - first.lo;
    if offset.abs() != pair.a() && offset.abs() != pair.b() {
        return Err(Error::PencilOffset(offset));
    }
    Ok(first.iter().map(|u| edge(u, u + offset)).collect())
}

/// A spanning subgraph with every vertex of degree two, split into its cycles.
///
/// Each cycle starts at its minimum vertex and proceeds towards the smaller of
/// that vertex's two neighbours; cycles are ordered by their first vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleDecomposition<V> {
    pub cycles: Vec<Vec<V>>,
}

impl<V: Vertex> CycleDecomposition<V> {
    pub fn is_tour(&self) -> bool {
        self.cycles.len() == 1
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> EdgeSet<V> {
        self.cycles.iter().flat_map(|c| cycle_edges(c)).collect()
    }

    /// Map from each vertex to the index of its cycle.
    pub fn cycle_index(&self) -> BTreeMap<V, usize> {
        let mut map = BTreeMap::new();
        for (i, c) in self.cycles.iter().enumerate() {
            for &v in c {
                map.insert(v, i);
            }
        }
        map
    }
}

/// The closing edges of a vertex sequence read as a cycle.
pub fn cycle_edges<V: Vertex>(cycle: &[V]) -> Vec<Edge<V>> {
    let n = cycle.len();
    (0..n).map(|i| edge(cycle[i], cycle[(i + 1) % n])).collect()
}

/// Rotates and orients a cycle into canonical form.
pub fn canonical_cycle<V: Vertex>(cycle: &[V]) -> Vec<V> {
    let n = cycle.len();
    if n == 0 {
        return Vec::new();
    }
    let start = (0..n).min_by_key(|&i| cycle[i]).unwrap();
    let next = cycle[(start + 1) % n];
    let prev = cycle[(start + n - 1) % n];
    if next <= prev {
        (0..n).map(|i| cycle[(start + i) % n]).collect()
    } else {
        (0..n).map(|i| cycle[(start + n - i) % n]).collect()
    }
}

/// Splits `subset` into cycles, requiring degree exactly two at every vertex of `graph`.
pub fn decompose_degree2<V: Vertex>(
    graph: &EdgeGraph<V>,
    subset: &EdgeSet<V>,
) -> Result<CycleDecomposition<V>> {
    for &(u, v) in subset {
        if !graph.has_edge(u, v) {
            return Err(Error::NotAnEdge(show_edge(&(u, v))));
        }
    }
    decompose_edges(graph.vertices(), subset)
}

/// Splits an edge set into cycles over the given vertex set without a host graph.
pub fn decompose_edges<V: Vertex>(
    vertices: impl IntoIterator<Item = V>,
    edges: &EdgeSet<V>,
) -> Result<CycleDecomposition<V>> {
    let mut adj: BTreeMap<V, Vec<V>> = vertices.into_iter().map(|v| (v, Vec::new())).collect();
    for &(u, v) in edges {
        for (a, b) in [(u, v), (v, u)] {
            match adj.get_mut(&a) {
                Some(n) => n.push(b),
                None => return Err(Error::NotAnEdge(show_edge(&(u, v)))),
            }
        }
    }
    // Report the most deficient vertex so an isolated vertex is named before its neighbours.
    let worst = adj
        .iter()
        .filter(|(_, n)| n.len() != 2)
        .min_by_key(|(_, n)| n.len());
    if let Some((v, n)) = worst {
        return Err(Error::DegreeViolation {
            vertex: v.to_string(),
            degree: n.len(),
        });
    }
    let mut seen = BTreeSet::new();
    let mut cycles = Vec::new();
    for (&start, _) in &adj {
        if seen.contains(&start) {
            continue;
        }
        let mut cycle = vec![start];
        seen.insert(start);
        let mut prev = start;
        let mut cur = adj[&start][0].min(adj[&start][1]);
        while cur != start {
            seen.insert(cur);
            cycle.push(cur);
            let n = &adj[&cur];
            let next = if n[0] == prev { n[1] } else { n[0] };
            prev = cur;
            cur = next;
        }
        cycles.push(cycle);
    }
    Ok(CycleDecomposition { cycles })
}

/// Checks that `edges` is a single cycle through every vertex and returns it canonically.
pub fn verify_tour<V: Vertex>(
    vertices: impl IntoIterator<Item = V>,
    edges: &EdgeSet<V>,
) -> Result<Vec<V>> {
    let dec = decompose_edges(vertices, edges)?;
    if dec.cycles.len() != 1 {
        return Err(Error::NotATour(dec.cycles.len()));
    }
    Ok(dec.cycles.into_iter().next().unwrap())
}
