//! Backtracking over edge states with forced-edge propagation.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::graph::{decompose_edges, edge, CycleDecomposition, Edge, EdgeGraph, EdgeSet, Vertex};

/// Limits on a single search. Running out yields an indeterminate verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: Option<u64>,
}

impl SearchBudget {
    pub const DEFAULT_NODES: u64 = 20_000_000;

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget { max_nodes, max_seconds: None }
    }

    /// The default budget, overridden by `LEAPER_BUDGET_NODES` when set.
    pub fn from_env() -> Self {
        let nodes = std::env::var("LEAPER_BUDGET_NODES")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(Self::DEFAULT_NODES);
        SearchBudget::nodes(nodes)
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::nodes(Self::DEFAULT_NODES)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict<T> {
    Found(T),
    /// The whole search space was explored without a solution.
    Exhausted,
    Indeterminate,
}

impl<T> Verdict<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, Verdict::Found(_))
    }
}

/// A Hamiltonian cycle search outcome with the number of search nodes visited.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonSearch<V> {
    pub verdict: Verdict<Vec<V>>,
    pub nodes: u64,
}

/// Solutions collected up to a limit. `complete` means the list is exhaustive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration<T> {
    pub items: Vec<T>,
    pub complete: bool,
    /// Whether the search stopped because it reached the item limit.
    pub truncated: bool,
    pub nodes: u64,
}

impl<T> Enumeration<T> {
    pub fn count(&self) -> usize {
        self.items.len()
    }

    /// Whether the count is exact or a certified lower bound that reached the limit.
    pub fn is_decided(&self) -> bool {
        self.complete || self.truncated
    }
}

const UNKNOWN: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;

struct Problem {
    n: usize,
    ends: Vec<(usize, usize)>,
    inc: Vec<Vec<usize>>,
    /// Whether solutions must be a single cycle.
    single: bool,
}

#[derive(Clone)]
struct State {
    st: Vec<u8>,
    deg_in: Vec<u8>,
    deg_unk: Vec<u8>,
    /// For a path endpoint, the other end of its path.
    end: Vec<usize>,
    size: Vec<usize>,
    decided: usize,
}

enum Stop {
    Limit,
    Budget,
}

struct Searcher<'a> {
    pb: &'a Problem,
    budget: SearchBudget,
    start: Instant,
    nodes: u64,
    limit: usize,
    found: Vec<Vec<u8>>,
}

impl Problem {
    fn other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.ends[e];
        if a == v {
            b
        } else {
            a
        }
    }

    fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.inc[a].iter().copied().find(|&e| self.other(e, a) == b)
    }
}

impl State {
    fn new(pb: &Problem) -> Self {
        State {
            st: vec![UNKNOWN; pb.ends.len()],
            deg_in: vec![0; pb.n],
            deg_unk: pb.inc.iter().map(|i| i.len() as u8).collect(),
            end: (0..pb.n).collect(),
            size: vec![1; pb.n],
            decided: 0,
        }
    }

    /// Sets an edge and propagates to fixpoint. Returns false on contradiction.
    fn assign(&mut self, pb: &Problem, e: usize, val: u8) -> bool {
        let mut queue = vec![(e, val)];
        while let Some((e, val)) = queue.pop() {
            if self.st[e] != UNKNOWN {
                if self.st[e] != val {
                    return false;
                }
                continue;
            }
            let (u, v) = pb.ends[e];
            self.st[e] = val;
            self.decided += 1;
            self.deg_unk[u] -= 1;
            self.deg_unk[v] -= 1;
            if val == IN {
                if self.deg_in[u] >= 2 || self.deg_in[v] >= 2 {
                    return false;
                }
                self.deg_in[u] += 1;
                self.deg_in[v] += 1;
                let (a, b) = (self.end[u], self.end[v]);
                if a == v {
                    // Closing a cycle.
                    if pb.single && self.size[u] != pb.n {
                        return false;
                    }
                } else {
                    let size = self.size[a] + self.size[b];
                    self.end[a] = b;
                    self.end[b] = a;
                    self.size[a] = size;
                    self.size[b] = size;
                    if pb.single && size < pb.n {
                        if let Some(c) = pb.edge_between(a, b) {
                            if self.st[c] == UNKNOWN {
                                queue.push((c, OUT));
                            }
                        }
                    }
                }
            }
            for w in [u, v] {
                let (i, k) = (self.deg_in[w], self.deg_unk[w]);
                if i + k < 2 {
                    return false;
                }
                if k > 0 && (i == 2 || i + k == 2) {
                    let forced = if i == 2 { OUT } else { IN };
                    for &f in &pb.inc[w] {
                        if self.st[f] == UNKNOWN {
                            queue.push((f, forced));
                        }
                    }
                }
            }
        }
        true
    }

    /// The vertex with the fewest undecided edges, and its first undecided edge.
    fn branch_edge(&self, pb: &Problem) -> Option<usize> {
        let v = (0..pb.n).filter(|&v| self.deg_unk[v] > 0 && self.deg_in[v] < 2).min_by_key(|&v| self.deg_unk[v])?;
        pb.inc[v].iter().copied().find(|&e| self.st[e] == UNKNOWN)
    }
}

impl Searcher<'_> {
    fn run(&mut self, state: State) -> Result<(), Stop> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return Err(Stop::Budget);
        }
        if let Some(s) = self.budget.max_seconds {
            if self.nodes % 4096 == 0 && self.start.elapsed() > Duration::from_secs(s) {
                return Err(Stop::Budget);
            }
        }
        let Some(e) = state.branch_edge(self.pb) else {
            if state.deg_in.iter().all(|&d| d == 2) {
                self.found.push(state.st);
                if self.found.len() >= self.limit {
                    return Err(Stop::Limit);
                }
            }
            return Ok(());
        };
        for val in [IN, OUT] {
            let mut next = state.clone();
            if next.assign(self.pb, e, val) {
                self.run(next)?;
            }
        }
        Ok(())
    }
}

struct Indexed<V> {
    edges: Vec<Edge<V>>,
}

fn index_graph<V: Vertex>(g: &EdgeGraph<V>, single: bool) -> (Problem, Indexed<V>) {
    let verts: Vec<V> = g.vertices().collect();
    let pos = |v: V| verts.binary_search(&v).expect("vertex of the graph");
    let edges: Vec<Edge<V>> = g.edges().collect();
    let mut inc = vec![Vec::new(); verts.len()];
    let ends: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (pos(a), pos(b))).collect();
    for (i, &(a, b)) in ends.iter().enumerate() {
        inc[a].push(i);
        inc[b].push(i);
    }
    (Problem { n: verts.len(), ends, inc, single }, Indexed { edges })
}

/// Core driver: solutions as chosen-edge sets, with forced edges fixed up front.
fn solve<V: Vertex>(
    g: &EdgeGraph<V>,
    single: bool,
    forced: &[Edge<V>],
    limit: usize,
    budget: SearchBudget,
) -> Enumeration<EdgeSet<V>> {
    let (pb, ix) = index_graph(g, single);
    let empty = |complete| Enumeration { items: Vec::new(), complete, truncated: false, nodes: 0 };
    if pb.n == 0 || limit == 0 {
        return empty(pb.n == 0);
    }
    let mut state = State::new(&pb);
    let mut ok = true;
    for v in 0..pb.n {
        if pb.inc[v].len() < 2 {
            ok = false;
        }
    }
    for &(a, b) in forced {
        match ix.edges.binary_search(&edge(a, b)) {
            Ok(e) => ok = ok && state.assign(&pb, e, IN),
            Err(_) => ok = false,
        }
    }
    if ok {
        // Vertices of degree two force their edges before the first branch.
        for v in 0..pb.n {
            if pb.inc[v].len() == 2 {
                for &e in &pb.inc[v] {
                    ok = ok && state.assign(&pb, e, IN);
                }
            }
        }
    }
    if !ok {
        return Enumeration { items: Vec::new(), complete: true, truncated: false, nodes: 1 };
    }
    let mut s = Searcher { pb: &pb, budget, start: Instant::now(), nodes: 0, limit, found: Vec::new() };
    let stop = s.run(state).err();
    let items = s
        .found
        .iter()
        .map(|st| st.iter().enumerate().filter(|(_, &x)| x == IN).map(|(e, _)| ix.edges[e]).collect())
        .collect();
    Enumeration {
        items,
        complete: stop.is_none(),
        truncated: matches!(stop, Some(Stop::Limit)),
        nodes: s.nodes,
    }
}

fn tour_sequence<V: Vertex>(g: &EdgeGraph<V>, edges: &EdgeSet<V>) -> Vec<V> {
    decompose_edges(g.vertices(), edges).expect("search yields a tour").cycles.remove(0)
}

/// Exact Hamiltonian cycle search.
pub fn find_hamiltonian<V: Vertex>(g: &EdgeGraph<V>, budget: SearchBudget) -> HamiltonSearch<V> {
    find_hamiltonian_with(g, &[], budget)
}

/// Hamiltonian cycle search among cycles containing every edge of `forced`.
pub fn find_hamiltonian_with<V: Vertex>(g: &EdgeGraph<V>, forced: &[Edge<V>], budget: SearchBudget) -> HamiltonSearch<V> {
    let r = solve(g, true, forced, 1, budget);
    let verdict = match (r.items.first(), r.complete) {
        (Some(t), _) => Verdict::Found(tour_sequence(g, t)),
        (None, true) => Verdict::Exhausted,
        (None, false) => Verdict::Indeterminate,
    };
    HamiltonSearch { verdict, nodes: r.nodes }
}

/// All Hamiltonian cycles as edge sets, stopping once `limit` are found.
pub fn enumerate_hamiltonian<V: Vertex>(g: &EdgeGraph<V>, limit: usize, budget: SearchBudget) -> Enumeration<EdgeSet<V>> {
    solve(g, true, &[], limit, budget)
}

/// Number of Hamiltonian cycles, exact up to `limit`; `None` when the budget ran out first.
pub fn count_hamiltonian<V: Vertex>(g: &EdgeGraph<V>, limit: usize, budget: SearchBudget) -> Option<usize> {
    let r = enumerate_hamiltonian(g, limit, budget);
    r.is_decided().then(|| r.count())
}

/// All spanning subgraphs in which every vertex has degree two.
pub fn enumerate_pseudotours<V: Vertex>(
    g: &EdgeGraph<V>,
    limit: usize,
    budget: SearchBudget,
) -> Enumeration<CycleDecomposition<V>> {
    let r = solve(g, false, &[], limit, budget);
    Enumeration {
        items: r.items.iter().map(|e| decompose_edges(g.vertices(), e).expect("degree two")).collect(),
        complete: r.complete,
        truncated: r.truncated,
        nodes: r.nodes,
    }
}
