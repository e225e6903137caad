//! Exhaustive measurements of projection graph thresholds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_projection_graph, edge, EdgeGraph, EdgeSet, Interval};
use crate::params::{CoprimePair, Regime};
use crate::projection::{build_ladder, ProjectionTour};

use super::search::{count_hamiltonian, find_hamiltonian, SearchBudget, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    /// Smallest Hamiltonian size not divisible by `a + b`.
    MuDiv,
    /// Smallest size with two distinct tours.
    MuVar,
    /// Size from which every admissible size is Hamiltonian.
    MuPi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MuValue {
    Exact(i64),
    /// Nothing certified up to the search limit.
    Unknown { above: i64 },
    /// Certified bounds `lo <= value <= hi`.
    Bounds { lo: i64, hi: i64 },
}

/// What the search established for one size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: i64,
    /// `hamiltonian`, `exhausted`, `unique`, `several`, `parity` or `indeterminate`.
    pub verdict: String,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub quantity: Quantity,
    pub pair: CoprimePair,
    pub n_max: i64,
    pub value: MuValue,
    /// A tour at the reported size, when there is one.
    pub witness: Option<Vec<i64>>,
    pub certificates: Vec<Certificate>,
    pub note: Option<String>,
}

pub fn projection_graph(pair: CoprimePair, n: i64) -> EdgeGraph<i64> {
    build_projection_graph(pair, Interval::of_size(n).expect("positive size"))
}

fn cert(n: i64, verdict: &str, nodes: u64) -> Certificate {
    Certificate { n, verdict: verdict.into(), nodes }
}

/// Hamiltonicity of `Π(a, b, n)`, short-circuiting the parity obstruction of odd-odd pairs.
pub fn hamiltonicity(pair: CoprimePair, n: i64, budget: SearchBudget) -> (Verdict<Vec<i64>>, Certificate) {
    if pair.is_odd_odd() && n % 2 == 1 {
        return (Verdict::Exhausted, cert(n, "parity", 0));
    }
    let r = find_hamiltonian(&projection_graph(pair, n), budget);
    let name = match &r.verdict {
        Verdict::Found(_) => "hamiltonian",
        Verdict::Exhausted => "exhausted",
        Verdict::Indeterminate => "indeterminate",
    };
    let c = cert(n, name, r.nodes);
    (r.verdict, c)
}

pub fn search_mu_div(pair: CoprimePair, n_max: i64, budget: SearchBudget) -> SearchResult {
    let s = pair.a() + pair.b();
    let mut certificates = Vec::new();
    let mut unsure = None;
    for n in 1..=n_max {
        if n % s == 0 {
            continue;
        }
        let (v, c) = hamiltonicity(pair, n, budget);
        certificates.push(c);
        match v {
            Verdict::Found(t) => {
                let value = match unsure {
                    None => MuValue::Exact(n),
                    Some(lo) => MuValue::Bounds { lo, hi: n },
                };
                return SearchResult { quantity: Quantity::MuDiv, pair, n_max, value, witness: Some(t), certificates, note: None };
            }
            Verdict::Indeterminate => unsure = unsure.or(Some(n)),
            Verdict::Exhausted => {}
        }
    }
    let above = unsure.map_or(n_max, |lo| lo - 1);
    SearchResult { quantity: Quantity::MuDiv, pair, n_max, value: MuValue::Unknown { above }, witness: None, certificates, note: None }
}

pub fn search_mu_var(pair: CoprimePair, n_max: i64, budget: SearchBudget) -> SearchResult {
    let mut certificates = Vec::new();
    let mut unsure = None;
    for n in 1..=n_max {
        if pair.is_odd_odd() && n % 2 == 1 {
            certificates.push(cert(n, "parity", 0));
            continue;
        }
        let g = projection_graph(pair, n);
        let r = super::search::enumerate_hamiltonian(&g, 2, budget);
        let name = match (r.is_decided(), r.count()) {
            (false, _) => "indeterminate",
            (true, 0) => "exhausted",
            (true, 1) => "unique",
            _ => "several",
        };
        certificates.push(cert(n, name, r.nodes));
        if !r.is_decided() {
            unsure = unsure.or(Some(n));
        } else if r.count() >= 2 {
            let value = match unsure {
                None => MuValue::Exact(n),
                Some(lo) => MuValue::Bounds { lo, hi: n },
            };
            let witness = crate::graph::decompose_edges(g.vertices(), &r.items[1]).ok().map(|mut d| d.cycles.remove(0));
            return SearchResult { quantity: Quantity::MuVar, pair, n_max, value, witness, certificates, note: None };
        }
    }
    let note = pair.is_knight().then(|| "conjectured infinite: every size has at most one tour".to_string());
    let above = unsure.map_or(n_max, |lo| lo - 1);
    SearchResult { quantity: Quantity::MuVar, pair, n_max, value: MuValue::Unknown { above }, witness: None, certificates, note }
}

/// Smallest admissible `N` with every admissible size from `N` to `n_max` Hamiltonian,
/// reported exactly once at least `2b` consecutive admissible sizes below `n_max` succeed.
pub fn search_mu_pi(pair: CoprimePair, n_max: i64, budget: SearchBudget) -> SearchResult {
    let step = if pair.is_odd_odd() { 2 } else { 1 };
    let mut certificates = Vec::new();
    let mut last_fail = 0;
    let mut unsure = false;
    for n in (step..=n_max).step_by(step as usize) {
        let (v, c) = hamiltonicity(pair, n, budget);
        certificates.push(c);
        match v {
            Verdict::Found(_) => {}
            Verdict::Exhausted => last_fail = n,
            Verdict::Indeterminate => {
                unsure = true;
                last_fail = n;
            }
        }
    }
    let candidate = last_fail + step;
    let run = (n_max - candidate) / step + 1;
    let value = if !unsure && run >= 2 * pair.b() {
        MuValue::Exact(candidate)
    } else if candidate <= n_max {
        MuValue::Bounds { lo: if unsure { 1 } else { candidate }, hi: i64::MAX }
    } else {
        MuValue::Unknown { above: n_max }
    };
    let note = pair.is_odd_odd().then(|| "even sizes only".to_string());
    SearchResult { quantity: Quantity::MuPi, pair, n_max, value, witness: None, certificates, note }
}

/// Whether `(a, b)` satisfies the hypotheses of the large unique tour construction:
/// `2a > b`, `alpha` even and `b mod d > d / 2`.
pub fn unique_tour_admissible(pair: CoprimePair) -> bool {
    pair.regime() == Regime::Wide && pair.alpha() % 2 == 0 && 2 * pair.r() > pair.d()
}

/// The tour of `Π(a, b, 2 alpha b - d)` built from two ladders and crossing pencils.
pub fn unique_tour_construction(pair: CoprimePair) -> Result<ProjectionTour> {
    if !unique_tour_admissible(pair) {
        return Err(Error::PreconditionUnmet(format!("{pair} is not admissible")));
    }
    let (b, d, r, alpha) = (pair.b(), pair.d(), pair.r(), pair.alpha());
    let k = alpha / 2;
    let n = 2 * alpha * b - d;
    let ladder = build_ladder(pair, k)?;
    let mut edges: EdgeSet<i64> = ladder.edges().clone();
    edges.extend(ladder.edges().iter().map(|&(u, v)| edge(n - 1 - u, n - 1 - v)));
    let block = |j: i64| 2 * k * pair.a() + (j - 1) * d;
    for j in 1..2 * k {
        for i in 0..d - r {
            edges.insert(edge(block(j) + i, block(j + 2 * k) + r + i));
        }
        for i in 0..r {
            edges.insert(edge(block(j) + d - r + i, block(j + 2 * k) + i));
        }
    }
    ProjectionTour::new(pair, Interval::of_size(n)?, edges)
}

/// Builds the construction and counts all tours of its graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniqueTourCheck {
    pub pair: CoprimePair,
    pub n: i64,
    pub tour: Vec<i64>,
    /// Exact tour count up to two; `None` when the budget ran out.
    pub count: Option<usize>,
}

pub fn check_unique_tour_put(pair: CoprimePair, budget: SearchBudget) -> Result<UniqueTourCheck> {
    let tour = unique_tour_construction(pair)?;
    let count = count_hamiltonian(&projection_graph(pair, tour.len()), 2, budget);
    Ok(UniqueTourCheck { pair, n: tour.len(), tour: tour.cycle(), count })
}
