//! Tables comparing exhaustive search against closed-form predictions, one row per pair.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{build_leaper_graph, Interval};
use crate::loom::build_lstar;
use crate::params::{CoprimePair, LeaperParams, Regime};

use super::mu::{check_unique_tour_put, search_mu_div, search_mu_var, unique_tour_admissible, MuValue};
use super::search::{enumerate_pseudotours, SearchBudget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// Smallest Hamiltonian size off the multiples of `a + b`.
    Pdd,
    /// Smallest size with two tours.
    Pvt,
    /// Uniqueness of the crossing-pencil tour.
    Put,
    /// Unique pseudotour on `(1 + q) × 2q` for `p = 1`.
    Use,
    /// Unique pseudotour on `(2p + 1) × 2p(p + 1)` for `q = p + 1`.
    Usd,
    /// The loom plus its alternating rhombi stays disconnected.
    Lstar,
}

impl Check {
    pub const ALL: [Check; 6] = [Check::Pdd, Check::Pvt, Check::Put, Check::Use, Check::Usd, Check::Lstar];

    pub fn name(self) -> &'static str {
        match self {
            Check::Pdd => "pdd",
            Check::Pvt => "pvt",
            Check::Put => "put",
            Check::Use => "use",
            Check::Usd => "usd",
            Check::Lstar => "lstar",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown check {s}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Confirmed,
    Refuted,
    /// The search budget ran out first.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: Check,
    pub pair: (i64, i64),
    pub predicted: String,
    pub observed: String,
    pub status: CheckStatus,
    pub nodes: u64,
}

impl CheckRow {
    pub fn line(&self) -> String {
        let status = match self.status {
            CheckStatus::Confirmed => "confirmed",
            CheckStatus::Refuted => "REFUTED",
            CheckStatus::Unknown => "unknown",
        };
        format!(
            "{:<6} ({:>2}, {:>2})  predicted {:<24} observed {:<24} {status}",
            self.check.name(),
            self.pair.0,
            self.pair.1,
            self.predicted,
            self.observed
        )
    }
}

/// Predicted smallest Hamiltonian size not divisible by `a + b`, as inclusive bounds.
pub fn predicted_mu_div(pair: CoprimePair) -> (i64, i64) {
    let (a, b, d, alpha) = (pair.a(), pair.b(), pair.d(), pair.alpha());
    match pair.regime() {
        Regime::Knight => (4, 4),
        Regime::Narrow => (3 * a + b, 3 * a + b),
        Regime::Wide if d == 1 => ((alpha - 1) * (a + b) + 1, (alpha - 1) * (a + b) + 1),
        Regime::Wide => (alpha * (a + b) + 1, alpha * (a + b) + d),
    }
}

/// Predicted smallest size with two tours; `None` for the knight, which never has two.
pub fn predicted_mu_var(pair: CoprimePair) -> Option<i64> {
    let (a, b) = (pair.a(), pair.b());
    if pair.is_knight() {
        None
    } else if a == 1 && b % 2 == 1 {
        Some(2 * b)
    } else if b - a == 1 {
        Some(3 * (a + b))
    } else {
        Some(2 * (a + b))
    }
}

/// The pairs a check covers among those with `a + b <= max_sum`.
pub fn check_pairs(check: Check, max_sum: i64) -> Vec<CoprimePair> {
    let leaper = |pair: &CoprimePair| LeaperParams::from_pair(*pair).ok();
    CoprimePair::all_up_to_sum(max_sum)
        .into_iter()
        .filter(|pair| match check {
            Check::Pdd | Check::Pvt => true,
            Check::Put => unique_tour_admissible(*pair),
            Check::Use => leaper(pair).is_some() && pair.a() == 1,
            Check::Usd => leaper(pair).is_some() && pair.b() == pair.a() + 1,
            Check::Lstar => leaper(pair).is_some() && pair.a() >= 3,
        })
        .collect()
}

fn value_text(v: MuValue) -> String {
    match v {
        MuValue::Exact(n) => n.to_string(),
        MuValue::Unknown { above } => format!("unknown(>{above})"),
        MuValue::Bounds { lo, hi } if hi == i64::MAX => format!(">={lo}"),
        MuValue::Bounds { lo, hi } => format!("[{lo}, {hi}]"),
    }
}

fn row(check: Check, pair: CoprimePair, predicted: String, observed: String, status: CheckStatus, nodes: u64) -> CheckRow {
    CheckRow { check, pair: (pair.a(), pair.b()), predicted, observed, status, nodes }
}

/// Runs one check on one pair. Orders for `lstar` are `1..=max_k`.
pub fn check_pair(check: Check, pair: CoprimePair, max_k: i64, budget: SearchBudget) -> CheckRow {
    match check {
        Check::Pdd => {
            let (lo, hi) = predicted_mu_div(pair);
            let r = search_mu_div(pair, hi, budget);
            let nodes = r.certificates.iter().map(|c| c.nodes).sum();
            let status = match r.value {
                MuValue::Exact(n) if (lo..=hi).contains(&n) => CheckStatus::Confirmed,
                MuValue::Exact(_) | MuValue::Unknown { .. } if !has_unsure(&r.certificates) => CheckStatus::Refuted,
                _ => CheckStatus::Unknown,
            };
            let predicted = if lo == hi { lo.to_string() } else { format!("[{lo}, {hi}]") };
            row(check, pair, predicted, value_text(r.value), status, nodes)
        }
        Check::Pvt => {
            let predicted = predicted_mu_var(pair);
            let n_max = predicted.unwrap_or(12);
            let r = search_mu_var(pair, n_max, budget);
            let nodes = r.certificates.iter().map(|c| c.nodes).sum();
            let status = match (predicted, r.value) {
                _ if has_unsure(&r.certificates) => CheckStatus::Unknown,
                (Some(p), MuValue::Exact(n)) if n == p => CheckStatus::Confirmed,
                (None, MuValue::Unknown { .. }) => CheckStatus::Confirmed,
                _ => CheckStatus::Refuted,
            };
            let text = predicted.map_or_else(|| "infinite".to_string(), |p| p.to_string());
            row(check, pair, text, value_text(r.value), status, nodes)
        }
        Check::Put => match check_unique_tour_put(pair, budget) {
            Ok(c) => {
                let (observed, status) = match c.count {
                    Some(1) => ("1 tour".to_string(), CheckStatus::Confirmed),
                    Some(k) => (format!("{k}+ tours"), CheckStatus::Refuted),
                    None => ("indeterminate".to_string(), CheckStatus::Unknown),
                };
                row(check, pair, format!("1 tour, n = {}", c.n), observed, status, 0)
            }
            Err(e) => row(check, pair, "1 tour".into(), e.to_string(), CheckStatus::Refuted, 0),
        },
        Check::Use | Check::Usd => {
            let leaper = LeaperParams::from_pair(pair).expect("filtered to leapers");
            let (p, q) = (pair.a(), pair.b());
            let g = build_leaper_graph(leaper, Interval::of_size(2 * p * q).expect("positive"), Interval::of_size(p + q).expect("positive"));
            let e = enumerate_pseudotours(&g, 2, budget);
            let (observed, status) = match (e.is_decided(), e.count()) {
                (true, 1) => ("1 pseudotour".to_string(), CheckStatus::Confirmed),
                (true, k) => (format!("{k} pseudotours"), CheckStatus::Refuted),
                (false, _) => ("indeterminate".to_string(), CheckStatus::Unknown),
            };
            row(check, pair, format!("1 pseudotour on {}x{}", p + q, 2 * p * q), observed, status, e.nodes)
        }
        Check::Lstar => {
            let leaper = LeaperParams::from_pair(pair).expect("filtered to leapers");
            let mut counts = Vec::new();
            for k in 1..=max_k {
                counts.push(build_lstar(leaper, k).map_or(0, |(_, c)| c));
            }
            let status = if counts.iter().all(|&c| c > 1) { CheckStatus::Confirmed } else { CheckStatus::Refuted };
            let observed = format!("components {counts:?}");
            let text = if status == CheckStatus::Confirmed { "disconnected".to_string() } else { observed };
            row(check, pair, format!("disconnected, k <= {max_k}"), text, status, 0)
        }
    }
}

fn has_unsure(certs: &[super::mu::Certificate]) -> bool {
    certs.iter().any(|c| c.verdict == "indeterminate")
}
