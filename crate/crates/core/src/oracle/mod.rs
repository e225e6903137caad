//! Exhaustive search used to check constructions and to measure thresholds.

mod checks;
mod matching;
mod mu;
mod search;
mod sweep;

pub use checks::{check_pair, check_pairs, predicted_mu_div, predicted_mu_var, Check, CheckRow, CheckStatus};
pub use matching::{enumerate_looms, enumerate_perfect_matchings, kind_graph};
pub use mu::{
    check_unique_tour_put, hamiltonicity, projection_graph, search_mu_div, search_mu_pi, search_mu_var,
    unique_tour_admissible, unique_tour_construction, Certificate, MuValue, Quantity, SearchResult, UniqueTourCheck,
};
pub use search::{
    count_hamiltonian, enumerate_hamiltonian, enumerate_pseudotours, find_hamiltonian, find_hamiltonian_with,
    Enumeration, HamiltonSearch, SearchBudget, Verdict,
};
pub use sweep::{hamiltonicity_record, SweepRecord, SweepStore};
