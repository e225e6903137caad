//! Closed tours of skew free leapers on rectangular boards.
//!
//! Tours are assembled from Hamiltonian cycles of one-dimensional projection graphs,
//! multiplied into degree-two pseudotours and merged by flipping switches. An
//! independent exhaustive search checks the constructions at small sizes.

pub mod assembly;
pub mod error;
pub mod graph;
pub mod loom;
pub mod oracle;
pub mod params;
pub mod projection;
pub mod scarf;
pub mod switch;
pub mod tourfile;

pub use error::{Error, ParamError, Result};
pub use graph::{Cell, CycleDecomposition, EdgeGraph, EdgeKind, Interval};
pub use params::{CoprimePair, LeaperParams, Regime};
