use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::graph::{build_leaper_graph, cycle_edges, Cell, EdgeSet, Interval};
use crate::oracle::{find_hamiltonian_with, SearchBudget, Verdict};
use crate::params::LeaperParams;
use crate::tourfile::TourFile;

use super::board::{stitch_joint, BoardTour};
use super::fixed_width::{signature_plan, tour_4pq_with_plan};
use super::thresholds::{thresholds, ThresholdMode};

/// Supplies tours of boards whose sides are both multiples of `2(p + q)`.
pub trait BlockProvider {
    fn block(&self, leaper: LeaperParams, height: i64, width: i64) -> Option<BoardTour>;
}

/// Loads blocks from `<dir>/<p>_<q>_<height>x<width>.json` tour files.
pub struct FileProvider {
    pub dir: PathBuf,
}

impl FileProvider {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FileProvider { dir: dir.into() }
    }

    pub fn file_name(leaper: LeaperParams, height: i64, width: i64) -> String {
        format!("{}_{}_{height}x{width}.json", leaper.p(), leaper.q())
    }
}

impl BlockProvider for FileProvider {
    fn block(&self, leaper: LeaperParams, height: i64, width: i64) -> Option<BoardTour> {
        let text = std::fs::read_to_string(self.dir.join(Self::file_name(leaper, height, width))).ok()?;
        let t = TourFile::parse(&text).ok()?.to_board_tour().ok()?;
        (t.leaper() == leaper && t.height() == height && t.width() == width).then_some(t)
    }
}

/// Builds knight blocks from one searched `6 × 6` tour; other leapers are not supported.
///
/// The searched tour `B` contains the joint `(1, 1)-(0, 3)`. A strip of height 6 is
/// `[transpose(B) | B | B | ...]`, so its transpose again holds a joint and can be stacked
/// the same way.
#[derive(Default)]
pub struct OracleProvider {
    seed: Mutex<Option<BoardTour>>,
}

impl OracleProvider {
    pub fn new() -> Self {
        Self::default()
    }

    fn seed_block(&self) -> Option<BoardTour> {
        let mut cache = self.seed.lock().ok()?;
        if cache.is_none() {
            let knight = LeaperParams::knight();
            let six = Interval::of_size(6).ok()?;
            let g = build_leaper_graph(knight, six, six);
            let joint = (Cell::new(0, 3), Cell::new(1, 1));
            let Verdict::Found(cycle) = find_hamiltonian_with(&g, &[joint], SearchBudget::default()).verdict else {
                return None;
            };
            let edges: EdgeSet<Cell> = cycle_edges(&cycle).into_iter().collect();
            *cache = BoardTour::new(knight, 6, 6, edges, vec!["searched 6 x 6 block".into()]).ok();
        }
        cache.clone()
    }

    fn strip(b: &BoardTour, copies: i64) -> Result<BoardTour> {
        let mut t = b.transpose();
        for _ in 1..copies {
            t = stitch_joint(&t, b)?;
        }
        Ok(t)
    }
}

impl BlockProvider for OracleProvider {
    fn block(&self, leaper: LeaperParams, height: i64, width: i64) -> Option<BoardTour> {
        if !leaper.is_knight() || height <= 0 || width <= 0 || height % 6 != 0 || width % 6 != 0 {
            return None;
        }
        let b = self.seed_block()?;
        let row = Self::strip(&b, width / 6).ok()?;
        let col = row.transpose();
        let mut t = col.clone();
        for _ in 1..height / 6 {
            t = stitch_joint(&t, &col).ok()?;
        }
        Some(t.transpose())
    }
}

/// The side of the provider block for a board side `m`: the greatest multiple of
/// `2(p + q)` not above `m` and congruent to it modulo `4pq`.
pub fn reduced_side(leaper: LeaperParams, m: i64) -> Option<i64> {
    let (p, q) = (leaper.p(), leaper.q());
    let step = 2 * (p + q);
    let modulus = 4 * p * q;
    let mut s = m - m.rem_euclid(step);
    while s > 0 {
        if (m - s) % modulus == 0 {
            return Some(s);
        }
        s -= step;
    }
    None
}

/// A tour of the even `m × n` board (height `m`, width `n`): a provider block widened and
/// then heightened with `4pq`-wide joint tours.
pub fn tour_even_board(leaper: LeaperParams, m: i64, n: i64, provider: &dyn BlockProvider) -> Result<BoardTour> {
    if m % 2 != 0 || n % 2 != 0 {
        return Err(Error::ParityViolation { n: if m % 2 != 0 { m } else { n } });
    }
    let bound = thresholds(leaper, ThresholdMode::Computed)?.m_iii;
    if m < bound || n < bound {
        return Err(Error::BelowThreshold { n: m.min(n), bound });
    }
    let (mr, nr) = match (reduced_side(leaper, m), reduced_side(leaper, n)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::BelowThreshold { n: m.min(n), bound }),
    };
    let mut t = provider.block(leaper, mr, nr).ok_or(Error::ProviderUnavailable(mr, nr))?;
    if (t.height(), t.width(), t.leaper()) != (mr, nr, leaper) {
        return Err(Error::ProviderUnavailable(mr, nr));
    }
    let plan = signature_plan(leaper)?;
    let mut joints: BTreeMap<i64, BoardTour> = BTreeMap::new();
    let mut joint_tour = |h: i64| -> Result<BoardTour> {
        if let Some(j) = joints.get(&h) {
            return Ok(j.clone());
        }
        let j = tour_4pq_with_plan(leaper, h, &plan)?;
        j.joint().ok_or(Error::NoJoint)?;
        joints.insert(h, j.clone());
        Ok(j)
    };
    let w = 4 * leaper.p() * leaper.q();
    let jm = joint_tour(mr)?;
    for _ in 0..(n - nr) / w {
        t = stitch_joint(&t, &jm)?;
    }
    let mut t = t.transpose();
    let jn = joint_tour(n)?;
    for _ in 0..(m - mr) / w {
        t = stitch_joint(&t, &jn)?;
    }
    let mut t = t.transpose();
    t.trace.push(format!("block {mr} x {nr} grown to {m} x {n}"));
    Ok(t)
}
