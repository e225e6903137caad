use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::loom::loom_stats;
use crate::params::LeaperParams;

use super::pattern::{part_minimum, pattern_extension};
use super::fixed_width::signature_plan;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThresholdMode {
    /// The closed-form bounds.
    Formula,
    /// Measured part minimum and spanning selection size.
    Computed,
}

/// Height thresholds for `m × 4pq` tours (`m_ii`) and even × even tours (`m_iii`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    pub mode: ThresholdMode,
    /// Smallest part size for which a pattern with every required copy exists.
    pub m_i: i64,
    /// Every height from here on splits into at least `ell` odd parts of size `part_min`.
    pub m_ii: i64,
    pub m_iii: i64,
    pub part_min: i64,
    /// Number of parts that carry a comb.
    pub ell: i64,
}

/// Thresholds in the given mode. The knight uses fixed values in both modes.
pub fn thresholds(leaper: LeaperParams, mode: ThresholdMode) -> Result<Thresholds> {
    let (p, q) = (leaper.p(), leaper.q());
    let joint_margin = 4 * p * q * (p + q);
    if leaper.is_knight() {
        return Ok(Thresholds {
            mode,
            m_i: 5,
            m_ii: 9,
            m_iii: 9 + joint_margin,
            part_min: 5,
            ell: 1,
        });
    }
    match mode {
        ThresholdMode::Formula => {
            let s = loom_stats(leaper);
            // The antelope's extension is longer than 2q.
            let ext_len = if leaper.is_antelope() {
                pattern_extension(leaper)?.length()
            } else {
                2 * q
            };
            let m_i = 6 * q * q + (s.xi + 2) * ext_len;
            let m_ii = 4 * s.eta * (m_i + 1);
            let m_iii = m_ii + joint_margin;
            let ell = if p == 1 { 2 } else { 4 * s.eta - 1 };
            Ok(Thresholds {
                mode,
                m_i,
                m_ii,
                m_iii,
                part_min: m_i | 1,
                ell,
            })
        }
        ThresholdMode::Computed => {
            let part_min = part_minimum(leaper);
            let ell = signature_plan(leaper)?.ell() as i64;
            let m_ii = stable_start(part_min, ell);
            Ok(Thresholds {
                mode,
                m_i: part_min,
                m_ii,
                m_iii: m_ii + joint_margin,
                part_min,
                ell,
            })
        }
    }
}

/// Smallest `m` such that every height from `m` on is partitionable.
pub(crate) fn stable_start(part_min: i64, ell: i64) -> i64 {
    let top = (ell + 2) * part_min;
    let mut m = top;
    while m > 1 && partition_height(m - 1, part_min, ell).is_ok() {
        m -= 1;
    }
    m
}

/// Sizes of consecutive odd row parts, bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionPlan {
    pub parts: Vec<i64>,
}

impl PartitionPlan {
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// First row of each part.
    pub fn starts(&self) -> Vec<i64> {
        self.parts
            .iter()
            .scan(0, |acc, &m| {
                let s = *acc;
                *acc += m;
                Some(s)
            })
            .collect()
    }
}

/// Splits `m` into the fewest odd parts, at least `ell` of them and each at least
/// `part_min`, spreading the surplus evenly.
pub fn partition_height(m: i64, part_min: i64, ell: i64) -> Result<PartitionPlan> {
    let unpartitionable = Error::Unpartitionable { m, part_min };
    if m < 1 || part_min < 1 {
        return Err(unpartitionable);
    }
    let base = part_min | 1;
    let mut k = ell.max(1);
    if k % 2 != m % 2 {
        k += 1;
    }
    if k * base > m {
        return Err(unpartitionable);
    }
    let steps = (m - k * base) / 2;
    let (each, rem) = (steps / k, steps % k);
    let parts = (0..k)
        .map(|i| base + 2 * (each + i64::from(i < rem)))
        .collect();
    Ok(PartitionPlan { parts })
}
