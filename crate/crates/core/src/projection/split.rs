use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, EdgeSet, Interval};
use crate::params::Regime;

use super::ladder::ladder_edges;
use super::{shift_edges, Extension, ProjectionTour};

/// Which end of the interval a split exposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum End {
    Left,
    Right,
}

/// A partition of a tour's edges into `t_prime` and `t_second` such that the vertices of
/// degree 2, 1 and 0 in `t_prime` form consecutive intervals `v0`, `v1`, `v2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub t_prime: EdgeSet<i64>,
    pub t_second: EdgeSet<i64>,
    pub v0: Option<Interval>,
    pub v1: Interval,
    pub v2: Option<Interval>,
}

impl Split {
    pub fn width(&self) -> i64 {
        self.v1.len()
    }

    /// Checks the degree pattern against the tour.
    pub fn validate(&self, tour: &ProjectionTour) -> Result<()> {
        let bad = |m: String| Err(Error::UnsupportedSplit(m));
        let union: EdgeSet<i64> = self.t_prime.union(&self.t_second).copied().collect();
        if &union != tour.edges() || !self.t_prime.is_disjoint(&self.t_second) {
            return bad("parts do not partition the tour".into());
        }
        let mut deg = vec![0usize; tour.len() as usize];
        let lo = tour.interval().lo;
        for &(u, v) in &self.t_prime {
            deg[(u - lo) as usize] += 1;
            deg[(v - lo) as usize] += 1;
        }
        let expect = |u: i64| {
            if self.v0.is_some_and(|i| i.contains(u)) {
                2
            } else if self.v1.contains(u) {
                1
            } else {
                0
            }
        };
        for u in tour.interval().iter() {
            if deg[(u - lo) as usize] != expect(u) {
                return bad(format!(
                    "vertex {u} has degree {} in the first part",
                    deg[(u - lo) as usize]
                ));
            }
        }
        let parts = [self.v0, Some(self.v1), self.v2];
        let present: Vec<Interval> = parts.iter().flatten().copied().collect();
        if present.first().map(|i| i.lo) != Some(lo)
            || present.last().map(|i| i.hi) != Some(tour.interval().hi)
        {
            return bad("intervals do not cover the tour".into());
        }
        for w in present.windows(2) {
            if w[0].hi + 1 != w[1].lo {
                return bad("intervals are not consecutive".into());
            }
        }
        Ok(())
    }
}

/// Finds a split of width `width` exposed at `end`.
///
/// For `2a < b` the forced short edges at the chosen end are split off. For `2a > b` the
/// tour must contain a translated (left) or reflected (right) copy of a ladder of width
/// `width` at that end.
pub fn find_split(tour: &ProjectionTour, width: i64, end: End) -> Result<Split> {
    let pair = tour.pair();
    if width <= 0 {
        return Err(Error::UnsupportedSplit(format!("width {width}")));
    }
    let iv = tour.interval();
    let (a, b, d) = (pair.a(), pair.b(), pair.d());
    let block: EdgeSet<i64> = match pair.regime() {
        Regime::Knight => {
            return Err(Error::UnsupportedSplit(
                "the (1, 2) tours grow without splits".into(),
            ))
        }
        Regime::Narrow => {
            if width != 2 * a {
                return Err(Error::UnsupportedSplit(format!("width must be {}", 2 * a)));
            }
            if iv.len() < 2 * a {
                return Err(Error::UnsupportedSplit("tour too short".into()));
            }
            match end {
                End::Left => (iv.lo..iv.lo + a).map(|u| edge(u, u + a)).collect(),
                End::Right => (iv.hi - a + 1..=iv.hi).map(|u| edge(u - a, u)).collect(),
            }
        }
        Regime::Wide => {
            if width % (2 * d) != 0 {
                return Err(Error::UnsupportedSplit(format!(
                    "width must be a multiple of {}",
                    2 * d
                )));
            }
            let k = width / (2 * d);
            if 2 * k > pair.alpha() || 2 * k * b > iv.len() {
                return Err(Error::UnsupportedSplit(format!(
                    "no ladder of width {width} fits"
                )));
            }
            let local = ladder_edges(pair, k);
            match end {
                End::Left => shift_edges(&local, iv.lo),
                End::Right => local
                    .iter()
                    .map(|&(u, v)| edge(iv.hi - u, iv.hi - v))
                    .collect(),
            }
        }
    };
    if !block.is_subset(tour.edges()) {
        return Err(Error::UnsupportedSplit(format!(
            "tour lacks the forced block at the {end:?} end"
        )));
    }
    let rest: EdgeSet<i64> = tour.edges().difference(&block).copied().collect();
    // Vertices of degree two in the split-off block: none for forced shorts, the ladder's
    // first `2ka` vertices otherwise.
    let deg2_len = match pair.regime() {
        Regime::Narrow => 0,
        _ => width / (2 * d) * 2 * a,
    };
    let split = match end {
        End::Left => {
            let v0 = (deg2_len > 0).then(|| Interval::new(iv.lo, iv.lo + deg2_len - 1).unwrap());
            let v1 = Interval::with_len(iv.lo + deg2_len, width)?;
            let v2 = (v1.hi < iv.hi).then(|| Interval::new(v1.hi + 1, iv.hi).unwrap());
            Split {
                t_prime: block,
                t_second: rest,
                v0,
                v1,
                v2,
            }
        }
        End::Right => {
            let v1 = Interval::with_len(iv.hi - deg2_len - width + 1, width)?;
            let v0 = (v1.lo > iv.lo).then(|| Interval::new(iv.lo, v1.lo - 1).unwrap());
            let v2 = (deg2_len > 0).then(|| Interval::new(v1.hi + 1, iv.hi).unwrap());
            Split {
                t_prime: rest,
                t_second: block,
                v0,
                v1,
                v2,
            }
        }
    };
    split.validate(tour)?;
    Ok(split)
}

/// Inserts a chain of `k` copies of `ext` at the split, growing the tour by `k * length`.
///
/// The first part stays in place, the second part moves right by `k * length`.
pub fn extend_tour(
    tour: &ProjectionTour,
    split: &Split,
    ext: &Extension,
    k: i64,
) -> Result<ProjectionTour> {
    if split.width() != ext.width() {
        return Err(Error::WidthMismatch {
            split: split.width(),
            extension: ext.width(),
        });
    }
    if k == 0 {
        return Ok(tour.clone());
    }
    let chain = super::chain_extensions(ext, k)?;
    insert_chain(tour, split, &chain)
}

/// Inserts an arbitrary extension (typically a joined chain of different copies) at the split.
pub fn insert_chain(
    tour: &ProjectionTour,
    split: &Split,
    chain: &Extension,
) -> Result<ProjectionTour> {
    if split.width() != chain.width() {
        return Err(Error::WidthMismatch {
            split: split.width(),
            extension: chain.width(),
        });
    }
    let grow = chain.length();
    let mut edges = split.t_prime.clone();
    edges.extend(shift_edges(&split.t_second, grow));
    edges.extend(chain.edges_at(split.v1.lo));
    let iv = tour.interval();
    ProjectionTour::new(tour.pair(), Interval::new(iv.lo, iv.hi + grow)?, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::CoprimePair;
    use crate::projection::{growth_extension, tour_pmt};

    fn pair(a: i64, b: i64) -> CoprimePair {
        CoprimePair::new(a, b).unwrap()
    }

    #[test]
    fn narrow_left_split() {
        let t = tour_pmt(pair(2, 5), 1).unwrap();
        let s = find_split(&t, 4, End::Left).unwrap();
        assert_eq!(s.v1, Interval::new(0, 3).unwrap());
        assert_eq!(s.t_prime, [(0, 2), (1, 3)].into_iter().collect());
        assert!(s.v0.is_none());
        assert!(find_split(&t, 0, End::Left).is_err());
        let r = find_split(&t, 4, End::Right).unwrap();
        assert_eq!(r.v1, Interval::new(3, 6).unwrap());
    }

    #[test]
    fn grow_giraffe() {
        let p = pair(1, 4);
        let t = tour_pmt(p, 1).unwrap();
        let s = find_split(&t, 2, End::Left).unwrap();
        let e = growth_extension(p, None).unwrap();
        assert_eq!(extend_tour(&t, &s, &e, 0).unwrap(), t);
        let grown = extend_tour(&t, &s, &e, 2).unwrap();
        assert_eq!(grown.len(), 21);
        let s = find_split(&t, 2, End::Right).unwrap();
        assert_eq!(extend_tour(&t, &s, &e, 3).unwrap().len(), 29);
    }
}
