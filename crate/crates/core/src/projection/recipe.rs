use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{CoprimePair, Regime};

use super::extension::{default_width, growth_extension};
use super::ladder::{concat_tours, tour_base_wide, wide_base_size};
use super::split::{extend_tour, find_split, End};
use super::{tour_pkt, tour_pmt, ProjectionTour};

/// How a projection tour of a given size is assembled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Recipe {
    /// The unique `(1, 2)` tour.
    Knight { n: i64 },
    /// `n = (a + b) i + 2b j` with `i >= 1`: `i` stitched blocks grown by `j` extensions.
    Narrow { i: i64, j: i64 },
    /// `n = n* + (a + b) i + 2b j`: the base tour grown by `j` extensions, then `i` stitched
    /// blocks concatenated on the right.
    Wide { i: i64, j: i64 },
}

fn base_size(pair: CoprimePair) -> i64 {
    match pair.regime() {
        Regime::Knight => 3,
        Regime::Narrow => pair.a() + pair.b(),
        Regime::Wide => wide_base_size(pair),
    }
}

/// The lexicographically smallest `(i, j)` realising `n`, if any.
pub fn recipe_for(pair: CoprimePair, n: i64) -> Option<Recipe> {
    let (a, b) = (pair.a(), pair.b());
    match pair.regime() {
        Regime::Knight => (n >= 3).then_some(Recipe::Knight { n }),
        Regime::Narrow | Regime::Wide => {
            let narrow = pair.regime() == Regime::Narrow;
            let rest = n - if narrow { 0 } else { wide_base_size(pair) };
            let i_min = if narrow { 1 } else { 0 };
            let mut i = i_min;
            while (a + b) * i <= rest {
                let left = rest - (a + b) * i;
                if left % (2 * b) == 0 {
                    let j = left / (2 * b);
                    return Some(if narrow {
                        Recipe::Narrow { i, j }
                    } else {
                        Recipe::Wide { i, j }
                    });
                }
                i += 1;
            }
            None
        }
    }
}

/// The smallest `N` such that every admissible size `n >= N` has a recipe.
///
/// Admissible means even for odd-odd pairs and any size otherwise.
pub fn mu_pi_bound(pair: CoprimePair) -> i64 {
    if pair.is_knight() {
        return 3;
    }
    let (a, b) = (pair.a(), pair.b());
    let limit = base_size(pair) + (a + b) * 2 * b;
    let step = if pair.is_odd_odd() { 2 } else { 1 };
    let mut n = limit;
    while n > 0 {
        if (step == 1 || n % 2 == 0) && recipe_for(pair, n).is_none() {
            return n + 1;
        }
        n -= 1;
    }
    1
}

/// A verified tour of the projection graph on `[0; n - 1]`.
pub fn projection_tour(pair: CoprimePair, n: i64) -> Result<ProjectionTour> {
    if pair.is_odd_odd() && n % 2 != 0 {
        return Err(Error::ParityViolation { n });
    }
    let recipe = recipe_for(pair, n).ok_or(Error::BelowThreshold {
        n,
        bound: mu_pi_bound(pair),
    })?;
    match recipe {
        Recipe::Knight { n } => tour_pkt(n),
        Recipe::Narrow { i, j } => {
            let base = tour_pmt(pair, i)?;
            if j == 0 {
                return Ok(base);
            }
            let split = find_split(&base, 2 * pair.a(), End::Left)?;
            extend_tour(&base, &split, &growth_extension(pair, None)?, j)
        }
        Recipe::Wide { i, j } => {
            let mut tour = tour_base_wide(pair)?;
            if j > 0 {
                let s = default_width(pair)?;
                let split = find_split(&tour, s, End::Left)?;
                tour = extend_tour(&tour, &split, &growth_extension(pair, Some(s))?, j)?;
            }
            if i > 0 {
                let right = tour_pmt(pair, i)?.shift(tour.len());
                tour = concat_tours(&tour, &right)?;
            }
            Ok(tour)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: i64, b: i64) -> CoprimePair {
        CoprimePair::new(a, b).unwrap()
    }

    #[test]
    fn bounds() {
        assert_eq!(mu_pi_bound(pair(1, 2)), 3);
        assert!(mu_pi_bound(pair(1, 4)) <= 40);
        assert!(mu_pi_bound(pair(2, 3)) <= 17 + 30);
    }

    #[test]
    fn examples() {
        assert_eq!(projection_tour(pair(1, 2), 100).unwrap().len(), 100);
        assert_eq!(
            recipe_for(pair(2, 3), 28),
            Some(Recipe::Wide { i: 1, j: 1 })
        );
        assert_eq!(projection_tour(pair(2, 3), 28).unwrap().len(), 28);
        assert_eq!(projection_tour(pair(2, 3), 27).unwrap().len(), 27);
        assert_eq!(
            projection_tour(pair(1, 3), 101),
            Err(Error::ParityViolation { n: 101 })
        );
        assert!(matches!(
            projection_tour(pair(1, 4), 6),
            Err(Error::BelowThreshold { .. })
        ));
    }

    #[test]
    fn every_size_past_the_bound() {
        for p in CoprimePair::all_up_to_sum(11) {
            let bound = mu_pi_bound(p);
            for n in bound..bound + 40 {
                if p.is_odd_odd() && n % 2 == 1 {
                    continue;
                }
                let t = projection_tour(p, n).unwrap_or_else(|e| panic!("{p} n={n}: {e}"));
                assert_eq!(t.len(), n);
            }
        }
    }
}
