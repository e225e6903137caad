//! Leaper and projection-graph parameters.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ParamError;

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

/// A pair of relatively prime positive integers `a < b`.
///
/// This is the parameter set of a projection graph. Pairs of opposite parity
/// are leaper parameters; odd-odd pairs only make sense for projection graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPair", into = "RawPair")]
pub struct CoprimePair {
    a: i64,
    b: i64,
}

#[derive(Serialize, Deserialize)]
struct RawPair {
    a: i64,
    b: i64,
}

impl TryFrom<RawPair> for CoprimePair {
    type Error = ParamError;
    fn try_from(raw: RawPair) -> Result<Self, ParamError> {
        CoprimePair::new(raw.a, raw.b)
    }
}

impl From<CoprimePair> for RawPair {
    fn from(pair: CoprimePair) -> Self {
        RawPair {
            a: pair.a,
            b: pair.b,
        }
    }
}

impl CoprimePair {
    pub fn new(a: i64, b: i64) -> Result<Self, ParamError> {
        if a <= 0 || b <= 0 {
            return Err(ParamError::NotPositive { a, b });
        }
        if a >= b {
            return Err(ParamError::NotIncreasing { a, b });
        }
        if gcd(a, b) != 1 {
            return Err(ParamError::NotCoprime { a, b });
        }
        Ok(CoprimePair { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Both entries odd: the projection graph is bipartite and only even sizes can be toured.
    pub fn is_odd_odd(&self) -> bool {
        self.a % 2 == 1 && self.b % 2 == 1
    }

    pub fn is_knight(&self) -> bool {
        self.a == 1 && self.b == 2
    }

    /// `b - a`.
    pub fn d(&self) -> i64 {
        self.b - self.a
    }

    /// `a mod d`, which equals `b mod d`.
    pub fn r(&self) -> i64 {
        self.a % self.d()
    }

    /// `floor(b / d)`.
    pub fn alpha(&self) -> i64 {
        self.b / self.d()
    }

    pub fn regime(&self) -> Regime {
        if self.is_knight() {
            Regime::Knight
        } else if 2 * self.a < self.b {
            Regime::Narrow
        } else {
            Regime::Wide
        }
    }

    /// Every coprime pair with `a + b <= max_sum`, ordered by sum then by `a`.
    pub fn all_up_to_sum(max_sum: i64) -> Vec<CoprimePair> {
        let mut out = Vec::new();
        for s in 3..=max_sum {
            for a in 1..s {
                let b = s - a;
                if a < b && gcd(a, b) == 1 {
                    out.push(CoprimePair { a, b });
                }
            }
        }
        out
    }
}

impl fmt::Display for CoprimePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Which family of projection-tour constructions applies to a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `(1, 2)`, the only pair with `2a = b`.
    Knight,
    /// `2a < b`.
    Narrow,
    /// `2a > b`.
    Wide,
}

/// Parameters of a skew free `(p, q)`-leaper: `0 < p < q`, coprime, `p + q` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLeaper", into = "RawLeaper")]
pub struct LeaperParams {
    pair: CoprimePair,
}

#[derive(Serialize, Deserialize)]
struct RawLeaper {
    p: i64,
    q: i64,
}

impl TryFrom<RawLeaper> for LeaperParams {
    type Error = ParamError;
    fn try_from(raw: RawLeaper) -> Result<Self, ParamError> {
        LeaperParams::new(raw.p, raw.q)
    }
}

impl From<LeaperParams> for RawLeaper {
    fn from(l: LeaperParams) -> Self {
        RawLeaper { p: l.p(), q: l.q() }
    }
}

impl LeaperParams {
    pub fn new(p: i64, q: i64) -> Result<Self, ParamError> {
        let pair = CoprimePair::new(p, q)?;
        LeaperParams::from_pair(pair)
    }

    pub fn from_pair(pair: CoprimePair) -> Result<Self, ParamError> {
        if (pair.a + pair.b) % 2 == 0 {
            return Err(ParamError::NotSkewFree {
                p: pair.a,
                q: pair.b,
            });
        }
        Ok(LeaperParams { pair })
    }

    pub fn knight() -> Self {
        LeaperParams {
            pair: CoprimePair { a: 1, b: 2 },
        }
    }

    pub fn pair(&self) -> CoprimePair {
        self.pair
    }

    pub fn p(&self) -> i64 {
        self.pair.a
    }

    pub fn q(&self) -> i64 {
        self.pair.b
    }

    pub fn d(&self) -> i64 {
        self.pair.d()
    }

    pub fn r(&self) -> i64 {
        self.pair.r()
    }

    pub fn alpha(&self) -> i64 {
        self.pair.alpha()
    }

    pub fn is_knight(&self) -> bool {
        self.pair.is_knight()
    }

    pub fn is_antelope(&self) -> bool {
        self.p() == 3 && self.q() == 4
    }

    pub fn regime(&self) -> Regime {
        self.pair.regime()
    }

    /// All skew free leapers with `p + q <= max_sum`.
    pub fn all_up_to_sum(max_sum: i64) -> Vec<LeaperParams> {
        CoprimePair::all_up_to_sum(max_sum)
            .into_iter()
            .filter_map(|pair| LeaperParams::from_pair(pair).ok())
            .collect()
    }
}

impl fmt::Display for LeaperParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})-leaper", self.p(), self.q())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let l = LeaperParams::new(5, 8).unwrap();
        assert_eq!((l.d(), l.r(), l.alpha()), (3, 2, 2));
        let l = LeaperParams::new(7, 10).unwrap();
        assert_eq!((l.d(), l.r(), l.alpha()), (3, 1, 3));
        let l = LeaperParams::new(2, 3).unwrap();
        assert_eq!((l.d(), l.r(), l.alpha()), (1, 0, 3));
    }

    #[test]
    fn identities_hold_for_wide_pairs() {
        for pair in CoprimePair::all_up_to_sum(40) {
            if pair.regime() != Regime::Wide {
                continue;
            }
            let (p, q, d, r, alpha) = (pair.a(), pair.b(), pair.d(), pair.r(), pair.alpha());
            assert_eq!(p, (alpha - 1) * d + r);
            assert_eq!(q, alpha * d + r);
            assert_eq!(q % d, r);
            assert!(alpha >= 2);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            LeaperParams::new(3, 5),
            Err(ParamError::NotSkewFree { .. })
        ));
        assert!(matches!(
            LeaperParams::new(2, 4),
            Err(ParamError::NotCoprime { .. })
        ));
        assert!(matches!(
            LeaperParams::new(3, 2),
            Err(ParamError::NotIncreasing { .. })
        ));
        assert!(matches!(
            CoprimePair::new(0, 2),
            Err(ParamError::NotPositive { .. })
        ));
        assert!(CoprimePair::new(3, 5).is_ok());
    }

    #[test]
    fn serde_validates() {
        let l: LeaperParams = serde_json::from_str(r#"{"p":1,"q":2}"#).unwrap();
        assert!(l.is_knight());
        assert!(serde_json::from_str::<LeaperParams>(r#"{"p":2,"q":4}"#).is_err());
    }
}
