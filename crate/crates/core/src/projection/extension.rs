use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, edge_kind, Edge, EdgeKind, EdgeSet};
use crate::params::{CoprimePair, Regime};

use super::path_edges;

/// Vertex-disjoint paths over `[0; width + length - 1]` joining position `i` of the first
/// `width` vertices to position `i` of the last `width` vertices and visiting every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extension {
    pair: CoprimePair,
    width: i64,
    length: i64,
    paths: Vec<Vec<i64>>,
    /// Two long edges used to connect the cycles of a braid; absent when `a = 1`.
    designated: Option<(Edge<i64>, Edge<i64>)>,
}

impl Extension {
    /// Builds an extension from its edge set, tracing and validating the paths.
    pub fn from_edges(
        pair: CoprimePair,
        width: i64,
        length: i64,
        edges: &EdgeSet<i64>,
    ) -> Result<Self> {
        if width < 1 || length < width {
            return Err(Error::MalformedExtension(format!(
                "width {width}, length {length}"
            )));
        }
        let mut adj: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
        for &(u, v) in edges {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        let mut paths = Vec::new();
        for i in 0..width {
            let mut path = vec![i];
            let mut prev = None;
            let mut cur = i;
            loop {
                let next: Vec<i64> = adj
                    .get(&cur)
                    .map(|n| n.iter().copied().filter(|&w| Some(w) != prev).collect())
                    .unwrap_or_default();
                match next.as_slice() {
                    [] => break,
                    [w] => {
                        prev = Some(cur);
                        cur = *w;
                        path.push(cur);
                        if path.len() as i64 > width + length {
                            return Err(Error::MalformedExtension("path revisits a vertex".into()));
                        }
                    }
                    _ => return Err(Error::MalformedExtension(format!("vertex {cur} branches"))),
                }
            }
            paths.push(path);
        }
        let ext = Extension {
            pair,
            width,
            length,
            paths,
            designated: None,
        };
        ext.validate()?;
        if ext.edges() != *edges {
            return Err(Error::MalformedExtension("edges outside the paths".into()));
        }
        Ok(ext)
    }

    pub fn pair(&self) -> CoprimePair {
        self.pair
    }

    pub fn width(&self) -> i64 {
        self.width
    }

    pub fn length(&self) -> i64 {
        self.length
    }

    /// Number of vertices covered.
    pub fn span(&self) -> i64 {
        self.width + self.length
    }

    pub fn paths(&self) -> &[Vec<i64>] {
        &self.paths
    }

    pub fn designated(&self) -> Option<(Edge<i64>, Edge<i64>)> {
        self.designated
    }

    pub fn edges(&self) -> EdgeSet<i64> {
        self.paths.iter().flat_map(|p| path_edges(p)).collect()
    }

    /// Edges translated so the extension starts at `lo`.
    pub fn edges_at(&self, lo: i64) -> EdgeSet<i64> {
        self.paths
            .iter()
            .flat_map(|p| path_edges(p))
            .map(|(u, v)| (u + lo, v + lo))
            .collect()
    }

    /// Checks path count, endpoints, coverage and edge types.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedExtension(msg));
        if self.paths.len() as i64 != self.width {
            return bad(format!(
                "{} paths for width {}",
                self.paths.len(),
                self.width
            ));
        }
        let mut seen = vec![false; self.span() as usize];
        for (i, path) in self.paths.iter().enumerate() {
            let i = i as i64;
            if path.first() != Some(&i) || path.last() != Some(&(i + self.length)) {
                return bad(format!("path {i} does not join corresponding vertices"));
            }
            for &u in path {
                if u < 0 || u >= self.span() || seen[u as usize] {
                    return bad(format!("vertex {u} repeated or out of range"));
                }
                seen[u as usize] = true;
            }
            for (u, v) in path_edges(path) {
                if edge_kind(self.pair, u, v).is_none() {
                    return bad(format!("{u}-{v} is not an edge"));
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return bad("some vertex is not visited".into());
        }
        if let Some((e1, e2)) = self.designated {
            let edges = self.edges();
            for e in [e1, e2] {
                if !edges.contains(&e) || edge_kind(self.pair, e.0, e.1) != Some(EdgeKind::Long) {
                    return bad(format!(
                        "designated edge {}-{} is not a long edge of the paths",
                        e.0, e.1
                    ));
                }
            }
        }
        Ok(())
    }
}

/// The extension width that the base tours of the wide regime split off.
pub(crate) fn default_width(pair: CoprimePair) -> Result<i64> {
    let (a, b, d, alpha) = (pair.a(), pair.b(), pair.d(), pair.alpha());
    match pair.regime() {
        Regime::Knight => Err(Error::WrongRegime("a pair other than (1, 2)".into())),
        Regime::Narrow => Ok(2 * a),
        Regime::Wide => {
            if d == 1 && b % 2 == 0 {
                Ok(b - 2)
            } else if alpha % 2 == 0 {
                Ok(alpha * d)
            } else {
                Ok((alpha - 1) * d)
            }
        }
    }
}

/// The width-two, length-fourteen extension used for the `(3, 4)` pair.
fn antelope_extension(pair: CoprimePair) -> Extension {
    let paths = vec![
        vec![0, 3, 6, 2, 5, 8, 12, 9, 13, 10, 14],
        vec![1, 4, 7, 11, 15],
    ];
    let ext = Extension {
        pair,
        width: 2,
        length: 14,
        paths,
        designated: Some(((10, 14), (7, 11))),
    };
    ext.validate().expect("fixed antelope extension");
    ext
}

/// The extension used to grow projection tours: width `2a` and length `2b` when `2a < b`,
/// otherwise width `s` with `max(2d, b - 2d) <= s < b` and length `2b`.
pub fn growth_extension(pair: CoprimePair, width: Option<i64>) -> Result<Extension> {
    let s = match width {
        Some(s) => s,
        None => default_width(pair)?,
    };
    match pair.regime() {
        Regime::Knight => Err(Error::WrongRegime("a pair other than (1, 2)".into())),
        Regime::Narrow => narrow_extension(pair, s),
        Regime::Wide => wide_extension(pair, s),
    }
}

/// The extension carrying designated edges for braid switches; for `(3, 4)` this is the
/// special width-two, length-fourteen extension.
pub fn make_extension(pair: CoprimePair, width: Option<i64>) -> Result<Extension> {
    if pair.a() == 3 && pair.b() == 4 {
        if width.is_some_and(|s| s != 2) {
            return Err(Error::InvalidWidth {
                width: width.unwrap(),
                reason: "the (3, 4) extension has width 2".into(),
            });
        }
        return Ok(antelope_extension(pair));
    }
    growth_extension(pair, width)
}

fn narrow_extension(pair: CoprimePair, s: i64) -> Result<Extension> {
    let (a, b) = (pair.a(), pair.b());
    if s != 2 * a {
        return Err(Error::InvalidWidth {
            width: s,
            reason: format!("must be {}", 2 * a),
        });
    }
    let mid_lo = b;
    let mid_hi = b + 2 * a - 1;
    let mut edges = EdgeSet::new();
    for u in mid_lo..=mid_hi {
        edges.insert(edge(u - b, u));
        edges.insert(edge(u, u + b));
    }
    let gap_hi = b - 1;
    let first_hi = (2 * a + a - 1).min(gap_hi);
    let mut designated = None;
    for u in 2 * a..=first_hi {
        let mut i = 1;
        while u + a * i < mid_lo {
            i += 1;
        }
        let v = u + a * i;
        edges.remove(&edge(v, v + b));
        let mut x = v;
        while x > u {
            edges.insert(edge(x, x - a));
            x -= a;
        }
        edges.insert(edge(u, u + b));
        let mut y = u + b;
        while y < v + b {
            edges.insert(edge(y, y + a));
            y += a;
        }
        if a >= 2 && designated.is_none() && i % 2 == 1 {
            designated = Some((edge(v - b, v), edge(v + a - b, v + a)));
        }
    }
    let mut ext = Extension::from_edges(pair, s, 2 * b, &edges)?;
    if a >= 2 {
        ext.designated =
            Some(designated.ok_or_else(|| Error::MalformedExtension("no odd step count".into()))?);
        ext.validate()?;
    }
    Ok(ext)
}

fn wide_extension(pair: CoprimePair, s: i64) -> Result<Extension> {
    let (a, b, d) = (pair.a(), pair.b(), pair.d());
    let min = (2 * d).max(b - 2 * d);
    if s < min || s >= b {
        return Err(Error::InvalidWidth {
            width: s,
            reason: format!("must satisfy {min} <= s < {b}"),
        });
    }
    let mut edges = EdgeSet::new();
    for u in b..b + s {
        edges.insert(edge(u - b, u));
        edges.insert(edge(u, u + b));
    }
    for u in s..b {
        let v = if u < s + d { u + a } else { u - a };
        edges.remove(&edge(v, v + b));
        edges.insert(edge(v, u));
        edges.insert(edge(u, u + b));
        edges.insert(edge(u + b, v + b));
    }
    let mut ext = Extension::from_edges(pair, s, 2 * b, &edges)?;
    let w = if s == b - 2 * d { d } else { (s - a).max(0) };
    ext.designated = Some((edge(w + a, w + a + b), edge(w, w + b)));
    ext.validate()?;
    Ok(ext)
}

/// A chain of `k` copies of `ext`; copy `i` starts at `i * length`.
pub fn chain_extensions(ext: &Extension, k: i64) -> Result<Extension> {
    join_extensions(&vec![ext.clone(); k.max(0) as usize])
}

/// Concatenates extensions of equal width into one extension.
pub fn join_extensions(parts: &[Extension]) -> Result<Extension> {
    let first = parts
        .first()
        .ok_or_else(|| Error::MalformedExtension("empty chain".into()))?;
    let mut edges = EdgeSet::new();
    let mut offset = 0;
    for part in parts {
        if part.width != first.width {
            return Err(Error::WidthMismatch {
                split: first.width,
                extension: part.width,
            });
        }
        edges.extend(part.edges_at(offset));
        offset += part.length;
    }
    if parts.len() == 1 {
        return Ok(first.clone());
    }
    Extension::from_edges(first.pair, first.width, offset, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: i64, b: i64) -> CoprimePair {
        CoprimePair::new(a, b).unwrap()
    }

    #[test]
    fn antelope_special() {
        let e = make_extension(pair(3, 4), Some(2)).unwrap();
        assert_eq!(e.paths()[0], vec![0, 3, 6, 2, 5, 8, 12, 9, 13, 10, 14]);
        assert_eq!(e.paths()[1], vec![1, 4, 7, 11, 15]);
        assert_eq!(e.designated(), Some(((10, 14), (7, 11))));
    }

    #[test]
    fn giraffe_and_wide_examples() {
        let e = make_extension(pair(1, 4), None).unwrap();
        assert_eq!((e.width(), e.length()), (2, 8));
        assert!(e.designated().is_none());
        let e = make_extension(pair(4, 5), Some(3)).unwrap();
        assert_eq!((e.width(), e.length()), (3, 10));
        assert!(make_extension(pair(4, 5), Some(1)).is_err());
        assert!(make_extension(pair(4, 5), Some(5)).is_err());
        assert!(make_extension(pair(2, 5), Some(3)).is_err());
    }

    #[test]
    fn all_admissible_widths_validate() {
        for p in CoprimePair::all_up_to_sum(25) {
            match p.regime() {
                Regime::Knight => {}
                Regime::Narrow => {
                    let e = growth_extension(p, None).unwrap();
                    assert_eq!(e.designated().is_some(), p.a() >= 2, "{p}");
                }
                Regime::Wide => {
                    let lo = (2 * p.d()).max(p.b() - 2 * p.d());
                    for s in lo..p.b() {
                        growth_extension(p, Some(s)).unwrap();
                    }
                    growth_extension(p, None).unwrap();
                }
            }
        }
    }

    #[test]
    fn chains() {
        let e = make_extension(pair(1, 4), None).unwrap();
        assert_eq!(chain_extensions(&e, 1).unwrap(), e);
        let c = chain_extensions(&e, 2).unwrap();
        assert_eq!((c.width(), c.length(), c.span()), (2, 16, 18));
        let e = make_extension(pair(4, 5), Some(3)).unwrap();
        let c = chain_extensions(&e, 3).unwrap();
        assert_eq!((c.width(), c.length()), (3, 30));
    }
}
