use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge, Edge, EdgeSet, Interval};
use crate::loom::loom_stats;
use crate::params::{LeaperParams, Regime};
use crate::projection::{
    concat_tours, default_width, find_split, growth_extension, join_extensions, make_extension,
    tour_base_wide, tour_pkt, tour_pmt, wide_base_size, End, Extension, ProjectionTour,
};

/// The extension copied into every pattern.
pub fn pattern_extension(leaper: LeaperParams) -> Result<Extension> {
    let pair = leaper.pair();
    if leaper.is_antelope() {
        return make_extension(pair, None);
    }
    make_extension(pair, Some(default_width(pair)?))
}

/// Copies a pattern must contain: the braid chain (`xi` copies, none when `p = 1`), one
/// copy for the comb and, when `2p < q`, one copy at the very start of the rows.
pub fn required_copies(leaper: LeaperParams) -> i64 {
    if leaper.is_knight() {
        return 0;
    }
    let chain = if leaper.p() == 1 {
        0
    } else {
        loom_stats(leaper).xi
    };
    let front = if leaper.regime() == Regime::Narrow {
        1
    } else {
        0
    };
    chain + 1 + front
}

/// How a pattern is assembled: `blocks` stitched blocks, `copies` pattern extensions and
/// `fillers` plain growth extensions after them. Fillers are only needed by the antelope,
/// whose pattern extension is a multiple of `p + q` long.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternRecipe {
    pub blocks: i64,
    pub copies: i64,
    pub fillers: i64,
}

/// The recipe for a pattern of size `m` with at least `min_copies` copies, fewest blocks
/// and fillers first.
pub fn pattern_recipe(leaper: LeaperParams, m: i64, min_copies: i64) -> Option<PatternRecipe> {
    let pair = leaper.pair();
    let (a, b) = (pair.a(), pair.b());
    let ext_len = pattern_extension(leaper).ok()?.length();
    let (base, i_min) = match pair.regime() {
        Regime::Knight => {
            return (m >= 3).then_some(PatternRecipe {
                blocks: 0,
                copies: 0,
                fillers: 0,
            })
        }
        Regime::Narrow => (0, 1),
        Regime::Wide => (wide_base_size(pair), 0),
    };
    let max_fillers = if leaper.is_antelope() { a + b - 1 } else { 0 };
    let mut i = i_min;
    while base + (a + b) * i + ext_len * min_copies <= m {
        for g in 0..=max_fillers {
            let rest = m - base - (a + b) * i - 2 * b * g;
            if rest >= ext_len * min_copies && rest % ext_len == 0 {
                return Some(PatternRecipe {
                    blocks: i,
                    copies: rest / ext_len,
                    fillers: g,
                });
            }
        }
        i += 1;
    }
    None
}

/// A pattern tour on a row interval together with the positions of its extension copies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternLayout {
    pub tour: ProjectionTour,
    pub extension: Extension,
    /// First vertex of each inserted copy, left to right.
    pub copy_starts: Vec<i64>,
    /// The copy occupying the first `2(p + q)` rows, when required.
    pub front_copy: Option<usize>,
    /// The copy reserved for the comb.
    pub comb_copy: usize,
    /// The copies forming the braid chain.
    pub chain_copies: Vec<usize>,
}

impl PatternLayout {
    pub fn copy_edges(&self, c: usize) -> EdgeSet<i64> {
        self.extension.edges_at(self.copy_starts[c])
    }

    pub fn designated(&self, c: usize) -> Option<(Edge<i64>, Edge<i64>)> {
        let s = self.copy_starts[c];
        self.extension
            .designated()
            .map(|((a, b), (c2, d))| ((a + s, b + s), (c2 + s, d + s)))
    }

    /// Vertices of copy `c` whose two tour edges both belong to the copy and have different kinds.
    pub fn mixed_in_copy(&self, c: usize) -> Vec<i64> {
        let edges = self.copy_edges(c);
        let p = self.tour.pair().a();
        let s = self.copy_starts[c];
        (s..s + self.extension.span())
            .filter(|&v| {
                let n = self.tour.neighbors(v);
                n.len() == 2
                    && n.iter().all(|&w| edges.contains(&edge(v, w)))
                    && ((n[0] - v).abs() == p) != ((n[1] - v).abs() == p)
            })
            .collect()
    }
}

/// Builds a pattern on `rows` holding at least `min_copies` extension copies, with the
/// first copy on the first `2(p + q)` rows when `2p < q`.
pub fn build_pattern(
    leaper: LeaperParams,
    rows: Interval,
    min_copies: i64,
) -> Result<PatternLayout> {
    let pair = leaper.pair();
    let m = rows.len();
    if leaper.is_knight() {
        return Err(Error::WrongRegime("a leaper other than the knight".into()));
    }
    if m % 2 == 0 {
        return Err(Error::LayoutInfeasible(format!("pattern size {m} is even")));
    }
    let recipe = pattern_recipe(leaper, m, min_copies).ok_or_else(|| {
        Error::LayoutInfeasible(format!("no layout of size {m} with {min_copies} copies"))
    })?;
    let (i, j) = (recipe.blocks, recipe.copies);
    let ext = pattern_extension(leaper)?;
    let narrow = pair.regime() == Regime::Narrow;
    let base = if narrow {
        tour_pmt(pair, i)?
    } else {
        tour_base_wide(pair)?
    };
    let split = find_split(&base, ext.width(), End::Left)?;
    let mut parts = vec![ext.clone(); j as usize];
    if recipe.fillers > 0 {
        let filler = growth_extension(pair, Some(ext.width()))?;
        parts.extend(std::iter::repeat(filler).take(recipe.fillers as usize));
    }
    let chain = join_extensions(&parts)?;
    let mut tour = crate::projection::insert_chain(&base, &split, &chain)?;
    if !narrow && i > 0 {
        let right = tour_pmt(pair, i)?.shift(tour.len());
        tour = concat_tours(&tour, &right)?;
    }
    let tour = tour.shift(rows.lo);
    let copy_starts: Vec<i64> = (0..j)
        .map(|c| rows.lo + split.v1.lo + c * ext.length())
        .collect();
    let front_copy = narrow.then_some(0);
    let comb_copy = if narrow { 1 } else { 0 };
    let layout = PatternLayout {
        tour,
        extension: ext,
        copy_starts,
        front_copy,
        comb_copy,
        chain_copies: (comb_copy + 1..j as usize).collect(),
    };
    for c in 0..layout.copy_starts.len() {
        if !layout.copy_edges(c).is_subset(layout.tour.edges()) {
            return Err(Error::LayoutInfeasible(format!(
                "copy {c} was broken while assembling"
            )));
        }
    }
    if narrow && layout.copy_starts[0] != rows.lo {
        return Err(Error::LayoutInfeasible(
            "front copy is not at the first row".into(),
        ));
    }
    Ok(layout)
}

/// The knight's pattern: the unique tour of its projection graph.
pub fn knight_pattern(rows: Interval) -> Result<ProjectionTour> {
    Ok(tour_pkt(rows.len())?.shift(rows.lo))
}

/// Smallest odd part size from which every odd size admits a pattern.
pub fn part_minimum(leaper: LeaperParams) -> i64 {
    if leaper.is_knight() {
        return 5;
    }
    let need = required_copies(leaper);
    let ext_len = pattern_extension(leaper).expect("non-knight").length();
    let ok = |m: i64| pattern_recipe(leaper, m, need).is_some();
    let mut m = 1;
    loop {
        if (0..ext_len / 2).all(|t| ok(m + 2 * t)) {
            return m;
        }
        m += 2;
    }
}
