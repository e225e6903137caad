//! Deterministic ASCII and SVG diagrams of tour files.

use std::collections::BTreeMap;
use std::fmt::Write;

use leaper_core::graph::{decompose_edges, edge_kind, Cell, EdgeKind};
use leaper_core::scarf::board_cells;
use leaper_core::tourfile::{TourBody, TourFile};
use leaper_core::Result;

const CELL: i64 = 20;

/// Cycles of the stored subgraph, each in canonical order.
fn board_cycles(f: &TourFile) -> Result<(i64, i64, Vec<Vec<Cell>>)> {
    let (_, cols, rows, edges) = f.board_edges()?;
    let d = decompose_edges(board_cells(cols, rows), &edges)?;
    Ok((cols.len(), rows.len(), d.cycles))
}

pub fn ascii(f: &TourFile) -> Result<String> {
    let mut out = String::new();
    match &f.body {
        TourBody::Board { .. } => {
            let (width, height, cycles) = board_cycles(f)?;
            let mut index = BTreeMap::new();
            let mut k = 0usize;
            for c in &cycles {
                for &cell in c {
                    index.insert(cell, k);
                    k += 1;
                }
            }
            let w = k.saturating_sub(1).to_string().len();
            writeln!(out, "{width} x {height} board, {} cycle(s), {k} cells", cycles.len()).unwrap();
            for y in (0..height).rev() {
                let line: Vec<String> = (0..width).map(|x| format!("{:>w$}", index[&Cell::new(x, y)])).collect();
                writeln!(out, "{}", line.join(" ")).unwrap();
            }
        }
        TourBody::Projection { .. } => {
            let (pair, iv, edges) = f.projection_edges()?;
            let d = decompose_edges(iv.iter(), &edges)?;
            writeln!(out, "projection graph {pair} on {iv}, {} cycle(s)", d.cycles.len()).unwrap();
            for c in &d.cycles {
                let line: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                writeln!(out, "{}", line.join(" ")).unwrap();
            }
        }
    }
    Ok(out)
}

pub fn svg(f: &TourFile) -> Result<String> {
    let mut out = String::new();
    match &f.body {
        TourBody::Board { .. } => {
            let (width, height, cycles) = board_cycles(f)?;
            let (w, h) = (width * CELL, height * CELL);
            let center = |c: Cell| (c.x * CELL + CELL / 2, (height - 1 - c.y) * CELL + CELL / 2);
            writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
            writeln!(out, r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##).unwrap();
            for y in 0..height {
                for x in 0..width {
                    if (x + y) % 2 == 1 {
                        let (cx, cy) = (x * CELL, (height - 1 - y) * CELL);
                        writeln!(out, r##"<rect x="{cx}" y="{cy}" width="{CELL}" height="{CELL}" fill="#e8e8e8"/>"##).unwrap();
                    }
                }
            }
            for (i, c) in cycles.iter().enumerate() {
                let pts: Vec<String> = c.iter().map(|&cell| {
                    let (x, y) = center(cell);
                    format!("{x},{y}")
                }).collect();
                let colour = ["#1f4e9c", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e"][i % 5];
                writeln!(out, r#"<polygon points="{}" fill="none" stroke="{colour}" stroke-width="1"/>"#, pts.join(" ")).unwrap();
            }
            for cell in board_cells(leaper_core::Interval::of_size(width)?, leaper_core::Interval::of_size(height)?) {
                let (x, y) = center(cell);
                writeln!(out, r##"<circle cx="{x}" cy="{y}" r="2" fill="#000000"/>"##).unwrap();
            }
        }
        TourBody::Projection { .. } => {
            let (pair, iv, edges) = f.projection_edges()?;
            let w = (iv.len() + 1) * CELL;
            let reach = (pair.b() + 1) * CELL / 2;
            let h = 2 * reach;
            let base = reach;
            let x_of = |v: i64| (v - iv.lo + 1) * CELL;
            writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
            writeln!(out, r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>"##).unwrap();
            writeln!(out, r##"<line x1="{}" y1="{base}" x2="{}" y2="{base}" stroke="#999999"/>"##, x_of(iv.lo), x_of(iv.hi)).unwrap();
            for &(u, v) in &edges {
                let (x1, x2) = (x_of(u), x_of(v));
                let r = (x2 - x1) / 2;
                // short edges arc above the line, long edges below
                let (sweep, colour) = match edge_kind(pair, u, v) {
                    Some(EdgeKind::Short) => (1, "#1f4e9c"),
                    _ => (0, "#b03a2e"),
                };
                writeln!(out, r#"<path d="M {x1} {base} A {r} {r} 0 0 {sweep} {x2} {base}" fill="none" stroke="{colour}"/>"#).unwrap();
            }
            for v in iv.iter() {
                writeln!(out, r##"<circle cx="{}" cy="{base}" r="3" fill="#000000"/>"##, x_of(v)).unwrap();
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
