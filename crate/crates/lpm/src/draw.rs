use std::collections::HashSet;
use std::fmt::Write as _;

use crate::diagram::Diagram;
use crate::path::{LatticePath, Step};

/// Renders the region between the two paths as an ASCII grid of unit cells.
/// Every cell border is drawn; shared path edges (loops/coloops) appear as
/// bare segments. Output is deterministic.
pub fn ascii(d: &Diagram) -> String {
    let m = d.width();
    let r = d.height();
    let cells = cell_set(d);
    let p_edges = path_edges(d.lower());
    let q_edges = path_edges(d.upper());

    let has_cell = |x: i64, y: i64| {
        x >= 0 && y >= 0 && cells.contains(&(x as u32, y as u32))
    };
    let horiz = |x: u32, y: u32| {
        has_cell(x as i64, y as i64)
            || has_cell(x as i64, y as i64 - 1)
            || p_edges.contains(&((x, y), (x + 1, y)))
            || q_edges.contains(&((x, y), (x + 1, y)))
    };
    let vert = |x: u32, y: u32| {
        has_cell(x as i64, y as i64)
            || has_cell(x as i64 - 1, y as i64)
            || p_edges.contains(&((x, y), (x, y + 1)))
            || q_edges.contains(&((x, y), (x, y + 1)))
    };
    let node = |x: u32, y: u32| {
        (x > 0 && horiz(x - 1, y))
            || horiz(x, y)
            || (y > 0 && vert(x, y - 1))
            || vert(x, y)
    };

    let mut lines = Vec::new();
    for y in (0..=r).rev() {
        let mut line = String::new();
        for x in 0..=m {
            line.push(if node(x, y) { '+' } else { ' ' });
            if x < m {
                line.push_str(if horiz(x, y) { "--" } else { "  " });
            }
        }
        lines.push(line.trim_end().to_string());
        if y > 0 {
            let mut line = String::new();
            for x in 0..=m {
                line.push(if vert(x, y - 1) { '|' } else { ' ' });
                if x < m {
                    line.push_str("  ");
                }
            }
            lines.push(line.trim_end().to_string());
        }
    }
    lines.join("\n")
}

const UNIT: u32 = 32;
const MARGIN: u32 = 16;

/// Renders the diagram as standalone SVG: a light grid, the region cells
/// filled, and the two bounding paths stroked. Byte-identical across runs.
pub fn svg(d: &Diagram) -> String {
    let m = d.width();
    let r = d.height();
    let width = m * UNIT + 2 * MARGIN;
    let height = r * UNIT + 2 * MARGIN;
    let px = |x: u32| MARGIN + x * UNIT;
    let py = |y: u32| MARGIN + (r - y) * UNIT;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    let _ = writeln!(out, "  <rect width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>");
    for (x, y) in cell_set_sorted(d) {
        let _ = writeln!(
            out,
            "  <rect x=\"{}\" y=\"{}\" width=\"{UNIT}\" height=\"{UNIT}\" fill=\"#d7e8f7\"/>",
            px(x),
            py(y + 1)
        );
    }
    for x in 0..=m {
        let _ = writeln!(
            out,
            "  <line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#cccccc\" stroke-width=\"1\"/>",
            px(x),
            py(r),
            py(0)
        );
    }
    for y in 0..=r {
        let _ = writeln!(
            out,
            "  <line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" stroke=\"#cccccc\" stroke-width=\"1\"/>",
            py(y),
            px(0),
            px(m)
        );
    }
    let _ = writeln!(out, "  <polyline points=\"{}\" fill=\"none\" stroke=\"#b33939\" stroke-width=\"3\" stroke-linejoin=\"round\"/>", polyline(d.lower(), r));
    let _ = writeln!(out, "  <polyline points=\"{}\" fill=\"none\" stroke=\"#2e6fa3\" stroke-width=\"3\" stroke-linejoin=\"round\"/>", polyline(d.upper(), r));
    out.push_str("</svg>\n");
    out
}

fn polyline(path: &LatticePath, r: u32) -> String {
    let mut pts = Vec::new();
    let (mut x, mut y) = (0u32, 0u32);
    pts.push((x, y));
    for s in path.steps() {
        match s {
            Step::East => x += 1,
            Step::North => y += 1,
        }
        pts.push((x, y));
    }
    pts.iter()
        .map(|&(x, y)| format!("{},{}", MARGIN + x * UNIT, MARGIN + (r - y) * UNIT))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cell_set(d: &Diagram) -> HashSet<(u32, u32)> {
    cell_set_sorted(d).into_iter().collect()
}

fn cell_set_sorted(d: &Diagram) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for (x, range) in d.column_cells().into_iter().enumerate() {
        for y in range {
            out.push((x as u32, y));
        }
    }
    out
}

fn path_edges(p: &LatticePath) -> HashSet<((u32, u32), (u32, u32))> {
    let mut out = HashSet::new();
    let (mut x, mut y) = (0u32, 0u32);
    for s in p.steps() {
        let from = (x, y);
        match s {
            Step::East => x += 1,
            Step::North => y += 1,
        }
        out.insert((from, (x, y)));
    }
    out
}
