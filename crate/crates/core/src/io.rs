//! Text serialization and rendering of mosaics.
//!
//! The document format is line oriented:
//!
//! ```text
//! smg 1
//! 3 3
//! . b a
//! b o d
//! c d .
//! ```
//!
//! The header names the format and version, the second line gives the
//! dimensions, and each body row lists whitespace-separated tile codes.
//! Single-character codes and long codes `T0`..`T14` are both accepted.

use crate::mosaic::Mosaic;
use crate::tile::{Axis, Decoration, TileKind};
use crate::{Error, Result};

pub const FORMAT_NAME: &str = "smg";
pub const FORMAT_VERSION: u32 = 1;

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Parses a mosaic document. Dimension mismatches and unknown codes are
/// reported with 1-based line/column positions.
pub fn parse(input: &str) -> Result<Mosaic> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, 1, "empty document"))?;
    let mut hparts = header.split_whitespace();
    let name = hparts.next().unwrap_or_default();
    if name != FORMAT_NAME {
        return Err(parse_err(hline, 1, format!("unknown format {name:?}, expected \"smg\"")));
    }
    let version: u32 = hparts
        .next()
        .ok_or_else(|| parse_err(hline, 1, "missing format version"))?
        .parse()
        .map_err(|_| parse_err(hline, 1, "malformed format version"))?;
    if version != FORMAT_VERSION {
        return Err(parse_err(hline, 1, format!("unsupported version {version}")));
    }

    let (dline, dims) = lines.next().ok_or_else(|| parse_err(hline, 1, "missing dimensions"))?;
    let mut dparts = dims.split_whitespace();
    let rows: usize = dparts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_err(dline, 1, "malformed row count"))?;
    let cols: usize = dparts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| parse_err(dline, 1, "malformed column count"))?;
    if rows == 0 || cols == 0 {
        return Err(parse_err(dline, 1, "dimensions must be positive"));
    }

    let mut cells = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let (bline, body) = lines
            .next()
            .ok_or_else(|| parse_err(dline + r + 1, 1, format!("missing body row {}", r + 1)))?;
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.len() != cols {
            return Err(parse_err(
                bline,
                1,
                format!("row {} has {} cells, expected {}", r + 1, tokens.len(), cols),
            ));
        }
        for (c, tok) in tokens.iter().enumerate() {
            let tile = lookup_code(tok).ok_or_else(|| {
                parse_err(bline, c + 1, format!("unknown tile code {tok:?} at cell ({},{})", r + 1, c + 1))
            })?;
            cells.push(tile);
        }
    }
    if let Some((xline, _)) = lines.next() {
        return Err(parse_err(xline, 1, "trailing content after body"));
    }
    Mosaic::new(rows, cols, cells)
}

pub fn lookup_code(tok: &str) -> Option<TileKind> {
    let mut chars = tok.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => TileKind::from_code(c),
        _ => TileKind::from_long_code(tok),
    }
}

/// Canonical document form; `parse(serialize(m)) == m`.
pub fn serialize(mosaic: &Mosaic) -> String {
    let mut out = format!("{FORMAT_NAME} {FORMAT_VERSION}\n{} {}\n", mosaic.rows(), mosaic.cols());
    for r in 0..mosaic.rows() {
        for c in 0..mosaic.cols() {
            if c > 0 {
                out.push(' ');
            }
            out.push(mosaic.get(r, c).code());
        }
        out.push('\n');
    }
    out
}

/// One glyph cell per tile.
pub fn render_ascii(mosaic: &Mosaic) -> String {
    let mut out = String::with_capacity((mosaic.cols() + 1) * mosaic.rows());
    for r in 0..mosaic.rows() {
        for c in 0..mosaic.cols() {
            out.push(mosaic.get(r, c).code());
        }
        out.push('\n');
    }
    out
}

const CELL: f64 = 40.0;

/// Schematic SVG rendering: arcs, lines, crossings with under-strand gaps,
/// marker segments, and a circle outline for each singular vertex.
pub fn render_svg(mosaic: &Mosaic) -> String {
    let w = mosaic.cols() as f64 * CELL;
    let h = mosaic.rows() as f64 * CELL;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\">\n"
    ));
    out.push_str(&format!(
        "<rect width=\"{w}\" height=\"{h}\" fill=\"white\" stroke=\"#ccc\"/>\n"
    ));
    for r in 0..mosaic.rows() {
        for c in 0..mosaic.cols() {
            render_tile(&mut out, mosaic.get(r, c), c as f64 * CELL, r as f64 * CELL);
        }
    }
    out.push_str("</svg>\n");
    out
}

fn render_tile(out: &mut String, tile: TileKind, x: f64, y: f64) {
    let half = CELL / 2.0;
    let n = (x + half, y);
    let e = (x + CELL, y + half);
    let s = (x + half, y + CELL);
    let w = (x, y + half);
    let mid = (x + half, y + half);
    let stroke = "stroke=\"black\" stroke-width=\"2\" fill=\"none\"";
    let quarter = |out: &mut String, from: (f64, f64), to: (f64, f64)| {
        out.push_str(&format!(
            "<path d=\"M {} {} Q {} {} {} {}\" {}/>\n",
            from.0, from.1, mid.0, mid.1, to.0, to.1, stroke
        ));
    };
    let line = |out: &mut String, from: (f64, f64), to: (f64, f64)| {
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {}/>\n",
            from.0, from.1, to.0, to.1, stroke
        ));
    };
    // Vertical strand with a gap around the centre, for under strands.
    let gap = 6.0;
    let broken_vertical = |out: &mut String| {
        line(out, n, (mid.0, mid.1 - gap));
        line(out, (mid.0, mid.1 + gap), s);
    };
    let broken_horizontal = |out: &mut String| {
        line(out, w, (mid.0 - gap, mid.1));
        line(out, (mid.0 + gap, mid.1), e);
    };
    match tile {
        TileKind::T0 => {}
        TileKind::T1 => quarter(out, s, w),
        TileKind::T2 => quarter(out, s, e),
        TileKind::T3 => quarter(out, n, e),
        TileKind::T4 => quarter(out, n, w),
        TileKind::T5 => line(out, w, e),
        TileKind::T6 => line(out, n, s),
        TileKind::T7 => {
            quarter(out, n, w);
            quarter(out, s, e);
        }
        TileKind::T8 => {
            quarter(out, n, e);
            quarter(out, s, w);
        }
        _ => match tile.decoration() {
            Decoration::Crossing { over: Axis::Vertical } => {
                broken_horizontal(out);
                line(out, n, s);
            }
            Decoration::Crossing { over: Axis::Horizontal } => {
                broken_vertical(out);
                line(out, w, e);
            }
            Decoration::Marked { marker } => {
                line(out, n, s);
                line(out, w, e);
                let m = 8.0;
                match marker {
                    Axis::Horizontal => out.push_str(&format!(
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"5\"/>\n",
                        mid.0 - m, mid.1, mid.0 + m, mid.1
                    )),
                    Axis::Vertical => out.push_str(&format!(
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"5\"/>\n",
                        mid.0, mid.1 - m, mid.0, mid.1 + m
                    )),
                }
            }
            Decoration::Singular { .. } => {
                line(out, n, s);
                line(out, w, e);
                out.push_str(&format!(
                    "<circle cx=\"{}\" cy=\"{}\" r=\"9\" stroke=\"black\" stroke-width=\"2\" fill=\"none\"/>\n",
                    mid.0, mid.1
                ));
            }
            Decoration::None => unreachable!(),
        },
    }
}
