//! Static renderers: SVG, ASCII and binary PPM.
//!
//! Output depends only on the input and the options. Colours without an
//! explicit palette entry get a display colour derived from a SHA-256 of
//! their canonical form.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::compilers::{HexTile, HexTileSet, HexTiling};
use crate::tiles::{Cell, Color, TileSet, Tiling, WangTile};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Svg,
    Ascii,
    Ppm,
}

impl FromStr for RenderFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "svg" => Ok(RenderFormat::Svg),
            "ascii" => Ok(RenderFormat::Ascii),
            "ppm" => Ok(RenderFormat::Ppm),
            _ => Err(format!("unknown format {s:?} (expected svg, ascii or ppm)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    pub format: RenderFormat,
    /// Side of a square cell in pixels; hexagons use it as their radius.
    pub cell_size: u32,
    /// Canonical colour string to `#rrggbb`.
    pub palette: BTreeMap<String, String>,
    pub show_labels: bool,
}

impl RenderOptions {
    pub fn new(format: RenderFormat) -> Self {
        RenderOptions {
            format,
            cell_size: 40,
            palette: BTreeMap::new(),
            show_labels: false,
        }
    }

    fn rgb(&self, c: &Color) -> [u8; 3] {
        let key = c.canonical();
        self.palette
            .get(&key)
            .and_then(|hex| parse_hex(hex))
            .unwrap_or_else(|| auto_color(&key))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RenderError {
    #[error("{format:?} output is not available for {what}")]
    Unsupported { format: RenderFormat, what: &'static str },
    #[error("tile index {0} is out of range")]
    BadTile(usize),
}

/// Things that can be drawn.
#[derive(Clone, Copy, Debug)]
pub enum Subject<'a> {
    Tiling(&'a TileSet, &'a Tiling),
    Hex(&'a HexTileSet, &'a HexTiling),
    TileSet(&'a TileSet),
}

/// Pastel colour from the first three hash bytes, kept light enough for
/// dark labels on top.
pub fn auto_color(canonical: &str) -> [u8; 3] {
    let h = Sha256::digest(canonical.as_bytes());
    [h[0] / 2 + 96, h[1] / 2 + 96, h[2] / 2 + 96]
}

fn parse_hex(s: &str) -> Option<[u8; 3]> {
    let s = s.strip_prefix('#')?;
    if s.len() != 6 {
        return None;
    }
    let b = |i: usize| u8::from_str_radix(&s[i..i + 2], 16).ok();
    Some([b(0)?, b(2)?, b(4)?])
}

fn hex_str(c: [u8; 3]) -> String {
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn render(subject: Subject, opts: &RenderOptions) -> Result<Vec<u8>, RenderError> {
    match (subject, opts.format) {
        (Subject::Tiling(_, t), RenderFormat::Ascii) => Ok(ascii_tiling(t).into_bytes()),
        (Subject::Tiling(ts, t), RenderFormat::Svg) => Ok(svg_grid(ts, t, opts)?.into_bytes()),
        (Subject::Tiling(ts, t), RenderFormat::Ppm) => ppm_grid(ts, t, opts),
        (Subject::TileSet(ts), RenderFormat::Ascii) => Ok(ascii_tileset(ts).into_bytes()),
        (Subject::TileSet(ts), fmt) => {
            let strip = tileset_strip(ts);
            if fmt == RenderFormat::Svg {
                Ok(svg_grid(ts, &strip, opts)?.into_bytes())
            } else {
                ppm_grid(ts, &strip, opts)
            }
        }
        (Subject::Hex(hs, ht), RenderFormat::Svg) => svg_hex(hs, ht, opts).map(String::into_bytes),
        (Subject::Hex(..), format) => Err(RenderError::Unsupported { format, what: "hexagonal tilings" }),
    }
}

/// Index character for tile `i`: `0-9a-z`, then `#`.
pub fn index_char(i: usize) -> char {
    char::from_digit(i as u32, 36).filter(|_| i < 36).unwrap_or('#')
}

fn ascii_tiling(t: &Tiling) -> String {
    let mut s = String::with_capacity((t.width + 1) * t.height);
    for y in 0..t.height {
        for c in t.row(y) {
            s.push(match c {
                Cell::Tile(i) => index_char(*i),
                Cell::Wildcard => '.',
                Cell::Empty => ' ',
            });
        }
        s.push('\n');
    }
    s
}

fn ascii_tileset(ts: &TileSet) -> String {
    ts.tiles().iter().enumerate().map(|(i, t)| format!("{} {t}\n", index_char(i))).collect()
}

fn tileset_strip(ts: &TileSet) -> Tiling {
    if ts.is_empty() {
        return Tiling::empty(0, 0);
    }
    Tiling::from_rows(&[(0..ts.len()).collect()])
}

fn tile_at(ts: &TileSet, i: usize) -> Result<&WangTile, RenderError> {
    ts.get(i).ok_or(RenderError::BadTile(i))
}

fn svg_open(out: &mut String, w: f64, h: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    );
}

fn polygon(out: &mut String, pts: &[(f64, f64)], fill: [u8; 3]) {
    out.push_str("<polygon points=\"");
    for (k, (x, y)) in pts.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{x:.2},{y:.2}");
    }
    let _ = writeln!(out, "\" fill=\"{}\" stroke=\"#333333\" stroke-width=\"0.5\"/>", hex_str(fill));
}

fn label(out: &mut String, (x, y): (f64, f64), size: f64, text: &str) {
    let _ = writeln!(
        out,
        r#"<text x="{x:.2}" y="{y:.2}" font-size="{size:.1}" font-family="monospace" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
        escape(text)
    );
}

fn centroid(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    (sx / n, sy / n)
}

/// Draws the regions of one shape, each with its colour and optional label.
fn regions(out: &mut String, parts: &[(Vec<(f64, f64)>, &Color)], opts: &RenderOptions) {
    for (pts, c) in parts {
        polygon(out, pts, opts.rgb(c));
    }
    if opts.show_labels {
        let size = (opts.cell_size as f64 / 5.0).max(4.0);
        for (pts, c) in parts {
            label(out, centroid(pts), size, &c.label());
        }
    }
}

fn svg_grid(ts: &TileSet, t: &Tiling, opts: &RenderOptions) -> Result<String, RenderError> {
    let s = opts.cell_size as f64;
    let mut out = String::new();
    svg_open(&mut out, s * t.width as f64, s * t.height as f64);
    for y in 0..t.height {
        for x in 0..t.width {
            let (x0, y0) = (x as f64 * s, y as f64 * s);
            let (x1, y1) = (x0 + s, y0 + s);
            let c = (x0 + s / 2.0, y0 + s / 2.0);
            match t.get(x, y) {
                Cell::Tile(i) => {
                    let tile = tile_at(ts, i)?;
                    let parts = [
                        (vec![(x0, y0), c, (x0, y1)], &tile.left),
                        (vec![(x0, y0), (x1, y0), c], &tile.up),
                        (vec![(x1, y0), (x1, y1), c], &tile.right),
                        (vec![(x0, y1), c, (x1, y1)], &tile.bottom),
                    ];
                    regions(&mut out, &parts, opts);
                }
                Cell::Wildcard => {
                    let _ = writeln!(
                        out,
                        r##"<rect x="{x0:.2}" y="{y0:.2}" width="{s:.2}" height="{s:.2}" fill="#ffffff" stroke="#999999" stroke-dasharray="2,2"/>"##
                    );
                }
                Cell::Empty => {}
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn ppm_grid(ts: &TileSet, t: &Tiling, opts: &RenderOptions) -> Result<Vec<u8>, RenderError> {
    let s = opts.cell_size.max(1) as usize;
    let (w, h) = (t.width * s, t.height * s);
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    let mut pixels = vec![255u8; w * h * 3];
    for y in 0..t.height {
        for x in 0..t.width {
            let cell = t.get(x, y);
            let fills = match cell {
                Cell::Tile(i) => {
                    let tile = tile_at(ts, i)?;
                    Some([opts.rgb(&tile.left), opts.rgb(&tile.up), opts.rgb(&tile.right), opts.rgb(&tile.bottom)])
                }
                Cell::Wildcard => Some([[224, 224, 224]; 4]),
                Cell::Empty => None,
            };
            let Some(fills) = fills else { continue };
            for v in 0..s {
                for u in 0..s {
                    // Which of the four triangles (split by both diagonals) holds the pixel.
                    let (a, b) = (2 * u + 1, 2 * v + 1);
                    let below_main = b > a;
                    let below_anti = a + b > 2 * s;
                    let region = match (below_main, below_anti) {
                        (true, false) => 0,
                        (false, false) => 1,
                        (false, true) => 2,
                        (true, true) => 3,
                    };
                    let p = ((y * s + v) * w + x * s + u) * 3;
                    pixels[p..p + 3].copy_from_slice(&fills[region]);
                }
            }
        }
    }
    out.extend_from_slice(&pixels);
    Ok(out)
}

fn svg_hex(hs: &HexTileSet, ht: &HexTiling, opts: &RenderOptions) -> Result<String, RenderError> {
    let s = opts.cell_size as f64 / 2.0;
    let h = s * 3f64.sqrt() / 2.0;
    let rows = ht.hexes.len();
    let width = 3.0 * s * ht.width as f64;
    let height = 2.0 * h * (rows as f64 + 1.0);
    let mut out = String::new();
    svg_open(&mut out, width, height);
    let tile = |i: usize| hs.tiles.get(i).ok_or(RenderError::BadTile(i));
    let hex_centre = |r: usize, i: usize| (1.5 * s + 3.0 * s * i as f64, 2.0 * h + 2.0 * h * r as f64);

    for (i, &k) in ht.halves.iter().enumerate() {
        let (cx, cy) = hex_centre(0, i);
        let (cx, cy) = (cx + 1.5 * s, cy - h);
        if let HexTile::HalfLozenge { sw, se } = tile(k)? {
            let (w, e, south) = ((cx - 0.75 * s, cy), (cx + 0.75 * s, cy), (cx, cy + h));
            regions(&mut out, &[(vec![w, (cx, cy), south], sw), (vec![(cx, cy), e, south], se)], opts);
        }
    }
    for (r, row) in ht.lozenges.iter().enumerate() {
        for (i, &k) in row.iter().enumerate() {
            let (cx, cy) = hex_centre(r, i);
            let c = (cx + 1.5 * s, cy + h);
            let (n, e, south, w) = ((c.0, c.1 - h), (c.0 + 0.75 * s, c.1), (c.0, c.1 + h), (c.0 - 0.75 * s, c.1));
            if let HexTile::Lozenge { nw, ne, sw, se } = tile(k)? {
                let parts = [
                    (vec![c, w, n], nw),
                    (vec![c, n, e], ne),
                    (vec![c, e, south], se),
                    (vec![c, south, w], sw),
                ];
                regions(&mut out, &parts, opts);
            }
        }
    }
    for (r, row) in ht.hexes.iter().enumerate() {
        for (i, &k) in row.iter().enumerate() {
            let c = hex_centre(r, i);
            let v = [
                (c.0 - s, c.1),
                (c.0 - s / 2.0, c.1 - h),
                (c.0 + s / 2.0, c.1 - h),
                (c.0 + s, c.1),
                (c.0 + s / 2.0, c.1 + h),
                (c.0 - s / 2.0, c.1 + h),
            ];
            if let HexTile::Hex { ul, top, ur, bottom } = tile(k)? {
                let parts = [
                    (vec![c, v[0], v[1]], ul),
                    (vec![c, v[1], v[2]], top),
                    (vec![c, v[2], v[3]], ur),
                    (vec![c, v[3], v[4], v[5], v[0]], bottom),
                ];
                regions(&mut out, &parts, opts);
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
