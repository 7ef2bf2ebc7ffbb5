//! Partial tilings certifying tightness.
//!
//! A grading with weight totals (p, q) obeying |p*d2 - q*d1| = gcd(p, q)
//! unwraps onto the doubled path P(2*d1, 2*d2).  Each of the gcd(p, q)
//! anchor vertices closest to the diagonal cuts out a rectangular frame, and
//! every weighted edge inside the frame grows a family of rectangular
//! footprints.  The grading is tight exactly when some frame starting (or
//! ending) at a weighted edge captures the full weight, keeps every
//! footprint inside the frame, and avoids the forbidden color overlaps.

use std::collections::BTreeSet;

use crate::dyck::{Dir, MaxDyckPath};
use crate::exact::gcd_u;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TileColor {
    Cyan,
    DarkBlue,
    Red,
    DarkRed,
}

/// An axis-aligned footprint rectangle in the coordinates of the doubled
/// path.  Horizontal-edge footprints are 1 wide, vertical-edge footprints 1
/// tall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    pub family: u32,
    pub index: u32,
    pub rect: (i64, i64, i64, i64),
    pub color: TileColor,
}

fn interiors_overlap(a: (i64, i64, i64, i64), b: (i64, i64, i64, i64)) -> bool {
    a.0 < b.2 && b.0 < a.2 && a.1 < b.3 && b.1 < a.3
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i64::from(a.rem_euclid(b) > 0)
}

impl Tile {
    pub fn overlaps(&self, other: &Tile) -> bool {
        interiors_overlap(self.rect, other.rect)
    }
}

/// One window edge of the path portion inside a frame: direction, starting
/// vertex, and the transferred weight.
#[derive(Clone, Copy, Debug)]
pub struct WindowEdge {
    pub dir: Dir,
    pub start: (i64, i64),
    pub weight: u32,
}

/// The frame at one anchor, its captured path portion, and both footprint
/// families.
#[derive(Clone, Debug)]
pub struct FrameTiling {
    pub anchor: (i64, i64),
    pub rect: (i64, i64, i64, i64),
    /// The frame's distinguished path edge carries weight: the first
    /// horizontal edge when the determinant is negative, the last vertical
    /// edge when it is positive.
    pub anchored: bool,
    pub full_weight: bool,
    /// Every footprint stays inside the frame.  The families are only
    /// defined on the frame's interior, so an escaping footprint means the
    /// construction breaks down at this anchor.
    pub in_frame: bool,
    /// The window slot farthest from the anchor is unweighted: the last
    /// horizontal edge when the determinant is negative, the first vertical
    /// edge when it is positive.
    pub boundary_clear: bool,
    pub window: Vec<WindowEdge>,
    pub u_tiles: Vec<Tile>,
    pub v_tiles: Vec<Tile>,
}

impl FrameTiling {
    /// Horizontal and vertical footprints may only overlap when the first is
    /// dark blue and the second dark red.
    pub fn conflict_free(&self) -> bool {
        for ut in &self.u_tiles {
            for vt in &self.v_tiles {
                if ut.overlaps(vt)
                    && !(ut.color == TileColor::DarkBlue && vt.color == TileColor::DarkRed)
                {
                    return false;
                }
            }
        }
        true
    }

    /// Does this frame witness tightness on its own?
    pub fn certifies(&self) -> bool {
        self.anchored && self.full_weight && self.in_frame && self.conflict_free()
    }

    /// Overlaps of dark blue with dark red, merged by the pair of families
    /// involved.
    pub fn purple_components(&self) -> usize {
        let mut pairs = BTreeSet::new();
        for ut in &self.u_tiles {
            for vt in &self.v_tiles {
                if ut.overlaps(vt)
                    && ut.color == TileColor::DarkBlue
                    && vt.color == TileColor::DarkRed
                {
                    pairs.insert((ut.family, vt.family));
                }
            }
        }
        pairs.len()
    }

    fn path_height_at(&self, column: i64) -> i64 {
        self.window
            .iter()
            .find(|e| e.dir == Dir::E && e.start.0 == column)
            .map(|e| e.start.1)
            .unwrap_or(self.rect.3)
    }

    /// Unit cells between the path and the frame covered by no footprint.
    pub fn empty_cells(&self) -> u64 {
        let mut count = 0;
        for cx in self.rect.0..self.rect.2 {
            for cy in self.path_height_at(cx).max(self.rect.1)..self.rect.3 {
                let cell = (cx, cy, cx + 1, cy + 1);
                let covered = self
                    .u_tiles
                    .iter()
                    .chain(&self.v_tiles)
                    .any(|t| interiors_overlap(t.rect, cell));
                if !covered {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Totals of the vertical and horizontal weights.
pub fn weight_totals(path: &MaxDyckPath, w: &[u32]) -> (u64, u64) {
    let mut p = 0u64;
    let mut q = 0u64;
    for (idx, &wt) in w.iter().enumerate() {
        if path.edge(idx).is_horizontal() {
            q += wt as u64;
        } else {
            p += wt as u64;
        }
    }
    (p, q)
}

fn det_sign(path: &MaxDyckPath, p: u64, q: u64) -> Option<i64> {
    if p == 0 || q == 0 {
        return None;
    }
    let det = p as i128 * path.d2() as i128 - q as i128 * path.d1() as i128;
    if det.unsigned_abs() == gcd_u(p, q) as u128 {
        Some(det.signum() as i64)
    } else {
        None
    }
}

/// The gamma vertices closest to the diagonal: the left endpoints of the
/// horizontal edges carrying the labels 0 .. gamma-1.
pub fn anchor_points(path: &MaxDyckPath, gamma: u64) -> Vec<(i64, i64)> {
    (0..gamma as i64)
        .map(|m| {
            let idx = path.index_of_pi(m).expect("anchor label must be a path edge");
            let e = path.edge(idx);
            assert!(e.is_horizontal());
            e.start
        })
        .collect()
}

/// Build the frame tiling for anchor index m (0-based, m < gcd(p, q)).  The
/// weight totals are passed explicitly so that one-sided gradings can be
/// placed in the frame of a larger pair.
///
/// When the determinant p*d2 - q*d1 is negative the frame's southwestern
/// vertex sits at the left endpoint of the horizontal edge labeled m; when
/// it is positive the northeastern vertex sits at the top endpoint of the
/// vertical edge labeled m + d1, shifted along the diagonal far enough for
/// the frame to fit on the unrolled path.  Panics if no edge carries the
/// anchor label (only possible when gcd(p, q) exceeds a dimension).
pub fn tile_frame(path: &MaxDyckPath, w: &[u32], p: u64, q: u64, m: u64) -> FrameTiling {
    let d1 = path.d1() as i64;
    let d2 = path.d2() as i64;
    let eps = (p as i128 * d2 as i128 - q as i128 * d1 as i128).signum();
    let (anchor, anchored, rect, copies) = if eps < 0 {
        let idx = path
            .index_of_pi(m as i64)
            .expect("anchor label must name a horizontal edge");
        let sw = path.edge(idx).start;
        let rect = (sw.0, sw.1, sw.0 + p as i64 + 1, sw.1 + q as i64);
        let copies = ceil_div(rect.2, d1).max(ceil_div(rect.3, d2)).max(1);
        (sw, w[idx] > 0, rect, copies)
    } else {
        let idx = path
            .index_of_pi(m as i64 + d1)
            .expect("anchor label must name a vertical edge");
        let e = path.edge(idx);
        let top = (e.start.0, e.start.1 + 1);
        // slide along the diagonal until the frame clears the origin
        let t = ceil_div(p as i64 - top.0, d1)
            .max(ceil_div(q as i64 + 1 - top.1, d2))
            .max(0);
        let ne = (top.0 + t * d1, top.1 + t * d2);
        let rect = (ne.0 - p as i64, ne.1 - q as i64 - 1, ne.0, ne.1);
        (ne, w[idx] > 0, rect, t + 1)
    };

    let unrolled = MaxDyckPath::new(path.d1() * copies as u32, path.d2() * copies as u32);
    let mut window = Vec::new();
    for e in unrolled.edges() {
        let (x, y) = e.start;
        let inside = match e.dir {
            Dir::E => rect.0 <= x && x < rect.2 && rect.1 <= y && y <= rect.3,
            Dir::N => rect.0 <= x && x <= rect.2 && rect.1 <= y && y < rect.3,
        };
        if inside {
            let pi = d2 * x - d1 * y;
            let idx = path.index_of_pi(pi).expect("window label must match an edge");
            debug_assert_eq!(path.edge(idx).dir, e.dir);
            window.push(WindowEdge {
                dir: e.dir,
                start: e.start,
                weight: w[idx],
            });
        }
    }
    debug_assert!(
        window.len() as u64 <= p + q + 1,
        "window too large for dims ({}, {}), totals ({p}, {q}), anchor {m}",
        path.d1(),
        path.d2(),
    );

    let captured: (u64, u64) = window.iter().fold((0, 0), |(cp, cq), e| match e.dir {
        Dir::E => (cp, cq + e.weight as u64),
        Dir::N => (cp + e.weight as u64, cq),
    });
    let full_weight = captured == (p, q);

    let u_tiles = build_u_tiles(&window);
    let v_tiles = build_v_tiles(&window);
    let in_frame = u_tiles.iter().chain(&v_tiles).all(|t| {
        t.rect.0 >= rect.0 && t.rect.1 >= rect.1 && t.rect.2 <= rect.2 && t.rect.3 <= rect.3
    });
    let boundary_clear = if eps < 0 {
        window
            .iter()
            .rev()
            .find(|e| e.dir == Dir::E)
            .is_none_or(|e| e.weight == 0)
    } else {
        window
            .iter()
            .find(|e| e.dir == Dir::N)
            .is_none_or(|e| e.weight == 0)
    };
    FrameTiling {
        anchor,
        rect,
        anchored,
        full_weight,
        in_frame,
        boundary_clear,
        window,
        u_tiles,
        v_tiles,
    }
}

fn build_u_tiles(window: &[WindowEdge]) -> Vec<Tile> {
    let e_edges: Vec<&WindowEdge> = window.iter().filter(|e| e.dir == Dir::E).collect();
    let mut tiles: Vec<Tile> = Vec::new();
    let mut family = 0;
    for (pos, e) in e_edges.iter().enumerate() {
        if e.weight == 0 {
            continue;
        }
        family += 1;
        let ht = e.weight as i64;
        let (x, y) = e.start;
        tiles.push(Tile {
            family,
            index: 1,
            rect: (x, y, x + 1, y + ht),
            color: TileColor::Cyan,
        });
        let mut prev = (x, y);
        for r in 2..=(pos as u32 + 1) {
            let cx = prev.0 - 1;
            let mut cy = prev.1;
            while tiles
                .iter()
                .any(|t| interiors_overlap(t.rect, (cx, cy, cx + 1, cy + ht)))
            {
                cy += 1;
            }
            let color = if cy == prev.1 {
                TileColor::DarkBlue
            } else {
                TileColor::Cyan
            };
            tiles.push(Tile {
                family,
                index: r,
                rect: (cx, cy, cx + 1, cy + ht),
                color,
            });
            prev = (cx, cy);
        }
    }
    tiles
}

fn build_v_tiles(window: &[WindowEdge]) -> Vec<Tile> {
    let n_edges: Vec<&WindowEdge> = window.iter().filter(|e| e.dir == Dir::N).collect();
    let mut tiles: Vec<Tile> = Vec::new();
    let mut family = 0;
    for (pos, e) in n_edges.iter().rev().enumerate() {
        if e.weight == 0 {
            continue;
        }
        family += 1;
        let wd = e.weight as i64;
        let (x, y) = e.start;
        tiles.push(Tile {
            family,
            index: 1,
            rect: (x - wd, y, x, y + 1),
            color: TileColor::Red,
        });
        let mut prev = (x, y);
        for r in 2..=(pos as u32 + 1) {
            let cy = prev.1 + 1;
            let mut cx = prev.0;
            while tiles
                .iter()
                .any(|t| interiors_overlap(t.rect, (cx - wd, cy, cx, cy + 1)))
            {
                cx -= 1;
            }
            let color = if cx == prev.0 {
                TileColor::DarkRed
            } else {
                TileColor::Red
            };
            tiles.push(Tile {
                family,
                index: r,
                rect: (cx - wd, cy, cx, cy + 1),
                color,
            });
            prev = (cx, cy);
        }
    }
    tiles
}

/// The frame analysis of one grading: its totals, whether the determinant
/// condition admits frames at all, and the tiling at every anchor.
pub struct TilingAnalysis {
    pub p: u64,
    pub q: u64,
    pub admissible: bool,
    pub frames: Vec<FrameTiling>,
}

impl TilingAnalysis {
    pub fn tight(&self) -> bool {
        self.frames.iter().any(|f| f.certifies())
    }
}

pub fn analyze(path: &MaxDyckPath, w: &[u32]) -> TilingAnalysis {
    let (p, q) = weight_totals(path, w);
    let Some(eps) = det_sign(path, p, q) else {
        return TilingAnalysis {
            p,
            q,
            admissible: false,
            frames: Vec::new(),
        };
    };
    let gamma = gcd_u(p, q);
    // anchor labels beyond the dimension name no edge and carry no frame
    let usable = if eps < 0 { path.d1() as u64 } else { path.d2() as u64 };
    let frames = (0..gamma.min(usable))
        .map(|m| tile_frame(path, w, p, q, m))
        .collect();
    TilingAnalysis {
        p,
        q,
        admissible: true,
        frames,
    }
}

/// Tightness decided purely by frames and footprint colors.
pub fn is_tight_via_tiles(path: &MaxDyckPath, w: &[u32]) -> bool {
    analyze(path, w).tight()
}

/// Plain-text rendering of one frame: C cyan, B dark blue, R red, D dark
/// red, P their purple overlap, X a forbidden overlap, dots empty cells
/// between the path and the frame.
pub fn render_ascii(frame: &FrameTiling) -> String {
    let (x0, y0, x1, y1) = frame.rect;
    let w = (x1 - x0) as usize;
    let mut out = String::new();
    out.push('+');
    out.push_str(&"-".repeat(w));
    out.push_str("+\n");
    for cy in (y0..y1).rev() {
        out.push('|');
        for cx in x0..x1 {
            let cell = (cx, cy, cx + 1, cy + 1);
            let ucol = frame
                .u_tiles
                .iter()
                .find(|t| interiors_overlap(t.rect, cell))
                .map(|t| t.color);
            let vcol = frame
                .v_tiles
                .iter()
                .find(|t| interiors_overlap(t.rect, cell))
                .map(|t| t.color);
            let ch = match (ucol, vcol) {
                (Some(TileColor::DarkBlue), Some(TileColor::DarkRed)) => 'P',
                (Some(_), Some(_)) => 'X',
                (Some(TileColor::Cyan), None) => 'C',
                (Some(TileColor::DarkBlue), None) => 'B',
                (None, Some(TileColor::Red)) => 'R',
                (None, Some(TileColor::DarkRed)) => 'D',
                _ => {
                    if cy >= frame.path_height_at(cx) {
                        '.'
                    } else {
                        ' '
                    }
                }
            };
            out.push(ch);
        }
        out.push_str("|\n");
    }
    out.push('+');
    out.push_str(&"-".repeat(w));
    out.push_str("+\n");
    out
}

const SVG_SCALE: i64 = 24;
const SVG_PAD: i64 = 12;

/// Pixel footprint of one rendered frame.
pub fn svg_size(frame: &FrameTiling) -> (i64, i64) {
    let (x0, y0, x1, y1) = frame.rect;
    (
        (x1 - x0) * SVG_SCALE + 2 * SVG_PAD,
        (y1 - y0) * SVG_SCALE + 2 * SVG_PAD,
    )
}

fn render_svg_into(out: &mut String, frame: &FrameTiling, ox: i64, oy: i64) {
    let (x0, y0, x1, y1) = frame.rect;
    let fx = |x: i64| ox + SVG_PAD + (x - x0) * SVG_SCALE;
    // svg y axis points down
    let fy = |y: i64| oy + SVG_PAD + (y1 - y) * SVG_SCALE;
    for t in frame.u_tiles.iter().chain(&frame.v_tiles) {
        let color = match t.color {
            TileColor::Cyan => "cyan",
            TileColor::DarkBlue => "blue",
            TileColor::Red => "red",
            TileColor::DarkRed => "maroon",
        };
        let (rx0, ry0, rx1, ry1) = t.rect;
        out.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{color}\" \
             fill-opacity=\"0.55\" stroke=\"{color}\"/>\n",
            fx(rx0),
            fy(ry1),
            (rx1 - rx0) * SVG_SCALE,
            (ry1 - ry0) * SVG_SCALE,
        ));
    }
    let mut points = String::new();
    if let Some(first) = frame.window.first() {
        points.push_str(&format!("{},{}", fx(first.start.0), fy(first.start.1)));
    }
    for e in &frame.window {
        let (ex, ey) = match e.dir {
            Dir::E => (e.start.0 + 1, e.start.1),
            Dir::N => (e.start.0, e.start.1 + 1),
        };
        points.push_str(&format!(" {},{}", fx(ex), fy(ey)));
    }
    out.push_str(&format!(
        "<polyline points=\"{points}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n"
    ));
    out.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"purple\" \
         stroke-width=\"2\"/>\n",
        fx(x0),
        fy(y1),
        (x1 - x0) * SVG_SCALE,
        (y1 - y0) * SVG_SCALE,
    ));
}

/// SVG rendering of one frame: footprints over the path and frame outline.
pub fn render_svg(frame: &FrameTiling) -> String {
    let (wpx, hpx) = svg_size(frame);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{wpx}\" height=\"{hpx}\" \
         viewBox=\"0 0 {wpx} {hpx}\">\n"
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{wpx}\" height=\"{hpx}\" fill=\"white\"/>\n"
    ));
    render_svg_into(&mut out, frame, 0, 0);
    out.push_str("</svg>\n");
    out
}

/// One SVG document laying out several labeled frames in a square-ish grid.
pub fn render_svg_gallery(items: &[(String, &FrameTiling)]) -> String {
    let label_h = 20;
    if items.is_empty() {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1\" height=\"1\" \
                viewBox=\"0 0 1 1\"/>\n"
            .to_string();
    }
    let cols = (1..).find(|c| c * c >= items.len()).unwrap();
    let cell_w = items.iter().map(|(_, f)| svg_size(f).0).max().unwrap();
    let cell_h = items.iter().map(|(_, f)| svg_size(f).1).max().unwrap() + label_h;
    let rows = items.len().div_ceil(cols);
    let wpx = cell_w * cols as i64;
    let hpx = cell_h * rows as i64;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{wpx}\" height=\"{hpx}\" \
         viewBox=\"0 0 {wpx} {hpx}\">\n"
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{wpx}\" height=\"{hpx}\" fill=\"white\"/>\n"
    ));
    for (idx, (label, frame)) in items.iter().enumerate() {
        let ox = (idx % cols) as i64 * cell_w;
        let oy = (idx / cols) as i64 * cell_h;
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"monospace\" font-size=\"13\">{label}</text>\n",
            ox + SVG_PAD,
            oy + 14,
        ));
        render_svg_into(&mut out, frame, ox, oy + label_h);
    }
    out.push_str("</svg>\n");
    out
}
