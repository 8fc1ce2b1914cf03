//! Target-stroke finding.
//!
//! Consonants: take the cluster holding the first ink pixel in scan order,
//! thin it to a skeleton, cut the skeleton at junctions, split each branch at
//! its corners into directional strokes and pick by priority rightward >
//! downward > diagonal, then longer, then earlier start. Vowels: the longest
//! horizontal or vertical ink run anywhere in the glyph.

use std::collections::BTreeSet;

use super::{connected_components, GlyphBitmap, GlyphError, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Rightward,
    Downward,
    Diagonal,
}

/// Ordered pixel path with its direction and an ink-thickness estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct StrokeSegment {
    pub path: Vec<Point>,
    pub direction: Direction,
    pub thickness: f64,
}

impl StrokeSegment {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    pub fn reversed(&self) -> StrokeSegment {
        let mut path = self.path.clone();
        path.reverse();
        StrokeSegment { path, ..self.clone() }
    }
}

// E, S, W, N first so a walk never cuts a staircase corner
const WALK_ORDER: [(isize, isize); 8] = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, 1), (-1, -1), (1, -1)];

fn neighbours(p: Point) -> impl Iterator<Item = (isize, isize)> {
    WALK_ORDER
        .iter()
        .map(move |&(dx, dy)| (p.0 as isize + dx, p.1 as isize + dy))
}

/// Zhang-Suen thinning. Keeps 8-connectivity; 2-pixel-thick blobs may vanish.
pub fn thin(mask: &GlyphBitmap) -> GlyphBitmap {
    let mut bm = mask.clone();
    loop {
        let mut changed = false;
        for step in 0..2 {
            let mut kill = Vec::new();
            for (x, y) in bm.ink_pixels() {
                let (xi, yi) = (x as isize, y as isize);
                // P2..P9 clockwise from north
                let p = [
                    bm.get_i(xi, yi - 1),
                    bm.get_i(xi + 1, yi - 1),
                    bm.get_i(xi + 1, yi),
                    bm.get_i(xi + 1, yi + 1),
                    bm.get_i(xi, yi + 1),
                    bm.get_i(xi - 1, yi + 1),
                    bm.get_i(xi - 1, yi),
                    bm.get_i(xi - 1, yi - 1),
                ];
                let b = p.iter().filter(|&&v| v).count();
                let a = (0..8).filter(|&i| !p[i] && p[(i + 1) % 8]).count();
                let (n, e, s, w) = (p[0], p[2], p[4], p[6]);
                let cond = if step == 0 {
                    !(n && e && s) && !(e && s && w)
                } else {
                    !(n && e && w) && !(n && s && w)
                };
                if (2..=6).contains(&b) && a == 1 && cond {
                    kill.push((x, y));
                }
            }
            changed |= !kill.is_empty();
            for (x, y) in kill {
                bm.set(x, y, false);
            }
        }
        if !changed {
            return bm;
        }
    }
}

fn scan_key(p: &Point) -> (usize, usize) {
    (p.1, p.0)
}

/// Walks a pixel set into paths, each starting from the earliest endpoint.
fn trace_paths(pixels: &[Point]) -> Vec<Vec<Point>> {
    let mut remaining: BTreeSet<(usize, usize)> = pixels.iter().map(scan_key).collect();
    let present = |set: &BTreeSet<(usize, usize)>, (x, y): (isize, isize)| {
        x >= 0 && y >= 0 && set.contains(&(y as usize, x as usize))
    };
    let mut paths = Vec::new();
    while let Some(&first) = remaining.iter().next() {
        let start = remaining
            .iter()
            .copied()
            .find(|&(y, x)| neighbours((x, y)).filter(|&q| present(&remaining, q)).count() <= 1)
            .unwrap_or(first);
        remaining.remove(&start);
        let mut cur = (start.1, start.0);
        let mut path = vec![cur];
        while let Some(next) = neighbours(cur).find(|&q| present(&remaining, q)) {
            cur = (next.0 as usize, next.1 as usize);
            remaining.remove(&(cur.1, cur.0));
            path.push(cur);
        }
        paths.push(path);
    }
    paths
}

fn point_line_distance(p: Point, a: Point, b: Point) -> f64 {
    let (px, py) = (p.0 as f64, p.1 as f64);
    let (ax, ay) = (a.0 as f64, a.1 as f64);
    let (bx, by) = (b.0 as f64, b.1 as f64);
    let (dx, dy) = (bx - ax, by - ay);
    let len = dx.hypot(dy);
    if len == 0.0 {
        return (px - ax).hypot(py - ay);
    }
    ((px - ax) * dy - (py - ay) * dx).abs() / len
}

/// Douglas-Peucker corner indices, endpoints included.
fn corners(path: &[Point], tolerance: f64) -> Vec<usize> {
    fn rec(path: &[Point], lo: usize, hi: usize, tol: f64, out: &mut Vec<usize>) {
        let (mut best, mut best_d) = (lo, 0.0);
        for i in lo + 1..hi {
            let d = point_line_distance(path[i], path[lo], path[hi]);
            if d > best_d {
                best = i;
                best_d = d;
            }
        }
        if best_d > tol {
            rec(path, lo, best, tol, out);
            out.push(best);
            rec(path, best, hi, tol, out);
        }
    }
    let mut out = vec![0];
    if path.len() > 1 {
        rec(path, 0, path.len() - 1, tolerance, &mut out);
        out.push(path.len() - 1);
    }
    out
}

fn ink_run(glyph: &GlyphBitmap, p: Point, (dx, dy): (isize, isize)) -> usize {
    let mut n = 1;
    for sign in [-1isize, 1] {
        let (mut x, mut y) = (p.0 as isize + sign * dx, p.1 as isize + sign * dy);
        while glyph.get_i(x, y) {
            n += 1;
            x += sign * dx;
            y += sign * dy;
        }
    }
    n
}

fn thickness(glyph: &GlyphBitmap, path: &[Point], direction: Direction) -> f64 {
    let total: usize = path
        .iter()
        .map(|&p| match direction {
            Direction::Rightward => ink_run(glyph, p, (0, 1)),
            Direction::Downward => ink_run(glyph, p, (1, 0)),
            Direction::Diagonal => ink_run(glyph, p, (1, 0)).min(ink_run(glyph, p, (0, 1))),
        })
        .sum();
    total as f64 / path.len().max(1) as f64
}

fn classify(piece: &[Point]) -> (Direction, Vec<Point>) {
    let (a, b) = (piece[0], piece[piece.len() - 1]);
    let dx = b.0 as isize - a.0 as isize;
    let dy = b.1 as isize - a.1 as isize;
    let (direction, flip) = if piece.len() == 1 || dx.abs() > dy.abs() {
        (Direction::Rightward, dx < 0)
    } else if dy.abs() > dx.abs() {
        (Direction::Downward, dy < 0)
    } else {
        (Direction::Diagonal, dy < 0)
    };
    let mut path = piece.to_vec();
    if flip {
        path.reverse();
    }
    (direction, path)
}

fn primary(direction: Direction, p: Point) -> usize {
    match direction {
        Direction::Rightward => p.0,
        Direction::Downward | Direction::Diagonal => p.1,
    }
}

/// Splits until every piece is monotone along its direction's main axis.
fn emit_monotone(piece: &[Point], glyph: &GlyphBitmap, out: &mut Vec<StrokeSegment>) {
    let (direction, path) = classify(piece);
    let breaks = path
        .windows(2)
        .position(|w| primary(direction, w[1]) < primary(direction, w[0]));
    match breaks {
        None => out.push(StrokeSegment {
            thickness: thickness(glyph, &path, direction),
            path,
            direction,
        }),
        Some(i) => {
            emit_monotone(&path[..=i], glyph, out);
            emit_monotone(&path[i + 1..], glyph, out);
        }
    }
}

/// Every directional stroke of the first-scanned cluster's skeleton.
pub fn consonant_strokes(glyph: &GlyphBitmap) -> Result<Vec<StrokeSegment>, GlyphError> {
    let cluster = connected_components(glyph)
        .into_iter()
        .next()
        .ok_or(GlyphError::Blank)?;
    let mask = cluster.mask(glyph.width(), glyph.height());
    let mut skeleton = thin(&mask);
    if skeleton.ink_count() == 0 {
        skeleton.set(cluster.pixels[0].0, cluster.pixels[0].1, true);
    }
    let skel_pixels: Vec<Point> = skeleton.ink_pixels().collect();
    // three or more separate arms meet here; staircase corners have two
    let is_junction = |&(x, y): &Point| {
        let (x, y) = (x as isize, y as isize);
        let ring = [(0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1)]
            .map(|(dx, dy)| skeleton.get_i(x + dx, y + dy));
        (0..8).filter(|&i| !ring[i] && ring[(i + 1) % 8]).count() >= 3
    };
    let mut branches_bm = skeleton.clone();
    for p in skel_pixels.iter().filter(|p| is_junction(p)) {
        branches_bm.set(p.0, p.1, false);
    }
    // a skeleton made only of junction pixels (tiny blobs) keeps them
    if branches_bm.ink_count() == 0 {
        branches_bm = skeleton;
    }

    let mut strokes = Vec::new();
    for branch in connected_components(&branches_bm) {
        for path in trace_paths(&branch.pixels) {
            let cuts = corners(&path, 1.0);
            for (k, w) in cuts.windows(2).enumerate() {
                // consecutive pieces share their corner pixel
                let lo = if k == 0 { w[0] } else { w[0] + 1 };
                if lo <= w[1] {
                    emit_monotone(&path[lo..=w[1]], glyph, &mut strokes);
                }
            }
            if cuts.len() == 1 {
                emit_monotone(&path, glyph, &mut strokes);
            }
        }
    }
    Ok(strokes)
}

fn consonant_rank(s: &StrokeSegment, width: usize) -> (Direction, std::cmp::Reverse<usize>, usize) {
    let start = s.path[0];
    (s.direction, std::cmp::Reverse(s.len()), start.1 * width + start.0)
}

pub fn find_target_consonant_stroke(glyph: &GlyphBitmap) -> Result<StrokeSegment, GlyphError> {
    consonant_strokes(glyph)?
        .into_iter()
        .min_by_key(|s| consonant_rank(s, glyph.width()))
        .ok_or(GlyphError::Blank)
}

/// All maximal horizontal and vertical ink runs, each in axis order.
pub fn straight_runs(glyph: &GlyphBitmap) -> Vec<StrokeSegment> {
    let mut runs = Vec::new();
    for y in 0..glyph.height() {
        let mut x = 0;
        while x < glyph.width() {
            if glyph.get(x, y) {
                let start = x;
                while x < glyph.width() && glyph.get(x, y) {
                    x += 1;
                }
                let path: Vec<Point> = (start..x).map(|xx| (xx, y)).collect();
                runs.push(StrokeSegment {
                    thickness: thickness(glyph, &path, Direction::Rightward),
                    path,
                    direction: Direction::Rightward,
                });
            } else {
                x += 1;
            }
        }
    }
    for x in 0..glyph.width() {
        let mut y = 0;
        while y < glyph.height() {
            if glyph.get(x, y) {
                let start = y;
                while y < glyph.height() && glyph.get(x, y) {
                    y += 1;
                }
                let path: Vec<Point> = (start..y).map(|yy| (x, yy)).collect();
                runs.push(StrokeSegment {
                    thickness: thickness(glyph, &path, Direction::Downward),
                    path,
                    direction: Direction::Downward,
                });
            } else {
                y += 1;
            }
        }
    }
    runs
}

pub fn find_target_vowel_stroke(glyph: &GlyphBitmap) -> Result<StrokeSegment, GlyphError> {
    let width = glyph.width();
    straight_runs(glyph)
        .into_iter()
        .min_by_key(|s| {
            let vertical_first = s.direction != Direction::Downward;
            let start = s.path[0];
            (std::cmp::Reverse(s.len()), vertical_first, start.1 * width + start.0)
        })
        .ok_or(GlyphError::Blank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horizontal_bar() {
        let bm = GlyphBitmap::from_rows(&[".....", ".###.", "....."]);
        let s = find_target_consonant_stroke(&bm).unwrap();
        assert_eq!(s.direction, Direction::Rightward);
        assert_eq!(s.path, vec![(1, 1), (2, 1), (3, 1)]);
        assert_eq!(s.thickness, 1.0);
    }

    #[test]
    fn single_pixel_is_rightward() {
        let bm = GlyphBitmap::from_rows(&["...", ".#.", "..."]);
        let s = find_target_consonant_stroke(&bm).unwrap();
        assert_eq!((s.direction, s.path.clone()), (Direction::Rightward, vec![(1, 1)]));
        assert_eq!(find_target_vowel_stroke(&bm).unwrap().direction, Direction::Downward);
    }

    #[test]
    fn giyeok_prefers_top_bar() {
        let bm = GlyphBitmap::from_rows(&[
            "........", ".######.", "......#.", "......#.", "......#.", "......#.", "........",
        ]);
        let s = find_target_consonant_stroke(&bm).unwrap();
        assert_eq!(s.direction, Direction::Rightward);
        assert!(s.path.iter().all(|p| p.1 == 1));
        assert!(s.len() >= 5);
    }

    #[test]
    fn thick_bar_skeleton_is_central() {
        let mut rows = vec!["..........".to_string()];
        for _ in 0..3 {
            rows.push(".########.".to_string());
        }
        rows.push("..........".to_string());
        let rows: Vec<&str> = rows.iter().map(String::as_str).collect();
        let bm = GlyphBitmap::from_rows(&rows);
        let s = find_target_consonant_stroke(&bm).unwrap();
        assert_eq!(s.direction, Direction::Rightward);
        assert!(s.path.iter().all(|p| p.1 == 2), "{s:?}");
        assert_eq!(s.thickness, 3.0);
    }

    #[test]
    fn diagonal_only() {
        let bm = GlyphBitmap::from_rows(&["#...", ".#..", "..#.", "...#"]);
        let s = find_target_consonant_stroke(&bm).unwrap();
        assert_eq!(s.direction, Direction::Diagonal);
        assert_eq!(s.path.first(), Some(&(0, 0)));
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn vowel_longest_run_and_ties() {
        let a = GlyphBitmap::from_rows(&[".#...", ".#...", ".###.", ".#...", ".#..."]);
        let s = find_target_vowel_stroke(&a).unwrap();
        assert_eq!(s.direction, Direction::Downward);
        assert_eq!(s.path, (0..5).map(|y| (1, y)).collect::<Vec<_>>());
        let plus = GlyphBitmap::from_rows(&[".#.", "###", ".#."]);
        let s = find_target_vowel_stroke(&plus).unwrap();
        assert_eq!((s.direction, s.path[0]), (Direction::Downward, (1, 0)));
    }

    #[test]
    fn blank_is_error() {
        let bm = GlyphBitmap::new(3, 3);
        assert!(matches!(find_target_consonant_stroke(&bm), Err(GlyphError::Blank)));
        assert!(matches!(find_target_vowel_stroke(&bm), Err(GlyphError::Blank)));
    }
}
