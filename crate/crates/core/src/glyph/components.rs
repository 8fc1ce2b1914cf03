use super::{GlyphBitmap, Point};

/// An 8-connected set of ink pixels, listed in scan order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelCluster {
    pub pixels: Vec<Point>,
}

impl PixelCluster {
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.pixels.binary_search_by_key(&(p.1, p.0), |&(x, y)| (y, x)).is_ok()
    }

    /// The cluster as a bitmap of the given size.
    pub fn mask(&self, width: usize, height: usize) -> GlyphBitmap {
        let mut bm = GlyphBitmap::new(width, height);
        for &(x, y) in &self.pixels {
            bm.set(x, y, true);
        }
        bm
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Maximal 8-connected ink clusters, ordered by their first pixel in scan
/// order. Single pass with union-find over the already-visited neighbours.
pub fn connected_components(bitmap: &GlyphBitmap) -> Vec<PixelCluster> {
    let (w, h) = (bitmap.width(), bitmap.height());
    let mut parent: Vec<usize> = (0..w * h).collect();
    for y in 0..h {
        for x in 0..w {
            if !bitmap.get(x, y) {
                continue;
            }
            let here = y * w + x;
            // W, NW, N, NE
            for (dx, dy) in [(-1isize, 0isize), (-1, -1), (0, -1), (1, -1)] {
                let (nx, ny) = (x as isize + dx, y as isize + dy);
                if bitmap.get_i(nx, ny) {
                    let a = find(&mut parent, here);
                    let b = find(&mut parent, ny as usize * w + nx as usize);
                    if a != b {
                        // keep the earlier pixel as root so roots follow scan order
                        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                        parent[hi] = lo;
                    }
                }
            }
        }
    }

    let mut slot_of_root = vec![usize::MAX; w * h];
    let mut clusters: Vec<PixelCluster> = Vec::new();
    for (x, y) in bitmap.ink_pixels() {
        let root = find(&mut parent, y * w + x);
        if slot_of_root[root] == usize::MAX {
            slot_of_root[root] = clusters.len();
            clusters.push(PixelCluster { pixels: Vec::new() });
        }
        clusters[slot_of_root[root]].pixels.push((x, y));
    }
    clusters
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_dots() {
        let bm = GlyphBitmap::from_rows(&["#..", "..#"]);
        let cc = connected_components(&bm);
        assert_eq!(cc.len(), 2);
        assert_eq!(cc[0].pixels, vec![(0, 0)]);
        assert_eq!(cc[1].pixels, vec![(2, 1)]);
    }

    #[test]
    fn full_square() {
        let bm = GlyphBitmap::from_rows(&["###", "###", "###"]);
        let cc = connected_components(&bm);
        assert_eq!(cc.len(), 1);
        assert_eq!(cc[0].len(), 9);
    }

    #[test]
    fn diagonal_and_u_shapes() {
        // joined only through a diagonal step
        let bm = GlyphBitmap::from_rows(&["#...", ".#..", "..#.", "...#"]);
        assert_eq!(connected_components(&bm).len(), 1);
        // the right arm starts a new label that merges later
        let u = GlyphBitmap::from_rows(&["#.#", "#.#", "###"]);
        let cc = connected_components(&u);
        assert_eq!(cc.len(), 1);
        assert!(cc[0].contains((2, 0)));
        assert!(!cc[0].contains((1, 0)));
    }
}
