use std::fmt;

use super::GlyphError;

/// Largest glyph side accepted by [`load_glyph`].
pub const MAX_GLYPH_SIDE: usize = 256;

/// Pixel coordinate, `(x, y)` with y growing downward.
pub type Point = (usize, usize);

/// Binary image, row-major, `true` = ink.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GlyphBitmap {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl GlyphBitmap {
    /// Blank canvas. Zero sizes are allowed for pages; loaded glyphs are
    /// checked separately.
    pub fn new(width: usize, height: usize) -> Self {
        GlyphBitmap {
            width,
            height,
            bits: vec![false; width * height],
        }
    }

    /// Test helper: rows of `#` (ink) and `.` (paper).
    pub fn from_rows(rows: &[&str]) -> Self {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.chars().count());
        let mut bm = GlyphBitmap::new(width, height);
        for (y, row) in rows.iter().enumerate() {
            assert_eq!(row.chars().count(), width, "ragged rows");
            for (x, c) in row.chars().enumerate() {
                bm.set(x, y, c == '#');
            }
        }
        bm
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        x < self.width && y < self.height && self.bits[y * self.width + x]
    }

    /// Signed lookup; anything off the canvas is paper.
    pub fn get_i(&self, x: isize, y: isize) -> bool {
        x >= 0 && y >= 0 && self.get(x as usize, y as usize)
    }

    pub fn set(&mut self, x: usize, y: usize, ink: bool) {
        assert!(
            x < self.width && y < self.height,
            "({x},{y}) outside {}x{}",
            self.width,
            self.height
        );
        self.bits[y * self.width + x] = ink;
    }

    pub fn ink_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Ink pixels in scan order (rows top to bottom, left to right).
    pub fn ink_pixels(&self) -> impl Iterator<Item = Point> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| (i % self.width, i / self.width))
    }

    /// Nearest-neighbour resize.
    pub fn scaled(&self, width: usize, height: usize) -> GlyphBitmap {
        let mut out = GlyphBitmap::new(width, height);
        if self.width == 0 || self.height == 0 {
            return out;
        }
        for y in 0..height {
            let sy = y * self.height / height;
            for x in 0..width {
                let sx = x * self.width / width;
                out.bits[y * width + x] = self.bits[sy * self.width + sx];
            }
        }
        out
    }

    /// ORs `other` onto this bitmap with its top-left corner at `(x0, y0)`,
    /// clipping at the edges.
    pub fn paste(&mut self, other: &GlyphBitmap, x0: usize, y0: usize) {
        for (x, y) in other.ink_pixels() {
            let (tx, ty) = (x0 + x, y0 + y);
            if tx < self.width && ty < self.height {
                self.bits[ty * self.width + tx] = true;
            }
        }
    }

    /// Binary PBM (P4).
    pub fn to_pbm(&self) -> Vec<u8> {
        let mut out = format!("P4\n{} {}\n", self.width, self.height).into_bytes();
        let row_bytes = self.width.div_ceil(8);
        for y in 0..self.height {
            let mut row = vec![0u8; row_bytes];
            for x in 0..self.width {
                if self.get(x, y) {
                    row[x / 8] |= 0x80 >> (x % 8);
                }
            }
            out.extend(row);
        }
        out
    }

    /// Plain PBM (P1), one text row per pixel row.
    pub fn to_pbm_ascii(&self) -> String {
        let mut out = format!("P1\n{} {}\n", self.width, self.height);
        for y in 0..self.height {
            let row: Vec<&str> = (0..self.width)
                .map(|x| if self.get(x, y) { "1" } else { "0" })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for GlyphBitmap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GlyphBitmap {}x{}", self.width, self.height)?;
        for y in 0..self.height {
            let row: String = (0..self.width)
                .map(|x| if self.get(x, y) { '#' } else { '.' })
                .collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Reads a PBM (P1 or P4) of any size, including empty pages.
pub fn parse_pbm(bytes: &[u8]) -> Result<GlyphBitmap, GlyphError> {
    let bad = |msg: &str| GlyphError::Pbm(msg.to_string());
    let mut pos = 0;
    let mut header = Vec::new();
    while header.len() < 3 {
        // skip whitespace and comments
        while pos < bytes.len() {
            match bytes[pos] {
                b'#' => {
                    while pos < bytes.len() && bytes[pos] != b'\n' {
                        pos += 1;
                    }
                }
                b if b.is_ascii_whitespace() => pos += 1,
                _ => break,
            }
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() && bytes[pos] != b'#' {
            pos += 1;
        }
        if start == pos {
            return Err(bad("truncated header"));
        }
        header.push(std::str::from_utf8(&bytes[start..pos]).map_err(|_| bad("non-ASCII header"))?);
    }
    let magic = header[0];
    let dim = |s: &str| s.parse::<usize>().map_err(|_| bad("bad dimension"));
    let (width, height) = (dim(header[1])?, dim(header[2])?);
    let mut bm = GlyphBitmap::new(width, height);
    match magic {
        "P1" => {
            let mut digits = bytes[pos..]
                .split(|b| *b == b'\n')
                .flat_map(|line| {
                    let end = line.iter().position(|b| *b == b'#').unwrap_or(line.len());
                    line[..end].to_vec()
                })
                .filter(|b| !b.is_ascii_whitespace());
            for y in 0..height {
                for x in 0..width {
                    match digits.next() {
                        Some(b'1') => bm.set(x, y, true),
                        Some(b'0') => {}
                        Some(_) => return Err(bad("P1 raster holds something other than 0/1")),
                        None => return Err(bad("P1 raster too short")),
                    }
                }
            }
        }
        "P4" => {
            // exactly one whitespace byte separates header and raster
            if pos >= bytes.len() && width * height > 0 {
                return Err(bad("P4 raster missing"));
            }
            let raster = bytes.get(pos + 1..).unwrap_or(&[]);
            let row_bytes = width.div_ceil(8);
            if raster.len() < row_bytes * height {
                return Err(bad("P4 raster too short"));
            }
            for y in 0..height {
                for x in 0..width {
                    if raster[y * row_bytes + x / 8] & (0x80 >> (x % 8)) != 0 {
                        bm.set(x, y, true);
                    }
                }
            }
        }
        _ => return Err(bad("not a P1 or P4 PBM")),
    }
    Ok(bm)
}

/// Reads one glyph: a PBM with sides in `1..=256` and at least one ink pixel.
pub fn load_glyph(bytes: &[u8]) -> Result<GlyphBitmap, GlyphError> {
    let bm = parse_pbm(bytes)?;
    let side_ok = |s: usize| (1..=MAX_GLYPH_SIDE).contains(&s);
    if !side_ok(bm.width()) || !side_ok(bm.height()) {
        return Err(GlyphError::Dimensions {
            width: bm.width(),
            height: bm.height(),
        });
    }
    if bm.ink_count() == 0 {
        return Err(GlyphError::Blank);
    }
    Ok(bm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_and_p4_agree() {
        let p1 = load_glyph(b"P1 3 1\n1 1 1\n").unwrap();
        assert_eq!((p1.width(), p1.height(), p1.ink_count()), (3, 1, 3));
        let p4 = load_glyph(b"P4\n3 1\n\xe0").unwrap();
        assert_eq!(p1, p4);
    }

    #[test]
    fn p1_comments_and_packed_digits() {
        let bm = load_glyph(b"P1\n# a comment\n4 2\n1001\n0 1 1 0 # tail\n").unwrap();
        assert_eq!(bm, GlyphBitmap::from_rows(&["#..#", ".##."]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(load_glyph(b"P1 0 0\n"), Err(GlyphError::Dimensions { .. })));
        assert!(matches!(load_glyph(b"P1 2 1\n0 0\n"), Err(GlyphError::Blank)));
        assert!(matches!(load_glyph(b"P2 2 1\n0 0\n"), Err(GlyphError::Pbm(_))));
        assert!(matches!(load_glyph(b"P1 2"), Err(GlyphError::Pbm(_))));
        assert!(matches!(load_glyph(b"P1 2 1\n1"), Err(GlyphError::Pbm(_))));
        assert!(matches!(load_glyph(b"P4\n9 1\n\xff"), Err(GlyphError::Pbm(_))));
        let wide = format!("P1 300 1\n{}", "1 ".repeat(300));
        assert!(matches!(
            load_glyph(wide.as_bytes()),
            Err(GlyphError::Dimensions { .. })
        ));
    }

    #[test]
    fn write_read_round_trip() {
        let bm = GlyphBitmap::from_rows(&["#........#", "..#####...", ".........#"]);
        assert_eq!(load_glyph(&bm.to_pbm()).unwrap(), bm);
        assert_eq!(load_glyph(bm.to_pbm_ascii().as_bytes()).unwrap(), bm);
        let empty = GlyphBitmap::new(0, 0);
        assert_eq!(parse_pbm(&empty.to_pbm()).unwrap(), empty);
    }

    #[test]
    fn scale_and_paste() {
        let bm = GlyphBitmap::from_rows(&["#.", ".#"]);
        assert_eq!(
            bm.scaled(4, 4),
            GlyphBitmap::from_rows(&["##..", "##..", "..##", "..##"])
        );
        let mut page = GlyphBitmap::new(3, 3);
        page.paste(&bm, 2, 2);
        assert_eq!(page.ink_pixels().collect::<Vec<_>>(), vec![(2, 2)]);
    }
}
