//! Page layout.
//!
//! Each block fills one `cell × cell` square below a tone strip of height
//! `max(cell / 4, 1)`. Blocks run left to right; a word boundary leaves one
//! empty cell. Slot rectangles, as fractions `(x, y, w, h)` of the cell:
//!
//! | nucleus shape | onset | nucleus | coda |
//! |---|---|---|---|
//! | vertical | 0, 0, .5, 1 | .5, 0, .5, 1 | |
//! | vertical + coda | 0, 0, .5, .6 | .5, 0, .5, .6 | 0, .6, 1, .4 |
//! | horizontal, silent | 0, 0, 1, .5 | 0, .5, 1, .5 | |
//! | horizontal + coda | 0, 0, 1, .35 | 0, .35, 1, .25 | 0, .6, 1, .4 |
//! | compound | 0, 0, .5, .5 | 0, 0, 1, 1 | |
//! | compound + coda | 0, 0, .5, .3 | 0, 0, 1, .6 | 0, .6, 1, .4 |
//!
//! Glyphs are scaled nearest-neighbour into their rectangle and OR-ed onto the
//! page. Tones 1-4 draw that many oblique ticks in the strip; tone 5 a dot.

use super::{Atlas, GlyphBitmap, GlyphError};
use crate::jamo::{Base, JamoToken, SyllableBlock, Tone, Transcript, VowelShape};

pub const MIN_CELL: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub x: usize,
    pub y: usize,
    pub w: usize,
    pub h: usize,
}

type Frac = (f64, f64, f64, f64);

fn fractions(shape: VowelShape, coda: bool) -> (Frac, Frac) {
    use VowelShape::*;
    match (shape, coda) {
        (Vertical, false) => ((0.0, 0.0, 0.5, 1.0), (0.5, 0.0, 0.5, 1.0)),
        (Vertical, true) => ((0.0, 0.0, 0.5, 0.6), (0.5, 0.0, 0.5, 0.6)),
        (Horizontal, false) => ((0.0, 0.0, 1.0, 0.5), (0.0, 0.5, 1.0, 0.5)),
        (Horizontal, true) => ((0.0, 0.0, 1.0, 0.35), (0.0, 0.35, 1.0, 0.25)),
        (Mixed, false) => ((0.0, 0.0, 0.5, 0.5), (0.0, 0.0, 1.0, 1.0)),
        (Mixed, true) => ((0.0, 0.0, 0.5, 0.3), (0.0, 0.0, 1.0, 0.6)),
    }
}

const CODA: Frac = (0.0, 0.6, 1.0, 0.4);

fn to_rect((fx, fy, fw, fh): Frac, cell: usize) -> Rect {
    let c = cell as f64;
    let x = (fx * c).round() as usize;
    let y = (fy * c).round() as usize;
    Rect {
        x,
        y,
        w: ((fx + fw) * c).round() as usize - x,
        h: ((fy + fh) * c).round() as usize - y,
    }
}

/// Slot rectangles of a block inside its cell, in writing order.
pub fn block_layout(block: &SyllableBlock, cell: usize) -> Vec<(JamoToken, Rect)> {
    let shape = match block.nucleus().base() {
        Base::Vowel(v) => v.shape(),
        _ => VowelShape::Horizontal,
    };
    let (onset, nucleus) = fractions(shape, block.coda().is_some());
    let mut out = vec![
        (block.onset(), to_rect(onset, cell)),
        (block.nucleus(), to_rect(nucleus, cell)),
    ];
    if let Some(coda) = block.coda() {
        out.push((coda, to_rect(CODA, cell)));
    }
    out
}

pub fn tone_strip_height(cell: usize) -> usize {
    (cell / 4).max(1)
}

/// The tone mark for one cell: a `cell × strip` bitmap.
pub fn tone_mark(tone: Tone, cell: usize) -> GlyphBitmap {
    let s = tone_strip_height(cell);
    let mut bm = GlyphBitmap::new(cell, s);
    match tone.value() {
        0 => {}
        5 => {
            let d = (s / 2).max(1);
            let (x0, y0) = ((cell - d) / 2, (s - d) / 2);
            for y in y0..y0 + d {
                for x in x0..x0 + d {
                    bm.set(x, y, true);
                }
            }
        }
        k => {
            let k = k as usize;
            for i in 0..k {
                let centre = (i + 1) * cell / (k + 1);
                let x0 = centre.saturating_sub(s / 2);
                for j in 0..s {
                    if x0 + j < cell {
                        bm.set(x0 + j, s - 1 - j, true);
                    }
                }
            }
        }
    }
    bm
}

/// Renders a transcript. Page size is `(blocks + words - 1) * cell` by
/// `strip + cell`; an empty transcript gives a 0×0 page.
pub fn render_text(transcript: &Transcript, atlas: &Atlas, cell: usize) -> Result<GlyphBitmap, GlyphError> {
    if cell < MIN_CELL {
        return Err(GlyphError::CellSize(cell));
    }
    if transcript.is_empty() {
        return Ok(GlyphBitmap::new(0, 0));
    }
    let strip = tone_strip_height(cell);
    let columns = transcript.block_count() + transcript.words().len() - 1;
    let mut page = GlyphBitmap::new(columns * cell, strip + cell);
    let mut col = 0;
    for word in transcript.words() {
        for block in word {
            let x0 = col * cell;
            for (token, r) in block_layout(block, cell) {
                let glyph = atlas.glyph(&token)?;
                if r.w > 0 && r.h > 0 {
                    page.paste(&glyph.scaled(r.w, r.h), x0 + r.x, strip + r.y);
                }
            }
            page.paste(&tone_mark(block.tone(), cell), x0, 0);
            col += 1;
        }
        col += 1;
    }
    Ok(page)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glyph::synth::base_glyphs;
    use crate::jamo::parse_tokens;

    #[test]
    fn rects_tile_the_cell() {
        let t = parse_tokens("H+A . G+O+N . G+WA+N").unwrap();
        let blocks: Vec<_> = t.blocks().copied().collect();
        let r = block_layout(&blocks[0], 32);
        assert_eq!(
            r[0].1,
            Rect {
                x: 0,
                y: 0,
                w: 16,
                h: 32
            }
        );
        assert_eq!(
            r[1].1,
            Rect {
                x: 16,
                y: 0,
                w: 16,
                h: 32
            }
        );
        let r = block_layout(&blocks[1], 32);
        assert_eq!(
            r[1].1,
            Rect {
                x: 0,
                y: 11,
                w: 32,
                h: 8
            }
        );
        assert_eq!(
            r[2].1,
            Rect {
                x: 0,
                y: 19,
                w: 32,
                h: 13
            }
        );
    }

    #[test]
    fn page_geometry() {
        let atlas = Atlas::new(base_glyphs());
        let t = parse_tokens("N+I3 . H+A3 / NG+O").unwrap();
        let page = render_text(&t, &atlas, 16).unwrap();
        assert_eq!((page.width(), page.height()), (4 * 16, 4 + 16));
        // the gap cell is blank
        assert!(page.ink_pixels().all(|(x, _)| !(32..48).contains(&x)));
        let empty = render_text(&Transcript::default(), &atlas, 16).unwrap();
        assert_eq!((empty.width(), empty.height()), (0, 0));
        assert!(matches!(render_text(&t, &atlas, 3), Err(GlyphError::CellSize(3))));
    }

    #[test]
    fn missing_glyph() {
        let atlas = Atlas::new(base_glyphs());
        let t = parse_tokens("B*+A").unwrap();
        assert!(matches!(render_text(&t, &atlas, 16), Err(GlyphError::MissingGlyph(n)) if n == "B*"));
    }

    #[test]
    fn tone_marks_count_ticks() {
        for k in 1..=4u8 {
            let m = tone_mark(Tone::new(k).unwrap(), 32);
            let cc = crate::glyph::connected_components(&m);
            assert_eq!(cc.len(), k as usize, "tone {k}");
        }
        assert!(tone_mark(Tone::new(5).unwrap(), 32).ink_count() > 0);
        assert_eq!(tone_mark(Tone::NONE, 32).ink_count(), 0);
    }
}
