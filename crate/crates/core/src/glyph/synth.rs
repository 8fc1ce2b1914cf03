//! Built-in base glyphs: each letter drawn with a 3-pixel square brush on a
//! 32×32 canvas. These seed `glyphs init` and the tests; any PBM set with the
//! same file names can replace them.

use std::collections::BTreeMap;

use super::GlyphBitmap;
use crate::jamo::{Base, Consonant, Letter, Modifier, Vowel};

pub const SIDE: usize = 32;

#[derive(Clone, Copy)]
enum Prim {
    Hl(i32, i32, i32),
    Vl(i32, i32, i32),
    Line(i32, i32, i32, i32),
    Ring(i32, i32, i32),
}
use Prim::*;

struct Pen {
    bm: GlyphBitmap,
    // x' = x * num / den + off
    num: i32,
    den: i32,
    off: i32,
}

impl Pen {
    fn dab(&mut self, x: i32, y: i32) {
        let x = x * self.num / self.den + self.off;
        for dy in -1..=1 {
            for dx in -1..=1 {
                let (px, py) = (x + dx, y + dy);
                if (0..SIDE as i32).contains(&px) && (0..SIDE as i32).contains(&py) {
                    self.bm.set(px as usize, py as usize, true);
                }
            }
        }
    }

    fn line(&mut self, x0: i32, y0: i32, x1: i32, y1: i32) {
        let steps = (x1 - x0).abs().max((y1 - y0).abs()).max(1);
        for i in 0..=steps {
            let x = x0 + ((x1 - x0) * i * 2 + steps).div_euclid(2 * steps);
            let y = y0 + ((y1 - y0) * i * 2 + steps).div_euclid(2 * steps);
            self.dab(x, y);
        }
    }

    fn draw(&mut self, p: Prim) {
        match p {
            Hl(x0, x1, y) => self.line(x0, y, x1, y),
            Vl(x, y0, y1) => self.line(x, y0, x, y1),
            Line(x0, y0, x1, y1) => self.line(x0, y0, x1, y1),
            Ring(cx, cy, r) => {
                let steps = 8 * r;
                for i in 0..steps {
                    let a = i as f64 * std::f64::consts::TAU / steps as f64;
                    let x = cx + (r as f64 * a.cos()).round() as i32;
                    let y = cy + (r as f64 * a.sin()).round() as i32;
                    self.dab(x, y);
                }
            }
        }
    }
}

fn consonant_prims(c: Consonant) -> Vec<Prim> {
    use Consonant::*;
    match c {
        G => vec![Hl(5, 26, 6), Vl(26, 6, 27)],
        N => vec![Vl(6, 5, 26), Hl(6, 27, 26)],
        D => vec![Hl(5, 26, 6), Vl(5, 6, 26), Hl(5, 27, 26)],
        R => vec![Hl(5, 26, 5), Vl(26, 5, 15), Hl(5, 26, 15), Vl(5, 15, 26), Hl(5, 27, 26)],
        M => vec![Hl(6, 26, 6), Hl(6, 26, 26), Vl(6, 6, 26), Vl(26, 6, 26)],
        B => vec![Vl(6, 5, 26), Vl(25, 5, 26), Hl(6, 25, 15), Hl(6, 25, 26)],
        S => vec![Line(16, 5, 5, 26), Line(16, 12, 27, 26)],
        NG => vec![Ring(16, 16, 10)],
        J => vec![Hl(6, 26, 6), Line(16, 6, 5, 26), Line(16, 14, 27, 26)],
        CH => vec![Vl(16, 1, 8), Hl(6, 26, 8), Line(16, 8, 5, 27), Line(16, 15, 27, 27)],
        K => vec![Hl(5, 26, 6), Vl(26, 6, 27), Hl(8, 26, 16)],
        T => vec![Hl(5, 27, 5), Vl(5, 5, 26), Hl(5, 24, 15), Hl(5, 27, 26)],
        P => vec![Hl(4, 28, 6), Hl(4, 28, 26), Vl(11, 6, 26), Vl(21, 6, 26)],
        H => vec![Vl(16, 1, 8), Hl(5, 27, 8), Ring(16, 20, 7)],
        GG | DD | BB | SS | JJ => unreachable!("doubles are drawn from their single letter"),
    }
}

fn single_of_double(c: Consonant) -> Option<Consonant> {
    use Consonant::*;
    Some(match c {
        GG => G,
        DD => D,
        BB => B,
        SS => S,
        JJ => J,
        _ => return None,
    })
}

fn vowel_prims(v: Vowel) -> Vec<Prim> {
    use Vowel::*;
    match v {
        A => vec![Vl(14, 3, 28), Hl(14, 24, 15)],
        YA => vec![Vl(14, 3, 28), Hl(14, 24, 11), Hl(14, 24, 19)],
        EO => vec![Vl(18, 3, 28), Hl(8, 18, 15)],
        YEO => vec![Vl(18, 3, 28), Hl(8, 18, 11), Hl(8, 18, 19)],
        I => vec![Vl(16, 3, 28)],
        AE => vec![Vl(10, 3, 28), Hl(10, 20, 15), Vl(22, 3, 28)],
        YAE => vec![Vl(10, 3, 28), Hl(10, 20, 11), Hl(10, 20, 19), Vl(22, 3, 28)],
        E => vec![Hl(4, 12, 15), Vl(12, 3, 28), Vl(22, 3, 28)],
        YE => vec![Hl(4, 12, 11), Hl(4, 12, 19), Vl(12, 3, 28), Vl(22, 3, 28)],
        O => vec![Vl(16, 10, 20), Hl(3, 28, 20)],
        YO => vec![Vl(11, 10, 20), Vl(21, 10, 20), Hl(3, 28, 20)],
        U => vec![Hl(3, 28, 12), Vl(16, 12, 24)],
        YU => vec![Hl(3, 28, 12), Vl(11, 12, 24), Vl(21, 12, 24)],
        EU => vec![Hl(3, 28, 16)],
        // compounds keep the top-left quadrant free for the onset
        WA => vec![Vl(11, 18, 24), Hl(2, 20, 24), Vl(22, 2, 29), Hl(22, 29, 15)],
        WAE => vec![
            Vl(9, 18, 24),
            Hl(2, 17, 24),
            Vl(20, 2, 29),
            Hl(20, 25, 15),
            Vl(27, 2, 29),
        ],
        OE => vec![Vl(11, 18, 24), Hl(2, 20, 24), Vl(24, 2, 29)],
        WO => vec![Hl(2, 18, 20), Vl(11, 20, 28), Hl(19, 25, 14), Vl(25, 2, 29)],
        WE => vec![
            Hl(2, 16, 20),
            Vl(9, 20, 28),
            Hl(17, 22, 14),
            Vl(22, 2, 29),
            Vl(28, 2, 29),
        ],
        WI => vec![Hl(2, 20, 20), Vl(11, 20, 28), Vl(24, 2, 29)],
        UI => vec![Hl(2, 20, 22), Vl(24, 2, 29)],
    }
}

fn render(prims: &[Prim], halves: &[i32]) -> GlyphBitmap {
    let mut pen = Pen {
        bm: GlyphBitmap::new(SIDE, SIDE),
        num: 1,
        den: 1,
        off: 0,
    };
    if halves.is_empty() {
        prims.iter().for_each(|&p| pen.draw(p));
    }
    for &off in halves {
        pen.num = 1;
        pen.den = 2;
        pen.off = off;
        prims.iter().for_each(|&p| pen.draw(p));
    }
    pen.bm
}

/// Built-in glyph for a plain letter; `None` for marked letters.
pub fn base_glyph(letter: Letter) -> Option<GlyphBitmap> {
    if letter.modifier != Modifier::Plain {
        return None;
    }
    Some(match letter.base {
        Base::Consonant(c) => match single_of_double(c) {
            Some(single) => render(&consonant_prims(single), &[0, 16]),
            None => render(&consonant_prims(c), &[]),
        },
        Base::Vowel(v) => render(&vowel_prims(v), &[]),
        Base::Silent => render(&[Hl(12, 20, 16)], &[]),
    })
}

/// The whole built-in base set, keyed by letter.
pub fn base_glyphs() -> BTreeMap<Letter, GlyphBitmap> {
    super::base_letters()
        .into_iter()
        .map(|l| (l, base_glyph(l).expect("plain letter")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glyph::connected_components;

    #[test]
    fn every_base_letter_has_ink() {
        let set = base_glyphs();
        assert_eq!(set.len(), 41);
        for (l, g) in &set {
            assert!(g.ink_count() > 0, "{l}");
            assert_eq!((g.width(), g.height()), (SIDE, SIDE));
        }
    }

    #[test]
    fn glyphs_are_distinct() {
        let set = base_glyphs();
        let glyphs: Vec<_> = set.values().collect();
        for i in 0..glyphs.len() {
            for j in i + 1..glyphs.len() {
                assert_ne!(glyphs[i], glyphs[j]);
            }
        }
    }

    #[test]
    fn compound_vowels_leave_onset_quadrant_free() {
        for &v in Vowel::ALL.iter().filter(|v| v.compound_parts().is_some()) {
            let g = base_glyph(Letter {
                base: Base::Vowel(v),
                modifier: Modifier::Plain,
            })
            .unwrap();
            assert!(g.ink_pixels().all(|(x, y)| x >= 16 || y >= 16), "{v}");
        }
    }

    #[test]
    fn doubles_have_two_halves() {
        let g = base_glyph(Letter {
            base: Base::Consonant(Consonant::GG),
            modifier: Modifier::Plain,
        })
        .unwrap();
        assert_eq!(connected_components(&g).len(), 2);
    }
}
