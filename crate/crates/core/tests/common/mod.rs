#![allow(dead_code)]

use modhangul::glyph::{GlyphBitmap, Point};
use modhangul::jamo::{Consonant, JamoToken, SyllableBlock, Tone, Transcript, Vowel};
use proptest::prelude::*;
use rand::Rng;

pub fn arb_consonant() -> impl Strategy<Value = JamoToken> {
    (0..Consonant::ALL.len(), any::<bool>()).prop_map(|(i, m)| {
        let c = Consonant::ALL[i];
        if m && c.is_modifiable() {
            JamoToken::modified(c).unwrap()
        } else {
            JamoToken::onset(c)
        }
    })
}

pub fn arb_nucleus() -> impl Strategy<Value = JamoToken> {
    (0..Vowel::ALL.len() + 1, any::<bool>()).prop_map(|(i, r)| match Vowel::ALL.get(i) {
        None => JamoToken::silent(),
        Some(&v) if r => JamoToken::rhotic(v),
        Some(&v) => JamoToken::vowel(v),
    })
}

pub fn arb_block() -> impl Strategy<Value = SyllableBlock> {
    (
        arb_consonant(),
        arb_nucleus(),
        proptest::option::of(arb_consonant()),
        0u8..=5,
    )
        .prop_map(|(o, n, c, t)| SyllableBlock::new(o, n, c, Tone::new(t).unwrap()).unwrap())
}

pub fn arb_transcript() -> impl Strategy<Value = Transcript> {
    proptest::collection::vec(proptest::collection::vec(arb_block(), 1..5), 0..4).prop_map(Transcript::new)
}

pub fn random_block(rng: &mut impl Rng) -> SyllableBlock {
    let consonant = |rng: &mut dyn rand::RngCore| {
        let c = Consonant::ALL[rng.gen_range(0..Consonant::ALL.len())];
        if c.is_modifiable() && rng.gen_bool(0.3) {
            JamoToken::modified(c).unwrap()
        } else {
            JamoToken::onset(c)
        }
    };
    let onset = consonant(rng);
    let nucleus = match rng.gen_range(0..=Vowel::ALL.len()) {
        i if i == Vowel::ALL.len() => JamoToken::silent(),
        i if rng.gen_bool(0.2) => JamoToken::rhotic(Vowel::ALL[i]),
        i => JamoToken::vowel(Vowel::ALL[i]),
    };
    let coda = rng.gen_bool(0.4).then(|| consonant(rng));
    let tone = Tone::new(rng.gen_range(0..=5)).unwrap();
    SyllableBlock::new(onset, nucleus, coda, tone).unwrap()
}

pub fn random_transcript(rng: &mut impl Rng) -> Transcript {
    let words = (0..rng.gen_range(0..4))
        .map(|_| (0..rng.gen_range(1..5)).map(|_| random_block(rng)).collect())
        .collect();
    Transcript::new(words)
}

pub fn random_bitmap(rng: &mut impl Rng, w: usize, h: usize, density: f64) -> GlyphBitmap {
    let mut bm = GlyphBitmap::new(w, h);
    for y in 0..h {
        for x in 0..w {
            if rng.gen_bool(density) {
                bm.set(x, y, true);
            }
        }
    }
    bm
}

/// Stack flood fill; clusters sorted by their first pixel in scan order.
pub fn flood_fill_components(bm: &GlyphBitmap) -> Vec<Vec<Point>> {
    let (w, h) = (bm.width(), bm.height());
    let mut seen = vec![false; w * h];
    let mut out = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if !bm.get(x, y) || seen[y * w + x] {
                continue;
            }
            let mut cluster = Vec::new();
            let mut stack = vec![(x, y)];
            seen[y * w + x] = true;
            while let Some((cx, cy)) = stack.pop() {
                cluster.push((cx, cy));
                for dy in -1i64..=1 {
                    for dx in -1i64..=1 {
                        let (nx, ny) = (cx as i64 + dx, cy as i64 + dy);
                        if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                            continue;
                        }
                        let (nx, ny) = (nx as usize, ny as usize);
                        if bm.get(nx, ny) && !seen[ny * w + nx] {
                            seen[ny * w + nx] = true;
                            stack.push((nx, ny));
                        }
                    }
                }
            }
            cluster.sort_by_key(|&(px, py)| (py, px));
            out.push(cluster);
        }
    }
    out
}

/// Pixel is ink iff it was ink or lies within Chebyshev distance `radii[i]`
/// of path pixel `i`.
pub fn chebyshev_oracle(bm: &GlyphBitmap, path: &[Point], radii: &[usize]) -> GlyphBitmap {
    let mut out = GlyphBitmap::new(bm.width(), bm.height());
    for y in 0..bm.height() {
        for x in 0..bm.width() {
            let near = path
                .iter()
                .zip(radii)
                .any(|(&(px, py), &r)| x.abs_diff(px).max(y.abs_diff(py)) <= r);
            out.set(x, y, bm.get(x, y) || near);
        }
    }
    out
}

/// A random 8-connected walk over ink pixels, used as an arbitrary stroke.
pub fn random_ink_path(rng: &mut impl Rng, bm: &GlyphBitmap, max_len: usize) -> Vec<Point> {
    let ink: Vec<Point> = bm.ink_pixels().collect();
    let mut path = vec![ink[rng.gen_range(0..ink.len())]];
    while path.len() < max_len {
        let (x, y) = *path.last().unwrap();
        let next: Vec<Point> = (-1i64..=1)
            .flat_map(|dy| (-1i64..=1).map(move |dx| (x as i64 + dx, y as i64 + dy)))
            .filter(|&(nx, ny)| nx >= 0 && ny >= 0 && bm.get(nx as usize, ny as usize))
            .map(|(nx, ny)| (nx as usize, ny as usize))
            .filter(|p| !path.contains(p))
            .collect();
        if next.is_empty() {
            break;
        }
        path.push(next[rng.gen_range(0..next.len())]);
    }
    path
}
