use serde::{Deserialize, Serialize};

use super::{GlyphBitmap, GlyphError, StrokeSegment};

/// A stroke modifier with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Operator {
    Thicken { radius: usize },
    Taper { start: usize, end: usize },
}

impl Operator {
    pub fn apply(self, glyph: &GlyphBitmap, stroke: &StrokeSegment) -> Result<GlyphBitmap, GlyphError> {
        match self {
            Operator::Thicken { radius } => thicken_stroke(glyph, stroke, radius),
            Operator::Taper { start, end } => taper_stroke(glyph, stroke, start, end),
        }
    }
}

fn check(glyph: &GlyphBitmap, stroke: &StrokeSegment, radii: &[usize]) -> Result<(), GlyphError> {
    let max = glyph.width().min(glyph.height());
    if let Some(&radius) = radii.iter().find(|&&r| r == 0 || r > max) {
        return Err(GlyphError::BadRadius { radius, max });
    }
    if let Some(&(x, y)) = stroke.path.iter().find(|&&(x, y)| !glyph.get(x, y)) {
        return Err(GlyphError::StrokeOutside { x, y });
    }
    Ok(())
}

fn dilate_along(glyph: &GlyphBitmap, stroke: &StrokeSegment, radii: &[usize]) -> GlyphBitmap {
    let mut out = glyph.clone();
    for (&(x, y), &r) in stroke.path.iter().zip(radii) {
        let x1 = (x + r).min(glyph.width() - 1);
        let y1 = (y + r).min(glyph.height() - 1);
        for yy in y.saturating_sub(r)..=y1 {
            for xx in x.saturating_sub(r)..=x1 {
                out.set(xx, yy, true);
            }
        }
    }
    out
}

/// Glyph ∪ the stroke dilated by a `(2r+1)²` square, clipped to the canvas.
pub fn thicken_stroke(glyph: &GlyphBitmap, stroke: &StrokeSegment, radius: usize) -> Result<GlyphBitmap, GlyphError> {
    taper_stroke(glyph, stroke, radius, radius)
}

/// Per-position radius: `round(start + (end - start) * i / (n - 1))`.
pub fn radius_profile(n: usize, start: usize, end: usize) -> Vec<usize> {
    if n <= 1 {
        return vec![start; n];
    }
    // exact rational arithmetic, halves round up
    let d = (n - 1) as i64;
    let (s, e) = (start as i64, end as i64);
    (0..n as i64)
        .map(|i| {
            let num = s * d + (e - s) * i;
            ((2 * num + d).div_euclid(2 * d)) as usize
        })
        .collect()
}

/// Like [`thicken_stroke`] with the radius ramping linearly along the path.
pub fn taper_stroke(
    glyph: &GlyphBitmap,
    stroke: &StrokeSegment,
    start: usize,
    end: usize,
) -> Result<GlyphBitmap, GlyphError> {
    check(glyph, stroke, &[start, end])?;
    let radii = radius_profile(stroke.len(), start, end);
    Ok(dilate_along(glyph, stroke, &radii))
}

#[cfg(test)]
mod tests {
    use super::super::{find_target_consonant_stroke, Direction};
    use super::*;

    fn bar() -> (GlyphBitmap, StrokeSegment) {
        let bm = GlyphBitmap::from_rows(&[".....", ".###.", "....."]);
        let s = find_target_consonant_stroke(&bm).unwrap();
        (bm, s)
    }

    #[test]
    fn thicken_bar() {
        let (bm, s) = bar();
        let out = thicken_stroke(&bm, &s, 1).unwrap();
        assert_eq!(out, GlyphBitmap::from_rows(&["#####", "#####", "#####"]));
    }

    #[test]
    fn radius_checks() {
        let (bm, s) = bar();
        assert!(matches!(thicken_stroke(&bm, &s, 0), Err(GlyphError::BadRadius { .. })));
        assert!(matches!(
            thicken_stroke(&bm, &s, 4),
            Err(GlyphError::BadRadius { radius: 4, max: 3 })
        ));
        assert!(thicken_stroke(&bm, &s, 3).is_ok());
        let stray = StrokeSegment {
            path: vec![(0, 0)],
            direction: Direction::Rightward,
            thickness: 1.0,
        };
        assert!(matches!(
            thicken_stroke(&bm, &stray, 1),
            Err(GlyphError::StrokeOutside { x: 0, y: 0 })
        ));
    }

    #[test]
    fn ramp() {
        assert_eq!(radius_profile(8, 1, 3), vec![1, 1, 2, 2, 2, 2, 3, 3]);
        assert_eq!(radius_profile(1, 2, 5), vec![2]);
        assert_eq!(radius_profile(3, 4, 4), vec![4, 4, 4]);
    }

    #[test]
    fn operator_json() {
        let op: Operator = serde_json::from_str(r#"{"op":"taper","start":1,"end":4}"#).unwrap();
        assert_eq!(op, Operator::Taper { start: 1, end: 4 });
        assert_eq!(
            serde_json::to_string(&Operator::Thicken { radius: 2 }).unwrap(),
            r#"{"op":"thicken","radius":2}"#
        );
    }
}
