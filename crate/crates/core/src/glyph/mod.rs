//! Bitmap glyphs, target-stroke finding, stroke swelling and page rendering.
//!
//! Glyphs are binary rasters read from PBM. A modified letter is made from its
//! base letter by locating the target stroke ([`find_target_consonant_stroke`],
//! [`find_target_vowel_stroke`]) and dilating it ([`thicken_stroke`],
//! [`taper_stroke`]). [`build_atlas`] does this for every variant listed in a
//! manifest, and [`render_text`] lays blocks out on a page.

mod atlas;
mod bitmap;
mod components;
mod modify;
mod render;
mod stroke;
pub mod synth;

use std::path::PathBuf;

use thiserror::Error;

use crate::jamo::JamoError;

pub use atlas::{
    base_letters, build_atlas, build_atlas_from, load_base_glyphs, Atlas, Manifest, VariantSpec, ATLAS_INDEX,
    DEFAULT_MANIFEST,
};
pub use bitmap::{load_glyph, parse_pbm, GlyphBitmap, Point, MAX_GLYPH_SIDE};
pub use components::{connected_components, PixelCluster};
pub use modify::{radius_profile, taper_stroke, thicken_stroke, Operator};
pub use render::{block_layout, render_text, tone_mark, tone_strip_height, Rect, MIN_CELL};
pub use stroke::{
    consonant_strokes, find_target_consonant_stroke, find_target_vowel_stroke, straight_runs, thin, Direction,
    StrokeSegment,
};

#[derive(Debug, Error)]
pub enum GlyphError {
    #[error("malformed PBM: {0}")]
    Pbm(String),
    #[error("glyph size {width}x{height} outside 1..={max}", max = MAX_GLYPH_SIDE)]
    Dimensions { width: usize, height: usize },
    #[error("glyph has no ink")]
    Blank,
    #[error("radius {radius} outside 1..={max}")]
    BadRadius { radius: usize, max: usize },
    #[error("stroke pixel ({x},{y}) is not ink in the glyph")]
    StrokeOutside { x: usize, y: usize },
    #[error("no glyph for {0}")]
    MissingGlyph(String),
    #[error("manifest: {0}")]
    Manifest(String),
    #[error("cell size {0} is below {min}", min = MIN_CELL)]
    CellSize(usize),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Jamo(#[from] JamoError),
}
