//! Modified-Hangeul toolkit.
//!
//! * [`jamo`]: extended letter inventory, syllable blocks, token text format.
//! * [`rules`]: rule-file transliteration and the built-in pinyin transducer.
//! * [`glyph`]: bitmap glyphs, target-stroke finding, stroke swelling, rendering.
//! * [`keyboard`]: two-set layout with a modified Shift layer and the typing automaton.
//! * [`corpus`]: the regression corpus runner.

pub mod corpus;
pub mod glyph;
pub mod jamo;
pub mod keyboard;
pub mod rules;
