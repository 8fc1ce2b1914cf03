use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{find_target_consonant_stroke, find_target_vowel_stroke, load_glyph, GlyphBitmap, GlyphError, Operator};
use crate::jamo::{Base, Consonant, JamoToken, Letter, Modifier, Vowel};

/// Index file written next to the glyph bitmaps.
pub const ATLAS_INDEX: &str = "atlas.json";

/// Variants synthesized by default: every modified consonant and the rhotic
/// vowels the shipped rule sets emit.
pub const DEFAULT_MANIFEST: &str = include_str!("../../data/atlas_manifest.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantSpec {
    pub token: String,
    #[serde(flatten)]
    pub op: Operator,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Manifest {
    pub variants: Vec<VariantSpec>,
}

impl Manifest {
    pub fn parse(json: &str) -> Result<Manifest, GlyphError> {
        serde_json::from_str(json).map_err(|e| GlyphError::Manifest(e.to_string()))
    }

    pub fn default_set() -> Manifest {
        Manifest::parse(DEFAULT_MANIFEST).expect("shipped manifest parses")
    }

    /// Resolved marked letters in manifest order. Rejects plain letters,
    /// duplicates, and modifiers on letters that cannot carry them.
    pub fn letters(&self) -> Result<Vec<(Letter, Operator)>, GlyphError> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in &self.variants {
            let letter = JamoToken::parse(&v.token)?.letter();
            if letter.modifier == Modifier::Plain {
                return Err(GlyphError::Manifest(format!("`{}` is not a modified letter", v.token)));
            }
            if !seen.insert(letter) {
                return Err(GlyphError::Manifest(format!("`{}` listed twice", v.token)));
            }
            out.push((letter, v.op));
        }
        Ok(out)
    }
}

/// The 41 letters every base set must provide: all consonants, all vowels and
/// the silent vowel.
pub fn base_letters() -> Vec<Letter> {
    let plain = |base| Letter {
        base,
        modifier: Modifier::Plain,
    };
    Consonant::ALL
        .iter()
        .map(|&c| plain(Base::Consonant(c)))
        .chain(Vowel::ALL.iter().map(|&v| plain(Base::Vowel(v))))
        .chain([plain(Base::Silent)])
        .collect()
}

fn read(path: &Path) -> Result<Vec<u8>, GlyphError> {
    fs::read(path).map_err(|source| GlyphError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), GlyphError> {
    fs::write(path, bytes).map_err(|source| GlyphError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads `<stem>.pbm` for every base letter from `dir`.
pub fn load_base_glyphs(dir: &Path) -> Result<BTreeMap<Letter, GlyphBitmap>, GlyphError> {
    let mut out = BTreeMap::new();
    for letter in base_letters() {
        let path = dir.join(format!("{}.pbm", letter.token().glyph_stem()));
        if !path.is_file() {
            return Err(GlyphError::MissingGlyph(format!("{letter} ({})", path.display())));
        }
        out.insert(letter, load_glyph(&read(&path)?)?);
    }
    Ok(out)
}

/// Token name to glyph bitmap.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Atlas {
    glyphs: BTreeMap<Letter, GlyphBitmap>,
}

#[derive(Serialize, Deserialize)]
struct Index {
    version: u32,
    glyphs: BTreeMap<String, String>,
}

impl Atlas {
    pub fn new(glyphs: BTreeMap<Letter, GlyphBitmap>) -> Atlas {
        Atlas { glyphs }
    }

    pub fn get(&self, letter: Letter) -> Option<&GlyphBitmap> {
        self.glyphs.get(&letter)
    }

    pub fn glyph(&self, token: &JamoToken) -> Result<&GlyphBitmap, GlyphError> {
        self.get(token.letter())
            .ok_or_else(|| GlyphError::MissingGlyph(token.to_string()))
    }

    pub fn len(&self) -> usize {
        self.glyphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.glyphs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Letter, &GlyphBitmap)> {
        self.glyphs.iter()
    }

    /// `atlas.json` contents: `{"version":1,"glyphs":{"B*":"B_m.pbm",...}}`.
    pub fn index_json(&self) -> String {
        let index = Index {
            version: 1,
            glyphs: self
                .glyphs
                .keys()
                .map(|l| (l.to_string(), format!("{}.pbm", l.token().glyph_stem())))
                .collect(),
        };
        serde_json::to_string_pretty(&index).expect("index serializes") + "\n"
    }

    /// Writes one plain PBM per glyph plus the index into `dir`.
    pub fn write(&self, dir: &Path) -> Result<(), GlyphError> {
        fs::create_dir_all(dir).map_err(|source| GlyphError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        for (letter, glyph) in &self.glyphs {
            let path = dir.join(format!("{}.pbm", letter.token().glyph_stem()));
            write(&path, glyph.to_pbm_ascii().as_bytes())?;
        }
        write(&dir.join(ATLAS_INDEX), self.index_json().as_bytes())
    }

    pub fn load(dir: &Path) -> Result<Atlas, GlyphError> {
        let index_path = dir.join(ATLAS_INDEX);
        let index: Index = serde_json::from_slice(&read(&index_path)?)
            .map_err(|e| GlyphError::Manifest(format!("{}: {e}", index_path.display())))?;
        if index.version != 1 {
            return Err(GlyphError::Manifest(format!(
                "unsupported atlas version {}",
                index.version
            )));
        }
        let mut glyphs = BTreeMap::new();
        for (name, file) in index.glyphs {
            let letter = JamoToken::parse(&name)?.letter();
            glyphs.insert(letter, load_glyph(&read(&dir.join(file))?)?);
        }
        Ok(Atlas { glyphs })
    }
}

/// Finds the target stroke of `glyph` for `letter` and applies `op`.
pub fn synthesize_variant(letter: Letter, glyph: &GlyphBitmap, op: Operator) -> Result<GlyphBitmap, GlyphError> {
    let stroke = if letter.base.is_vowel() {
        find_target_vowel_stroke(glyph)?
    } else {
        find_target_consonant_stroke(glyph)?
    };
    op.apply(glyph, &stroke)
}

/// Pure core of [`build_atlas`]: base glyphs in, base + variants out.
pub fn build_atlas_from(base: BTreeMap<Letter, GlyphBitmap>, manifest: &Manifest) -> Result<Atlas, GlyphError> {
    let variants = manifest.letters()?;
    if let Some(missing) = base_letters().into_iter().find(|l| !base.contains_key(l)) {
        return Err(GlyphError::MissingGlyph(missing.to_string()));
    }
    let mut glyphs = base;
    for (letter, op) in variants {
        let plain = Letter {
            modifier: Modifier::Plain,
            ..letter
        };
        let glyph = synthesize_variant(letter, &glyphs[&plain], op)?;
        glyphs.insert(letter, glyph);
    }
    Ok(Atlas { glyphs })
}

/// Loads the base set from `dir` and synthesizes the manifest's variants.
pub fn build_atlas(dir: &Path, manifest: &Manifest) -> Result<Atlas, GlyphError> {
    build_atlas_from(load_base_glyphs(dir)?, manifest)
}
