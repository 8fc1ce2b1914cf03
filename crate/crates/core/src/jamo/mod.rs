//! Extended jamo inventory, syllable blocks and the composition automaton.
//!
//! A [`Transcript`] is the central value of the crate: words of
//! [`SyllableBlock`]s, produced by the transliterators and the keyboard and
//! consumed by the serializer, the display encoder and the renderer.

mod compose;
mod display;
mod serial;
mod token;

pub use compose::{compose, decompose, StreamItem};
pub use display::{to_display_text, DisplayPolicy, DisplayText};
pub use serial::{parse_tokens, serialize_tokens};
pub use token::{Base, Consonant, JamoToken, Letter, Modifier, Role, Tone, Vowel, VowelShape, MODIFIABLE_CONSONANTS};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JamoError {
    #[error("syntax error at byte {offset}: expected {expected}")]
    Syntax { offset: usize, expected: &'static str },
    #[error("unknown token `{name}` at byte {offset}")]
    UnknownToken { name: String, offset: usize },
    #[error("{0} cannot carry the modified flag")]
    NotModifiable(Consonant),
    #[error("modifier not allowed on {token}")]
    BadModifier { token: String },
    #[error("{token} cannot take that position")]
    RoleMismatch { token: String },
    #[error("tone {0} out of range 0..=5")]
    BadTone(u8),
    #[error("cannot compose at stream position {position}: {reason}")]
    Compose { position: usize, reason: &'static str },
}

/// Onset + nucleus + optional coda, with an optional tone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SyllableBlock {
    onset: JamoToken,
    nucleus: JamoToken,
    coda: Option<JamoToken>,
    tone: Tone,
}

impl SyllableBlock {
    /// Builds a block, normalizing consonant roles. Fails if a vowel is given
    /// as onset/coda or a consonant as nucleus.
    pub fn new(onset: JamoToken, nucleus: JamoToken, coda: Option<JamoToken>, tone: Tone) -> Result<Self, JamoError> {
        if onset.is_vowel() {
            return Err(JamoError::RoleMismatch {
                token: onset.to_string(),
            });
        }
        if !nucleus.is_vowel() {
            return Err(JamoError::RoleMismatch {
                token: nucleus.to_string(),
            });
        }
        if let Some(c) = coda {
            if c.is_vowel() {
                return Err(JamoError::RoleMismatch { token: c.to_string() });
            }
        }
        Ok(SyllableBlock {
            onset: onset.with_role(Role::Onset),
            nucleus,
            coda: coda.map(|c| c.with_role(Role::Coda)),
            tone,
        })
    }

    /// Plain consonant + vowel block, the common case in tests and tables.
    pub fn simple(onset: Consonant, nucleus: Vowel) -> Self {
        SyllableBlock {
            onset: JamoToken::onset(onset),
            nucleus: JamoToken::vowel(nucleus),
            coda: None,
            tone: Tone::NONE,
        }
    }

    pub fn onset(&self) -> JamoToken {
        self.onset
    }

    pub fn nucleus(&self) -> JamoToken {
        self.nucleus
    }

    pub fn coda(&self) -> Option<JamoToken> {
        self.coda
    }

    pub fn tone(&self) -> Tone {
        self.tone
    }

    pub fn with_coda(self, coda: Option<JamoToken>) -> Self {
        SyllableBlock {
            coda: coda.map(|c| c.with_role(Role::Coda)),
            ..self
        }
    }

    pub fn with_tone(self, tone: Tone) -> Self {
        SyllableBlock { tone, ..self }
    }

    /// Tokens in writing order.
    pub fn tokens(&self) -> impl Iterator<Item = JamoToken> {
        [Some(self.onset), Some(self.nucleus), self.coda].into_iter().flatten()
    }

    pub fn has_marks(&self) -> bool {
        self.tokens().any(|t| t.is_marked() || t.is_silent()) || !self.tone.is_none()
    }
}

/// Words of syllable blocks. Words are never empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Transcript {
    words: Vec<Vec<SyllableBlock>>,
}

impl Transcript {
    pub fn new(words: Vec<Vec<SyllableBlock>>) -> Self {
        Transcript {
            words: words.into_iter().filter(|w| !w.is_empty()).collect(),
        }
    }

    /// A transcript of a single word.
    pub fn word(blocks: Vec<SyllableBlock>) -> Self {
        Transcript::new(vec![blocks])
    }

    pub fn words(&self) -> &[Vec<SyllableBlock>] {
        &self.words
    }

    pub fn blocks(&self) -> impl Iterator<Item = &SyllableBlock> {
        self.words.iter().flatten()
    }

    pub fn block_count(&self) -> usize {
        self.words.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn tokens(&self) -> impl Iterator<Item = JamoToken> + '_ {
        self.blocks().flat_map(|b| b.tokens())
    }

    /// Concatenation; the words of `other` follow as separate words.
    pub fn extend(&mut self, other: Transcript) {
        self.words.extend(other.words);
    }
}
