//! Ordered context-sensitive rewrite rules and the transliterators built on
//! them.
//!
//! A rule file is line oriented:
//!
//! ```text
//! ; comment
//! profile it
//! input chars                  ; or `phonemes` (whitespace-separated symbols)
//! class V = a e i o u
//! meaning B* = v
//! V | s | V -> J               ; LEFT | MATCH | RIGHT -> TOKENS
//! [spanish_variant=latam] | z | -> S
//! ```
//!
//! Context elements are literals, declared class names (`V`), negated classes
//! (`!V`, which also holds at a word edge) and `#` for a word edge. Rules are
//! tried in file order at each position; the first that applies wins.

mod engine;
mod parse;
pub mod pinyin;
mod profiles;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::jamo::{JamoError, JamoToken, Letter};

pub use engine::{apply_rule_once, transliterate, ScanState, SourceText, Step, TraceStep, Transliteration};
pub use parse::load_ruleset;
pub use pinyin::{known_rimes, segment_pinyin, transliterate_pinyin, Initial, PinyinError, PinyinSyllable};
pub use profiles::{builtin_profile, builtin_ruleset_source, Profile, PROFILE_IDS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("input is not valid UTF-8 (valid up to byte {valid_up_to})")]
    InvalidUtf8 { valid_up_to: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: undeclared class `{name}`")]
    UndeclaredClass { line: usize, name: String },
    #[error("line {line}: class `{name}` declared twice")]
    DuplicateClass { line: usize, name: String },
    #[error("line {line}: invalid output token: {source}")]
    InvalidOutput { line: usize, source: JamoError },
    #[error("line {line}: output {token} has no `meaning` entry")]
    MissingMeaning { line: usize, token: String },
    #[error("unknown option {name}={value}")]
    UnknownOption { name: String, value: String },
    #[error("no rule matched at symbol {position} (byte {byte}): `{symbol}`")]
    NoRuleMatched {
        position: usize,
        byte: usize,
        symbol: String,
    },
    #[error("unknown profile `{0}`")]
    UnknownProfile(String),
    #[error(transparent)]
    Compose(#[from] JamoError),
    #[error(transparent)]
    Pinyin(#[from] PinyinError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpanishVariant {
    #[default]
    Castilian,
    Latam,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PortugueseVariant {
    Portugal,
    #[default]
    Brazil,
}

/// Regional switches a rule may be guarded on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Options {
    pub spanish_variant: SpanishVariant,
    pub portuguese_variant: PortugueseVariant,
}

/// A rule guard: `[name=value]` in the rule file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guard {
    Spanish(SpanishVariant),
    Portuguese(PortugueseVariant),
}

impl Guard {
    pub fn parse(name: &str, value: &str) -> Result<Guard, RuleError> {
        let unknown = || RuleError::UnknownOption {
            name: name.to_string(),
            value: value.to_string(),
        };
        match (name, value) {
            ("spanish_variant", "castilian") => Ok(Guard::Spanish(SpanishVariant::Castilian)),
            ("spanish_variant", "latam") => Ok(Guard::Spanish(SpanishVariant::Latam)),
            ("portuguese_variant", "portugal") => Ok(Guard::Portuguese(PortugueseVariant::Portugal)),
            ("portuguese_variant", "brazil") => Ok(Guard::Portuguese(PortugueseVariant::Brazil)),
            _ => Err(unknown()),
        }
    }

    fn holds(self, options: &Options) -> bool {
        match self {
            Guard::Spanish(v) => options.spanish_variant == v,
            Guard::Portuguese(v) => options.portuguese_variant == v,
        }
    }
}

impl Options {
    /// Applies a `name=value` override.
    pub fn set(&mut self, name: &str, value: &str) -> Result<(), RuleError> {
        match Guard::parse(name, value)? {
            Guard::Spanish(v) => self.spanish_variant = v,
            Guard::Portuguese(v) => self.portuguese_variant = v,
        }
        Ok(())
    }
}

impl fmt::Display for Options {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let es = match self.spanish_variant {
            SpanishVariant::Castilian => "castilian",
            SpanishVariant::Latam => "latam",
        };
        let pt = match self.portuguese_variant {
            PortugueseVariant::Portugal => "portugal",
            PortugueseVariant::Brazil => "brazil",
        };
        write!(f, "spanish_variant={es} portuguese_variant={pt}")
    }
}

/// What a language reads each marked letter as; the same modified shape means
/// different sounds in different profiles.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LanguageProfile {
    pub id: String,
    pub meanings: BTreeMap<Letter, String>,
    pub options: Options,
}

impl LanguageProfile {
    pub fn meaning(&self, token: &JamoToken) -> Option<&str> {
        self.meanings.get(&token.letter()).map(String::as_str)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputMode {
    /// One symbol per character; whitespace and punctuation split words.
    #[default]
    Chars,
    /// Whitespace-separated symbols; `/` splits words; trailing stress digits dropped.
    Phonemes,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Element {
    Literal(String),
    Class(usize),
    NotClass(usize),
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub(crate) line: usize,
    pub(crate) guard: Option<Guard>,
    pub(crate) left: Vec<Element>,
    pub(crate) matched: Vec<Element>,
    pub(crate) right: Vec<Element>,
    pub(crate) output: Vec<JamoToken>,
}

impl RewriteRule {
    /// Source line in the rule file (1-based).
    pub fn line(&self) -> usize {
        self.line
    }

    pub fn output(&self) -> &[JamoToken] {
        &self.output
    }

    pub fn guard(&self) -> Option<Guard> {
        self.guard
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharClass {
    pub name: String,
    pub members: Vec<String>,
}

impl CharClass {
    fn contains(&self, symbol: &str) -> bool {
        self.members.iter().any(|m| m == symbol)
    }
}

/// A loaded rule file. Immutable apart from option overrides.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RuleSet {
    pub(crate) profile: LanguageProfile,
    pub(crate) mode: InputMode,
    pub(crate) classes: Vec<CharClass>,
    pub(crate) rules: Vec<RewriteRule>,
}

impl RuleSet {
    pub fn profile(&self) -> &LanguageProfile {
        &self.profile
    }

    pub fn id(&self) -> &str {
        &self.profile.id
    }

    pub fn mode(&self) -> InputMode {
        self.mode
    }

    pub fn classes(&self) -> &[CharClass] {
        &self.classes
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn options(&self) -> &Options {
        &self.profile.options
    }

    pub fn set_option(&mut self, name: &str, value: &str) -> Result<(), RuleError> {
        self.profile.options.set(name, value)
    }

    /// Input symbols the rules mention: matched literals and class members.
    /// In character mode multi-character literals are split into characters.
    pub fn alphabet(&self) -> std::collections::BTreeSet<String> {
        let mut raw: Vec<&str> = Vec::new();
        for r in &self.rules {
            for e in r.left.iter().chain(&r.matched).chain(&r.right) {
                match e {
                    Element::Literal(s) => raw.push(s),
                    Element::Class(i) | Element::NotClass(i) => {
                        raw.extend(self.classes[*i].members.iter().map(String::as_str))
                    }
                    Element::Boundary => {}
                }
            }
        }
        match self.mode {
            InputMode::Chars => raw.iter().flat_map(|s| s.chars()).map(String::from).collect(),
            InputMode::Phonemes => raw.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Every letter a transliteration with this rule set can emit, including
    /// the null onset inserted before bare vowels.
    pub fn output_letters(&self) -> std::collections::BTreeSet<Letter> {
        let mut out: std::collections::BTreeSet<Letter> = self
            .rules
            .iter()
            .flat_map(|r| r.output.iter().map(JamoToken::letter))
            .collect();
        out.insert(JamoToken::onset(crate::jamo::Consonant::NG).letter());
        out
    }
}
