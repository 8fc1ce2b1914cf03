//! Hanyu Pinyin to modified Hangeul.
//!
//! Initials follow a fixed 1:1 table in which only the retroflex series
//! (zh ch sh r) and f use modified letters. Finals come from a local table:
//! a final whose vowels have no single Hangul vowel is spelled over several
//! blocks (`hao` → 하오), and every block of a syllable carries its tone.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::jamo::{Consonant, JamoToken, SyllableBlock, Tone, Vowel};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PinyinError {
    #[error("cannot split `{text}` (byte {position}) into pinyin syllables")]
    Unsegmentable { position: usize, text: String },
    #[error("no Hangul spelling for final `{rime}` after `{initial}`")]
    UnknownFinal { initial: String, rime: String },
}

macro_rules! initials {
    ($($name:ident => $spelling:literal),+ $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum Initial {
            $($name),+
        }

        impl Initial {
            pub const ALL: &'static [Initial] = &[$(Initial::$name),+];

            pub fn spelling(self) -> &'static str {
                match self {
                    $(Initial::$name => $spelling),+
                }
            }
        }
    };
}

initials! {
    B => "b", P => "p", M => "m", F => "f",
    D => "d", T => "t", N => "n", L => "l",
    G => "g", K => "k", H => "h",
    J => "j", Q => "q", X => "x",
    ZH => "zh", CH => "ch", SH => "sh", R => "r",
    Z => "z", C => "c", S => "s",
}

impl Initial {
    pub fn from_spelling(s: &str) -> Option<Initial> {
        Initial::ALL.iter().copied().find(|i| i.spelling() == s)
    }

    /// Onset letter for this initial.
    pub fn onset(self) -> JamoToken {
        use Consonant as C;
        let (base, modified) = match self {
            Initial::B => (C::BB, false),
            Initial::P => (C::P, false),
            Initial::M => (C::M, false),
            Initial::F => (C::P, true),
            Initial::D => (C::D, false),
            Initial::T => (C::T, false),
            Initial::N => (C::N, false),
            Initial::L => (C::R, false),
            Initial::G => (C::G, false),
            Initial::K => (C::K, false),
            Initial::H => (C::H, false),
            Initial::J => (C::J, false),
            Initial::Q => (C::CH, false),
            Initial::X => (C::S, false),
            Initial::ZH => (C::J, true),
            Initial::CH => (C::CH, true),
            Initial::SH => (C::S, true),
            Initial::R => (C::R, true),
            Initial::Z => (C::J, false),
            Initial::C => (C::CH, false),
            Initial::S => (C::SS, false),
        };
        if modified {
            JamoToken::modified(base).expect("retroflex bases are modifiable")
        } else {
            JamoToken::onset(base)
        }
    }

    fn is_palatal(self) -> bool {
        matches!(self, Initial::J | Initial::Q | Initial::X)
    }

    fn is_sibilant(self) -> bool {
        matches!(
            self,
            Initial::Z | Initial::C | Initial::S | Initial::ZH | Initial::CH | Initial::SH | Initial::R
        )
    }

    fn is_labial(self) -> bool {
        matches!(self, Initial::B | Initial::P | Initial::M | Initial::F)
    }
}

impl fmt::Display for Initial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.spelling())
    }
}

/// One pinyin syllable. `rime` is lowercase and toneless, with ü written out
/// (`v` input is normalized to `ü`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinyinSyllable {
    pub initial: Option<Initial>,
    pub rime: String,
    pub tone: Tone,
}

impl PinyinSyllable {
    pub fn new(initial: Option<Initial>, rime: &str, tone: u8) -> Self {
        PinyinSyllable {
            initial,
            rime: rime.to_string(),
            tone: Tone::new(tone).expect("tone 1..=5"),
        }
    }
}

impl fmt::Display for PinyinSyllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(i) = self.initial {
            write!(f, "{i}")?;
        }
        write!(f, "{}{}", self.rime, self.tone.value())
    }
}

// nucleus token plus optional coda
type Piece = (JamoToken, Option<Consonant>);

fn v(v: Vowel) -> Piece {
    (JamoToken::vowel(v), None)
}

fn vc(v: Vowel, c: Consonant) -> Piece {
    (JamoToken::vowel(v), Some(c))
}

/// Hangul spelling of a final, or `None` if the combination is not a pinyin
/// syllable this table knows.
fn rime_pieces(initial: Option<Initial>, rime: &str) -> Option<Vec<Piece>> {
    use Consonant::{N, NG};
    use Vowel::*;

    let Some(init) = initial else {
        return zero_initial(rime);
    };
    let palatal = init.is_palatal();
    let sibilant = init.is_sibilant();
    let i_medial = rime.starts_with('i') && rime != "i";
    let u_medial = rime.starts_with('u') && rime.len() > 1;
    let u_umlaut = rime.starts_with('ü');

    // j q x take only i- and ü- finals (ü spelled u); sibilants take no i- finals
    if palatal && !(rime.starts_with('i') || rime.starts_with('u') || u_umlaut) {
        return None;
    }
    if palatal && rime.starts_with('u') && !matches!(rime, "u" | "uan" | "un" | "ue") {
        return None;
    }
    if sibilant && i_medial {
        return None;
    }
    if u_umlaut && !matches!(init, Initial::N | Initial::L) {
        return None;
    }
    if init.is_labial() && (u_medial && rime != "u") {
        return None;
    }

    let pieces = match rime {
        "a" => vec![v(A)],
        "o" => vec![v(O)],
        "e" => vec![v(EO)],
        "ai" => vec![v(A), v(I)],
        "ei" => vec![v(AE), v(I)],
        "ao" => vec![v(A), v(O)],
        "ou" => vec![v(O), v(U)],
        "an" => vec![vc(A, N)],
        "en" => vec![vc(EO, N)],
        "ang" => vec![vc(A, NG)],
        "eng" => vec![vc(EO, NG)],
        "ong" => vec![vc(O, NG)],
        "i" => match init {
            Initial::SH => vec![v(I), v(EU)],
            _ if sibilant => vec![v(EU)],
            _ => vec![v(I)],
        },
        "ia" => vec![v(YA)],
        "ie" => vec![v(I), v(E)],
        "iao" => vec![v(YA), v(O)],
        "iu" => vec![v(I), v(O), v(U)],
        "ian" => vec![vc(YE, N)],
        "in" => vec![vc(I, N)],
        "iang" => vec![vc(YA, NG)],
        "ing" => vec![vc(I, NG)],
        "iong" => vec![vc(YO, NG)],
        "u" if palatal => vec![v(WI)],
        "u" => vec![v(U)],
        "ua" => vec![v(WA)],
        "uo" => vec![v(U), v(O)],
        "uai" => vec![v(WA), v(I)],
        "ui" => vec![v(WE), v(I)],
        "uan" if palatal => vec![v(WI), vc(E, N)],
        "uan" => vec![vc(WA, N)],
        "un" if palatal => vec![vc(WI, N)],
        "un" => vec![vc(U, N)],
        "uang" => vec![vc(WA, NG)],
        "ue" if palatal || matches!(init, Initial::N | Initial::L) => vec![v(WI), v(E)],
        "ü" => vec![v(WI)],
        "üe" => vec![v(WI), v(E)],
        _ => return None,
    };
    Some(pieces)
}

fn zero_initial(rime: &str) -> Option<Vec<Piece>> {
    use Consonant::{N, NG};
    use Vowel::*;
    let pieces = match rime {
        "a" => vec![v(A)],
        "o" => vec![v(O)],
        "e" => vec![v(EO)],
        "ai" => vec![v(A), v(I)],
        "ei" => vec![v(AE), v(I)],
        "ao" => vec![v(A), v(O)],
        "ou" => vec![v(O), v(U)],
        "an" => vec![vc(A, N)],
        "en" => vec![vc(EO, N)],
        "ang" => vec![vc(A, NG)],
        "eng" => vec![vc(EO, NG)],
        "er" => vec![(JamoToken::rhotic(A), None)],
        "yi" => vec![v(I)],
        "ya" => vec![v(YA)],
        "yo" => vec![v(YO)],
        "ye" => vec![v(YE)],
        "yao" => vec![v(YA), v(O)],
        "you" => vec![v(YO), v(U)],
        "yan" => vec![vc(YE, N)],
        "yin" => vec![vc(I, N)],
        "yang" => vec![vc(YA, NG)],
        "ying" => vec![vc(I, NG)],
        "yong" => vec![vc(YO, NG)],
        "yu" => vec![v(WI)],
        "yue" => vec![v(WI), v(E)],
        "yuan" => vec![v(WI), vc(E, N)],
        "yun" => vec![vc(WI, N)],
        "wu" => vec![v(U)],
        "wa" => vec![v(WA)],
        "wo" => vec![v(WO)],
        "wai" => vec![v(WA), v(I)],
        "wei" => vec![v(WE), v(I)],
        "wan" => vec![vc(WA, N)],
        "wen" => vec![vc(WO, N)],
        "wang" => vec![vc(WA, NG)],
        "weng" => vec![vc(WO, NG)],
        _ => return None,
    };
    Some(pieces)
}

/// Every rime the table accepts after `initial` (the empty initial included).
pub fn known_rimes(initial: Option<Initial>) -> Vec<&'static str> {
    const RIMES: &[&str] = &[
        "a", "o", "e", "ai", "ei", "ao", "ou", "an", "en", "ang", "eng", "ong", "er", "i", "ia", "ie", "iao", "iu",
        "ian", "in", "iang", "ing", "iong", "u", "ua", "uo", "uai", "ui", "uan", "un", "uang", "ue", "ü", "üe", "yi",
        "ya", "yo", "ye", "yao", "you", "yan", "yin", "yang", "ying", "yong", "yu", "yue", "yuan", "yun", "wu", "wa",
        "wo", "wai", "wei", "wan", "wen", "wang", "weng",
    ];
    RIMES
        .iter()
        .copied()
        .filter(|r| rime_pieces(initial, r).is_some())
        .collect()
}

/// Maps syllables to blocks: the initial (or the null onset NG) opens the
/// first block, later pieces of the final open NG blocks, and every block
/// carries the syllable's tone.
pub fn transliterate_pinyin(syllables: &[PinyinSyllable]) -> Result<Vec<SyllableBlock>, PinyinError> {
    let null = JamoToken::onset(Consonant::NG);
    let mut out = Vec::new();
    for syl in syllables {
        let pieces = rime_pieces(syl.initial, &syl.rime).ok_or_else(|| PinyinError::UnknownFinal {
            initial: syl.initial.map_or("", Initial::spelling).to_string(),
            rime: syl.rime.clone(),
        })?;
        for (i, (nucleus, coda)) in pieces.into_iter().enumerate() {
            let onset = match (i, syl.initial) {
                (0, Some(init)) => init.onset(),
                _ => null,
            };
            let block = SyllableBlock::new(onset, nucleus, coda.map(JamoToken::onset), syl.tone)
                .expect("table pieces are well formed");
            out.push(block);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
enum Unit {
    Letter { c: char, mark: Option<u8> },
    Digit(u8),
}

fn tone_of_mark(c: char) -> Option<u8> {
    match c {
        '\u{0304}' => Some(1),
        '\u{0301}' => Some(2),
        '\u{030C}' => Some(3),
        '\u{0300}' => Some(4),
        _ => None,
    }
}

fn units(chunk: &str) -> Option<Vec<Unit>> {
    let mut out: Vec<Unit> = Vec::new();
    for c in chunk.nfd().flat_map(char::to_lowercase) {
        match c {
            '1'..='5' => out.push(Unit::Digit(c as u8 - b'0')),
            '\u{0308}' => match out.last_mut() {
                Some(Unit::Letter { c: base @ 'u', .. }) => *base = 'ü',
                _ => return None,
            },
            c if tone_of_mark(c).is_some() => match out.last_mut() {
                Some(Unit::Letter { mark: m @ None, .. }) => *m = tone_of_mark(c),
                _ => return None,
            },
            'v' => out.push(Unit::Letter { c: 'ü', mark: None }),
            'a'..='z' => out.push(Unit::Letter { c, mark: None }),
            _ => return None,
        }
    }
    Some(out)
}

fn is_chunk_separator(c: char) -> bool {
    c.is_whitespace() || c == '\'' || c == '\u{2019}' || c == '-' || (c.is_ascii_punctuation())
}

/// Splits pinyin text into syllables. Chunks between spaces, apostrophes
/// and hyphens are split with the longest initial first (zh ch sh before
/// z c s), then the longest final that still lets the rest of the chunk
/// split. Tones come from a diacritic or a trailing digit; an untoned
/// syllable gets tone 5.
pub fn segment_pinyin(text: &str) -> Result<Vec<PinyinSyllable>, PinyinError> {
    let mut out = Vec::new();
    let mut start = None;
    for (byte, c) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
        match (is_chunk_separator(c), start) {
            (false, None) => start = Some(byte),
            (true, Some(s)) => {
                let chunk = &text[s..byte];
                let err = || PinyinError::Unsegmentable {
                    position: s,
                    text: chunk.to_string(),
                };
                let units = units(chunk).ok_or_else(err)?;
                let mut memo = HashMap::new();
                out.extend(split(&units, 0, &mut memo).ok_or_else(err)?);
                start = None;
            }
            _ => {}
        }
    }
    Ok(out)
}

fn letters(units: &[Unit], from: usize, to: usize) -> Option<String> {
    units
        .get(from..to)?
        .iter()
        .map(|u| match u {
            Unit::Letter { c, .. } => Some(*c),
            Unit::Digit(_) => None,
        })
        .collect()
}

fn split(
    units: &[Unit],
    pos: usize,
    memo: &mut HashMap<usize, Option<Vec<PinyinSyllable>>>,
) -> Option<Vec<PinyinSyllable>> {
    if pos == units.len() {
        return Some(Vec::new());
    }
    if let Some(done) = memo.get(&pos) {
        return done.clone();
    }
    let mut initials: Vec<(Option<Initial>, usize)> = Vec::new();
    for len in [2, 1] {
        if let Some(init) = letters(units, pos, pos + len).and_then(|s| Initial::from_spelling(&s)) {
            initials.push((Some(init), len));
        }
    }
    initials.push((None, 0));

    let mut result = None;
    'search: for (initial, ilen) in initials {
        let rime_start = pos + ilen;
        for end in (rime_start + 1..=units.len()).rev() {
            let Some(rime) = letters(units, rime_start, end) else {
                continue;
            };
            if rime_pieces(initial, &rime).is_none() {
                continue;
            }
            let mut marks = units[pos..end].iter().filter_map(|u| match u {
                Unit::Letter { mark, .. } => *mark,
                Unit::Digit(_) => None,
            });
            let mark = marks.next();
            if marks.next().is_some() {
                continue;
            }
            let (tone, next) = match (units.get(end), mark) {
                (Some(Unit::Digit(d)), None) => (*d, end + 1),
                (Some(Unit::Digit(_)), Some(_)) => continue,
                (_, m) => (m.unwrap_or(5), end),
            };
            if let Some(rest) = split(units, next, memo) {
                let mut syllables = vec![PinyinSyllable::new(initial, &rime, tone)];
                syllables.extend(rest);
                result = Some(syllables);
                break 'search;
            }
        }
    }
    memo.insert(pos, result.clone());
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jamo::{serialize_tokens, Transcript};

    fn tokens(text: &str) -> String {
        let syl = segment_pinyin(text).unwrap();
        serialize_tokens(&Transcript::word(transliterate_pinyin(&syl).unwrap()))
    }

    #[test]
    fn segments() {
        assert_eq!(
            segment_pinyin("Běijīng").unwrap(),
            vec![
                PinyinSyllable::new(Some(Initial::B), "ei", 3),
                PinyinSyllable::new(Some(Initial::J), "ing", 1)
            ]
        );
        assert_eq!(
            segment_pinyin("ma1").unwrap(),
            vec![PinyinSyllable::new(Some(Initial::M), "a", 1)]
        );
        assert_eq!(
            segment_pinyin("Zhōngguó").unwrap(),
            vec![
                PinyinSyllable::new(Some(Initial::ZH), "ong", 1),
                PinyinSyllable::new(Some(Initial::G), "uo", 2)
            ]
        );
        assert_eq!(segment_pinyin("ma").unwrap()[0].tone.value(), 5);
        assert_eq!(segment_pinyin("Xī'ān").unwrap().len(), 2);
        assert_eq!(segment_pinyin("nv3 lüe4").unwrap()[1].rime, "üe");
        assert_eq!(segment_pinyin("ér").unwrap(), vec![PinyinSyllable::new(None, "er", 2)]);
        assert!(segment_pinyin("").unwrap().is_empty());
    }

    #[test]
    fn backtracks_over_greedy_finals() {
        let s = segment_pinyin("fangan").unwrap();
        assert_eq!(s.iter().map(ToString::to_string).collect::<Vec<_>>(), ["fang5", "an5"]);
        let s = segment_pinyin("Xian1gang3").unwrap();
        assert_eq!(
            s.iter().map(ToString::to_string).collect::<Vec<_>>(),
            ["xian1", "gang3"]
        );
    }

    #[test]
    fn unsegmentable() {
        assert_eq!(
            segment_pinyin("ni3 qa").unwrap_err(),
            PinyinError::Unsegmentable {
                position: 4,
                text: "qa".into()
            }
        );
        assert!(segment_pinyin("mā1").is_err());
        assert!(segment_pinyin("ma6").is_err());
    }

    #[test]
    fn initials_table() {
        assert_eq!(Initial::ALL.len(), 21);
        assert_eq!(tokens("ba1"), "BB+A1");
        assert_eq!(tokens("zha1"), "J*+A1");
        assert_eq!(tokens("fa1"), "P*+A1");
    }

    #[test]
    fn example_words() {
        assert_eq!(tokens("Nǐ hǎo"), "N+I3 . H+A3 . NG+O3");
        assert_eq!(tokens("Běijīng"), "BB+AE3 . NG+I3 . J+I+NG1");
        assert_eq!(tokens("Píjiǔ"), "P+I2 . J+I3 . NG+O3 . NG+U3");
        assert_eq!(tokens("Lǎoshī"), "R+A3 . NG+O3 . S*+I1 . NG+EU1");
        assert_eq!(tokens("Zìyóu"), "J+EU4 . NG+YO2 . NG+U2");
        assert_eq!(tokens("Sìchuān"), "SS+EU4 . CH*+WA+N1");
        assert_eq!(tokens("Cìkè"), "CH+EU4 . K+EO4");
        assert_eq!(tokens("Shànghǎi"), "S*+A+NG4 . H+A3 . NG+I3");
    }

    #[test]
    fn unknown_final() {
        let err = transliterate_pinyin(&[PinyinSyllable::new(Some(Initial::J), "a", 1)]).unwrap_err();
        assert_eq!(
            err,
            PinyinError::UnknownFinal {
                initial: "j".into(),
                rime: "a".into()
            }
        );
    }
}
