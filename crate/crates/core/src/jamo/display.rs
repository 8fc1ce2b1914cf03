//! Best-effort Unicode rendering. Modified letters have no code points, so
//! blocks are written with their base letters; the `Marked` policy appends an
//! ASCII note such as `베(B*)` or `지(J*,1)` to blocks that carry extra marks.

use std::fmt;

use super::{Base, SyllableBlock, Transcript, Vowel};

const SYLLABLE_BASE: u32 = 0xAC00;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisplayPolicy {
    /// Nearest base-letter syllables, marks dropped.
    Plain,
    /// Base-letter syllables with an annotation on each marked block.
    Marked,
}

impl fmt::Display for DisplayPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DisplayPolicy::Plain => "plain",
            DisplayPolicy::Marked => "marked",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplayText {
    pub policy: DisplayPolicy,
    pub text: String,
}

pub fn to_display_text(transcript: &Transcript, policy: DisplayPolicy) -> DisplayText {
    let mut text = String::new();
    for (wi, word) in transcript.words().iter().enumerate() {
        if wi > 0 {
            text.push(' ');
        }
        for block in word {
            push_block(&mut text, block);
            if policy == DisplayPolicy::Marked && block.has_marks() {
                push_annotation(&mut text, block);
            }
        }
    }
    DisplayText { policy, text }
}

fn nucleus_vowel(block: &SyllableBlock) -> Vowel {
    match block.nucleus().base() {
        Base::Vowel(v) => v,
        // the silent vowel is printed with ㅡ, its closest plain shape
        _ => Vowel::EU,
    }
}

fn push_block(out: &mut String, block: &SyllableBlock) {
    let onset = block.onset().consonant().expect("onset is a consonant");
    let vowel = nucleus_vowel(block);
    let coda = block.coda().and_then(|c| c.consonant());
    let final_index = coda.and_then(|c| c.final_index());
    let code = SYLLABLE_BASE + (onset.index() * 21 + vowel.index()) * 28 + final_index.unwrap_or(0);
    out.push(char::from_u32(code).expect("precomposed syllable range"));
    // fortis codas (ㄸ ㅃ ㅉ) have no final form; print the loose letter
    if let (Some(c), None) = (coda, final_index) {
        out.push(c.compat_char());
    }
}

fn push_annotation(out: &mut String, block: &SyllableBlock) {
    let mut parts: Vec<String> = block
        .tokens()
        .filter(|t| t.is_marked() || t.is_silent())
        .map(|t| t.to_string())
        .collect();
    if !block.tone().is_none() {
        parts.push(block.tone().value().to_string());
    }
    out.push('(');
    out.push_str(&parts.join(","));
    out.push(')');
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jamo::{parse_tokens, Consonant};

    fn show(tokens: &str, policy: DisplayPolicy) -> String {
        to_display_text(&parse_tokens(tokens).unwrap(), policy).text
    }

    #[test]
    fn plain_drops_modifiers() {
        assert_eq!(show("B*+E . R+I", DisplayPolicy::Plain), "베리");
        assert_eq!(show("", DisplayPolicy::Plain), "");
        assert_eq!(show("N+I3 . H+A3 . NG+O3", DisplayPolicy::Plain), "니하오");
        assert_eq!(show("S+_ . T+_ . R+I . T+_", DisplayPolicy::Plain), "스트리트");
        assert_eq!(show("H+A+N / G+EU+R", DisplayPolicy::Plain), "한 글");
    }

    #[test]
    fn marked_annotation() {
        // string assembly: syllable 지, then "(" + "J*" + "," + "1" + ")"
        let expected = format!("{}{}", '지', "(J*,1)");
        assert_eq!(show("J*+I1", DisplayPolicy::Marked), expected);
        assert_eq!(show("B*+E . R+I", DisplayPolicy::Marked), "베(B*)리");
        assert_eq!(show("K+_", DisplayPolicy::Marked), "크(_)");
        let out = to_display_text(&parse_tokens("J*+I1").unwrap(), DisplayPolicy::Marked);
        assert_eq!(out.policy, DisplayPolicy::Marked);
    }

    #[test]
    fn fortis_coda_falls_back_to_loose_letter() {
        assert_eq!(
            show("G+A+DD", DisplayPolicy::Plain),
            format!("가{}", Consonant::DD.compat_char())
        );
        assert_eq!(show("G+A+SS", DisplayPolicy::Plain), "갔");
    }
}
