use std::collections::BTreeSet;

use crate::jamo::{Consonant, JamoToken, Letter, Transcript};

use super::pinyin::{known_rimes, segment_pinyin, transliterate_pinyin, Initial, PinyinError, PinyinSyllable};
use super::{load_ruleset, transliterate, LanguageProfile, RuleError, RuleSet};

/// Built-in profile ids. `zh` is the pinyin transducer; the rest are rule files.
pub const PROFILE_IDS: &[&str] = &["en", "it", "es", "de", "ru", "fr", "pt", "zh"];

const SOURCES: &[(&str, &str)] = &[
    ("en", include_str!("../../data/rules/en.rules")),
    ("it", include_str!("../../data/rules/it.rules")),
    ("es", include_str!("../../data/rules/es.rules")),
    ("de", include_str!("../../data/rules/de.rules")),
    ("ru", include_str!("../../data/rules/ru.rules")),
    ("fr", include_str!("../../data/rules/fr.rules")),
    ("pt", include_str!("../../data/rules/pt.rules")),
];

const ZH_MEANINGS: &[(&str, &str)] = &[
    ("J*", "zh"),
    ("CH*", "ch"),
    ("S*", "sh"),
    ("R*", "r"),
    ("P*", "f"),
    ("A^", "er"),
];

/// Text of a shipped rule file.
pub fn builtin_ruleset_source(id: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(k, _)| *k == id).map(|(_, v)| *v)
}

/// A transliteration profile: a rule set or the pinyin transducer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Profile {
    Rules(RuleSet),
    Pinyin(LanguageProfile),
}

pub fn builtin_profile(id: &str) -> Result<Profile, RuleError> {
    if id == "zh" {
        let meanings = ZH_MEANINGS
            .iter()
            .map(|(t, m)| (JamoToken::parse(t).expect("valid token").letter(), m.to_string()))
            .collect();
        return Ok(Profile::Pinyin(LanguageProfile {
            id: "zh".into(),
            meanings,
            options: Default::default(),
        }));
    }
    let src = builtin_ruleset_source(id).ok_or_else(|| RuleError::UnknownProfile(id.to_string()))?;
    Ok(Profile::Rules(load_ruleset(src.as_bytes())?))
}

fn is_sentence_break(c: char) -> bool {
    matches!(
        c,
        ',' | '.' | ';' | ':' | '!' | '?' | '，' | '。' | '；' | '：' | '！' | '？'
    )
}

impl Profile {
    pub fn language(&self) -> &LanguageProfile {
        match self {
            Profile::Rules(rs) => rs.profile(),
            Profile::Pinyin(lp) => lp,
        }
    }

    pub fn id(&self) -> &str {
        &self.language().id
    }

    pub fn ruleset(&self) -> Option<&RuleSet> {
        match self {
            Profile::Rules(rs) => Some(rs),
            Profile::Pinyin(_) => None,
        }
    }

    pub fn set_option(&mut self, name: &str, value: &str) -> Result<(), RuleError> {
        match self {
            Profile::Rules(rs) => rs.set_option(name, value),
            Profile::Pinyin(lp) => lp.options.set(name, value),
        }
    }

    /// Transliterates and composes. Pinyin keeps the syllables of one
    /// sentence in one word; sentence punctuation starts a new word.
    pub fn transcribe(&self, text: &str) -> Result<Transcript, RuleError> {
        match self {
            Profile::Rules(rs) => transliterate(text, rs)?.compose(),
            Profile::Pinyin(_) => {
                let mut words = Vec::new();
                let mut offset = 0;
                for part in text.split_inclusive(is_sentence_break) {
                    let body = part.trim_end_matches(is_sentence_break);
                    let syllables = segment_pinyin(body).map_err(|e| match e {
                        PinyinError::Unsegmentable { position, text } => PinyinError::Unsegmentable {
                            position: position + offset,
                            text,
                        },
                        other => other,
                    })?;
                    offset += part.len();
                    words.push(transliterate_pinyin(&syllables)?);
                }
                Ok(Transcript::new(words))
            }
        }
    }

    /// Every letter this profile can emit.
    pub fn output_letters(&self) -> BTreeSet<Letter> {
        match self {
            Profile::Rules(rs) => rs.output_letters(),
            Profile::Pinyin(_) => {
                let mut out = BTreeSet::from([JamoToken::onset(Consonant::NG).letter()]);
                let initials = Initial::ALL.iter().copied().map(Some).chain([None]);
                for initial in initials {
                    for rime in known_rimes(initial) {
                        let syl = PinyinSyllable::new(initial, rime, 1);
                        for block in transliterate_pinyin(&[syl]).expect("known rime") {
                            out.extend(block.tokens().map(|t| t.letter()));
                        }
                    }
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jamo::serialize_tokens;

    #[test]
    fn all_builtins_load() {
        for id in PROFILE_IDS {
            let p = builtin_profile(id).unwrap();
            assert_eq!(p.id(), *id);
        }
        assert!(matches!(builtin_profile("xx"), Err(RuleError::UnknownProfile(_))));
    }

    #[test]
    fn pinyin_sentences() {
        let zh = builtin_profile("zh").unwrap();
        let t = zh.transcribe("Nǐ hǎo. Nǐ hǎo").unwrap();
        assert_eq!(serialize_tokens(&t), "N+I3 . H+A3 . NG+O3 / N+I3 . H+A3 . NG+O3");
        let err = zh.transcribe("ni3. qa").unwrap_err();
        assert_eq!(
            err,
            RuleError::Pinyin(PinyinError::Unsegmentable {
                position: 5,
                text: "qa".into()
            })
        );
    }

    #[test]
    fn marked_letters_have_meanings() {
        for id in PROFILE_IDS {
            let p = builtin_profile(id).unwrap();
            for letter in p.output_letters() {
                if letter.token().is_marked() {
                    assert!(p.language().meanings.contains_key(&letter), "{id}: {}", letter.token());
                }
            }
        }
    }
}
