use crate::jamo::{compose, Consonant, JamoToken, StreamItem, Transcript};

use super::{Element, InputMode, RewriteRule, RuleError, RuleSet};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Symbol {
    text: String,
    byte: usize,
    separator: bool,
}

/// Input text split into the symbols a rule set matches on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceText {
    symbols: Vec<Symbol>,
}

impl SourceText {
    pub fn new(text: &str, mode: InputMode) -> Self {
        let symbols = match mode {
            InputMode::Chars => text
                .char_indices()
                .map(|(byte, c)| Symbol {
                    text: c.to_lowercase().collect(),
                    byte,
                    separator: is_separator(c),
                })
                .collect(),
            InputMode::Phonemes => {
                let mut out = Vec::new();
                let mut start = None;
                for (byte, c) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
                    match (c.is_whitespace(), start) {
                        (false, None) => start = Some(byte),
                        (true, Some(s)) => {
                            out.push(phoneme_symbol(&text[s..byte], s));
                            start = None;
                        }
                        _ => {}
                    }
                }
                out
            }
        };
        SourceText { symbols }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Byte offset of symbol `pos` in the original text.
    pub fn byte_offset(&self, pos: usize) -> usize {
        self.symbols.get(pos).map_or(usize::MAX, |s| s.byte)
    }

    pub fn symbol(&self, pos: usize) -> Option<&str> {
        self.symbols.get(pos).map(|s| s.text.as_str())
    }

    fn word_bounds(&self, pos: usize) -> (usize, usize) {
        let start = self.symbols[..pos]
            .iter()
            .rposition(|s| s.separator)
            .map_or(0, |i| i + 1);
        let end = self.symbols[pos..]
            .iter()
            .position(|s| s.separator)
            .map_or(self.symbols.len(), |i| pos + i);
        (start, end)
    }
}

fn is_separator(c: char) -> bool {
    let combining = ('\u{0300}'..='\u{036F}').contains(&c);
    c.is_whitespace() || !(c.is_alphanumeric() || combining || c == '\'' || c == '\u{2019}')
}

fn phoneme_symbol(raw: &str, byte: usize) -> Symbol {
    let separator = raw == "/" || raw.chars().all(|c| c.is_ascii_punctuation());
    let text = raw.trim_end_matches(|c: char| c.is_ascii_digit()).to_lowercase();
    Symbol { text, byte, separator }
}

/// Scanner position plus whether the last emitted letter was a consonant
/// (a vowel emitted without one gets the null onset NG).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScanState {
    pub pos: usize,
    pub after_consonant: bool,
}

/// One scan step: the consumed symbol span, what it produced, and which rule
/// line did it (`None` for a word separator).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub start: usize,
    pub end: usize,
    pub rule_line: Option<usize>,
    pub output: Vec<StreamItem>,
    pub next: ScanState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub position: usize,
    pub byte: usize,
    pub len: usize,
    pub rule_line: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transliteration {
    pub items: Vec<StreamItem>,
    pub trace: Vec<TraceStep>,
}

impl Transliteration {
    pub fn compose(&self) -> Result<Transcript, RuleError> {
        Ok(compose(&self.items)?)
    }
}

/// Tries the rules at `state.pos` in file order and applies the first one
/// whose match and contexts hold. Returns `None` at end of input or when no
/// rule applies.
pub fn apply_rule_once(source: &SourceText, state: ScanState, rules: &RuleSet) -> Option<Step> {
    let pos = state.pos;
    let sym = source.symbols.get(pos)?;
    if sym.separator {
        return Some(Step {
            start: pos,
            end: pos + 1,
            rule_line: None,
            output: vec![StreamItem::Break],
            next: ScanState {
                pos: pos + 1,
                after_consonant: false,
            },
        });
    }
    let (word_start, word_end) = source.word_bounds(pos);
    let cx = Matcher {
        source,
        rules,
        word_start,
        word_end,
    };
    let options = rules.options();
    for rule in &rules.rules {
        if rule.guard.is_some_and(|g| !g.holds(options)) {
            continue;
        }
        if let Some(end) = cx.try_rule(rule, pos) {
            let mut output = Vec::with_capacity(rule.output.len() + 1);
            let mut after_consonant = state.after_consonant;
            for &token in &rule.output {
                if token.is_vowel() && !after_consonant {
                    output.push(StreamItem::Jamo(JamoToken::onset(Consonant::NG)));
                }
                after_consonant = !token.is_vowel();
                output.push(StreamItem::Jamo(token));
            }
            return Some(Step {
                start: pos,
                end,
                rule_line: Some(rule.line),
                output,
                next: ScanState {
                    pos: end,
                    after_consonant,
                },
            });
        }
    }
    None
}

/// Left-to-right leftmost rewriting; the fold of [`apply_rule_once`].
pub fn transliterate(text: &str, rules: &RuleSet) -> Result<Transliteration, RuleError> {
    let source = SourceText::new(text, rules.mode);
    let mut state = ScanState::default();
    let mut items = Vec::new();
    let mut trace = Vec::new();
    while state.pos < source.len() {
        let step = apply_rule_once(&source, state, rules).ok_or_else(|| RuleError::NoRuleMatched {
            position: state.pos,
            byte: source.byte_offset(state.pos),
            symbol: source.symbol(state.pos).unwrap_or_default().to_string(),
        })?;
        trace.push(TraceStep {
            position: step.start,
            byte: source.byte_offset(step.start),
            len: step.end - step.start,
            rule_line: step.rule_line,
        });
        items.extend(step.output);
        state = step.next;
    }
    Ok(Transliteration { items, trace })
}

struct Matcher<'a> {
    source: &'a SourceText,
    rules: &'a RuleSet,
    word_start: usize,
    word_end: usize,
}

impl Matcher<'_> {
    fn sym(&self, i: usize) -> &str {
        &self.source.symbols[i].text
    }

    fn class_has(&self, class: usize, i: usize) -> bool {
        self.rules.classes[class].contains(self.sym(i))
    }

    fn try_rule(&self, rule: &RewriteRule, pos: usize) -> Option<usize> {
        let end = self.forward(&rule.matched, pos)?;
        self.forward(&rule.right, end)?;
        self.backward(&rule.left, pos)?;
        Some(end)
    }

    fn forward(&self, elements: &[Element], mut i: usize) -> Option<usize> {
        for e in elements {
            let inside = i < self.word_end;
            i = match e {
                Element::Literal(s) if inside && self.sym(i) == s => i + 1,
                Element::Class(c) if inside && self.class_has(*c, i) => i + 1,
                Element::NotClass(c) if inside && !self.class_has(*c, i) => i + 1,
                Element::NotClass(_) | Element::Boundary if !inside => i,
                _ => return None,
            };
        }
        Some(i)
    }

    fn backward(&self, elements: &[Element], mut i: usize) -> Option<usize> {
        for e in elements.iter().rev() {
            let inside = i > self.word_start;
            i = match e {
                Element::Literal(s) if inside && self.sym(i - 1) == s => i - 1,
                Element::Class(c) if inside && self.class_has(*c, i - 1) => i - 1,
                Element::NotClass(c) if inside && !self.class_has(*c, i - 1) => i - 1,
                Element::NotClass(_) | Element::Boundary if !inside => i,
                _ => return None,
            };
        }
        Some(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jamo::serialize_tokens;
    use crate::rules::load_ruleset;

    const MINI_IT: &str = "\
class V = a e i o u
| ca | -> GG A
V | s | V -> J
| s | -> S
| a | -> A
";

    fn run(rules: &str, text: &str) -> String {
        let rs = load_ruleset(rules.as_bytes()).unwrap();
        serialize_tokens(&transliterate(text, &rs).unwrap().compose().unwrap())
    }

    #[test]
    fn single_steps() {
        let rs = load_ruleset(MINI_IT.as_bytes()).unwrap();
        let src = SourceText::new("casa", rs.mode());
        // hand walk: pos 0 hits line 2 ("ca"), pos 2 hits line 3 (s between vowels)
        let s0 = apply_rule_once(&src, ScanState::default(), &rs).unwrap();
        assert_eq!((s0.start, s0.end, s0.rule_line), (0, 2, Some(2)));
        assert_eq!(
            s0.output,
            vec![
                StreamItem::Jamo(JamoToken::parse("GG").unwrap()),
                StreamItem::Jamo(JamoToken::parse("A").unwrap())
            ]
        );
        let s2 = apply_rule_once(
            &src,
            ScanState {
                pos: 2,
                after_consonant: false,
            },
            &rs,
        )
        .unwrap();
        assert_eq!((s2.start, s2.end, s2.rule_line), (2, 3, Some(3)));
        assert_eq!(s2.output, vec![StreamItem::Jamo(JamoToken::parse("J").unwrap())]);
        assert!(apply_rule_once(
            &src,
            ScanState {
                pos: 4,
                after_consonant: false
            },
            &rs
        )
        .is_none());
    }

    #[test]
    fn casa() {
        assert_eq!(run(MINI_IT, "casa"), "GG+A . J+A");
        assert_eq!(run(MINI_IT, "Casa casa"), "GG+A . J+A / GG+A . J+A");
        assert_eq!(run(MINI_IT, ""), "");
    }

    #[test]
    fn null_onset_inserted() {
        assert_eq!(run(MINI_IT, "asa"), "NG+A . J+A");
        assert_eq!(run(MINI_IT, "aa"), "NG+A . NG+A");
    }

    #[test]
    fn no_match_reports_position() {
        let rs = load_ruleset(MINI_IT.as_bytes()).unwrap();
        let err = transliterate("casx", &rs).unwrap_err();
        assert_eq!(
            err,
            RuleError::NoRuleMatched {
                position: 3,
                byte: 3,
                symbol: "x".into()
            }
        );
        let err = transliterate("é x", &rs).unwrap_err();
        assert!(matches!(
            err,
            RuleError::NoRuleMatched {
                position: 0,
                byte: 0,
                ..
            }
        ));
    }

    #[test]
    fn boundaries_and_negated_classes() {
        let rules = "\
class V = a
| s | # -> S _
| s | !V -> SS _
| s | -> S
| a | -> A
";
        assert_eq!(run(rules, "as"), "NG+A . S+_");
        assert_eq!(run(rules, "ass"), "NG+A . SS+_ . S+_");
        assert_eq!(run(rules, "sa"), "S+A");
        let left = "class V = a\n# | a | -> NG A\n!V | a | -> A\nV | a | -> H A\n| s | -> S\n";
        assert_eq!(run(left, "asaa"), "NG+A . S+A . H+A");
    }

    #[test]
    fn trace_covers_input() {
        let rs = load_ruleset(MINI_IT.as_bytes()).unwrap();
        let t = transliterate("casa, casa", &rs).unwrap();
        let consumed: usize = t.trace.iter().map(|s| s.len).sum();
        assert_eq!(consumed, "casa, casa".chars().count());
        assert!(t.trace.windows(2).all(|w| w[0].position < w[1].position));
        assert_eq!(t.trace[3].rule_line, None);
    }

    #[test]
    fn phoneme_mode_tokens() {
        let rules = "input phonemes\nclass V = iy\n| s | -> S _\n| t | -> T _\n| r | V -> R\n| iy | -> I\n";
        assert_eq!(run(rules, "S T R IY1 T"), "S+_ . T+_ . R+I . T+_");
        assert_eq!(run(rules, "s iy / t iy"), "S+_ . NG+I / T+_ . NG+I");
    }
}
