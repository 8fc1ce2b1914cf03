use std::collections::BTreeMap;

use crate::jamo::JamoToken;

use super::{CharClass, Element, Guard, InputMode, LanguageProfile, RewriteRule, RuleError, RuleSet};

/// Parses and validates a rule file.
pub fn load_ruleset(bytes: &[u8]) -> Result<RuleSet, RuleError> {
    let text = std::str::from_utf8(bytes).map_err(|e| RuleError::InvalidUtf8 {
        valid_up_to: e.valid_up_to(),
    })?;

    let mut id = String::from("custom");
    let mut mode = InputMode::Chars;
    let mut classes: Vec<CharClass> = Vec::new();
    let mut meanings = BTreeMap::new();
    let mut rules = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split(';').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: &str| RuleError::Parse {
            line,
            message: message.to_string(),
        };
        let (keyword, rest) = content
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((content, ""));

        match keyword {
            "profile" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(err("expected `profile ID`"));
                }
                id = rest.to_string();
            }
            "input" => {
                if !classes.is_empty() || !rules.is_empty() {
                    return Err(err("`input` must come before classes and rules"));
                }
                mode = match rest {
                    "chars" => InputMode::Chars,
                    "phonemes" => InputMode::Phonemes,
                    _ => return Err(err("expected `input chars` or `input phonemes`")),
                };
            }
            "class" => {
                if !rules.is_empty() {
                    return Err(err("class declarations must precede rules"));
                }
                let (name, members) = rest
                    .split_once('=')
                    .ok_or_else(|| err("expected `class NAME = members`"))?;
                let name = name.trim();
                if !is_class_name(name) {
                    return Err(err("class names are uppercase ASCII identifiers"));
                }
                if classes.iter().any(|c| c.name == name) {
                    return Err(RuleError::DuplicateClass {
                        line,
                        name: name.to_string(),
                    });
                }
                let members = class_members(members, mode);
                if members.is_empty() {
                    return Err(err("empty class"));
                }
                classes.push(CharClass {
                    name: name.to_string(),
                    members,
                });
            }
            "meaning" => {
                let (token, label) = rest
                    .split_once('=')
                    .ok_or_else(|| err("expected `meaning TOKEN = label`"))?;
                let token =
                    JamoToken::parse(token.trim()).map_err(|source| RuleError::InvalidOutput { line, source })?;
                meanings.insert(token.letter(), label.trim().to_string());
            }
            _ => rules.push(parse_rule(content, line, mode, &classes)?),
        }
    }

    for rule in &rules {
        for token in rule.output.iter().filter(|t| t.is_marked()) {
            if !meanings.contains_key(&token.letter()) {
                return Err(RuleError::MissingMeaning {
                    line: rule.line,
                    token: token.to_string(),
                });
            }
        }
    }

    Ok(RuleSet {
        profile: LanguageProfile {
            id,
            meanings,
            options: Default::default(),
        },
        mode,
        classes,
        rules,
    })
}

fn is_class_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_uppercase())
        && chars.all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '_')
}

fn class_members(spec: &str, mode: InputMode) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for item in spec.split_whitespace() {
        let item = item.to_lowercase();
        match mode {
            InputMode::Chars => out.extend(item.chars().map(String::from)),
            InputMode::Phonemes => out.push(item),
        }
    }
    out.dedup();
    out
}

fn parse_rule(content: &str, line: usize, mode: InputMode, classes: &[CharClass]) -> Result<RewriteRule, RuleError> {
    let err = |message: &str| RuleError::Parse {
        line,
        message: message.to_string(),
    };

    let (guard, body) = match content.strip_prefix('[') {
        Some(rest) => {
            let (inner, body) = rest.split_once(']').ok_or_else(|| err("unclosed guard"))?;
            let (name, value) = inner
                .split_once('=')
                .ok_or_else(|| err("guard must be `[option=value]`"))?;
            let guard = Guard::parse(name.trim(), value.trim()).map_err(|_| err("unknown option in guard"))?;
            (Some(guard), body.trim())
        }
        None => (None, content),
    };

    let (lhs, rhs) = body
        .split_once("->")
        .ok_or_else(|| err("expected `LEFT | MATCH | RIGHT -> TOKENS`"))?;
    let parts: Vec<&str> = lhs.split('|').collect();
    let [left, matched, right] = parts[..] else {
        return Err(err("expected exactly three `|`-separated fields"));
    };

    let left = parse_pattern(left, line, mode, classes)?;
    let matched = parse_pattern(matched, line, mode, classes)?;
    let right = parse_pattern(right, line, mode, classes)?;
    if matched.is_empty() {
        return Err(err("match part is empty"));
    }
    if matched
        .iter()
        .any(|e| matches!(e, Element::Boundary | Element::NotClass(_)))
    {
        return Err(err("`#` and `!CLASS` are context-only"));
    }

    let output = rhs
        .split_whitespace()
        .map(|t| JamoToken::parse(t).map_err(|source| RuleError::InvalidOutput { line, source }))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(RewriteRule {
        line,
        guard,
        left,
        matched,
        right,
        output,
    })
}

fn parse_pattern(src: &str, line: usize, mode: InputMode, classes: &[CharClass]) -> Result<Vec<Element>, RuleError> {
    let lookup = |name: &str| {
        classes
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| RuleError::UndeclaredClass {
                line,
                name: name.to_string(),
            })
    };
    let mut out = Vec::new();
    for item in src.split_whitespace() {
        if item == "#" {
            out.push(Element::Boundary);
        } else if let Some(name) = item.strip_prefix('!') {
            out.push(Element::NotClass(lookup(name)?));
        } else if item.starts_with(|c: char| c.is_ascii_uppercase()) {
            out.push(Element::Class(lookup(item)?));
        } else {
            match mode {
                InputMode::Chars => out.extend(item.chars().map(|c| Element::Literal(c.to_lowercase().collect()))),
                InputMode::Phonemes => out.push(Element::Literal(item.to_lowercase())),
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intervocalic_rule() {
        let rs = load_ruleset(b"class V = a e i o u\nV | s | V -> J\n").unwrap();
        assert_eq!(rs.rules().len(), 1);
        assert_eq!(rs.rules()[0].line(), 2);
        assert_eq!(rs.classes()[0].members.len(), 5);
    }

    #[test]
    fn empty_file_is_valid() {
        let rs = load_ruleset(b"").unwrap();
        assert!(rs.rules().is_empty());
        assert_eq!(rs.id(), "custom");
    }

    #[test]
    fn undeclared_class_reports_line() {
        let err = load_ruleset(b"class V = aeiou\n\nX | s | V -> J\n").unwrap_err();
        assert_eq!(
            err,
            RuleError::UndeclaredClass {
                line: 3,
                name: "X".into()
            }
        );
    }

    #[test]
    fn duplicate_class_rejected() {
        let err = load_ruleset(b"class V = a\nclass V = e\n").unwrap_err();
        assert!(matches!(err, RuleError::DuplicateClass { line: 2, .. }));
    }

    #[test]
    fn invalid_outputs_rejected() {
        assert!(matches!(
            load_ruleset(b"| g | -> G*\n").unwrap_err(),
            RuleError::InvalidOutput { line: 1, .. }
        ));
        assert!(matches!(
            load_ruleset(b"| k | -> KK A\n").unwrap_err(),
            RuleError::InvalidOutput { line: 1, .. }
        ));
        assert!(matches!(
            load_ruleset(b"| v | -> B*\n").unwrap_err(),
            RuleError::MissingMeaning { line: 1, .. }
        ));
        assert!(load_ruleset(b"meaning B* = v\n| v | -> B*\n").is_ok());
    }

    #[test]
    fn structural_errors() {
        assert!(matches!(
            load_ruleset(b"| | -> A").unwrap_err(),
            RuleError::Parse { line: 1, .. }
        ));
        assert!(matches!(
            load_ruleset(b"| a -> A").unwrap_err(),
            RuleError::Parse { .. }
        ));
        assert!(matches!(
            load_ruleset(b"| a | # -> A\n| # | -> A").unwrap_err(),
            RuleError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            load_ruleset(b"| a | -> A\nclass V = a").unwrap_err(),
            RuleError::Parse { line: 2, .. }
        ));
        assert!(matches!(
            load_ruleset(b"[dialect=x] | a | -> A").unwrap_err(),
            RuleError::Parse { .. }
        ));
        assert!(matches!(
            load_ruleset(&[0x66, 0xff]).unwrap_err(),
            RuleError::InvalidUtf8 { valid_up_to: 1 }
        ));
    }

    #[test]
    fn guards_and_phoneme_mode() {
        let rs = load_ruleset(b"input phonemes\nclass V = aa iy\n[spanish_variant=latam] | th | V -> S\n").unwrap();
        assert_eq!(rs.mode(), InputMode::Phonemes);
        assert_eq!(rs.classes()[0].members, vec!["aa", "iy"]);
        assert!(rs.rules()[0].guard().is_some());
    }
}
