use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::KeyboardError;
use crate::jamo::{Base, JamoToken, Letter, Modifier, Transcript, Vowel};
use crate::rules::{builtin_profile, PROFILE_IDS};

pub const DEFAULT_LAYOUT: &str = include_str!("../../data/keyboard_layout.json");

const STANDARD_BASE: [(&str, &str); 26] = [
    ("KeyQ", "B"),
    ("KeyW", "J"),
    ("KeyE", "D"),
    ("KeyR", "G"),
    ("KeyT", "S"),
    ("KeyY", "YO"),
    ("KeyU", "YEO"),
    ("KeyI", "YA"),
    ("KeyO", "AE"),
    ("KeyP", "E"),
    ("KeyA", "M"),
    ("KeyS", "N"),
    ("KeyD", "NG"),
    ("KeyF", "R"),
    ("KeyG", "H"),
    ("KeyH", "O"),
    ("KeyJ", "EO"),
    ("KeyK", "A"),
    ("KeyL", "I"),
    ("KeyZ", "K"),
    ("KeyX", "T"),
    ("KeyC", "CH"),
    ("KeyV", "P"),
    ("KeyB", "YU"),
    ("KeyN", "U"),
    ("KeyM", "EU"),
];

/// A physical key press.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KeyEvent {
    pub code: String,
    pub shift: bool,
}

impl KeyEvent {
    pub fn new(code: &str, shift: bool) -> Self {
        KeyEvent {
            code: code.to_string(),
            shift,
        }
    }
}

/// What a key does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KeyAction {
    Letter(Letter),
    Tone(u8),
    Rhotic,
    Space,
    Backspace,
}

impl KeyAction {
    /// `emit` field syntax: a token name, `tone1`..`tone5`, `rhotic`, `space`
    /// or `backspace`.
    pub fn parse(emit: &str) -> Result<KeyAction, KeyboardError> {
        Ok(match emit {
            "rhotic" => KeyAction::Rhotic,
            "space" => KeyAction::Space,
            "backspace" => KeyAction::Backspace,
            _ => match emit.strip_prefix("tone").and_then(|d| d.parse::<u8>().ok()) {
                Some(t @ 1..=5) => KeyAction::Tone(t),
                _ => KeyAction::Letter(
                    JamoToken::parse(emit)
                        .map_err(|e| KeyboardError::Schema(format!("emit `{emit}`: {e}")))?
                        .letter(),
                ),
            },
        })
    }

    pub fn emit_name(&self) -> String {
        match self {
            KeyAction::Letter(l) => l.to_string(),
            KeyAction::Tone(t) => format!("tone{t}"),
            KeyAction::Rhotic => "rhotic".into(),
            KeyAction::Space => "space".into(),
            KeyAction::Backspace => "backspace".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyBinding {
    pub code: String,
    pub shift: bool,
    pub emit: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LayoutFile {
    id: String,
    version: u32,
    keys: Vec<KeyBinding>,
}

/// A validated layout: injective, standard on the base layer, and able to type
/// every letter the shipped profiles produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyboardLayout {
    pub id: String,
    pub version: u32,
    bindings: Vec<(KeyEvent, KeyAction)>,
    by_key: HashMap<KeyEvent, KeyAction>,
    by_action: HashMap<KeyAction, KeyEvent>,
}

/// Union of the output alphabets of all built-in profiles.
pub fn required_letters() -> BTreeSet<Letter> {
    static CACHE: OnceLock<BTreeSet<Letter>> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            PROFILE_IDS
                .iter()
                .flat_map(|id| builtin_profile(id).expect("built-in profile").output_letters())
                .collect()
        })
        .clone()
}

pub fn load_layout(json: &[u8]) -> Result<KeyboardLayout, KeyboardError> {
    let file: LayoutFile = serde_json::from_slice(json).map_err(|e| KeyboardError::Schema(e.to_string()))?;
    let mut layout = KeyboardLayout {
        id: file.id,
        version: file.version,
        bindings: Vec::new(),
        by_key: HashMap::new(),
        by_action: HashMap::new(),
    };
    for k in &file.keys {
        let event = KeyEvent::new(&k.code, k.shift);
        let action = KeyAction::parse(&k.emit)?;
        if layout.by_key.insert(event.clone(), action).is_some() {
            return Err(KeyboardError::DuplicateKey {
                code: k.code.clone(),
                shift: k.shift,
            });
        }
        if layout.by_action.insert(action, event.clone()).is_some() {
            return Err(KeyboardError::DuplicateEmit(k.emit.clone()));
        }
        layout.bindings.push((event, action));
    }
    for (code, expected) in STANDARD_BASE {
        let want = KeyAction::parse(expected).expect("standard table");
        if layout.by_key.get(&KeyEvent::new(code, false)) != Some(&want) {
            return Err(KeyboardError::NotStandard {
                code: code.to_string(),
                expected,
            });
        }
    }
    if let Some(missing) = required_letters()
        .into_iter()
        .find(|l| layout.letter_keys(*l).is_none())
    {
        return Err(KeyboardError::Unreachable(missing.to_string()));
    }
    Ok(layout)
}

impl KeyboardLayout {
    pub fn default_layout() -> KeyboardLayout {
        load_layout(DEFAULT_LAYOUT.as_bytes()).expect("shipped layout is valid")
    }

    pub fn action(&self, event: &KeyEvent) -> Option<KeyAction> {
        self.by_key.get(event).copied()
    }

    pub fn key_for(&self, action: KeyAction) -> Option<&KeyEvent> {
        self.by_action.get(&action)
    }

    /// Bindings in file order.
    pub fn bindings(&self) -> &[(KeyEvent, KeyAction)] {
        &self.bindings
    }

    /// Keys typing one letter: a direct binding, a compound vowel from its two
    /// parts, or a vowel followed by the rhotic toggle.
    pub fn letter_keys(&self, letter: Letter) -> Option<Vec<KeyEvent>> {
        if let Some(k) = self.key_for(KeyAction::Letter(letter)) {
            return Some(vec![k.clone()]);
        }
        match (letter.base, letter.modifier) {
            (Base::Vowel(v), Modifier::Rhotic) => {
                let mut keys = self.letter_keys(plain_vowel(v))?;
                keys.push(self.key_for(KeyAction::Rhotic)?.clone());
                Some(keys)
            }
            (Base::Vowel(v), Modifier::Plain) => {
                let (a, b) = v.compound_parts()?;
                let mut keys = self.letter_keys(plain_vowel(a))?;
                keys.extend(self.letter_keys(plain_vowel(b))?);
                Some(keys)
            }
            _ => None,
        }
    }
}

fn plain_vowel(v: Vowel) -> Letter {
    JamoToken::vowel(v).letter()
}

/// Key events that retype `transcript`: per block the onset, the nucleus, the
/// coda and the tone, with Space between words.
pub fn blocks_to_keystrokes(transcript: &Transcript, layout: &KeyboardLayout) -> Result<Vec<KeyEvent>, KeyboardError> {
    let letter = |t: JamoToken| {
        layout
            .letter_keys(t.letter())
            .ok_or_else(|| KeyboardError::UntypableToken(t.to_string()))
    };
    let action = |a: KeyAction| {
        layout
            .key_for(a)
            .cloned()
            .ok_or_else(|| KeyboardError::UntypableToken(a.emit_name()))
    };
    let mut out = Vec::new();
    for (i, word) in transcript.words().iter().enumerate() {
        if i > 0 {
            out.push(action(KeyAction::Space)?);
        }
        for block in word {
            for t in block.tokens() {
                out.extend(letter(t)?);
            }
            if !block.tone().is_none() {
                out.push(action(KeyAction::Tone(block.tone().value()))?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_layout_loads() {
        let l = KeyboardLayout::default_layout();
        assert_eq!(l.id, "modhangul-2set");
        let b_star = JamoToken::parse("B*").unwrap().letter();
        assert_eq!(l.key_for(KeyAction::Letter(b_star)), Some(&KeyEvent::new("KeyA", true)));
        assert_eq!(
            l.action(&KeyEvent::new("KeyQ", true)),
            Some(KeyAction::parse("BB").unwrap())
        );
    }

    #[test]
    fn rejects_bad_layouts() {
        assert!(matches!(load_layout(b"{}"), Err(KeyboardError::Schema(_))));
        assert!(matches!(load_layout(b""), Err(KeyboardError::Schema(_))));
        let dup_emit = DEFAULT_LAYOUT.replace(r#""emit": "B*""#, r#""emit": "NG*""#);
        assert!(matches!(load_layout(dup_emit.as_bytes()), Err(KeyboardError::DuplicateEmit(e)) if e == "NG*"));
        let dup_key = DEFAULT_LAYOUT.replace(r#""code": "KeyX", "shift": true"#, r#""code": "KeyA", "shift": true"#);
        assert!(matches!(
            load_layout(dup_key.as_bytes()),
            Err(KeyboardError::DuplicateKey { .. })
        ));
        let no_sil = DEFAULT_LAYOUT.replace(r#"{"code": "KeyM", "shift": true, "emit": "_"},"#, "");
        assert!(matches!(load_layout(no_sil.as_bytes()), Err(KeyboardError::Unreachable(s)) if s == "_"));
        let moved = DEFAULT_LAYOUT.replace(r#""code": "KeyK", "shift": false"#, r#""code": "KeyY", "shift": true"#);
        assert!(matches!(
            load_layout(moved.as_bytes()),
            Err(KeyboardError::NotStandard { .. })
        ));
    }
}
