//! Two-set (Dubeolsik) layout with the modified letters on the Shift layer,
//! and the typing automaton that turns key events into syllable blocks.
//!
//! Shift layer of the shipped layout, beyond the standard fortis keys and ㅒㅖ:
//!
//! | key | letter |
//! |---|---|
//! | Shift+F, D, G, Z, C, V | R\*, NG\*, H\*, K\*, CH\*, P\* (own base key) |
//! | Shift+A, S, X, B | B\*, J\*, D\*, S\* (base key carries a fortis) |
//! | Shift+M | silent vowel |
//! | Shift+H | rhotic toggle |
//! | Digit1-5 | tones |

mod automaton;
mod layout;
mod session;

use thiserror::Error;

pub use automaton::{keystrokes_to_blocks, CompositionState, PendingBlock};
pub use layout::{
    blocks_to_keystrokes, load_layout, required_letters, KeyAction, KeyBinding, KeyEvent, KeyboardLayout,
    DEFAULT_LAYOUT,
};
pub use session::{parse_session_log, write_session_log, SessionEntry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KeyboardError {
    #[error("layout schema: {0}")]
    Schema(String),
    #[error("key {code} (shift={shift}) bound twice")]
    DuplicateKey { code: String, shift: bool },
    #[error("`{0}` is bound to more than one key")]
    DuplicateEmit(String),
    #[error("unshifted {code} must emit {expected} as on the standard two-set layout")]
    NotStandard { code: String, expected: &'static str },
    #[error("letter {0} emitted by a shipped profile cannot be typed")]
    Unreachable(String),
    #[error("no key for {code} (shift={shift})")]
    UnknownKey { code: String, shift: bool },
    #[error("{0} cannot be typed on this layout")]
    UntypableToken(String),
    #[error("session log line {line}: {message}")]
    Log { line: usize, message: String },
}
