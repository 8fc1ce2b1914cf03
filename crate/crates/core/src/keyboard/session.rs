//! Session logs: JSON lines of `{"t": ms, "code": ..., "shift": ...}`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{KeyEvent, KeyboardError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionEntry {
    pub t: u64,
    pub code: String,
    pub shift: bool,
}

impl SessionEntry {
    pub fn event(&self) -> KeyEvent {
        KeyEvent::new(&self.code, self.shift)
    }
}

/// Blank lines are skipped.
pub fn parse_session_log(text: &str) -> Result<Vec<SessionEntry>, KeyboardError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| KeyboardError::Log {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

/// One line per event, timestamps `0, step, 2*step, ...`.
pub fn write_session_log(events: &[KeyEvent], step_ms: u64) -> String {
    let mut out = String::new();
    for (i, e) in events.iter().enumerate() {
        let entry = SessionEntry {
            t: i as u64 * step_ms,
            code: e.code.clone(),
            shift: e.shift,
        };
        writeln!(out, "{}", serde_json::to_string(&entry).expect("entry serializes")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let events = vec![KeyEvent::new("KeyS", false), KeyEvent::new("KeyA", true)];
        let log = write_session_log(&events, 120);
        assert_eq!(log.lines().next(), Some(r#"{"t":0,"code":"KeyS","shift":false}"#));
        let back: Vec<_> = parse_session_log(&log)
            .unwrap()
            .iter()
            .map(SessionEntry::event)
            .collect();
        assert_eq!(back, events);
    }

    #[test]
    fn bad_line() {
        let err = parse_session_log("{\"t\":0,\"code\":\"KeyS\",\"shift\":false}\n\nnope\n").unwrap_err();
        assert!(matches!(err, KeyboardError::Log { line: 3, .. }));
    }
}
