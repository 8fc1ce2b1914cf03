//! Example corpus: one example per line,
//! `profile<TAB>input<TAB>expected tokens<TAB>exact|property`.
//!
//! `exact` rows must reproduce the expected token string. `property` rows only
//! have to transliterate and survive the token and composition round trips;
//! their third column is a note. The profile column may carry option
//! overrides: `es[spanish_variant=latam]`.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::jamo::{compose, decompose, parse_tokens, serialize_tokens, Transcript};
use crate::rules::{builtin_profile, Profile};

/// The corpus shipped with the crate.
pub const SHIPPED_CORPUS: &str = include_str!("../data/corpus.tsv");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("corpus line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusMode {
    Exact,
    Property,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub line: usize,
    pub profile: String,
    pub options: Vec<(String, String)>,
    pub input: String,
    pub expected: String,
    pub mode: CorpusMode,
}

impl CorpusEntry {
    /// Profile column as written.
    pub fn profile_spec(&self) -> String {
        let mut s = self.profile.clone();
        for (k, v) in &self.options {
            write!(s, "[{k}={v}]").unwrap();
        }
        s
    }
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let err = |message: &str| CorpusError::Parse {
            line,
            message: message.to_string(),
        };
        let cols: Vec<&str> = raw.split('\t').collect();
        let [spec, input, expected, mode] = cols[..] else {
            return Err(err("expected 4 tab-separated columns"));
        };
        let mode = match mode.trim() {
            "exact" => CorpusMode::Exact,
            "property" => CorpusMode::Property,
            _ => return Err(err("mode must be `exact` or `property`")),
        };
        let (profile, options) = parse_profile_spec(spec).ok_or_else(|| err("bad profile column"))?;
        out.push(CorpusEntry {
            line,
            profile,
            options,
            input: input.to_string(),
            expected: expected.to_string(),
            mode,
        });
    }
    Ok(out)
}

fn parse_profile_spec(spec: &str) -> Option<(String, Vec<(String, String)>)> {
    let (id, mut rest) = spec.split_once('[').map_or((spec, ""), |(id, r)| (id, r));
    let mut options = Vec::new();
    if !rest.is_empty() {
        rest = rest.strip_suffix(']')?;
        for opt in rest.split("][") {
            let (k, v) = opt.split_once('=')?;
            options.push((k.to_string(), v.to_string()));
        }
    }
    (!id.is_empty()).then(|| (id.to_string(), options))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusOutcome {
    pub entry: CorpusEntry,
    pub status: Status,
    /// Token string, or the error message.
    pub output: String,
}

/// Runs every entry against the built-in profiles.
pub fn run_corpus(entries: &[CorpusEntry]) -> Vec<CorpusOutcome> {
    let mut profiles: HashMap<String, Result<Profile, String>> = HashMap::new();
    entries
        .iter()
        .map(|entry| {
            let key = entry.profile_spec();
            let profile = profiles.entry(key).or_insert_with(|| load_profile(entry)).clone();
            let (status, output) = match profile.and_then(|p| p.transcribe(&entry.input).map_err(|e| e.to_string())) {
                Err(e) => (Status::Error, e),
                Ok(t) => check(entry, &t),
            };
            CorpusOutcome {
                entry: entry.clone(),
                status,
                output,
            }
        })
        .collect()
}

fn load_profile(entry: &CorpusEntry) -> Result<Profile, String> {
    let mut p = builtin_profile(&entry.profile).map_err(|e| e.to_string())?;
    for (k, v) in &entry.options {
        p.set_option(k, v).map_err(|e| e.to_string())?;
    }
    Ok(p)
}

fn check(entry: &CorpusEntry, t: &Transcript) -> (Status, String) {
    let tokens = serialize_tokens(t);
    let round_trips = parse_tokens(&tokens).as_ref() == Ok(t) && compose(&decompose(t)).as_ref() == Ok(t);
    let pass = round_trips && (entry.mode == CorpusMode::Property || tokens == entry.expected);
    (if pass { Status::Pass } else { Status::Fail }, tokens)
}

/// One line per entry plus a summary line; byte-identical across runs.
pub fn format_report(outcomes: &[CorpusOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let status = match o.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let mode = match o.entry.mode {
            CorpusMode::Exact => "exact",
            CorpusMode::Property => "property",
        };
        writeln!(
            out,
            "{status}\t{}\t{}\t{mode}\t{}\t{}",
            o.entry.line,
            o.entry.profile_spec(),
            o.entry.input,
            o.output
        )
        .unwrap();
    }
    let passed = outcomes.iter().filter(|o| o.status == Status::Pass).count();
    writeln!(out, "{passed}/{} passed", outcomes.len()).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rows() {
        let text = "# comment\nit\tcasa\tGG+A . J+A\texact\n\nes[spanish_variant=latam]\tcero\tS+E . R+O\texact\n";
        let rows = parse_corpus(text).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].line, 2);
        assert_eq!(rows[1].options, vec![("spanish_variant".into(), "latam".into())]);
        assert_eq!(rows[1].profile_spec(), "es[spanish_variant=latam]");
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(parse_corpus("it\tcasa\n").is_err());
        assert!(parse_corpus("it\tcasa\tx\tmaybe\n").is_err());
        assert!(parse_corpus("it[x\tcasa\tx\texact\n").is_err());
    }

    #[test]
    fn runs_and_reports() {
        let rows =
            parse_corpus("it\tcasa\tGG+A . J+A\texact\nit\tcasa\tGG+A . SS+A\texact\nxx\ta\t\tproperty\n").unwrap();
        let out = run_corpus(&rows);
        let status: Vec<_> = out.iter().map(|o| o.status).collect();
        assert_eq!(status, [Status::Pass, Status::Fail, Status::Error]);
        assert!(format_report(&out).ends_with("1/3 passed\n"));
    }
}
