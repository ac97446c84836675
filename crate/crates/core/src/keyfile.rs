//! Line-oriented `key=value` text shared by codebook files and key bundles.

use std::fmt;

use thiserror::Error;

pub const HEADER: &str = "WTKB1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl FormatError {
    pub fn new(line: usize, message: impl fmt::Display) -> Self {
        Self {
            line,
            message: message.to_string(),
        }
    }
}

/// One `key=value` line with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field<'a> {
    pub line: usize,
    pub key: &'a str,
    pub value: &'a str,
}

/// Checks the header and splits the remaining non-blank lines at the first `=`.
/// Lines starting with `#` are comments.
pub fn fields(text: &str) -> Result<Vec<Field<'_>>, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
    match lines.next() {
        Some((_, h)) if h.trim() == HEADER => {}
        _ => return Err(FormatError::new(1, format!("missing {HEADER} header"))),
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(line, l)| {
            let (key, value) = l
                .split_once('=')
                .ok_or_else(|| FormatError::new(line, format!("expected key=value, got {l:?}")))?;
            Ok(Field {
                line,
                key: key.trim(),
                value: value.trim(),
            })
        })
        .collect()
}

pub fn parse_u64(field: &Field<'_>) -> Result<u64, FormatError> {
    let v = field.value;
    let parsed = match v.strip_prefix("0x") {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => v.parse(),
    };
    parsed
        .map_err(|_| FormatError::new(field.line, format!("{}: not an integer: {v:?}", field.key)))
}

pub fn parse_flag(field: &Field<'_>) -> Result<bool, FormatError> {
    match field.value {
        "1" | "true" => Ok(true),
        "0" | "false" => Ok(false),
        v => Err(FormatError::new(
            field.line,
            format!("{}: expected 0 or 1, got {v:?}", field.key),
        )),
    }
}
