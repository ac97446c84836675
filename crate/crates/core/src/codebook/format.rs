use std::collections::BTreeSet;

use super::{CodeTable, CodebookError};
use crate::bitio::BitString;
use crate::keyfile::{self, Field, FormatError};
use crate::SymbolId;

pub(crate) fn check_version(field: &Field<'_>) -> Result<(), FormatError> {
    match field.value {
        "1" => Ok(()),
        v => Err(FormatError::new(
            field.line,
            format!("unsupported version {v:?}"),
        )),
    }
}

pub(crate) fn write_table(t: &CodeTable, out: &mut String) {
    out.push_str(&format!("width={}\n", t.width()));
    out.push_str(&format!("noise_mask={}\n", t.noise_mask()));
    if t.fingerprint() != 0 {
        out.push_str(&format!("fingerprint=0x{:016x}\n", t.fingerprint()));
    }
    for (sym, code) in t.entries() {
        out.push_str(&format!("sym=0x{sym:02x} code={code}\n"));
    }
}

fn bits(line: usize, name: &str, text: &str) -> Result<BitString, FormatError> {
    text.parse()
        .map_err(|e| FormatError::new(line, format!("{name}: {e}")))
}

/// Collects the codebook fields of a `WTKB1` document.
#[derive(Debug, Default)]
pub struct TableReader {
    width: Option<(usize, usize)>,
    noise_mask: Option<(usize, BitString)>,
    fingerprint: Option<u64>,
    entries: Vec<(usize, SymbolId, BitString)>,
}

impl TableReader {
    /// Consumes a codebook field; returns false for fields it does not own.
    pub fn accept(&mut self, field: &Field<'_>) -> Result<bool, FormatError> {
        let line = field.line;
        let once = |seen: bool| {
            if seen {
                Err(FormatError::new(
                    line,
                    format!("duplicate {} field", field.key),
                ))
            } else {
                Ok(())
            }
        };
        match field.key {
            "width" => {
                once(self.width.is_some())?;
                self.width = Some((line, keyfile::parse_u64(field)? as usize));
            }
            "noise_mask" => {
                once(self.noise_mask.is_some())?;
                self.noise_mask = Some((line, bits(line, "noise_mask", field.value)?));
            }
            "fingerprint" => {
                once(self.fingerprint.is_some())?;
                self.fingerprint = Some(keyfile::parse_u64(field)?);
            }
            "sym" => {
                let (sym_text, rest) = field
                    .value
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| FormatError::new(line, "expected `sym=0x<hex> code=<bits>`"))?;
                let sym = sym_text
                    .strip_prefix("0x")
                    .and_then(|h| SymbolId::from_str_radix(h, 16).ok())
                    .ok_or_else(|| FormatError::new(line, format!("bad symbol {sym_text:?}")))?;
                let code = rest.trim().strip_prefix("code=").ok_or_else(|| {
                    FormatError::new(line, "expected `code=<bits>` after the symbol")
                })?;
                self.entries.push((line, sym, bits(line, "code", code)?));
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    /// True until a codebook field has been consumed.
    pub fn is_empty(&self) -> bool {
        self.width.is_none()
            && self.noise_mask.is_none()
            && self.fingerprint.is_none()
            && self.entries.is_empty()
    }

    /// Validates the collected fields. `end_line` is reported for missing fields.
    pub fn finish(self, end_line: usize) -> Result<CodeTable, CodebookError> {
        let (width_line, width) = self
            .width
            .ok_or_else(|| FormatError::new(end_line, "missing width"))?;
        if !(1..=super::MAX_WIDTH).contains(&width) {
            return Err(FormatError::new(width_line, format!("width {width} out of range")).into());
        }
        let mask = match self.noise_mask {
            Some((line, m)) if m.len() != width => {
                return Err(FormatError::new(
                    line,
                    format!("noise_mask has {} bits, width is {width}", m.len()),
                )
                .into())
            }
            Some((_, m)) => m.to_u64().expect("width ≤ 32") as u32,
            None => 0,
        };
        let mut seen = BTreeSet::new();
        let mut pairs = Vec::with_capacity(self.entries.len());
        for (line, sym, code) in &self.entries {
            if code.len() != width {
                return Err(FormatError::new(
                    *line,
                    format!("codeword has {} bits, width is {width}", code.len()),
                )
                .into());
            }
            if !seen.insert(*sym) {
                return Err(FormatError::new(*line, format!("duplicate symbol {sym:#x}")).into());
            }
            pairs.push((*sym, code.to_u64().expect("width ≤ 32") as u32));
        }
        CodeTable::from_entries(width, mask, pairs, self.fingerprint.unwrap_or(0)).map_err(|e| {
            match e {
                CodebookError::Collision(a, b) => {
                    let line = self
                        .entries
                        .iter()
                        .find(|(_, s, _)| *s == b)
                        .map_or(end_line, |e| e.0);
                    FormatError::new(
                        line,
                        format!("symbols {a:#x} and {b:#x} share a masked codeword"),
                    )
                    .into()
                }
                other => other,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let t = CodeTable::generate(16, 300, 9, 4).unwrap();
        let text = t.to_text();
        assert!(text.starts_with("WTKB1\nversion=1\nwidth=16\n"));
        assert_eq!(CodeTable::from_text(&text).unwrap(), t);
        let z = CodeTable::zeckendorf(12, 4, &[0, 65]).unwrap();
        assert_eq!(
            z.to_text(),
            "WTKB1\nversion=1\nwidth=16\nnoise_mask=1111000000000000\n\
             sym=0x00 code=0000000000000000\nsym=0x41 code=0000000100010010\n"
        );
        assert_eq!(CodeTable::from_text(&z.to_text()).unwrap(), z);
    }

    fn err_line(text: &str) -> usize {
        match CodeTable::from_text(text) {
            Err(CodebookError::Format(e)) => e.line,
            other => panic!("expected a format error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_documents() {
        let head = "WTKB1\nversion=1\nwidth=4\nnoise_mask=1000\n";
        assert_eq!(
            err_line(&format!("{head}sym=0x01 code=0001\nsym=0x01 code=0010\n")),
            6
        );
        // 0001 and 1001 agree once the first bit is masked
        assert_eq!(
            err_line(&format!("{head}sym=0x01 code=0001\nsym=0x02 code=1001\n")),
            6
        );
        assert_eq!(err_line(&format!("{head}colour=blue\n")), 5);
        assert_eq!(err_line(&format!("{head}sym=0x01 code=01\n")), 5);
        assert_eq!(err_line("WTKB1\nversion=2\n"), 2);
        assert_eq!(err_line("WTKB1\nversion=1\nnoise_mask=0\n"), 3);
        assert_eq!(err_line("WTKB1\nwidth=4\nwidth=4\n"), 3);
        assert_eq!(err_line("WTKB2\n"), 1);
    }
}
