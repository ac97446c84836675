//! Input and output plumbing: data on stdout or `-o`, diagnostics on stderr.

use std::fs;
use std::io::{self, IsTerminal, Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use crate::UsageError;

pub fn read_input(path: Option<&Path>) -> Result<Vec<u8>> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut buf = Vec::new();
            io::stdin()
                .read_to_end(&mut buf)
                .context("reading standard input")?;
            Ok(buf)
        }
    }
}

pub fn read_text(path: Option<&Path>) -> Result<String> {
    let bytes = read_input(path)?;
    let name = path.map_or("standard input".into(), |p| p.display().to_string());
    String::from_utf8(bytes).with_context(|| format!("{name} is not valid UTF-8"))
}

/// Where output goes.
#[derive(Debug, Clone, Default)]
pub struct Sink {
    pub path: Option<PathBuf>,
    pub binary_stdout: bool,
}

impl Sink {
    pub fn new(path: Option<PathBuf>, binary_stdout: bool) -> Self {
        Self {
            path,
            binary_stdout,
        }
    }

    pub fn write_text(&self, text: &str) -> Result<()> {
        self.write(text.as_bytes())
    }

    /// Binary data is refused on stdout unless explicitly allowed.
    pub fn write_binary(&self, data: &[u8]) -> Result<()> {
        if self.path.is_none() && !self.binary_stdout {
            return Err(UsageError("binary output needs -o FILE or --binary-stdout".into()).into());
        }
        self.write(data)
    }

    fn write(&self, data: &[u8]) -> Result<()> {
        match &self.path {
            Some(p) if p != Path::new("-") => {
                fs::write(p, data).with_context(|| format!("writing {}", p.display()))
            }
            _ => {
                let mut out = io::stdout().lock();
                out.write_all(data)?;
                if io::stdout().is_terminal() && !data.ends_with(b"\n") && !data.is_empty() {
                    out.write_all(b"\n")?;
                }
                out.flush()?;
                Ok(())
            }
        }
    }
}
