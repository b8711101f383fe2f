//! The two plain-text input formats.
//!
//! `sgp`: first line `n`, then `n` rows of `n` 0-based indices.
//! `tgen`: first line the degree, then one generator per line given as the
//! images of `0..degree`.
//!
//! Blank lines and anything after `#` are ignored.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use pointlike::FiniteSemigroup;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Sgp,
    Tgen,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "sgp" => Ok(Format::Sgp),
            "tgen" => Ok(Format::Tgen),
            other => Err(format!("unknown format `{other}` (expected sgp or tgen)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Sgp => "sgp",
            Format::Tgen => "tgen",
        })
    }
}

impl Format {
    /// Guessed from the file extension; `sgp` otherwise.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("tgen") => Format::Tgen,
            _ => Format::Sgp,
        }
    }
}

/// 1-based position of the offending token.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Semigroup(#[from] pointlike::Error),
}

struct Token {
    line: usize,
    column: usize,
    value: usize,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Non-empty lines as `(line number, tokens)`.
fn tokenize(text: &str) -> Result<Vec<(usize, Vec<Token>)>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    let word = &content[s..pos];
                    let column = content[..s].chars().count() + 1;
                    let value = word
                        .parse()
                        .map_err(|_| perr(line, column, format!("expected a non-negative integer, found `{word}`")))?;
                    tokens.push(Token { line, column, value });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push((line, tokens));
        }
    }
    Ok(out)
}

fn header(lines: &[(usize, Vec<Token>)], what: &str) -> Result<usize, ParseError> {
    let (line, tokens) = lines.first().ok_or_else(|| perr(1, 1, "empty input"))?;
    if tokens.len() != 1 {
        return Err(perr(*line, tokens[1].column, format!("the first line must hold only the {what}")));
    }
    if tokens[0].value == 0 {
        return Err(perr(*line, tokens[0].column, format!("the {what} must be positive")));
    }
    Ok(tokens[0].value)
}

/// Reads rows of exactly `width` entries, each `< bound`.
fn rows(lines: &[(usize, Vec<Token>)], width: usize, bound: usize) -> Result<Vec<Vec<usize>>, ParseError> {
    lines
        .iter()
        .map(|(line, tokens)| {
            if tokens.len() != width {
                let column = tokens.get(width).map_or_else(
                    || tokens.last().map_or(1, |t| t.column),
                    |t| t.column,
                );
                return Err(perr(*line, column, format!("expected {width} entries, found {}", tokens.len())));
            }
            tokens
                .iter()
                .map(|t| {
                    if t.value < bound {
                        Ok(t.value)
                    } else {
                        Err(perr(t.line, t.column, format!("entry {} is out of range 0..{bound}", t.value)))
                    }
                })
                .collect()
        })
        .collect()
}

pub fn parse_str(text: &str, format: Format, closure_cap: usize) -> Result<FiniteSemigroup, InputError> {
    let lines = tokenize(text)?;
    match format {
        Format::Sgp => {
            let n = header(&lines, "table size")?;
            let body = &lines[1..];
            if body.len() != n {
                let (line, col) = body.get(n).map_or((lines.last().map_or(1, |l| l.0 + 1), 1), |l| (l.0, 1));
                return Err(perr(line, col, format!("expected {n} rows, found {}", body.len())).into());
            }
            let table = rows(body, n, n)?;
            Ok(FiniteSemigroup::from_table(n, &table)?)
        }
        Format::Tgen => {
            let degree = header(&lines, "degree")?;
            let body = &lines[1..];
            if body.is_empty() {
                return Err(perr(lines[0].0 + 1, 1, "at least one generator is required").into());
            }
            let gens = rows(body, degree, degree)?;
            Ok(FiniteSemigroup::from_transformations(degree, &gens, closure_cap)?.0)
        }
    }
}

pub fn parse_input(path: &Path, format: Option<Format>, closure_cap: usize) -> Result<FiniteSemigroup, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_str(&text, format.unwrap_or_else(|| Format::from_path(path)), closure_cap)
}
