use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bit::Bit;
use crate::rational::parse_rational;
use crate::signal::{Signal, SignalError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WaveError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: signal `{name}`: {source}")]
    NonCanonicalSignal {
        line: usize,
        column: usize,
        name: String,
        source: SignalError,
    },
    #[error("line {line}: signal `{name}` is defined twice")]
    DuplicateSignal { line: usize, name: String },
}

/// Named signals in file order. One line per signal:
///
/// ```text
/// # comment
/// signal u 0 @ 2 5
/// signal x 1 @ 3/2 7/2
/// signal c 1
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WaveFile {
    signals: Vec<(String, Signal)>,
}

impl WaveFile {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a signal; returns `false` and leaves the file unchanged when
    /// the name is taken.
    pub fn push(&mut self, name: impl Into<String>, signal: Signal) -> bool {
        let name = name.into();
        if self.get(&name).is_some() {
            return false;
        }
        self.signals.push((name, signal));
        true
    }

    pub fn get(&self, name: &str) -> Option<&Signal> {
        self.signals.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Signal)> {
        self.signals.iter().map(|(n, s)| (n.as_str(), s))
    }

    pub fn len(&self) -> usize {
        self.signals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signals.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self, WaveError> {
        let mut file = WaveFile::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens = tokens(content);
            let Some(&(col, keyword)) = tokens.first() else {
                continue;
            };
            let syntax = |column: usize, message: String| WaveError::Syntax { line, column, message };
            if keyword != "signal" {
                return Err(syntax(col, format!("unknown directive `{keyword}`")));
            }
            let end = content.trim_end().chars().count() + 1;
            let &(_, name) = tokens.get(1).ok_or_else(|| syntax(end, "expected a signal name".into()))?;
            let &(bit_col, bit) = tokens.get(2).ok_or_else(|| syntax(end, "expected an initial value".into()))?;
            let initial = match bit {
                "0" => Bit::ZERO,
                "1" => Bit::ONE,
                _ => return Err(syntax(bit_col, format!("initial value must be 0 or 1, got `{bit}`"))),
            };
            let mut edges = Vec::new();
            let mut first_edge_col = end;
            match tokens.get(3) {
                None => {}
                Some(&(_, "@")) => {
                    if tokens.len() == 4 {
                        return Err(syntax(end, "expected edge times after `@`".into()));
                    }
                    first_edge_col = tokens[4].0;
                    for &(c, t) in &tokens[4..] {
                        edges.push(parse_rational(t).map_err(|e| syntax(c, format!("`{t}`: {e}")))?);
                    }
                }
                Some(&(c, other)) => return Err(syntax(c, format!("expected `@`, got `{other}`"))),
            }
            let signal = Signal::new(initial, edges).map_err(|source| WaveError::NonCanonicalSignal {
                line,
                column: first_edge_col,
                name: name.to_string(),
                source,
            })?;
            if !file.push(name, signal) {
                return Err(WaveError::DuplicateSignal {
                    line,
                    name: name.to_string(),
                });
            }
        }
        Ok(file)
    }
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, c)) in s.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, byte)),
            (true, Some((col0, b0))) => {
                out.push((col0, &s[b0..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((col0, b0)) = start {
        out.push((col0, &s[b0..]));
    }
    out
}

impl FromStr for WaveFile {
    type Err = WaveError;

    fn from_str(s: &str) -> Result<Self, WaveError> {
        WaveFile::parse(s)
    }
}

impl fmt::Display for WaveFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, s) in &self.signals {
            write!(f, "signal {name} {}", s.initial())?;
            if !s.is_constant() {
                f.write_str(" @")?;
                for e in s.edges() {
                    write!(f, " {e}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl<S: Into<String>> FromIterator<(S, Signal)> for WaveFile {
    /// Later duplicates are dropped.
    fn from_iter<I: IntoIterator<Item = (S, Signal)>>(iter: I) -> Self {
        let mut file = WaveFile::new();
        for (name, s) in iter {
            file.push(name, s);
        }
        file
    }
}
