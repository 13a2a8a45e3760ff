//! Text form of delay conditions:
//!
//! ```text
//! dc   := ident | startup | solsc
//!       | pure(R) | window_all(R, R) | window_any(R, R)
//!       | meet(dc, dc) | join(dc, dc) | serial(dc, dc) | select(dc)
//! R    := integer | integer/integer
//! ```

use thiserror::Error;

use super::{Budget, DcError, DelayCondition};
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DcParseError {
    #[error("at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("at offset {offset}: {source}")]
    Invalid { offset: usize, source: DcError },
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, DcParseError> {
        Err(DcParseError::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> Result<(), DcParseError> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn rational(&mut self) -> Result<Rational, DcParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest
            .find(|c: char| !(c.is_ascii_digit() || "+-/.".contains(c)))
            .unwrap_or(rest.len());
        self.pos += len;
        parse_rational(&rest[..len]).map_err(|e| DcParseError::Syntax {
            offset: start,
            message: e.to_string(),
        })
    }

    fn build(&self, start: usize, r: Result<DelayCondition, DcError>) -> Result<DelayCondition, DcParseError> {
        r.map_err(|source| DcParseError::Invalid { offset: start, source })
    }

    fn dc(&mut self) -> Result<DelayCondition, DcParseError> {
        self.skip_ws();
        let start = self.pos;
        let name = self.word();
        match name {
            "ident" => Ok(DelayCondition::ident()),
            "startup" => Ok(DelayCondition::startup_mask()),
            "solsc" => Ok(DelayCondition::sol_sc()),
            "pure" => {
                self.eat('(')?;
                let d = self.rational()?;
                self.eat(')')?;
                self.build(start, DelayCondition::pure(d))
            }
            "window_all" | "window_any" => {
                self.eat('(')?;
                let d = self.rational()?;
                self.eat(',')?;
                let m = self.rational()?;
                self.eat(')')?;
                let r = if name == "window_all" {
                    DelayCondition::window_all(d, m)
                } else {
                    DelayCondition::window_any(d, m)
                };
                self.build(start, r)
            }
            "meet" | "join" | "serial" => {
                self.eat('(')?;
                let a = self.dc()?;
                self.eat(',')?;
                let b = self.dc()?;
                self.eat(')')?;
                Ok(match name {
                    "meet" => a.meet(&b),
                    "join" => a.join(&b),
                    _ => a.serial(&b),
                })
            }
            "select" => {
                self.eat('(')?;
                let a = self.dc()?;
                self.eat(')')?;
                self.build(start, a.select_deterministic(Budget::default()))
            }
            "" => {
                self.pos = start;
                self.err("expected a delay condition")
            }
            other => {
                self.pos = start;
                self.err(format!("unknown delay condition `{other}`"))
            }
        }
    }
}

/// Parses a whole string as one delay condition.
pub fn parse_dc(text: &str) -> Result<DelayCondition, DcParseError> {
    let (dc, used) = parse_dc_prefix(text)?;
    if !text[used..].trim().is_empty() {
        return Err(DcParseError::Syntax {
            offset: used,
            message: "trailing input".into(),
        });
    }
    Ok(dc)
}

/// Parses a delay condition at the start of `text`, returning it with the
/// number of bytes consumed.
pub fn parse_dc_prefix(text: &str) -> Result<(DelayCondition, usize), DcParseError> {
    let mut p = Parser { text, pos: 0 };
    let dc = p.dc()?;
    Ok((dc, p.pos))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_display() {
        for text in [
            "ident",
            "pure(3/2)",
            "startup",
            "solsc",
            "window_all(2,1)",
            "window_any(5/2,0)",
            "meet(pure(2),solsc)",
            "join(pure(1),serial(window_all(1,1),ident))",
            "select(solsc)",
        ] {
            assert_eq!(parse_dc(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn whitespace_is_allowed() {
        let dc = parse_dc(" serial( pure(2) , window_all( 2 , 1 ) ) ").unwrap();
        assert_eq!(dc.to_string(), "serial(pure(2),window_all(2,1))");
    }

    #[test]
    fn prefix_reports_consumed_length() {
        let (dc, used) = parse_dc_prefix("window_all(2, 1) w").unwrap();
        assert_eq!(dc.to_string(), "window_all(2,1)");
        assert_eq!(&"window_all(2, 1) w"[used..], " w");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_dc("pure(1.5)"), Err(DcParseError::Syntax { .. })));
        assert!(matches!(parse_dc("pure(-1)"), Err(DcParseError::Invalid { .. })));
        assert!(matches!(
            parse_dc("window_all(1,2)"),
            Err(DcParseError::Invalid { .. })
        ));
        assert!(parse_dc("bogus").is_err());
        assert!(parse_dc("meet(ident)").is_err());
        assert!(parse_dc("ident ident").is_err());
        assert!(parse_dc("").is_err());
    }
}
