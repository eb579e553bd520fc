//! Line-oriented problem files:
//!
//! ```text
//! # Example 1.2 with n = 3
//! ring: x, y, z
//! ideal: (x-z)^2, 3*x - y - 2*z
//! option seed = 7
//! ```
//!
//! Several `ideal:` lines accumulate; an absent or empty ideal is the zero ideal.

use std::collections::BTreeMap;

use binfind::groebner::IdealHandle;
use binfind::poly::{parse_poly, LaurentPoly, Ring};
use binfind::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub msg: String,
}

fn err(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, column, msg: msg.into() }
}

#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub ring: Ring,
    /// Generator texts as written.
    pub sources: Vec<String>,
    pub generators: Vec<LaurentPoly>,
    pub options: BTreeMap<String, String>,
}

impl ProblemFile {
    pub fn ideal(&self) -> IdealHandle {
        IdealHandle::new(self.ring.nvars(), self.generators.clone())
    }
}

/// Splits at commas outside parentheses, keeping the byte offset of each piece.
fn split_top_level(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

fn trimmed(offset: usize, piece: &str) -> (usize, &str) {
    let lead = piece.len() - piece.trim_start().len();
    (offset + lead, piece.trim())
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut ring: Option<Ring> = None;
    // generator texts with their (line, column) for error reporting
    let mut pending: Vec<(usize, usize, String)> = Vec::new();
    let mut options = BTreeMap::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let body = content.trim_start();
        if let Some(rest) = body.strip_prefix("ring:") {
            if ring.is_some() {
                return Err(err(line, indent + 1, "ring declared twice"));
            }
            let base = indent + "ring:".len();
            let mut names = Vec::new();
            for (off, piece) in split_top_level(rest) {
                let (col, name) = trimmed(base + off, piece);
                if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(err(line, col + 1, format!("invalid variable name `{name}`")));
                }
                names.push(name.to_string());
            }
            ring = Some(Ring::polynomial(&names).map_err(|e| err(line, base + 1, e.to_string()))?);
        } else if let Some(rest) = body.strip_prefix("ideal:") {
            let base = indent + "ideal:".len();
            if rest.trim().is_empty() {
                continue;
            }
            for (off, piece) in split_top_level(rest) {
                let (col, g) = trimmed(base + off, piece);
                if g.is_empty() {
                    return Err(err(line, col + 1, "empty generator"));
                }
                pending.push((line, col, g.to_string()));
            }
        } else if let Some(rest) = body.strip_prefix("option") {
            let base = indent + "option".len();
            let Some((key, value)) = rest.split_once('=') else {
                return Err(err(line, base + 1, "expected `option key = value`"));
            };
            let (kcol, key) = trimmed(base, key);
            if key.is_empty() {
                return Err(err(line, kcol + 1, "missing option name"));
            }
            options.insert(key.to_string(), value.trim().to_string());
        } else {
            return Err(err(line, indent + 1, "expected `ring:`, `ideal:` or `option`"));
        }
    }
    let ring = ring.ok_or_else(|| err(1, 1, "missing `ring:` line"))?;
    let mut generators = Vec::with_capacity(pending.len());
    let mut sources = Vec::with_capacity(pending.len());
    for (line, col, g) in pending {
        let p = parse_poly(&g, &ring).map_err(|e| match e {
            CoreError::Syntax { pos, msg } => err(line, col + pos + 1, msg),
            CoreError::NegativeExponent(pos) => err(line, col + pos + 1, e.to_string()),
            other => err(line, col + 1, other.to_string()),
        })?;
        generators.push(p);
        sources.push(g);
    }
    Ok(ProblemFile { ring, sources, generators, options })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_file() {
        let p = parse_problem("# comment\nring: x, y, z\nideal: (x-z)^2, 3*x - y - 2*z  # trailing\noption seed = 7\n").unwrap();
        assert_eq!(p.ring.names(), ["x", "y", "z"]);
        assert_eq!(p.sources, ["(x-z)^2", "3*x - y - 2*z"]);
        assert_eq!(p.options["seed"], "7");
        assert_eq!(p.ideal().generators().len(), 2);
    }

    #[test]
    fn ideal_lines_accumulate_and_may_be_empty() {
        let p = parse_problem("ring: x\nideal: x - 1\nideal: x^2 + 1\n").unwrap();
        assert_eq!(p.generators.len(), 2);
        let zero = parse_problem("ring: x, y\nideal:\n").unwrap();
        assert!(zero.ideal().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_problem("ring: x, y\nideal: x + z\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 8));
        let e = parse_problem("ring: x\nideal: x, x +* 2\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.column >= 11, "{e}");
        let e = parse_problem("ring: x\n  bogus\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(parse_problem("ideal: x\n").is_err());
        assert!(parse_problem("ring: x, x\n").is_err());
        assert!(parse_problem("ring: x\noption seed\n").is_err());
    }
}
