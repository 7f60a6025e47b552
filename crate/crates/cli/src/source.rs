//! Lattice sources: JSON files and inline generator specs.
//!
//! Generator grammar:
//!
//! ```text
//! spec    := "gen:" body | body
//! body    := "boolean:" k | "mo:" k | "product:" operand "," operand
//!          | "hsum:" operand "," operand
//! operand := spec | "(" spec ")"
//! ```

use std::fs;

use omltopo::lattice::{self, FiniteOml, RawLatticeSpec};

use crate::error::CliError;

/// Where a lattice comes from, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Boolean(usize),
    Mo(usize),
    Product(Box<Source>, Box<Source>),
    HorizontalSum(Box<Source>, Box<Source>),
    File(String),
}

impl Source {
    pub fn parse(input: &str) -> Result<Self, CliError> {
        match input.strip_prefix("gen:") {
            Some(body) => parse_generator(body),
            None => Ok(Source::File(input.to_owned())),
        }
    }
}

fn bad(spec: &str, why: &str) -> CliError {
    CliError::Parse(format!("generator spec `{spec}`: {why}"))
}

fn parse_generator(body: &str) -> Result<Source, CliError> {
    let body = body.trim();
    let body = strip_parens(body);
    let body = body.strip_prefix("gen:").unwrap_or(body);
    let (name, rest) = body.split_once(':').ok_or_else(|| bad(body, "expected `<name>:<args>`"))?;
    match name {
        "boolean" | "mo" => {
            let k: usize = rest.trim().parse().map_err(|_| bad(body, "expected a non-negative integer"))?;
            Ok(if name == "boolean" { Source::Boolean(k) } else { Source::Mo(k) })
        }
        "product" | "hsum" => {
            let (l, r) = split_top_level(rest).ok_or_else(|| bad(body, "expected two comma-separated operands"))?;
            let (l, r) = (Box::new(parse_generator(l)?), Box::new(parse_generator(r)?));
            Ok(if name == "product" { Source::Product(l, r) } else { Source::HorizontalSum(l, r) })
        }
        other => Err(bad(body, &format!("unknown generator `{other}`"))),
    }
}

fn strip_parens(s: &str) -> &str {
    if s.starts_with('(') && s.ends_with(')') && matching_close(s) == Some(s.len() - 1) {
        strip_parens(s[1..s.len() - 1].trim())
    } else {
        s
    }
}

fn matching_close(s: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth = depth.checked_sub(1)?;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Splits at the first comma outside parentheses. Without parentheses this is
/// the first comma, so nested binary operands on the left need them.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

/// Builds and validates the lattice, enforcing `max_elements`.
pub fn load(source: &Source, max_elements: usize) -> Result<FiniteOml, CliError> {
    let l = match source {
        Source::Boolean(k) => lattice::boolean(*k)?,
        Source::Mo(k) => lattice::mo(*k)?,
        Source::Product(a, b) => lattice::product(&load(a, max_elements)?, &load(b, max_elements)?)?,
        Source::HorizontalSum(a, b) => lattice::horizontal_sum(&load(a, max_elements)?, &load(b, max_elements)?)?,
        Source::File(path) => return lattice::validate_with_limit(&read_spec(path)?, max_elements).map_err(Into::into),
    };
    if l.len() > max_elements {
        return Err(omltopo::LatticeError::SizeLimit { n: l.len(), max: max_elements }.into());
    }
    Ok(l)
}

/// Raw spec for any source, validated or not.
pub fn raw_spec(source: &Source, max_elements: usize) -> Result<RawLatticeSpec, CliError> {
    match source {
        Source::File(path) => read_spec(path),
        other => Ok(load(other, max_elements)?.to_raw()),
    }
}

fn read_spec(path: &str) -> Result<RawLatticeSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{path}: {e}")))
}
