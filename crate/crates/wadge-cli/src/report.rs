use std::fmt;
use std::str::FromStr;

use serde_json::Value;
use wadge::complete_sets::EvalError;
use wadge::descriptions::DescError;
use wadge::ordinals::OrdError;
use wadge::sequences::ParseSeqError;

/// Result of a subcommand: human text, a JSON payload, and whether every
/// property it checked held.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Output {
    pub fn ok(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, ok: true }
    }

    pub fn checked(ok: bool, text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, ok }
    }
}

#[derive(Debug)]
pub enum Failure {
    Input { what: &'static str, src: String, col: Option<usize>, msg: String },
    Runtime(String),
}

impl Failure {
    pub fn input(what: &'static str, src: &str, msg: impl Into<String>) -> Self {
        Failure::Input { what, src: src.to_string(), col: None, msg: msg.into() }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input { .. } => 2,
            Failure::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input { what, src, col: Some(col), msg } => {
                writeln!(f, "error: invalid {what}: {msg}")?;
                writeln!(f, "  {src}")?;
                write!(f, "  {}^", " ".repeat(src.get(..*col).map_or(*col, |s| s.chars().count())))
            }
            Failure::Input { what, src, col: None, msg } => write!(f, "error: invalid {what} '{src}': {msg}"),
            Failure::Runtime(msg) => write!(f, "error: {msg}"),
        }
    }
}

pub fn runtime<E: fmt::Display>(e: E) -> Failure {
    Failure::Runtime(e.to_string())
}

/// Errors that may carry a column into the literal.
pub trait Positioned: fmt::Display {
    fn column(&self) -> Option<usize>;
}

impl Positioned for ParseSeqError {
    fn column(&self) -> Option<usize> {
        Some(self.col)
    }
}

impl Positioned for DescError {
    fn column(&self) -> Option<usize> {
        match self {
            DescError::Parse { col, .. } => Some(*col),
            _ => None,
        }
    }
}

impl Positioned for OrdError {
    fn column(&self) -> Option<usize> {
        match self {
            OrdError::Parse { col, .. } => Some(*col),
            _ => None,
        }
    }
}

impl Positioned for EvalError {
    fn column(&self) -> Option<usize> {
        match self {
            EvalError::Parse { col, .. } => Some(*col),
            _ => None,
        }
    }
}

pub fn literal<T>(what: &'static str, src: &str) -> Result<T, Failure>
where
    T: FromStr,
    T::Err: Positioned,
{
    src.parse().map_err(|e: T::Err| Failure::Input {
        what,
        src: src.to_string(),
        col: e.column(),
        msg: e.to_string(),
    })
}
