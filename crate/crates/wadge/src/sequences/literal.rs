//! Textual literals for [`BitSeq`]:
//! `fm(0;3,5)`, `ep(01;10)`, `rm(default=Z; 0=F{0,2}, 3=O)`, `zeros`, `ones`.
//!
//! Row descriptors: `Z` all zero, `O` all one, `F{..}` finitely many ones,
//! `C{..}` finitely many zeros, `I` or `I{first}` infinitely many ones.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{BitSeq, RowDesc};
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("sequence literal error at column {col}: {msg}")]
pub struct ParseSeqError {
    pub col: usize,
    pub msg: String,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseSeqError> {
        Err(ParseSeqError { col: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<(), ParseSeqError> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected '{tok}'"))
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.src[self.pos..].chars().next()
    }

    fn nat(&mut self) -> Result<Nat, ParseSeqError> {
        self.ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a natural number");
        }
        Ok(self.src[start..self.pos].parse().unwrap())
    }

    fn bits(&mut self) -> Result<Vec<bool>, ParseSeqError> {
        self.ws();
        let mut out = Vec::new();
        while let Some(c) = self.src[self.pos..].chars().next() {
            match c {
                '0' => out.push(false),
                '1' => out.push(true),
                _ => break,
            }
            self.pos += 1;
        }
        Ok(out)
    }

    fn nat_set(&mut self, close: &str) -> Result<BTreeSet<Nat>, ParseSeqError> {
        let mut set = BTreeSet::new();
        if self.eat(close) {
            return Ok(set);
        }
        loop {
            set.insert(self.nat()?);
            if self.eat(close) {
                return Ok(set);
            }
            self.expect(",")?;
        }
    }

    fn row(&mut self) -> Result<RowDesc, ParseSeqError> {
        match self.peek() {
            Some('Z') => {
                self.pos += 1;
                Ok(RowDesc::AllZero)
            }
            Some('O') => {
                self.pos += 1;
                Ok(RowDesc::AllOne)
            }
            Some('F') => {
                self.pos += 1;
                self.expect("{")?;
                let s = self.nat_set("}")?;
                if s.is_empty() {
                    return self.err("F{..} needs at least one column; use Z");
                }
                Ok(RowDesc::FiniteOnes(s))
            }
            Some('C') => {
                self.pos += 1;
                self.expect("{")?;
                let s = self.nat_set("}")?;
                if s.is_empty() {
                    return self.err("C{..} needs at least one column; use O");
                }
                Ok(RowDesc::FiniteZeros(s))
            }
            Some('I') => {
                self.pos += 1;
                let first = if self.eat("{") {
                    let f = self.nat()?;
                    self.expect("}")?;
                    Some(f)
                } else {
                    None
                };
                Ok(RowDesc::NonemptyInfiniteOnes { first })
            }
            _ => self.err("expected a row descriptor Z, O, F{..}, C{..} or I"),
        }
    }

    fn seq(&mut self) -> Result<BitSeq, ParseSeqError> {
        if self.eat("zeros") {
            return Ok(BitSeq::zeros());
        }
        if self.eat("ones") {
            return Ok(BitSeq::ones());
        }
        if self.eat("fm(") {
            let d = match self.bits()?.as_slice() {
                [b] => *b,
                _ => return self.err("expected default bit 0 or 1"),
            };
            self.expect(";")?;
            let ex = self.nat_set(")")?;
            return Ok(BitSeq::FiniteMod { default: d, exceptions: ex });
        }
        if self.eat("ep(") {
            let pre = self.bits()?;
            self.expect(";")?;
            let per = self.bits()?;
            if per.is_empty() {
                return self.err("period must be nonempty");
            }
            self.expect(")")?;
            return Ok(BitSeq::periodic(pre, per).expect("nonempty period"));
        }
        if self.eat("rm(") {
            self.expect("default")?;
            self.expect("=")?;
            let default_row = self.row()?;
            let mut rows = BTreeMap::new();
            while self.eat(";") || self.eat(",") {
                if self.peek() == Some(')') {
                    break;
                }
                let at = self.pos;
                let m = self.nat()?;
                self.expect("=")?;
                let r = self.row()?;
                if rows.insert(m, r).is_some() {
                    return Err(ParseSeqError { col: at, msg: "row listed twice".into() });
                }
            }
            self.expect(")")?;
            return Ok(BitSeq::row_map(default_row, rows));
        }
        self.err("expected zeros, ones, fm(..), ep(..) or rm(..)")
    }
}

impl FromStr for BitSeq {
    type Err = ParseSeqError;

    fn from_str(s: &str) -> Result<Self, ParseSeqError> {
        let mut c = Cursor { src: s, pos: 0 };
        let out = c.seq()?;
        c.ws();
        if c.pos != s.len() {
            return c.err("trailing input");
        }
        Ok(out)
    }
}

fn join(s: &BTreeSet<Nat>) -> String {
    s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn bits(b: &[bool]) -> String {
    b.iter().map(|&x| if x { '1' } else { '0' }).collect()
}

impl fmt::Display for RowDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowDesc::AllZero => write!(f, "Z"),
            RowDesc::AllOne => write!(f, "O"),
            RowDesc::FiniteOnes(s) => write!(f, "F{{{}}}", join(s)),
            RowDesc::FiniteZeros(s) => write!(f, "C{{{}}}", join(s)),
            RowDesc::NonemptyInfiniteOnes { first: None } => write!(f, "I"),
            RowDesc::NonemptyInfiniteOnes { first: Some(x) } => write!(f, "I{{{x}}}"),
        }
    }
}

impl fmt::Display for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BitSeq::FiniteMod { default, exceptions } => {
                write!(f, "fm({};{})", u8::from(*default), join(exceptions))
            }
            BitSeq::EventuallyPeriodic { pre, per } => write!(f, "ep({};{})", bits(pre), bits(per)),
            BitSeq::RowMap { default_row, rows } => {
                write!(f, "rm(default={default_row}")?;
                for (m, r) in rows {
                    write!(f, "; {m}={r}")?;
                }
                write!(f, ")")
            }
        }
    }
}
