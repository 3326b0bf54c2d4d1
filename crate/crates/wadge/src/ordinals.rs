//! Ordinals below `ω^ω` in Cantor normal form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdError {
    #[error("cannot subtract {eta} from smaller ordinal {xi}")]
    SubUnderflow { xi: Ord, eta: Ord },
    #[error("{0} is not a limit ordinal")]
    NotLimit(Ord),
    #[error("ordinal literal error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}

/// Descending `(exponent, coefficient)` terms; the empty list is `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Ord {
    terms: Vec<(u32, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kind {
    Zero,
    Successor(Ord),
    Limit,
}

impl Ord {
    pub fn zero() -> Self {
        Ord { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Ord::zero()
        } else {
            Ord { terms: vec![(0, n)] }
        }
    }

    pub fn omega() -> Self {
        Ord::omega_pow(1)
    }

    pub fn omega_pow(e: u32) -> Self {
        Ord { terms: vec![(e, 1)] }
    }

    /// Builds from arbitrary terms, normalizing to Cantor normal form.
    pub fn from_terms(raw: &[(u32, u64)]) -> Self {
        raw.iter()
            .filter(|t| t.1 > 0)
            .fold(Ord::zero(), |acc, &t| acc.add(&Ord { terms: vec![t] }))
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, c)] => Some(*c),
            _ => None,
        }
    }

    pub fn add(&self, other: &Ord) -> Ord {
        let Some(&(lead, _)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(u32, u64)> =
            self.terms.iter().copied().take_while(|t| t.0 > lead).collect();
        let mut rest = other.terms.iter().copied();
        if let Some(&(e, c)) = self.terms.iter().find(|t| t.0 == lead) {
            let (_, c2) = rest.next().unwrap();
            terms.push((e, c + c2));
        }
        terms.extend(rest);
        Ord { terms }
    }

    /// The unique `θ` with `eta + θ = self`.
    pub fn sub(&self, eta: &Ord) -> Result<Ord, OrdError> {
        if eta > self {
            return Err(OrdError::SubUnderflow { xi: self.clone(), eta: eta.clone() });
        }
        let k = self
            .terms
            .iter()
            .zip(&eta.terms)
            .take_while(|(a, b)| a == b)
            .count();
        if k == eta.terms.len() {
            return Ok(Ord { terms: self.terms[k..].to_vec() });
        }
        let (e, c) = self.terms[k];
        let (e2, c2) = eta.terms[k];
        let mut terms = Vec::new();
        if e == e2 {
            // same exponent, larger coefficient in self
            terms.push((e, c - c2));
        } else {
            terms.push((e, c));
        }
        terms.extend_from_slice(&self.terms[k + 1..]);
        Ok(Ord { terms })
    }

    pub fn succ(&self) -> Ord {
        self.add(&Ord::finite(1))
    }

    pub fn classify(&self) -> Kind {
        match self.terms.last() {
            None => Kind::Zero,
            Some(&(0, c)) => {
                let mut terms = self.terms.clone();
                if c == 1 {
                    terms.pop();
                } else {
                    terms.last_mut().unwrap().1 -= 1;
                }
                Kind::Successor(Ord { terms })
            }
            Some(_) => Kind::Limit,
        }
    }

    /// `θ_m^η` for limit `η`: `θ_0` removes one copy of the tail term and adds
    /// `δ`, later terms are `δ`.
    pub fn fundamental_seq(&self, m: u64) -> Result<Ord, OrdError> {
        let Some(&(a, c)) = self.terms.last() else {
            return Err(OrdError::NotLimit(self.clone()));
        };
        if a == 0 {
            return Err(OrdError::NotLimit(self.clone()));
        }
        let delta = if a == 1 {
            Ord::finite(1)
        } else {
            Ord::omega_pow(a - 1).succ()
        };
        if m > 0 {
            return Ok(delta);
        }
        let mut terms = self.terms.clone();
        if c == 1 {
            terms.pop();
        } else {
            terms.last_mut().unwrap().1 -= 1;
        }
        Ok(Ord { terms }.add(&delta))
    }
}

impl PartialOrd for Ord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::cmp::Ord for Ord {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let o = a.0.cmp(&b.0).then(a.1.cmp(&b.1));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl fmt::Display for Ord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(e, c)| {
                let base = match e {
                    0 => return c.to_string(),
                    1 => "w".to_string(),
                    _ => format!("w^{e}"),
                };
                if c == 1 {
                    base
                } else {
                    format!("{base}*{c}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for Ord {
    type Err = OrdError;

    /// Grammar: `term ('+' term)*`, `term := N | 'w' ('^' N)? ('*' N)?`.
    /// Sums are evaluated with ordinal addition, so `1+w` parses as `w`.
    fn from_str(s: &str) -> Result<Self, OrdError> {
        let err = |col: usize, msg: &str| OrdError::Parse { col, msg: msg.to_string() };
        let bytes = s.as_bytes();
        let mut pos = 0usize;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let number = |pos: &mut usize| -> Result<u64, OrdError> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            s[start..*pos].parse().map_err(|_| err(start, "expected a number"))
        };
        let mut acc = Ord::zero();
        loop {
            skip_ws(&mut pos);
            let term = if pos < bytes.len() && (bytes[pos] == b'w' || bytes[pos] == b'W') {
                pos += 1;
                skip_ws(&mut pos);
                let mut e = 1u64;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    e = number(&mut pos)?;
                    skip_ws(&mut pos);
                }
                let mut c = 1u64;
                if pos < bytes.len() && bytes[pos] == b'*' {
                    pos += 1;
                    skip_ws(&mut pos);
                    c = number(&mut pos)?;
                }
                let e = u32::try_from(e).map_err(|_| err(pos, "exponent too large"))?;
                Ord::from_terms(&[(e, c)])
            } else {
                Ord::finite(number(&mut pos)?)
            };
            acc = acc.add(&term);
            skip_ws(&mut pos);
            if pos == bytes.len() {
                return Ok(acc);
            }
            if bytes[pos] != b'+' {
                return Err(err(pos, "expected '+' or end of input"));
            }
            pos += 1;
        }
    }
}
