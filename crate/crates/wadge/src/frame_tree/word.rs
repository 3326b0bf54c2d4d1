use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::Nat;

/// A letter of a tuple word: `Diag` stands for the coordinate index `i`
/// itself, `C(c)` for the same letter `c` in every coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Diag,
    C(u64),
}

impl Letter {
    pub fn at(self, i: u64) -> u64 {
        match self {
            Letter::Diag => i,
            Letter::C(c) => c,
        }
    }
}

/// Run-length encoded word; adjacent runs carry distinct letters and every
/// run is nonempty, so structural equality is word equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SymWord {
    runs: Vec<(Letter, Nat)>,
}

impl SymWord {
    pub fn new() -> Self {
        SymWord { runs: Vec::new() }
    }

    pub fn from_letters(ls: &[Letter]) -> Self {
        let mut w = SymWord::new();
        for &l in ls {
            w.push_run(l, Nat::one());
        }
        w
    }

    pub fn from_plain(ls: &[u64]) -> Self {
        let mut w = SymWord::new();
        for &c in ls {
            w.push_run(Letter::C(c), Nat::one());
        }
        w
    }

    pub fn zeros(n: Nat) -> Self {
        let mut w = SymWord::new();
        w.push_run(Letter::C(0), n);
        w
    }

    pub fn runs(&self) -> &[(Letter, Nat)] {
        &self.runs
    }

    pub fn push_run(&mut self, l: Letter, n: Nat) {
        if n.is_zero() {
            return;
        }
        match self.runs.last_mut() {
            Some((last, k)) if *last == l => *k += n,
            _ => self.runs.push((l, n)),
        }
    }

    pub fn push(&mut self, l: Letter) {
        self.push_run(l, Nat::one());
    }

    pub fn append(&mut self, other: &SymWord) {
        for (l, n) in &other.runs {
            self.push_run(*l, n.clone());
        }
    }

    pub fn concat(&self, other: &SymWord) -> SymWord {
        let mut w = self.clone();
        w.append(other);
        w
    }

    pub fn len(&self) -> Nat {
        self.runs.iter().map(|(_, n)| n).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn letter_at(&self, pos: &Nat) -> Option<Letter> {
        let mut start = Nat::zero();
        for (l, n) in &self.runs {
            let end = &start + n;
            if *pos < end {
                return Some(*l);
            }
            start = end;
        }
        None
    }

    /// First `k` letters (the whole word if shorter).
    pub fn prefix(&self, k: &Nat) -> SymWord {
        let mut out = SymWord::new();
        let mut left = k.clone();
        for (l, n) in &self.runs {
            if left.is_zero() {
                break;
            }
            let take = if *n < left { n.clone() } else { left.clone() };
            left -= &take;
            out.push_run(*l, take);
        }
        out
    }

    /// The word without its first `k` letters.
    pub fn drop_prefix(&self, k: &Nat) -> SymWord {
        let mut out = SymWord::new();
        let mut skip = k.clone();
        for (l, n) in &self.runs {
            if skip >= *n {
                skip -= n;
                continue;
            }
            out.push_run(*l, n - &skip);
            skip = Nat::zero();
        }
        out
    }

    /// Letters in `[from, to)`.
    pub fn slice(&self, from: &Nat, to: &Nat) -> SymWord {
        if to <= from {
            return SymWord::new();
        }
        self.prefix(to).drop_prefix(from)
    }

    pub fn is_prefix_of(&self, other: &SymWord) -> bool {
        let n = self.len();
        n <= other.len() && other.prefix(&n) == *self
    }

    /// Coordinate `i` of a tuple word.
    pub fn coord(&self, i: u64) -> SymWord {
        let mut out = SymWord::new();
        for (l, n) in &self.runs {
            out.push_run(Letter::C(l.at(i)), n.clone());
        }
        out
    }

    pub fn diag_positions(&self) -> Vec<Nat> {
        let mut out = Vec::new();
        let mut start = Nat::zero();
        for (l, n) in &self.runs {
            if *l == Letter::Diag {
                let mut k = Nat::zero();
                while k < *n {
                    out.push(&start + &k);
                    k += 1u32;
                }
            }
            start += n;
        }
        out
    }

    pub fn has_diag(&self) -> bool {
        self.runs.iter().any(|(l, _)| *l == Letter::Diag)
    }

    /// Explicit letters when the word is at most `max` long.
    pub fn explicit(&self, max: usize) -> Option<Vec<Letter>> {
        let len = self.len().to_usize().filter(|&n| n <= max)?;
        let mut out = Vec::with_capacity(len);
        for (l, n) in &self.runs {
            out.extend(std::iter::repeat(*l).take(n.to_usize().unwrap()));
        }
        Some(out)
    }

    pub fn without_trailing_zeros(&self) -> SymWord {
        let mut w = self.clone();
        if matches!(w.runs.last(), Some((Letter::C(0), _))) {
            w.runs.pop();
        }
        w
    }

    /// `w(n) ≤ n` at every position, reading `Diag` as 0.
    pub fn bounded_by_position(&self) -> bool {
        let mut start = Nat::zero();
        for (l, n) in &self.runs {
            if let Letter::C(c) = l {
                // the smallest position in the run is the binding one
                if Nat::from(*c) > start {
                    return false;
                }
            }
            start += n;
        }
        true
    }
}

impl fmt::Display for SymWord {
    /// `i` for the coordinate letter, digits for common letters, `c^n` for runs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .runs
            .iter()
            .map(|(l, n)| {
                let s = match l {
                    Letter::Diag => "i".to_string(),
                    Letter::C(c) if *c < 10 => c.to_string(),
                    Letter::C(c) => format!("<{c}>"),
                };
                if n.is_one() {
                    s
                } else if *n < Nat::from(4u32) {
                    s.repeat(n.to_usize().unwrap())
                } else {
                    format!("{s}^{n}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(""))
    }
}
