//! Reference evaluator for `ρ₀^η` on plain lassos.
//!
//! Rows are scanned literally and limit stages are built by prefix splicing
//! `β_{m+1} = β_m|m · ρ₀^{θ_m}(S^m β_m)`. The code shares nothing with the
//! symbolic engine beyond the pairing function and the ordinal type.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use super::{BitSeq, SeqError, SeqResult};
use crate::coding::pair_u64;
use crate::ordinals::{Kind, Ord};

/// `pre · per^∞`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lasso {
    pub pre: Vec<bool>,
    pub per: Vec<bool>,
}

impl Lasso {
    pub fn at(&self, i: usize) -> bool {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    fn tidy(mut self) -> Lasso {
        let p = self.per.len();
        for q in 1..=p {
            if p % q == 0 && self.per.chunks(q).all(|c| c == &self.per[..q]) {
                self.per.truncate(q);
                break;
            }
        }
        while !self.pre.is_empty() && self.pre.last() == self.per.last() {
            self.pre.pop();
            let last = self.per.pop().unwrap();
            self.per.insert(0, last);
        }
        self
    }

    fn shift(&self) -> Lasso {
        let a = self.pre.len().saturating_sub(1);
        let bits: Vec<bool> = (1..=a + self.per.len()).map(|i| self.at(i)).collect();
        Lasso { pre: bits[..a].to_vec(), per: bits[a..].to_vec() }.tidy()
    }

    fn shift_by(&self, k: usize) -> Lasso {
        (0..k).fold(self.clone(), |l, _| l.shift())
    }

    fn splice(prefix: &[bool], rest: &Lasso) -> Lasso {
        let mut pre = prefix.to_vec();
        pre.extend_from_slice(&rest.pre);
        Lasso { pre, per: rest.per.clone() }.tidy()
    }

    /// Row `m` is scanned over columns `n < A + 2P`; beyond the preamble the
    /// value at `⟨m, n⟩` depends only on `n mod 2P`, and rows `m ≥ A` only on
    /// `m mod 2P`.
    fn rho0(&self) -> Lasso {
        let a = self.pre.len() as u64;
        let p2 = 2 * self.per.len() as u64;
        let row_empty = |m: u64| {
            (0..a + p2).all(|n| !self.at(pair_u64(m, n).expect("small grid") as usize))
        };
        let bits: Vec<bool> = (0..a + p2).map(row_empty).collect();
        Lasso { pre: bits[..a as usize].to_vec(), per: bits[a as usize..].to_vec() }.tidy()
    }
}

/// Input of the first stage: either a lasso or a row-described sequence
/// whose only admissible first operation is `ρ₀`.
enum Src<'a> {
    Plain(Lasso),
    Rows(&'a BitSeq),
}

impl Src<'_> {
    fn rho0(&self) -> SeqResult<Lasso> {
        match self {
            Src::Plain(l) => Ok(l.rho0()),
            Src::Rows(BitSeq::RowMap { default_row, rows }) => {
                let d = default_row.is_empty_row();
                let top = rows.keys().next_back().map_or(0, |m| m.to_usize().unwrap() + 1);
                let mut pre = vec![d; top];
                for (m, r) in rows {
                    pre[m.to_usize().unwrap()] = r.is_empty_row();
                }
                Ok(Lasso { pre, per: vec![d] }.tidy())
            }
            Src::Rows(_) => unreachable!("row sources are row maps"),
        }
    }

    fn plain(&self) -> SeqResult<&Lasso> {
        match self {
            Src::Plain(l) => Ok(l),
            Src::Rows(_) => Err(SeqError::Unsupported { op: "oracle identity stage", repr: "row-map" }),
        }
    }
}

fn to_src(a: &BitSeq) -> SeqResult<Src<'_>> {
    match a {
        BitSeq::RowMap { .. } => Ok(Src::Rows(a)),
        _ => {
            let (pre, per) = a.as_lasso()?;
            Ok(Src::Plain(Lasso { pre, per }))
        }
    }
}

const MAX_STATES: usize = 4096;

/// The whole sequence `ρ₀^η(x)` for `η ≥ 1`.
fn whole(eta: &Ord, x: &Src) -> SeqResult<Lasso> {
    match eta.classify() {
        Kind::Zero => Ok(x.plain()?.clone()),
        Kind::Successor(p) => {
            if p.is_zero() {
                return x.rho0();
            }
            Ok(whole(&p, x)?.rho0())
        }
        Kind::Limit => {
            // S^m ρ₀^{(0,m+1)} = ρ₀^{θ_m} ∘ (S ∘ ρ₀^{θ_{m−1}}) ∘ ⋯ ∘ (S ∘ ρ₀^{θ_0})
            let mut outs = Vec::new();
            let first = whole(&eta.fundamental_seq(0).unwrap(), x)?;
            outs.push(first.at(0));
            let mut state = first.shift();
            let delta = eta.fundamental_seq(1).unwrap();
            let mut seen: HashMap<Lasso, usize> = HashMap::new();
            for m in 1..MAX_STATES {
                if let Some(&j) = seen.get(&state) {
                    return Ok(Lasso { pre: outs[..j].to_vec(), per: outs[j..].to_vec() }.tidy());
                }
                seen.insert(state.clone(), m);
                let next = whole(&delta, &Src::Plain(state))?;
                outs.push(next.at(0));
                state = next.shift();
            }
            Err(SeqError::ClosureFailure(format!("oracle state bound {MAX_STATES} at {eta}")))
        }
    }
}

/// `ρ₀^η(α)(m)` for every `m < len`.
pub fn rho0_pow_prefix(eta: &Ord, a: &BitSeq, len: usize) -> SeqResult<Vec<bool>> {
    if eta.is_zero() {
        return a.window(len as u64);
    }
    let src = to_src(a)?;
    match eta.classify() {
        Kind::Limit => {
            // ρ₀^{(m, m+1)} fixes coordinates below m, so β_len agrees with
            // ρ₀^{(0, m+1)}(α) at every m < len.
            let mut beta = whole(&eta.fundamental_seq(0).unwrap(), &src)?;
            for m in 1..len {
                let theta = eta.fundamental_seq(m as u64).unwrap();
                let tail = whole(&theta, &Src::Plain(beta.shift_by(m)))?;
                let prefix: Vec<bool> = (0..m).map(|i| beta.at(i)).collect();
                beta = Lasso::splice(&prefix, &tail);
            }
            Ok((0..len).map(|i| beta.at(i)).collect())
        }
        _ => {
            let l = whole(eta, &src)?;
            Ok((0..len).map(|i| l.at(i)).collect())
        }
    }
}

/// `ρ₀^η(α)(m)`.
pub fn rho0_pow_at(eta: &Ord, a: &BitSeq, m: usize) -> SeqResult<bool> {
    Ok(rho0_pow_prefix(eta, a, m + 1)?[m])
}
