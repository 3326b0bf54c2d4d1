//! Symbolic elements of `2^ω` and the operators acting on them.
//!
//! Three closed representations are used: finite modifications of a constant
//! sequence, eventually periodic lassos, and row maps describing each row
//! `{⟨m, n⟩ : n ∈ ω}` of the pairing grid.

mod literal;
pub mod oracle;
mod rho;

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::coding::{nat, pair, q_code, unpair};
use crate::Nat;

pub use literal::ParseSeqError;
pub use rho::{rho0_pow, rho0_pow_with, Rho0Options};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("row {row} only admits emptiness queries")]
    OpaqueRow { row: String },
    #[error("operation {op} is not supported on {repr}")]
    Unsupported { op: &'static str, repr: &'static str },
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("tau index word contains 0 at position {0}")]
    ZeroInTauWord(usize),
    #[error("closure failure: {0}")]
    ClosureFailure(String),
    #[error("position {0} too large for an explicit window")]
    TooLarge(Nat),
    #[error("search bound {0} exhausted")]
    SearchBound(u64),
}

pub type SeqResult<T> = Result<T, SeqError>;

/// Content of one grid row, as a function of the column index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowDesc {
    AllZero,
    AllOne,
    FiniteOnes(BTreeSet<Nat>),
    FiniteZeros(BTreeSet<Nat>),
    /// Infinitely many ones; only the optional smallest one-column is known.
    NonemptyInfiniteOnes { first: Option<Nat> },
}

impl RowDesc {
    pub fn finite_ones(cols: BTreeSet<Nat>) -> RowDesc {
        if cols.is_empty() {
            RowDesc::AllZero
        } else {
            RowDesc::FiniteOnes(cols)
        }
    }

    pub fn finite_zeros(cols: BTreeSet<Nat>) -> RowDesc {
        if cols.is_empty() {
            RowDesc::AllOne
        } else {
            RowDesc::FiniteZeros(cols)
        }
    }

    pub fn is_opaque(&self) -> bool {
        matches!(self, RowDesc::NonemptyInfiniteOnes { .. })
    }

    /// True iff the row contains no 1.
    pub fn is_empty_row(&self) -> bool {
        matches!(self, RowDesc::AllZero)
    }

    pub fn bit(&self, col: &Nat, row: &str) -> SeqResult<bool> {
        Ok(match self {
            RowDesc::AllZero => false,
            RowDesc::AllOne => true,
            RowDesc::FiniteOnes(s) => s.contains(col),
            RowDesc::FiniteZeros(s) => !s.contains(col),
            RowDesc::NonemptyInfiniteOnes { first: Some(f) } if col <= f => col == f,
            RowDesc::NonemptyInfiniteOnes { .. } => {
                return Err(SeqError::OpaqueRow { row: row.to_string() })
            }
        })
    }

    pub fn first_one(&self, row: &str) -> SeqResult<Option<Nat>> {
        Ok(match self {
            RowDesc::AllZero => None,
            RowDesc::AllOne => Some(Nat::zero()),
            RowDesc::FiniteOnes(s) => s.iter().next().cloned(),
            RowDesc::FiniteZeros(s) => Some(first_gap(s)),
            RowDesc::NonemptyInfiniteOnes { first: Some(f) } => Some(f.clone()),
            RowDesc::NonemptyInfiniteOnes { first: None } => {
                return Err(SeqError::OpaqueRow { row: row.to_string() })
            }
        })
    }

    /// Row with column 0 removed.
    fn drop_first(&self) -> RowDesc {
        let shift = |s: &BTreeSet<Nat>| -> BTreeSet<Nat> {
            s.iter().filter(|c| !c.is_zero()).map(|c| c - 1u32).collect()
        };
        match self {
            RowDesc::AllZero | RowDesc::AllOne => self.clone(),
            RowDesc::FiniteOnes(s) => RowDesc::finite_ones(shift(s)),
            RowDesc::FiniteZeros(s) => RowDesc::finite_zeros(shift(s)),
            RowDesc::NonemptyInfiniteOnes { first } => RowDesc::NonemptyInfiniteOnes {
                first: first.as_ref().filter(|f| !f.is_zero()).map(|f| f - 1u32),
            },
        }
    }

    fn xor(&self, other: &RowDesc, row: &str) -> SeqResult<RowDesc> {
        use RowDesc::*;
        let (a, b) = match (self, other) {
            (AllZero, x) | (x, AllZero) => return Ok(x.clone()),
            (NonemptyInfiniteOnes { .. }, _) | (_, NonemptyInfiniteOnes { .. }) => {
                return Err(SeqError::OpaqueRow { row: row.to_string() })
            }
            (a, b) => (a.as_fm(), b.as_fm()),
        };
        let default = a.0 ^ b.0;
        let ex: BTreeSet<Nat> = a.1.symmetric_difference(&b.1).cloned().collect();
        Ok(if default {
            RowDesc::finite_zeros(ex)
        } else {
            RowDesc::finite_ones(ex)
        })
    }

    fn as_fm(&self) -> (bool, BTreeSet<Nat>) {
        match self {
            RowDesc::AllZero => (false, BTreeSet::new()),
            RowDesc::AllOne => (true, BTreeSet::new()),
            RowDesc::FiniteOnes(s) => (false, s.clone()),
            RowDesc::FiniteZeros(s) => (true, s.clone()),
            RowDesc::NonemptyInfiniteOnes { .. } => unreachable!("opaque rows have no finite form"),
        }
    }

    pub fn to_bitseq(&self, row: &str) -> SeqResult<BitSeq> {
        if self.is_opaque() {
            return Err(SeqError::OpaqueRow { row: row.to_string() });
        }
        let (d, ex) = self.as_fm();
        Ok(BitSeq::finite_mod(d, ex))
    }

    pub fn from_bitseq(a: &BitSeq) -> SeqResult<RowDesc> {
        match a {
            BitSeq::FiniteMod { default: false, exceptions } => Ok(RowDesc::finite_ones(exceptions.clone())),
            BitSeq::FiniteMod { default: true, exceptions } => Ok(RowDesc::finite_zeros(exceptions.clone())),
            _ => Err(SeqError::Unsupported { op: "row descriptor", repr: a.repr_name() }),
        }
    }
}

fn first_gap(s: &BTreeSet<Nat>) -> Nat {
    let mut k = Nat::zero();
    while s.contains(&k) {
        k += 1u32;
    }
    k
}

/// A total function `ω → {0, 1}` in one of three closed forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BitSeq {
    FiniteMod { default: bool, exceptions: BTreeSet<Nat> },
    EventuallyPeriodic { pre: Vec<bool>, per: Vec<bool> },
    RowMap { default_row: RowDesc, rows: BTreeMap<Nat, RowDesc> },
}

impl BitSeq {
    pub fn zeros() -> BitSeq {
        BitSeq::constant(false)
    }

    pub fn ones() -> BitSeq {
        BitSeq::constant(true)
    }

    pub fn constant(b: bool) -> BitSeq {
        BitSeq::FiniteMod { default: b, exceptions: BTreeSet::new() }
    }

    pub fn finite_mod(default: bool, exceptions: impl IntoIterator<Item = Nat>) -> BitSeq {
        BitSeq::FiniteMod { default, exceptions: exceptions.into_iter().collect() }
    }

    pub fn with_ones<I: IntoIterator<Item = u64>>(ones: I) -> BitSeq {
        BitSeq::finite_mod(false, ones.into_iter().map(nat))
    }

    /// Canonical lasso: minimal period, shortest preamble, constant periods
    /// collapsed to finite modifications.
    pub fn periodic(mut pre: Vec<bool>, mut per: Vec<bool>) -> SeqResult<BitSeq> {
        if per.is_empty() {
            return Err(SeqError::EmptyPeriod);
        }
        let p = per.len();
        if let Some(q) = (1..=p).find(|&q| p % q == 0 && (0..p).all(|i| per[i] == per[i % q])) {
            per.truncate(q);
        }
        while pre.last().is_some_and(|b| b == per.last().unwrap()) {
            pre.pop();
            per.rotate_right(1);
        }
        if per.iter().all(|&b| b == per[0]) {
            let d = per[0];
            let ex = pre.iter().enumerate().filter(|(_, &b)| b != d).map(|(i, _)| nat(i as u64));
            return Ok(BitSeq::finite_mod(d, ex));
        }
        Ok(BitSeq::EventuallyPeriodic { pre, per })
    }

    /// Canonical row map; collapses to a finite modification when possible.
    pub fn row_map(default_row: RowDesc, rows: BTreeMap<Nat, RowDesc>) -> BitSeq {
        let rows: BTreeMap<Nat, RowDesc> = rows.into_iter().filter(|(_, r)| *r != default_row).collect();
        let collapsible = match default_row {
            RowDesc::AllZero => rows.values().all(|r| matches!(r, RowDesc::FiniteOnes(_))),
            RowDesc::AllOne => rows.values().all(|r| matches!(r, RowDesc::FiniteZeros(_))),
            _ => false,
        };
        if collapsible {
            let default = default_row == RowDesc::AllOne;
            let mut ex = BTreeSet::new();
            for (m, r) in &rows {
                if let RowDesc::FiniteOnes(s) | RowDesc::FiniteZeros(s) = r {
                    ex.extend(s.iter().map(|c| pair(m, c)));
                }
            }
            return BitSeq::FiniteMod { default, exceptions: ex };
        }
        BitSeq::RowMap { default_row, rows }
    }

    pub fn repr_name(&self) -> &'static str {
        match self {
            BitSeq::FiniteMod { .. } => "finite-modification",
            BitSeq::EventuallyPeriodic { .. } => "eventually-periodic",
            BitSeq::RowMap { .. } => "row-map",
        }
    }

    pub fn eval(&self, n: &Nat) -> SeqResult<bool> {
        match self {
            BitSeq::FiniteMod { default, exceptions } => Ok(default ^ exceptions.contains(n)),
            BitSeq::EventuallyPeriodic { pre, per } => {
                let a = pre.len();
                if let Some(i) = n.to_usize().filter(|&i| i < a) {
                    return Ok(pre[i]);
                }
                let idx = ((n - a) % per.len()).to_usize().unwrap();
                Ok(per[idx])
            }
            BitSeq::RowMap { default_row, rows } => {
                let (m, c) = unpair(n);
                rows.get(&m).unwrap_or(default_row).bit(&c, &m.to_string())
            }
        }
    }

    pub fn eval_u(&self, n: u64) -> SeqResult<bool> {
        self.eval(&nat(n))
    }

    pub fn window(&self, len: u64) -> SeqResult<Vec<bool>> {
        (0..len).map(|n| self.eval_u(n)).collect()
    }

    /// Lasso view `(preamble, period)` for sequences with explicit small data.
    pub fn as_lasso(&self) -> SeqResult<(Vec<bool>, Vec<bool>)> {
        match self {
            BitSeq::FiniteMod { default, exceptions } => {
                let len = match exceptions.iter().next_back() {
                    None => 0,
                    Some(x) => x
                        .to_usize()
                        .filter(|&x| x < 1 << 22)
                        .ok_or_else(|| SeqError::TooLarge(x.clone()))?
                        + 1,
                };
                let mut pre = vec![*default; len];
                for x in exceptions {
                    pre[x.to_usize().unwrap()] ^= true;
                }
                Ok((pre, vec![*default]))
            }
            BitSeq::EventuallyPeriodic { pre, per } => Ok((pre.clone(), per.clone())),
            BitSeq::RowMap { .. } => Err(SeqError::Unsupported { op: "lasso view", repr: "row-map" }),
        }
    }

    /// `S(α)(m) = α(m + 1)`.
    pub fn shift(&self) -> SeqResult<BitSeq> {
        match self {
            BitSeq::FiniteMod { default, exceptions } => Ok(BitSeq::FiniteMod {
                default: *default,
                exceptions: exceptions.iter().filter(|x| !x.is_zero()).map(|x| x - 1u32).collect(),
            }),
            BitSeq::EventuallyPeriodic { pre, per } => {
                if pre.is_empty() {
                    let mut per = per.clone();
                    per.rotate_left(1);
                    BitSeq::periodic(Vec::new(), per)
                } else {
                    BitSeq::periodic(pre[1..].to_vec(), per.clone())
                }
            }
            BitSeq::RowMap { default_row, rows } => {
                // ⟨r, n⟩ + 1 = ⟨r − 1, n + 1⟩ for r ≥ 1 and ⟨0, n⟩ + 1 = ⟨n + 1, 0⟩.
                let col0 = |r: &RowDesc, m: &Nat| r.bit(&Nat::zero(), &m.to_string());
                let d0 = col0(default_row, &Nat::zero())?;
                let mut ex = BTreeSet::new();
                for (m, r) in rows {
                    if !m.is_zero() && col0(r, m)? != d0 {
                        ex.insert(m - 1u32);
                    }
                }
                let row0 = if d0 { RowDesc::finite_zeros(ex) } else { RowDesc::finite_ones(ex) };
                let mut out: BTreeMap<Nat, RowDesc> =
                    rows.iter().map(|(m, r)| (m + 1u32, r.drop_first())).collect();
                out.insert(Nat::zero(), row0);
                Ok(BitSeq::row_map(default_row.drop_first(), out))
            }
        }
    }

    pub fn shift_by(&self, k: u64) -> SeqResult<BitSeq> {
        (0..k).try_fold(self.clone(), |a, _| a.shift())
    }

    pub fn is_all_zero(&self) -> bool {
        match self {
            BitSeq::FiniteMod { default, exceptions } => !default && exceptions.is_empty(),
            BitSeq::EventuallyPeriodic { pre, per } => !pre.iter().chain(per).any(|&b| b),
            BitSeq::RowMap { default_row, rows } => {
                default_row.is_empty_row() && rows.values().all(RowDesc::is_empty_row)
            }
        }
    }

    /// Smallest position carrying a 1.
    pub fn first_one(&self) -> SeqResult<Option<Nat>> {
        match self {
            BitSeq::FiniteMod { default: false, exceptions } => Ok(exceptions.iter().next().cloned()),
            BitSeq::FiniteMod { default: true, exceptions } => Ok(Some(first_gap(exceptions))),
            BitSeq::EventuallyPeriodic { pre, per } => Ok(pre
                .iter()
                .chain(per)
                .position(|&b| b)
                .map(|i| nat(i as u64))),
            BitSeq::RowMap { default_row, rows } => {
                let mut best: Option<Nat> = None;
                let mut consider = |x: Nat| {
                    if best.as_ref().map_or(true, |b| x < *b) {
                        best = Some(x);
                    }
                };
                for (m, r) in rows {
                    if let Some(c) = r.first_one(&m.to_string())? {
                        consider(pair(m, &c));
                    }
                }
                let free = first_gap(&rows.keys().cloned().collect());
                if let Some(c) = default_row.first_one("default")? {
                    consider(pair(&free, &c));
                }
                Ok(best)
            }
        }
    }

    /// Whether some 1-position `m` has `(m)_0 ≡ eps (mod 2)`.
    pub fn has_one_in_row_parity(&self, eps: bool, bound: u64) -> SeqResult<bool> {
        let parity = |m: &Nat| m.is_odd() == eps;
        match self {
            BitSeq::FiniteMod { default: false, exceptions } => {
                Ok(exceptions.iter().any(|x| parity(&unpair(x).0)))
            }
            BitSeq::FiniteMod { default: true, .. } => Ok(true),
            BitSeq::RowMap { default_row, rows } => {
                if !default_row.is_empty_row() {
                    return Ok(true);
                }
                Ok(rows.iter().any(|(m, r)| parity(m) && !r.is_empty_row()))
            }
            BitSeq::EventuallyPeriodic { pre, per } => {
                let a = pre.len() as u64;
                for x in 0..a + bound {
                    if self.eval_u(x)? && parity(&unpair(&nat(x)).0) {
                        return Ok(true);
                    }
                }
                if !per.iter().any(|&b| b) {
                    return Ok(false);
                }
                Err(SeqError::SearchBound(bound))
            }
        }
    }
}

/// `Δ(a, b)`: pointwise exclusive or.
pub fn symdiff(a: &BitSeq, b: &BitSeq) -> SeqResult<BitSeq> {
    use BitSeq::*;
    match (a, b) {
        (FiniteMod { default: d1, exceptions: e1 }, FiniteMod { default: d2, exceptions: e2 }) => {
            Ok(BitSeq::FiniteMod {
                default: d1 ^ d2,
                exceptions: e1.symmetric_difference(e2).cloned().collect(),
            })
        }
        (RowMap { .. }, _) | (_, RowMap { .. }) => {
            let (d1, r1) = as_rows(a)?;
            let (d2, r2) = as_rows(b)?;
            let default = d1.xor(&d2, "default")?;
            let mut rows = BTreeMap::new();
            for m in r1.keys().chain(r2.keys()) {
                let x = r1.get(m).unwrap_or(&d1);
                let y = r2.get(m).unwrap_or(&d2);
                rows.insert(m.clone(), x.xor(y, &m.to_string())?);
            }
            Ok(BitSeq::row_map(default, rows))
        }
        _ => {
            let (p1, q1) = a.as_lasso()?;
            let (p2, q2) = b.as_lasso()?;
            let pre_len = p1.len().max(p2.len());
            let per_len = q1.len().lcm(&q2.len());
            let at = |pre: &[bool], per: &[bool], i: usize| {
                if i < pre.len() {
                    pre[i]
                } else {
                    per[(i - pre.len()) % per.len()]
                }
            };
            let bits: Vec<bool> = (0..pre_len + per_len)
                .map(|i| at(&p1, &q1, i) ^ at(&p2, &q2, i))
                .collect();
            BitSeq::periodic(bits[..pre_len].to_vec(), bits[pre_len..].to_vec())
        }
    }
}

fn as_rows(a: &BitSeq) -> SeqResult<(RowDesc, BTreeMap<Nat, RowDesc>)> {
    match a {
        BitSeq::RowMap { default_row, rows } => Ok((default_row.clone(), rows.clone())),
        BitSeq::FiniteMod { default, exceptions } => {
            let mut grouped: BTreeMap<Nat, BTreeSet<Nat>> = BTreeMap::new();
            for x in exceptions {
                let (m, c) = unpair(x);
                grouped.entry(m).or_default().insert(c);
            }
            let wrap = |s: BTreeSet<Nat>| {
                if *default {
                    RowDesc::finite_zeros(s)
                } else {
                    RowDesc::finite_ones(s)
                }
            };
            let default_row = if *default { RowDesc::AllOne } else { RowDesc::AllZero };
            Ok((default_row, grouped.into_iter().map(|(m, s)| (m, wrap(s))).collect()))
        }
        BitSeq::EventuallyPeriodic { .. } => {
            Err(SeqError::Unsupported { op: "row decomposition", repr: "eventually-periodic" })
        }
    }
}

/// Row `n` of the grid: `k ↦ a(⟨n, k⟩)`.
pub fn grid_row(a: &BitSeq, n: &Nat) -> SeqResult<BitSeq> {
    match a {
        BitSeq::EventuallyPeriodic { pre, per } => {
            let a_len = nat(pre.len() as u64);
            let mut k = 0u64;
            while pair(n, &nat(k)) < a_len {
                k += 1;
            }
            let p = 2 * per.len() as u64;
            let bits: Vec<bool> =
                (0..k + p).map(|j| a.eval(&pair(n, &nat(j)))).collect::<SeqResult<_>>()?;
            BitSeq::periodic(bits[..k as usize].to_vec(), bits[k as usize..].to_vec())
        }
        _ => {
            let (d, rows) = as_rows(a)?;
            rows.get(n).unwrap_or(&d).to_bitseq(&n.to_string())
        }
    }
}

/// `⟨x_n⟩(l) = x_{(l)_0}((l)_1)`; all rows must be finite modifications.
pub fn grid_assemble(default_row: &BitSeq, rows: &BTreeMap<Nat, BitSeq>) -> SeqResult<BitSeq> {
    let d = RowDesc::from_bitseq(default_row)?;
    let rows = rows
        .iter()
        .map(|(m, r)| Ok((m.clone(), RowDesc::from_bitseq(r)?)))
        .collect::<SeqResult<BTreeMap<_, _>>>()?;
    Ok(BitSeq::row_map(d, rows))
}

/// `τ_i(k)`: `⟨0, k⟩` for `i = 0`, otherwise `⟨⟨i, (k)_0⟩, (k)_1⟩`.
pub fn tau_index(i: u64, k: &Nat) -> Nat {
    if i == 0 {
        return pair(&Nat::zero(), k);
    }
    let (a, b) = unpair(k);
    pair(&pair(&nat(i), &a), &b)
}

/// Partial inverse of `τ_i`.
pub fn tau_index_inv(i: u64, x: &Nat) -> Option<Nat> {
    let (r, c) = unpair(x);
    if i == 0 {
        return r.is_zero().then_some(c);
    }
    let (j, a) = unpair(&r);
    (j == nat(i)).then(|| pair(&a, &c))
}

/// `τ̃_i(a) = a ∘ τ_i`.
pub fn tau_pull(i: u64, a: &BitSeq) -> SeqResult<BitSeq> {
    if i == 0 {
        return grid_row(a, &Nat::zero());
    }
    if let BitSeq::FiniteMod { exceptions, .. } = a {
        if exceptions.is_empty() {
            return Ok(a.clone());
        }
    }
    let (d, rows) = as_rows(a)?;
    let i_big = nat(i);
    let pulled = rows
        .into_iter()
        .filter_map(|(m, r)| {
            let (j, k) = unpair(&m);
            (j == i_big).then_some((k, r))
        })
        .collect();
    Ok(BitSeq::row_map(d, pulled))
}

/// `τ̃_s = τ̃_{s(0)} ∘ ⋯ ∘ τ̃_{s(|s|−1)}` for `s` over `ω ∖ {0}`.
pub fn tau_seq_pull(s: &[u64], a: &BitSeq) -> SeqResult<BitSeq> {
    if let Some(p) = s.iter().position(|&c| c == 0) {
        return Err(SeqError::ZeroInTauWord(p));
    }
    s.iter().rev().try_fold(a.clone(), |acc, &i| tau_pull(i, &acc))
}

/// Index of `τ̃_s(α)(n)` in `α`, via the word code `q`.
pub fn tau_seq_index(s: &[u64], n: &Nat) -> Nat {
    let (r, c) = unpair(n);
    let mut w = vec![r.to_u64().expect("row index fits in u64")];
    w.extend_from_slice(s);
    pair(&q_code(&w).expect("nonempty word"), &c)
}

/// `ρ₀(α)(m) = 1` iff row `m` of `α` has no 1.
pub fn rho0(a: &BitSeq) -> SeqResult<BitSeq> {
    match a {
        BitSeq::FiniteMod { default: true, .. } => Ok(BitSeq::zeros()),
        BitSeq::FiniteMod { default: false, exceptions } => {
            Ok(BitSeq::finite_mod(true, exceptions.iter().map(|x| unpair(x).0)))
        }
        BitSeq::RowMap { default_row, rows } => {
            let d = default_row.is_empty_row();
            let ex = rows.iter().filter(|(_, r)| r.is_empty_row() != d).map(|(m, _)| m.clone());
            Ok(BitSeq::finite_mod(d, ex))
        }
        BitSeq::EventuallyPeriodic { pre, per } => {
            // Beyond the preamble, α(⟨m, n⟩) depends on (m + n) mod 2P and n mod P.
            let a_len = pre.len() as u64;
            let p2 = 2 * per.len() as u64;
            let mut m0 = 0u64;
            while m0 * (m0 + 1) / 2 < a_len {
                m0 += 1;
            }
            let row_empty = |m: u64| -> SeqResult<bool> {
                let mut n = 0u64;
                while pair_small(m, n) < a_len {
                    if a.eval_u(pair_small(m, n))? {
                        return Ok(false);
                    }
                    n += 1;
                }
                for j in n..n + p2 {
                    if a.eval_u(pair_small(m, j))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            };
            let bits: Vec<bool> = (0..m0 + p2).map(row_empty).collect::<SeqResult<_>>()?;
            BitSeq::periodic(bits[..m0 as usize].to_vec(), bits[m0 as usize..].to_vec())
        }
    }
}

fn pair_small(m: u64, n: u64) -> u64 {
    crate::coding::pair_u64(m, n).expect("grid position fits in u64")
}

/// An index map `π : ω → ω` (possibly partial) with decidable fibers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberSpec {
    Identity,
    /// `k ↦ (k)_0`, the map attached to `ρ₀`.
    Row,
    /// `k ↦ k − n` for `k ≥ n`, the map attached to `S^n`.
    Translate(u64),
    /// Partial inverse of the `τ_s` index chain, attached to `τ̃_s`.
    TauInverse(Vec<u64>),
    /// `outer ∘ inner`.
    Compose(Box<FiberSpec>, Box<FiberSpec>),
}

impl FiberSpec {
    pub fn apply(&self, k: &Nat) -> Option<Nat> {
        match self {
            FiberSpec::Identity => Some(k.clone()),
            FiberSpec::Row => Some(unpair(k).0),
            FiberSpec::Translate(n) => (*k >= nat(*n)).then(|| k - *n),
            FiberSpec::TauInverse(s) => s.iter().rev().try_fold(k.clone(), |x, &i| tau_index_inv(i, &x)),
            FiberSpec::Compose(outer, inner) => inner.apply(k).and_then(|x| outer.apply(&x)),
        }
    }

    pub fn in_fiber(&self, k: &Nat, m: &Nat) -> bool {
        self.apply(k).as_ref() == Some(m)
    }

    /// Fiber of `m` intersected with `[0, bound)`.
    pub fn fiber_below(&self, m: &Nat, bound: u64) -> Vec<u64> {
        (0..bound).filter(|&k| self.in_fiber(&nat(k), m)).collect()
    }
}

/// `outer ∘ inner`: fibers are preimage compositions.
pub fn fiber_compose(outer: FiberSpec, inner: FiberSpec) -> FiberSpec {
    FiberSpec::Compose(Box::new(outer), Box::new(inner))
}

pub fn all_zero(a: &BitSeq) -> bool {
    a.is_all_zero()
}
