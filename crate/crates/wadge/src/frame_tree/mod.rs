//! The effective frame `(s_l^i)`, the tree `T_d` and its levels, branch
//! recipes with their `Δ`-profiles, and the dense-selector construction.
//!
//! Frame indices grow doubly exponentially along a chain, so words are kept
//! run-length encoded ([`SymWord`]) and tuple words use the symbolic letter
//! [`Letter::Diag`] for "the coordinate's own index".

mod selector;
mod word;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use num_traits::Zero;
use thiserror::Error;

use crate::coding::{nat, pair, unpair, word_index, word_rank, Alphabet, CodingError, Word};
use crate::levels::{LevelError, TupleSet};
use crate::sequences::{BitSeq, RowDesc};
use crate::Nat;

pub use selector::{
    build_selector, check_selector, selector_b_alpha, selector_shifted_delta, DenseFamily, SelectorEntry,
    SelectorOptions, SelectorResult,
};
pub use word::{Letter, SymWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error(transparent)]
    Coding(#[from] CodingError),
    #[error(transparent)]
    Level(#[from] LevelError),
    #[error("coordinate {coord} must be below d = {d}")]
    Coordinate { coord: u64, d: Alphabet },
    #[error("branch recipe needs a nonempty cycle")]
    EmptyCycle,
    #[error("no admissible extension for t = {t} at coordinate {coord} into O[{coord}][{open}]")]
    NotFound { t: String, coord: u64, open: usize },
    #[error("selector depth {depth} exceeded by word of length {len}")]
    Depth { depth: usize, len: usize },
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("selector check failed: {0}")]
    Check(String),
}

pub type FrameResult<T> = Result<T, FrameError>;

/// Decoded step `s_{l+1} = s_q · i · b_d(n) · 0^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepData {
    pub base: Nat,
    pub word: Word,
    pub padding: Nat,
}

/// The frame over alphabet `d`, with a cache of decoded tuple words.
#[derive(Debug)]
pub struct Frame {
    d: Alphabet,
    memo: Mutex<HashMap<Nat, SymWord>>,
}

impl Clone for Frame {
    fn clone(&self) -> Self {
        Frame::new(self.d)
    }
}

impl Frame {
    pub fn new(d: Alphabet) -> Self {
        Frame { d, memo: Mutex::new(HashMap::new()) }
    }

    pub fn d(&self) -> Alphabet {
        self.d
    }

    /// Index `l + 1` with `l = ⟨p, ⟨r, ⟨q, b_d^{-1}(t)⟩⟩⟩`.
    pub fn step(&self, q: &Nat, p: &Nat, r: &Nat, t: &[u64]) -> FrameResult<Nat> {
        let n = word_rank(self.d, t)?;
        let s = pair(r, &pair(q, &n));
        let l = pair(p, &s);
        assert!(l >= q + nat(t.len() as u64), "frame padding is nonnegative");
        Ok(l + 1u32)
    }

    /// Decodes index `l + 1 ≥ 1`.
    pub fn step_data(&self, l1: &Nat) -> Option<StepData> {
        if l1.is_zero() {
            return None;
        }
        let l = l1 - 1u32;
        let x = unpair(&unpair(&l).1).1;
        let (base, n) = unpair(&x);
        let word = word_index(self.d, &n);
        let used = &base + nat(word.len() as u64);
        assert!(l >= used, "frame padding is nonnegative");
        let padding = &l - used;
        Some(StepData { base, word, padding })
    }

    /// `(s_l^i)_{i∈d}` as a tuple word.
    pub fn tuple(&self, l: &Nat) -> SymWord {
        if let Some(w) = self.memo.lock().unwrap().get(l) {
            return w.clone();
        }
        let w = match self.step_data(l) {
            None => SymWord::new(),
            Some(sd) => {
                let mut w = self.tuple(&sd.base);
                w.push(Letter::Diag);
                for &c in &sd.word {
                    w.push(Letter::C(c));
                }
                w.push_run(Letter::C(0), sd.padding);
                w
            }
        };
        self.memo.lock().unwrap().insert(l.clone(), w.clone());
        w
    }

    /// `s_l^i`.
    pub fn elem(&self, l: &Nat, i: u64) -> FrameResult<SymWord> {
        self.check_coord(i)?;
        Ok(self.tuple(l).coord(i))
    }

    fn check_coord(&self, i: u64) -> FrameResult<()> {
        if self.d.contains(i) {
            Ok(())
        } else {
            Err(FrameError::Coordinate { coord: i, d: self.d })
        }
    }

    fn letter_bound(&self, pos: usize) -> u64 {
        let by_pos = pos as u64;
        match self.d {
            Alphabet::Finite(d) => by_pos.min(d - 1),
            Alphabet::Omega => by_pos,
        }
    }

    /// `𝒯^l`, sorted by tuple word.
    pub fn tree_level(&self, l: usize) -> Vec<LevelTuple> {
        if l == 0 {
            return vec![LevelTuple { form: Form::Root, word: Vec::new() }];
        }
        let mut out = BTreeSet::new();
        for q in 0..l {
            let base = self.tuple(&nat(q as u64)).explicit(l).expect("small index");
            if !SymWord::from_letters(&base).bounded_by_position() {
                continue;
            }
            let mut prefix = base;
            prefix.push(Letter::Diag);
            let mut t = Vec::with_capacity(l - q - 1);
            self.extend_tails(&prefix, l, &mut t, &mut out);
        }
        out.into_iter()
            .map(|word: Vec<Letter>| LevelTuple { form: self.form_of(&word), word })
            .collect()
    }

    fn extend_tails(&self, prefix: &[Letter], l: usize, t: &mut Vec<u64>, out: &mut BTreeSet<Vec<Letter>>) {
        let pos = prefix.len() + t.len();
        if pos == l {
            let mut w = prefix.to_vec();
            w.extend(t.iter().map(|&c| Letter::C(c)));
            out.insert(w);
            return;
        }
        for c in 0..=self.letter_bound(pos) {
            t.push(c);
            self.extend_tails(prefix, l, t, out);
            t.pop();
        }
    }

    /// `Common{l, t}` when a frame element extends past the last inserted
    /// digit, otherwise `Inserted{q, t}` at the last inserted digit.
    pub fn form_of(&self, word: &[Letter]) -> Form {
        let Some(q) = word.iter().rposition(|&x| x == Letter::Diag) else {
            return Form::Root;
        };
        let plain = |s: &[Letter]| s.iter().map(|x| x.at(0)).collect::<Word>();
        for l in (q + 1..=word.len()).rev() {
            let s = self.tuple(&nat(l as u64));
            if s.explicit(l).as_deref() == Some(&word[..l]) {
                return Form::Common { l: nat(l as u64), t: plain(&word[l..]) };
            }
        }
        Form::Inserted { q: nat(q as u64), t: plain(&word[q + 1..]) }
    }

    /// `c_l`: letters at position `l` over `𝒯^{l+1}`.
    pub fn level_alphabet(&self, l: usize) -> BTreeSet<Letter> {
        self.tree_level(l + 1).iter().map(|t| t.word[l]).collect()
    }

    /// `𝒯^l` with explicit coordinates, for finite `d`.
    pub fn level_tuple_set(&self, l: usize) -> FrameResult<TupleSet<Word>> {
        let d = self.d.finite().ok_or_else(|| FrameError::ResourceLimit("explicit coordinates need finite d".into()))?;
        let tuples = self
            .tree_level(l)
            .iter()
            .map(|t| (0..d).map(|i| t.coord(i)).collect())
            .collect();
        Ok(TupleSet::new(d as usize, tuples)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Form {
    Root,
    Common { l: Nat, t: Word },
    Inserted { q: Nat, t: Word },
}

/// A member of `𝒯^l`: its descriptor and its tuple word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelTuple {
    pub form: Form,
    pub word: Vec<Letter>,
}

impl LevelTuple {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn coord(&self, i: u64) -> Word {
        self.word.iter().map(|x| x.at(i)).collect()
    }
}

/// Triples `(p_k, r_k, t_k)`: a finite prefix then a repeating cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchRecipe {
    d: Alphabet,
    steps: Vec<(u64, u64, Word)>,
    cycle: Vec<(u64, u64, Word)>,
}

/// Chains whose indices exceed this many bits are not materialized.
const CHAIN_BITS: u64 = 1 << 20;

impl BranchRecipe {
    pub fn new(d: Alphabet, steps: Vec<(u64, u64, Word)>, cycle: Vec<(u64, u64, Word)>) -> FrameResult<Self> {
        if cycle.is_empty() {
            return Err(FrameError::EmptyCycle);
        }
        for (_, _, t) in steps.iter().chain(&cycle) {
            d.check(t)?;
        }
        Ok(BranchRecipe { d, steps, cycle })
    }

    pub fn d(&self) -> Alphabet {
        self.d
    }

    pub fn steps(&self) -> &[(u64, u64, Word)] {
        &self.steps
    }

    pub fn cycle(&self) -> &[(u64, u64, Word)] {
        &self.cycle
    }

    pub fn step(&self, k: usize) -> &(u64, u64, Word) {
        if k < self.steps.len() {
            &self.steps[k]
        } else {
            &self.cycle[(k - self.steps.len()) % self.cycle.len()]
        }
    }

    /// `m_0, …, m_k`.
    pub fn chain(&self, k: usize) -> FrameResult<Vec<Nat>> {
        let frame = Frame::new(self.d);
        let mut out = vec![Nat::zero()];
        for j in 0..k {
            let m = out.last().unwrap();
            if m.bits() > CHAIN_BITS {
                return Err(FrameError::ResourceLimit(format!("chain index m_{j} exceeds {CHAIN_BITS} bits")));
            }
            let (p, r, t) = self.step(j);
            out.push(frame.step(m, &nat(*p), &nat(*r), t)?);
        }
        Ok(out)
    }

    /// `m_k`.
    pub fn chain_at(&self, k: usize) -> FrameResult<Nat> {
        Ok(self.chain(k)?.pop().unwrap())
    }

    /// Tuple word `s_{m_k}`, built along the chain.
    pub fn chain_word(&self, k: usize) -> FrameResult<SymWord> {
        let ms = self.chain(k)?;
        let mut w = SymWord::new();
        for j in 0..k {
            let t = &self.step(j).2;
            w.push(Letter::Diag);
            for &c in t {
                w.push(Letter::C(c));
            }
            let pad = &ms[j + 1] - &ms[j] - 1u32 - nat(t.len() as u64);
            w.push_run(Letter::C(0), pad);
        }
        Ok(w)
    }

    /// `s_{m_k}^i | n` for any `m_k ≥ n`.
    pub fn prefix(&self, i: u64, n: usize) -> FrameResult<Word> {
        if !self.d.contains(i) {
            return Err(FrameError::Coordinate { coord: i, d: self.d });
        }
        let mut k = 0;
        while self.chain_at(k)? < nat(n as u64) {
            k += 1;
        }
        let w = self.chain_word(k)?.prefix(&nat(n as u64));
        Ok(w.explicit(n).unwrap().iter().map(|x| x.at(i)).collect())
    }

    /// `S(α₀ Δ α₁)` as a row map: ones at `m_k − 1` for `k ≥ 1`.
    pub fn delta(&self) -> FrameResult<BitSeq> {
        let n_steps = self.steps.len();
        let n_all = n_steps + self.cycle.len();
        let cycle_rows: BTreeSet<u64> = self.cycle.iter().map(|s| s.0).collect();
        // cycle witnesses are dropped when the first pass is too large to materialize
        let (ms, upto) = match self.chain(n_all) {
            Ok(ms) => (ms, n_all),
            Err(_) => (self.chain(n_steps)?, n_steps),
        };
        let mut finite: BTreeMap<Nat, BTreeSet<Nat>> = BTreeMap::new();
        let mut first: BTreeMap<u64, Option<Nat>> = cycle_rows.iter().map(|&p| (p, None)).collect();
        for k in 1..=upto {
            let (row, col) = unpair(&(&ms[k] - 1u32));
            let p = self.step(k - 1).0;
            debug_assert_eq!(row, nat(p));
            match first.get_mut(&p) {
                Some(slot) if slot.is_none() => *slot = Some(col),
                Some(_) => {}
                None => {
                    finite.entry(row).or_default().insert(col);
                }
            }
        }
        let mut rows: BTreeMap<Nat, RowDesc> =
            finite.into_iter().map(|(m, cols)| (m, RowDesc::finite_ones(cols))).collect();
        for (p, f) in first {
            rows.insert(nat(p), RowDesc::NonemptyInfiniteOnes { first: f });
        }
        Ok(BitSeq::row_map(RowDesc::AllZero, rows))
    }

    /// 1-positions of `S(α₀ Δ α₁)` below `n`, from explicit prefixes.
    pub fn delta_window(&self, n: usize) -> FrameResult<Vec<bool>> {
        let a0 = self.prefix(0, n + 1)?;
        let a1 = self.prefix(1, n + 1)?;
        Ok((1..=n).map(|x| a0[x] != a1[x]).collect())
    }
}

/// `m_k` of `rcp`.
pub fn recipe_chain(rcp: &BranchRecipe, k: usize) -> FrameResult<Nat> {
    rcp.chain_at(k)
}

/// `s_{m_k}^i | n`.
pub fn recipe_prefix(rcp: &BranchRecipe, i: u64, n: usize) -> FrameResult<Word> {
    rcp.prefix(i, n)
}

/// `S(α₀ Δ α₁)` for the branch of `rcp`.
pub fn recipe_delta(rcp: &BranchRecipe) -> FrameResult<BitSeq> {
    rcp.delta()
}

/// Membership of the branch in `S_C^d`.
pub fn s_c_member<E: From<FrameError>>(
    rcp: &BranchRecipe,
    member: impl FnOnce(&BitSeq) -> Result<bool, E>,
) -> Result<bool, E> {
    member(&rcp.delta()?)
}

/// `s_l^i` for small indices.
pub fn frame_elem(frame: &Frame, l: u64, i: u64) -> FrameResult<Word> {
    let w = frame.elem(&nat(l), i)?;
    Ok(w.explicit(l as usize).unwrap().iter().map(|x| x.at(0)).collect())
}
