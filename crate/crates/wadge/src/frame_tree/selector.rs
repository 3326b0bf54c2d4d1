//! The map `l : 2^{≤D} → ω ∖ {0}` choosing frame elements inside a dense
//! family of open sets, built in `b_2` order.

use std::collections::HashMap;

use num_traits::Zero;

use super::{Frame, FrameError, FrameResult, Letter, SymWord};
use crate::coding::{fst, nat, show_word, snd, word_index, Alphabet, Word};
use crate::sequences::BitSeq;
use crate::Nat;

/// Per coordinate `i`, the open sets `O^i_0, O^i_1, …`, each a list of
/// cylinder words. Missing coordinates are the whole space; indices past the
/// end of a list reuse its last entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseFamily {
    pub d: Alphabet,
    pub opens: Vec<Vec<Vec<Word>>>,
}

impl DenseFamily {
    pub fn trivial(d: Alphabet) -> Self {
        DenseFamily { d, opens: Vec::new() }
    }

    pub fn open(&self, i: u64, q: usize) -> Vec<Word> {
        match self.opens.get(i as usize).filter(|l| !l.is_empty()) {
            None => vec![Vec::new()],
            Some(list) => list[q.min(list.len() - 1)].clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectorOptions {
    /// Longest cylinder extension or explicit tail core considered.
    pub search_bound: usize,
}

impl Default for SelectorOptions {
    fn default() -> Self {
        SelectorOptions { search_bound: 64 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectorEntry {
    pub t: Word,
    pub l: Nat,
    /// Position of the last inserted coordinate digit.
    pub base: Nat,
    pub v: SymWord,
    /// Tuple word `(s_{l(t)}^i)_{i∈d}`.
    pub word: SymWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectorResult {
    pub d: Alphabet,
    pub depth: usize,
    /// Entries in `b_2` order.
    pub entries: Vec<SelectorEntry>,
    index: HashMap<Word, usize>,
}

impl SelectorResult {
    pub fn get(&self, t: &[u64]) -> Option<&SelectorEntry> {
        self.index.get(t).map(|&k| &self.entries[k])
    }

    pub fn l(&self, t: &[u64]) -> Option<&Nat> {
        self.get(t).map(|e| &e.l)
    }
}

fn b2_order(depth: usize) -> Vec<Word> {
    let count = (1u64 << (depth + 1)) - 1;
    (0..count).map(|n| word_index(Alphabet::Finite(2), &nat(n))).collect()
}

fn len_residues(len: usize) -> (Nat, Nat) {
    let n = nat(len as u64);
    (fst(&n), fst(&snd(&n)))
}

pub fn build_selector(fam: &DenseFamily, depth: usize, opts: SelectorOptions) -> FrameResult<SelectorResult> {
    let frame = Frame::new(fam.d);
    let mut entries: Vec<SelectorEntry> = Vec::new();
    let mut index: HashMap<Word, usize> = HashMap::new();
    for (r, tp) in b2_order(depth).into_iter().enumerate() {
        let (p, rr) = len_residues(tp.len());
        let entry = if tp.is_empty() {
            let d_word = extend_into_opens(SymWord::from_letters(&[Letter::Diag]), &tp, fam, opts)?;
            let (l, word) = realize(&frame, &Nat::zero(), &SymWord::new(), &d_word, &p, &rr, opts)?;
            SelectorEntry { t: tp, v: word.drop_prefix(&nat(1)), l, base: Nat::zero(), word }
        } else {
            let (t, eps) = tp.split_at(tp.len() - 1);
            let parent = &entries[index[t]];
            let prev = &entries[r - 1];
            let mut pre = parent.word.clone();
            if tp == [0] {
                pre.push(Letter::C(0));
            } else {
                pre.push(if eps[0] == 1 { Letter::Diag } else { Letter::C(0) });
                let chain0 = prev.word.coord(0);
                pre.append(&chain0.slice(&(&parent.l + 1u32), &prev.l));
                pre.push(Letter::C(0));
            }
            let d_word = extend_into_opens(pre, &tp, fam, opts)?;
            let (base, base_word) = if eps[0] == 1 {
                (parent.l.clone(), parent.word.clone())
            } else {
                (parent.base.clone(), parent.word.prefix(&parent.base))
            };
            let (l, word) = realize(&frame, &base, &base_word, &d_word, &p, &rr, opts)?;
            SelectorEntry { v: word.drop_prefix(&(&parent.l + 1u32)), t: tp, l, base, word }
        };
        index.insert(entry.t.clone(), entries.len());
        entries.push(entry);
    }
    Ok(SelectorResult { d: fam.d, depth, entries, index })
}

/// Appends `u^0 ⋯ u^{|t|}` so that coordinate `i` lands in `O^i_{|t|}`,
/// preferring the shortest extension.
fn extend_into_opens(mut w: SymWord, t: &[u64], fam: &DenseFamily, opts: SelectorOptions) -> FrameResult<SymWord> {
    for i in (0..=t.len() as u64).filter(|&i| fam.d.contains(i)) {
        let coord = w.coord(i);
        let len = coord.len();
        let mut best: Option<Word> = None;
        for c in fam.open(i, t.len()) {
            let c_len = nat(c.len() as u64);
            let ext = if c_len <= len {
                if coord.prefix(&c_len) != SymWord::from_plain(&c) {
                    continue;
                }
                Vec::new()
            } else {
                let k = coord.explicit(c.len()).expect("shorter than the cylinder");
                if k.iter().zip(&c).any(|(x, y)| x.at(0) != *y) {
                    continue;
                }
                c[k.len()..].to_vec()
            };
            let start = coord.len();
            let admissible = ext.len() <= opts.search_bound
                && ext
                    .iter()
                    .enumerate()
                    .all(|(k, &x)| fam.d.contains(x) && nat(x) <= &start + nat(k as u64));
            if admissible && best.as_ref().map_or(true, |b| ext.len() < b.len()) {
                best = Some(ext);
            }
        }
        let ext = best.ok_or_else(|| FrameError::NotFound { t: show_word(t), coord: i, open: t.len() })?;
        for x in ext {
            w.push(Letter::C(x));
        }
    }
    Ok(w)
}

/// Least padding of the tail after `base` whose frame step covers `target`.
fn realize(
    frame: &Frame,
    base: &Nat,
    base_word: &SymWord,
    target: &SymWord,
    p: &Nat,
    r: &Nat,
    opts: SelectorOptions,
) -> FrameResult<(Nat, SymWord)> {
    let tail = target.drop_prefix(&(base + 1u32));
    debug_assert!(!tail.has_diag());
    let core: Word = tail
        .without_trailing_zeros()
        .explicit(opts.search_bound)
        .ok_or_else(|| FrameError::ResourceLimit(format!("tail core longer than {}", opts.search_bound)))?
        .iter()
        .map(|x| x.at(0))
        .collect();
    let need = target.len();
    let mut t = core;
    let max_pad = need.bits() as usize + opts.search_bound;
    for _ in 0..=max_pad {
        let l1 = frame.step(base, p, r, &t)?;
        if l1 >= need {
            let mut word = base_word.clone();
            word.push(Letter::Diag);
            for &c in &t {
                word.push(Letter::C(c));
            }
            word.push_run(Letter::C(0), &l1 - base - 1u32 - nat(t.len() as u64));
            return Ok((l1, word));
        }
        t.push(0);
    }
    Err(FrameError::ResourceLimit(format!("no frame step of length {need} within {max_pad} padding letters")))
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> FrameResult<()> {
    if ok {
        Ok(())
    } else {
        Err(FrameError::Check(msg()))
    }
}

/// Verifies conditions (1)–(5) from the indices `l(t)` and words `v_t`
/// alone, decoding every frame element afresh.
pub fn check_selector(res: &SelectorResult, fam: &DenseFamily) -> FrameResult<()> {
    let frame = Frame::new(res.d);
    let order = b2_order(res.depth);
    let mut words: HashMap<&[u64], SymWord> = HashMap::new();
    for t in &order {
        let e = res.get(t).ok_or_else(|| FrameError::Check(format!("missing entry for {}", show_word(t))))?;
        check(!e.l.is_zero(), || format!("l({}) = 0", show_word(t)))?;
        let w = frame.tuple(&e.l);
        check(w.len() == e.l, || format!("length of s_l at {}", show_word(t)))?;
        words.insert(t, w);
    }
    for (k, t) in order.iter().enumerate() {
        let e = res.get(t).unwrap();
        let w = &words[t.as_slice()];
        let name = show_word(t);
        if t.is_empty() {
            check(w.letter_at(&Nat::zero()) == Some(Letter::Diag), || "s_l(∅) must start with i".into())?;
            let v = w.drop_prefix(&nat(1));
            check(!v.has_diag() && v == e.v, || "condition (2) at ∅".into())?;
        } else {
            let (parent, eps) = t.split_at(t.len() - 1);
            let pl = res.l(parent).unwrap();
            let pw = &words[parent];
            check(pw.is_prefix_of(w), || format!("condition (3): s_l({name}) does not extend its parent"))?;
            let want = if eps[0] == 1 { Letter::Diag } else { Letter::C(0) };
            check(w.letter_at(pl) == Some(want), || format!("condition (3): letter at l(t) for {name}"))?;
            let v = w.drop_prefix(&(pl + 1u32));
            check(!v.has_diag() && v == e.v, || format!("condition (3): v_{name} is not common"))?;
            let prev = &words[order[k - 1].as_slice()];
            check(prev.coord(0).is_prefix_of(&w.coord(0)), || format!("condition (4): chain breaks at {name}"))?;
        }
        check(w.coord(0).bounded_by_position(), || format!("condition (4): n-bound fails at {name}"))?;
        let (p, r) = len_residues(t.len());
        let l = &e.l - 1u32;
        check(fst(&l) == p && fst(&snd(&l)) == r, || format!("condition (5) at {name}"))?;
        for i in (0..=t.len() as u64).filter(|&i| res.d.contains(i)) {
            let c = w.coord(i);
            let hit = fam.open(i, t.len()).iter().any(|cyl| SymWord::from_plain(cyl).is_prefix_of(&c));
            check(hit, || format!("condition (1) at {name}, coordinate {i}"))?;
        }
    }
    Ok(())
}

fn alpha_prefix(ones: &[u64], m: u64) -> Word {
    (0..m).map(|k| u64::from(ones.contains(&k))).collect()
}

/// `B_α(m) = l(α|m) − 1` on the 1-positions of `α`.
pub fn selector_b_alpha(res: &SelectorResult, ones: &[u64]) -> FrameResult<Vec<(u64, Nat)>> {
    let mut ms = ones.to_vec();
    ms.sort_unstable();
    ms.dedup();
    ms.iter()
        .map(|&m| {
            if m as usize >= res.depth {
                return Err(FrameError::Depth { depth: res.depth, len: m as usize });
            }
            let l = res.l(&alpha_prefix(&ms, m)).expect("within depth");
            Ok((m, l - 1u32))
        })
        .collect()
}

/// `S(s^0 Δ s^1)` for `s = s_{l(α|D)}`: the shifted positions where the two
/// coordinates of the realized frame element differ.
pub fn selector_shifted_delta(res: &SelectorResult, ones: &[u64]) -> FrameResult<BitSeq> {
    if let Some(&m) = ones.iter().find(|&&m| m as usize >= res.depth) {
        return Err(FrameError::Depth { depth: res.depth, len: m as usize });
    }
    let e = res.get(&alpha_prefix(ones, res.depth as u64)).expect("within depth");
    let pos = e.word.diag_positions().into_iter().filter(|x| !x.is_zero()).map(|x| x - 1u32);
    Ok(BitSeq::finite_mod(false, pos))
}
