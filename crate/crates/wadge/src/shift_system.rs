//! The coordinate-permutation system `(S_n, ψ_n, φ_n, h_n, c)` with
//! `c(α)(k) = α(2k)`, tabulated up to a scan bound.
//!
//! `S_0 = ∅`, `ψ_0 = Id`, `S_{n+1} = φ_n[2ω] ∪ {0, …, n}`, and `ψ_{n+1}`
//! matches `ω∖S_{n+1}` with `ω∖2S_{n+1}` rank to rank, avoiding every
//! earlier `ψ_q` at even ranks.

use std::collections::{BTreeSet, HashMap};

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::coding::nat;
use crate::sequences::{BitSeq, SeqError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShiftError {
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error("level {n} exceeds n_max = {n_max}")]
    Level { n: usize, n_max: usize },
    #[error("{what}({n}, {x}) is outside the tabulated range")]
    Bound { what: &'static str, n: usize, x: u64 },
    #[error("{x} is not in the domain of {what}_{n}")]
    Domain { what: &'static str, n: usize, x: u64 },
    #[error("no density witness for {word} at level {n} within {bound} positions")]
    SearchBound { n: usize, word: String, bound: u64 },
}

pub type ShiftResult<T> = Result<T, ShiftError>;

pub const DEFAULT_BOUND: u64 = 4096;

#[derive(Debug, Clone)]
struct Level {
    /// `S_n` on `[0, bound)`; `None` past the last decidable point.
    in_s: Vec<Option<bool>>,
    psi: HashMap<u64, u64>,
    psi_inv: HashMap<u64, u64>,
}

#[derive(Debug, Clone)]
pub struct SystemState {
    n_max: usize,
    bound: u64,
    levels: Vec<Level>,
}

impl SystemState {
    pub fn new(n_max: usize) -> Self {
        Self::with_bound(n_max, DEFAULT_BOUND)
    }

    pub fn with_bound(n_max: usize, bound: u64) -> Self {
        let id: HashMap<u64, u64> = (0..bound).map(|x| (x, x)).collect();
        let mut levels = vec![Level { in_s: vec![Some(false); bound as usize], psi: id.clone(), psi_inv: id }];
        for n in 0..n_max {
            let next = build_next(&levels, n, bound);
            levels.push(next);
        }
        SystemState { n_max, bound, levels }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    fn level(&self, n: usize) -> ShiftResult<&Level> {
        self.levels.get(n).ok_or(ShiftError::Level { n, n_max: self.n_max })
    }

    pub fn in_s(&self, n: usize, x: u64) -> ShiftResult<bool> {
        self.level(n)?
            .in_s
            .get(x as usize)
            .copied()
            .flatten()
            .ok_or(ShiftError::Bound { what: "S", n, x })
    }

    /// `x ∈ 2S_n`.
    pub fn in_double_s(&self, n: usize, x: u64) -> ShiftResult<bool> {
        Ok(x % 2 == 0 && self.in_s(n, x / 2)?)
    }

    pub fn psi(&self, n: usize, x: u64) -> ShiftResult<u64> {
        if self.in_s(n, x)? {
            return Err(ShiftError::Domain { what: "psi", n, x });
        }
        self.level(n)?.psi.get(&x).copied().ok_or(ShiftError::Bound { what: "psi", n, x })
    }

    pub fn psi_inv(&self, n: usize, j: u64) -> ShiftResult<u64> {
        if self.in_double_s(n, j)? {
            return Err(ShiftError::Domain { what: "psi_inv", n, x: j });
        }
        self.level(n)?.psi_inv.get(&j).copied().ok_or(ShiftError::Bound { what: "psi_inv", n, x: j })
    }

    pub fn phi(&self, n: usize, k: u64) -> ShiftResult<u64> {
        if self.in_double_s(n, k)? {
            Ok(k / 2)
        } else {
            self.psi_inv(n, k)
        }
    }

    /// `h_n(α)(k)`.
    pub fn h_at(&self, n: usize, a: Point<'_>, k: u64) -> ShiftResult<bool> {
        if self.in_s(n, k)? {
            a(2 * k)
        } else {
            a(self.psi(n, k)?)
        }
    }

    /// `h_n^{-1}(β)(j)`.
    pub fn h_inv_at(&self, n: usize, b: Point<'_>, j: u64) -> ShiftResult<bool> {
        if self.in_double_s(n, j)? {
            b(j / 2)
        } else {
            b(self.psi_inv(n, j)?)
        }
    }

    pub fn h(&self, n: usize, a: &BitSeq, window: u64) -> ShiftResult<Vec<bool>> {
        let a = point(a);
        (0..window).map(|k| self.h_at(n, &a, k)).collect()
    }

    pub fn h_inv(&self, n: usize, b: &BitSeq, window: u64) -> ShiftResult<Vec<bool>> {
        let b = point(b);
        (0..window).map(|j| self.h_inv_at(n, &b, j)).collect()
    }

    /// Compares `c h_n^{-1} h_p` with `c h_n^{-1} c` on `a` below `window`.
    pub fn identity_check(&self, n: usize, p: usize, a: &BitSeq, window: u64) -> ShiftResult<IdentityReport> {
        assert!(n < p, "identity_check needs n < p");
        let a = point(a);
        let hp = |x: u64| self.h_at(p, &a, x);
        let ca = |x: u64| c_at(&a, x);
        for k in 0..window {
            let lhs = self.h_inv_at(n, &hp, 2 * k)?;
            let rhs = self.h_inv_at(n, &ca, 2 * k)?;
            if lhs != rhs {
                return Ok(IdentityReport { n, p, window, counterexample: Some((k, lhs, rhs)) });
            }
        }
        Ok(IdentityReport { n, p, window, counterexample: None })
    }

    /// For every word of length `len`, a finite extension whose cylinder
    /// lies inside `D_n`.
    pub fn density_probe(&self, n: usize, len: usize) -> ShiftResult<DensityReport> {
        self.level(n)?;
        let witnesses = (0..1u64 << len)
            .map(|bits| {
                let word: Vec<bool> = (0..len).map(|i| bits >> (len - 1 - i) & 1 == 1).collect();
                self.density_witness(n, &word)
            })
            .collect::<ShiftResult<_>>()?;
        Ok(DensityReport { n, len, witnesses })
    }

    fn density_witness(&self, n: usize, word: &[bool]) -> ShiftResult<DensityWitness> {
        let start = word.len() as u64;
        let mut fixed: HashMap<u64, bool> = (0..start).map(|i| (i, word[i as usize])).collect();
        let mut diffs = Vec::new();
        let fail = || ShiftError::SearchBound { n, word: show_bits(word), bound: self.bound };
        let c_vs_n = |k: u64| -> ShiftResult<Option<(u64, u64)>> {
            if self.in_s(n, k)? {
                return Ok(None);
            }
            Ok(Some((2 * k, self.psi(n, k)?)))
        };
        let k = self.pick(&mut fixed, &c_vs_n)?.ok_or_else(fail)?;
        diffs.push((None, k));
        for q in 0..n {
            let n_vs_q = |k: u64| -> ShiftResult<Option<(u64, u64)>> {
                if self.in_s(n, k)? {
                    return Ok(None);
                }
                Ok(Some((self.psi(n, k)?, self.psi(q, k)?)))
            };
            let k = self.pick(&mut fixed, &n_vs_q)?.ok_or_else(fail)?;
            diffs.push((Some(q), k));
        }
        let mut ones: Vec<u64> = fixed.iter().filter(|(_, &b)| b).map(|(&x, _)| x).collect();
        ones.sort_unstable();
        let prefix = fixed.keys().max().map_or(0, |m| m + 1);
        Ok(DensityWitness { word: word.to_vec(), ones, prefix, diffs })
    }

    /// First `k` whose coordinates `(x, y)` are fresh and distinct; fixes
    /// `x ↦ 1`, `y ↦ 0`.
    fn pick(&self, fixed: &mut HashMap<u64, bool>, f: Pair<'_>) -> ShiftResult<Option<u64>> {
        for k in 0..self.bound {
            let Some((x, y)) = f(k)? else { continue };
            if x != y && !fixed.contains_key(&x) && !fixed.contains_key(&y) {
                fixed.insert(x, true);
                fixed.insert(y, false);
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// Re-evaluates a witness: the point extends the word, and the listed
    /// coordinates separate `c`, `h_n` and each `h_q` on the cylinder.
    pub fn check_density_witness(&self, n: usize, w: &DensityWitness) -> ShiftResult<bool> {
        let a = BitSeq::finite_mod(false, w.ones.iter().map(|&x| nat(x)));
        let pa = point(&a);
        if w.word.iter().enumerate().any(|(i, &b)| a.eval_u(i as u64) != Ok(b)) {
            return Ok(false);
        }
        let inside = |k: u64, q: usize| -> ShiftResult<bool> {
            let x = if self.in_s(q, k)? { 2 * k } else { self.psi(q, k)? };
            Ok(x < w.prefix)
        };
        let mut c_diff = false;
        let mut q_diff = vec![false; n];
        for &(q, k) in &w.diffs {
            let hn = self.h_at(n, &pa, k)?;
            match q {
                None => c_diff |= 2 * k < w.prefix && inside(k, n)? && c_at(&pa, k)? != hn,
                Some(q) => q_diff[q] |= inside(k, n)? && inside(k, q)? && self.h_at(q, &pa, k)? != hn,
            }
        }
        Ok(c_diff && q_diff.iter().all(|&b| b))
    }
}

fn build_next(levels: &[Level], n: usize, bound: u64) -> Level {
    let cur = &levels[n];
    let in_s: Vec<Option<bool>> = (0..bound)
        .map(|x| {
            if x <= n as u64 {
                return Some(true);
            }
            match cur.in_s[x as usize]? {
                true => Some(true),
                false => cur.psi.get(&x).map(|y| y % 2 == 0),
            }
        })
        .collect();
    let known = in_s.iter().take_while(|b| b.is_some()).count() as u64;
    let mut targets: BTreeSet<u64> =
        (0..2 * known).filter(|&t| t % 2 == 1 || in_s[(t / 2) as usize] == Some(false)).collect();
    let mut psi = HashMap::new();
    let mut psi_inv = HashMap::new();
    let domain = (0..known).filter(|&x| in_s[x as usize] == Some(false));
    for (rank, x) in domain.enumerate() {
        let avoid: Vec<u64> = if rank % 2 == 0 {
            levels.iter().filter_map(|l| l.psi.get(&x).copied()).collect()
        } else {
            Vec::new()
        };
        let Some(&t) = targets.iter().find(|t| !avoid.contains(t)) else { break };
        targets.remove(&t);
        psi.insert(x, t);
        psi_inv.insert(t, x);
    }
    Level { in_s, psi, psi_inv }
}

type Pair<'a> = &'a dyn Fn(u64) -> ShiftResult<Option<(u64, u64)>>;

pub type Point<'a> = &'a dyn Fn(u64) -> ShiftResult<bool>;

fn point(a: &BitSeq) -> impl Fn(u64) -> ShiftResult<bool> + '_ {
    move |k| Ok(a.eval_u(k)?)
}

/// `c(α)(k) = α(2k)`.
pub fn c_at(a: Point<'_>, k: u64) -> ShiftResult<bool> {
    a(2 * k)
}

pub fn c_map(a: &BitSeq) -> Result<BitSeq, SeqError> {
    match a {
        BitSeq::FiniteMod { default, exceptions } => Ok(BitSeq::finite_mod(
            *default,
            exceptions.iter().filter(|x| x.to_u64().map_or(true, |x| x % 2 == 0)).map(|x| x / 2u32),
        )),
        _ => {
            let (pre, per) = a.as_lasso()?;
            let at = |i: usize| if i < pre.len() { pre[i] } else { per[(i - pre.len()) % per.len()] };
            let start = pre.len().div_ceil(2);
            BitSeq::periodic((0..start).map(|k| at(2 * k)).collect(), (start..start + per.len()).map(|k| at(2 * k)).collect())
        }
    }
}

fn show_bits(w: &[bool]) -> String {
    w.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub n: usize,
    pub p: usize,
    pub window: u64,
    /// `(k, lhs, rhs)` at the first disagreement.
    pub counterexample: Option<(u64, bool, bool)>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityWitness {
    pub word: Vec<bool>,
    /// 1-set of the witness point; every other coordinate is 0.
    pub ones: Vec<u64>,
    /// Length of the cylinder fixed by the witness.
    pub prefix: u64,
    /// `(None, k)`: `c` and `h_n` differ at `k`; `(Some(q), k)`: `h_n` and `h_q` do.
    pub diffs: Vec<(Option<usize>, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub n: usize,
    pub len: usize,
    pub witnesses: Vec<DensityWitness>,
}
