//! Integer and word codings: the diagonal pairing `⟨n, p⟩`, graded word
//! enumerations `b_d`, the prime coding for `d = ω`, and the word codes `p`, `q`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodingError {
    #[error("letter {letter} at index {index} is outside alphabet {alphabet}")]
    BadLetter { index: usize, letter: u64, alphabet: Alphabet },
    #[error("alphabet size must be at least 2, got {0}")]
    SmallAlphabet(u64),
    #[error("empty word has no code")]
    EmptyWord,
    #[error("prefix length {q} exceeds word length {len}")]
    OutOfRange { q: usize, len: usize },
    #[error("{0} is not a product of an initial segment of primes")]
    NotInSeq(Nat),
}

/// Alphabet bound `d` with `2 ≤ d ≤ ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    Finite(u64),
    Omega,
}

impl Alphabet {
    pub fn new(d: u64) -> Result<Self, CodingError> {
        if d < 2 {
            return Err(CodingError::SmallAlphabet(d));
        }
        Ok(Alphabet::Finite(d))
    }

    pub fn contains(&self, letter: u64) -> bool {
        match self {
            Alphabet::Finite(d) => letter < *d,
            Alphabet::Omega => true,
        }
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            Alphabet::Finite(d) => Some(*d),
            Alphabet::Omega => None,
        }
    }

    pub fn check(&self, w: &[u64]) -> Result<(), CodingError> {
        for (index, &letter) in w.iter().enumerate() {
            if !self.contains(letter) {
                return Err(CodingError::BadLetter { index, letter, alphabet: *self });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Finite(d) => write!(f, "{d}"),
            Alphabet::Omega => write!(f, "w"),
        }
    }
}

/// `T(k) = 0 + 1 + ⋯ + k`.
pub fn tri(k: &Nat) -> Nat {
    k * (k + 1u32) >> 1
}

pub fn pair(n: &Nat, p: &Nat) -> Nat {
    tri(&(n + p)) + p
}

pub fn pair_u64(n: u64, p: u64) -> Option<u64> {
    let s = n.checked_add(p)?;
    let t = (s as u128 * (s as u128 + 1)) / 2 + p as u128;
    u64::try_from(t).ok()
}

/// `M(l) = max{m : T(m) ≤ l}`.
pub fn diag_index(l: &Nat) -> Nat {
    let r: Nat = (l * 8u32 + 1u32).sqrt();
    let mut m = (r - 1u32) >> 1;
    while tri(&m) > *l {
        m -= 1u32;
    }
    while tri(&(&m + 1u32)) <= *l {
        m += 1u32;
    }
    m
}

pub fn unpair(l: &Nat) -> (Nat, Nat) {
    let m = diag_index(l);
    let p = l - tri(&m);
    (&m - &p, p)
}

pub fn unpair_u64(l: u64) -> (u64, u64) {
    let mut m = (((8 * l as u128 + 1) as f64).sqrt() as u64).saturating_sub(1) / 2;
    let t = |m: u64| (m as u128 * (m as u128 + 1) / 2) as u64;
    while t(m) > l {
        m -= 1;
    }
    while t(m + 1) <= l {
        m += 1;
    }
    let p = l - t(m);
    (m - p, p)
}

/// `(l)_0`.
pub fn fst(l: &Nat) -> Nat {
    unpair(l).0
}

/// `(l)_1`.
pub fn snd(l: &Nat) -> Nat {
    unpair(l).1
}

pub fn nat(x: u64) -> Nat {
    BigUint::from(x)
}

/// `b_d(n)`: the `n`-th word over `d` in graded lexicographic order
/// (finite `d`) or via the prime coding (`d = ω`).
pub fn word_index(d: Alphabet, n: &Nat) -> Word {
    match d {
        Alphabet::Finite(d) => graded_word(d, n),
        Alphabet::Omega => omega_word(n),
    }
}

/// `b_d^{-1}(w)`.
pub fn word_rank(d: Alphabet, w: &[u64]) -> Result<Nat, CodingError> {
    d.check(w)?;
    match d {
        Alphabet::Finite(d) => Ok(graded_rank(d, w)),
        Alphabet::Omega => Ok(seq_rank(&prime_code(w))),
    }
}

pub type Word = Vec<u64>;

fn graded_word(d: u64, n: &Nat) -> Word {
    let d_big = nat(d);
    let mut rest = n.clone();
    let mut block = Nat::one();
    let mut len = 0usize;
    while rest >= block {
        rest -= &block;
        block *= &d_big;
        len += 1;
    }
    let mut w = vec![0u64; len];
    for slot in w.iter_mut().rev() {
        *slot = (&rest % &d_big).to_u64().unwrap();
        rest /= &d_big;
    }
    w
}

fn graded_rank(d: u64, w: &[u64]) -> Nat {
    let d_big = nat(d);
    let mut below = Nat::zero();
    let mut block = Nat::one();
    for _ in 0..w.len() {
        below += &block;
        block *= &d_big;
    }
    let mut offset = Nat::zero();
    for &c in w {
        offset = offset * &d_big + c;
    }
    below + offset
}

/// First `k` primes.
pub fn primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut c = 2u64;
    while out.len() < k {
        if out.iter().take_while(|&&p| p * p <= c).all(|&p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// `I(s) = Π_j p_j^{s(j)+1}`, with `I(∅) = 1`.
pub fn prime_code(s: &[u64]) -> Nat {
    let ps = primes(s.len());
    let mut acc = Nat::one();
    for (p, &e) in ps.iter().zip(s) {
        acc *= nat(*p).pow((e + 1) as u32);
    }
    acc
}

/// Inverse of `I` on `Seq`.
pub fn prime_decode(x: &Nat) -> Result<Word, CodingError> {
    if x.is_zero() {
        return Err(CodingError::NotInSeq(x.clone()));
    }
    let mut rest = x.clone();
    let mut w = Vec::new();
    let mut c = 2u64;
    while !rest.is_one() {
        let p = nat(c);
        let mut e = 0u64;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e == 0 {
            return Err(CodingError::NotInSeq(x.clone()));
        }
        w.push(e - 1);
        c = next_prime(c);
    }
    Ok(w)
}

fn next_prime(p: u64) -> u64 {
    let mut c = p + 1;
    loop {
        if (2..).take_while(|k| k * k <= c).all(|k| c % k != 0) {
            return c;
        }
        c += 1;
    }
}

/// Number of elements of `Seq` strictly below `bound`.
pub fn seq_count_below(bound: &Nat) -> Nat {
    fn go(acc: &Nat, idx: usize, ps: &mut Vec<u64>, bound: &Nat) -> Nat {
        // acc is a member; count it and every extension by the next prime.
        let mut total = Nat::one();
        if ps.len() <= idx {
            let next = ps.last().map_or(2, |&p| next_prime(p));
            ps.push(next);
        }
        let p = nat(ps[idx]);
        let mut v = acc * &p;
        while v < *bound {
            total += go(&v, idx + 1, ps, bound);
            v *= &p;
        }
        total
    }
    if *bound <= Nat::one() {
        return Nat::zero();
    }
    go(&Nat::one(), 0, &mut Vec::new(), bound)
}

/// `ι(x)`: rank of `x ∈ Seq`.
pub fn seq_rank(x: &Nat) -> Nat {
    seq_count_below(x)
}

/// `b_ω(n) = (ι ∘ I)^{-1}(n)`.
fn omega_word(n: &Nat) -> Word {
    let mut hi = nat(2);
    while seq_count_below(&hi) <= *n {
        hi <<= 1;
    }
    let mut lo = Nat::one();
    // smallest x with count_below(x + 1) > n is the n-th element
    while lo < hi {
        let mid: Nat = (&lo + &hi) >> 1;
        if seq_count_below(&(&mid + 1u32)) > *n {
            hi = mid;
        } else {
            lo = mid + 1u32;
        }
    }
    prime_decode(&lo).expect("binary search lands on a member of Seq")
}

/// `p(s) = s(0)` for `|s| = 1`, otherwise `⟨p(s minus last), last⟩`.
pub fn p_code(s: &[u64]) -> Result<Nat, CodingError> {
    let (first, rest) = s.split_first().ok_or(CodingError::EmptyWord)?;
    let mut acc = nat(*first);
    for &c in rest {
        acc = pair(&acc, &nat(c));
    }
    Ok(acc)
}

/// `q(t) = t(0)` for `|t| = 1`, otherwise `⟨last, q(t minus last)⟩`.
pub fn q_code(t: &[u64]) -> Result<Nat, CodingError> {
    let (first, rest) = t.split_first().ok_or(CodingError::EmptyWord)?;
    let mut acc = nat(*first);
    for &c in rest {
        acc = pair(&nat(c), &acc);
    }
    Ok(acc)
}

pub fn reverse(s: &[u64]) -> Word {
    s.iter().rev().copied().collect()
}

/// `s − s|q`.
pub fn drop_prefix(s: &[u64], q: usize) -> Result<Word, CodingError> {
    if q > s.len() {
        return Err(CodingError::OutOfRange { q, len: s.len() });
    }
    Ok(s[q..].to_vec())
}

/// `s* = s − s|1`.
pub fn tail(s: &[u64]) -> Result<Word, CodingError> {
    if s.is_empty() {
        return Err(CodingError::EmptyWord);
    }
    drop_prefix(s, 1)
}

pub fn show_word(w: &[u64]) -> String {
    if w.iter().all(|&c| c < 10) {
        w.iter().map(|c| c.to_string()).collect()
    } else {
        let parts: Vec<String> = w.iter().map(|c| c.to_string()).collect();
        format!("<{}>", parts.join(","))
    }
}

/// Parses `01101`, `<3,10,2>`, `e` or the empty string.
pub fn parse_word(s: &str) -> Option<Word> {
    let s = s.trim();
    if s.is_empty() || s == "e" {
        return Some(Vec::new());
    }
    if let Some(inner) = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
        if inner.trim().is_empty() {
            return Some(Vec::new());
        }
        return inner.split(',').map(|x| x.trim().parse().ok()).collect();
    }
    s.chars().map(|c| c.to_digit(10).map(u64::from)).collect()
}
