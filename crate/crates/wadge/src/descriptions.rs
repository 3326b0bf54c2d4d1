//! Second-type descriptions `u ∈ 𝒟` of non-self-dual Wadge classes.
//!
//! A description is `0^∞`, a negation `ξ 1 u*`, or a countable union
//! `ξ 2 ⟨u_p⟩`; child sequences are an explicit prefix followed by a
//! repeated tail.
//!
//! Literal grammar: `0`, `neg(u)`, `u(xi; c0, c1; rep=t)`, `lift(eta; u)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coding::unpair;
use crate::ordinals::Ord;
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescError {
    #[error("invalid description: {0}")]
    Invalid(String),
    #[error("description literal error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("the union head must be at least 1")]
    ZeroHead,
}

pub type DescResult<T> = Result<T, DescError>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Desc {
    Zero,
    Neg { xi: Ord, inner: Box<Desc> },
    Union { xi: Ord, children: ChildSeq },
}

/// `⟨u_p⟩` as `explicit[0], explicit[1], …, tail, tail, …`; the explicit
/// prefix is kept as short as possible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChildSeq {
    explicit: Vec<Desc>,
    tail: Box<Desc>,
}

impl ChildSeq {
    pub fn new(mut explicit: Vec<Desc>, tail: Desc) -> Self {
        while explicit.last() == Some(&tail) {
            explicit.pop();
        }
        ChildSeq { explicit, tail: Box::new(tail) }
    }

    pub fn constant(tail: Desc) -> Self {
        ChildSeq::new(Vec::new(), tail)
    }

    pub fn explicit(&self) -> &[Desc] {
        &self.explicit
    }

    pub fn tail(&self) -> &Desc {
        &self.tail
    }

    /// `u_p`.
    pub fn get(&self, p: usize) -> &Desc {
        self.explicit.get(p).unwrap_or(&self.tail)
    }

    pub fn get_nat(&self, p: &Nat) -> &Desc {
        match usize::try_from(p) {
            Ok(p) => self.get(p),
            Err(_) => &self.tail,
        }
    }

    /// Explicit entries followed by the tail representative.
    pub fn members(&self) -> impl Iterator<Item = &Desc> {
        self.explicit.iter().chain(std::iter::once(&*self.tail))
    }

    pub fn map(&self, mut f: impl FnMut(&Desc) -> Desc) -> ChildSeq {
        ChildSeq::new(self.explicit.iter().map(&mut f).collect(), f(&self.tail))
    }

    fn try_map(&self, mut f: impl FnMut(&Desc) -> DescResult<Desc>) -> DescResult<ChildSeq> {
        let explicit = self.explicit.iter().map(&mut f).collect::<DescResult<_>>()?;
        Ok(ChildSeq::new(explicit, f(&self.tail)?))
    }
}

fn one() -> Ord {
    Ord::finite(1)
}

impl Desc {
    /// `u(0)`.
    pub fn head(&self) -> Ord {
        match self {
            Desc::Zero => Ord::zero(),
            Desc::Neg { xi, .. } | Desc::Union { xi, .. } => xi.clone(),
        }
    }

    /// `u(0) 1 u`, without validation.
    pub fn neg(inner: Desc) -> Desc {
        Desc::Neg { xi: inner.head(), inner: Box::new(inner) }
    }

    /// `ξ 2 ⟨u_p⟩`, checking the head constraint of this node only.
    pub fn union(xi: Ord, explicit: Vec<Desc>, tail: Desc) -> DescResult<Desc> {
        if xi.is_zero() {
            return Err(DescError::ZeroHead);
        }
        let children = ChildSeq::new(explicit, tail);
        for (p, c) in children.members().enumerate() {
            let h = c.head();
            if !h.is_zero() && h < xi {
                return Err(DescError::Invalid(format!("child {p} has head {h} below {xi}")));
            }
        }
        Ok(Desc::Union { xi, children })
    }

    pub fn depth(&self) -> usize {
        match self {
            Desc::Zero => 0,
            Desc::Neg { inner, .. } => 1 + inner.depth(),
            Desc::Union { children, .. } => 1 + children.members().map(Desc::depth).max().unwrap(),
        }
    }

    /// `u(n)` in the coded sequence `u ∈ ω_1^ω`.
    pub fn code_at(&self, n: &Nat) -> Ord {
        match self {
            Desc::Zero => Ord::zero(),
            _ if *n == Nat::from(0u32) => self.head(),
            Desc::Neg { .. } if *n == Nat::from(1u32) => one(),
            Desc::Union { .. } if *n == Nat::from(1u32) => Ord::finite(2),
            Desc::Neg { inner, .. } => inner.code_at(&(n - 2u32)),
            Desc::Union { children, .. } => {
                let (p, q) = unpair(&(n - 2u32));
                children.get_nat(&p).code_at(&q)
            }
        }
    }

    pub fn code_prefix(&self, len: u64) -> Vec<Ord> {
        (0..len).map(|n| self.code_at(&Nat::from(n))).collect()
    }
}

pub fn validate(u: &Desc) -> bool {
    match u {
        Desc::Zero => true,
        Desc::Neg { xi, inner } => inner.head() == *xi && validate(inner),
        Desc::Union { xi, children } => {
            !xi.is_zero()
                && children.members().all(|c| {
                    let h = c.head();
                    (h.is_zero() || h >= *xi) && validate(c)
                })
        }
    }
}

fn require_valid(u: &Desc) -> DescResult<()> {
    if validate(u) {
        Ok(())
    } else {
        Err(DescError::Invalid(u.to_string()))
    }
}

/// `u(0) 1 u`.
pub fn dual(u: &Desc) -> DescResult<Desc> {
    require_valid(u)?;
    Ok(Desc::neg(u.clone()))
}

/// `u^η`.
pub fn lift(u: &Desc, eta: &Ord) -> DescResult<Desc> {
    require_valid(u)?;
    Ok(lift_unchecked(u, eta))
}

fn lifted_head(xi: &Ord, eta: &Ord) -> Ord {
    one().add(eta).add(&xi.sub(&one()).expect("head at least 1"))
}

fn lift_unchecked(u: &Desc, eta: &Ord) -> Desc {
    if u.head().is_zero() {
        return u.clone();
    }
    match u {
        Desc::Zero => unreachable!(),
        Desc::Neg { xi, inner } => Desc::Neg { xi: lifted_head(xi, eta), inner: Box::new(lift_unchecked(inner, eta)) },
        Desc::Union { xi, children } => Desc::Union {
            xi: lifted_head(xi, eta),
            children: children.map(|c| lift_unchecked(c, eta)),
        },
    }
}

/// Inverse of `lift(·, ξ − 1)` on descriptions whose nonzero heads are all
/// at least `ξ`.
pub fn unlift(u: &Desc, xi: &Ord) -> DescResult<Desc> {
    let h = u.head();
    if h.is_zero() {
        return Ok(u.clone());
    }
    let Ok(rest) = h.sub(xi) else {
        return Err(DescError::Invalid(format!("head {h} below {xi}")));
    };
    let head = one().add(&rest);
    Ok(match u {
        Desc::Zero => unreachable!(),
        Desc::Neg { inner, .. } => Desc::Neg { xi: head, inner: Box::new(unlift(inner, xi)?) },
        Desc::Union { children, .. } => Desc::Union { xi: head, children: children.try_map(|c| unlift(c, xi))? },
    })
}

/// Edge label in a description tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Branch {
    Inner,
    Child(usize),
    Tail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescTree {
    pub desc: Desc,
    pub children: Vec<(Branch, DescTree)>,
}

impl DescTree {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|(_, t)| t.size()).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.children.iter().map(|(_, t)| t.height()).max().unwrap_or(0)
    }
}

pub fn desc_tree(u: &Desc) -> DescTree {
    let children = match u {
        Desc::Zero => Vec::new(),
        Desc::Neg { inner, .. } => vec![(Branch::Inner, desc_tree(inner))],
        Desc::Union { children, .. } => {
            let mut out: Vec<(Branch, DescTree)> = Vec::new();
            let mut seen: Vec<&Desc> = Vec::new();
            for (p, c) in children.explicit().iter().enumerate() {
                if !seen.contains(&c) {
                    seen.push(c);
                    out.push((Branch::Child(p), desc_tree(c)));
                }
            }
            if !seen.contains(&children.tail()) {
                out.push((Branch::Tail, desc_tree(children.tail())));
            }
            out
        }
    };
    DescTree { desc: u.clone(), children }
}

/// Root-to-leaf node sequences of the description tree.
pub fn maximal_seqs(u: &Desc) -> Vec<Vec<Desc>> {
    fn walk(t: &DescTree, path: &mut Vec<Desc>, out: &mut Vec<Vec<Desc>>) {
        path.push(t.desc.clone());
        if t.children.is_empty() {
            out.push(path.clone());
        }
        for (_, c) in &t.children {
            walk(c, path, out);
        }
        path.pop();
    }
    let mut out = Vec::new();
    walk(&desc_tree(u), &mut Vec::new(), &mut out);
    out
}

/// Negations occur only right above the final `0^∞` of a branch.
pub fn is_normalized(u: &Desc) -> bool {
    match u {
        Desc::Zero => true,
        Desc::Neg { inner, .. } => **inner == Desc::Zero,
        Desc::Union { children, .. } => children.members().all(is_normalized),
    }
}

/// A normalized description of the same class with the same head.
pub fn normalize(u: &Desc) -> DescResult<Desc> {
    require_valid(u)?;
    Ok(normal(u))
}

fn normal(u: &Desc) -> Desc {
    match u {
        Desc::Zero => Desc::Zero,
        Desc::Neg { inner, .. } => negate_normal(&normal(inner)),
        Desc::Union { xi, children } => Desc::Union { xi: xi.clone(), children: children.map(normal) },
    }
}

/// Normalized description of the dual class of a normalized `w`.
fn negate_normal(w: &Desc) -> Desc {
    match w {
        Desc::Zero => Desc::neg(Desc::Zero),
        Desc::Neg { inner, .. } => (**inner).clone(),
        Desc::Union { xi, children } => Desc::Union { xi: xi.clone(), children: children.map(negate_normal) },
    }
}

/// Code of `S_ξ({full}, {∅})`: `ξ 2 ⟨0^∞, ¬0^∞, ¬0^∞, …⟩`.
pub fn borel_sigma_desc(xi: &Ord) -> DescResult<Desc> {
    Desc::union(xi.clone(), vec![Desc::Zero], Desc::neg(Desc::Zero))
}

impl fmt::Display for Desc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Desc::Zero => write!(f, "0"),
            Desc::Neg { inner, .. } => write!(f, "neg({inner})"),
            Desc::Union { xi, children } => {
                write!(f, "u({xi}; ")?;
                if !children.explicit().is_empty() {
                    let parts: Vec<String> = children.explicit().iter().map(|c| c.to_string()).collect();
                    write!(f, "{}; ", parts.join(", "))?;
                }
                write!(f, "rep={})", children.tail())
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, col: usize, msg: impl Into<String>) -> DescResult<T> {
        Err(DescError::Parse { col, msg: msg.into() })
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

    fn expect(&mut self, tok: &str) -> DescResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(self.pos, format!("expected '{tok}'"))
        }
    }

    fn ordinal(&mut self) -> DescResult<Ord> {
        self.ws();
        let start = self.pos;
        let len = self.src[start..].find([';', ')', ',']).unwrap_or(self.src.len() - start);
        self.pos += len;
        self.src[start..self.pos]
            .trim()
            .parse()
            .or_else(|e| self.err(start, format!("bad ordinal: {e}")))
    }

    fn desc(&mut self) -> DescResult<Desc> {
        self.ws();
        let start = self.pos;
        if self.eat("neg(") {
            let inner = self.desc()?;
            self.expect(")")?;
            return Ok(Desc::neg(inner));
        }
        if self.eat("lift(") {
            let eta = self.ordinal()?;
            self.expect(";")?;
            let inner = self.desc()?;
            self.expect(")")?;
            return Ok(lift_unchecked(&inner, &eta));
        }
        if self.eat("u(") {
            let xi_col = self.pos;
            let xi = self.ordinal()?;
            if xi.is_zero() {
                return self.err(xi_col, "union head must be at least 1");
            }
            self.expect(";")?;
            let mut explicit = Vec::new();
            loop {
                if self.eat("rep") {
                    self.expect("=")?;
                    break;
                }
                explicit.push(self.child(&xi)?);
                if !self.eat(",") {
                    self.expect(";")?;
                    self.expect("rep")?;
                    self.expect("=")?;
                    break;
                }
            }
            let tail = self.child(&xi)?;
            self.expect(")")?;
            return Ok(Desc::Union { xi, children: ChildSeq::new(explicit, tail) });
        }
        if self.eat("0") {
            return Ok(Desc::Zero);
        }
        self.err(start, "expected 0, neg(..), u(..) or lift(..)")
    }

    fn child(&mut self, xi: &Ord) -> DescResult<Desc> {
        self.ws();
        let col = self.pos;
        let c = self.desc()?;
        let h = c.head();
        if !h.is_zero() && h < *xi {
            return self.err(col, format!("child head {h} is below the union head {xi} and nonzero"));
        }
        Ok(c)
    }
}

impl FromStr for Desc {
    type Err = DescError;

    fn from_str(s: &str) -> DescResult<Desc> {
        let mut p = Parser { src: s, pos: 0 };
        let d = p.desc()?;
        p.ws();
        if p.pos != s.len() {
            return p.err(p.pos, "trailing input");
        }
        debug_assert!(validate(&d));
        Ok(d)
    }
}
