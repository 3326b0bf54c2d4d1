//! Membership evaluators for the complete sets `H_u`, `C_ξ`, `C_ξ^ε`, `V_ε`,
//! and the invariance checks for compatibility with comeager sets.
//!
//! `H_u` is keyed on a [`ConstructionTerm`], the generative history of `u`.
//! Term grammar: `z`, `d(t)`, `s(t0, t1; rep=t)`, `L(eta; t)`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::coding::{fst, pair, unpair};
use crate::descriptions::{dual, lift, unlift, ChildSeq, Desc, DescError};
use crate::frame_tree::{selector_b_alpha, selector_shifted_delta, FrameError, SelectorResult};
use crate::ordinals::{Kind, Ord};
use crate::sequences::{rho0_pow, tau_index, tau_pull, BitSeq, SeqError};
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error(transparent)]
    Desc(#[from] DescError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("term literal error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("xi must be at least 1")]
    XiZero,
    #[error("rewiring: {0}")]
    Rewire(String),
    #[error("description is not normalized: {0}")]
    NotNormalized(String),
    #[error("window evaluator needs {0}")]
    Window(&'static str),
}

pub type EvalResult<T> = Result<T, EvalError>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConstructionTerm {
    TZero,
    TDual(Box<ConstructionTerm>),
    TSup { explicit: Vec<ConstructionTerm>, tail: Box<ConstructionTerm> },
    TLift { eta: Ord, t: Box<ConstructionTerm> },
}

use ConstructionTerm::*;

impl ConstructionTerm {
    pub fn dual(t: ConstructionTerm) -> Self {
        TDual(Box::new(t))
    }

    pub fn sup(explicit: Vec<ConstructionTerm>, tail: ConstructionTerm) -> Self {
        TSup { explicit, tail: Box::new(tail) }
    }

    pub fn lift(eta: Ord, t: ConstructionTerm) -> Self {
        TLift { eta, t: Box::new(t) }
    }

    /// `t_p` of a sup node.
    pub fn child(&self, p: &Nat) -> Option<&ConstructionTerm> {
        match self {
            TSup { explicit, tail } => {
                Some(p.to_usize().and_then(|p| explicit.get(p)).unwrap_or(tail))
            }
            _ => None,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TZero => 0,
            TDual(t) | TLift { t, .. } => 1 + t.depth(),
            TSup { explicit, tail } => 1 + explicit.iter().chain([&**tail]).map(Self::depth).max().unwrap(),
        }
    }
}

/// The description built by a term.
pub fn desc(t: &ConstructionTerm) -> Desc {
    match t {
        TZero => Desc::Zero,
        TDual(t) => dual(&desc(t)).expect("terms build valid descriptions"),
        TSup { explicit, tail } => Desc::Union {
            xi: Ord::finite(1),
            children: ChildSeq::new(explicit.iter().map(desc).collect(), desc(tail)),
        },
        TLift { eta, t } => lift(&desc(t), eta).expect("terms build valid descriptions"),
    }
}

/// A term building the normalized description `u`.
pub fn elaborate(u: &Desc) -> EvalResult<ConstructionTerm> {
    match u {
        Desc::Zero => Ok(TZero),
        Desc::Neg { inner, .. } if **inner == Desc::Zero => Ok(ConstructionTerm::dual(TZero)),
        Desc::Neg { .. } => Err(EvalError::NotNormalized(u.to_string())),
        Desc::Union { xi, children } if *xi == Ord::finite(1) => Ok(ConstructionTerm::sup(
            children.explicit().iter().map(elaborate).collect::<EvalResult<_>>()?,
            elaborate(children.tail())?,
        )),
        Desc::Union { xi, children } => {
            let eta = xi.sub(&Ord::finite(1)).expect("head at least 1");
            let base = Desc::Union {
                xi: Ord::finite(1),
                children: ChildSeq::new(
                    children.explicit().iter().map(|c| unlift(c, xi)).collect::<Result<_, _>>()?,
                    unlift(children.tail(), xi)?,
                ),
            };
            Ok(ConstructionTerm::lift(eta, elaborate(&base)?))
        }
    }
}

/// `α ∈ H_t`.
pub fn h_member(t: &ConstructionTerm, a: &BitSeq) -> EvalResult<bool> {
    match t {
        TZero => Ok(false),
        TDual(t) => Ok(!h_member(t, a)?),
        TLift { eta, t } => h_member(t, &rho0_pow(eta, a)?),
        TSup { .. } => {
            let (child, n) = sup_branch(t, &tau_pull(0, a)?.first_one()?);
            let n = n.to_u64().ok_or_else(|| SeqError::TooLarge(n.clone()))?;
            h_member(child, &tau_pull(n, a)?)
        }
    }
}

/// The clause of a sup node that fires, given the first 1 of `α_0`:
/// the child term and the coordinate `n` with `α ∈ H ⇔ α_n ∈ H_child`.
fn sup_branch<'t>(t: &'t ConstructionTerm, first: &Option<Nat>) -> (&'t ConstructionTerm, Nat) {
    match first {
        None => (t.child(&Nat::zero()).unwrap(), Nat::from(1u32)),
        Some(m) => {
            let n = fst(m) + 2u32;
            (t.child(&(fst(&n) + 1u32)).unwrap(), n)
        }
    }
}

fn eta_of(xi: &Ord) -> EvalResult<Ord> {
    if xi.is_zero() {
        return Err(EvalError::XiZero);
    }
    Ok(xi.sub(&Ord::finite(1)).expect("xi at least 1"))
}

/// `α ∈ C_ξ`, i.e. `ρ₀^η(α) ≠ 0^∞` for `ξ = 1 + η`.
pub fn c_xi_member(xi: &Ord, a: &BitSeq) -> EvalResult<bool> {
    Ok(!rho0_pow(&eta_of(xi)?, a)?.is_all_zero())
}

/// `α ∈ C_ξ^ε`: the first 1 of `ρ₀^η(α)` lies in a row of parity `ε`.
pub fn c_xi_eps_member(xi: &Ord, eps: bool, a: &BitSeq) -> EvalResult<bool> {
    let first = rho0_pow(&eta_of(xi)?, a)?.first_one()?;
    Ok(first.is_some_and(|m| fst(&m).is_odd() == eps))
}

/// Positions scanned past the preamble before `V_ε` gives up on a lasso.
pub const V_SEARCH_BOUND: u64 = 4096;

/// `α ∈ V_ε`: some 1 of `ρ₀^η(α)` lies in a row of parity `ε`.
pub fn v_eps_member(eps: bool, eta: &Ord, a: &BitSeq) -> EvalResult<bool> {
    Ok(rho0_pow(eta, a)?.has_one_in_row_parity(eps, V_SEARCH_BOUND)?)
}

/// A membership predicate on `2^ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pointclass {
    H(ConstructionTerm),
    CXi(Ord),
    CXiEps(Ord, bool),
    /// `V_ε` for `ξ = 1 + η`, stored as `(ε, η)`.
    VEps(bool, Ord),
}

impl Pointclass {
    pub fn member(&self, a: &BitSeq) -> EvalResult<bool> {
        match self {
            Pointclass::H(t) => h_member(t, a),
            Pointclass::CXi(xi) => c_xi_member(xi, a),
            Pointclass::CXiEps(xi, eps) => c_xi_eps_member(xi, *eps, a),
            Pointclass::VEps(eps, eta) => v_eps_member(*eps, eta, a),
        }
    }
}

impl fmt::Display for Pointclass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pointclass::H(t) => write!(f, "H[{t}]"),
            Pointclass::CXi(xi) => write!(f, "C_{xi}"),
            Pointclass::CXiEps(xi, eps) => write!(f, "C_{xi}^{}", u8::from(*eps)),
            Pointclass::VEps(eps, eta) => write!(f, "V_{}[eta={eta}]", u8::from(*eps)),
        }
    }
}

/// Increasing partial bijection `m ↦ m′` preserving `(m)_0` and `((m)_1)_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewireSpec {
    pairs: Vec<(Nat, Nat)>,
}

impl RewireSpec {
    pub fn new(pairs: Vec<(Nat, Nat)>) -> EvalResult<Self> {
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(EvalError::Rewire(format!("pairs {:?} and {:?} are not increasing", w[0], w[1])));
            }
        }
        for (m, mp) in &pairs {
            let (a, b) = unpair(m);
            let (ap, bp) = unpair(mp);
            if a != ap || fst(&b) != fst(&bp) {
                return Err(EvalError::Rewire(format!("pair ({m}, {mp}) changes residues")));
            }
        }
        Ok(RewireSpec { pairs })
    }

    pub fn identity(ones: impl IntoIterator<Item = Nat>) -> Self {
        RewireSpec { pairs: ones.into_iter().map(|m| (m.clone(), m)).collect() }
    }

    pub fn pairs(&self) -> &[(Nat, Nat)] {
        &self.pairs
    }
}

/// Moves the 1-set of `a` along `spec`.
pub fn rewire(a: &BitSeq, spec: &RewireSpec) -> EvalResult<BitSeq> {
    let BitSeq::FiniteMod { default: false, exceptions } = a else {
        return Err(EvalError::Rewire(format!("{a} does not have a finite 1-set")));
    };
    if !exceptions.iter().eq(spec.pairs.iter().map(|(m, _)| m)) {
        return Err(EvalError::Rewire("domain differs from the 1-set".into()));
    }
    Ok(BitSeq::finite_mod(false, spec.pairs.iter().map(|(_, mp)| mp.clone())))
}

/// `C(a) = C(rewire(a, spec))`.
pub fn ccs_check(c: &Pointclass, a: &BitSeq, spec: &RewireSpec) -> EvalResult<bool> {
    Ok(c.member(a)? == c.member(&rewire(a, spec)?)?)
}

/// `C(a) = C(S(α₀ Δ F₀(a)))` with the pair built by the selector; the
/// profile is read off the realized frame element and must match `B_α`.
pub fn ccs_end_to_end(c: &Pointclass, a: &BitSeq, sel: &SelectorResult) -> EvalResult<bool> {
    let BitSeq::FiniteMod { default: false, exceptions } = a else {
        return Err(EvalError::Rewire(format!("{a} does not have a finite 1-set")));
    };
    let ones = exceptions
        .iter()
        .map(|m| m.to_u64().ok_or_else(|| EvalError::Rewire(format!("position {m} too large"))))
        .collect::<EvalResult<Vec<u64>>>()?;
    let profile = selector_shifted_delta(sel, &ones)?;
    let image = BitSeq::finite_mod(false, selector_b_alpha(sel, &ones)?.into_iter().map(|(_, b)| b));
    if profile != image {
        return Err(EvalError::Rewire("selector profile differs from the B_α image".into()));
    }
    Ok(c.member(a)? == c.member(&profile)?)
}

/// Explicit prefix plus constant default; exact whenever every exception
/// lies inside the window.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Window {
    bits: Vec<bool>,
    default: bool,
}

impl Window {
    fn at(&self, x: &Nat) -> bool {
        x.to_usize().and_then(|i| self.bits.get(i).copied()).unwrap_or(self.default)
    }

    fn pull(&self, i: u64) -> Window {
        let bits = (0..self.bits.len()).map(|k| self.at(&tau_index(i, &Nat::from(k)))).collect();
        Window { bits, default: self.default }
    }

    fn rho0(&self) -> Window {
        if self.default {
            return Window { bits: vec![false; self.bits.len()], default: false };
        }
        let w = self.bits.len();
        let bits = (0..w)
            .map(|m| {
                let m = Nat::from(m);
                let mut c = Nat::zero();
                loop {
                    let x = pair(&m, &c);
                    if x >= Nat::from(w) {
                        return true;
                    }
                    if self.at(&x) {
                        return false;
                    }
                    c += 1u32;
                }
            })
            .collect();
        Window { bits, default: true }
    }

    fn first_one(&self) -> Option<Nat> {
        match self.bits.iter().position(|&b| b) {
            Some(i) => Some(Nat::from(i)),
            None => self.default.then(|| Nat::from(self.bits.len())),
        }
    }
}

/// Reference evaluator: expands every needed coordinate of a finite
/// modification into an explicit window. Lifts must be finite.
pub fn h_member_window(t: &ConstructionTerm, a: &BitSeq) -> EvalResult<bool> {
    let BitSeq::FiniteMod { default, exceptions } = a else {
        return Err(EvalError::Window("a finite modification"));
    };
    let w = exceptions.iter().next_back().map_or(1, |m| m.to_usize().expect("small exception") + 1);
    let bits = (0..w).map(|i| default ^ exceptions.contains(&Nat::from(i))).collect();
    window_eval(t, &Window { bits, default: *default })
}

fn window_eval(t: &ConstructionTerm, a: &Window) -> EvalResult<bool> {
    match t {
        TZero => Ok(false),
        TDual(t) => Ok(!window_eval(t, a)?),
        TLift { eta, t } => {
            let mut b = a.clone();
            let mut k = eta.clone();
            while let Kind::Successor(p) = k.classify() {
                b = b.rho0();
                k = p;
            }
            if !k.is_zero() {
                return Err(EvalError::Window("finite lifts"));
            }
            window_eval(t, &b)
        }
        TSup { .. } => {
            let (child, n) = sup_branch(t, &a.pull(0).first_one());
            window_eval(child, &a.pull(n.to_u64().expect("small coordinate")))
        }
    }
}

impl fmt::Display for ConstructionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TZero => write!(f, "z"),
            TDual(t) => write!(f, "d({t})"),
            TLift { eta, t } => write!(f, "L({eta}; {t})"),
            TSup { explicit, tail } => {
                write!(f, "s(")?;
                if !explicit.is_empty() {
                    let parts: Vec<String> = explicit.iter().map(|t| t.to_string()).collect();
                    write!(f, "{}; ", parts.join(", "))?;
                }
                write!(f, "rep={tail})")
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, col: usize, msg: impl Into<String>) -> EvalResult<T> {
        Err(EvalError::Parse { col, msg: msg.into() })
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

    fn expect(&mut self, tok: &str) -> EvalResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(self.pos, format!("expected '{tok}'"))
        }
    }

    fn term(&mut self) -> EvalResult<ConstructionTerm> {
        self.ws();
        let start = self.pos;
        if self.eat("d(") {
            let t = self.term()?;
            self.expect(")")?;
            return Ok(ConstructionTerm::dual(t));
        }
        if self.eat("L(") {
            self.ws();
            let at = self.pos;
            let len = self.src[at..].find(';').unwrap_or(self.src.len() - at);
            self.pos += len;
            let eta: Ord = self.src[at..self.pos]
                .trim()
                .parse()
                .or_else(|e| self.err(at, format!("bad ordinal: {e}")))?;
            self.expect(";")?;
            let t = self.term()?;
            self.expect(")")?;
            return Ok(ConstructionTerm::lift(eta, t));
        }
        if self.eat("s(") {
            let mut explicit = Vec::new();
            self.eat(";");
            loop {
                if self.eat("rep") {
                    self.expect("=")?;
                    break;
                }
                explicit.push(self.term()?);
                if !self.eat(",") {
                    self.expect(";")?;
                    self.expect("rep")?;
                    self.expect("=")?;
                    break;
                }
            }
            let tail = self.term()?;
            self.expect(")")?;
            return Ok(ConstructionTerm::sup(explicit, tail));
        }
        if self.eat("z") {
            return Ok(TZero);
        }
        self.err(start, "expected z, d(..), s(..) or L(..)")
    }
}

impl FromStr for ConstructionTerm {
    type Err = EvalError;

    fn from_str(s: &str) -> EvalResult<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let t = p.term()?;
        p.ws();
        if p.pos != s.len() {
            return p.err(p.pos, "trailing input");
        }
        Ok(t)
    }
}
