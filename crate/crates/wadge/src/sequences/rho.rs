//! Symbolic `ρ₀^η` with closure detection at limit stages.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use super::oracle::rho0_pow_prefix;
use super::{rho0, BitSeq, SeqError, SeqResult};
use crate::ordinals::{Kind, Ord};

#[derive(Debug, Clone, Copy)]
pub struct Rho0Options {
    /// Coordinates re-checked against the reference evaluator; 0 disables.
    pub verify_window: usize,
    /// Bound on tail states explored at a limit stage.
    pub max_states: usize,
    /// Inputs whose explicit part is longer than this skip the re-check.
    pub verify_extent: u64,
}

impl Default for Rho0Options {
    fn default() -> Self {
        Rho0Options { verify_window: 32, max_states: 4096, verify_extent: 4096 }
    }
}

pub fn rho0_pow(eta: &Ord, a: &BitSeq) -> SeqResult<BitSeq> {
    rho0_pow_with(eta, a, &Rho0Options::default())
}

pub fn rho0_pow_with(eta: &Ord, a: &BitSeq, opts: &Rho0Options) -> SeqResult<BitSeq> {
    let mut memo = HashMap::new();
    let out = pow(eta, a, opts, &mut memo)?;
    if opts.verify_window > 0 && !eta.is_zero() && explicit_extent(a) <= opts.verify_extent {
        let expect = rho0_pow_prefix(eta, a, opts.verify_window)?;
        for (m, &b) in expect.iter().enumerate() {
            if out.eval_u(m as u64)? != b {
                return Err(SeqError::ClosureFailure(format!(
                    "symbolic result disagrees with reference at coordinate {m} for {eta}"
                )));
            }
        }
    }
    Ok(out)
}

fn explicit_extent(a: &BitSeq) -> u64 {
    let top = |k: Option<&crate::Nat>| k.map_or(0, |m| m.to_u64().map_or(u64::MAX, |m| m.saturating_add(1)));
    match a {
        BitSeq::FiniteMod { exceptions, .. } => top(exceptions.iter().next_back()),
        BitSeq::EventuallyPeriodic { pre, per } => (pre.len() + per.len()) as u64,
        BitSeq::RowMap { rows, .. } => top(rows.keys().next_back()),
    }
}

type Memo = HashMap<(Ord, BitSeq), BitSeq>;

fn pow(eta: &Ord, a: &BitSeq, opts: &Rho0Options, memo: &mut Memo) -> SeqResult<BitSeq> {
    let key = (eta.clone(), a.clone());
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    let out = match eta.classify() {
        Kind::Zero => a.clone(),
        Kind::Successor(p) => rho0(&pow(&p, a, opts, memo)?)?,
        Kind::Limit => limit(eta, a, opts, memo)?,
    };
    memo.insert(key, out.clone());
    Ok(out)
}

/// Iterates `γ_{m+1} = S(ρ₀^{θ_m}(γ_m))` with output bit `ρ₀^{θ_m}(γ_m)(0)`
/// until a tail state repeats.
fn limit(eta: &Ord, a: &BitSeq, opts: &Rho0Options, memo: &mut Memo) -> SeqResult<BitSeq> {
    let theta0 = eta.fundamental_seq(0).expect("limit");
    let delta = eta.fundamental_seq(1).expect("limit");
    let first = pow(&theta0, a, opts, memo)?;
    let mut outs = vec![first.eval_u(0)?];
    let mut state = first.shift()?;
    let mut seen: HashMap<BitSeq, usize> = HashMap::new();
    for m in 1..=opts.max_states {
        if let Some(&j) = seen.get(&state) {
            return BitSeq::periodic(outs[..j].to_vec(), outs[j..].to_vec());
        }
        seen.insert(state.clone(), m);
        let next = pow(&delta, &state, opts, memo)?;
        outs.push(next.eval_u(0)?);
        state = next.shift()?;
    }
    Err(SeqError::ClosureFailure(format!(
        "no repeated tail state within {} steps at {eta}",
        opts.max_states
    )))
}
