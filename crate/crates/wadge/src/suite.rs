//! The twelve acceptance criteria as seeded, exact checks.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coding::{fst, nat, p_code, pair, pair_u64, q_code, snd, unpair, unpair_u64, Alphabet};
use crate::complete_sets::{
    c_xi_eps_member, ccs_check, ccs_end_to_end, h_member, ConstructionTerm, Pointclass, RewireSpec,
};
use crate::descriptions::{is_normalized, lift, normalize, validate, Desc};
use crate::frame_tree::{
    build_selector, check_selector, recipe_delta, BranchRecipe, DenseFamily, Frame, SelectorOptions, SymWord,
};
use crate::levels::TupleSet;
use crate::ordinals::Ord;
use crate::sequences::oracle::{rho0_pow_at, rho0_pow_prefix};
use crate::sequences::{rho0, rho0_pow, tau_index, tau_seq_pull, BitSeq, RowDesc};
use crate::shift_system::SystemState;

pub type Check = Result<String, String>;

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub run: fn(&mut ChaCha8Rng) -> Check,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2} {} ({} ms): {}", self.id, self.name, self.millis, self.detail)
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "coding", run: coding },
        Criterion { id: 2, name: "frame lengths and step residues", run: frame },
        Criterion { id: 3, name: "suitable levels", run: levels },
        Criterion { id: 4, name: "one-sided almost-acyclic equivalence", run: equivalence },
        Criterion { id: 5, name: "rho0 power engine", run: rho_engine },
        Criterion { id: 6, name: "tau word index identity", run: tau_identity },
        Criterion { id: 7, name: "evaluator duality and lift law", run: duality_and_lifts },
        Criterion { id: 8, name: "normalization", run: normalization },
        Criterion { id: 9, name: "C_xi^eps disjointness", run: disjointness },
        Criterion { id: 10, name: "ccs invariance and selector conditions", run: ccs },
        Criterion { id: 11, name: "branch profiles", run: branch_profiles },
        Criterion { id: 12, name: "shift system", run: shift_system },
    ]
}

pub fn run(c: &Criterion, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(u64::from(c.id)));
    let start = Instant::now();
    let res = (c.run)(&mut rng);
    let millis = start.elapsed().as_millis();
    let (passed, detail) = match res {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome { id: c.id, name: c.name, passed, detail, millis }
}

/// A generator stream for the `gen` functions.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    criteria().iter().map(|c| run(c, seed)).collect()
}

fn ord(s: &str) -> Ord {
    s.parse().expect("ordinal literal")
}

/// Seeded generators for random inputs.
pub mod gen {
    use super::*;

    pub fn fm(r: &mut ChaCha8Rng) -> BitSeq {
        let k = r.gen_range(0..5);
        let ex: Vec<u64> = (0..k).map(|_| r.gen_range(0..40)).collect();
        BitSeq::finite_mod(r.gen_bool(0.3), ex.into_iter().map(nat))
    }

    pub fn ep(r: &mut ChaCha8Rng) -> BitSeq {
        let a = r.gen_range(0..6);
        let p = r.gen_range(1..5);
        let pre = (0..a).map(|_| r.gen_bool(0.5)).collect();
        let per = (0..p).map(|_| r.gen_bool(0.5)).collect();
        BitSeq::periodic(pre, per).expect("nonempty period")
    }

    fn row(r: &mut ChaCha8Rng) -> RowDesc {
        let cols = |r: &mut ChaCha8Rng| -> BTreeSet<crate::Nat> {
            (0..r.gen_range(1..4)).map(|_| nat(r.gen_range(0..6))).collect()
        };
        match r.gen_range(0..4) {
            0 => RowDesc::AllZero,
            1 => RowDesc::AllOne,
            2 => RowDesc::FiniteOnes(cols(r)),
            _ => RowDesc::FiniteZeros(cols(r)),
        }
    }

    pub fn rm(r: &mut ChaCha8Rng) -> BitSeq {
        let default_row = if r.gen_bool(0.5) { RowDesc::AllZero } else { row(r) };
        let rows: BTreeMap<_, _> = (0..r.gen_range(0..4)).map(|_| (nat(r.gen_range(0..8)), row(r))).collect();
        BitSeq::row_map(default_row, rows)
    }

    pub fn seq(r: &mut ChaCha8Rng) -> BitSeq {
        match r.gen_range(0..3) {
            0 => fm(r),
            1 => ep(r),
            _ => rm(r),
        }
    }

    pub fn ord(r: &mut ChaCha8Rng) -> Ord {
        const POOL: [&str; 8] = ["1", "2", "3", "w", "w+1", "w*2", "w^2", "w^2+w+3"];
        super::ord(POOL[r.gen_range(0..POOL.len())])
    }

    pub fn desc(r: &mut ChaCha8Rng, depth: usize) -> Desc {
        if depth == 0 {
            return Desc::Zero;
        }
        match r.gen_range(0..4) {
            0 => Desc::Zero,
            1 => Desc::neg(desc(r, depth - 1)),
            _ => {
                let xi = ord(r);
                let child = |r: &mut ChaCha8Rng| {
                    let c = desc(r, depth - 1);
                    let h = c.head();
                    if !h.is_zero() && h < xi {
                        lift(&c, &xi).expect("valid child")
                    } else {
                        c
                    }
                };
                let explicit = (0..r.gen_range(0..3)).map(|_| child(r)).collect();
                let tail = child(r);
                Desc::union(xi, explicit, tail).expect("heads respected")
            }
        }
    }

    pub fn term(r: &mut ChaCha8Rng, depth: usize) -> ConstructionTerm {
        if depth == 0 {
            return ConstructionTerm::TZero;
        }
        match r.gen_range(0..4) {
            0 => ConstructionTerm::TZero,
            1 => ConstructionTerm::dual(term(r, depth - 1)),
            2 => {
                let explicit = (0..r.gen_range(0..3)).map(|_| term(r, depth - 1)).collect();
                ConstructionTerm::sup(explicit, term(r, depth - 1))
            }
            _ => ConstructionTerm::lift(ord(r), term(r, depth - 1)),
        }
    }

    pub fn tuple_set(r: &mut ChaCha8Rng) -> TupleSet<u32> {
        let d = r.gen_range(2..=4);
        let n = r.gen_range(1..=8);
        let labels = r.gen_range(2..=4);
        let tuples = (0..n).map(|_| (0..d).map(|_| r.gen_range(0..labels)).collect()).collect();
        TupleSet::new(d, tuples).expect("uniform arity")
    }

    fn triple(r: &mut ChaCha8Rng, d: u64) -> (u64, u64, Vec<u64>) {
        let len = r.gen_range(0..3);
        (r.gen_range(0..4), r.gen_range(0..4), (0..len).map(|_| r.gen_range(0..d)).collect())
    }

    pub fn recipe(r: &mut ChaCha8Rng, d: u64) -> BranchRecipe {
        let steps = (0..r.gen_range(0..3)).map(|_| triple(r, d)).collect();
        let cycle = (0..r.gen_range(1..3)).map(|_| triple(r, d)).collect();
        BranchRecipe::new(Alphabet::Finite(d), steps, cycle).expect("nonempty cycle")
    }
}

fn coding(_: &mut ChaCha8Rng) -> Check {
    for l in 0..100_000u64 {
        let (a, b) = unpair_u64(l);
        ensure!(pair_u64(a, b) == Some(l), "pair/unpair round trip fails at {l}");
        if l < 10_000 {
            ensure!(unpair(&nat(l)) == (nat(a), nat(b)), "big and small unpair differ at {l}");
        }
    }
    let listing = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];
    for (l, &(a, b)) in listing.iter().enumerate() {
        ensure!(unpair(&nat(l as u64)) == (nat(a), nat(b)), "listing differs at {l}");
    }
    let mut seen = HashSet::new();
    for a in 0..200u64 {
        for b in 0..200u64 {
            ensure!(seen.insert(ok(p_code(&[a, b]))?), "p_code collides at ({a}, {b})");
        }
    }
    Ok("10^5 round trips, listing, 40000 distinct p-codes".into())
}

fn frame(_: &mut ChaCha8Rng) -> Check {
    let mut checked = 0;
    for d in [2u64, 3] {
        let f = Frame::new(Alphabet::Finite(d));
        for l in 0..=64u64 {
            for i in 0..d {
                ensure!(ok(f.elem(&nat(l), i))?.len() == nat(l), "|s_{l}^{i}| != {l} for d={d}");
            }
        }
        let mut words = vec![vec![]];
        for a in 0..d {
            words.push(vec![a]);
            for b in 0..d {
                words.push(vec![a, b]);
            }
        }
        for q in 0..4u64 {
            for p in 0..4u64 {
                for r in 0..4u64 {
                    for t in &words {
                        let l1 = ok(f.step(&nat(q), &nat(p), &nat(r), t))?;
                        let l = &l1 - 1u32;
                        ensure!(fst(&l) == nat(p) && fst(&snd(&l)) == nat(r), "residues at q={q} p={p} r={r} t={t:?}");
                        let sd = f.step_data(&l1).ok_or("step data missing")?;
                        ensure!(sd.base == nat(q) && &sd.word == t, "step data mismatch");
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("lengths l <= 64, {checked} steps"))
}

fn levels(_: &mut ChaCha8Rng) -> Check {
    let mut sizes = Vec::new();
    for d in [2u64, 3] {
        let f = Frame::new(Alphabet::Finite(d));
        let mut prev: Option<BTreeSet<Vec<crate::frame_tree::Letter>>> = None;
        for l in 0..=10 {
            let level = f.tree_level(l);
            let words: BTreeSet<_> = level.iter().map(|t| t.word.clone()).collect();
            if let Some(p) = &prev {
                ensure!(words.iter().all(|w| p.contains(&w[..l - 1])), "prefix closure fails at d={d} l={l}");
            }
            ensure!(
                level.iter().all(|t| SymWord::from_letters(&t.word).bounded_by_position()),
                "coordinate bound fails at d={d} l={l}"
            );
            let ts = ok(f.level_tuple_set(l))?;
            ensure!(ts.is_one_sided(), "not one-sided at d={d} l={l}");
            ensure!(ts.is_almost_acyclic_bruteforce(8), "cycle found at d={d} l={l}");
            sizes.push(words.len());
            prev = Some(words);
        }
    }
    Ok(format!("22 levels, sizes {sizes:?}"))
}

fn equivalence(r: &mut ChaCha8Rng) -> Check {
    let (mut good, mut bad, mut small) = (0, 0, 0);
    for _ in 0..200_000 {
        if good >= 200 && bad >= 200 {
            break;
        }
        let t = gen::tuple_set(r);
        let rep = t.check_equivalence(8);
        let suitable = rep.one_sided && rep.almost_acyclic;
        if suitable && good < 200 {
            good += 1;
            for b in 0..t.len() {
                let p = t.partition_for(b).map_err(|e| format!("basepoint {b} of {t:?}: {e}"))?;
                ok(t.check_partition(&p))?;
            }
        } else if !suitable && bad < 200 {
            bad += 1;
            ensure!(!rep.right(), "partitions exist for a violating instance {t:?}");
        } else {
            continue;
        }
        if t.len() <= 5 {
            small += 1;
            let exists = (0..t.len()).all(|b| t.partition_exists_exhaustive(b));
            ensure!(exists == rep.right(), "exhaustive search disagrees on {t:?}");
        }
    }
    ensure!(good == 200 && bad == 200, "sampled only {good} suitable and {bad} violating instances");
    Ok(format!("200 suitable, 200 violating, {small} exhaustive comparisons"))
}

fn rho_engine(r: &mut ChaCha8Rng) -> Check {
    let etas = ["0", "1", "2", "3", "w", "w+1"].map(ord);
    for _ in 0..100 {
        let a = gen::seq(r);
        for eta in &etas {
            let sym = ok(rho0_pow(eta, &a))?;
            let reference = ok(rho0_pow_prefix(eta, &a, 256))?;
            ensure!(ok(sym.window(256))? == reference, "rho0^{eta}({a}) differs from the reference prefix");
            for _ in 0..4 {
                let m = r.gen_range(0..256);
                let want = ok(rho0_pow_at(eta, &a, m))?;
                ensure!(ok(sym.eval_u(m as u64))? == want, "rho0^{eta}({a}) differs at {m}");
            }
        }
        for theta in ["0", "1", "2", "w"].map(ord) {
            let lhs = ok(rho0_pow_prefix(&theta.succ(), &a, 256))?;
            let rhs = ok(ok(rho0(&ok(rho0_pow(&theta, &a))?))?.window(256))?;
            ensure!(lhs == rhs, "successor step fails for theta={theta} on {a}");
        }
    }
    Ok("100 inputs x 6 exponents: 256-prefix plus 4 single coordinates".into())
}

fn tau_identity(r: &mut ChaCha8Rng) -> Check {
    let mut words: Vec<Vec<u64>> = vec![vec![]];
    for len in 1..=3 {
        let prev: Vec<Vec<u64>> = words.iter().filter(|w| w.len() == len - 1).cloned().collect();
        for w in prev {
            for c in 1..4 {
                words.push([w.as_slice(), &[c]].concat());
            }
        }
    }
    let mut checked = 0;
    for s in words.iter().filter(|w| !w.is_empty()) {
        let target = |n: u64| {
            let (row, col) = unpair(&nat(n));
            let mut w = vec![num_traits::ToPrimitive::to_u64(&row).expect("small row")];
            w.extend_from_slice(s);
            pair(&q_code(&w).expect("nonempty"), &col)
        };
        let hits: Vec<u64> = (0..8).map(|_| r.gen_range(0..512)).collect();
        let a = BitSeq::finite_mod(false, hits.iter().map(|&n| target(n)));
        let b = ok(tau_seq_pull(s, &a))?;
        for n in 0..512u64 {
            let direct = s.iter().fold(nat(n), |k, &i| tau_index(i, &k));
            ensure!(direct == target(n), "index identity fails for s={s:?} n={n}");
            ensure!(ok(b.eval_u(n))? == ok(a.eval(&target(n)))?, "pullback differs for s={s:?} n={n}");
            checked += 1;
        }
    }
    Ok(format!("{checked} (s, n) pairs"))
}

fn duality_and_lifts(r: &mut ChaCha8Rng) -> Check {
    let mut pairs = 0;
    let mut attempts = 0;
    while pairs < 50 {
        attempts += 1;
        ensure!(attempts < 10_000, "too few supported (term, input) pairs");
        let t = gen::term(r, 3);
        let a = gen::seq(r);
        let (Ok(x), Ok(y)) = (h_member(&ConstructionTerm::dual(t.clone()), &a), h_member(&t, &a)) else {
            continue;
        };
        ensure!(x == !y, "duality fails for {t} on {a}");
        pairs += 1;
    }
    for _ in 0..100 {
        let u = gen::desc(r, 4);
        let (eta, xi) = (gen::ord(r), gen::ord(r));
        let lhs = ok(lift(&ok(lift(&u, &eta))?, &xi))?;
        let rhs = ok(lift(&u, &xi.add(&eta)))?;
        ensure!(lhs == rhs, "lift law fails for u={u} eta={eta} xi={xi}");
    }
    Ok("50 duality pairs, 100 lift triples".into())
}

fn normalization(r: &mut ChaCha8Rng) -> Check {
    for _ in 0..200 {
        let u = gen::desc(r, 5);
        let n = ok(normalize(&u))?;
        ensure!(validate(&n) && is_normalized(&n), "{u} normalizes to {n}");
        ensure!(n.head() == u.head(), "head changes for {u}");
        ensure!(ok(normalize(&n))? == n, "normalize not idempotent on {u}");
    }
    let neg0 = Desc::neg(Desc::Zero);
    let u01010 = Desc::neg(neg0);
    let code: Vec<Ord> = u01010.code_prefix(6);
    ensure!(code == ["0", "1", "0", "1", "0", "0"].map(ord), "code of the double dual is {code:?}");
    ensure!(ok(normalize(&u01010))? == Desc::Zero, "01010 does not collapse to 0^inf");
    Ok("200 descriptions; 01010 collapses to 0".into())
}

fn disjointness(r: &mut ChaCha8Rng) -> Check {
    let mut evaluated = 0;
    for xi in ["1", "2", "3"].map(ord) {
        for _ in 0..200 {
            let a = gen::seq(r);
            let (Ok(e0), Ok(e1)) = (c_xi_eps_member(&xi, false, &a), c_xi_eps_member(&xi, true, &a)) else {
                continue;
            };
            ensure!(!(e0 && e1), "both parities hold for xi={xi} on {a}");
            evaluated += 1;
        }
    }
    ensure!(evaluated >= 500, "only {evaluated} inputs evaluated");
    Ok(format!("{evaluated} evaluated inputs"))
}

fn ccs(r: &mut ChaCha8Rng) -> Check {
    let mut classes = Vec::new();
    for xi in ["1", "2", "3", "w"].map(ord) {
        classes.push(Pointclass::CXi(xi.clone()));
        classes.push(Pointclass::CXiEps(xi.clone(), false));
        classes.push(Pointclass::CXiEps(xi.clone(), true));
        let eta = xi.sub(&Ord::finite(1)).expect("xi >= 1");
        classes.push(Pointclass::VEps(false, eta.clone()));
        classes.push(Pointclass::VEps(true, eta));
    }
    for _ in 0..100 {
        let mut ones: Vec<u64> = (0..r.gen_range(0..5)).map(|_| r.gen_range(0..200)).collect();
        ones.sort_unstable();
        ones.dedup();
        let mut prev: Option<crate::Nat> = None;
        let pairs = ones
            .iter()
            .map(|&m| {
                let m = nat(m);
                let (p, rest) = unpair(&m);
                let row = fst(&rest);
                let mut x = nat(r.gen_range(0..30));
                let mut mp = pair(&p, &pair(&row, &x));
                while prev.as_ref().is_some_and(|q| mp <= *q) {
                    x += 1u32;
                    mp = pair(&p, &pair(&row, &x));
                }
                prev = Some(mp.clone());
                (m, mp)
            })
            .collect();
        let spec = ok(RewireSpec::new(pairs))?;
        let a = BitSeq::with_ones(ones.iter().copied());
        for c in &classes {
            ensure!(ok(ccs_check(c, &a, &spec))?, "{c} changes under rewiring of {a}");
        }
    }
    let fam = DenseFamily::trivial(Alphabet::Finite(2));
    let sel = ok(build_selector(&fam, 4, SelectorOptions::default()))?;
    ok(check_selector(&sel, &fam))?;
    let mut e2e = Vec::new();
    for xi in ["1", "2"].map(ord) {
        e2e.push(Pointclass::CXi(xi.clone()));
        e2e.push(Pointclass::CXiEps(xi.clone(), false));
        e2e.push(Pointclass::CXiEps(xi.clone(), true));
        let eta = xi.sub(&Ord::finite(1)).expect("xi >= 1");
        e2e.push(Pointclass::VEps(false, eta.clone()));
        e2e.push(Pointclass::VEps(true, eta));
    }
    for mask in 0u64..16 {
        let a = BitSeq::with_ones((0..4).filter(|k| mask >> k & 1 == 1));
        for c in &e2e {
            ensure!(ok(ccs_end_to_end(c, &a, &sel))?, "{c} differs end to end on {a}");
        }
    }
    Ok(format!("100 rewirings x {} classes; 16 selector inputs x {} classes", classes.len(), e2e.len()))
}

fn branch_profiles(r: &mut ChaCha8Rng) -> Check {
    for k in 0..20 {
        let d = 2 + r.gen_range(0..2);
        let rcp = gen::recipe(r, d);
        let delta = ok(recipe_delta(&rcp))?;
        let window = ok(rcp.delta_window(2000))?;
        let BitSeq::RowMap { default_row, rows } = &delta else {
            return Err(format!("recipe {k} has no infinite row: {delta}"));
        };
        for (x, &bit) in window.iter().enumerate() {
            let (row, col) = unpair(&nat(x as u64));
            if let Ok(b) = rows.get(&row).unwrap_or(default_row).bit(&col, "window") {
                ensure!(b == bit, "recipe {k} differs at {x}");
            }
        }
        let chain = ok(rcp.chain(6))?;
        for j in 0..6 {
            let x = &chain[j + 1] - 1u32;
            let (p, q, _) = rcp.step(j);
            ensure!(fst(&x) == nat(*p) && fst(&snd(&x)) == nat(*q), "recipe {k} step {j} residues");
            let hit = match delta.eval(&x) {
                Ok(b) => b,
                Err(_) => !rows.get(&fst(&x)).unwrap_or(default_row).is_empty_row(),
            };
            ensure!(hit, "recipe {k} misses the 1 at m_{}-1", j + 1);
        }
    }
    Ok("20 recipes, window 2000, 6 scheduled steps each".into())
}

fn shift_system(r: &mut ChaCha8Rng) -> Check {
    let s = SystemState::new(5);
    let inputs: Vec<BitSeq> = (0..50).map(|_| gen::ep(r)).collect();
    for p in 1..=4 {
        for n in 0..p {
            for a in &inputs {
                let rep = ok(s.identity_check(n, p, a, 128))?;
                ensure!(rep.holds(), "identity fails at n={n} p={p} on {a}: {:?}", rep.counterexample);
            }
        }
    }
    for n in 0..=4 {
        for x in 0..512 {
            ensure!(!ok(s.in_s(n, x))? || ok(s.in_s(n + 1, x))?, "S_{n} not inside S_{} at {x}", n + 1);
        }
    }
    for n in 0..=3 {
        let rep = ok(s.density_probe(n, 6))?;
        for w in &rep.witnesses {
            ensure!(ok(s.check_density_witness(n, w))?, "density witness rejected at n={n}: {w:?}");
        }
    }
    Ok("identity on 10 (n, p) pairs x 50 inputs; S_n chain; 256 density witnesses".into())
}
