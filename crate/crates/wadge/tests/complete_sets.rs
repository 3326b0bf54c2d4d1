mod common;

use common::{random_desc, random_fm, random_ord, random_seq, rng};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use wadge::coding::{fst, nat, pair, snd, unpair, Alphabet};
use wadge::complete_sets::*;
use wadge::descriptions::{lift, normalize, Desc};
use wadge::frame_tree::{build_selector, s_c_member, BranchRecipe, DenseFamily, SelectorOptions};
use wadge::ordinals::Ord;
use wadge::sequences::BitSeq;
use wadge::Nat;

fn ord(s: &str) -> Ord {
    s.parse().unwrap()
}

fn term(s: &str) -> ConstructionTerm {
    s.parse().unwrap()
}

fn random_term(rng: &mut ChaCha8Rng, depth: usize, finite_lifts: bool) -> ConstructionTerm {
    if depth == 0 {
        return ConstructionTerm::TZero;
    }
    match rng.gen_range(0..4) {
        0 => ConstructionTerm::TZero,
        1 => ConstructionTerm::dual(random_term(rng, depth - 1, finite_lifts)),
        2 => {
            let k = rng.gen_range(0..3);
            let explicit = (0..k).map(|_| random_term(rng, depth - 1, finite_lifts)).collect();
            ConstructionTerm::sup(explicit, random_term(rng, depth - 1, finite_lifts))
        }
        _ => {
            let eta = if finite_lifts { Ord::finite(rng.gen_range(0..3)) } else { random_ord(rng) };
            ConstructionTerm::lift(eta, random_term(rng, depth - 1, finite_lifts))
        }
    }
}

fn random_ones(rng: &mut ChaCha8Rng, max: u64) -> Vec<u64> {
    let k = rng.gen_range(0..5);
    let mut v: Vec<u64> = (0..k).map(|_| rng.gen_range(0..max)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn random_rewiring(rng: &mut ChaCha8Rng, ones: &[u64]) -> RewireSpec {
    let mut prev: Option<Nat> = None;
    let pairs = ones
        .iter()
        .map(|&m| {
            let m = nat(m);
            let (p, rest) = unpair(&m);
            let r = fst(&rest);
            let mut x = nat(rng.gen_range(0..30));
            let mut mp = pair(&p, &pair(&r, &x));
            while prev.as_ref().is_some_and(|q| mp <= *q) {
                x += 1u32;
                mp = pair(&p, &pair(&r, &x));
            }
            prev = Some(mp.clone());
            (m, mp)
        })
        .collect();
    RewireSpec::new(pairs).unwrap()
}

fn witness_classes() -> Vec<Pointclass> {
    let mut cs = Vec::new();
    for xi in ["1", "2", "3", "w"] {
        cs.push(Pointclass::CXi(ord(xi)));
        for eps in [false, true] {
            cs.push(Pointclass::CXiEps(ord(xi), eps));
        }
    }
    for eta in ["0", "1", "2"] {
        for eps in [false, true] {
            cs.push(Pointclass::VEps(eps, ord(eta)));
        }
    }
    cs
}

#[test]
fn term_literals() {
    for s in ["z", "d(z)", "s(rep=z)", "s(z, d(z); rep=L(w+1; z))", "L(2; s(d(z); rep=z))"] {
        let t = term(s);
        assert_eq!(t.to_string(), s);
        assert_eq!(term(&t.to_string()), t);
    }
    assert_eq!(term(" s( z ,z ;rep= z ) "), ConstructionTerm::sup(vec![ConstructionTerm::TZero; 2], ConstructionTerm::TZero));
    let col = |s: &str| match s.parse::<ConstructionTerm>() {
        Err(EvalError::Parse { col, .. }) => col,
        other => panic!("{s}: {other:?}"),
    };
    assert_eq!(col("q"), 0);
    assert_eq!(col("d(z"), 3);
    assert_eq!(col("L(v; z)"), 2);
    assert_eq!(col("z z"), 2);
    assert_eq!(col("s(z, x; rep=z)"), 5);
}

#[test]
fn term_descriptions() {
    assert_eq!(desc(&term("z")), Desc::Zero);
    assert_eq!(desc(&term("d(z)")), Desc::neg(Desc::Zero));
    assert_eq!(desc(&term("s(rep=z)")), Desc::union(Ord::finite(1), vec![], Desc::Zero).unwrap());
    let u = desc(&term("L(w; s(d(z); rep=z))"));
    assert_eq!(u.head(), ord("w"));
    let mut r = rng(7);
    for _ in 0..200 {
        let u = normalize(&random_desc(&mut r, 3)).unwrap();
        let t = elaborate(&u).unwrap();
        assert_eq!(desc(&t), u, "elaboration of {u}");
    }
    let not_normal = Desc::neg(Desc::union(Ord::finite(1), vec![], Desc::Zero).unwrap());
    assert!(matches!(elaborate(&not_normal), Err(EvalError::NotNormalized(_))));
}

#[test]
fn h_examples() {
    let zeros = BitSeq::zeros();
    let a = BitSeq::with_ones([5, 17]);
    for x in [&zeros, &a] {
        assert!(!h_member(&term("z"), x).unwrap());
        assert!(h_member(&term("d(z)"), x).unwrap());
    }
    assert!(h_member(&term("L(1; d(z))"), &zeros).unwrap());
    // α_0 = 0^∞ routes to u_0 on α_1
    assert!(h_member(&term("s(d(z); rep=z)"), &zeros).unwrap());
    assert!(!h_member(&term("s(z; rep=d(z))"), &zeros).unwrap());
    // a lift by 1 of a sup sees ρ₀(0^∞) = 1^∞, so α_0(0) = 1 and m = 0
    assert!(h_member(&term("L(1; s(z; rep=d(z)))"), &zeros).unwrap());
}

#[test]
fn duality() {
    let mut r = rng(11);
    for _ in 0..50 {
        let t = random_term(&mut r, 3, false);
        let a = random_seq(&mut r);
        let (Ok(x), Ok(y)) = (h_member(&ConstructionTerm::dual(t.clone()), &a), h_member(&t, &a)) else {
            continue;
        };
        assert_eq!(x, !y, "{t} on {a}");
    }
}

#[test]
fn agrees_with_window_oracle() {
    let mut r = rng(13);
    for _ in 0..300 {
        let t = random_term(&mut r, 3, true);
        let a = random_fm(&mut r);
        assert_eq!(h_member(&t, &a).unwrap(), h_member_window(&t, &a).unwrap(), "{t} on {a}");
    }
}

#[test]
fn lift_composition() {
    let mut r = rng(17);
    let mut checked = 0;
    for _ in 0..100 {
        let t = random_term(&mut r, 2, true);
        let xi = random_ord(&mut r);
        let eta = Ord::finite(r.gen_range(0..3));
        let nested = ConstructionTerm::lift(xi.clone(), ConstructionTerm::lift(eta.clone(), t.clone()));
        let flat = ConstructionTerm::lift(xi.add(&eta), t.clone());
        assert_eq!(desc(&nested), lift(&lift(&desc(&t), &eta).unwrap(), &xi).unwrap());
        assert_eq!(desc(&nested), desc(&flat));
        let a = random_fm(&mut r);
        match (h_member(&nested, &a), h_member(&flat, &a)) {
            (Ok(x), Ok(y)) => {
                assert_eq!(x, y, "{nested} vs {flat} on {a}");
                checked += 1;
            }
            (Err(_), Err(_)) => {}
            (x, y) => panic!("{nested} gives {x:?}, {flat} gives {y:?}"),
        }
    }
    assert!(checked > 50);
}

#[test]
fn sup_clauses_are_exclusive() {
    let t = term("s(d(z); rep=z)");
    let mut r = rng(19);
    for _ in 0..100 {
        let a = random_fm(&mut r);
        let a0 = wadge::sequences::tau_pull(0, &a).unwrap();
        let zero_clause = a0.is_all_zero();
        let min_clause = a0.first_one().unwrap().is_some();
        assert_ne!(zero_clause, min_clause);
        let expect = if zero_clause {
            h_member(&term("d(z)"), &wadge::sequences::tau_pull(1, &a).unwrap()).unwrap()
        } else {
            false
        };
        assert_eq!(h_member(&t, &a).unwrap(), expect);
    }
}

#[test]
fn c_xi_examples() {
    assert!(!c_xi_member(&ord("1"), &BitSeq::zeros()).unwrap());
    assert!(c_xi_member(&ord("1"), &BitSeq::with_ones([3])).unwrap());
    assert!(c_xi_member(&ord("2"), &BitSeq::zeros()).unwrap());
    assert!(matches!(c_xi_member(&Ord::zero(), &BitSeq::zeros()), Err(EvalError::XiZero)));
    for eps in [false, true] {
        assert!(!c_xi_eps_member(&ord("1"), eps, &BitSeq::zeros()).unwrap());
        assert!(!v_eps_member(eps, &Ord::zero(), &BitSeq::zeros()).unwrap());
    }
    let a = BitSeq::with_ones([1]);
    assert!(c_xi_eps_member(&ord("1"), true, &a).unwrap());
    assert!(!c_xi_eps_member(&ord("1"), false, &a).unwrap());
}

#[test]
fn witness_relations() {
    let mut r = rng(23);
    for xi in ["1", "2", "3"] {
        let xi = ord(xi);
        let eta = xi.sub(&Ord::finite(1)).unwrap();
        for _ in 0..200 {
            let a = random_seq(&mut r);
            let Ok(c) = c_xi_member(&xi, &a) else { continue };
            let e0 = c_xi_eps_member(&xi, false, &a).unwrap();
            let e1 = c_xi_eps_member(&xi, true, &a).unwrap();
            assert!(!(e0 && e1), "both parities on {a}");
            assert_eq!(c, e0 || e1);
            let (Ok(v0), Ok(v1)) = (v_eps_member(false, &eta, &a), v_eps_member(true, &eta, &a)) else {
                continue;
            };
            assert!(!e0 || v0);
            assert!(!e1 || v1);
            assert_eq!(v0 || v1, c, "V_0 ∪ V_1 on {a}");
        }
    }
}

#[test]
fn rewiring() {
    assert_eq!(rewire(&BitSeq::zeros(), &RewireSpec::new(vec![]).unwrap()).unwrap(), BitSeq::zeros());
    let a = BitSeq::with_ones([2, 9, 30]);
    let id = RewireSpec::identity([2u64, 9, 30].map(nat));
    assert_eq!(rewire(&a, &id).unwrap(), a);
    assert!(RewireSpec::new(vec![(nat(0), nat(1))]).is_err());
    assert!(RewireSpec::new(vec![(nat(3), nat(3)), (nat(1), nat(1))]).is_err());
    assert!(rewire(&BitSeq::with_ones([2]), &id).is_err());
    assert!(rewire(&BitSeq::ones(), &id).is_err());
    let mut r = rng(29);
    for _ in 0..50 {
        let ones = random_ones(&mut r, 200);
        let spec = random_rewiring(&mut r, &ones);
        for (m, mp) in spec.pairs() {
            assert_eq!(fst(m), fst(mp));
            assert_eq!(fst(&snd(m)), fst(&snd(mp)));
        }
    }
}

#[test]
fn ccs_under_rewiring() {
    let mut r = rng(31);
    let classes = witness_classes();
    for _ in 0..100 {
        let ones = random_ones(&mut r, 200);
        let a = BitSeq::with_ones(ones.iter().copied());
        let spec = random_rewiring(&mut r, &ones);
        for c in &classes {
            assert!(ccs_check(c, &a, &spec).unwrap(), "{c} on {a}");
        }
    }
}

#[test]
fn ccs_end_to_end_selector() {
    let sel = build_selector(&DenseFamily::trivial(Alphabet::Finite(2)), 4, SelectorOptions::default()).unwrap();
    let classes = [
        Pointclass::CXi(ord("1")),
        Pointclass::CXi(ord("2")),
        Pointclass::CXiEps(ord("1"), false),
        Pointclass::CXiEps(ord("1"), true),
        Pointclass::CXiEps(ord("2"), false),
        Pointclass::CXiEps(ord("2"), true),
        Pointclass::VEps(false, ord("0")),
        Pointclass::VEps(true, ord("1")),
    ];
    for mask in 0u64..16 {
        let a = BitSeq::with_ones((0..4).filter(|k| mask >> k & 1 == 1));
        for c in &classes {
            assert!(ccs_end_to_end(c, &a, &sel).unwrap(), "{c} on {a}");
        }
    }
    assert!(ccs_end_to_end(&Pointclass::CXi(ord("1")), &BitSeq::with_ones([4]), &sel).is_err());
}

#[test]
fn branch_membership() {
    let d = Alphabet::Finite(2);
    let mut r = rng(37);
    for _ in 0..20 {
        let p0 = r.gen_range(0..4);
        let rcp = BranchRecipe::new(d, vec![(p0, r.gen_range(0..3), vec![])], vec![(r.gen_range(0..4), 0, vec![])]).unwrap();
        assert!(s_c_member(&rcp, |a| c_xi_member(&ord("1"), a)).unwrap());
        for eps in [false, true] {
            let got = s_c_member(&rcp, |a| c_xi_eps_member(&ord("1"), eps, a)).unwrap();
            assert_eq!(got, (p0 % 2 == 1) == eps);
        }
    }
}
