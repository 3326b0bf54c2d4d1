mod common;

use std::collections::BTreeMap;

use common::*;
use rand::Rng;
use wadge::coding::{nat, pair, pair_u64, unpair_u64};
use wadge::ordinals::Ord;
use wadge::sequences::oracle::{rho0_pow_at, rho0_pow_prefix};
use wadge::sequences::*;

fn s(lit: &str) -> BitSeq {
    lit.parse().unwrap()
}

fn o(lit: &str) -> Ord {
    lit.parse().unwrap()
}

fn same(a: &BitSeq, b: &BitSeq, len: u64) -> bool {
    a.window(len).unwrap() == b.window(len).unwrap()
}

#[test]
fn eval_examples() {
    assert!(s("fm(0;3)").eval_u(3).unwrap());
    assert!(!s("ep(01;10)").eval_u(5).unwrap());
    assert!(s("rm(default=Z; 0=F{0})").eval_u(0).unwrap());
    let opaque = s("rm(default=Z; 2=I)");
    assert!(opaque.eval(&pair(&nat(2), &nat(4))).is_err());
    assert!(!opaque.eval(&pair(&nat(1), &nat(4))).unwrap());
    assert!(s("rm(default=Z; 2=I{3})").eval(&pair(&nat(2), &nat(3))).unwrap());
}

#[test]
fn canonical_forms() {
    assert_eq!(BitSeq::periodic(vec![true], vec![false, false]).unwrap(), s("fm(0;0)"));
    assert_eq!(s("ep(0101;01)"), s("ep(;01)"));
    assert_eq!(s("ep(1;0110)").to_string(), "ep(1;0110)");
    assert_eq!(s("ep(10;10)"), s("ep(;10)"));
    assert_eq!(s("rm(default=Z; 1=F{2})"), BitSeq::with_ones([pair_u64(1, 2).unwrap()]));
    assert!(BitSeq::periodic(vec![], vec![]).is_err());
}

#[test]
fn representation_soundness() {
    let mut r = rng(3);
    for _ in 0..100 {
        let a = random_seq(&mut r);
        let reparsed: BitSeq = a.to_string().parse().unwrap();
        assert_eq!(reparsed, a);
        assert!(same(&a, &reparsed, 1024));
        if let Ok((pre, per)) = a.as_lasso() {
            let b = BitSeq::periodic(pre, per).unwrap();
            assert!(same(&a, &b, 1024));
        }
    }
}

#[test]
fn shift_examples() {
    assert_eq!(s("fm(0;0)").shift().unwrap(), BitSeq::zeros());
    assert_eq!(s("fm(0;0,5)").shift().unwrap(), s("fm(0;4)"));
    let mut r = rng(4);
    for _ in 0..200 {
        let a = random_seq(&mut r);
        let b = a.shift().unwrap();
        let wa = a.window(65).unwrap();
        assert_eq!(b.window(64).unwrap(), wa[1..].to_vec(), "{a}");
    }
}

#[test]
fn shift_is_translation_pullback() {
    let mut r = rng(5);
    for _ in 0..50 {
        let a = random_seq(&mut r);
        let k = r.gen_range(0..6);
        let shifted = a.shift_by(k).unwrap();
        let f = FiberSpec::Translate(k);
        for m in 0..128u64 {
            let src = (0..m + k + 1).find(|&x| f.in_fiber(&nat(x), &nat(m))).unwrap();
            assert_eq!(shifted.eval_u(m).unwrap(), a.eval_u(src).unwrap());
        }
    }
}

#[test]
fn symdiff_examples() {
    let mut r = rng(6);
    for _ in 0..100 {
        let a = random_seq(&mut r);
        assert!(symdiff(&a, &a).unwrap().is_all_zero());
    }
    assert_eq!(symdiff(&BitSeq::zeros(), &BitSeq::ones()).unwrap(), BitSeq::ones());
    let d = symdiff(&s("fm(0;1,4)"), &s("fm(1;4,7)")).unwrap();
    assert_eq!(d, s("fm(1;1,7)"));
    for _ in 0..200 {
        let a = random_seq(&mut r);
        let b = random_seq(&mut r);
        match symdiff(&a, &b) {
            Ok(c) => {
                for n in 0..256 {
                    assert_eq!(c.eval_u(n).unwrap(), a.eval_u(n).unwrap() ^ b.eval_u(n).unwrap());
                }
            }
            Err(SeqError::Unsupported { .. }) => {
                assert!(matches!(a, BitSeq::RowMap { .. }) || matches!(b, BitSeq::RowMap { .. }));
            }
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn grid_rows_and_assembly() {
    assert_eq!(grid_row(&BitSeq::zeros(), &nat(7)).unwrap(), BitSeq::zeros());
    let mut rows = BTreeMap::new();
    rows.insert(nat(0), BitSeq::ones());
    let g = grid_assemble(&BitSeq::zeros(), &rows).unwrap();
    for l in 0..200u64 {
        assert_eq!(g.eval_u(l).unwrap(), unpair_u64(l).0 == 0);
    }
    let mut r = rng(7);
    for _ in 0..20 {
        let default_row = random_fm(&mut r);
        let rows: BTreeMap<_, _> = (0..r.gen_range(0..5)).map(|_| (nat(r.gen_range(0..10)), random_fm(&mut r))).collect();
        let g = grid_assemble(&default_row, &rows).unwrap();
        for n in 0..12u64 {
            let expect = rows.get(&nat(n)).unwrap_or(&default_row);
            assert!(same(&grid_row(&g, &nat(n)).unwrap(), expect, 256));
        }
        for l in 0..256u64 {
            let (m, c) = unpair_u64(l);
            let expect = rows.get(&nat(m)).unwrap_or(&default_row);
            assert_eq!(g.eval_u(l).unwrap(), expect.eval_u(c).unwrap());
        }
    }
    for _ in 0..50 {
        let a = random_seq(&mut r);
        for n in 0..6u64 {
            let row = grid_row(&a, &nat(n)).unwrap();
            for k in 0..64u64 {
                assert_eq!(row.eval_u(k).unwrap(), a.eval_u(pair_u64(n, k).unwrap()).unwrap());
            }
        }
    }
    assert!(grid_assemble(&s("ep(;01)"), &BTreeMap::new()).is_err());
}

#[test]
fn tau_pullbacks() {
    assert_eq!(tau_index(0, &nat(0)), nat(0));
    assert_eq!(tau_index(0, &nat(3)), pair(&nat(0), &nat(3)));
    for i in 0..4 {
        assert_eq!(tau_pull(i, &BitSeq::ones()).unwrap(), BitSeq::ones());
        assert_eq!(tau_pull(i, &BitSeq::zeros()).unwrap(), BitSeq::zeros());
    }
    let mut r = rng(8);
    for _ in 0..60 {
        let a = if r.gen_bool(0.5) { random_fm(&mut r) } else { random_rm(&mut r) };
        for i in 0..4u64 {
            let b = tau_pull(i, &a).unwrap();
            for k in 0..256u64 {
                assert_eq!(b.eval_u(k).unwrap(), a.eval(&tau_index(i, &nat(k))).unwrap());
                assert_eq!(tau_index_inv(i, &tau_index(i, &nat(k))), Some(nat(k)));
            }
        }
    }
    assert!(tau_pull(2, &s("ep(;01)")).is_err());
    assert_eq!(tau_seq_pull(&[1, 0], &BitSeq::zeros()), Err(SeqError::ZeroInTauWord(1)));
}

#[test]
fn tau_word_index_identity() {
    let mut words: Vec<Vec<u64>> = vec![vec![]];
    for len in 1..=3 {
        let prev: Vec<Vec<u64>> = words.iter().filter(|w| w.len() == len - 1).cloned().collect();
        for w in prev {
            for c in 1..4 {
                let mut v = w.clone();
                v.push(c);
                words.push(v);
            }
        }
    }
    for w in words.iter().filter(|w| !w.is_empty()) {
        for n in 0..512u64 {
            let mut k = nat(n);
            for &i in w {
                k = tau_index(i, &k);
            }
            assert_eq!(tau_seq_index(w, &nat(n)), k, "s = {w:?}, n = {n}");
        }
    }
    let a = BitSeq::with_ones([0, 4, 17, 40, 1000, 5000]);
    for w in words.iter().filter(|w| !w.is_empty() && w.len() <= 2) {
        let b = tau_seq_pull(w, &a).unwrap();
        for n in 0..256u64 {
            assert_eq!(b.eval_u(n).unwrap(), a.eval(&tau_seq_index(w, &nat(n))).unwrap());
        }
    }
}

#[test]
fn rho0_examples() {
    assert_eq!(rho0(&BitSeq::zeros()).unwrap(), BitSeq::ones());
    assert_eq!(rho0(&BitSeq::ones()).unwrap(), BitSeq::zeros());
    assert_eq!(rho0(&s("fm(0;0)")).unwrap(), s("fm(1;0)"));
    assert_eq!(rho0(&s("rm(default=Z; 3=I)")).unwrap(), s("fm(1;3)"));
    let mut r = rng(9);
    for _ in 0..200 {
        let a = random_seq(&mut r);
        let b = rho0(&a).unwrap();
        for m in 0..64u64 {
            let empty = (0..400u64).all(|n| !a.eval_u(pair_u64(m, n).unwrap()).unwrap());
            assert_eq!(b.eval_u(m).unwrap(), empty, "{a} row {m}");
        }
    }
}

#[test]
fn rho0_pow_frozen_values() {
    assert_eq!(rho0_pow(&o("0"), &s("ep(1;01)")).unwrap(), s("ep(1;01)"));
    assert_eq!(rho0_pow(&o("1"), &BitSeq::zeros()).unwrap(), BitSeq::ones());
    let w = rho0_pow(&o("w"), &BitSeq::zeros()).unwrap();
    assert_eq!(w, s("ep(;10)"));
    let at: Vec<bool> = (0..4).map(|m| rho0_pow_at(&o("w"), &BitSeq::zeros(), m).unwrap()).collect();
    assert_eq!(at, vec![true, false, true, false]);
    assert_eq!(rho0_pow(&o("w+1"), &BitSeq::zeros()).unwrap(), rho0(&s("ep(;10)")).unwrap());
}

#[test]
fn rho0_pow_matches_reference() {
    let mut r = rng(10);
    let etas = ["0", "1", "2", "3", "w", "w+1", "w*2", "w^2"];
    for _ in 0..60 {
        let a = random_seq(&mut r);
        for e in etas {
            let eta = o(e);
            let sym = rho0_pow(&eta, &a).unwrap_or_else(|err| panic!("{e} {a}: {err}"));
            let reference = rho0_pow_prefix(&eta, &a, 256).unwrap();
            assert_eq!(sym.window(256).unwrap(), reference, "eta {e} input {a}");
        }
    }
}

#[test]
fn rho0_successor_step() {
    let mut r = rng(12);
    for _ in 0..40 {
        let a = random_seq(&mut r);
        for e in ["0", "1", "2", "w"] {
            let theta = o(e);
            let lhs = rho0_pow_prefix(&theta.succ(), &a, 256).unwrap();
            let inner = rho0_pow(&theta, &a).unwrap();
            let rhs = rho0(&inner).unwrap().window(256).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn rho0_row_dependence() {
    let mut r = rng(13);
    for _ in 0..40 {
        let a = random_fm(&mut r);
        let base = rho0(&a).unwrap();
        for _ in 0..20 {
            let x = r.gen_range(0..200u64);
            let flipped = symdiff(&a, &BitSeq::with_ones([x])).unwrap();
            let out = rho0(&flipped).unwrap();
            let row = unpair_u64(x).0;
            for m in 0..32u64 {
                if m != row {
                    assert_eq!(out.eval_u(m).unwrap(), base.eval_u(m).unwrap());
                }
            }
        }
    }
}

#[test]
fn composed_fiber_dependence() {
    let mut r = rng(14);
    let words: [&[u64]; 4] = [&[1], &[2], &[1, 3], &[2, 1, 1]];
    for &eta_n in &[0u64, 1, 2] {
        let eta = Ord::finite(eta_n);
        let mut pi = FiberSpec::Identity;
        for _ in 0..eta_n {
            pi = fiber_compose(FiberSpec::Row, pi);
        }
        for s in words {
            let fiber = fiber_compose(pi.clone(), FiberSpec::TauInverse(s.to_vec()));
            for _ in 0..10 {
                let a = random_fm(&mut r);
                let base = rho0_pow(&eta, &tau_seq_pull(s, &a).unwrap()).unwrap();
                for _ in 0..10 {
                    let x = nat(r.gen_range(0..3000u64));
                    let flipped = symdiff(&a, &BitSeq::finite_mod(false, [x.clone()])).unwrap();
                    let out = rho0_pow(&eta, &tau_seq_pull(s, &flipped).unwrap()).unwrap();
                    for m in 0..16u64 {
                        if !fiber.in_fiber(&x, &nat(m)) {
                            assert_eq!(out.eval_u(m).unwrap(), base.eval_u(m).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn fibers_and_zero_tests() {
    assert!(all_zero(&BitSeq::zeros()));
    assert!(!all_zero(&s("fm(0;9)")));
    assert!(!all_zero(&s("rm(default=Z; 1=I)")));
    let f = FiberSpec::Row;
    for m in 0..5u64 {
        let fib = f.fiber_below(&nat(m), 300);
        let expect: Vec<u64> = (0..300).filter(|&k| unpair_u64(k).0 == m).collect();
        assert_eq!(fib, expect);
    }
    let g = fiber_compose(FiberSpec::Row, FiberSpec::Row);
    assert!(g.in_fiber(&pair(&pair(&nat(2), &nat(3)), &nat(7)), &nat(2)));
}

#[test]
fn row_map_shift_and_first_one() {
    let a = s("rm(default=O; 0=F{3}, 2=I{1}, 5=Z)");
    let b = a.shift().unwrap();
    for m in 0..60u64 {
        match (a.eval_u(m + 1), b.eval_u(m)) {
            (Ok(x), Ok(y)) => assert_eq!(x, y),
            (Err(_), Err(_)) => {}
            other => panic!("mismatch at {m}: {other:?}"),
        }
    }
    assert_eq!(s("rm(default=Z; 2=I{1}, 4=F{0})").first_one().unwrap(), Some(pair(&nat(2), &nat(1))));
    assert!(s("rm(default=Z; 2=I)").first_one().is_err());
}

#[test]
fn literal_errors() {
    let e = "rm(default=Q)".parse::<BitSeq>().unwrap_err();
    assert_eq!(e.col, 11);
    assert!("ep(01;)".parse::<BitSeq>().is_err());
    assert!("fm(2;1)".parse::<BitSeq>().is_err());
    assert!("zeros x".parse::<BitSeq>().is_err());
}
