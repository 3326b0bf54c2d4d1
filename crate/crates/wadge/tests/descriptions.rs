mod common;

use wadge::coding::nat;
use wadge::descriptions::*;
use wadge::ordinals::Ord;

fn o(s: &str) -> Ord {
    s.parse().unwrap()
}

fn neg0() -> Desc {
    Desc::neg(Desc::Zero)
}

#[test]
fn validation() {
    assert!(validate(&Desc::Zero));
    assert!(validate(&neg0()));
    let bad = Desc::Union {
        xi: o("2"),
        children: ChildSeq::new(vec![Desc::union(o("1"), vec![], Desc::Zero).unwrap()], Desc::Zero),
    };
    assert!(!validate(&bad));
    assert!(Desc::union(o("2"), vec![Desc::union(o("1"), vec![], Desc::Zero).unwrap()], Desc::Zero).is_err());
    let wrong_neg = Desc::Neg { xi: o("1"), inner: Box::new(Desc::Zero) };
    assert!(!validate(&wrong_neg));
    assert!(dual(&wrong_neg).is_err());
}

#[test]
fn duals() {
    assert_eq!(dual(&Desc::Zero).unwrap(), Desc::Neg { xi: Ord::zero(), inner: Box::new(Desc::Zero) });
    assert!(dual(&dual(&Desc::Zero).unwrap()).unwrap().head().is_zero());
    let mut rng = common::rng(5);
    for _ in 0..200 {
        let u = common::random_desc(&mut rng, 4);
        let v = dual(&u).unwrap();
        assert!(validate(&v));
        assert_eq!(v.head(), u.head());
    }
}

#[test]
fn lifts() {
    assert_eq!(lift(&Desc::Zero, &Ord::omega()).unwrap(), Desc::Zero);
    assert_eq!(lift(&neg0(), &o("w")).unwrap(), neg0());
    let u = Desc::union(o("1"), vec![], neg0()).unwrap();
    assert_eq!(lift(&u, &o("w+2")).unwrap().head(), o("w+2"));
    assert_eq!(lift(&u, &o("3")).unwrap().head(), o("4"));
    let v = Desc::union(o("w+1"), vec![], neg0()).unwrap();
    assert_eq!(lift(&v, &o("2")).unwrap().head(), o("w+1"));
}

#[test]
fn lift_composition() {
    let mut rng = common::rng(11);
    for _ in 0..100 {
        let u = common::random_desc(&mut rng, 4);
        let eta = common::random_ord(&mut rng);
        let xi = common::random_ord(&mut rng);
        let lhs = lift(&lift(&u, &eta).unwrap(), &xi).unwrap();
        let rhs = lift(&u, &xi.add(&eta)).unwrap();
        assert_eq!(lhs, rhs, "u={u} eta={eta} xi={xi}");
        assert!(validate(&lhs));
        if !u.head().is_zero() {
            let xi1 = Ord::finite(1).add(&eta);
            assert_eq!(unlift(&lift(&u, &eta).unwrap(), &xi1).unwrap(), u);
        }
    }
}

#[test]
fn trees() {
    let t = desc_tree(&Desc::Zero);
    assert_eq!(maximal_seqs(&Desc::Zero).len(), 1);
    assert_eq!(maximal_seqs(&Desc::Zero)[0].len(), 1);
    assert_eq!(t.height(), 1);
    assert_eq!(desc_tree(&neg0()).height(), 2);
    let u = Desc::union(o("1"), vec![Desc::Zero, neg0()], Desc::Zero).unwrap();
    assert_eq!(maximal_seqs(&u).len(), 2);
    let mut rng = common::rng(8);
    for _ in 0..200 {
        let u = common::random_desc(&mut rng, 5);
        let tree = desc_tree(&u);
        assert_eq!(tree.height(), u.depth() + 1);
        for s in maximal_seqs(&u) {
            assert_eq!(s.last(), Some(&Desc::Zero));
        }
    }
}

fn normalized_by_paths(u: &Desc) -> bool {
    maximal_seqs(u).iter().all(|s| {
        s.iter()
            .enumerate()
            .all(|(i, n)| !matches!(n, Desc::Neg { .. }) || i + 2 == s.len())
    })
}

#[test]
fn normalization() {
    assert_eq!(normalize(&Desc::Zero).unwrap(), Desc::Zero);
    assert!(is_normalized(&Desc::Zero));
    assert!(!is_normalized(&Desc::neg(neg0())));
    assert!(is_normalized(&Desc::union(o("1"), vec![], neg0()).unwrap()));
    let u01010 = Desc::neg(neg0());
    assert_eq!(
        u01010.code_prefix(6),
        vec![o("0"), o("1"), o("0"), o("1"), o("0"), o("0")]
    );
    assert_eq!(normalize(&u01010).unwrap(), normalize(&Desc::Zero).unwrap());
    let mut rng = common::rng(13);
    for _ in 0..200 {
        let u = common::random_desc(&mut rng, 5);
        let n = normalize(&u).unwrap();
        assert!(validate(&n));
        assert!(is_normalized(&n), "{u} -> {n}");
        assert_eq!(is_normalized(&u), normalized_by_paths(&u));
        assert_eq!(n.head(), u.head());
        assert_eq!(normalize(&n).unwrap(), n);
        assert_eq!(normalize(&Desc::neg(Desc::neg(u.clone()))).unwrap(), n);
    }
}

#[test]
fn borel_codes() {
    let b1 = borel_sigma_desc(&o("1")).unwrap();
    assert_eq!(b1, Desc::Union { xi: o("1"), children: ChildSeq::new(vec![Desc::Zero], neg0()) });
    for xi in ["1", "2", "w"] {
        let b = borel_sigma_desc(&o(xi)).unwrap();
        assert!(validate(&b));
        let Desc::Union { children, .. } = &b else { panic!() };
        assert!(children.members().all(|c| c.head().is_zero()));
    }
    assert_eq!(borel_sigma_desc(&Ord::zero()), Err(DescError::ZeroHead));
}

#[test]
fn code_sequence() {
    let u = Desc::union(o("2"), vec![Desc::Zero], neg0()).unwrap();
    assert_eq!(u.code_at(&nat(0)), o("2"));
    assert_eq!(u.code_at(&nat(1)), o("2"));
    // position 2 + ⟨1, 0⟩ = 3 is u_1(0) = 0, position 2 + ⟨1, 1⟩ = 6 is u_1(1) = 1
    assert_eq!(u.code_at(&nat(3)), o("0"));
    assert_eq!(u.code_at(&nat(6)), o("1"));
}

#[test]
fn literals() {
    let mut rng = common::rng(21);
    for _ in 0..100 {
        let u = common::random_desc(&mut rng, 4);
        assert_eq!(u.to_string().parse::<Desc>().unwrap(), u);
    }
    assert_eq!("lift(w; u(1; rep=neg(0)))".parse::<Desc>().unwrap().head(), o("w"));
    assert_eq!("u(2; 0, neg(0); rep=0)".parse::<Desc>().unwrap().to_string(), "u(2; 0, neg(0); rep=0)");
    match "u(2; 0, u(1; rep=0); rep=neg(0))".parse::<Desc>() {
        Err(DescError::Parse { col, .. }) => assert_eq!(col, 8),
        other => panic!("{other:?}"),
    }
    assert!(matches!("u(2; 0, z ; rep=neg(0))".parse::<Desc>(), Err(DescError::Parse { col: 8, .. })));
    assert!(matches!("u(0; rep=0)".parse::<Desc>(), Err(DescError::Parse { col: 2, .. })));
}
