mod common;

use common::rng;
use rand::Rng;
use wadge::levels::*;

fn ts(d: usize, rows: &[&[u32]]) -> TupleSet<u32> {
    TupleSet::new(d, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn random_set(r: &mut rand_chacha::ChaCha8Rng) -> TupleSet<u32> {
    let d = r.gen_range(2..=4);
    let n = r.gen_range(1..=8);
    let labels = r.gen_range(2..=4);
    let tuples = (0..n).map(|_| (0..d).map(|_| r.gen_range(0..labels)).collect()).collect();
    TupleSet::new(d, tuples).unwrap()
}

#[test]
fn graph_basics() {
    assert!(ts(2, &[&[0, 1]]).edges().is_empty());
    assert_eq!(ts(2, &[&[0, 1], &[0, 2]]).edges(), vec![(0, 1)]);
    assert_eq!(ts(2, &[&[0, 1], &[0, 1]]).len(), 1);
    assert!(ts(2, &[&[0, 1], &[0, 1]]).is_one_sided());
    assert!(!ts(3, &[&[0, 1, 2], &[0, 1, 3]]).is_one_sided());
    assert!(TupleSet::new(2, vec![vec![0u32], vec![1, 2]]).is_err());
}

#[test]
fn edges_match_pairwise_count() {
    let mut r = rng(20);
    for _ in 0..100 {
        let t = random_set(&mut r);
        let mut brute = Vec::new();
        for a in 0..t.len() {
            for b in a + 1..t.len() {
                if (0..t.arity()).any(|i| t.tuples()[a][i] == t.tuples()[b][i]) {
                    brute.push((a, b));
                }
            }
        }
        assert_eq!(t.edges(), brute);
    }
}

#[test]
fn violating_triangle() {
    // a–b share coordinate 0, b–c coordinate 1, c–a coordinate 2.
    let t = ts(3, &[&[0, 0, 0], &[0, 1, 1], &[2, 1, 0]]);
    assert!(t.is_one_sided());
    let w = t.violating_cycle(8).expect("triangle violates");
    assert_eq!(w.len(), 3);
    assert!(!t.incidence_forest());
    // a flat triangle: all three share coordinate 0
    let flat = ts(2, &[&[0, 0], &[0, 1], &[0, 2]]);
    assert!(flat.is_almost_acyclic_bruteforce(8));
    assert!(flat.incidence_forest());
    assert!(ts(2, &[&[0, 0], &[0, 1]]).is_almost_acyclic_bruteforce(3));
}

#[test]
fn singleton_partition() {
    let t = ts(2, &[&[5, 5]]);
    let p = t.partition_for(0).unwrap();
    assert_eq!(p.block_count(), 2);
    assert!(p.normalized().is_empty());
}

#[test]
fn partition_small_instance() {
    let t = ts(2, &[&[0, 0], &[0, 1], &[1, 0], &[2, 1]]);
    assert!(t.is_one_sided());
    for b in 0..t.len() {
        let p = t.partition_for(b);
        assert_eq!(p.is_ok(), t.partition_exists_exhaustive(b));
    }
}

#[test]
fn equivalence_random() {
    let mut r = rng(21);
    let (mut good, mut bad_side, mut bad_cycle) = (0, 0, 0);
    for _ in 0..4000 {
        let t = random_set(&mut r);
        let rep = t.check_equivalence(8);
        assert!(rep.agrees(), "{t:?} {rep:?}");
        assert_eq!(rep.left(), t.is_one_sided() && t.incidence_forest(), "{t:?}");
        for b in 0..t.len() {
            if let Ok(p) = t.partition_for(b) {
                assert!(t.check_partition(&p).is_ok());
                assert!(p.block_count() <= t.arity() + 1);
                for (j, block) in p.blocks.iter().enumerate() {
                    for &x in block {
                        for i in t.shared(x, b) {
                            assert_eq!(i, j);
                        }
                    }
                }
            }
        }
        if t.len() <= 5 {
            let all_constructed = rep.right();
            let all_exist = (0..t.len()).all(|b| t.partition_exists_exhaustive(b));
            assert_eq!(all_constructed, all_exist, "{t:?}");
        }
        match (rep.one_sided, rep.almost_acyclic) {
            (true, true) => good += 1,
            (false, _) => bad_side += 1,
            (true, false) => bad_cycle += 1,
        }
    }
    assert!(good >= 200 && bad_side >= 200 && bad_cycle >= 20, "{good} {bad_side} {bad_cycle}");
}

#[test]
fn restriction_is_hereditary() {
    let mut r = rng(22);
    let mut tested = 0;
    while tested < 200 {
        let t = random_set(&mut r);
        if !t.is_almost_acyclic_bruteforce(8) {
            continue;
        }
        tested += 1;
        let keep: Vec<usize> = (0..t.len()).filter(|_| r.gen_bool(0.6)).collect();
        assert!(t.restrict(&keep).is_almost_acyclic_bruteforce(8));
    }
}
