#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wadge::coding::nat;
use wadge::sequences::{BitSeq, RowDesc};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_fm(rng: &mut ChaCha8Rng) -> BitSeq {
    let k = rng.gen_range(0..5);
    let ex: Vec<u64> = (0..k).map(|_| rng.gen_range(0..40)).collect();
    BitSeq::finite_mod(rng.gen_bool(0.3), ex.into_iter().map(nat))
}

pub fn random_ep(rng: &mut ChaCha8Rng) -> BitSeq {
    let a = rng.gen_range(0..6);
    let p = rng.gen_range(1..5);
    let pre = (0..a).map(|_| rng.gen_bool(0.5)).collect();
    let per = (0..p).map(|_| rng.gen_bool(0.5)).collect();
    BitSeq::periodic(pre, per).unwrap()
}

fn random_cols(rng: &mut ChaCha8Rng) -> BTreeSet<wadge::Nat> {
    let k = rng.gen_range(1..4);
    (0..k).map(|_| nat(rng.gen_range(0..6))).collect()
}

pub fn random_row(rng: &mut ChaCha8Rng) -> RowDesc {
    match rng.gen_range(0..4) {
        0 => RowDesc::AllZero,
        1 => RowDesc::AllOne,
        2 => RowDesc::FiniteOnes(random_cols(rng)),
        _ => RowDesc::FiniteZeros(random_cols(rng)),
    }
}

pub fn random_rm(rng: &mut ChaCha8Rng) -> BitSeq {
    let default_row = if rng.gen_bool(0.5) { RowDesc::AllZero } else { random_row(rng) };
    let k = rng.gen_range(0..4);
    let rows: BTreeMap<_, _> = (0..k).map(|_| (nat(rng.gen_range(0..8)), random_row(rng))).collect();
    BitSeq::row_map(default_row, rows)
}

pub fn random_seq(rng: &mut ChaCha8Rng) -> BitSeq {
    match rng.gen_range(0..3) {
        0 => random_fm(rng),
        1 => random_ep(rng),
        _ => random_rm(rng),
    }
}

pub fn random_ord(rng: &mut ChaCha8Rng) -> wadge::ordinals::Ord {
    const POOL: [&str; 8] = ["1", "2", "3", "w", "w+1", "w*2", "w^2", "w^2+w+3"];
    POOL[rng.gen_range(0..POOL.len())].parse().unwrap()
}

pub fn random_desc(rng: &mut ChaCha8Rng, depth: usize) -> wadge::descriptions::Desc {
    use wadge::descriptions::{lift, Desc};
    if depth == 0 {
        return Desc::Zero;
    }
    match rng.gen_range(0..4) {
        0 => Desc::Zero,
        1 => Desc::neg(random_desc(rng, depth - 1)),
        _ => {
            let xi = random_ord(rng);
            let child = |rng: &mut ChaCha8Rng| {
                let c = random_desc(rng, depth - 1);
                let h = c.head();
                if !h.is_zero() && h < xi {
                    lift(&c, &xi).unwrap()
                } else {
                    c
                }
            };
            let k = rng.gen_range(0..3);
            let explicit = (0..k).map(|_| child(rng)).collect();
            let tail = child(rng);
            Desc::union(xi, explicit, tail).unwrap()
        }
    }
}
