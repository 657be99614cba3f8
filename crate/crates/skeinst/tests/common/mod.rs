#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use skeinst::braid::{Letter, MixedBraidWord};

pub const SEED_ENV: &str = "SKEINST_SEED";
pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn seed() -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed() ^ salt)
}

pub fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(seed()), failure_persistence: None, ..Config::default() }
}

fn nonzero_exp(r: &mut ChaCha8Rng, max: i32) -> i32 {
    let e = r.gen_range(1..=max);
    if r.gen_bool(0.5) {
        e
    } else {
        -e
    }
}

/// Random word on `moving` strands with at most `len` letters.
pub fn random_word(r: &mut ChaCha8Rng, moving: usize, len: usize, max_exp: i32) -> MixedBraidWord {
    let n = r.gen_range(0..=len);
    let letters: Vec<Letter> = (0..n)
        .map(|_| {
            let g = r.gen_range(0..moving);
            let e = nonzero_exp(r, max_exp);
            if g == 0 {
                Letter::t(e)
            } else {
                Letter::s(g, e)
            }
        })
        .collect();
    MixedBraidWord::new(moving, letters).expect("valid letters")
}

pub fn letter(moving: usize, max_exp: i32) -> impl Strategy<Value = Letter> {
    (0..moving, 1..=max_exp, any::<bool>()).prop_map(|(g, e, neg)| {
        let e = if neg { -e } else { e };
        if g == 0 {
            Letter::t(e)
        } else {
            Letter::s(g, e)
        }
    })
}

/// Word strategy on a fixed number of strands.
pub fn word_on(moving: usize, len: usize, max_exp: i32) -> impl Strategy<Value = MixedBraidWord> {
    prop::collection::vec(letter(moving, max_exp), 0..=len).prop_map(move |l| MixedBraidWord::new(moving, l).expect("valid letters"))
}

/// Pair of words on a common random number of strands in `1..=max_moving`.
pub fn word_pair(max_moving: usize, len: usize, max_exp: i32) -> impl Strategy<Value = (MixedBraidWord, MixedBraidWord)> {
    (1..=max_moving).prop_flat_map(move |n| (word_on(n, len, max_exp), word_on(n, len, max_exp)))
}

pub fn word(max_moving: usize, len: usize, max_exp: i32) -> impl Strategy<Value = MixedBraidWord> {
    (1..=max_moving).prop_flat_map(move |n| word_on(n, len, max_exp))
}
