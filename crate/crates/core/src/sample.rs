//! Seeded random inputs for the verification suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digits::{DigitExpansion, RadixKind};
use crate::rational::{self, Rational};
use crate::theta::BlockPermutation;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly random θ on `A^k`.
pub fn permutation(rng: &mut impl Rng, base: u8, k: usize) -> BlockPermutation {
    let n = u32::from(base).pow(k as u32);
    let mut images: Vec<u32> = (0..n).collect();
    images.shuffle(rng);
    BlockPermutation::from_images(base, k, images).expect("a shuffled table is a bijection")
}

/// Random eventually periodic digit sequence, canonical or not.
pub fn expansion(rng: &mut impl Rng, base: u8, kind: RadixKind, max_pre: usize, max_per: usize) -> DigitExpansion {
    let pre_len = rng.random_range(0..=max_pre);
    let per_len = rng.random_range(1..=max_per.max(1));
    let mut digits = |n: usize| (0..n).map(|_| rng.random_range(0..base)).collect::<Vec<u8>>();
    let pre = digits(pre_len);
    let per = digits(per_len);
    DigitExpansion::new(base, kind, pre, per).expect("digits are in range")
}

/// Random expansion without a forbidden tail.
pub fn canonical_expansion(
    rng: &mut impl Rng,
    base: u8,
    kind: RadixKind,
    max_pre: usize,
    max_per: usize,
) -> DigitExpansion {
    loop {
        let e = expansion(rng, base, kind, max_pre, max_per);
        if !e.has_forbidden_tail() {
            return e;
        }
    }
}

/// Random rational `a/d` in the interval of `kind`, with `1 ≤ d ≤ max_den`.
pub fn rational_in(rng: &mut impl Rng, base: u8, kind: RadixKind, max_den: i64) -> Rational {
    let (lo, hi) = kind.interval(base);
    let d = rng.random_range(1..=max_den.max(1));
    let scale = rational::integer(d);
    let a_lo = (&lo * &scale).ceil().to_integer();
    let a_hi = (&hi * &scale).floor().to_integer();
    let span: i64 = (&a_hi - &a_lo).try_into().expect("small interval");
    let a = a_lo + rng.random_range(0..=span);
    Rational::new(a, d.into())
}
