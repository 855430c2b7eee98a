//! Cross-checks of the enumerating analyses against slower, independent methods.

use std::collections::HashSet;

use blockperm::analysis::{graph_box_count, invariant_set_fsk, one_sided_limits, InvariantClass};
use blockperm::rational::{pow, ratio};
use blockperm::sample;
use blockperm::theta::decode;
use blockperm::{BlockPermutation, DigitExpansion, Form, LambdaFunction, Rational};
use num::{Signed, ToPrimitive};
use rand::Rng;

fn fsk(s: u8, k: usize, images: &[u32]) -> LambdaFunction {
    LambdaFunction::fsk(BlockPermutation::from_images(s, k, images.to_vec()).unwrap())
}

fn cell_index(q: &Rational, lo: &Rational, n: usize, s: u8) -> i64 {
    ((q - lo) * Rational::from_integer(pow(s, n)))
        .floor()
        .to_integer()
        .to_i64()
        .unwrap()
}

/// Squares hit by `f` at random points of every rank-N cell.
fn sampled_squares(f: &LambdaFunction, n: usize, per_cell: usize, seed: u64) -> usize {
    let s = f.base();
    let mut rng = sample::rng(seed);
    let (dlo, _) = f.domain_interval();
    let (rlo, _) = f.range_interval();
    let mut hit = HashSet::new();
    for code in 0..u32::from(s).pow(n as u32) {
        let prefix = decode(s, n, code);
        for _ in 0..per_cell {
            let tail: Vec<u8> = (0..7).map(|_| rng.random_range(0..s)).collect();
            let period: Vec<u8> = (0..5).map(|_| rng.random_range(0..s)).collect();
            let pre = [prefix.clone(), tail].concat();
            let x = DigitExpansion::new(s, f.domain_kind(), pre, period)
                .unwrap()
                .canonicalize();
            if x.is_endpoint() {
                continue;
            }
            let y = f.evaluate_expansion(&x).unwrap().value();
            hit.insert((cell_index(&x.value(), &dlo, n, s), cell_index(&y, &rlo, n, s)));
        }
    }
    hit.len()
}

#[test]
fn box_counts_match_sampling() {
    let mut rng = sample::rng(11);
    let mut funcs = vec![
        fsk(3, 1, &[0, 2, 1]),
        fsk(2, 2, &[2, 3, 0, 1]),
        LambdaFunction::fplus(3).unwrap(),
        LambdaFunction::fplus_inv(2).unwrap(),
    ];
    for form in [
        Form::Fsk,
        Form::FPlusAfterFsk,
        Form::FskAfterFPlusInv,
        Form::FPlusAfterFskAfterFPlusInv,
    ] {
        funcs.push(LambdaFunction::with_form(form, sample::permutation(&mut rng, 3, 2)).unwrap());
    }
    for f in &funcs {
        let k = f.block_size();
        for m in 1..=2 {
            let exact = graph_box_count(f, m, 1 << 20).unwrap().count;
            let sampled = sampled_squares(f, m * k, 6, m as u64);
            assert_eq!(exact as usize, sampled, "{f} rank {m}");
        }
    }
}

/// Digit words of `m` blocks that θ maps to themselves.
fn fixed_words(theta: &BlockPermutation, m: usize) -> usize {
    let (s, k) = (theta.base(), theta.block_size());
    (0..u32::from(s).pow((m * k) as u32))
        .filter(|&code| {
            let word = decode(s, m * k, code);
            theta.apply_blocks(&word).unwrap() == word
        })
        .count()
}

#[test]
fn invariant_classes_match_brute_force() {
    let mut rng = sample::rng(12);
    for _ in 0..40 {
        let s = rng.random_range(2..=4u8);
        let k = rng.random_range(1..=2usize);
        let theta = sample::permutation(&mut rng, s, k);
        let report = invariant_set_fsk(&LambdaFunction::fsk(theta.clone())).unwrap();
        let j = report.fixed_block_count();
        for m in 1..=3 {
            assert_eq!(fixed_words(&theta, m), j.pow(m as u32), "{theta:?}");
        }
        match (&report.classification, j) {
            (InvariantClass::Empty, 0) | (InvariantClass::Continuum, 2..) => {}
            (InvariantClass::Finite(points), 1) => {
                // the single fixed block repeated forever is the only fixed sequence
                let block = report.fixed_blocks[0].digits().to_vec();
                let x = DigitExpansion::new(s, blockperm::RadixKind::SAdic, vec![], block).unwrap();
                let f = LambdaFunction::fsk(theta.clone());
                assert_eq!(f.evaluate_expansion_raw(&x).unwrap(), x);
                assert_eq!(points, &vec![x.value()]);
            }
            (class, j) => panic!("{class:?} with {j} fixed blocks"),
        }
    }
}

#[test]
fn one_sided_limits_match_approach_sequences() {
    let cases = vec![
        (fsk(3, 1, &[0, 2, 1]), ratio(1, 3)),
        (fsk(3, 1, &[0, 2, 1]), ratio(5, 9)),
        (fsk(2, 2, &[2, 3, 0, 1]), ratio(1, 2)),
        (fsk(2, 2, &[3, 0, 2, 1]), ratio(3, 8)),
        (LambdaFunction::fplus(2).unwrap(), ratio(1, 2)),
        (LambdaFunction::fplus_inv(3).unwrap(), ratio(-5, 12)),
    ];
    for (f, x0) in cases {
        let j = one_sided_limits(&f, &x0).unwrap();
        let s = f.base();
        let (lo, hi) = f.domain_interval();
        for n in [12usize, 16, 20] {
            let h = Rational::new(1.into(), pow(s, n)) * ratio(1, 7);
            let left = &x0 - &h;
            let right = &x0 + &h;
            let bound = Rational::new(1.into(), pow(s, n - 2 * f.block_size() - 2));
            if lo <= left {
                let d = (f.evaluate_point(&left).unwrap() - &j.left_limit).abs();
                assert!(d < bound, "{f} left of {x0} at n={n}: {d}");
            }
            if right <= hi {
                let d = (f.evaluate_point(&right).unwrap() - &j.right_limit).abs();
                assert!(d < bound, "{f} right of {x0} at n={n}: {d}");
            }
        }
    }
}
