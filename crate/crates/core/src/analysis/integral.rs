//! The Lebesgue integral over the domain interval, exactly and by midpoint
//! Riemann sums.
//!
//! Under Lebesgue measure the digits of `x` are independent and uniform, for
//! both radix kinds. Splitting off the first block gives the self-similarity
//! `I = σ s^{−k} I + μ s^{−k}`, where `μ` is the mean signed weight of an
//! output block and `σ` the block shift sign of the range kind, hence
//! `I = μ / (s^k − σ)`.

use rayon::prelude::*;

use super::cells::{block_sign, CellGrid};
use crate::digits::{DigitExpansion, RadixKind};
use crate::error::{Error, Result};
use crate::lambda_fn::LambdaFunction;
use crate::rational::{self, Rational};
use crate::theta::BlockPermutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralResult {
    pub exact: Rational,
    /// `a` in `I = a·I + b`.
    pub coefficient: Rational,
    /// `b` in `I = a·I + b`.
    pub constant: Rational,
    /// `(digits N, midpoint sum over the s^N rank-N cells)`.
    pub riemann_estimates: Vec<(usize, Rational)>,
}

/// Digit counts usable for midpoint sums within `max_cells` cells: multiples
/// of `k`, and even when the domain is nega-s-adic.
pub fn riemann_ranks(f: &LambdaFunction, max_cells: u128) -> Vec<usize> {
    let k = f.block_size();
    let step = if f.domain_kind() == RadixKind::NegaSAdic && k % 2 == 1 {
        2 * k
    } else {
        k
    };
    let s = u128::from(f.base());
    (1..)
        .map(|m| m * step)
        .take_while(|&n| s.checked_pow(n as u32).is_some_and(|c| c <= max_cells))
        .collect()
}

/// Midpoint Riemann sum of `f` over the `s^N` rank-`N` cells of the domain.
///
/// A cell midpoint is `P/s^N + s^{−N}·T` with `T` the centre of the domain
/// interval, so `f(mid) = P_out/s^N + ε(N) s^{−N} f(T)` and the whole sum
/// reduces to an integer sum of output prefixes.
pub fn riemann_midpoint(f: &LambdaFunction, digits: usize, budget: u128) -> Result<Rational> {
    if f.domain_kind() == RadixKind::NegaSAdic && digits % 2 == 1 {
        return Err(Error::Precondition(
            "nega-s-adic midpoint grids need an even number of digits".into(),
        ));
    }
    let grid = CellGrid::new(f, digits, budget)?;
    let total: i128 = (0..grid.cells)
        .into_par_iter()
        .map(|code| i128::from(grid.prefixes(code).1))
        .sum();
    let s = f.base();
    let (lo, hi) = f.domain_interval();
    let centre = (lo + hi) / rational::integer(2);
    let tail = f
        .evaluate_expansion_raw(&DigitExpansion::from_rational(&centre, s, f.domain_kind())?)?
        .value();
    let sign = i64::from(f.range_kind().sign(digits));
    let scale = rational::pow(s, digits);
    Ok(Rational::new(total.into(), &scale * &scale) + tail * rational::integer(sign) / Rational::from_integer(scale))
}

/// Exact integral plus midpoint sums at every usable rank within `max_cells`.
pub fn lebesgue_integral_exact(f: &LambdaFunction, max_cells: u128) -> Result<IntegralResult> {
    let k = f.block_size();
    let s = f.base();
    let weights = BlockPermutation::block_weights(s, k, f.range_kind());
    let sk = rational::pow(s, k);
    let mean = Rational::new(weights.iter().sum::<i64>().into(), sk.clone());
    let sigma = block_sign(f.range_kind(), k);
    let coefficient = Rational::new(sigma.into(), sk.clone());
    let constant = mean / Rational::from_integer(sk);
    let exact = &constant / (rational::integer(1) - &coefficient);
    let riemann_estimates = riemann_ranks(f, max_cells)
        .into_iter()
        .map(|n| riemann_midpoint(f, n, max_cells).map(|q| (n, q)))
        .collect::<Result<_>>()?;
    Ok(IntegralResult {
        exact,
        coefficient,
        constant,
        riemann_estimates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda_fn::Form;
    use crate::rational::ratio;

    fn fsk(s: u8, k: usize, images: &[u32]) -> LambdaFunction {
        LambdaFunction::fsk(BlockPermutation::from_images(s, k, images.to_vec()).unwrap())
    }

    /// Independent oracle: midpoints evaluated one by one through the
    /// rational evaluator.
    fn brute_midpoint(f: &LambdaFunction, digits: usize) -> Rational {
        let (lo, _) = f.domain_interval();
        let n = u64::from(f.base()).pow(digits as u32);
        let h = Rational::new(1.into(), rational::pow(f.base(), digits));
        let half = ratio(1, 2);
        (0..n)
            .map(|i| {
                let x = &lo + (Rational::from_integer(i.into()) + &half) * &h;
                f.evaluate_point(&x).unwrap()
            })
            .sum::<Rational>()
            * h
    }

    #[test]
    fn fsk_integral_is_one_half() {
        for f in [fsk(3, 1, &[0, 2, 1]), fsk(2, 2, &[2, 3, 0, 1]), fsk(2, 1, &[0, 1])] {
            let r = lebesgue_integral_exact(&f, 1 << 12).unwrap();
            assert_eq!(r.exact, ratio(1, 2));
            assert_eq!(&r.constant / (ratio(1, 1) - &r.coefficient), r.exact);
        }
    }

    #[test]
    fn fplus_family_integrals() {
        for s in [2u8, 3, 5] {
            let t = ratio(-(i64::from(s) - 1), 2 * (i64::from(s) + 1));
            assert_eq!(
                lebesgue_integral_exact(&LambdaFunction::fplus(s).unwrap(), 1)
                    .unwrap()
                    .exact,
                t
            );
            assert_eq!(
                lebesgue_integral_exact(&LambdaFunction::fplus_inv(s).unwrap(), 1)
                    .unwrap()
                    .exact,
                ratio(1, 2)
            );
        }
        let f = LambdaFunction::with_form(
            Form::FPlusAfterFsk,
            BlockPermutation::from_images(3, 1, vec![0, 2, 1]).unwrap(),
        )
        .unwrap();
        assert_eq!(lebesgue_integral_exact(&f, 1).unwrap().exact, ratio(-1, 4));
    }

    #[test]
    fn midpoint_sum_matches_pointwise_oracle() {
        let t = BlockPermutation::from_images(3, 1, vec![1, 2, 0]).unwrap();
        let cases = [
            fsk(3, 1, &[0, 2, 1]),
            fsk(2, 2, &[2, 3, 0, 1]),
            LambdaFunction::fplus(3).unwrap(),
            LambdaFunction::fplus_inv(3).unwrap(),
            LambdaFunction::with_form(Form::FPlusAfterFsk, t.clone()).unwrap(),
            LambdaFunction::with_form(Form::FskAfterFPlusInv, t.clone()).unwrap(),
            LambdaFunction::with_form(Form::FPlusAfterFskAfterFPlusInv, t).unwrap(),
        ];
        for f in &cases {
            for n in riemann_ranks(f, 3u128.pow(4)) {
                assert_eq!(
                    riemann_midpoint(f, n, 1 << 20).unwrap(),
                    brute_midpoint(f, n),
                    "{f} N={n}"
                );
            }
        }
    }

    #[test]
    fn riemann_converges() {
        let f = fsk(3, 1, &[0, 2, 1]);
        let r = lebesgue_integral_exact(&f, 3u128.pow(10)).unwrap();
        let (n, last) = r.riemann_estimates.last().unwrap();
        assert_eq!(*n, 10);
        assert!((rational::to_f64(last) - 0.5).abs() < 1e-3);
    }

    #[test]
    fn nega_grids_use_even_digits() {
        let f = LambdaFunction::fplus_inv(2).unwrap();
        assert_eq!(riemann_ranks(&f, 1 << 8), vec![2, 4, 6, 8]);
        assert!(riemann_midpoint(&f, 3, 1 << 8).is_err());
    }
}
