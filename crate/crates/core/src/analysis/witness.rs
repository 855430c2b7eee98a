//! Finite searches for the witnesses of ill-definedness at twins,
//! non-monotonicity and non-injectivity.
//!
//! Searches walk grids `lo + i/s^n` for `n = 1, 2, …` with `i` increasing, so
//! the first witness found is the one with the smallest denominator and then
//! the smallest numerator. That ordering makes every result deterministic.

use crate::digits::{DigitExpansion, RadixKind};
use crate::error::{Error, Result};
use crate::lambda_fn::{Form, LambdaFunction};
use crate::rational::{self, Rational};
use crate::theta::Linearity;

pub const DEFAULT_SEARCH_DEPTH: usize = 6;

fn grid_point(lo: &Rational, i: u64, scale: &num::BigInt) -> Rational {
    lo + Rational::new(i.into(), scale.clone())
}

/// Points with two representations, rank by rank: `lo + i/s^n` for
/// `n = 1..=depth` and `0 < i < s^n` with `s ∤ i`.
pub fn dual_points(base: u8, kind: RadixKind, depth: usize) -> impl Iterator<Item = Rational> {
    let (lo, _) = kind.interval(base);
    let s = u64::from(base);
    (1..=depth).flat_map(move |n| {
        let scale = rational::pow(base, n);
        let lo = lo.clone();
        (1..s.pow(n as u32))
            .filter(move |i| i % s != 0)
            .map(move |i| grid_point(&lo, i, &scale))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WelldefinednessWitness {
    pub point: Rational,
    pub canonical_value: Rational,
    pub dual_value: Rational,
}

/// First twin point where the two representations give different values.
pub fn welldefinedness_witness(f: &LambdaFunction, depth: usize) -> Result<Option<WelldefinednessWitness>> {
    for point in dual_points(f.base(), f.domain_kind(), depth) {
        let canonical = DigitExpansion::from_rational(&point, f.base(), f.domain_kind())?;
        let Some(twin) = canonical.dual() else {
            continue;
        };
        let canonical_value = f.evaluate_expansion_raw(&canonical)?.value();
        let dual_value = f.evaluate_expansion_raw(&twin)?.value();
        if canonical_value != dual_value {
            return Ok(Some(WelldefinednessWitness {
                point,
                canonical_value,
                dual_value,
            }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityWitness {
    pub points: [Rational; 3],
    pub values: [Rational; 3],
    /// `f(x₁) < f(x₂) > f(x₃)` if true, `f(x₁) > f(x₂) < f(x₃)` otherwise.
    pub peak: bool,
    pub depth: usize,
}

/// Three grid points on which `f` rises then falls, or falls then rises.
pub fn monotonicity_counterexample(f: &LambdaFunction, depth: usize) -> Result<MonotonicityWitness> {
    if f.linearity().is_linear() {
        return Err(Error::Precondition(format!("{f} is an affine function")));
    }
    let (lo, _) = f.domain_interval();
    let s = u64::from(f.base());
    for n in 1..=depth {
        let scale = rational::pow(f.base(), n);
        let mut run: Vec<(Rational, Rational)> = Vec::new();
        for i in 0..=s.pow(n as u32) {
            let x = grid_point(&lo, i, &scale);
            let y = f.evaluate_point(&x)?;
            if run.last().is_some_and(|(_, last)| *last == y) {
                continue;
            }
            run.push((x, y));
            if let [.., (x1, y1), (x2, y2), (x3, y3)] = &run[..] {
                let peak = y1 < y2 && y2 > y3;
                if peak || (y1 > y2 && y2 < y3) {
                    return Ok(MonotonicityWitness {
                        points: [x1.clone(), x2.clone(), x3.clone()],
                        values: [y1.clone(), y2.clone(), y3.clone()],
                        peak,
                        depth: n,
                    });
                }
            }
        }
    }
    Err(Error::SearchExhausted(depth))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoninjectivityWitness {
    pub x1: DigitExpansion,
    pub x2: DigitExpansion,
    pub value: Rational,
}

/// Two canonical points with the same image, pulled back through `θ^{-1}`
/// from the two representations of an s-adic rational.
pub fn noninjectivity_witness(f: &LambdaFunction, depth: usize) -> Result<Option<NoninjectivityWitness>> {
    if f.form() != Form::Fsk {
        return Err(Error::WrongForm("the form f^s_k"));
    }
    if f.theta_linearity() != Some(Linearity::Other) {
        return Err(Error::Precondition("θ is the identity or the complement".into()));
    }
    let inverse = LambdaFunction::fsk(f.digit_map().inverse());
    for y in dual_points(f.base(), RadixKind::SAdic, depth) {
        let canonical = DigitExpansion::from_rational(&y, f.base(), RadixKind::SAdic)?;
        let Some(twin) = canonical.dual() else {
            continue;
        };
        let x1 = inverse.evaluate_expansion_raw(&canonical)?.normalized();
        let x2 = inverse.evaluate_expansion_raw(&twin)?.normalized();
        if !x1.is_canonical() || !x2.is_canonical() || x1.value() == x2.value() {
            continue;
        }
        debug_assert_eq!(f.evaluate_expansion(&x1)?.value(), y);
        debug_assert_eq!(f.evaluate_expansion(&x2)?.value(), y);
        return Ok(Some(NoninjectivityWitness { x1, x2, value: y }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::theta::BlockPermutation;

    fn fsk(s: u8, k: usize, images: &[u32]) -> LambdaFunction {
        LambdaFunction::fsk(BlockPermutation::from_images(s, k, images.to_vec()).unwrap())
    }

    #[test]
    fn dual_points_are_twins() {
        for s in 2..=5u8 {
            for kind in [RadixKind::SAdic, RadixKind::NegaSAdic] {
                let pts: Vec<_> = dual_points(s, kind, 3).collect();
                let expected: usize = (1..=3).map(|n| (s as usize).pow(n) - (s as usize).pow(n - 1)).sum();
                assert_eq!(pts.len(), expected);
                for p in pts {
                    let e = DigitExpansion::from_rational(&p, s, kind).unwrap();
                    let d = e.dual().unwrap_or_else(|| panic!("{p} in base {s} {kind}"));
                    assert_eq!(d.value(), p);
                }
            }
        }
    }

    #[test]
    fn ternary_welldefinedness() {
        let w = welldefinedness_witness(&fsk(3, 1, &[0, 2, 1]), 6).unwrap().unwrap();
        assert_eq!(w.point, ratio(1, 3));
        assert_eq!(w.canonical_value, ratio(2, 3));
        assert_eq!(w.dual_value, ratio(1, 6));
    }

    #[test]
    fn linear_forms_have_no_witness() {
        assert!(welldefinedness_witness(&fsk(3, 2, &(0..9).collect::<Vec<_>>()), 4)
            .unwrap()
            .is_none());
        assert!(welldefinedness_witness(&fsk(2, 1, &[1, 0]), 6).unwrap().is_none());
        let round_trip = LambdaFunction::with_form(
            Form::FPlusAfterFskAfterFPlusInv,
            BlockPermutation::identity(3, 1).unwrap(),
        )
        .unwrap();
        assert!(welldefinedness_witness(&round_trip, 4).unwrap().is_none());
    }

    #[test]
    fn fplus_is_not_monotone() {
        let f = LambdaFunction::fplus(2).unwrap();
        let w = monotonicity_counterexample(&f, 3).unwrap();
        let [x1, x2, x3] = &w.points;
        assert!(x1 < x2 && x2 < x3);
        for (x, y) in w.points.iter().zip(&w.values) {
            assert_eq!(&f.evaluate_point(x).unwrap(), y);
        }
        let [y1, y2, y3] = &w.values;
        assert!(if w.peak { y1 < y2 && y2 > y3 } else { y1 > y2 && y2 < y3 });
    }

    #[test]
    fn ternary_is_not_monotone() {
        let w = monotonicity_counterexample(&fsk(3, 1, &[0, 2, 1]), 2).unwrap();
        let nine = ratio(1, 9);
        for x in &w.points {
            let q = x / &nine;
            assert!(q.is_integer());
        }
        assert!(matches!(
            monotonicity_counterexample(&fsk(3, 1, &[0, 1, 2]), 3),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn ternary_noninjectivity() {
        let f = fsk(3, 1, &[0, 2, 1]);
        let w = noninjectivity_witness(&f, 3).unwrap().unwrap();
        // y = 1/3 = 0.1000… = 0.0222… pulls back to 0.2000… and 0.0111…
        assert_eq!(w.value, ratio(1, 3));
        assert_eq!(w.x1.value(), ratio(2, 3));
        assert_eq!(w.x2.value(), ratio(1, 6));
        assert_eq!(f.evaluate_point(&w.x1.value()).unwrap(), ratio(1, 3));
        assert_eq!(f.evaluate_point(&w.x2.value()).unwrap(), ratio(1, 3));
        // y = 2/3 gives the pair 1/3, 5/6
        assert_eq!(f.evaluate_point(&ratio(1, 3)).unwrap(), ratio(2, 3));
        assert_eq!(f.evaluate_point(&ratio(5, 6)).unwrap(), ratio(2, 3));
    }

    #[test]
    fn binary_pairs_noninjectivity() {
        let f = fsk(2, 2, &[2, 3, 0, 1]);
        let w = noninjectivity_witness(&f, 3).unwrap().unwrap();
        assert_ne!(w.x1.value(), w.x2.value());
        assert_eq!(f.evaluate_point(&w.x1.value()).unwrap(), w.value);
        assert_eq!(f.evaluate_point(&w.x2.value()).unwrap(), w.value);
        assert!(noninjectivity_witness(&fsk(2, 2, &[0, 1, 2, 3]), 3).is_err());
    }
}
