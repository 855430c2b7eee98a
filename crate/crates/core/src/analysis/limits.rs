//! One-sided limits at points with two representations.
//!
//! The canonical representation is the limit of expansions approaching from
//! the right; its twin (the `s−1` tail, or the nega-s-adic alternating tail
//! with `s−1` on even positions) is the limit from the left. Applying `f`
//! digitwise to each gives the one-sided limits, since `f` is continuous in
//! the digit sequence.

use num::Integer;

use crate::digits::{DigitExpansion, RadixKind};
use crate::error::{Error, Result};
use crate::lambda_fn::LambdaFunction;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpReport {
    pub point: Rational,
    pub canonical: DigitExpansion,
    pub twin: DigitExpansion,
    /// First position where the two representations differ.
    pub break_position: usize,
    pub left_limit: Rational,
    pub right_limit: Rational,
    pub value: Rational,
    pub jump: Rational,
    pub closed_form_jump: Rational,
    pub agrees: bool,
}

fn split(f: &LambdaFunction, x0: &Rational) -> Result<(DigitExpansion, DigitExpansion)> {
    let canonical = DigitExpansion::from_rational(x0, f.base(), f.domain_kind())?;
    let twin = canonical
        .dual()
        .ok_or_else(|| Error::NotDualPoint(rational::fraction(x0)))?;
    Ok((canonical, twin))
}

/// `f` evaluated on the twin representation of `e`.
pub fn dual_value(f: &LambdaFunction, e: &DigitExpansion) -> Result<Rational> {
    let twin = e.dual().ok_or_else(|| Error::NotDualPoint(e.to_string()))?;
    Ok(f.evaluate_expansion_raw(&twin)?.value())
}

fn first_difference(a: &DigitExpansion, b: &DigitExpansion) -> Option<usize> {
    let horizon = a.preperiod().len().max(b.preperiod().len()) + 2 * a.period().len().lcm(&b.period().len()) + 1;
    (1..=horizon).find(|&n| a.digit(n) != b.digit(n))
}

/// Block-level closed form of `f(right) − f(left)` for two representations
/// that agree before their first difference at position `n`.
///
/// With `r = k⌊(n−1)/k⌋` and `t = r + k`, the block `r+1..t` contributes
/// `Σ ε(j)(δⱼ − γⱼ)/s^j` and the periodic image tails `Ξ`, `T` from `t+1`
/// contribute `ε(t)(W(Ξ) − W(T)) / (s^t (s^L − σ_L))`, where `L` is a common
/// period of both tails and the blocks, `W` the signed weight over `L`
/// positions, and `σ_L` the sign shift after `L` positions.
pub fn jump_closed_form(f: &LambdaFunction, right: &DigitExpansion, left: &DigitExpansion) -> Result<Rational> {
    let Some(n) = first_difference(right, left) else {
        return Ok(rational::integer(0));
    };
    let k = f.block_size();
    let s = f.base();
    let kind = f.range_kind();
    let r = k * ((n - 1) / k);
    let t = r + k;
    let theta = f.digit_map();
    let block = |e: &DigitExpansion, from: usize, len: usize| -> Result<Vec<u8>> {
        theta.apply_blocks(&(from..from + len).map(|i| e.digit(i)).collect::<Vec<_>>())
    };

    // Both tails are periodic from t+1 for twins; `start` also covers
    // arbitrary representations whose preperiods reach past the block.
    let tail_period = right.period().len().lcm(&left.period().len());
    let len = k
        .lcm(&tail_period)
        .lcm(&if kind == RadixKind::NegaSAdic { 2 } else { 1 });
    let start = t.max(right.preperiod().len().max(left.preperiod().len()).div_ceil(k) * k);
    let delta = block(right, r + 1, start - r)?;
    let gamma = block(left, r + 1, start - r)?;
    let head: Rational = (0..start - r)
        .map(|i| {
            let j = r + 1 + i;
            let d = i64::from(delta[i]) - i64::from(gamma[i]);
            Rational::new((i64::from(kind.sign(j)) * d).into(), rational::pow(s, j))
        })
        .sum();
    let weight = |digits: &[u8]| -> i64 {
        digits.iter().enumerate().fold(0i64, |acc, (i, &d)| {
            acc * i64::from(s) + i64::from(kind.sign(i + 1)) * i64::from(d)
        })
    };
    let xi = weight(&block(right, start + 1, len)?);
    let tau = weight(&block(left, start + 1, len)?);
    let sigma: i64 = if kind == RadixKind::NegaSAdic && len % 2 == 1 {
        -1
    } else {
        1
    };
    let denom = rational::pow(s, start) * (rational::pow(s, len) - sigma);
    let tail = Rational::new((i64::from(kind.sign(start)) * (xi - tau)).into(), denom);
    Ok(head + tail)
}

pub fn one_sided_limits(f: &LambdaFunction, x0: &Rational) -> Result<JumpReport> {
    let (canonical, twin) = split(f, x0)?;
    let right_limit = f.evaluate_expansion_raw(&canonical)?.value();
    let left_limit = f.evaluate_expansion_raw(&twin)?.value();
    let jump = &right_limit - &left_limit;
    let closed_form_jump = jump_closed_form(f, &canonical, &twin)?;
    let break_position = first_difference(&canonical, &twin).unwrap_or(0);
    Ok(JumpReport {
        point: x0.clone(),
        agrees: closed_form_jump == jump,
        value: right_limit.clone(),
        canonical,
        twin,
        break_position,
        left_limit,
        right_limit,
        jump,
        closed_form_jump,
    })
}
