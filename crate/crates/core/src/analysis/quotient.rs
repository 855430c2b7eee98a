//! Difference quotients along single-digit perturbations `x_n` of a point
//! `x₀` that carries the digit `c` infinitely often. Distinct quotient values
//! that keep recurring as `n` grows are finite evidence that no derivative
//! exists at `x₀`.

use std::collections::BTreeSet;

use crate::digits::DigitExpansion;
use crate::error::{Error, Result};
use crate::lambda_fn::LambdaFunction;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientEntry {
    pub position: usize,
    pub digit: u8,
    pub quotient: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientTrace {
    pub point: Rational,
    pub expansion: DigitExpansion,
    pub digit: u8,
    pub depth: usize,
    pub entries: Vec<QuotientEntry>,
    /// Distinct quotient values seen at positions `n > depth/2`, ascending.
    pub persistent: Vec<Rational>,
}

/// `(f(x_n) − f(x₀)) / (x_n − x₀)` for every position `n ≤ depth` holding
/// `c` and every replacement digit `α ≠ c`. For s-adic inputs the
/// denominator is `(α − c)/s^n`; nega-s-adic inputs carry the sign of `n`.
pub fn difference_quotients(f: &LambdaFunction, x0: &DigitExpansion, c: u8, depth: usize) -> Result<QuotientTrace> {
    if !x0.period().contains(&c) {
        return Err(Error::DigitNotRecurring(c));
    }
    if x0.has_forbidden_tail() {
        return Err(Error::NonCanonicalInput(x0.to_string()));
    }
    let point = x0.value();
    let f0 = f.evaluate_expansion_raw(x0)?.value();
    let mut entries = Vec::new();
    for n in (1..=depth).filter(|&n| x0.digit(n) == c) {
        for digit in (0..f.base()).filter(|&a| a != c) {
            let xn = x0.with_digit(n, digit)?;
            let quotient = (f.evaluate_expansion_raw(&xn)?.value() - &f0) / (xn.value() - &point);
            entries.push(QuotientEntry {
                position: n,
                digit,
                quotient,
            });
        }
    }
    let persistent: BTreeSet<Rational> = entries
        .iter()
        .filter(|e| e.position > depth / 2)
        .map(|e| e.quotient.clone())
        .collect();
    Ok(QuotientTrace {
        point,
        expansion: x0.clone(),
        digit: c,
        depth,
        entries,
        persistent: persistent.into_iter().collect(),
    })
}

/// One trace per distinct digit of the period of `x0`, ascending by digit.
pub fn quotient_traces(f: &LambdaFunction, x0: &DigitExpansion, depth: usize) -> Result<Vec<QuotientTrace>> {
    let digits: BTreeSet<u8> = x0.period().iter().copied().collect();
    digits
        .into_iter()
        .map(|c| difference_quotients(f, x0, c, depth))
        .collect()
}
