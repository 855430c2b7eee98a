//! The complement equations of the radix reinterpretation maps, checked on
//! digit sequences: `f_+(x) + f_+(x̄) = −(s−1)/(s+1)` and
//! `f_+^{-1}(y) + f_+^{-1}(ȳ) = 1`, where the bar is the digitwise complement.

use crate::digits::{DigitExpansion, RadixKind};
use crate::error::{Error, Result};
use crate::lambda_fn::LambdaFunction;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationCheck {
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
}

fn check(f: &LambdaFunction, e: &DigitExpansion, rhs: Rational) -> Result<EquationCheck> {
    if e.base() != f.base() {
        return Err(Error::BaseMismatch(e.base(), f.base()));
    }
    let lhs = f.evaluate_expansion_raw(e)?.value() + f.evaluate_expansion_raw(&e.complement())?.value();
    let holds = lhs == rhs;
    Ok(EquationCheck { lhs, rhs, holds })
}

/// `f_+(e) + f_+(complement e)` against `−(s−1)/(s+1)`; `e` must be s-adic.
pub fn check_fplus_complement(base: u8, e: &DigitExpansion) -> Result<EquationCheck> {
    check(
        &LambdaFunction::fplus(base)?,
        e,
        RadixKind::NegaSAdic.complement_sum(base),
    )
}

/// `f_+^{-1}(e) + f_+^{-1}(complement e)` against `1`; `e` must be nega-s-adic.
pub fn check_fplus_inv_complement(base: u8, e: &DigitExpansion) -> Result<EquationCheck> {
    check(
        &LambdaFunction::fplus_inv(base)?,
        e,
        RadixKind::SAdic.complement_sum(base),
    )
}
