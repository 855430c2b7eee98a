use rayon::prelude::*;

use super::cells::check_budget;
use super::dimension::LogDimension;
use crate::digits::{DigitExpansion, RadixKind};
use crate::error::{Error, Result};
use crate::lambda_fn::{Form, LambdaFunction};
use crate::rational::Rational;
use crate::theta::Block;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvariantClass {
    Empty,
    Finite(Vec<Rational>),
    Continuum,
}

impl InvariantClass {
    pub fn label(&self) -> &'static str {
        match self {
            InvariantClass::Empty => "Empty",
            InvariantClass::Finite(_) => "Finite",
            InvariantClass::Continuum => "Continuum",
        }
    }
}

/// Digit-level invariant set of `f^s_k`: the expansions built only from
/// blocks that θ fixes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSetReport {
    pub classification: InvariantClass,
    pub fixed_blocks: Vec<Block>,
    /// `log_s j / k`; absent for the empty set.
    pub dimension: Option<LogDimension>,
}

impl InvariantSetReport {
    pub fn fixed_block_count(&self) -> usize {
        self.fixed_blocks.len()
    }
}

fn require_fsk(f: &LambdaFunction) -> Result<()> {
    if f.form() == Form::Fsk {
        Ok(())
    } else {
        Err(Error::WrongForm("the form f^s_k"))
    }
}

pub fn invariant_set_fsk(f: &LambdaFunction) -> Result<InvariantSetReport> {
    require_fsk(f)?;
    let theta = f.digit_map();
    let (s, k) = (f.base(), f.block_size() as u64);
    let fixed = theta.fixed_blocks();
    let (classification, dimension) = match fixed.len() {
        0 => (InvariantClass::Empty, None),
        1 => {
            let e = DigitExpansion::new(s, RadixKind::SAdic, Vec::new(), fixed[0].digits().to_vec())?;
            (
                InvariantClass::Finite(vec![e.value()]),
                Some(LogDimension::new(1u32, s, k)),
            )
        }
        j => (InvariantClass::Continuum, Some(LogDimension::new(j as u64, s, k))),
    };
    Ok(InvariantSetReport {
        classification,
        fixed_blocks: fixed,
        dimension,
    })
}

/// Whether `f_+` fixes the value of `e`: every odd-position digit is 0.
pub fn fplus_fixed_membership(e: &DigitExpansion) -> Result<bool> {
    if e.kind() != RadixKind::SAdic {
        return Err(Error::KindMismatch {
            expected: RadixKind::SAdic,
            found: e.kind(),
        });
    }
    let a = e.align_blocks(2);
    let odd_zero = |d: &[u8]| d.iter().step_by(2).all(|&x| x == 0);
    Ok(odd_zero(a.preperiod()) && odd_zero(a.period()))
}

/// Dimension of the fixed set of `f_+`: the root of `s·(1/s)^{2α} = 1`.
pub fn fplus_fixed_dimension(base: u8) -> LogDimension {
    LogDimension::new(u32::from(base), base, 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantBoxCount {
    pub rank: usize,
    pub digits: usize,
    pub count: u64,
    pub estimate: LogDimension,
}

/// Rank-`mk` s-adic cells whose prefix consists of fixed blocks, by enumeration.
pub fn invariant_set_box_count(f: &LambdaFunction, rank: usize, budget: u128) -> Result<InvariantBoxCount> {
    require_fsk(f)?;
    if rank == 0 {
        return Err(Error::Precondition("rank must be at least 1".into()));
    }
    let theta = f.digit_map();
    if theta.fixed_blocks().is_empty() {
        return Err(Error::Precondition("the invariant set is empty".into()));
    }
    let (s, k) = (f.base(), f.block_size());
    let digits = rank * k;
    let cells = check_budget(s, digits, budget)?;
    let block_cells = theta.len() as u64;
    let images = theta.images();
    let count = (0..cells)
        .into_par_iter()
        .filter(|&code| {
            let mut rest = code;
            (0..rank).all(|_| {
                let b = rest % block_cells;
                rest /= block_cells;
                u64::from(images[b as usize]) == b
            })
        })
        .count() as u64;
    Ok(InvariantBoxCount {
        rank,
        digits,
        count,
        estimate: LogDimension::new(count, s, digits as u64),
    })
}
