//! Grid squares of side `s^{−N}` that cover the graph.
//!
//! Every form maps a rank-`N` input cylinder (with `N` a multiple of `k`)
//! into the output cylinder of its image prefix, so the graph over an input
//! cell lies in a single square: column from the input prefix, row from the
//! output prefix, both shifted to the domain and range intervals. The count
//! is the number of distinct `(column, row)` pairs.

use rayon::prelude::*;

use super::cells::{check_budget, CellGrid};
use super::dimension::LogDimension;
use crate::error::{Error, Result};
use crate::lambda_fn::LambdaFunction;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxCountEntry {
    pub rank: usize,
    /// Digits per cell side: `rank·k`.
    pub digits: usize,
    pub count: u64,
    /// `log(count) / (digits · log s)`.
    pub estimate: LogDimension,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoxCountSeries {
    pub entries: Vec<BoxCountEntry>,
}

impl BoxCountSeries {
    pub fn ranks(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.rank).collect()
    }

    pub fn counts(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.count).collect()
    }

    pub fn dimension_estimates(&self) -> Vec<&LogDimension> {
        self.entries.iter().map(|e| &e.estimate).collect()
    }
}

/// Covering squares at rank `m`, i.e. side `s^{−mk}` (`k = 1` for `f_+`, `f_+^{-1}`).
pub fn graph_box_count(f: &LambdaFunction, rank: usize, budget: u128) -> Result<BoxCountEntry> {
    if rank == 0 {
        return Err(Error::Precondition("rank must be at least 1".into()));
    }
    let digits = rank * f.block_size();
    let grid = CellGrid::new(f, digits, budget)?;
    let cells = grid.cells;
    let mut squares: Vec<u128> = (0..cells)
        .into_par_iter()
        .map(|code| {
            let (col, row) = grid.square(code);
            u128::from(col) * u128::from(cells) + u128::from(row)
        })
        .collect();
    squares.par_sort_unstable();
    squares.dedup();
    let count = squares.len() as u64;
    Ok(BoxCountEntry {
        rank,
        digits,
        count,
        estimate: LogDimension::new(count, f.base(), digits as u64),
    })
}

pub fn box_count_series(f: &LambdaFunction, ranks: &[usize], budget: u128) -> Result<BoxCountSeries> {
    let entries = ranks
        .iter()
        .map(|&m| graph_box_count(f, m, budget))
        .collect::<Result<_>>()?;
    Ok(BoxCountSeries { entries })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSample {
    pub x: Rational,
    pub y: Rational,
}

/// `(x, f(x))` at the left ends `lo + i/s^N` of the rank-`N` cells. At a
/// discontinuity this is the right-limit branch, since `x` is evaluated
/// through its canonical representation.
pub fn graph_samples(f: &LambdaFunction, digits: usize, budget: u128) -> Result<Vec<GraphSample>> {
    let cells = check_budget(f.base(), digits, budget)?;
    let (lo, _) = f.domain_interval();
    let scale = rational::pow(f.base(), digits);
    (0..cells)
        .into_par_iter()
        .map(|i| {
            let x = &lo + Rational::new(i.into(), scale.clone());
            let y = f.evaluate_point(&x)?;
            Ok(GraphSample { x, y })
        })
        .collect()
}
