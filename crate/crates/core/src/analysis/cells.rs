//! Rank-N digit cells and their signed prefix integers.
//!
//! A prefix `a₁…a_N` determines the cylinder of all expansions starting with
//! it. Its signed prefix integer `P = Σ ε(i) aᵢ s^{N−i}` places the cylinder
//! at `P/s^N + ε(N) s^{−N} T`, `T` ranging over the kind's interval, so every
//! cylinder is one cell of the uniform grid of side `s^{−N}` on that
//! interval, with index `P + cell_offset(N)`.

use crate::digits::RadixKind;
use crate::error::{Error, Result};
use crate::lambda_fn::LambdaFunction;
use crate::theta::BlockPermutation;

/// Largest number of cells a grid computation enumerates unless told otherwise.
pub const DEFAULT_CELL_BUDGET: u128 = 1 << 24;

/// Added to a signed prefix integer of `digits` digits to get the 0-based
/// grid index of its cylinder, counted from the left end of the interval.
pub fn cell_offset(base: u8, kind: RadixKind, digits: usize) -> i128 {
    let s = i128::from(base);
    match kind {
        RadixKind::SAdic => 0,
        RadixKind::NegaSAdic if digits.is_multiple_of(2) => s * (s.pow(digits as u32) - 1) / (s + 1),
        RadixKind::NegaSAdic => (s.pow(digits as u32 + 1) - 1) / (s + 1),
    }
}

pub(crate) fn check_budget(base: u8, digits: usize, budget: u128) -> Result<u64> {
    let cells = u128::from(base)
        .checked_pow(digits as u32)
        .filter(|&c| c <= budget && c <= u128::from(u64::MAX))
        .ok_or(Error::Budget {
            cells: u128::from(base).saturating_pow(digits as u32),
            budget,
        })?;
    Ok(cells as u64)
}

/// Block shift sign: `(−1)^k` for nega-s-adic, `1` for s-adic.
pub(crate) fn block_sign(kind: RadixKind, k: usize) -> i64 {
    if kind == RadixKind::NegaSAdic && k % 2 == 1 {
        -1
    } else {
        1
    }
}

/// All rank-`digits` input cells of `f` with their input and output prefixes.
pub(crate) struct CellGrid<'a> {
    pub base: u8,
    pub digits: usize,
    pub cells: u64,
    blocks: usize,
    block_cells: u64,
    w_in: Vec<i64>,
    w_out: Vec<i64>,
    images: &'a [u32],
    sign_in: i64,
    sign_out: i64,
    pub domain: RadixKind,
    pub range: RadixKind,
}

impl<'a> CellGrid<'a> {
    pub fn new(f: &'a LambdaFunction, digits: usize, budget: u128) -> Result<Self> {
        let k = f.block_size();
        if !digits.is_multiple_of(k) {
            return Err(Error::PrefixLength { len: digits, k });
        }
        let base = f.base();
        let cells = check_budget(base, digits, budget)?;
        let (domain, range) = (f.domain_kind(), f.range_kind());
        Ok(CellGrid {
            base,
            digits,
            cells,
            blocks: digits / k,
            block_cells: u64::from(base).pow(k as u32),
            w_in: BlockPermutation::block_weights(base, k, domain),
            w_out: BlockPermutation::block_weights(base, k, range),
            images: f.digit_map().images(),
            sign_in: block_sign(domain, k),
            sign_out: block_sign(range, k),
            domain,
            range,
        })
    }

    /// Signed prefix integers `(P_in, P_out)` of input cell `code`.
    pub fn prefixes(&self, code: u64) -> (i64, i64) {
        let mut rest = code;
        let (mut p_in, mut p_out, mut scale) = (0i64, 0i64, 1i64);
        for m in (0..self.blocks).rev() {
            let b = (rest % self.block_cells) as usize;
            rest /= self.block_cells;
            let odd = m % 2 == 1;
            let si = if odd { self.sign_in } else { 1 };
            let so = if odd { self.sign_out } else { 1 };
            p_in += si * self.w_in[b] * scale;
            p_out += so * self.w_out[self.images[b] as usize] * scale;
            scale *= self.block_cells as i64;
        }
        (p_in, p_out)
    }

    /// Grid indices `(column, row)` of the input cell and its image cell.
    pub fn square(&self, code: u64) -> (u64, u64) {
        let (p_in, p_out) = self.prefixes(code);
        let col = i128::from(p_in) + cell_offset(self.base, self.domain, self.digits);
        let row = i128::from(p_out) + cell_offset(self.base, self.range, self.digits);
        (col as u64, row as u64)
    }
}
