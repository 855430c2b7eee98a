//! Block permutations: bijections of `A^k`, the set of `k`-digit blocks over
//! the alphabet `A = {0, …, s−1}`.
//!
//! A block `(a₁, …, a_k)` is encoded as the integer `Σ aᵢ s^{k−i}`. The
//! permutation is a dense table over these codes.

use std::fmt;

use num::BigUint;

use crate::digits::{check_base, RadixKind};
use crate::error::{Error, Result};

/// Default bound on `s^k` for exhaustive enumeration (8! = 40320 permutations).
pub const ENUMERATION_CAP: usize = 8;

/// Largest table the crate will build.
pub const MAX_BLOCKS: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block(Vec<u8>);

impl Block {
    pub fn new(digits: Vec<u8>) -> Self {
        Block(digits)
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<u8>> for Block {
    fn from(digits: Vec<u8>) -> Self {
        Block(digits)
    }
}

impl From<&[u8]> for Block {
    fn from(digits: &[u8]) -> Self {
        Block(digits.to_vec())
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_digits(f, &self.0, self.0.iter().all(|&d| d < 10))
    }
}

fn write_digits(f: &mut fmt::Formatter<'_>, digits: &[u8], concatenate: bool) -> fmt::Result {
    if concatenate {
        for d in digits {
            write!(f, "{d}")?;
        }
        Ok(())
    } else {
        let parts: Vec<String> = digits.iter().map(u8::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Linearity {
    /// `θ(b) = b` for every block.
    Identity,
    /// `θ(b)` is the digitwise `s−1−·` of `b` for every block.
    Complement,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockPermutation {
    base: u8,
    block_size: usize,
    table: Vec<u32>,
}

fn block_count(base: u8, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::Precondition("block size must be at least 1".into()));
    }
    let n = u128::from(base).checked_pow(k as u32).unwrap_or(u128::MAX);
    if n > MAX_BLOCKS as u128 {
        return Err(Error::TableTooLarge(n));
    }
    Ok(n as usize)
}

impl BlockPermutation {
    pub fn identity(base: u8, k: usize) -> Result<Self> {
        check_base(u32::from(base))?;
        let n = block_count(base, k)?;
        Ok(BlockPermutation {
            base,
            block_size: k,
            table: (0..n as u32).collect(),
        })
    }

    /// Digitwise complement `b ↦ (s−1−b₁, …, s−1−b_k)`; on codes this is `c ↦ s^k−1−c`.
    pub fn complement(base: u8, k: usize) -> Result<Self> {
        let mut p = Self::identity(base, k)?;
        let top = p.table.len() as u32 - 1;
        p.table.iter_mut().for_each(|c| *c = top - *c);
        Ok(p)
    }

    /// Builds from the image of every block code `0..s^k`.
    pub fn from_images(base: u8, k: usize, images: Vec<u32>) -> Result<Self> {
        check_base(u32::from(base))?;
        let n = block_count(base, k)?;
        if images.len() != n {
            let missing = (0..n).find(|&c| c >= images.len()).unwrap_or(0);
            return Err(Error::MissingBlock(decode(base, k, missing as u32)));
        }
        let mut seen = vec![false; n];
        for &img in &images {
            if img as usize >= n {
                return Err(Error::DigitOutOfRange { digit: img, base });
            }
            if std::mem::replace(&mut seen[img as usize], true) {
                return Err(Error::DuplicateImage(decode(base, k, img)));
            }
        }
        Ok(BlockPermutation {
            base,
            block_size: k,
            table: images,
        })
    }

    /// Builds and validates from explicit `preimage → image` pairs.
    pub fn from_table(base: u8, k: usize, pairs: &[(Block, Block)]) -> Result<Self> {
        check_base(u32::from(base))?;
        let n = block_count(base, k)?;
        let mut images: Vec<Option<u32>> = vec![None; n];
        let mut hit = vec![false; n];
        for (pre, img) in pairs {
            let from = encode_checked(base, k, pre)?;
            let to = encode_checked(base, k, img)?;
            if images[from as usize].is_some() {
                return Err(Error::DuplicatePreimage(pre.0.clone()));
            }
            if std::mem::replace(&mut hit[to as usize], true) {
                return Err(Error::DuplicateImage(img.0.clone()));
            }
            images[from as usize] = Some(to);
        }
        let table = images
            .into_iter()
            .enumerate()
            .map(|(code, img)| img.ok_or_else(|| Error::MissingBlock(decode(base, k, code as u32))))
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockPermutation {
            base,
            block_size: k,
            table,
        })
    }

    pub fn base(&self) -> u8 {
        self.base
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    /// Number of blocks, `s^k`.
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Image codes indexed by preimage code.
    pub fn images(&self) -> &[u32] {
        &self.table
    }

    pub fn apply_code(&self, code: u32) -> u32 {
        self.table[code as usize]
    }

    pub fn apply(&self, block: &Block) -> Result<Block> {
        let code = encode_checked(self.base, self.block_size, block)?;
        Ok(Block(decode(self.base, self.block_size, self.apply_code(code))))
    }

    /// Applies the permutation to every consecutive block of `digits`
    /// (whose length must be a multiple of `k`).
    pub fn apply_blocks(&self, digits: &[u8]) -> Result<Vec<u8>> {
        let k = self.block_size;
        if !digits.len().is_multiple_of(k) {
            return Err(Error::PrefixLength { len: digits.len(), k });
        }
        let mut out = Vec::with_capacity(digits.len());
        for chunk in digits.chunks(k) {
            let code = encode(self.base, chunk);
            out.extend(decode(self.base, k, self.apply_code(code)));
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(self.base, other.base));
        }
        if self.block_size != other.block_size {
            return Err(Error::BlockSizeMismatch(self.block_size, other.block_size));
        }
        Ok(())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(BlockPermutation {
            table: other.table.iter().map(|&c| self.table[c as usize]).collect(),
            ..self.clone()
        })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.table.len()];
        for (from, &to) in self.table.iter().enumerate() {
            inv[to as usize] = from as u32;
        }
        BlockPermutation {
            table: inv,
            ..self.clone()
        }
    }

    /// Fixed blocks in lexicographic order.
    pub fn fixed_blocks(&self) -> Vec<Block> {
        self.fixed_codes()
            .into_iter()
            .map(|c| Block(decode(self.base, self.block_size, c)))
            .collect()
    }

    pub(crate) fn fixed_codes(&self) -> Vec<u32> {
        (0..self.table.len() as u32)
            .filter(|&c| self.table[c as usize] == c)
            .collect()
    }

    pub fn classify_linearity(&self) -> Linearity {
        let top = self.table.len() as u32 - 1;
        if self.table.iter().enumerate().all(|(c, &img)| img == c as u32) {
            Linearity::Identity
        } else if self.table.iter().enumerate().all(|(c, &img)| img == top - c as u32) {
            Linearity::Complement
        } else {
            Linearity::Other
        }
    }

    /// Signed integer value `Σ ε(i) bᵢ s^{k−i}` of every block code under the
    /// sign pattern of `kind` (positions `1..=k`).
    pub(crate) fn block_weights(base: u8, k: usize, kind: RadixKind) -> Vec<i64> {
        let n = u64::from(base).pow(k as u32) as usize;
        (0..n as u32)
            .map(|c| {
                decode(base, k, c).iter().enumerate().fold(0i64, |acc, (i, &d)| {
                    acc * i64::from(base) + i64::from(kind.sign(i + 1)) * i64::from(d)
                })
            })
            .collect()
    }
}

impl fmt::Display for BlockPermutation {
    /// Config-file layout: header lines followed by one `preimage -> image` per block.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "s = {}", self.base)?;
        writeln!(f, "k = {}", self.block_size)?;
        for (from, &to) in self.table.iter().enumerate() {
            write_digits(f, &decode(self.base, self.block_size, from as u32), self.base <= 10)?;
            f.write_str(" -> ")?;
            write_digits(f, &decode(self.base, self.block_size, to), self.base <= 10)?;
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Block code `Σ aᵢ s^{k−i}` (the block's radix-s integer).
pub fn encode(base: u8, digits: &[u8]) -> u32 {
    digits.iter().fold(0u32, |acc, &d| acc * u32::from(base) + u32::from(d))
}

pub fn decode(base: u8, k: usize, mut code: u32) -> Vec<u8> {
    let mut digits = vec![0u8; k];
    for slot in digits.iter_mut().rev() {
        *slot = (code % u32::from(base)) as u8;
        code /= u32::from(base);
    }
    digits
}

fn encode_checked(base: u8, k: usize, block: &Block) -> Result<u32> {
    if block.len() != k {
        return Err(Error::BlockLength {
            block: block.0.clone(),
            expected: k,
            found: block.len(),
        });
    }
    if let Some(&d) = block.0.iter().find(|&&d| d >= base) {
        return Err(Error::DigitOutOfRange {
            digit: u32::from(d),
            base,
        });
    }
    Ok(encode(base, &block.0))
}

/// `(s^k)!`
pub fn group_order(base: u8, k: usize) -> BigUint {
    let n = num::pow(BigUint::from(base), k);
    let mut acc = BigUint::from(1u8);
    let mut i = BigUint::from(1u8);
    while i <= n {
        acc *= &i;
        i += 1u8;
    }
    acc
}

/// Every permutation of `A^k` in lexicographic order of the image table.
pub fn enumerate_all(base: u8, k: usize) -> Result<Permutations> {
    enumerate_all_capped(base, k, ENUMERATION_CAP)
}

pub fn enumerate_all_capped(base: u8, k: usize, cap: usize) -> Result<Permutations> {
    check_base(u32::from(base))?;
    let blocks = u128::from(base).checked_pow(k as u32).unwrap_or(u128::MAX);
    if blocks > cap as u128 {
        return Err(Error::EnumerationCap { blocks, cap });
    }
    let first = BlockPermutation::identity(base, k)?;
    Ok(Permutations { next: Some(first) })
}

pub struct Permutations {
    next: Option<BlockPermutation>,
}

impl Iterator for Permutations {
    type Item = BlockPermutation;

    fn next(&mut self) -> Option<BlockPermutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ.table) {
            self.next = Some(succ);
        }
        Some(current)
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(list: &[(&[u8], &[u8])]) -> Vec<(Block, Block)> {
        list.iter().map(|(a, b)| (Block::from(*a), Block::from(*b))).collect()
    }

    pub(crate) fn ternary() -> BlockPermutation {
        BlockPermutation::from_table(3, 1, &pairs(&[(&[0], &[0]), (&[1], &[2]), (&[2], &[1])])).unwrap()
    }

    pub(crate) fn binary_pairs() -> BlockPermutation {
        BlockPermutation::from_table(
            2,
            2,
            &pairs(&[
                (&[0, 0], &[1, 0]),
                (&[0, 1], &[1, 1]),
                (&[1, 0], &[0, 0]),
                (&[1, 1], &[0, 1]),
            ]),
        )
        .unwrap()
    }

    #[test]
    fn builds_worked_tables() {
        assert_eq!(ternary().images(), &[0, 2, 1]);
        assert_eq!(binary_pairs().images(), &[2, 3, 0, 1]);
    }

    #[test]
    fn rejects_invalid_tables() {
        let dup_img = BlockPermutation::from_table(2, 1, &pairs(&[(&[0], &[0]), (&[1], &[0])]));
        assert_eq!(dup_img, Err(Error::DuplicateImage(vec![0])));
        let dup_pre = BlockPermutation::from_table(2, 1, &pairs(&[(&[0], &[0]), (&[0], &[1])]));
        assert_eq!(dup_pre, Err(Error::DuplicatePreimage(vec![0])));
        let missing = BlockPermutation::from_table(2, 1, &pairs(&[(&[0], &[1])]));
        assert_eq!(missing, Err(Error::MissingBlock(vec![1])));
        let range = BlockPermutation::from_table(2, 1, &pairs(&[(&[0], &[2]), (&[1], &[0])]));
        assert!(matches!(range, Err(Error::DigitOutOfRange { digit: 2, .. })));
        let len = BlockPermutation::from_table(2, 2, &pairs(&[(&[0], &[1])]));
        assert!(matches!(len, Err(Error::BlockLength { .. })));
        assert!(BlockPermutation::from_images(2, 1, vec![1, 1]).is_err());
        assert!(BlockPermutation::identity(2, 21).is_err());
    }

    #[test]
    fn apply_examples() {
        assert_eq!(ternary().apply(&Block::new(vec![1])).unwrap(), Block::new(vec![2]));
        let id = BlockPermutation::identity(4, 2).unwrap();
        assert_eq!(id.apply(&Block::new(vec![3, 1])).unwrap(), Block::new(vec![3, 1]));
        assert_eq!(
            binary_pairs().apply(&Block::new(vec![0, 0])).unwrap(),
            Block::new(vec![1, 0])
        );
        assert!(ternary().apply(&Block::new(vec![1, 1])).is_err());
        assert_eq!(binary_pairs().apply_blocks(&[1, 1, 0, 1]).unwrap(), vec![0, 1, 1, 1]);
        assert!(binary_pairs().apply_blocks(&[1, 1, 0]).is_err());
    }

    #[test]
    fn group_operations() {
        let p = ternary();
        let id = BlockPermutation::identity(3, 1).unwrap();
        assert_eq!(p.compose(&id).unwrap(), p);
        assert_eq!(p.inverse(), p);
        assert_eq!(p.compose(&p).unwrap(), id);
        let q = binary_pairs();
        assert_eq!(
            q.compose(&q.inverse()).unwrap(),
            BlockPermutation::identity(2, 2).unwrap()
        );
        assert!(p.compose(&q).is_err());
    }

    #[test]
    fn fixed_blocks_examples() {
        assert_eq!(ternary().fixed_blocks(), vec![Block::new(vec![0])]);
        assert!(binary_pairs().fixed_blocks().is_empty());
        assert_eq!(
            BlockPermutation::identity(2, 1).unwrap().fixed_blocks(),
            vec![Block::new(vec![0]), Block::new(vec![1])]
        );
    }

    #[test]
    fn linearity_examples() {
        assert_eq!(
            BlockPermutation::identity(3, 1).unwrap().classify_linearity(),
            Linearity::Identity
        );
        let swap = BlockPermutation::from_images(2, 1, vec![1, 0]).unwrap();
        assert_eq!(swap.classify_linearity(), Linearity::Complement);
        assert_eq!(ternary().classify_linearity(), Linearity::Other);
        let c = BlockPermutation::complement(3, 2).unwrap();
        assert_eq!(c.classify_linearity(), Linearity::Complement);
        assert_eq!(c.compose(&c).unwrap().classify_linearity(), Linearity::Identity);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_all(2, 1).unwrap().count(), 2);
        assert_eq!(enumerate_all(2, 2).unwrap().count(), 24);
        assert_eq!(enumerate_all(3, 1).unwrap().count(), 6);
        assert_eq!(enumerate_all(2, 3).unwrap().count(), 40320);
        assert!(matches!(
            enumerate_all(3, 2),
            Err(Error::EnumerationCap { blocks: 9, .. })
        ));
        assert_eq!(group_order(2, 2), BigUint::from(24u8));
    }

    #[test]
    fn enumeration_contains_the_linear_pair() {
        let all: Vec<_> = enumerate_all(2, 1).unwrap().map(|p| p.classify_linearity()).collect();
        assert_eq!(all, vec![Linearity::Identity, Linearity::Complement]);
    }

    #[test]
    fn display_is_config_layout() {
        let text = ternary().to_string();
        assert_eq!(text, "s = 3\nk = 1\n0 -> 0\n1 -> 2\n2 -> 1\n");
    }

    #[test]
    fn block_weights_follow_sign_pattern() {
        assert_eq!(
            BlockPermutation::block_weights(2, 2, RadixKind::SAdic),
            vec![0, 1, 2, 3]
        );
        assert_eq!(
            BlockPermutation::block_weights(2, 2, RadixKind::NegaSAdic),
            vec![0, 1, -2, -1]
        );
    }
}
