//! Exact construction and analysis of functions defined by permuting blocks
//! of s-adic and nega-s-adic digits.
//!
//! The crate is organized bottom-up:
//!
//! * [`digits`]: eventually periodic expansions, canonical forms, twins.
//! * [`theta`]: block permutations of `A^k` and their group structure.
//! * [`lambda_fn`]: the six function forms and their exact evaluation.
//! * [`analysis`]: invariant sets, functional equations, one-sided limits,
//!   difference quotients, box counting and the Lebesgue integral.
//! * [`config`], [`report`], [`verify`]: spec files, serialized reports and
//!   the per-function verification suite used by the CLI.
//!
//! ```
//! use blockperm::{BlockPermutation, LambdaFunction, rational::ratio};
//!
//! let theta = BlockPermutation::from_images(3, 1, vec![0, 2, 1])?;
//! let f = LambdaFunction::fsk(theta);
//! assert_eq!(f.evaluate_point(&ratio(1, 3))?, ratio(2, 3));
//! # Ok::<(), blockperm::Error>(())
//! ```

pub mod analysis;
pub mod config;
pub mod digits;
mod error;
pub mod lambda_fn;
pub mod rational;
pub mod report;
pub mod sample;
pub mod theta;
pub mod verify;

pub use digits::{DigitExpansion, RadixKind};
pub use error::{Error, Result};
pub use lambda_fn::{Form, LambdaFunction, LinearClass, Part};
pub use rational::Rational;
pub use theta::{Block, BlockPermutation, Linearity};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/expansions.md")]
    mod expansions {}
    #[doc = include_str!("../../../book/src/permutations.md")]
    mod permutations {}
    #[doc = include_str!("../../../book/src/functions.md")]
    mod functions {}
    #[doc = include_str!("../../../book/src/analysis.md")]
    mod analysis {}
    #[doc = include_str!("../../../book/src/invariant-sets.md")]
    mod invariant_sets {}
    #[doc = include_str!("../../../book/src/limits.md")]
    mod limits {}
    #[doc = include_str!("../../../book/src/quotients.md")]
    mod quotients {}
    #[doc = include_str!("../../../book/src/box-counting.md")]
    mod box_counting {}
    #[doc = include_str!("../../../book/src/integral.md")]
    mod integral {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
