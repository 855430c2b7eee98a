//! The six function forms built from block permutations and radix
//! reinterpretation, and their exact evaluation.
//!
//! * `f^s_k` applies θ to every consecutive `k`-digit block of an s-adic
//!   expansion.
//! * `f_+` reads the digits of an s-adic expansion as a nega-s-adic one.
//! * `f_+^{-1}` does the reverse.
//! * `f_+ ∘ f^s_k`, `f^s_k ∘ f_+^{-1}` and `f_+ ∘ f^s_k ∘ f_+^{-1}` chain these.
//!
//! Every form is a blockwise digit map followed by a change of radix kind,
//! so evaluation works on digit sequences: the canonical input digits are
//! mapped once and then read in the range kind.

use std::fmt;

use crate::digits::{check_base, DigitExpansion, RadixKind};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::theta::{BlockPermutation, Linearity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    Fsk,
    FPlus,
    FPlusInv,
    FPlusAfterFsk,
    FskAfterFPlusInv,
    FPlusAfterFskAfterFPlusInv,
}

impl Form {
    pub const ALL: [Form; 6] = [
        Form::Fsk,
        Form::FPlus,
        Form::FPlusInv,
        Form::FPlusAfterFsk,
        Form::FskAfterFPlusInv,
        Form::FPlusAfterFskAfterFPlusInv,
    ];

    /// Name used in function spec files.
    pub fn name(self) -> &'static str {
        match self {
            Form::Fsk => "fsk",
            Form::FPlus => "fplus",
            Form::FPlusInv => "fplusinv",
            Form::FPlusAfterFsk => "fplus∘fsk",
            Form::FskAfterFPlusInv => "fsk∘fplusinv",
            Form::FPlusAfterFskAfterFPlusInv => "fplus∘fsk∘fplusinv",
        }
    }

    /// Accepts the spec-file names; `.` and `o` (space separated) are
    /// accepted in place of `∘`.
    pub fn parse(text: &str) -> Option<Form> {
        let norm: String = text
            .trim()
            .replace(" o ", "∘")
            .replace('.', "∘")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        Form::ALL.into_iter().find(|f| f.name() == norm)
    }

    pub fn has_theta(self) -> bool {
        !matches!(self, Form::FPlus | Form::FPlusInv)
    }

    pub fn domain_kind(self) -> RadixKind {
        match self {
            Form::Fsk | Form::FPlus | Form::FPlusAfterFsk => RadixKind::SAdic,
            _ => RadixKind::NegaSAdic,
        }
    }

    pub fn range_kind(self) -> RadixKind {
        match self {
            Form::Fsk | Form::FPlusInv | Form::FskAfterFPlusInv => RadixKind::SAdic,
            _ => RadixKind::NegaSAdic,
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One factor of a composition, listed in written order (the leftmost
/// factor is applied last).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Part {
    Fsk(BlockPermutation),
    FPlus,
    FPlusInv,
}

/// Whether the function equals one of the affine maps in the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearClass {
    /// `y = x`
    IdentityLinear,
    /// `y = 1 − x` on s-adic inputs, `y = −(s−1)/(s+1) − x` on nega-s-adic ones.
    ComplementLinear,
    /// Any other affine member, `y = slope·x + intercept`.
    AffineLinear {
        slope: i8,
        intercept: Rational,
    },
    NotLinear,
}

impl LinearClass {
    pub fn is_linear(&self) -> bool {
        !matches!(self, LinearClass::NotLinear)
    }

    pub fn label(&self) -> &'static str {
        match self {
            LinearClass::IdentityLinear => "IdentityLinear",
            LinearClass::ComplementLinear => "ComplementLinear",
            LinearClass::AffineLinear { .. } => "AffineLinear",
            LinearClass::NotLinear => "NotLinear",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaFunction {
    form: Form,
    base: u8,
    // θ for forms containing f^s_k, the 1-digit identity otherwise.
    map: BlockPermutation,
}

impl LambdaFunction {
    pub fn fsk(theta: BlockPermutation) -> Self {
        LambdaFunction {
            form: Form::Fsk,
            base: theta.base(),
            map: theta,
        }
    }

    pub fn fplus(base: u8) -> Result<Self> {
        Self::without_theta(Form::FPlus, base)
    }

    pub fn fplus_inv(base: u8) -> Result<Self> {
        Self::without_theta(Form::FPlusInv, base)
    }

    fn without_theta(form: Form, base: u8) -> Result<Self> {
        check_base(u32::from(base))?;
        Ok(LambdaFunction {
            form,
            base,
            map: BlockPermutation::identity(base, 1)?,
        })
    }

    /// Builds one of the three composite forms from its factors.
    pub fn compose(parts: Vec<Part>) -> Result<Self> {
        let describe = |parts: &[Part]| {
            parts
                .iter()
                .map(|p| match p {
                    Part::Fsk(_) => "fsk",
                    Part::FPlus => "fplus",
                    Part::FPlusInv => "fplusinv",
                })
                .collect::<Vec<_>>()
                .join("∘")
        };
        let name = describe(&parts);
        let (form, theta) = match <[Part; 2]>::try_from(parts) {
            Ok([Part::FPlus, Part::Fsk(t)]) => (Form::FPlusAfterFsk, t),
            Ok([Part::Fsk(t), Part::FPlusInv]) => (Form::FskAfterFPlusInv, t),
            Ok(_) => return Err(Error::IllegalComposition(name)),
            Err(parts) => match <[Part; 3]>::try_from(parts) {
                Ok([Part::FPlus, Part::Fsk(t), Part::FPlusInv]) => (Form::FPlusAfterFskAfterFPlusInv, t),
                _ => return Err(Error::IllegalComposition(name)),
            },
        };
        Self::with_form(form, theta)
    }

    /// Form plus θ; θ is ignored (and may be any table) for `fplus`/`fplusinv`.
    pub fn with_form(form: Form, theta: BlockPermutation) -> Result<Self> {
        if form.has_theta() {
            Ok(LambdaFunction {
                form,
                base: theta.base(),
                map: theta,
            })
        } else {
            Self::without_theta(form, theta.base())
        }
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn base(&self) -> u8 {
        self.base
    }

    pub fn permutation(&self) -> Option<&BlockPermutation> {
        self.form.has_theta().then_some(&self.map)
    }

    /// Blockwise digit map; the 1-digit identity for forms without θ.
    pub fn digit_map(&self) -> &BlockPermutation {
        &self.map
    }

    pub fn block_size(&self) -> usize {
        self.map.block_size()
    }

    pub fn domain_kind(&self) -> RadixKind {
        self.form.domain_kind()
    }

    pub fn range_kind(&self) -> RadixKind {
        self.form.range_kind()
    }

    pub fn domain_interval(&self) -> (Rational, Rational) {
        self.domain_kind().interval(self.base)
    }

    pub fn range_interval(&self) -> (Rational, Rational) {
        self.range_kind().interval(self.base)
    }

    fn check_input(&self, e: &DigitExpansion) -> Result<()> {
        if e.base() != self.base {
            return Err(Error::BaseMismatch(e.base(), self.base));
        }
        if e.kind() != self.domain_kind() {
            return Err(Error::KindMismatch {
                expected: self.domain_kind(),
                found: e.kind(),
            });
        }
        Ok(())
    }

    /// Digit-level image of any representation, without canonicalization.
    /// This is the map the one-sided limits and twin evaluations use.
    pub fn evaluate_expansion_raw(&self, e: &DigitExpansion) -> Result<DigitExpansion> {
        self.check_input(e)?;
        let aligned = e.align_blocks(self.block_size());
        let pre = self.map.apply_blocks(aligned.preperiod())?;
        let per = self.map.apply_blocks(aligned.period())?;
        Ok(DigitExpansion::from_parts(self.base, self.range_kind(), pre, per))
    }

    /// Image of a canonical expansion (interval endpoints allowed), canonicalized.
    pub fn evaluate_expansion(&self, e: &DigitExpansion) -> Result<DigitExpansion> {
        self.check_input(e)?;
        if e.has_forbidden_tail() && !e.is_endpoint() {
            return Err(Error::NonCanonicalInput(e.to_string()));
        }
        Ok(self.evaluate_expansion_raw(e)?.canonicalize())
    }

    /// `f(q)` under the canonical representation of `q`.
    pub fn evaluate_point(&self, q: &Rational) -> Result<Rational> {
        let e = DigitExpansion::from_rational(q, self.base, self.domain_kind())?;
        Ok(self.evaluate_expansion_raw(&e)?.value())
    }

    /// Image of a finite digit prefix; the length must be a multiple of `k`.
    pub fn evaluate_prefix(&self, digits: &[u8]) -> Result<Vec<u8>> {
        if let Some(&d) = digits.iter().find(|&&d| d >= self.base) {
            return Err(Error::DigitOutOfRange {
                digit: u32::from(d),
                base: self.base,
            });
        }
        self.map.apply_blocks(digits)
    }

    /// Detects whether `f` is affine as a whole.
    ///
    /// Block `m` contributes `σ^m s^{−km} W(b)/s^k` with `σ = (−1)^k` for
    /// nega-s-adic and `1` for s-adic, `W` the signed block value. `f` is
    /// affine iff `W_out(θ b) = a·W_in(b) + C` for every block and the two
    /// block-sign patterns agree, giving `y = a·x + C/(s^k − σ)`.
    pub fn linearity(&self) -> LinearClass {
        let k = self.block_size();
        let s = self.base;
        let block_sign = |kind: RadixKind| {
            if kind == RadixKind::NegaSAdic && k % 2 == 1 {
                -1
            } else {
                1
            }
        };
        let sigma = block_sign(self.range_kind());
        if block_sign(self.domain_kind()) != sigma {
            return LinearClass::NotLinear;
        }
        let w_in = BlockPermutation::block_weights(s, k, self.domain_kind());
        let w_out = BlockPermutation::block_weights(s, k, self.range_kind());
        let img = self.map.images();
        let out = |c: usize| w_out[img[c] as usize];
        // Codes 0 and 1 differ only in the last digit, so W_in differs by ±1.
        let slope = (out(1) - out(0)) * (w_in[1] - w_in[0]);
        if slope.abs() != 1 {
            return LinearClass::NotLinear;
        }
        let offset = out(0) - slope * w_in[0];
        if (0..img.len()).any(|c| out(c) != slope * w_in[c] + offset) {
            return LinearClass::NotLinear;
        }
        let sk = i64::from(s).pow(k as u32);
        let intercept = rational::ratio(offset, sk - sigma);
        let same_kind = self.domain_kind() == self.range_kind();
        if same_kind && slope == 1 && intercept == rational::integer(0) {
            LinearClass::IdentityLinear
        } else if same_kind && slope == -1 && intercept == self.range_kind().complement_sum(s) {
            LinearClass::ComplementLinear
        } else {
            LinearClass::AffineLinear {
                slope: slope as i8,
                intercept,
            }
        }
    }

    /// `θ`-level linearity of the embedded permutation (forms with θ only).
    pub fn theta_linearity(&self) -> Option<Linearity> {
        self.permutation().map(BlockPermutation::classify_linearity)
    }
}

impl fmt::Display for LambdaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.block_size();
        let s = self.base;
        match self.form {
            Form::Fsk => write!(f, "f^{s}_{k}"),
            Form::FPlus => write!(f, "f_+ (s={s})"),
            Form::FPlusInv => write!(f, "f_+^-1 (s={s})"),
            Form::FPlusAfterFsk => write!(f, "f_+ ∘ f^{s}_{k}"),
            Form::FskAfterFPlusInv => write!(f, "f^{s}_{k} ∘ f_+^-1"),
            Form::FPlusAfterFskAfterFPlusInv => write!(f, "f_+ ∘ f^{s}_{k} ∘ f_+^-1"),
        }
    }
}
