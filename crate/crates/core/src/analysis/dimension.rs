use std::fmt;

use num::{BigInt, BigUint, One, ToPrimitive, Zero};

use crate::rational::{self, Rational};

/// `log(arg) / (divisor · log base)`, kept symbolic.
///
/// This is the shape of every dimension the crate reports: `log_s j / k` for
/// invariant sets, `log(count) / (N log s)` for box counts. The value is
/// rational exactly when `arg` is a power of the minimal root of `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogDimension {
    arg: BigUint,
    base: u8,
    divisor: u64,
}

/// `(r, e)` with `base = r^e` and `e` maximal.
fn minimal_root(base: u8) -> (u64, u32) {
    let b = u64::from(base);
    for r in 2..=b {
        let mut p = r;
        let mut e = 1;
        while p < b {
            p *= r;
            e += 1;
        }
        if p == b {
            return (r, e);
        }
    }
    unreachable!("base >= 2")
}

impl LogDimension {
    /// Panics if `arg` is zero, `base < 2` or `divisor` is zero.
    pub fn new(arg: impl Into<BigUint>, base: u8, divisor: u64) -> Self {
        let arg = arg.into();
        assert!(!arg.is_zero(), "logarithm of zero");
        assert!(base >= 2 && divisor >= 1);
        LogDimension { arg, base, divisor }
    }

    pub fn arg(&self) -> &BigUint {
        &self.arg
    }

    pub fn base(&self) -> u8 {
        self.base
    }

    pub fn divisor(&self) -> u64 {
        self.divisor
    }

    /// Exact rational value, when there is one.
    pub fn exact(&self) -> Option<Rational> {
        if self.arg.is_one() {
            return Some(rational::integer(0));
        }
        let (r, e) = minimal_root(self.base);
        let r = BigUint::from(r);
        let mut a = self.arg.clone();
        let mut power = 0u64;
        while (&a % &r).is_zero() {
            a /= &r;
            power += 1;
        }
        a.is_one()
            .then(|| Rational::new(BigInt::from(power), BigInt::from(u64::from(e) * self.divisor)))
    }

    pub fn to_f64(&self) -> f64 {
        let ln_arg = match self.arg.to_f64() {
            Some(v) if v.is_finite() => v.ln(),
            _ => self.arg.bits() as f64 * std::f64::consts::LN_2,
        };
        ln_arg / (self.divisor as f64 * f64::from(self.base).ln())
    }

    /// Exact comparison. For a common base this is `A₁^{d₂} = A₂^{d₁}`.
    pub fn same_value(&self, other: &Self) -> bool {
        if self.base == other.base {
            return num::pow(self.arg.clone(), other.divisor as usize)
                == num::pow(other.arg.clone(), self.divisor as usize);
        }
        match (self.exact(), other.exact()) {
            (Some(a), Some(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() < 1e-12,
        }
    }

    /// Symbolic form, e.g. `log(2)/(1·log(4))`.
    pub fn symbolic(&self) -> String {
        format!("log({})/({}·log({}))", self.arg, self.divisor, self.base)
    }
}

impl fmt::Display for LogDimension {
    /// Exact fraction when rational, otherwise a 12-digit decimal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact() {
            Some(q) => f.write_str(&rational::fraction(&q)),
            None => write!(f, "{:.12}", self.to_f64()),
        }
    }
}
