//! Eventually periodic s-adic and nega-s-adic digit expansions.
//!
//! An expansion is stored as a preperiod and a nonempty period. The s-adic
//! value is `Σ αₙ/sⁿ`, the nega-s-adic value `Σ (−1)ⁿ αₙ/sⁿ`. Every rational
//! in the kind's interval has an eventually periodic expansion, so this
//! representation is exact for every value the crate works with.
//!
//! Numbers with two expansions (s-adic rationals, and their nega-s-adic
//! analogue with alternating `0`/`s−1` tails) are stored in one canonical
//! form: the s-adic `(s−1)`-tail is excluded, and so is the nega-s-adic tail
//! that carries `s−1` on even positions. [`DigitExpansion::dual`] recovers the
//! excluded twin when the analysis needs it.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num::{BigInt, FromPrimitive, Integer, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RadixKind {
    SAdic,
    NegaSAdic,
}

impl RadixKind {
    /// Closed value interval: `[0, 1]` or `[−s/(s+1), 1/(s+1)]`.
    pub fn interval(self, base: u8) -> (Rational, Rational) {
        let s = i64::from(base);
        match self {
            RadixKind::SAdic => (rational::integer(0), rational::integer(1)),
            RadixKind::NegaSAdic => (rational::ratio(-s, s + 1), rational::ratio(1, s + 1)),
        }
    }

    pub fn contains(self, base: u8, q: &Rational) -> bool {
        let (lo, hi) = self.interval(base);
        &lo <= q && q <= &hi
    }

    /// Sign of the digit at 1-based `position`.
    pub fn sign(self, position: usize) -> i32 {
        match self {
            RadixKind::SAdic => 1,
            RadixKind::NegaSAdic if position.is_multiple_of(2) => 1,
            RadixKind::NegaSAdic => -1,
        }
    }

    /// Value shared by both `x` and the digitwise complement of `x`:
    /// `1` for s-adic, `−(s−1)/(s+1)` for nega-s-adic.
    pub fn complement_sum(self, base: u8) -> Rational {
        let s = i64::from(base);
        match self {
            RadixKind::SAdic => rational::integer(1),
            RadixKind::NegaSAdic => rational::ratio(-(s - 1), s + 1),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            RadixKind::SAdic => "pos",
            RadixKind::NegaSAdic => "neg",
        }
    }

    pub(crate) fn out_of_range(self, base: u8, q: &Rational) -> Error {
        let (lo, hi) = self.interval(base);
        Error::OutsideInterval {
            value: rational::fraction(q),
            kind: self,
            base,
            lo: rational::fraction(&lo),
            hi: rational::fraction(&hi),
        }
    }
}

impl fmt::Display for RadixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RadixKind::SAdic => "s-adic",
            RadixKind::NegaSAdic => "nega-s-adic",
        })
    }
}

/// Eventually periodic digit sequence `α₁α₂…` together with its radix kind.
///
/// Equality is structural. After [`canonicalize`](Self::canonicalize) two
/// expansions are equal exactly when their values are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitExpansion {
    base: u8,
    kind: RadixKind,
    preperiod: Vec<u8>,
    period: Vec<u8>,
}

pub(crate) fn check_base(base: u32) -> Result<u8> {
    if (2..=255).contains(&base) {
        Ok(base as u8)
    } else {
        Err(Error::InvalidBase(base))
    }
}

impl DigitExpansion {
    pub fn new(base: u8, kind: RadixKind, preperiod: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        check_base(u32::from(base))?;
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        if let Some(&d) = preperiod.iter().chain(&period).find(|&&d| d >= base) {
            return Err(Error::DigitOutOfRange {
                digit: u32::from(d),
                base,
            });
        }
        Ok(DigitExpansion {
            base,
            kind,
            preperiod,
            period,
        })
    }

    pub(crate) fn from_parts(base: u8, kind: RadixKind, preperiod: Vec<u8>, period: Vec<u8>) -> Self {
        debug_assert!(!period.is_empty());
        debug_assert!(preperiod.iter().chain(&period).all(|&d| d < base));
        DigitExpansion {
            base,
            kind,
            preperiod,
            period,
        }
    }

    pub fn zero(base: u8, kind: RadixKind) -> Self {
        Self::from_parts(base, kind, Vec::new(), vec![0])
    }

    pub fn base(&self) -> u8 {
        self.base
    }

    pub fn kind(&self) -> RadixKind {
        self.kind
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    /// Digit at 1-based position `n`.
    pub fn digit(&self, n: usize) -> u8 {
        assert!(n >= 1, "digit positions start at 1");
        let p = self.preperiod.len();
        if n <= p {
            self.preperiod[n - 1]
        } else {
            self.period[(n - p - 1) % self.period.len()]
        }
    }

    /// First `n` digits `α₁…αₙ`.
    pub fn prefix(&self, n: usize) -> Vec<u8> {
        (1..=n).map(|i| self.digit(i)).collect()
    }

    /// Same digit sequence read in another radix kind.
    pub fn with_kind(&self, kind: RadixKind) -> Self {
        DigitExpansion { kind, ..self.clone() }
    }

    /// Same sequence with the digit at 1-based position `n` replaced.
    pub fn with_digit(&self, n: usize, digit: u8) -> Result<Self> {
        if digit >= self.base {
            return Err(Error::DigitOutOfRange {
                digit: u32::from(digit),
                base: self.base,
            });
        }
        let mut e = self.unrolled(n.max(self.preperiod.len()));
        e.preperiod[n - 1] = digit;
        Ok(e)
    }

    /// Equivalent expansion with a preperiod of exactly `len` digits
    /// (`len` must not be shorter than the current preperiod).
    fn unrolled(&self, len: usize) -> Self {
        let p = self.preperiod.len();
        debug_assert!(len >= p);
        let mut period = self.period.clone();
        let shift = (len - p) % period.len();
        period.rotate_left(shift);
        DigitExpansion {
            preperiod: self.prefix(len),
            period,
            ..self.clone()
        }
    }

    /// Exact value by geometric summation of the preperiod and periodic tail.
    pub fn value(&self) -> Rational {
        let s = BigInt::from(self.base);
        let p = self.preperiod.len();
        // Σ ε(i) d_i s^{len−i}, positions counted from `first_pos`; digits are
        // folded into i64 chunks before touching the big integer.
        let chunk = (1..)
            .take_while(|&c| i64::from(self.base).checked_pow(c + 1).is_some())
            .last()
            .unwrap_or(1) as usize;
        let signed = |digits: &[u8], first_pos: usize| -> BigInt {
            let mut acc = BigInt::zero();
            for (c, part) in digits.chunks(chunk).enumerate() {
                let small = part.iter().enumerate().fold(0i64, |a, (i, &d)| {
                    a * i64::from(self.base) + i64::from(self.kind.sign(first_pos + c * chunk + i)) * i64::from(d)
                });
                acc = acc * num::pow(s.clone(), part.len()) + small;
            }
            acc
        };
        let head = Rational::new(signed(&self.preperiod, 1), num::pow(s.clone(), p));

        let mut period = self.period.clone();
        if self.kind == RadixKind::NegaSAdic && period.len() % 2 == 1 {
            period.extend_from_within(..);
        }
        let len = period.len();
        // Relative signs restart at position 1 of the tail; the global factor
        // ε(p) carries the offset.
        let w = signed(&period, 1);
        let mut tail = Rational::new(w, (num::pow(s.clone(), len) - 1u8) * num::pow(s, p));
        if self.kind.sign(p) < 0 {
            tail = -tail;
        }
        head + tail
    }

    /// Canonical expansion of `q` in base `base`.
    pub fn from_rational(q: &Rational, base: u8, kind: RadixKind) -> Result<Self> {
        check_base(u32::from(base))?;
        if !kind.contains(base, q) {
            return Err(kind.out_of_range(base, q));
        }
        let (pre, per) = match (q.numer().to_i128(), q.denom().to_i128()) {
            (Some(a), Some(b)) if b <= DENSE_LIMIT => extract_dense(a as i64, b as i64, base, kind),
            (Some(a), Some(b)) if b < (1i128 << 60) => extract(a, b, base, kind),
            _ => extract(q.numer().clone(), q.denom().clone(), base, kind),
        };
        Ok(Self::from_parts(base, kind, pre, per).canonicalize())
    }

    /// Shortest preperiod and primitive period describing the same sequence.
    pub fn normalized(&self) -> Self {
        let mut period = self.period.clone();
        let len = period.len();
        if let Some(d) = (1..=len).find(|&d| len.is_multiple_of(d) && (d..len).all(|i| period[i] == period[i - d])) {
            period.truncate(d);
        }
        let mut preperiod = self.preperiod.clone();
        while let (Some(&a), Some(&b)) = (preperiod.last(), period.last()) {
            if a != b {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        DigitExpansion {
            preperiod,
            period,
            ..self.clone()
        }
    }

    fn top_digit(&self) -> u8 {
        self.base - 1
    }

    /// Alternating `0`/`s−1` period that starts at position `p + 1` and puts
    /// `s−1` on positions whose parity is `odd_tops` (odd if true).
    fn alternating(&self, p: usize, odd_tops: bool) -> [u8; 2] {
        let first_is_odd = (p + 1) % 2 == 1;
        if first_is_odd == odd_tops {
            [self.top_digit(), 0]
        } else {
            [0, self.top_digit()]
        }
    }

    /// Whether the (normalized) sequence ends in the excluded representation.
    pub fn has_forbidden_tail(&self) -> bool {
        let e = self.normalized();
        match e.kind {
            RadixKind::SAdic => e.period == [e.top_digit()],
            RadixKind::NegaSAdic => e.period == e.alternating(e.preperiod.len(), false),
        }
    }

    /// The interval's upper endpoint, whose only expansion is the excluded tail.
    pub fn is_endpoint(&self) -> bool {
        let e = self.normalized();
        e.preperiod.is_empty() && e.has_forbidden_tail()
    }

    pub fn is_canonical(&self) -> bool {
        !self.has_forbidden_tail()
    }

    /// Value-preserving rewrite into the allowed representation, in minimal form.
    /// Interval endpoints are returned normalized but otherwise unchanged.
    pub fn canonicalize(&self) -> Self {
        let mut e = self.normalized();
        if !e.has_forbidden_tail() || e.preperiod.is_empty() {
            return e;
        }
        let n = e.preperiod.len();
        match e.kind {
            RadixKind::SAdic => {
                e.preperiod[n - 1] += 1;
                e.period = vec![0];
            }
            RadixKind::NegaSAdic => {
                if n % 2 == 1 {
                    e.preperiod[n - 1] -= 1;
                } else {
                    e.preperiod[n - 1] += 1;
                }
                e.period = e.alternating(n, true).to_vec();
            }
        }
        e.normalized()
    }

    /// The excluded twin with the same value, when one exists.
    pub fn dual(&self) -> Option<Self> {
        let mut e = self.canonicalize();
        let n = e.preperiod.len();
        if n == 0 {
            return None;
        }
        match e.kind {
            RadixKind::SAdic => {
                if e.period != [0] {
                    return None;
                }
                e.preperiod[n - 1] -= 1;
                e.period = vec![e.top_digit()];
            }
            RadixKind::NegaSAdic => {
                if e.period != e.alternating(n, true) {
                    return None;
                }
                if n % 2 == 1 {
                    e.preperiod[n - 1] += 1;
                } else {
                    e.preperiod[n - 1] -= 1;
                }
                e.period = e.alternating(n, false).to_vec();
            }
        }
        Some(e)
    }

    /// Digitwise `α ↦ s−1−α`. The value becomes `1 − x` (s-adic) or
    /// `−(s−1)/(s+1) − x` (nega-s-adic).
    pub fn complement(&self) -> Self {
        let top = self.top_digit();
        DigitExpansion {
            preperiod: self.preperiod.iter().map(|d| top - d).collect(),
            period: self.period.iter().map(|d| top - d).collect(),
            ..self.clone()
        }
    }

    /// Equivalent expansion whose preperiod and period lengths are multiples of `k`.
    pub fn align_blocks(&self, k: usize) -> Self {
        assert!(k >= 1, "block size must be positive");
        let p = self.preperiod.len();
        let mut e = self.unrolled(p.div_ceil(k) * k);
        let len = e.period.len();
        let target = len.lcm(&k);
        let base_period = e.period.clone();
        while e.period.len() < target {
            e.period.extend_from_slice(&base_period);
        }
        e
    }
}

/// Peels digits of `a/b` until the residual repeats.
const DENSE_LIMIT: i128 = 1 << 22;

/// [`extract`] for small denominators: remainders live in a window of at
/// most `b + 1` integers, so cycle detection uses a flat table.
fn extract_dense(a: i64, b: i64, base: u8, kind: RadixKind) -> (Vec<u8>, Vec<u8>) {
    let s = i64::from(base);
    if kind == RadixKind::SAdic && a == b {
        return (Vec::new(), vec![base - 1]);
    }
    let lo = match kind {
        RadixKind::SAdic => 0,
        RadixKind::NegaSAdic => (-s * b).div_euclid(s + 1),
    };
    let mut seen = vec![u32::MAX; (b + 2) as usize];
    let mut digits: Vec<u8> = Vec::new();
    let mut r = a;
    loop {
        let slot = &mut seen[(r - lo) as usize];
        if *slot != u32::MAX {
            let period = digits.split_off(*slot as usize);
            return (digits, period);
        }
        *slot = digits.len() as u32;
        let d = match kind {
            RadixKind::SAdic => {
                let t = s * r;
                r = t % b;
                t / b
            }
            RadixKind::NegaSAdic => {
                let u = -s * r;
                let d = (-((-((s + 1) * u - b)).div_euclid((s + 1) * b))).clamp(0, s - 1);
                r = u - d * b;
                d
            }
        };
        digits.push(d as u8);
    }
}

fn extract<T>(a: T, b: T, base: u8, kind: RadixKind) -> (Vec<u8>, Vec<u8>)
where
    T: Integer + Signed + Clone + Hash + FromPrimitive + ToPrimitive,
{
    let s = T::from_u8(base).unwrap();
    let mut digits: Vec<u8> = Vec::new();
    let mut seen: HashMap<T, usize> = HashMap::new();
    let mut r = a;

    if kind == RadixKind::SAdic && r == b {
        return (Vec::new(), vec![base - 1]);
    }
    let s1 = s.clone() + T::one();
    let top = T::from_u8(base - 1).unwrap();
    loop {
        if let Some(&start) = seen.get(&r) {
            let period = digits.split_off(start);
            return (digits, period);
        }
        seen.insert(r.clone(), digits.len());
        let d = match kind {
            RadixKind::SAdic => {
                let t = s.clone() * r;
                let (d, rem) = t.div_rem(&b);
                r = rem;
                d
            }
            RadixKind::NegaSAdic => {
                // −s·x − α must stay in [−s/(s+1), 1/(s+1)]; take the lowest
                // admissible digit.
                let u = -(s.clone() * r);
                let lower = s1.clone() * u.clone() - b.clone();
                let den = s1.clone() * b.clone();
                let d = (-((-lower).div_floor(&den))).clamp(T::zero(), top.clone());
                r = u - d.clone() * b.clone();
                d
            }
        };
        digits.push(d.to_u8().expect("digit fits base"));
    }
}

impl fmt::Display for DigitExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |d: &[u8]| d.iter().map(u8::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "s:{}:{}:{}:({})",
            self.base,
            self.kind.tag(),
            join(&self.preperiod),
            join(&self.period)
        )
    }
}

impl FromStr for DigitExpansion {
    type Err = Error;

    /// Parses `s:<base>:<pos|neg>:<preperiod>:(<period>)`, e.g. `s:3:pos:2:(1)`.
    fn from_str(text: &str) -> Result<Self> {
        let err = |message: &str| Error::Literal {
            literal: text.to_string(),
            message: message.to_string(),
        };
        let parts: Vec<&str> = text.trim().splitn(5, ':').collect();
        let [tag, base, kind, pre, per] = parts[..] else {
            return Err(err("expected s:<base>:<kind>:<preperiod>:(<period>)"));
        };
        if tag != "s" {
            return Err(err("literal must start with `s:`"));
        }
        let base: u32 = base.trim().parse().map_err(|_| err("bad base"))?;
        let base = check_base(base)?;
        let kind = match kind.trim() {
            "pos" => RadixKind::SAdic,
            "neg" => RadixKind::NegaSAdic,
            _ => return Err(err("kind must be `pos` or `neg`")),
        };
        let digits = |list: &str| -> Result<Vec<u8>> {
            let list = list.trim();
            if list.is_empty() {
                return Ok(Vec::new());
            }
            list.split(',')
                .map(|d| {
                    let v: u32 = d.trim().parse().map_err(|_| err("bad digit"))?;
                    u8::try_from(v)
                        .ok()
                        .filter(|&v| v < base)
                        .ok_or(Error::DigitOutOfRange { digit: v, base })
                })
                .collect()
        };
        let per = per
            .trim()
            .strip_prefix('(')
            .and_then(|p| p.strip_suffix(')'))
            .ok_or_else(|| err("period must be parenthesized"))?;
        DigitExpansion::new(base, kind, digits(pre)?, digits(per)?)
    }
}
