//! Exact symbol values: `coeff · √radicand`, degrading to a high-precision
//! decimal when surds with different square-free radicands are added.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::primes::reduce_sqrt;
use crate::error::{Error, Result};
use crate::spin::ExactRational;

/// Default working precision of the decimal fallback, in significant digits.
pub const DEFAULT_DIGITS: u32 = 50;

const GUARD_DIGITS: u32 = 12;

/// A decimal `mantissa · 10^exp10` carrying the number of significant digits
/// it is trusted to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighPrecision {
    mantissa: BigInt,
    exp10: i64,
    digits: u32,
}

fn pow10(n: u32) -> BigUint {
    BigUint::from(10u32).pow(n)
}

fn decimal_len(n: &BigUint) -> u32 {
    if n.is_zero() {
        0
    } else {
        n.to_str_radix(10).len() as u32
    }
}

impl HighPrecision {
    pub fn zero(digits: u32) -> Self {
        HighPrecision {
            mantissa: BigInt::zero(),
            exp10: 0,
            digits,
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// `floor(|coeff|·√k · 10^scale)` with the sign of `coeff`.
    fn surd_at_scale(coeff: &BigRational, k: &BigUint, scale: i64) -> BigInt {
        let n = coeff.numer().magnitude();
        let d = coeff.denom().magnitude();
        // √(n²k/d²) · 10^scale
        let mut top = n * n * k;
        let mut bottom = d * d;
        if scale >= 0 {
            top *= pow10(2 * scale as u32);
        } else {
            bottom *= pow10(2 * (-scale) as u32);
        }
        let root = (top / bottom).sqrt();
        BigInt::from_biguint(coeff.numer().sign(), root)
    }

    /// Rough base-10 magnitude of `|coeff|·√k`.
    fn surd_log10(coeff: &BigRational, k: &BigUint) -> f64 {
        let bits = |x: &BigUint| x.bits() as f64;
        let n = coeff.numer().magnitude();
        let d = coeff.denom().magnitude();
        ((bits(n) - bits(d)) + bits(k) / 2.0) * std::f64::consts::LOG10_2
    }

    /// Evaluate `Σ cᵢ√kᵢ` to `digits` significant digits. The radicands must be
    /// distinct and square-free with nonzero coefficients, so the sum is nonzero.
    fn sum_of_surds(terms: &[(BigRational, BigUint)], digits: u32) -> Self {
        if terms.is_empty() {
            return Self::zero(digits);
        }
        let top = terms
            .iter()
            .map(|(c, k)| Self::surd_log10(c, k))
            .fold(f64::MIN, f64::max);
        let mut scale = (digits + GUARD_DIGITS) as i64 - top.floor() as i64;
        loop {
            let total: BigInt = terms
                .iter()
                .map(|(c, k)| Self::surd_at_scale(c, k, scale))
                .sum();
            let len = decimal_len(total.magnitude());
            if len >= digits + GUARD_DIGITS / 2 {
                return Self {
                    mantissa: total,
                    exp10: -scale,
                    digits,
                }
                .rounded();
            }
            scale += (digits + GUARD_DIGITS - len) as i64 + 4;
        }
    }

    fn from_surd(coeff: &BigRational, k: &BigUint, digits: u32) -> Self {
        if coeff.is_zero() {
            return Self::zero(digits);
        }
        Self::sum_of_surds(&[(coeff.clone(), k.clone())], digits)
    }

    /// Round the mantissa to `digits` significant digits.
    fn rounded(mut self) -> Self {
        let len = decimal_len(self.mantissa.magnitude());
        if len > self.digits {
            let drop = len - self.digits;
            let div = BigInt::from(pow10(drop));
            let half = &div / 2;
            let mag = self.mantissa.abs();
            let q: BigInt = (mag + half) / div;
            self.mantissa = if self.mantissa.is_negative() { -q } else { q };
            self.exp10 += drop as i64;
        }
        self
    }

    fn align(&self, other: &Self) -> (BigInt, BigInt, i64) {
        let e = self.exp10.min(other.exp10);
        let a = &self.mantissa * BigInt::from(pow10((self.exp10 - e) as u32));
        let b = &other.mantissa * BigInt::from(pow10((other.exp10 - e) as u32));
        (a, b, e)
    }

    fn add(&self, other: &Self) -> Self {
        let (a, b, e) = self.align(other);
        HighPrecision {
            mantissa: a + b,
            exp10: e,
            digits: self.digits.min(other.digits),
        }
        .rounded()
    }

    fn mul(&self, other: &Self) -> Self {
        HighPrecision {
            mantissa: &self.mantissa * &other.mantissa,
            exp10: self.exp10 + other.exp10,
            digits: self.digits.min(other.digits),
        }
        .rounded()
    }

    pub fn to_f64(&self) -> f64 {
        if self.mantissa.is_zero() {
            return 0.0;
        }
        // keep 17 leading digits so the conversion stays in range
        let len = decimal_len(self.mantissa.magnitude()) as i64;
        let shift = (len - 17).max(0);
        let m = &self.mantissa / BigInt::from(pow10(shift as u32));
        let m = m.to_f64().unwrap_or(f64::NAN);
        m * 10f64.powi((self.exp10 + shift) as i32)
    }

    /// Scientific notation with `digits` significant digits, e.g. `-2.5e-8`.
    pub fn to_scientific(&self, digits: u32) -> String {
        if self.mantissa.is_zero() {
            return "0".to_string();
        }
        let r = HighPrecision {
            digits: digits.max(1),
            ..self.clone()
        }
        .rounded();
        let s = r.mantissa.magnitude().to_str_radix(10);
        let s = s.trim_end_matches('0');
        let s = if s.is_empty() { "0" } else { s };
        let exp = r.exp10 + decimal_len(r.mantissa.magnitude()) as i64 - 1;
        let sign = if r.mantissa.is_negative() { "-" } else { "" };
        let (head, tail) = s.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{exp}")
        } else {
            format!("{sign}{head}.{tail}e{exp}")
        }
    }
}

impl FromStr for HighPrecision {
    type Err = Error;

    /// Parses plain or scientific decimal notation; the precision tag is the
    /// number of significant digits written.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Argument(format!("not a decimal number: {s:?}"));
        let (body, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (neg, body) = match body.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, body.strip_prefix('+').unwrap_or(body)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let all = format!("{int}{frac}");
        let mag = BigUint::from_str(if all.is_empty() { "0" } else { &all }).map_err(|_| bad())?;
        let digits = decimal_len(&mag).max(1);
        let mantissa = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag);
        Ok(HighPrecision {
            mantissa,
            exp10: exp - frac.len() as i64,
            digits,
        })
    }
}

/// Value of a recoupling symbol.
///
/// `Surd` is exact: `coeff · √radicand` with a square-free integer radicand
/// (radicand 1 for rationals, coeff 0 for zero). `Approx` is the decimal
/// fallback for sums of incommensurable surds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactValue {
    Surd {
        coeff: ExactRational,
        radicand: BigUint,
    },
    Approx(HighPrecision),
}

impl Default for ExactValue {
    fn default() -> Self {
        ExactValue::zero()
    }
}

impl ExactValue {
    pub fn zero() -> Self {
        ExactValue::Surd {
            coeff: BigRational::zero(),
            radicand: BigUint::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: ExactRational) -> Self {
        ExactValue::Surd {
            coeff: q,
            radicand: BigUint::one(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `coeff · √radicand` for any nonnegative rational radicand.
    pub fn surd(coeff: ExactRational, radicand: &ExactRational) -> Self {
        let (outside, k) = reduce_sqrt(radicand);
        Self::from_parts(coeff * outside, k)
    }

    /// From a coefficient and an already square-free radicand.
    pub(crate) fn from_parts(coeff: ExactRational, radicand: BigUint) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            ExactValue::Surd { coeff, radicand }
        }
    }

    /// `1/√[j]`-style helper: `√(1/n)`.
    pub fn inv_sqrt(n: u64) -> Self {
        Self::surd(
            BigRational::one(),
            &BigRational::new(BigInt::one(), BigInt::from(n)),
        )
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ExactValue::Surd { .. })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactValue::Surd { coeff, .. } => coeff.is_zero(),
            ExactValue::Approx(h) => h.is_zero(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            ExactValue::Surd { coeff, .. } => {
                if coeff.is_zero() {
                    0
                } else if coeff.is_negative() {
                    -1
                } else {
                    1
                }
            }
            ExactValue::Approx(h) => h.signum(),
        }
    }

    /// Precision tag: `None` when exact.
    pub fn precision(&self) -> Option<u32> {
        match self {
            ExactValue::Surd { .. } => None,
            ExactValue::Approx(h) => Some(h.digits),
        }
    }

    /// Exact square as a signed rational (`sign · coeff² · radicand`).
    pub fn signed_square(&self) -> Option<ExactRational> {
        match self {
            ExactValue::Surd { coeff, radicand } => {
                let sq = coeff * coeff * BigRational::from_integer(BigInt::from(radicand.clone()));
                Some(if coeff.is_negative() { -sq } else { sq })
            }
            ExactValue::Approx(_) => None,
        }
    }

    pub fn to_high_precision(&self, digits: u32) -> HighPrecision {
        match self {
            ExactValue::Surd { coeff, radicand } => {
                HighPrecision::from_surd(coeff, radicand, digits)
            }
            ExactValue::Approx(h) => h.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactValue::Surd { coeff, radicand } => {
                if coeff.is_zero() {
                    return 0.0;
                }
                if let (Some(c), Some(k)) = (coeff.to_f64(), radicand.to_f64()) {
                    if c.is_finite() && c != 0.0 && k.is_finite() {
                        return c * k.sqrt();
                    }
                }
                HighPrecision::from_surd(coeff, radicand, 20).to_f64()
            }
            ExactValue::Approx(h) => h.to_f64(),
        }
    }

    /// Sum, exact when all nonzero terms share one square-free radicand.
    pub fn sum<I: IntoIterator<Item = ExactValue>>(terms: I, digits: u32) -> Self {
        let mut groups: BTreeMap<BigUint, BigRational> = BTreeMap::new();
        let mut approx: Option<HighPrecision> = None;
        for t in terms {
            match t {
                ExactValue::Surd { coeff, radicand } => {
                    if coeff.is_zero() {
                        continue;
                    }
                    let slot = groups.entry(radicand).or_insert_with(BigRational::zero);
                    *slot += coeff;
                }
                ExactValue::Approx(h) => {
                    approx = Some(match approx {
                        None => h,
                        Some(a) => a.add(&h),
                    });
                }
            }
        }
        groups.retain(|_, c| !c.is_zero());
        if approx.is_none() && groups.len() <= 1 {
            return match groups.into_iter().next() {
                Some((k, c)) => Self::from_parts(c, k),
                None => Self::zero(),
            };
        }
        let terms: Vec<(BigRational, BigUint)> = groups.into_iter().map(|(k, c)| (c, k)).collect();
        let digits = approx.as_ref().map_or(digits, |a| a.digits.min(digits));
        let mut out = HighPrecision::sum_of_surds(&terms, digits + GUARD_DIGITS);
        if let Some(a) = approx {
            out = out.add(&a);
        }
        out.digits = digits;
        ExactValue::Approx(out.rounded())
    }

    /// Number of leading significant digits on which `self` and `other` agree
    /// (`u32::MAX` for exact equality of exact values).
    pub fn agreement_digits(&self, other: &ExactValue) -> u32 {
        if let (ExactValue::Surd { .. }, ExactValue::Surd { .. }) = (self, other) {
            if self == other {
                return u32::MAX;
            }
        }
        let digits = DEFAULT_DIGITS
            .max(self.precision().unwrap_or(0))
            .max(other.precision().unwrap_or(0));
        let a = self.to_high_precision(digits + GUARD_DIGITS);
        let b = other.to_high_precision(digits + GUARD_DIGITS);
        let neg_b = HighPrecision {
            mantissa: -b.mantissa.clone(),
            ..b.clone()
        };
        let diff = HighPrecision {
            digits: digits + 2 * GUARD_DIGITS,
            ..a.clone()
        }
        .add(&HighPrecision {
            digits: digits + 2 * GUARD_DIGITS,
            ..neg_b
        });
        let mag = |h: &HighPrecision| -> Option<i64> {
            if h.is_zero() {
                None
            } else {
                Some(h.exp10 + decimal_len(h.mantissa.magnitude()) as i64)
            }
        };
        let scale = match (mag(&a), mag(&b)) {
            (None, None) => return u32::MAX,
            (Some(x), None) | (None, Some(x)) => x,
            (Some(x), Some(y)) => x.max(y),
        };
        match mag(&diff) {
            None => digits,
            Some(d) => (scale - d).clamp(0, digits as i64) as u32,
        }
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        self.to_high_precision(digits + GUARD_DIGITS)
            .to_scientific(digits)
    }
}

impl Mul for &ExactValue {
    type Output = ExactValue;

    fn mul(self, rhs: &ExactValue) -> ExactValue {
        match (self, rhs) {
            (
                ExactValue::Surd {
                    coeff: c1,
                    radicand: k1,
                },
                ExactValue::Surd {
                    coeff: c2,
                    radicand: k2,
                },
            ) => {
                if c1.is_zero() || c2.is_zero() {
                    return ExactValue::zero();
                }
                // √k1·√k2 = g·√((k1/g)(k2/g)) for square-free k1, k2
                let g = k1.gcd(k2);
                let k = (k1 / &g) * (k2 / &g);
                ExactValue::from_parts(c1 * c2 * BigRational::from_integer(BigInt::from(g)), k)
            }
            _ => {
                let d = self
                    .precision()
                    .into_iter()
                    .chain(rhs.precision())
                    .min()
                    .unwrap_or(DEFAULT_DIGITS);
                let a = self.to_high_precision(d + GUARD_DIGITS);
                let b = rhs.to_high_precision(d + GUARD_DIGITS);
                let mut p = a.mul(&b);
                p.digits = d;
                ExactValue::Approx(p.rounded())
            }
        }
    }
}

impl Mul for ExactValue {
    type Output = ExactValue;

    fn mul(self, rhs: ExactValue) -> ExactValue {
        &self * &rhs
    }
}

impl Mul<&ExactRational> for ExactValue {
    type Output = ExactValue;

    fn mul(self, rhs: &ExactRational) -> ExactValue {
        &self * &ExactValue::from_rational(rhs.clone())
    }
}

impl Neg for ExactValue {
    type Output = ExactValue;

    fn neg(self) -> ExactValue {
        match self {
            ExactValue::Surd { coeff, radicand } => ExactValue::Surd {
                coeff: -coeff,
                radicand,
            },
            ExactValue::Approx(mut h) => {
                h.mantissa = -h.mantissa;
                ExactValue::Approx(h)
            }
        }
    }
}

impl fmt::Display for ExactValue {
    /// Decimal string with an explicit precision suffix: `[exact]` for exact
    /// surds, `[N digits]` for fallback values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|p| p as u32).unwrap_or(DEFAULT_DIGITS);
        match self {
            ExactValue::Surd { .. } => write!(f, "{} [exact]", self.to_decimal(digits)),
            ExactValue::Approx(h) => write!(
                f,
                "{} [{} digits]",
                h.to_scientific(h.digits.min(digits)),
                h.digits
            ),
        }
    }
}
