//! 3j, 6j and 9j symbols from Racah's single-sum formulas.
//!
//! The alternating sums run over exact integers (6j) or rationals (3j); the
//! square-root prefactor is carried as prime exponents and split into a
//! rational part times a square-free radicand, so the results are exact surds.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::primes::PrimePowers;
use super::value::{ExactValue, DEFAULT_DIGITS};
use crate::error::{Error, Result};
use crate::spin::{factorial, triangle_twice, Spin};

#[inline]
fn half(twice: i64) -> u64 {
    debug_assert!(twice >= 0 && twice % 2 == 0);
    (twice / 2) as u64
}

fn fact(n: u64) -> BigUint {
    factorial(n as usize)
}

fn sign_of(exponent: i64) -> i64 {
    if exponent.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Triangle coefficient Δ² of a triad, multiplied into `pp`.
fn mul_delta(pp: &mut PrimePowers, a: i64, b: i64, c: i64) {
    pp.mul_factorial(half(a + b - c), 1);
    pp.mul_factorial(half(a - b + c), 1);
    pp.mul_factorial(half(-a + b + c), 1);
    pp.mul_factorial(half(a + b + c) + 1, -1);
}

/// Wigner 3j symbol `(j1 j2 j3; m1 m2 m3)`; the projections are twice-values.
pub fn wigner3j(j1: Spin, j2: Spin, j3: Spin, m1: i64, m2: i64, m3: i64) -> Result<ExactValue> {
    for (j, m) in [(j1, m1), (j2, m2), (j3, m3)] {
        let tj = i64::from(j.twice());
        if m.abs() > tj || (tj + m) % 2 != 0 {
            return Err(Error::Argument(format!(
                "projection {m}/2 is not admissible for spin {j}"
            )));
        }
    }
    if m1 + m2 + m3 != 0 || !triangle_twice(j1.twice(), j2.twice(), j3.twice()) {
        return Ok(ExactValue::zero());
    }
    let (a, b, c) = (
        i64::from(j1.twice()),
        i64::from(j2.twice()),
        i64::from(j3.twice()),
    );

    let mut pp = PrimePowers::one(half(a + b + c) as usize + 1);
    mul_delta(&mut pp, a, b, c);
    for (j, m) in [(a, m1), (b, m2), (c, m3)] {
        pp.mul_factorial(half(j + m), 1);
        pp.mul_factorial(half(j - m), 1);
    }
    let (outside, radicand) = pp.sqrt_split();

    let k_lo = [0, b - c - m1, a - c + m2].into_iter().max().unwrap();
    let k_hi = [a + b - c, a - m1, b + m2].into_iter().min().unwrap();
    let mut sum = BigRational::zero();
    let mut k = k_lo;
    while k <= k_hi {
        let den = fact(half(k))
            * fact(half(c - b + k + m1))
            * fact(half(c - a + k - m2))
            * fact(half(a + b - c - k))
            * fact(half(a - k - m1))
            * fact(half(b - k + m2));
        let term = BigRational::new(BigInt::from(sign_of(k / 2)), BigInt::from(den));
        sum += term;
        k += 2;
    }
    let phase = BigRational::from_integer(sign_of((a - b - m3) / 2).into());
    Ok(ExactValue::from_parts(phase * outside * sum, radicand))
}

/// Wigner 6j symbol `{a b c; d e f}`; zero unless the triads (abc), (aef),
/// (dbf) and (dec) all satisfy the triangle rule.
pub fn wigner6j(a: Spin, b: Spin, c: Spin, d: Spin, e: Spin, f: Spin) -> ExactValue {
    let t = |s: Spin| i64::from(s.twice());
    let (a, b, c, d, e, f) = (t(a), t(b), t(c), t(d), t(e), t(f));
    let triads = [(a, b, c), (a, e, f), (d, b, f), (d, e, c)];
    if !triads
        .iter()
        .all(|&(x, y, z)| triangle_twice(x as u32, y as u32, z as u32))
    {
        return ExactValue::zero();
    }
    let sums = triads.map(|(x, y, z)| half(x + y + z));
    let pairs = [
        half(a + b + d + e),
        half(a + c + d + f),
        half(b + c + e + f),
    ];

    let mut pp = PrimePowers::one(pairs.iter().copied().max().unwrap() as usize + 2);
    for (x, y, z) in triads {
        mul_delta(&mut pp, x, y, z);
    }
    let (outside, radicand) = pp.sqrt_split();

    let lo = sums.iter().copied().max().unwrap();
    let hi = pairs.iter().copied().min().unwrap();
    let mut sum = BigInt::zero();
    for n in lo..=hi {
        let mut den = BigUint::one();
        for s in sums {
            den *= fact(n - s);
        }
        for p in pairs {
            den *= fact(p - n);
        }
        let term = BigInt::from(fact(n + 1) / den);
        if n % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    ExactValue::from_parts(outside * BigRational::from_integer(sum), radicand)
}

/// Twice-values `x` from `lo` to `hi` in steps of one unit of spin.
pub(crate) fn spin_range(lo: u32, hi: u32) -> impl Iterator<Item = Spin> {
    (lo..=hi).step_by(2).map(Spin::from_twice)
}

/// Wigner 9j symbol with rows `(j1 j2 j3)`, `(j4 j5 j6)`, `(j7 j8 j9)`.
pub fn wigner9j(rows: [[Spin; 3]; 3]) -> ExactValue {
    wigner9j_with(rows, DEFAULT_DIGITS)
}

/// [`wigner9j`] with an explicit fallback precision in decimal digits.
pub fn wigner9j_with(rows: [[Spin; 3]; 3], digits: u32) -> ExactValue {
    let [[j1, j2, j3], [j4, j5, j6], [j7, j8, j9]] = rows;
    let row_ok = |r: [Spin; 3]| triangle_twice(r[0].twice(), r[1].twice(), r[2].twice());
    let cols = [[j1, j4, j7], [j2, j5, j8], [j3, j6, j9]];
    if !rows.into_iter().chain(cols).all(row_ok) {
        return ExactValue::zero();
    }
    let diff = |p: Spin, q: Spin| p.twice().abs_diff(q.twice());
    let add = |p: Spin, q: Spin| p.twice() + q.twice();
    let lo = diff(j1, j9).max(diff(j4, j8)).max(diff(j2, j6));
    let hi = add(j1, j9).min(add(j4, j8)).min(add(j2, j6));
    if lo > hi {
        return ExactValue::zero();
    }
    let terms = spin_range(lo, hi).map(|x| {
        let w = i64::from(x.bracket()) * if x.is_integer() { 1 } else { -1 };
        let p = wigner6j(j1, j4, j7, j8, j9, x)
            * wigner6j(j2, j5, j8, j4, x, j6)
            * wigner6j(j3, j6, j9, x, j1, j2);
        p * &BigRational::from_integer(w.into())
    });
    ExactValue::sum(terms, digits)
}
