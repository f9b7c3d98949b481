//! Half-integer spins, triangle rules and the factorial machinery every
//! Racah-type sum is built from.
//!
//! A [`Spin`] stores `2j`, so integer and half-integer values compare exactly.

use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// Exact rational with arbitrary-precision numerator and denominator.
pub type ExactRational = BigRational;

/// An angular momentum quantum number `j`, stored as `2j`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin(u32);

impl Spin {
    pub const ZERO: Spin = Spin(0);

    pub const fn from_twice(twice_j: u32) -> Self {
        Spin(twice_j)
    }

    /// Integer spin `j`.
    pub const fn int(j: u32) -> Self {
        Spin(2 * j)
    }

    /// Half-odd spin `n/2`; `n` must be odd.
    pub fn half(n: u32) -> Self {
        assert!(n % 2 == 1, "half({n}) is not a half-odd spin");
        Spin(n)
    }

    pub const fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Multiplicity `[j] = 2j + 1`.
    pub const fn bracket(self) -> u32 {
        self.0 + 1
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for Spin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseSpin(s.to_string());
        let digits = |t: &str| -> Result<u32> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<u32>().map_err(|_| bad())
        };
        match s.split_once('/') {
            None => {
                let j = digits(s)?;
                j.checked_mul(2).map(Spin).ok_or_else(bad)
            }
            Some((num, "2")) => {
                let n = digits(num)?;
                if n % 2 == 1 {
                    Ok(Spin(n))
                } else {
                    Err(bad())
                }
            }
            Some(_) => Err(bad()),
        }
    }
}

/// `j + 1/2` with ℏ = 1: the length of the classical angular momentum vector.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct SemiclassicalLength(pub f64);

impl SemiclassicalLength {
    pub fn get(self) -> f64 {
        self.0
    }
}

pub fn semiclassical_length(j: Spin) -> SemiclassicalLength {
    SemiclassicalLength((f64::from(j.twice()) + 1.0) / 2.0)
}

/// Triangle rule `|a−b| ≤ c ≤ a+b` with `a+b+c` integral, on twice-values.
#[inline]
pub fn triangle_twice(a: u32, b: u32, c: u32) -> bool {
    let (a, b, c) = (a as i64, b as i64, c as i64);
    (a - b).abs() <= c && c <= a + b && (a + b + c) % 2 == 0
}

pub fn is_triangle(a: Spin, b: Spin, c: Spin) -> bool {
    triangle_twice(a.0, b.0, c.0)
}

/// Triangle coefficient `Δ² = (a+b−c)!(a−b+c)!(−a+b+c)!/(a+b+c+1)!`.
pub fn delta_squared(a: Spin, b: Spin, c: Spin) -> Result<ExactRational> {
    if !is_triangle(a, b, c) {
        return Err(Error::SelectionRule(a, b, c));
    }
    let (a, b, c) = (a.0, b.0, c.0);
    let num = factorial(((a + b - c) / 2) as usize)
        * factorial(((a + c - b) / 2) as usize)
        * factorial(((b + c - a) / 2) as usize);
    let den = factorial(((a + b + c) / 2 + 1) as usize);
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// Grow-only memo table of `n!`. Readers share the lock; a miss upgrades to a
/// write lock and extends the table up to the requested argument.
#[derive(Debug)]
pub struct FactorialTable {
    table: RwLock<Vec<BigUint>>,
}

impl Default for FactorialTable {
    fn default() -> Self {
        FactorialTable {
            table: RwLock::new(vec![BigUint::one()]),
        }
    }
}

impl FactorialTable {
    pub fn get(&self, n: usize) -> BigUint {
        {
            let t = self.table.read().expect("factorial table poisoned");
            if let Some(v) = t.get(n) {
                return v.clone();
            }
        }
        let mut t = self.table.write().expect("factorial table poisoned");
        while t.len() <= n {
            let k = t.len();
            let next = &t[k - 1] * BigUint::from(k);
            t.push(next);
        }
        t[n].clone()
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("factorial table poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

static FACTORIALS: OnceLock<FactorialTable> = OnceLock::new();

/// Exact `n!` from the process-wide table.
pub fn factorial(n: usize) -> BigUint {
    FACTORIALS.get_or_init(FactorialTable::default).get(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{ToPrimitive, Zero};
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn triangle_examples() {
        assert!(is_triangle(Spin::int(1), Spin::int(1), Spin::int(1)));
        assert!(!is_triangle(Spin::half(1), Spin::half(1), Spin::half(1)));
        assert!(!is_triangle(Spin::int(1), Spin::int(1), Spin::int(3)));
    }

    #[test]
    fn delta_squared_examples() {
        let z = Spin::ZERO;
        assert_eq!(delta_squared(z, z, z).unwrap(), r(1, 1));
        // 1!·1!·1!/4!
        let one = Spin::int(1);
        assert_eq!(delta_squared(one, one, one).unwrap(), r(1, 24));
        // 0!·1!·1!/3!
        let h = Spin::half(1);
        assert_eq!(delta_squared(h, h, one).unwrap(), r(1, 6));
        assert!(matches!(
            delta_squared(one, one, Spin::int(3)),
            Err(Error::SelectionRule(..))
        ));
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        let mut oracle = BigUint::one();
        for k in 1..=30u32 {
            oracle *= BigUint::from(k);
        }
        assert_eq!(factorial(30), oracle);
    }

    #[test]
    fn factorial_table_concurrent_reads() {
        let table = FactorialTable::default();
        std::thread::scope(|s| {
            for k in 0..8 {
                let table = &table;
                s.spawn(move || {
                    for n in (0..200).rev() {
                        let v = table.get(n + k);
                        assert!(!v.is_zero());
                    }
                });
            }
        });
        assert!(table.len() >= 207);
        assert_eq!(table.get(20), factorial(20));
    }

    #[test]
    fn semiclassical_lengths() {
        assert_eq!(semiclassical_length(Spin::ZERO).get(), 0.5);
        assert_eq!(semiclassical_length(Spin::int(35)).get(), 35.5);
        assert_eq!(semiclassical_length(Spin::half(5)).get(), 3.0);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("35".parse::<Spin>().unwrap(), Spin::int(35));
        assert_eq!("177/2".parse::<Spin>().unwrap(), Spin::half(177));
        assert_eq!(Spin::half(177).to_string(), "177/2");
        assert_eq!(Spin::int(0).to_string(), "0");
        for bad in [
            "", "4/2", "1/3", "-1", "1.5", "x", "3/", "/2", " 3", "1/2/2",
        ] {
            assert!(bad.parse::<Spin>().is_err(), "{bad:?} should be rejected");
        }
    }

    proptest! {
        #[test]
        fn delta_squared_symmetric_and_positive(a in 0u32..24, b in 0u32..24, c in 0u32..24) {
            let (a, b, c) = (Spin::from_twice(a), Spin::from_twice(b), Spin::from_twice(c));
            prop_assume!(is_triangle(a, b, c));
            let d = delta_squared(a, b, c).unwrap();
            prop_assert!(d > BigRational::zero());
            for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                prop_assert_eq!(&delta_squared(x, y, z).unwrap(), &d);
            }
        }

        #[test]
        fn factorial_recurrence(n in 0usize..300) {
            prop_assert_eq!(factorial(n + 1), factorial(n) * BigUint::from(n + 1));
        }

        #[test]
        fn spin_round_trips(t in 0u32..2_000_000) {
            let s = Spin::from_twice(t);
            prop_assert_eq!(s.to_string().parse::<Spin>().unwrap(), s);
        }

        #[test]
        fn length_monotone_and_exact(t in 0u32..1_000_000) {
            let a = semiclassical_length(Spin::from_twice(t)).get();
            let b = semiclassical_length(Spin::from_twice(t + 1)).get();
            prop_assert!(b > a);
            prop_assert_eq!(a, t.to_f64().unwrap() / 2.0 + 0.5);
        }
    }
}
