//! The 12j symbol of the first kind and its two zero-argument reductions.

use std::fmt;

use num_rational::BigRational;

use super::racah::{spin_range, wigner6j, wigner9j_with};
use super::value::{ExactValue, DEFAULT_DIGITS};
use crate::error::{Error, Result};
use crate::spin::{is_triangle, Spin};

/// Arguments of a 12j symbol of the first kind, laid out as the array
///
/// ```text
/// j1   s2   j12   j346
/// j3   j4   j34   j135
/// j13  j24  j5    j6
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Symbol12Args {
    pub j1: Spin,
    pub s2: Spin,
    pub j12: Spin,
    pub j346: Spin,
    pub j3: Spin,
    pub j4: Spin,
    pub j34: Spin,
    pub j135: Spin,
    pub j13: Spin,
    pub j24: Spin,
    pub j5: Spin,
    pub j6: Spin,
}

impl Symbol12Args {
    pub fn from_rows(rows: [[Spin; 4]; 3]) -> Self {
        let [[j1, s2, j12, j346], [j3, j4, j34, j135], [j13, j24, j5, j6]] = rows;
        Symbol12Args {
            j1,
            s2,
            j12,
            j346,
            j3,
            j4,
            j34,
            j135,
            j13,
            j24,
            j5,
            j6,
        }
    }

    /// Row-major order, the order used on the command line.
    pub fn from_slice(spins: &[Spin]) -> Result<Self> {
        let arr: [Spin; 12] = spins
            .try_into()
            .map_err(|_| Error::Argument(format!("expected 12 spins, got {}", spins.len())))?;
        Ok(Self::from_array(arr))
    }

    pub fn from_array(a: [Spin; 12]) -> Self {
        Self::from_rows([
            [a[0], a[1], a[2], a[3]],
            [a[4], a[5], a[6], a[7]],
            [a[8], a[9], a[10], a[11]],
        ])
    }

    pub fn to_array(&self) -> [Spin; 12] {
        [
            self.j1, self.s2, self.j12, self.j346, self.j3, self.j4, self.j34, self.j135, self.j13,
            self.j24, self.j5, self.j6,
        ]
    }

    pub fn with_j5(mut self, j5: Spin) -> Self {
        self.j5 = j5;
        self
    }

    /// The eight coupling triads of the symbol.
    pub fn triads(&self) -> [(Spin, Spin, Spin); 8] {
        [
            (self.j1, self.s2, self.j12),
            (self.j3, self.j4, self.j34),
            (self.j34, self.j6, self.j346),
            (self.j12, self.j5, self.j346),
            (self.j1, self.j3, self.j13),
            (self.s2, self.j4, self.j24),
            (self.j13, self.j5, self.j135),
            (self.j24, self.j6, self.j135),
        ]
    }

    pub fn is_admissible(&self) -> bool {
        self.triads().iter().all(|&(a, b, c)| is_triangle(a, b, c))
    }

    /// Twice the sum of all twelve spins.
    fn twice_total(&self) -> u64 {
        self.to_array().iter().map(|s| u64::from(s.twice())).sum()
    }
}

impl fmt::Display for Symbol12Args {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.to_array();
        for (i, row) in a.chunks(4).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(Spin::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

fn parity_sign(twice_exponent: u64) -> i64 {
    debug_assert!(twice_exponent % 2 == 0);
    if (twice_exponent / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// 12j symbol of the first kind, as a single sum over four 6j symbols.
pub fn wigner12j_first(args: &Symbol12Args) -> ExactValue {
    wigner12j_first_with(args, DEFAULT_DIGITS)
}

/// [`wigner12j_first`] with an explicit fallback precision.
pub fn wigner12j_first_with(args: &Symbol12Args, digits: u32) -> ExactValue {
    if !args.is_admissible() {
        return ExactValue::zero();
    }
    let a = [args.s2, args.j12, args.j346, args.j34];
    let l = [args.j1, args.j5, args.j6, args.j4];
    let k = [args.j3, args.j13, args.j135, args.j24];
    let lo = (0..4)
        .map(|i| a[i].twice().abs_diff(k[i].twice()))
        .max()
        .unwrap();
    let hi = (0..4).map(|i| a[i].twice() + k[i].twice()).min().unwrap();
    if lo > hi {
        return ExactValue::zero();
    }
    let total = args.twice_total();
    let terms = spin_range(lo, hi).map(|x| {
        let w = parity_sign(total - u64::from(x.twice())) * i64::from(x.bracket());
        let p = wigner6j(a[0], k[0], x, k[1], a[1], l[0])
            * wigner6j(a[1], k[1], x, k[2], a[2], l[1])
            * wigner6j(a[2], k[2], x, k[3], a[3], l[2])
            * wigner6j(a[3], k[3], x, a[0], k[0], l[3]);
        p * &rational(w)
    });
    ExactValue::sum(terms, digits)
}

/// Reduction for `s2 = 0` (which forces `j12 = j1`, `j24 = j4`) to a product
/// of two 6j symbols.
pub fn twelve_j_zero_s2(args: &Symbol12Args) -> Result<ExactValue> {
    twelve_j_zero_s2_with(args, wigner6j)
}

/// [`twelve_j_zero_s2`] evaluated with a caller-supplied 6j function.
pub fn twelve_j_zero_s2_with(
    args: &Symbol12Args,
    sixj: fn(Spin, Spin, Spin, Spin, Spin, Spin) -> ExactValue,
) -> Result<ExactValue> {
    if args.s2 != Spin::ZERO || args.j12 != args.j1 || args.j24 != args.j4 {
        return Err(Error::Argument(format!(
            "not of the form s2 = 0, j12 = j1, j24 = j4: {args}"
        )));
    }
    if !args.is_admissible() {
        return Ok(ExactValue::zero());
    }
    let Symbol12Args {
        j1,
        j3,
        j4,
        j5,
        j6,
        j13,
        j34,
        j135,
        j346,
        ..
    } = *args;
    let twice: u64 = [j1, j3, j3, j4, j346, j135, j5, j6]
        .iter()
        .map(|s| u64::from(s.twice()))
        .sum();
    let value = sixj(j346, j3, j135, j4, j6, j34)
        * sixj(j346, j3, j135, j13, j5, j1)
        * ExactValue::inv_sqrt(u64::from(j1.bracket()) * u64::from(j4.bracket()));
    Ok(value * &rational(parity_sign(twice)))
}

/// Reduction for `j5 = 0` (which forces `j346 = j12`, `j135 = j13`) to a 9j
/// symbol.
pub fn twelve_j_zero_j5(args: &Symbol12Args) -> Result<ExactValue> {
    if args.j5 != Spin::ZERO || args.j346 != args.j12 || args.j135 != args.j13 {
        return Err(Error::Argument(format!(
            "not of the form j5 = 0, j346 = j12, j135 = j13: {args}"
        )));
    }
    if !args.is_admissible() {
        return Ok(ExactValue::zero());
    }
    let nine = wigner9j_with(
        [
            [args.j1, args.s2, args.j12],
            [args.j3, args.j4, args.j34],
            [args.j13, args.j24, args.j6],
        ],
        DEFAULT_DIGITS,
    );
    Ok(nine * ExactValue::inv_sqrt(u64::from(args.j12.bracket()) * u64::from(args.j13.bracket())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spins(tw: [u32; 12]) -> Symbol12Args {
        Symbol12Args::from_array(tw.map(Spin::from_twice))
    }

    #[test]
    fn a8_small_case() {
        // j1=2 s=0 j12=2 j346=2 / j3=1 j4=2 j34=2 j135=2 / j13=2 j24=2 j5=1 j6=1
        let a = spins([4, 0, 4, 4, 2, 4, 4, 4, 4, 4, 2, 2]);
        assert!(a.is_admissible());
        let want = twelve_j_zero_s2(&a).unwrap();
        assert!(!want.is_zero());
        assert_eq!(wigner12j_first(&a), want);
    }

    #[test]
    fn a9_small_case() {
        // j1=1 s=1 j12=1 j346=1 / j3=1 j4=1 j34=1 j135=1 / j13=1 j24=1 j5=0 j6=2
        let a = spins([2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 0, 4]);
        let want = twelve_j_zero_j5(&a).unwrap();
        assert!(!want.is_zero());
        assert_eq!(wigner12j_first(&a), want);
    }

    #[test]
    fn pattern_mismatch_is_an_error() {
        let a = spins([4, 2, 4, 4, 2, 4, 4, 4, 4, 4, 2, 2]);
        assert!(matches!(twelve_j_zero_s2(&a), Err(Error::Argument(_))));
        assert!(matches!(twelve_j_zero_j5(&a), Err(Error::Argument(_))));
    }

    #[test]
    fn violated_triad_gives_zero() {
        // (j1 j3 j13) = (1, 1, 3) fails
        let a = spins([2, 0, 2, 2, 2, 2, 2, 2, 6, 2, 2, 2]);
        assert!(!a.is_admissible());
        assert!(wigner12j_first(&a).is_zero());
    }

    #[test]
    fn display_rows() {
        let a = spins([177, 5, 176, 178, 181, 141, 174, 154, 150, 146, 60, 182]);
        assert_eq!(
            a.to_string(),
            "177/2 5/2 88 89; 181/2 141/2 87 77; 75 73 30 91"
        );
    }
}
