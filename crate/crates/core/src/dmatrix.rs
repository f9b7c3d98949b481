//! Wigner small-d matrix elements `d^s_{νμ}(θ) = ⟨s ν| exp(−iθ S_y) |s μ⟩`.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::spin::{factorial, Spin};

/// Row index `ν` and column index `μ` of a spin-`s` d-matrix, as twice-values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DIndex {
    s: Spin,
    nu: i64,
    mu: i64,
}

impl DIndex {
    pub fn new(s: Spin, twice_nu: i64, twice_mu: i64) -> Result<Self> {
        let ts = i64::from(s.twice());
        for m in [twice_nu, twice_mu] {
            if m.abs() > ts || (ts + m) % 2 != 0 {
                return Err(Error::Argument(format!(
                    "projection {m}/2 out of range for spin {s}"
                )));
            }
        }
        Ok(DIndex {
            s,
            nu: twice_nu,
            mu: twice_mu,
        })
    }

    pub fn s(&self) -> Spin {
        self.s
    }

    pub fn twice_nu(&self) -> i64 {
        self.nu
    }

    pub fn twice_mu(&self) -> i64 {
        self.mu
    }
}

fn fact(twice: i64) -> BigInt {
    debug_assert!(twice >= 0 && twice % 2 == 0);
    BigInt::from(factorial((twice / 2) as usize))
}

/// `d^s_{νμ}(θ)` from the explicit factorial sum.
pub fn little_d(idx: DIndex, theta: f64) -> f64 {
    let (j, n, m) = (i64::from(idx.s.twice()), idx.nu, idx.mu);
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let top = fact(j + n) * fact(j - n) * fact(j + m) * fact(j - m);
    let mut total = 0.0;
    // k in twice-values
    let mut k = 0i64.max(m - n);
    while k <= (j + m).min(j - n) {
        let den = fact(j + m - k) * fact(k) * fact(j - n - k) * fact(n - m + k);
        // squared coefficient kept exact until here
        let coeff = BigRational::new(top.clone(), &den * &den)
            .to_f64()
            .unwrap_or(f64::NAN)
            .sqrt();
        let sign = if ((n - m + k) / 2) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        let pc = ((2 * j + m - n - 2 * k) / 2) as i32;
        let ps = ((n - m + 2 * k) / 2) as i32;
        total += sign * coeff * c.powi(pc) * s.powi(ps);
        k += 2;
    }
    total
}

/// Full `(2s+1)×(2s+1)` matrix; row `r` is `ν = −s + r`, column `c` is
/// `μ = −s + c`.
pub fn d_matrix(s: Spin, theta: f64) -> DMatrix<f64> {
    let n = s.bracket() as usize;
    let ts = i64::from(s.twice());
    DMatrix::from_fn(n, n, |r, c| {
        let idx = DIndex::new(s, 2 * r as i64 - ts, 2 * c as i64 - ts)
            .expect("indices in range by construction");
        little_d(idx, theta)
    })
}
