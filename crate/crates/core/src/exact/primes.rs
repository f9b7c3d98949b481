//! Prime-exponent bookkeeping for factorial ratios.
//!
//! Every square root in a Racah-type formula is the root of a product of
//! factorials, so its radicand factors completely over the primes up to the
//! largest factorial argument. Tracking exponents instead of big integers
//! makes square-free reduction exact and cheap.

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn sieve(n: usize) -> Vec<u32> {
    let mut is_composite = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if !is_composite[p] {
            out.push(p as u32);
            let mut q = p * p;
            while q <= n {
                is_composite[q] = true;
                q += p;
            }
        }
    }
    out
}

static PRIMES: OnceLock<RwLock<(usize, Vec<u32>)>> = OnceLock::new();

/// All primes `≤ n`, from a grow-only shared sieve.
pub fn primes_up_to(n: usize) -> Vec<u32> {
    let lock = PRIMES.get_or_init(|| RwLock::new((0, Vec::new())));
    {
        let guard = lock.read().expect("prime table poisoned");
        if guard.0 >= n {
            let end = guard.1.partition_point(|&p| p as usize <= n);
            return guard.1[..end].to_vec();
        }
    }
    let mut guard = lock.write().expect("prime table poisoned");
    if guard.0 < n {
        let bound = n.max(2 * guard.0).max(64);
        *guard = (bound, sieve(bound));
    }
    let end = guard.1.partition_point(|&p| p as usize <= n);
    guard.1[..end].to_vec()
}

/// Exponent of prime `p` in `n!` (Legendre).
fn legendre(n: u64, p: u64) -> i64 {
    let mut e = 0;
    let mut q = n / p;
    while q > 0 {
        e += q as i64;
        q /= p;
    }
    e
}

/// A rational `Π pᵢ^{eᵢ}` over the primes up to a fixed bound.
#[derive(Clone, Debug)]
pub struct PrimePowers {
    primes: Vec<u32>,
    exps: Vec<i64>,
}

impl PrimePowers {
    /// The value 1, able to hold factorials of arguments up to `bound`.
    pub fn one(bound: usize) -> Self {
        let primes = primes_up_to(bound.max(2));
        let exps = vec![0; primes.len()];
        PrimePowers { primes, exps }
    }

    /// Multiply by `(n!)^power`.
    pub fn mul_factorial(&mut self, n: u64, power: i64) {
        for (p, e) in self.primes.iter().zip(self.exps.iter_mut()) {
            let p = u64::from(*p);
            if p > n {
                break;
            }
            *e += power * legendre(n, p);
        }
    }

    /// Split `√(self)` into `rational · √(squarefree)`.
    pub fn sqrt_split(&self) -> (BigRational, BigUint) {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        let mut rad = BigUint::one();
        for (p, &e) in self.primes.iter().zip(&self.exps) {
            if e == 0 {
                continue;
            }
            let (q, r) = e.div_mod_floor(&2);
            if r == 1 {
                rad *= *p;
            }
            let pq = BigUint::from(*p).pow(q.unsigned_abs() as u32);
            if q > 0 {
                num *= pq;
            } else if q < 0 {
                den *= pq;
            }
        }
        (BigRational::new(BigInt::from(num), BigInt::from(den)), rad)
    }
}

/// Reduce `√q` for an arbitrary nonnegative rational to `c·√k`, `k` square-free.
///
/// Small prime factors are removed by trial division; a leftover cofactor is
/// kept whole unless it is a perfect square, so `k` is square-free for every
/// radicand whose prime factors are below the trial bound.
pub fn reduce_sqrt(q: &BigRational) -> (BigRational, BigUint) {
    assert!(!q.is_negative(), "square root of a negative rational");
    if q.is_zero() {
        return (BigRational::zero(), BigUint::one());
    }
    // √(n/d) = √(n·d)/d
    let n = q.numer().magnitude().clone();
    let d = q.denom().magnitude().clone();
    let (c, k) = reduce_sqrt_int(&(&n * &d));
    (BigRational::new(BigInt::from(c), BigInt::from(d)), k)
}

const TRIAL_BOUND: usize = 2000;

fn reduce_sqrt_int(n: &BigUint) -> (BigUint, BigUint) {
    let mut rest = n.clone();
    let mut outside = BigUint::one();
    let mut inside = BigUint::one();
    for p in primes_up_to(TRIAL_BOUND) {
        if rest.is_one() {
            break;
        }
        let bp = BigUint::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            outside *= bp.pow(e / 2);
            if e % 2 == 1 {
                inside *= &bp;
            }
        }
    }
    if !rest.is_one() {
        let root = rest.sqrt();
        if &root * &root == rest {
            outside *= root;
        } else {
            inside *= rest;
        }
    }
    (outside, inside)
}
