//! Exact evaluation of recoupling symbols.

mod primes;
mod racah;
mod twelve;
mod value;

pub use primes::{primes_up_to, reduce_sqrt, PrimePowers};
pub use racah::{wigner3j, wigner6j, wigner9j, wigner9j_with};
pub use twelve::{
    twelve_j_zero_j5, twelve_j_zero_s2, twelve_j_zero_s2_with, wigner12j_first,
    wigner12j_first_with, Symbol12Args,
};
pub use value::{ExactValue, HighPrecision, DEFAULT_DIGITS};
