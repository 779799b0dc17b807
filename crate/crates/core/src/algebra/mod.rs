//! Exact coefficient arithmetic.
//!
//! The residue cardinality q is a process-wide constant: it is fixed by the
//! first call to [`init_q`] (or defaults to 3 on first use) and can't change
//! afterwards.

pub mod coef;
pub mod cyclo;
pub mod matrix;
pub mod poly;
pub mod qpoly;
pub mod ratx;
pub mod scalar;

pub use coef::Coef;
pub use matrix::Matrix;
pub use poly::{Degree, PolyT, RatFuncT, TruncSeriesT};
pub use ratx::RatX;
pub use scalar::{Scalar, Unit};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;

static Q: OnceLock<u64> = OnceLock::new();

pub const DEFAULT_Q: u64 = 3;

pub fn q() -> u64 {
    *Q.get_or_init(|| DEFAULT_Q)
}

/// Fix q for this process. Fails if q was already fixed to another value.
pub fn init_q(value: u64) -> Result<()> {
    if value < 2 {
        return Err(Error::domain(format!("q must be an integer > 1, got {value}")));
    }
    let got = *Q.get_or_init(|| value);
    if got != value {
        return Err(Error::domain(format!("q is already fixed to {got}; cannot switch to {value}")));
    }
    Ok(())
}

pub fn q_rat() -> BigRational {
    BigRational::from_integer(BigInt::from(q()))
}

/// q^k as a rational.
pub fn q_pow(k: i64) -> BigRational {
    let b = num_traits::pow(q_rat(), k.unsigned_abs() as usize);
    if k < 0 {
        b.recip()
    } else {
        b
    }
}

/// If |r| = q^k, return k.
pub fn q_log(r: &BigRational) -> Option<i64> {
    let r = r.abs();
    if r.is_zero() {
        return None;
    }
    let qq = BigInt::from(q());
    let (mut n, mut d) = (r.numer().clone(), r.denom().clone());
    let mut k = 0i64;
    while n > BigInt::one() {
        if (&n % &qq).is_zero() {
            n /= &qq;
            k += 1;
        } else {
            return None;
        }
    }
    while d > BigInt::one() {
        if k > 0 {
            return None;
        }
        if (&d % &qq).is_zero() {
            d /= &qq;
            k -= 1;
        } else {
            return None;
        }
    }
    Some(k)
}

/// Text form of a rational; exact powers of q are written as such.
pub fn render_rational(r: &BigRational) -> String {
    match q_log(r) {
        Some(k) if k != 0 => {
            let s = if k == 1 { "q".to_string() } else { format!("q^{k}") };
            if r.is_negative() {
                format!("-{s}")
            } else {
                s
            }
        }
        _ => {
            if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
