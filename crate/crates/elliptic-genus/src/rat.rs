//! Exact rational scalars.
//!
//! Every coefficient in the crate is a [`Rat`]: an arbitrary-precision
//! rational in canonical form (positive denominator, reduced). We use
//! `num_rational::BigRational`, which maintains exactly that invariant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub type Rat = BigRational;

/// The rational n/1.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// The rational n/d (d ≠ 0), reduced.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "rational with zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// True if the rational is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// 1/n! as an exact rational.
pub fn inv_factorial(n: u32) -> Rat {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= k;
    }
    Rat::new(BigInt::one(), f)
}

/// Binomial coefficient C(n, k) for n ≥ 0 as an exact rational.
pub fn binomial(n: &BigInt, k: u64) -> Rat {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= n - BigInt::from(j);
        den *= BigInt::from(j + 1);
    }
    Rat::new(num, den)
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: i64) -> i64 {
    assert!(n >= 0);
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i64 + 2;
    while x * x > n {
        x -= 1;
    }
    x
}

/// Render a rational as `num` or `num/den`, matching its exactness on disk.
pub fn format_rat(r: &Rat) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
