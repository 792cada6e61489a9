//! Exact scalar, polynomial, power series and matrix arithmetic over the
//! rationals. Nothing in this crate ever rounds.

mod matrix;
mod poly;
mod series;

pub use matrix::{kernel, Echelon, RationalMatrix};
pub use poly::{poly_divide_exact, UniPoly};
pub use series::TruncatedSeries;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Shorthand for `numer / denom`. Panics if `denom` is zero.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}
