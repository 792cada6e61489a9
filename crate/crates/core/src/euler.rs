//! Euler numbers `E_n` (Taylor coefficients of `sech z`, scaled by `n!`),
//! the J-fraction convergents of `Σ |E_2n| z^2n`, and the exact
//! `π^(2l+1)` coefficients of Dirichlet beta at odd arguments.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::exact::{binomial, factorial, rat, Rational, TruncatedSeries, UniPoly};

/// Signed Euler numbers `E_0..=E_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerTable {
    values: Vec<BigInt>,
}

impl EulerTable {
    /// Computes `E_0..=E_max_index` by the integer recurrence
    /// `Σ_{k=0..n} C(2n, 2k) E_2k = 0` (the coefficients of `cosh · sech = 1`).
    pub fn new(max_index: usize) -> Self {
        let mut values = vec![BigInt::zero(); max_index + 1];
        values[0] = BigInt::from(1);
        for n in 1..=max_index / 2 {
            let acc: BigInt = (0..n)
                .map(|k| binomial(2 * n as u64, 2 * k as u64) * &values[2 * k])
                .sum();
            values[2 * n] = -acc;
        }
        Self { values }
    }

    /// Wraps an arbitrary table. Used to feed deliberately corrupted data to
    /// the verification suite.
    pub fn from_values(values: Vec<BigInt>) -> Self {
        Self { values }
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// `E_j`. Panics when `j` is past the end of the table.
    pub fn get(&self, j: usize) -> &BigInt {
        &self.values[j]
    }

    /// `|E_j|`
    pub fn abs(&self, j: usize) -> BigInt {
        self.values[j].abs()
    }

    /// Returns a copy with entry `j` replaced.
    pub fn with_entry(&self, j: usize, value: BigInt) -> Self {
        let mut values = self.values.clone();
        values[j] = value;
        Self { values }
    }
}

/// Free-function form of [`EulerTable::new`].
pub fn euler_numbers(max_index: usize) -> EulerTable {
    EulerTable::new(max_index)
}

/// Second route to the Euler numbers: divide 1 by the truncated `cosh`
/// series in exact rationals and rescale by `j!`.
pub fn euler_numbers_by_division(max_index: usize) -> Result<Vec<BigInt>> {
    let cosh: Vec<Rational> = (0..=max_index)
        .map(|j| {
            if j % 2 == 0 {
                Rational::from_integer(factorial(j as u64)).recip()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let sech = TruncatedSeries::from_coeffs(cosh, max_index).reciprocal()?;
    Ok((0..=max_index)
        .map(|j| (sech.coeff(j) * Rational::from_integer(factorial(j as u64))).to_integer())
        .collect())
}

/// `Σ_{2n ≤ order} |E_2n| z^2n`
pub fn euler_abs_series(order: usize) -> TruncatedSeries {
    let table = EulerTable::new(order);
    let coeffs = (0..=order)
        .map(|j| Rational::from_integer(table.abs(j)))
        .collect();
    TruncatedSeries::from_coeffs(coeffs, order)
}

/// The finite continued fraction
/// `1 / (1 - 1²z² / (1 - 2²z² / (... / (1 - depth²z²))))` expanded to `order`.
///
/// Evaluated from the bottom up as a ratio `num / den` of polynomials, so the
/// only series operation is the final reciprocal.
pub fn cf_convergent(depth: usize, order: usize) -> TruncatedSeries {
    let mut num = UniPoly::one();
    let mut den = UniPoly::one();
    for k in (1..=depth).rev() {
        // 1 / (1 - k² z² · num/den) = den / (den - k² z² num)
        let kz2 = UniPoly::monomial(rat((k * k) as i64), 2);
        let next_den = &den - &(&kz2 * &num);
        num = den;
        den = next_den;
    }
    let num = TruncatedSeries::from_poly(&num, order);
    let den = TruncatedSeries::from_poly(&den, order);
    num.divide(&den).expect("denominator has constant term 1")
}

/// `β(2l+1) = coeff · π^(2l+1)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaCoefficient {
    pub l: usize,
    pub coeff: Rational,
}

/// `(-1)^l E_2l / (2^(2l+2) (2l)!)`
pub fn dirichlet_beta_coeff(l: usize, table: &EulerTable) -> BetaCoefficient {
    let sign = if l.is_multiple_of(2) { 1 } else { -1 };
    let numer = table.get(2 * l) * sign;
    let denom = (BigInt::from(1) << (2 * l + 2)) * factorial(2 * l as u64);
    BetaCoefficient {
        l,
        coeff: Rational::new(numer, denom),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn first_values() {
        assert_eq!(
            EulerTable::new(8).values(),
            &ints(&[1, 0, -1, 0, 5, 0, -61, 0, 1385])[..]
        );
        assert_eq!(EulerTable::new(0).values(), &ints(&[1])[..]);
        assert_eq!(EulerTable::new(1).get(1), &BigInt::zero());
    }

    #[test]
    fn e10_matches_series_division() {
        let by_division = euler_numbers_by_division(10).unwrap();
        assert_eq!(by_division[10], BigInt::from(-50521));
        assert_eq!(EulerTable::new(10).get(10), &BigInt::from(-50521));
    }

    #[test]
    fn signs_alternate() {
        let t = EulerTable::new(24);
        for j in 0..=24 {
            let e = t.get(j);
            match j % 4 {
                0 => assert!(e.is_positive()),
                2 => assert!(e.is_negative()),
                _ => assert!(e.is_zero()),
            }
        }
    }

    #[test]
    fn abs_series() {
        let s = euler_abs_series(4);
        assert_eq!(s.coeffs(), &[rat(1), rat(0), rat(1), rat(0), rat(5)][..]);
        assert_eq!(euler_abs_series(0).coeffs(), &[rat(1)][..]);
    }

    #[test]
    fn convergents_by_hand() {
        // 1/(1 - z^2)
        assert_eq!(cf_convergent(1, 2).coeffs(), &[rat(1), rat(0), rat(1)][..]);
        // (1 - 4z^2)/(1 - 5z^2) = 1 + z^2 + 5z^4 + 25z^6 + ...
        assert_eq!(
            cf_convergent(2, 6).coeffs(),
            &[rat(1), rat(0), rat(1), rat(0), rat(5), rat(0), rat(25)][..]
        );
        assert_eq!(cf_convergent(4, 8), euler_abs_series(8));
    }

    #[test]
    fn convergent_depth_determines_agreement() {
        for d in 1..=8 {
            assert_eq!(
                cf_convergent(d, 2 * d),
                euler_abs_series(2 * d),
                "depth {d}"
            );
            // and not one order further
            assert_ne!(
                cf_convergent(d, 2 * d + 2),
                euler_abs_series(2 * d + 2),
                "depth {d}"
            );
        }
    }

    #[test]
    fn beta_coefficients() {
        let t = EulerTable::new(8);
        assert_eq!(dirichlet_beta_coeff(0, &t).coeff, ratio(1, 4));
        assert_eq!(dirichlet_beta_coeff(1, &t).coeff, ratio(1, 32));
        assert_eq!(dirichlet_beta_coeff(2, &t).coeff, ratio(5, 1536));
        for l in 0..=4 {
            assert!(dirichlet_beta_coeff(l, &t).coeff.is_positive());
        }
    }
}
