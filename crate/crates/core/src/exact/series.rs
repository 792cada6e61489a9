use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Rational, UniPoly};
use crate::error::{Error, Result};

/// Power series in `t` known exactly through `t^order`.
///
/// Binary operations truncate to the smaller of the two orders, so a result
/// is never claimed to be known beyond what its inputs determine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::from_poly(&UniPoly::one(), order)
    }

    /// Truncate a polynomial to `order`.
    pub fn from_poly(p: &UniPoly, order: usize) -> Self {
        let coeffs = (0..=order).map(|k| p.coeff(k)).collect();
        Self { order, coeffs }
    }

    /// Coefficients `t^0..t^order`; missing entries are zero, extra ones dropped.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(
            self.coeffs[..=order.min(self.order)].to_vec(),
            order.min(self.order),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = c0.recip();
        let mut out = Vec::with_capacity(self.order + 1);
        out.push(inv0.clone());
        for k in 1..=self.order {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &out[k - j];
                }
            }
            out.push(-acc * &inv0);
        }
        Ok(Self {
            order: self.order,
            coeffs: out,
        })
    }

    /// `self / den` for a unit `den`.
    pub fn divide(&self, den: &Self) -> Result<Self> {
        Ok(self * &den.reciprocal()?)
    }

    /// Drop the truncation, asserting that every coefficient above
    /// `max_degree` vanishes.
    pub fn into_polynomial(self, max_degree: usize) -> Result<UniPoly> {
        if let Some((degree, _)) = self
            .coeffs
            .iter()
            .enumerate()
            .skip(max_degree + 1)
            .find(|(_, c)| !c.is_zero())
        {
            return Err(Error::NonPolynomialResult {
                expected_degree: max_degree,
                degree,
            });
        }
        Ok(UniPoly::from_coeffs(self.coeffs))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] + &rhs.coeffs[k])
            .collect();
        TruncatedSeries { order, coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order)
            .map(|k| &self.coeffs[k] - &rhs.coeffs[k])
            .collect();
        TruncatedSeries { order, coeffs }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { order, coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&UniPoly> for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &UniPoly) -> TruncatedSeries {
        self * &TruncatedSeries::from_poly(rhs, self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    #[test]
    fn geometric_series() {
        let s = TruncatedSeries::from_poly(&UniPoly::from_ints(&[1, -1]), 5);
        let inv = s.reciprocal().unwrap();
        assert_eq!(inv.coeffs(), &vec![rat(1); 6][..]);
    }

    #[test]
    fn reciprocal_needs_a_unit() {
        let s = TruncatedSeries::from_poly(&UniPoly::from_ints(&[0, 1]), 3);
        assert_eq!(s.reciprocal().unwrap_err(), Error::NotAUnit);
    }

    #[test]
    fn polynomial_extraction_checks_the_guard_band() {
        let s = TruncatedSeries::from_poly(&UniPoly::from_ints(&[1, 0, 2, 0, 0, 3]), 6);
        assert_eq!(
            s.clone().into_polynomial(4).unwrap_err(),
            Error::NonPolynomialResult {
                expected_degree: 4,
                degree: 5
            }
        );
        assert_eq!(
            s.into_polynomial(5).unwrap(),
            UniPoly::from_ints(&[1, 0, 2, 0, 0, 3])
        );
    }

    #[test]
    fn mixed_orders_truncate_to_the_smaller() {
        let a = TruncatedSeries::one(3);
        let b = TruncatedSeries::one(7);
        assert_eq!((&a * &b).order(), 3);
        assert_eq!((&a + &b).order(), 3);
    }

    proptest! {
        #[test]
        fn reciprocal_is_an_inverse(
            c0 in prop_oneof![-9i64..=-1, 1i64..=9],
            rest in prop::collection::vec(-9i64..=9, 0..8),
            order in 0usize..10,
        ) {
            let mut c = vec![c0];
            c.extend(rest);
            let s = TruncatedSeries::from_poly(&UniPoly::from_ints(&c), order);
            let prod = &s * &s.reciprocal().unwrap();
            prop_assert!(prod.is_one());
        }
    }
}
