use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, Zero};

use crate::exact::{Rational, UniPoly};

/// Polynomial in the commuting generators `α` (degree 2) and `β` (degree 4).
///
/// Stored sparsely as `(a, b) -> coeff` for the term `coeff · α^a β^b`; zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ABPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl ABPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Rational::one(), 0, 0)
    }

    pub fn alpha() -> Self {
        Self::term(Rational::one(), 1, 0)
    }

    pub fn beta() -> Self {
        Self::term(Rational::one(), 0, 1)
    }

    pub fn term(c: Rational, a: u32, b: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, a, b);
        p
    }

    pub fn add_term(&mut self, c: Rational, a: u32, b: u32) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.terms
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Terms in increasing `(a, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (a, b, x) in self.terms() {
            out.add_term(x * c, a, b);
        }
        out
    }

    /// Multiply by `α^a β^b`.
    pub fn shift(&self, a: u32, b: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(x, y), c)| ((x + a, y + b), c.clone()))
                .collect(),
        }
    }

    /// Graded degree `2a + 4b` shared by all terms, or `None` if the
    /// polynomial is zero or inhomogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|&(a, b)| 2 * a + 4 * b);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Highest power of `α` present.
    pub fn alpha_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    /// `p(x, 1)`
    pub fn dehomogenize(&self) -> UniPoly {
        let Some(deg) = self.alpha_degree() else {
            return UniPoly::zero();
        };
        let mut coeffs = vec![Rational::zero(); deg as usize + 1];
        for (a, _, c) in self.terms() {
            coeffs[a as usize] += c;
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Add for &ABPoly {
    type Output = ABPoly;
    fn add(self, rhs: &ABPoly) -> ABPoly {
        let mut out = self.clone();
        for (a, b, c) in rhs.terms() {
            out.add_term(c.clone(), a, b);
        }
        out
    }
}

impl Sub for &ABPoly {
    type Output = ABPoly;
    fn sub(self, rhs: &ABPoly) -> ABPoly {
        let mut out = self.clone();
        for (a, b, c) in rhs.terms() {
            out.add_term(-c, a, b);
        }
        out
    }
}

impl Mul for &ABPoly {
    type Output = ABPoly;
    fn mul(self, rhs: &ABPoly) -> ABPoly {
        let mut out = ABPoly::zero();
        for (a, b, x) in self.terms() {
            for (c, d, y) in rhs.terms() {
                out.add_term(x * y, a + c, b + d);
            }
        }
        out
    }
}

fn power(f: &mut fmt::Formatter<'_>, var: &str, e: u32) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{e}"),
    }
}

impl fmt::Display for ABPoly {
    /// Highest power of `α` first: `α^4 - 14α^2β + 9β^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if !mag.is_one() || (a == 0 && b == 0) {
                write!(f, "{mag}")?;
            }
            power(f, "α", a)?;
            power(f, "β", b)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn arithmetic_and_display() {
        let r5 = &(&ABPoly::alpha() * &ABPoly::alpha()) - &ABPoly::beta();
        assert_eq!(r5.to_string(), "α^2 - β");
        assert_eq!(r5.homogeneous_degree(), Some(4));
        let r9 = {
            let mut p = ABPoly::term(rat(1), 4, 0);
            p.add_term(rat(-14), 2, 1);
            p.add_term(rat(9), 0, 2);
            p
        };
        assert_eq!(r9.to_string(), "α^4 - 14α^2β + 9β^2");
        assert_eq!(r9.dehomogenize(), UniPoly::from_ints(&[9, 0, -14, 0, 1]));
        assert_eq!((&r9 - &r9), ABPoly::zero());
        assert_eq!(ABPoly::one().to_string(), "1");
    }

    #[test]
    fn inhomogeneous() {
        let p = &ABPoly::alpha() + &ABPoly::beta();
        assert_eq!(p.homogeneous_degree(), None);
        assert_eq!(ABPoly::zero().homogeneous_degree(), None);
    }
}
