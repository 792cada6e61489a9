//! Poincaré polynomials of the moduli spaces `R_{g,n}` (rank 2, all
//! parabolic weights 1/4, `n` odd), computed three ways:
//!
//! * summing the unstable strata of the Morse stratification,
//! * the closed rational-function formula,
//! * the two recursions in `n → n+2` and `g → g+1`.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, rat, Rational, TruncatedSeries, UniPoly};

/// Genus `g` and number of parabolic points `n = 2m + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuliParams {
    g: u32,
    n: u32,
}

impl ModuliParams {
    /// Rejects even `n`. Negative dimension is only rejected by the queries
    /// that need a Poincaré polynomial.
    pub fn new(g: u32, n: u32) -> Result<Self> {
        if n.is_multiple_of(2) {
            return Err(Error::OutOfDomain(format!(
                "n must be odd (1, 3, 5, ...), got {n}"
            )));
        }
        Ok(Self { g, n })
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        (self.n - 1) / 2
    }

    /// Real dimension `6g - 6 + 2n`.
    pub fn dim(&self) -> i64 {
        6 * self.g as i64 - 6 + 2 * self.n as i64
    }

    fn checked_dim(&self) -> Result<usize> {
        usize::try_from(self.dim()).map_err(|_| {
            Error::OutOfDomain(format!(
                "dimension 6g-6+2n must be >= 0; (g, n) = ({}, {}) is excluded",
                self.g, self.n
            ))
        })
    }
}

impl fmt::Display for ModuliParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R_{{{},{}}}", self.g, self.n)
    }
}

/// A destabilizing type, aggregated over all intersection vectors with the
/// same coordinate sum `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrataType {
    pub lambda: i64,
    pub e: u32,
}

impl StrataType {
    pub fn is_destabilizing(&self, n: u32) -> bool {
        4 * self.lambda + 2 * self.e as i64 >= -(n as i64)
    }

    /// Complex codimension `2λ + n + g - 1 + e`.
    pub fn codimension(&self, p: &ModuliParams) -> i64 {
        2 * self.lambda + p.n as i64 + p.g as i64 - 1 + self.e as i64
    }
}

/// Every destabilizing type whose term `t^{2d}` has `2d <= max_degree`.
pub fn destabilizing_types(p: &ModuliParams, max_degree: usize) -> Vec<StrataType> {
    let mut out = Vec::new();
    for e in 0..=p.n {
        let mut lambda = num_integer::Integer::div_ceil(&(-(p.n as i64) - 2 * e as i64), &4);
        loop {
            let ty = StrataType { lambda, e };
            debug_assert!(ty.is_destabilizing(p.n));
            if 2 * ty.codimension(p) > max_degree as i64 {
                break;
            }
            out.push(ty);
            lambda += 1;
        }
    }
    out
}

/// The strata sum `S_{g,n} = Σ C(n, e) t^{2d}` through `t^order`.
pub fn strata_sum(p: &ModuliParams, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    for ty in destabilizing_types(p, order) {
        let deg = 2 * ty.codimension(p);
        assert!(deg >= 0, "negative codimension for {ty:?}");
        coeffs[deg as usize] += Rational::from_integer(binomial(p.n as u64, ty.e as u64));
    }
    TruncatedSeries::from_coeffs(coeffs, order)
}

/// Poincaré polynomial from the sum over unstable strata, carried out in
/// truncated power series with a guard band of four degrees above the
/// dimension.
pub fn poincare_strata(p: &ModuliParams) -> Result<UniPoly> {
    let dim = p.checked_dim()?;
    let order = dim + 4;
    let one_plus_t = UniPoly::from_ints(&[1, 1]);
    let one_minus_t = UniPoly::from_ints(&[1, -1]);
    let one_minus_t2 = UniPoly::from_ints(&[1, 0, -1]);
    let one_plus_t2 = UniPoly::from_ints(&[1, 0, 1]);

    let head = &UniPoly::from_ints(&[1, -1, 1]).pow(2 * p.g) * &one_plus_t2.pow(p.n - 1);
    let tail = &strata_sum(p, order) * &one_minus_t2;
    let mut bracket = &TruncatedSeries::from_poly(&head, order) - &tail;

    bracket = if p.g >= 1 {
        &bracket * &one_plus_t.pow(2 * p.g - 2)
    } else {
        bracket.divide(&TruncatedSeries::from_poly(&one_plus_t.pow(2), order))?
    };
    let series = bracket.divide(&TruncatedSeries::from_poly(&one_minus_t.pow(2), order))?;
    let poly = series.into_polynomial(dim)?;
    if poly.degree() != Some(dim) {
        return Err(Error::NonPolynomialResult {
            expected_degree: dim,
            degree: poly.degree().unwrap_or(0),
        });
    }
    Ok(poly)
}

/// Poincaré polynomial from the closed form
/// `((1+t²)^n (1+t³)^2g − 2^(n−1) t^(2g+n−1) (1+t)^2g (1+t²)) / ((1−t²)(1−t⁴))`.
pub fn poincare_closed(p: &ModuliParams) -> Result<UniPoly> {
    p.checked_dim()?;
    let (g, n) = (p.g, p.n);
    let one_plus_t2 = UniPoly::from_ints(&[1, 0, 1]);
    let first = &one_plus_t2.pow(n) * &UniPoly::from_ints(&[1, 0, 0, 1]).pow(2 * g);
    let second = &(&UniPoly::from_ints(&[1, 1]).pow(2 * g) * &one_plus_t2)
        .shift((2 * g + n - 1) as usize)
        .scale(&Rational::from_integer(
            num_bigint::BigInt::one() << (n - 1),
        ));
    let den = &UniPoly::from_ints(&[1, 0, -1]) * &UniPoly::from_ints(&[1, 0, 0, 0, -1]);
    (&first - second).divide_exact(&den)
}

/// `2^(n−1) t^(2g+n−1) (1+t)^2g`
fn middle_correction(g: u32, n: u32) -> UniPoly {
    UniPoly::from_ints(&[1, 1])
        .pow(2 * g)
        .shift((2 * g + n - 1) as usize)
        .scale(&Rational::from_integer(
            num_bigint::BigInt::one() << (n - 1),
        ))
}

/// Given `base = P_t(R_{g,n})`, returns `P_t(R_{g,n+2})`.
pub fn poincare_recursion_n(p: &ModuliParams, base: &UniPoly) -> Result<UniPoly> {
    p.checked_dim()?;
    let sq = UniPoly::from_ints(&[1, 0, 1]).pow(2);
    Ok(&(&sq * base) + &middle_correction(p.g, p.n))
}

/// Given `base = P_t(R_{g,n})`, returns `P_t(R_{g+1,n})`.
pub fn poincare_recursion_g(p: &ModuliParams, base: &UniPoly) -> Result<UniPoly> {
    p.checked_dim()?;
    let sq = UniPoly::from_ints(&[1, 0, 0, 1]).pow(2);
    let extra = &middle_correction(p.g, p.n) * &UniPoly::from_ints(&[1, 0, 1]);
    Ok(&(&sq * base) + &extra)
}

/// Runs the `n → n+2` recursion from the smallest valid `n` at this genus
/// (`n = 3` for `g = 0`, `n = 1` otherwise), anchored at the closed form.
pub fn poincare_by_recursion_n(p: &ModuliParams) -> Result<UniPoly> {
    p.checked_dim()?;
    let start = if p.g == 0 { 3 } else { 1 };
    let mut cur = ModuliParams::new(p.g, start)?;
    let mut poly = poincare_closed(&cur)?;
    while cur.n < p.n {
        poly = poincare_recursion_n(&cur, &poly)?;
        cur = ModuliParams::new(p.g, cur.n + 2)?;
    }
    Ok(poly)
}

/// Runs the `g → g+1` recursion from the smallest valid genus for this `n`
/// (`g = 1` for `n = 1`, `g = 0` otherwise), anchored at the closed form.
pub fn poincare_by_recursion_g(p: &ModuliParams) -> Result<UniPoly> {
    p.checked_dim()?;
    let start = if p.n == 1 { 1 } else { 0 };
    let mut cur = ModuliParams::new(start, p.n)?;
    let mut poly = poincare_closed(&cur)?;
    while cur.g < p.g {
        poly = poincare_recursion_g(&cur, &poly)?;
        cur = ModuliParams::new(cur.g + 1, p.n)?;
    }
    Ok(poly)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Strata,
    Closed,
    RecursionN,
    RecursionG,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Strata,
        Method::Closed,
        Method::RecursionN,
        Method::RecursionG,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Strata => "strata",
            Method::Closed => "closed",
            Method::RecursionN => "rec-n",
            Method::RecursionG => "rec-g",
        }
    }
}

pub fn poincare(p: &ModuliParams, method: Method) -> Result<UniPoly> {
    match method {
        Method::Strata => poincare_strata(p),
        Method::Closed => poincare_closed(p),
        Method::RecursionN => poincare_by_recursion_n(p),
        Method::RecursionG => poincare_by_recursion_g(p),
    }
}

/// Number of monomials `α^a β^b δ^J` (`J` squarefree, `|J| ≤ n`) of each
/// degree `2a + 4b + 2|J|`, indexed by degree `0..=max_degree`.
pub fn bgraded_counts(n: u32, max_degree: usize) -> Vec<u64> {
    (0..=max_degree)
        .map(|d| {
            if d % 2 == 1 {
                return 0;
            }
            let k = d / 2;
            (0..=k.min(n as usize))
                .map(|j| {
                    let r = (k - j) as u64;
                    let c = binomial(n as u64, j as u64)
                        .to_u64()
                        .expect("count fits in u64");
                    c * (r / 2 + 1)
                })
                .sum()
        })
        .collect()
}

/// Betti numbers as machine integers. Fails if a coefficient is not a
/// nonnegative integer.
pub fn betti_numbers(poly: &UniPoly) -> Result<Vec<u64>> {
    poly.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            if !c.is_integer() || c.is_negative() {
                return Err(Error::CheckFailed(format!(
                    "coefficient of t^{k} is {c}, not a nonnegative integer"
                )));
            }
            c.to_integer()
                .to_u64()
                .ok_or_else(|| Error::CheckFailed(format!("coefficient of t^{k} overflows u64")))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Passed,
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralCheck {
    pub name: &'static str,
    pub outcome: CheckOutcome,
}

#[derive(Clone, Debug)]
pub struct StructuralReport {
    pub params: ModuliParams,
    pub polynomial: UniPoly,
    pub checks: Vec<StructuralCheck>,
}

/// Sanity properties of `P_t(R_{g,n})`: integrality, Poincaré duality,
/// `b_0 = 1`, `b_2 = n + 1`, and for genus 0 agreement with the monomial
/// counts of `C[α, β, δ_1..δ_n]/(δ_i²)` up to the middle dimension.
///
/// `b_2 = n + 1` is checked when `dim >= 4`. Below that it fails at
/// `R_{0,3}` (a point) and `R_{1,1}` (`b_2 = 1`); those cases are reported
/// as skipped along with the actual value.
pub fn structural_checks(p: &ModuliParams) -> Result<StructuralReport> {
    let dim = p.checked_dim()?;
    let poly = poincare_closed(p)?;
    let fail = |what: String| Err(Error::CheckFailed(format!("{p}: {what}")));
    let mut checks = Vec::new();
    let pass = |checks: &mut Vec<StructuralCheck>, name| {
        checks.push(StructuralCheck {
            name,
            outcome: CheckOutcome::Passed,
        })
    };

    let betti = betti_numbers(&poly)?;
    pass(&mut checks, "nonnegative-integers");

    if betti.len() != dim + 1 || poly.reversed() != poly {
        return fail(format!("not palindromic of degree {dim}: {poly}"));
    }
    pass(&mut checks, "palindromic");

    if betti[0] != 1 {
        return fail(format!("b_0 = {} != 1", betti[0]));
    }
    pass(&mut checks, "b0=1");

    let b2 = betti.get(2).copied().unwrap_or(0);
    if dim >= 4 {
        if b2 != p.n as u64 + 1 {
            return fail(format!("b_2 = {b2} != n + 1 = {}", p.n + 1));
        }
        pass(&mut checks, "b2=n+1");
    } else {
        checks.push(StructuralCheck {
            name: "b2=n+1",
            outcome: CheckOutcome::Skipped(format!(
                "dim {dim} < 4; b_2 = {b2}, n + 1 = {}",
                p.n + 1
            )),
        });
    }

    if p.g == 0 {
        let middle = p.n as usize - 3;
        let counts = bgraded_counts(p.n, middle);
        if counts[..] != betti[..=middle] {
            return fail(format!(
                "monomial counts {counts:?} differ from Betti numbers {:?} below the middle dimension",
                &betti[..=middle]
            ));
        }
        pass(&mut checks, "genus0-monomial-counts");
    }

    Ok(StructuralReport {
        params: *p,
        polynomial: poly,
        checks,
    })
}

/// `P(1)`, the total Betti number.
pub fn total_betti(poly: &UniPoly) -> Rational {
    poly.eval(&rat(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g: u32, n: u32) -> ModuliParams {
        ModuliParams::new(g, n).unwrap()
    }

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn worked_examples() {
        for method in Method::ALL {
            assert_eq!(
                poincare(&params(0, 3), method).unwrap(),
                p(&[1]),
                "{method:?}"
            );
            assert_eq!(
                poincare(&params(0, 5), method).unwrap(),
                p(&[1, 0, 6, 0, 1]),
                "{method:?}"
            );
            assert_eq!(
                poincare(&params(1, 1), method).unwrap(),
                p(&[1, 0, 1]),
                "{method:?}"
            );
        }
    }

    #[test]
    fn even_n_and_negative_dimension_are_rejected() {
        assert!(matches!(
            ModuliParams::new(0, 4),
            Err(Error::OutOfDomain(_))
        ));
        let bad = params(0, 1);
        assert_eq!(bad.dim(), -4);
        for method in Method::ALL {
            assert!(matches!(poincare(&bad, method), Err(Error::OutOfDomain(_))));
        }
        assert!(poincare_recursion_g(&bad, &UniPoly::one()).is_err());
    }

    #[test]
    fn recursion_steps_by_hand() {
        assert_eq!(
            poincare_recursion_n(&params(0, 3), &p(&[1])).unwrap(),
            p(&[1, 0, 6, 0, 1])
        );
        assert_eq!(
            poincare_recursion_n(&params(0, 5), &p(&[1, 0, 6, 0, 1])).unwrap(),
            p(&[1, 0, 8, 0, 30, 0, 8, 0, 1])
        );
        // (1+t^2)^3 + t^2 (1+t)^2
        let expected = &p(&[1, 0, 1]).pow(3) + &p(&[0, 0, 1, 2, 1]);
        let got = poincare_recursion_n(&params(1, 1), &p(&[1, 0, 1])).unwrap();
        assert_eq!(got, expected);
        assert_eq!(got, poincare_closed(&params(1, 3)).unwrap());

        let step = poincare_recursion_g(&params(0, 3), &p(&[1])).unwrap();
        assert_eq!(step, p(&[1, 0, 4, 2, 4, 0, 1]));
        assert_eq!(step, poincare_closed(&params(1, 3)).unwrap());
        let step2 = poincare_recursion_g(&params(1, 3), &step).unwrap();
        assert_eq!(step2, poincare_closed(&params(2, 3)).unwrap());
    }

    #[test]
    fn closed_form_reference_values() {
        // expanded independently with a computer algebra system
        assert_eq!(
            poincare_closed(&params(0, 9)).unwrap(),
            p(&[1, 0, 10, 0, 47, 0, 140, 0, 47, 0, 10, 0, 1])
        );
        assert_eq!(
            poincare_closed(&params(2, 1)).unwrap(),
            p(&[1, 0, 2, 4, 2, 4, 2, 0, 1])
        );
        assert_eq!(
            poincare_closed(&params(1, 5)).unwrap(),
            p(&[1, 0, 6, 2, 17, 12, 17, 2, 6, 0, 1])
        );
    }

    #[test]
    fn strata_enumeration_for_three_points() {
        // λ ≥ -1 for every e, except (-1, 0) is excluded and (-2, 3) included
        let types = destabilizing_types(&params(0, 3), 4);
        assert!(types.contains(&StrataType { lambda: -2, e: 3 }));
        assert!(!types.contains(&StrataType { lambda: -1, e: 0 }));
        assert!(types.iter().all(|t| t.is_destabilizing(3)));
        let s = strata_sum(&params(0, 3), 4);
        // t^2 - 1 + (1+t^2)^3 / (1-t^4) = 4t^2 + 4t^4 + ...
        assert_eq!(s.coeffs(), &[rat(0), rat(0), rat(4), rat(0), rat(4)][..]);
    }

    #[test]
    fn genus_scaling_of_the_strata_sum() {
        let s0 = strata_sum(&params(0, 5), 20);
        let s2 = strata_sum(&params(2, 5), 20);
        assert_eq!(&s0 * &p(&[0, 0, 0, 0, 1]), s2);
    }

    #[test]
    fn monomial_counts() {
        // α², β, 5 αδ_k, 10 δ_jδ_k
        assert_eq!(bgraded_counts(5, 4), vec![1, 0, 6, 0, 17]);
        assert_eq!(bgraded_counts(3, 0), vec![1]);
        assert_eq!(bgraded_counts(7, 2), vec![1, 0, 8]);
    }

    #[test]
    fn structural_reports() {
        let r = structural_checks(&params(0, 5)).unwrap();
        assert!(r.checks.iter().all(|c| c.outcome == CheckOutcome::Passed));
        assert_eq!(r.polynomial, p(&[1, 0, 6, 0, 1]));

        let r = structural_checks(&params(0, 3)).unwrap();
        let b2 = r.checks.iter().find(|c| c.name == "b2=n+1").unwrap();
        assert!(matches!(b2.outcome, CheckOutcome::Skipped(_)));

        let r = structural_checks(&params(0, 7)).unwrap();
        assert_eq!(r.checks.len(), 5);

        let r = structural_checks(&params(1, 1)).unwrap();
        let b2 = r.checks.iter().find(|c| c.name == "b2=n+1").unwrap();
        assert_eq!(
            b2.outcome,
            CheckOutcome::Skipped("dim 2 < 4; b_2 = 1, n + 1 = 2".into())
        );
    }

    #[test]
    fn cross_method_small_range() {
        for g in 0..=2 {
            for n in (1..=9).step_by(2) {
                let prm = params(g, n);
                if prm.dim() < 0 {
                    continue;
                }
                let closed = poincare_closed(&prm).unwrap();
                for method in Method::ALL {
                    assert_eq!(poincare(&prm, method).unwrap(), closed, "{prm} {method:?}");
                }
                assert_eq!(closed.reversed(), closed);
            }
        }
    }
}
