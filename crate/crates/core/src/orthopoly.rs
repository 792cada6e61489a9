//! Moment functionals, Hankel matrices, monic orthogonal polynomials and
//! their three-term recurrence, and the J-fraction expansion of the moment
//! generating function.
//!
//! A moment functional is only ever given by its moments `c_n = L(x^n)`; no
//! measure is constructed.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::euler::EulerTable;
use crate::exact::{Rational, RationalMatrix, TruncatedSeries, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSequence {
    moments: Vec<Rational>,
}

impl MomentSequence {
    pub fn new(moments: Vec<Rational>) -> Self {
        Self { moments }
    }

    /// `c_n = |E_n|` for every index in the table.
    pub fn euler(table: &EulerTable) -> Self {
        let moments = (0..=table.max_index())
            .map(|j| Rational::from_integer(table.abs(j)))
            .collect();
        Self { moments }
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    pub fn moments(&self) -> &[Rational] {
        &self.moments
    }

    pub fn get(&self, n: usize) -> Result<&Rational> {
        self.moments.get(n).ok_or(Error::InsufficientMoments {
            needed: n,
            available: self.moments.len().saturating_sub(1),
        })
    }

    fn require(&self, needed: usize) -> Result<()> {
        self.get(needed).map(|_| ())
    }

    /// `L(p) = Σ p_k c_k`
    pub fn functional(&self, p: &UniPoly) -> Result<Rational> {
        if let Some(d) = p.degree() {
            self.require(d)?;
        }
        Ok(p.coeffs()
            .iter()
            .zip(&self.moments)
            .filter(|(a, _)| !a.is_zero())
            .fold(Rational::zero(), |acc, (a, c)| acc + a * c))
    }

    /// `L(p q)`
    pub fn pairing(&self, p: &UniPoly, q: &UniPoly) -> Result<Rational> {
        self.functional(&(p * q))
    }
}

/// The `⌊m/2⌋ × (⌊m/2⌋ + 1)` matrix with entries `c_{2e + 2i + 2j}`.
pub fn hankel(ms: &MomentSequence, m: usize, e: usize) -> Result<RationalMatrix> {
    let rows = m / 2;
    let cols = rows + 1;
    if rows > 0 {
        ms.require(2 * e + 2 * (rows - 1) + 2 * (cols - 1))?;
    }
    let mut out = RationalMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            out.set(i, j, ms.moments[2 * e + 2 * i + 2 * j].clone());
        }
    }
    Ok(out)
}

/// Monic orthogonal polynomials `p_0..=p_K` with their recurrence data
/// `α_0..α_{K-1}` and `β_1..β_{K-1}` (`betas[k-1]` holds `β_k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoPolySequence {
    pub polys: Vec<UniPoly>,
    pub alphas: Vec<Rational>,
    pub betas: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ProjectionOrder {
    Forward,
    Reverse,
}

/// Gram–Schmidt on `1, x, x², ...` under the moment pairing. Uses
/// `c_0..c_{2K-1}`.
pub fn gram_schmidt_ortho(ms: &MomentSequence, k: usize) -> Result<OrthoPolySequence> {
    gram_schmidt_in_order(ms, k, ProjectionOrder::Forward)
}

pub(crate) fn gram_schmidt_in_order(
    ms: &MomentSequence,
    k: usize,
    order: ProjectionOrder,
) -> Result<OrthoPolySequence> {
    if k > 0 {
        ms.require(2 * k - 1)?;
    }
    let x = UniPoly::from_ints(&[0, 1]);
    let mut polys: Vec<UniPoly> = Vec::with_capacity(k + 1);
    let mut norms: Vec<Rational> = Vec::with_capacity(k);
    for deg in 0..=k {
        let xk = UniPoly::monomial(Rational::one(), deg);
        let mut idx: Vec<usize> = (0..deg).collect();
        if order == ProjectionOrder::Reverse {
            idx.reverse();
        }
        let mut p = xk.clone();
        for j in idx {
            let coeff = ms.pairing(&xk, &polys[j])? / &norms[j];
            p = &p - &polys[j].scale(&coeff);
        }
        if deg < k {
            let norm = ms.pairing(&p, &p)?;
            if norm.is_zero() {
                return Err(Error::DegenerateMoments { k: deg });
            }
            norms.push(norm);
        }
        polys.push(p);
    }
    let mut alphas = Vec::with_capacity(k);
    for j in 0..k {
        let xp = &x * &polys[j];
        alphas.push(ms.pairing(&xp, &polys[j])? / &norms[j]);
    }
    let betas = (1..k).map(|j| &norms[j] / &norms[j - 1]).collect();
    Ok(OrthoPolySequence {
        polys,
        alphas,
        betas,
    })
}

/// Recurrence data of `ops`, after confirming
/// `p_{k+1} = (x - α_k) p_k - β_k p_{k-1}` for every `k < K`.
pub fn three_term_coeffs(ops: &OrthoPolySequence) -> Result<(Vec<Rational>, Vec<Rational>)> {
    for k in 0..ops.alphas.len() {
        let lin = UniPoly::from_coeffs(vec![-ops.alphas[k].clone(), Rational::one()]);
        let shifted = &lin * &ops.polys[k];
        let rebuilt = if k == 0 {
            shifted
        } else {
            &shifted - &ops.polys[k - 1].scale(&ops.betas[k - 1])
        };
        if rebuilt != ops.polys[k + 1] {
            return Err(Error::RecurrenceMismatch { k: k + 1 });
        }
    }
    Ok((ops.alphas.clone(), ops.betas.clone()))
}

/// `c_0 / (1 - α_0 x - β_1 x² / (1 - α_1 x - ... - β_d x²))` expanded
/// through `x^order`. Uses `α_0..α_{d-1}` and `β_1..β_d`.
pub fn jfraction_series(
    c0: &Rational,
    alphas: &[Rational],
    betas: &[Rational],
    depth: usize,
    order: usize,
) -> TruncatedSeries {
    assert!(
        alphas.len() >= depth && betas.len() >= depth,
        "not enough recurrence data"
    );
    let mut num = UniPoly::one();
    let mut den = UniPoly::one();
    for level in (0..depth).rev() {
        // D_level = 1 - α x - β x² · num/den, inverted: den' = den·(1 - α x) - β x² num
        let lin = UniPoly::from_coeffs(vec![Rational::one(), -alphas[level].clone()]);
        let quad = UniPoly::monomial(betas[level].clone(), 2);
        let next_den = &(&den * &lin) - &(&quad * &num);
        num = den;
        den = next_den;
    }
    let num = TruncatedSeries::from_poly(&num.scale(c0), order);
    let den = TruncatedSeries::from_poly(&den, order);
    num.divide(&den).expect("denominator has constant term 1")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfVerdict {
    pub depth: usize,
    pub matched_through: usize,
}

/// Checks that the depth-`depth` J-fraction built from `alphas`/`betas`
/// reproduces `c_0..c_{2·depth}`.
pub fn cf_vs_moments(
    ms: &MomentSequence,
    alphas: &[Rational],
    betas: &[Rational],
    depth: usize,
) -> Result<CfVerdict> {
    let order = 2 * depth;
    ms.require(order)?;
    if alphas.len() < depth || betas.len() < depth {
        return Err(Error::InsufficientMoments {
            needed: 2 * depth + 1,
            available: ms.len() - 1,
        });
    }
    let series = jfraction_series(&ms.moments[0], alphas, betas, depth, order);
    if let Some(order) = (0..=order).find(|&k| series.coeff(k) != ms.moments[k]) {
        return Err(Error::MatchFailure { order });
    }
    Ok(CfVerdict {
        depth,
        matched_through: order,
    })
}

/// Extracts the recurrence data from `ms` itself (Gram–Schmidt to degree
/// `depth + 1`) and runs [`cf_vs_moments`].
pub fn cf_vs_own_moments(ms: &MomentSequence, depth: usize) -> Result<CfVerdict> {
    let ops = gram_schmidt_ortho(ms, depth + 1)?;
    let (alphas, betas) = three_term_coeffs(&ops)?;
    cf_vs_moments(ms, &alphas, &betas, depth)
}

/// Positivity of the norms, the defining property of a positive-definite functional.
pub fn norms_positive(ms: &MomentSequence, ops: &OrthoPolySequence) -> Result<bool> {
    for p in &ops.polys[..ops.polys.len().saturating_sub(1)] {
        if !ms.pairing(p, p)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}
