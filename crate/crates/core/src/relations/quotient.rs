//! Degreewise structure of `Q[α, β, δ_1..δ_n] / (δ_k² - β, R^J)`.
//!
//! Relation multiples only mix monomials that share a δ-set `J`, so every
//! degree splits into blocks indexed by `J`, and the `S_n` symmetry of the
//! relation set makes the block rank depend only on `|J|`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{relation_ladder, subsets_up_to, ABPoly, Monomial};
use crate::error::{Error, Result};
use crate::exact::{binomial, Rational, RationalMatrix};

fn check_points(n: u32) -> Result<u32> {
    if n.is_multiple_of(2) {
        return Err(Error::OutOfDomain(format!(
            "n must be odd (1, 3, 5, ...), got {n}"
        )));
    }
    if n < 3 {
        return Err(Error::OutOfDomain(
            "R_{0,1} is empty; n must be >= 3 in genus 0".into(),
        ));
    }
    if n > Monomial::MAX_POINTS {
        return Err(Error::OutOfDomain(format!(
            "at most {} marked points",
            Monomial::MAX_POINTS
        )));
    }
    Ok((n - 1) / 2)
}

/// The monomials `α^a β^b δ^J` with `a + b + |J| < m`, sorted by degree.
pub fn basis_enumeration(n: u32) -> Result<Vec<Monomial>> {
    let m = check_points(n)?;
    let mut out = Vec::new();
    for j in subsets_up_to(n, m - 1) {
        let s = j.count_ones();
        for b in 0..m - s {
            for a in 0..m - s - b {
                out.push(Monomial::new(a, b, j));
            }
        }
    }
    out.sort_by_key(|x| (x.weight(), x.delta_count(), x.j, x.b, x.a));
    Ok(out)
}

/// Number of basis monomials in each cohomological degree `0..=2n-6`,
/// indexed by the power of `t` (odd entries are zero). Counted without
/// enumerating the monomials.
pub fn basis_degree_counts(n: u32) -> Result<Vec<u64>> {
    let m = check_points(n)?;
    let top = 2 * (2 * m - 2) as usize;
    let mut counts = vec![BigInt::zero(); top + 1];
    for s in 0..m {
        let c = binomial(n as u64, s as u64);
        for b in 0..m - s {
            for a in 0..m - s - b {
                counts[2 * (a + 2 * b + s) as usize] += &c;
            }
        }
    }
    counts
        .into_iter()
        .map(|c| {
            c.to_u64()
                .ok_or_else(|| Error::ResourceLimit("count exceeds u64".into()))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientOptions {
    /// Largest `n` accepted without `force`.
    pub max_points: u32,
    pub force: bool,
    /// Upper bound on the rows of a single block matrix.
    pub max_rows: usize,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        Self {
            max_points: 9,
            force: false,
            max_rows: 200_000,
        }
    }
}

/// Rows spanning the relation multiples of weight `k` whose δ-set is `j`.
/// Column `b` holds the coefficient of `α^{k-|J|-2b} β^b δ^J`.
fn block_rows(
    n: u32,
    k: u32,
    j: u64,
    ladder: &[ABPoly],
    max_rows: usize,
) -> Result<RationalMatrix> {
    let m = (n - 1) / 2;
    let s = j.count_ones();
    let w = k - s;
    let cols = (w / 2 + 1) as usize;
    let mut rows = Vec::new();
    if k < m {
        return Ok(RationalMatrix::zeros(0, cols));
    }
    let spare = k - m;
    for kk in subsets_up_to(n, m) {
        let l = j ^ kk;
        let ls = l.count_ones();
        if ls > spare {
            continue;
        }
        let extra_b = (l & kk).count_ones();
        let r = &ladder[(m - kk.count_ones()) as usize];
        let rest = spare - ls;
        for b0 in 0..=rest / 2 {
            let mut row = vec![Rational::zero(); cols];
            for (_, b, c) in r.terms() {
                row[(b + b0 + extra_b) as usize] += c;
            }
            rows.push(row);
            if rows.len() > max_rows {
                return Err(Error::ResourceLimit(format!(
                    "block matrix for n = {n}, weight {k} exceeds {max_rows} rows"
                )));
            }
        }
    }
    Ok(RationalMatrix::from_rows(rows, cols))
}

/// Dimension of the quotient ring in each cohomological degree
/// `0..=max_degree`, indexed by the power of `t`.
pub fn hilbert_series_quotient(
    n: u32,
    max_degree: u32,
    opts: &QuotientOptions,
) -> Result<Vec<u64>> {
    check_points(n)?;
    if n > opts.max_points && !opts.force {
        return Err(Error::ResourceLimit(format!(
            "n = {n} exceeds the default limit {}; pass force to override",
            opts.max_points
        )));
    }
    let ladder = relation_ladder(n)?;
    let mut out = vec![0u64; max_degree as usize + 1];
    for k in 0..=max_degree / 2 {
        let mut total = BigInt::zero();
        for s in 0..=k.min(n) {
            let j = if s == 64 { u64::MAX } else { (1u64 << s) - 1 };
            let block = block_rows(n, k, j, &ladder, opts.max_rows)?;
            let free = block.cols() - block.rank();
            total += binomial(n as u64, s as u64) * BigInt::from(free);
        }
        out[2 * k as usize] = total
            .to_u64()
            .ok_or_else(|| Error::ResourceLimit("dimension exceeds u64".into()))?;
    }
    Ok(out)
}

/// `monomial ≡ Σ c · basis` modulo the relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionWitness {
    pub monomial: Monomial,
    /// Basis monomials with nonzero coefficients, ascending in `β`.
    pub combination: Vec<(Monomial, Rational)>,
}

pub fn reduction_witness(n: u32, mono: &Monomial) -> Result<ReductionWitness> {
    let m = check_points(n)?;
    if mono.j.checked_shr(n).unwrap_or(0) != 0 {
        return Err(Error::OutOfDomain(format!(
            "{mono} uses a δ index above {n}"
        )));
    }
    let k = mono.weight();
    if k > 2 * m - 2 {
        return Err(Error::OutOfDomain(format!(
            "degree {} of {mono} exceeds the top degree {}",
            mono.degree(),
            2 * n - 6
        )));
    }
    let ladder = relation_ladder(n)?;
    let block = block_rows(n, k, mono.j, &ladder, usize::MAX)?;
    let s = mono.delta_count();
    let col_mono = |b: u32| Monomial::new(k - s - 2 * b, b, mono.j);
    let cols = block.cols();
    let in_basis = |c: usize| col_mono(c as u32).exponent_sum() < m;
    let mut order: Vec<usize> = (0..cols).filter(|&c| !in_basis(c)).collect();
    order.extend((0..cols).filter(|&c| in_basis(c)));
    let ech = block.rref_with_column_order(&order);

    let mut v = vec![Rational::zero(); cols];
    v[mono.b as usize] = num_traits::One::one();
    ech.reduce(&mut v);
    if let Some(c) = (0..cols).find(|&c| !in_basis(c) && !v[c].is_zero()) {
        return Err(Error::NotReducible(format!(
            "{mono} leaves {} on {} after reduction for n = {n}",
            v[c],
            col_mono(c as u32)
        )));
    }
    let combination = v
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(c, x)| (col_mono(c as u32), x))
        .collect();
    Ok(ReductionWitness {
        monomial: *mono,
        combination,
    })
}
