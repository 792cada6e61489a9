//! Genus-0 cohomology ring of `R_{0,n}`: the relation polynomials
//! `r_{0,n}(α, β)`, the relation family `R^J = r_{0,n-2|J|} δ^J`, top
//! pairings `<α^r β^s>` and symplectic volumes, the monomial basis, and the
//! degreewise check that the presented ring has the right Hilbert series.

mod abpoly;
mod monomial;
mod quotient;

pub use abpoly::ABPoly;
pub use monomial::Monomial;
pub use quotient::{
    basis_degree_counts, basis_enumeration, hilbert_series_quotient, reduction_witness,
    QuotientOptions, ReductionWitness,
};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::euler::EulerTable;
use crate::exact::{factorial, rat, Rational};
use crate::orthopoly::{hankel, MomentSequence};

fn half(n: u32) -> Result<u32> {
    if n.is_multiple_of(2) {
        return Err(Error::OutOfDomain(format!(
            "n must be odd (1, 3, 5, ...), got {n}"
        )));
    }
    Ok((n - 1) / 2)
}

/// `r_{0,1} = 1`, `r_{0,3} = α`, `r_{0,2m+3} = α r_{0,2m+1} - m² β r_{0,2m-1}`.
pub fn relation_recurrence(n: u32) -> Result<ABPoly> {
    let m = half(n)?;
    let mut prev = ABPoly::one();
    if m == 0 {
        return Ok(prev);
    }
    let mut cur = ABPoly::alpha();
    for k in 1..m {
        let next = &cur.shift(1, 0) - &prev.shift(0, 1).scale(&rat((k * k) as i64));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// All `r_{0,1}, r_{0,3}, ..., r_{0,n}` from one run of the recurrence.
pub(crate) fn relation_ladder(n: u32) -> Result<Vec<ABPoly>> {
    let m = half(n)?;
    let mut out = vec![ABPoly::one()];
    if m >= 1 {
        out.push(ABPoly::alpha());
    }
    for k in 1..m {
        let k = k as usize;
        let next = &out[k].shift(1, 0) - &out[k - 1].shift(0, 1).scale(&rat((k * k) as i64));
        out.push(next);
    }
    Ok(out)
}

/// `r_{0,n}` as the monic generator of the kernel of the Euler moment
/// matrix `(|E_{2e+2i+2j}|)`, where column `j` holds the coefficient of
/// `α^{e+2j} β^{⌊m/2⌋-j}`.
pub fn relation_hankel(n: u32, table: &EulerTable) -> Result<ABPoly> {
    let m = half(n)?;
    let e = m % 2;
    let matrix = hankel(&MomentSequence::euler(table), m as usize, e as usize)?;
    let kernel = matrix.kernel();
    if kernel.len() != 1 {
        return Err(Error::KernelDimension {
            n,
            dimension: kernel.len(),
        });
    }
    let v = &kernel[0];
    let top = v.last().expect("kernel vector is nonempty");
    if top.is_zero() {
        return Err(Error::CheckFailed(format!(
            "Hankel kernel for n = {n} has no α^{m} term, cannot normalize"
        )));
    }
    let half_m = m / 2;
    let mut out = ABPoly::zero();
    for (j, c) in v.iter().enumerate() {
        let j = j as u32;
        out.add_term(c / top, e + 2 * j, half_m - j);
    }
    Ok(out)
}

/// One relation `R^J = r_{0,n-2|J|} · δ^J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationGenerator {
    /// Bitmask of `J` (bit `k-1` for `δ_k`).
    pub j: u64,
    pub poly: ABPoly,
}

impl RelationGenerator {
    pub fn deltas(&self) -> Vec<u32> {
        Monomial::new(0, 0, self.j).deltas()
    }

    /// Expanded as `(coefficient, monomial)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, Monomial)> + '_ {
        self.poly
            .terms()
            .map(|(a, b, c)| (c, Monomial::new(a, b, self.j)))
    }
}

/// The relations `R^J` for every `J ⊆ {1..n}` with `|J| ≤ m`. Together with
/// the implicit `δ_k² = β` they present the cohomology ring of `R_{0,n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    pub n: u32,
    pub generators: Vec<RelationGenerator>,
}

/// Subsets of `{0..n}` (as bitmasks) of size at most `max_size`, ordered by
/// size and then by bitmask.
pub(crate) fn subsets_up_to(n: u32, max_size: u32) -> Vec<u64> {
    assert!(
        n <= Monomial::MAX_POINTS,
        "at most {} marked points",
        Monomial::MAX_POINTS
    );
    let mut out: Vec<u64> = Vec::new();
    let mut layer: Vec<u64> = vec![0];
    for size in 0..=max_size.min(n) {
        out.extend(&layer);
        if size == max_size.min(n) {
            break;
        }
        // extend each set by an element larger than its maximum
        let mut next = Vec::new();
        for &s in &layer {
            let start = if s == 0 { 0 } else { 64 - s.leading_zeros() };
            for k in start..n {
                next.push(s | 1 << k);
            }
        }
        next.sort_unstable();
        layer = next;
    }
    out
}

pub fn relation_set(n: u32) -> Result<RelationSet> {
    let m = half(n)?;
    if n > Monomial::MAX_POINTS {
        return Err(Error::OutOfDomain(format!(
            "at most {} marked points",
            Monomial::MAX_POINTS
        )));
    }
    let ladder = relation_ladder(n)?;
    let generators = subsets_up_to(n, m)
        .into_iter()
        .map(|j| {
            let s = j.count_ones();
            RelationGenerator {
                j,
                poly: ladder[(m - s) as usize].clone(),
            }
        })
        .collect();
    Ok(RelationSet { n, generators })
}

/// `<α^r β^s, R_{g,n}> = r! / (r-g)! · |E_{r-g}|` for `r + 2s = 3g + n - 3`.
pub fn pairing_ab(g: u32, n: u32, r: u32, s: u32, table: &EulerTable) -> Result<Rational> {
    half(n)?;
    let top = 3 * g as i64 + n as i64 - 3;
    let got = r as i64 + 2 * s as i64;
    if got != top {
        return Err(Error::DegreeMismatch { got, expected: top });
    }
    if r < g {
        return Err(Error::OutOfDomain(format!(
            "pairing needs r >= g, got r = {r}, g = {g}"
        )));
    }
    let idx = (r - g) as usize;
    if idx > table.max_index() {
        return Err(Error::InsufficientMoments {
            needed: idx,
            available: table.max_index(),
        });
    }
    let falling = factorial(r as u64) / factorial((r - g) as u64);
    Ok(Rational::from_integer(falling * table.abs(idx)))
}

/// `<[ω]^{3g+n-3}, R_{g,n}> = (3g+n-3)! / (2^{3g+n-3} g!) · |E_{2g+n-3}|`.
pub fn symplectic_volume(g: u32, n: u32, table: &EulerTable) -> Result<Rational> {
    half(n)?;
    let top = 3 * g as i64 + n as i64 - 3;
    if top < 0 {
        return Err(Error::OutOfDomain(format!(
            "3g + n - 3 must be >= 0; (g, n) = ({g}, {n}) is excluded"
        )));
    }
    let top = top as u64;
    let idx = (2 * g + n - 3) as usize;
    if idx > table.max_index() {
        return Err(Error::InsufficientMoments {
            needed: idx,
            available: table.max_index(),
        });
    }
    let numer = factorial(top) * table.abs(idx);
    let denom = (BigInt::one() << top) * factorial(g as u64);
    Ok(Rational::new(numer, denom))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityVerdict {
    pub n: u32,
    /// The complementary `(r', s')` that were checked.
    pub complementary: Vec<(u32, u32)>,
}

/// Checks that `relation` pairs to zero against every `α^{r'} β^{s'}` of
/// complementary degree `r' + 2s' = m - 2` in `R_{0,n}`.
pub fn hankel_orthogonality_check(
    n: u32,
    relation: &ABPoly,
    table: &EulerTable,
) -> Result<OrthogonalityVerdict> {
    let m = half(n)?;
    let mut complementary = Vec::new();
    if m >= 2 {
        let w = m - 2;
        for s2 in 0..=w / 2 {
            let r2 = w - 2 * s2;
            let mut total = Rational::zero();
            for (a, b, c) in relation.terms() {
                total += c * pairing_ab(0, n, a + r2, b + s2, table)?;
            }
            if !total.is_zero() {
                return Err(Error::CheckFailed(format!(
                    "r_{{0,{n}}} pairs to {total} with α^{r2}β^{s2}"
                )));
            }
            complementary.push((r2, s2));
        }
    }
    Ok(OrthogonalityVerdict { n, complementary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn ab(terms: &[(i64, u32, u32)]) -> ABPoly {
        let mut p = ABPoly::zero();
        for &(c, a, b) in terms {
            p.add_term(rat(c), a, b);
        }
        p
    }

    fn table() -> EulerTable {
        EulerTable::new(24)
    }

    #[test]
    fn recurrence_values() {
        assert_eq!(relation_recurrence(1).unwrap(), ABPoly::one());
        assert_eq!(relation_recurrence(3).unwrap(), ABPoly::alpha());
        assert_eq!(
            relation_recurrence(5).unwrap(),
            ab(&[(1, 2, 0), (-1, 0, 1)])
        );
        assert_eq!(
            relation_recurrence(7).unwrap(),
            ab(&[(1, 3, 0), (-5, 1, 1)])
        );
        // α(α³ - 5αβ) - 9β(α² - β)
        assert_eq!(
            relation_recurrence(9).unwrap(),
            ab(&[(1, 4, 0), (-14, 2, 1), (9, 0, 2)])
        );
        assert!(relation_recurrence(4).is_err());
    }

    #[test]
    fn ladder_agrees_with_recurrence() {
        let ladder = relation_ladder(15).unwrap();
        for (i, r) in ladder.iter().enumerate() {
            assert_eq!(r, &relation_recurrence(2 * i as u32 + 1).unwrap());
            assert_eq!(r.homogeneous_degree(), Some(2 * i as u32));
        }
    }

    #[test]
    fn hankel_route() {
        let t = table();
        assert_eq!(
            relation_hankel(5, &t).unwrap(),
            ab(&[(1, 2, 0), (-1, 0, 1)])
        );
        assert_eq!(
            relation_hankel(9, &t).unwrap(),
            ab(&[(1, 4, 0), (-14, 2, 1), (9, 0, 2)])
        );
        assert_eq!(relation_hankel(1, &t).unwrap(), ABPoly::one());
        assert_eq!(relation_hankel(3, &t).unwrap(), ABPoly::alpha());
        for n in (3..=17).step_by(2) {
            assert_eq!(
                relation_hankel(n, &t).unwrap(),
                relation_recurrence(n).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn hankel_route_reports_short_tables() {
        let t = EulerTable::new(4);
        assert!(matches!(
            relation_hankel(9, &t),
            Err(Error::InsufficientMoments { .. })
        ));
    }

    #[test]
    fn relation_sets() {
        let set = relation_set(5).unwrap();
        assert_eq!(set.generators.len(), 1 + 5 + 10);
        assert_eq!(set.generators[0].poly, ab(&[(1, 2, 0), (-1, 0, 1)]));
        assert!(set.generators[1..6]
            .iter()
            .all(|g| g.poly == ABPoly::alpha() && g.j.count_ones() == 1));
        assert!(set.generators[6..]
            .iter()
            .all(|g| g.poly == ABPoly::one() && g.j.count_ones() == 2));

        let set = relation_set(3).unwrap();
        assert_eq!(set.generators.len(), 4);
        for n in (1..=11).step_by(2) {
            assert_eq!(relation_set(n).unwrap().generators.len(), 1 << (n - 1));
        }
    }

    #[test]
    fn subsets_are_ordered_and_distinct() {
        let s = subsets_up_to(5, 2);
        assert_eq!(s.len(), 16);
        assert_eq!(&s[..3], &[0, 1, 2]);
        let mut d = s.clone();
        d.dedup();
        assert_eq!(d.len(), s.len());
    }

    #[test]
    fn pairings() {
        let t = table();
        assert_eq!(pairing_ab(0, 5, 2, 0, &t).unwrap(), rat(1));
        assert_eq!(pairing_ab(0, 5, 0, 1, &t).unwrap(), rat(1));
        assert_eq!(pairing_ab(1, 3, 3, 0, &t).unwrap(), rat(3));
        assert_eq!(
            pairing_ab(0, 5, 1, 0, &t).unwrap_err(),
            Error::DegreeMismatch {
                got: 1,
                expected: 2
            }
        );
        assert!(matches!(
            pairing_ab(2, 1, 0, 2, &t),
            Err(Error::OutOfDomain(_))
        ));
    }

    #[test]
    fn volumes() {
        let t = table();
        assert_eq!(symplectic_volume(0, 3, &t).unwrap(), rat(1));
        assert_eq!(symplectic_volume(0, 5, &t).unwrap(), ratio(1, 2));
        assert_eq!(symplectic_volume(1, 1, &t).unwrap(), ratio(1, 2));
        assert!(symplectic_volume(0, 1, &t).is_err());
    }

    #[test]
    fn orthogonality() {
        let t = table();
        let v = hankel_orthogonality_check(5, &relation_recurrence(5).unwrap(), &t).unwrap();
        assert_eq!(v.complementary, vec![(0, 0)]);
        let v = hankel_orthogonality_check(7, &relation_recurrence(7).unwrap(), &t).unwrap();
        assert_eq!(v.complementary, vec![(1, 0)]);
        let v = hankel_orthogonality_check(9, &relation_recurrence(9).unwrap(), &t).unwrap();
        assert_eq!(v.complementary.len(), 2);
        let v = hankel_orthogonality_check(13, &relation_recurrence(13).unwrap(), &t).unwrap();
        assert_eq!(v.complementary.len(), 3);

        let wrong = ab(&[(1, 3, 0), (-4, 1, 1)]);
        assert!(matches!(
            hankel_orthogonality_check(7, &wrong, &t),
            Err(Error::CheckFailed(_))
        ));
    }
}
