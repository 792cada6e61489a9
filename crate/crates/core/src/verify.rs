//! Cross-validation suite run by `moduli verify`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::betti::{betti_numbers, poincare, poincare_closed, Method, ModuliParams};
use crate::error::{Error, Result};
use crate::euler::{cf_convergent, dirichlet_beta_coeff, euler_numbers_by_division, EulerTable};
use crate::exact::{binomial, factorial, rat, ratio, Rational, UniPoly};
use crate::orthopoly::{gram_schmidt_ortho, three_term_coeffs, MomentSequence};
use crate::relations::{
    basis_degree_counts, hankel_orthogonality_check, hilbert_series_quotient, pairing_ab,
    relation_hankel, relation_recurrence, symplectic_volume, ABPoly, QuotientOptions,
};

/// Largest Euler index the suite reads.
pub const EULER_MAX: usize = 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Scope {
    #[default]
    Quick,
    Full,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub scope: Scope,
    /// Replace `E_index` by `value` before running anything.
    pub corrupt_euler: Option<(usize, BigInt)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// Sorted by name.
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl VerificationReport {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

struct Limits {
    g: u32,
    n: u32,
    hilbert_n: u32,
    basis_n: u32,
}

type Runner<'a> = Box<dyn Fn() -> Result<String> + 'a>;

fn odd_up_to(lo: u32, hi: u32) -> impl Iterator<Item = u32> {
    (lo..=hi).filter(|n| n % 2 == 1)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::CheckFailed(msg()))
    }
}

fn ab(terms: &[(i64, u32, u32)]) -> ABPoly {
    let mut p = ABPoly::zero();
    for &(c, a, b) in terms {
        p.add_term(rat(c), a, b);
    }
    p
}

fn worked_examples() -> Result<String> {
    let cases = [
        ((0, 3), UniPoly::one()),
        ((0, 5), UniPoly::from_ints(&[1, 0, 6, 0, 1])),
    ];
    for ((g, n), want) in cases {
        let p = ModuliParams::new(g, n)?;
        for m in Method::ALL {
            let got = poincare(&p, m)?;
            ensure(got == want, || {
                format!("{p} by {}: {got}, expected {want}", m.name())
            })?;
        }
    }
    Ok("P(R_{0,3}) = 1, P(R_{0,5}) = 1 + 6t^2 + t^4 by every method".into())
}

fn methods_agree(lim: &Limits) -> Result<String> {
    let mut count = 0;
    for g in 0..=lim.g {
        for n in odd_up_to(1, lim.n) {
            if g == 0 && n == 1 {
                continue;
            }
            let p = ModuliParams::new(g, n)?;
            let closed = poincare_closed(&p)?;
            for m in [Method::Strata, Method::RecursionN, Method::RecursionG] {
                let got = poincare(&p, m)?;
                ensure(got == closed, || {
                    format!("{p}: {} gives {got}, closed form {closed}", m.name())
                })?;
            }
            ensure(closed.reversed() == closed, || {
                format!("{p}: {closed} is not palindromic")
            })?;
            betti_numbers(&closed)?;
            count += 1;
        }
    }
    Ok(format!("{count} spaces, 4 methods each, all palindromic"))
}

fn b2_rule(lim: &Limits) -> Result<String> {
    let mut cases: Vec<(u32, u32)> = odd_up_to(5, lim.n).map(|n| (0, n)).collect();
    for g in 1..=3 {
        cases.extend(odd_up_to(1, 9).map(|n| (g, n)));
    }
    let mut count = 0;
    for (g, n) in cases {
        let p = ModuliParams::new(g, n)?;
        if p.dim() < 4 || (g > 0 && p.dim() < 6) {
            continue;
        }
        let b = betti_numbers(&poincare_closed(&p)?)?;
        ensure(b[2] == n as u64 + 1, || {
            format!("{p}: b_2 = {}, n + 1 = {}", b[2], n + 1)
        })?;
        count += 1;
    }
    Ok(format!("b_2 = n + 1 on {count} spaces"))
}

fn euler_listing(t: &EulerTable) -> Result<String> {
    let want = [1, 0, -1, 0, 5, 0, -61, 0, 1385];
    for (j, w) in want.iter().enumerate() {
        ensure(*t.get(j) == BigInt::from(*w), || {
            format!("E_{j} = {}, expected {w}", t.get(j))
        })?;
    }
    Ok("E_0..E_8 = 1, 0, -1, 0, 5, 0, -61, 0, 1385".into())
}

fn euler_closure(t: &EulerTable) -> Result<String> {
    ensure(t.get(0).is_one(), || format!("E_0 = {}", t.get(0)))?;
    for j in (1..=EULER_MAX).step_by(2) {
        ensure(t.get(j).is_zero(), || {
            format!("E_{j} = {} is not zero", t.get(j))
        })?;
    }
    for n in 1..=EULER_MAX / 2 {
        let sum: BigInt = (0..=n)
            .map(|k| binomial(2 * n as u64, 2 * k as u64) * t.get(2 * k))
            .sum();
        ensure(sum.is_zero(), || format!("Σ C({}, 2k) E_2k = {sum}", 2 * n))?;
    }
    Ok(format!("recurrence closes through E_{EULER_MAX}"))
}

fn euler_division(t: &EulerTable) -> Result<String> {
    let oracle = euler_numbers_by_division(EULER_MAX)?;
    for (j, e) in oracle.iter().enumerate() {
        ensure(t.get(j) == e, || {
            format!("E_{j} = {}, 1/cosh gives {e}", t.get(j))
        })?;
    }
    Ok(format!("1/cosh agrees through E_{EULER_MAX}"))
}

fn continued_fraction(t: &EulerTable) -> Result<String> {
    for d in 1..=8 {
        let order = 2 * d + 2;
        let s = cf_convergent(d, order);
        for k in 0..=2 * d {
            let want = Rational::from_integer(t.abs(k));
            ensure(s.coeff(k) == want, || {
                format!(
                    "depth {d}: coefficient of z^{k} is {}, |E_{k}| = {want}",
                    s.coeff(k)
                )
            })?;
        }
        let next = Rational::from_integer(t.abs(2 * d + 2));
        ensure(s.coeff(2 * d + 2) != next, || {
            format!("depth {d} matches past z^{}", 2 * d)
        })?;
    }
    Ok("depth d matches through z^2d exactly, d = 1..8".into())
}

fn dirichlet(t: &EulerTable) -> Result<String> {
    let want = [ratio(1, 4), ratio(1, 32), ratio(5, 1536)];
    for (l, w) in want.iter().enumerate() {
        let got = dirichlet_beta_coeff(l, t).coeff;
        ensure(got == *w, || {
            format!("β({}) / π^{} = {got}, expected {w}", 2 * l + 1, 2 * l + 1)
        })?;
    }
    Ok("β(1) = π/4, β(3) = π^3/32, β(5) = 5π^5/1536".into())
}

fn relation_values() -> Result<String> {
    let want = [
        (1, ABPoly::one()),
        (3, ABPoly::alpha()),
        (5, ab(&[(1, 2, 0), (-1, 0, 1)])),
        (7, ab(&[(1, 3, 0), (-5, 1, 1)])),
        (9, ab(&[(1, 4, 0), (-14, 2, 1), (9, 0, 2)])),
    ];
    for (n, w) in want {
        let got = relation_recurrence(n)?;
        ensure(got == w, || format!("r_{{0,{n}}} = {got}, expected {w}"))?;
    }
    Ok("r_{0,1} .. r_{0,9} by recurrence".into())
}

fn hankel_vs_recurrence(t: &EulerTable, max_n: u32) -> Result<String> {
    for n in odd_up_to(1, max_n) {
        let h = relation_hankel(n, t)?;
        let r = relation_recurrence(n)?;
        ensure(h == r, || {
            format!("n = {n}: Hankel kernel gives {h}, recurrence {r}")
        })?;
    }
    Ok(format!(
        "one-dimensional kernels, equal for odd n <= {max_n}"
    ))
}

fn orthopoly_data(t: &EulerTable) -> Result<String> {
    let ops = gram_schmidt_ortho(&MomentSequence::euler(t), 9)?;
    let (alphas, betas) = three_term_coeffs(&ops)?;
    for (k, a) in alphas.iter().enumerate() {
        ensure(a.is_zero(), || format!("α_{k} = {a}"))?;
    }
    for (i, b) in betas.iter().enumerate() {
        let k = i as i64 + 1;
        ensure(*b == rat(k * k), || {
            format!("β_{k} = {b}, expected {}", k * k)
        })?;
    }
    Ok("α_k = 0, β_k = k^2 for k <= 8".into())
}

fn orthopoly_relations(t: &EulerTable) -> Result<String> {
    let ops = gram_schmidt_ortho(&MomentSequence::euler(t), 8)?;
    for m in 0..=8u32 {
        let r = relation_recurrence(2 * m + 1)?.dehomogenize();
        let p = &ops.polys[m as usize];
        ensure(*p == r, || {
            format!("p_{m} = {p}, r_{{0,{}}}(x, 1) = {r}", 2 * m + 1)
        })?;
    }
    Ok("p_m(x) = r_{0,2m+1}(x, 1) for m <= 8".into())
}

fn orthogonality(t: &EulerTable, max_n: u32) -> Result<String> {
    let mut count = 0;
    for n in odd_up_to(3, max_n) {
        count += hankel_orthogonality_check(n, &relation_recurrence(n)?, t)?
            .complementary
            .len();
    }
    Ok(format!(
        "{count} complementary pairings vanish, odd n <= {max_n}"
    ))
}

fn genus0_betti(n: u32) -> Result<Vec<u64>> {
    betti_numbers(&poincare_closed(&ModuliParams::new(0, n)?)?)
}

fn hilbert(max_n: u32) -> Result<String> {
    let opts = QuotientOptions::default();
    for n in odd_up_to(3, max_n) {
        let want = genus0_betti(n)?;
        let got = hilbert_series_quotient(n, 2 * n - 6, &opts)?;
        ensure(got == want, || {
            format!("n = {n}: quotient {got:?}, closed form {want:?}")
        })?;
    }
    Ok(format!(
        "quotient dimensions equal Betti numbers, odd n <= {max_n}"
    ))
}

fn basis_counts(max_n: u32) -> Result<String> {
    for n in odd_up_to(3, max_n) {
        let got = basis_degree_counts(n)?;
        let want = genus0_betti(n)?;
        ensure(got == want, || {
            format!("n = {n}: basis counts {got:?}, closed form {want:?}")
        })?;
        let mut rev = got.clone();
        rev.reverse();
        ensure(rev == got, || {
            format!("n = {n}: basis counts {got:?} not palindromic")
        })?;
    }
    Ok(format!(
        "basis counts equal Betti numbers and are palindromic, odd n <= {max_n}"
    ))
}

fn volumes(t: &EulerTable) -> Result<String> {
    let spots = [
        ((0, 3), rat(1)),
        ((0, 5), ratio(1, 2)),
        ((1, 1), ratio(1, 2)),
    ];
    for ((g, n), w) in spots {
        let v = symplectic_volume(g, n, t)?;
        ensure(v == w, || format!("vol R_{{{g},{n}}} = {v}, expected {w}"))?;
    }
    let reference = EulerTable::new(EULER_MAX);
    for g in 0..=3u32 {
        for n in odd_up_to(1, 11) {
            if g == 0 && n == 1 {
                continue;
            }
            let top = 3 * g + n - 3;
            let v = symplectic_volume(g, n, t)?;
            let scaled = v * Rational::from_integer((BigInt::one() << top) * factorial(g as u64))
                / Rational::from_integer(factorial(top as u64));
            let idx = (2 * g + n - 3) as usize;
            let want = Rational::from_integer(reference.abs(idx));
            ensure(scaled == want, || {
                format!("R_{{{g},{n}}}: rescaled volume {scaled}, |E_{idx}| = {want}")
            })?;
        }
    }
    Ok("spot values and |E_{2g+n-3}| pattern for g <= 3, n <= 11".into())
}

fn pairings(t: &EulerTable) -> Result<String> {
    let spots = [((0, 5, 2, 0), 1), ((0, 5, 0, 1), 1), ((1, 3, 3, 0), 3)];
    for ((g, n, r, s), w) in spots {
        let v = pairing_ab(g, n, r, s, t)?;
        ensure(v == rat(w), || {
            format!("<α^{r} β^{s}> on R_{{{g},{n}}} = {v}, expected {w}")
        })?;
    }
    ensure(
        matches!(pairing_ab(0, 5, 1, 0, t), Err(Error::DegreeMismatch { .. })),
        || "off-degree pairing accepted".into(),
    )?;
    Ok("<α^2>, <β> on R_{0,5}; <α^3> on R_{1,3}".into())
}

pub fn verify_suite(opts: &VerifyOptions) -> VerificationReport {
    let lim = match opts.scope {
        Scope::Quick => Limits {
            g: 2,
            n: 9,
            hilbert_n: 9,
            basis_n: 9,
        },
        Scope::Full => Limits {
            g: 4,
            n: 17,
            hilbert_n: 9,
            basis_n: 21,
        },
    };
    let mut table = EulerTable::new(EULER_MAX);
    if let Some((j, v)) = &opts.corrupt_euler {
        if *j <= EULER_MAX {
            table = table.with_entry(*j, v.clone());
        }
    }
    let t = &table;
    let n = lim.n;
    let runs: Vec<(String, Runner<'_>)> = vec![
        ("betti worked examples".into(), Box::new(worked_examples)),
        (
            format!("betti methods agree g≤{} n≤{n}", lim.g),
            Box::new(|| methods_agree(&lim)),
        ),
        ("betti b2=n+1".into(), Box::new(|| b2_rule(&lim))),
        ("euler listing E0..E8".into(), Box::new(|| euler_listing(t))),
        (
            format!("euler recurrence closure ≤{EULER_MAX}"),
            Box::new(|| euler_closure(t)),
        ),
        (
            format!("euler series division ≤{EULER_MAX}"),
            Box::new(|| euler_division(t)),
        ),
        (
            "continued fraction depth≤8".into(),
            Box::new(|| continued_fraction(t)),
        ),
        (
            "dirichlet beta coefficients".into(),
            Box::new(|| dirichlet(t)),
        ),
        ("relation polynomials n≤9".into(), Box::new(relation_values)),
        (
            format!("hankel=recurrence n≤{n}"),
            Box::new(move || hankel_vs_recurrence(t, n)),
        ),
        (
            "orthopoly three-term data".into(),
            Box::new(|| orthopoly_data(t)),
        ),
        (
            "orthopoly p_m=r(x,1) m≤8".into(),
            Box::new(|| orthopoly_relations(t)),
        ),
        (
            format!("pairing orthogonality n≤{n}"),
            Box::new(move || orthogonality(t, n)),
        ),
        (
            format!("hilbert quotient n≤{}", lim.hilbert_n),
            Box::new(|| hilbert(lim.hilbert_n)),
        ),
        (
            format!("basis counts n≤{}", lim.basis_n),
            Box::new(|| basis_counts(lim.basis_n)),
        ),
        ("symplectic volumes".into(), Box::new(|| volumes(t))),
        ("ab pairings".into(), Box::new(|| pairings(t))),
    ];
    let mut checks: Vec<Check> = runs
        .into_iter()
        .map(|(name, f)| match f() {
            Ok(detail) => Check {
                name,
                passed: true,
                detail,
            },
            Err(e) => Check {
                name,
                passed: false,
                detail: e.to_string(),
            },
        })
        .collect();
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let overall = checks.iter().all(|c| c.passed);
    VerificationReport { checks, overall }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_scope_passes() {
        let r = verify_suite(&VerifyOptions::default());
        assert!(r.overall, "{:?}", r.first_failure());
        assert!(r.checks.len() >= 12);
        assert!(r.checks.windows(2).all(|w| w[0].name < w[1].name));
    }

    #[test]
    fn corruption_is_caught() {
        for j in [0, 3, 10, 24] {
            let opts = VerifyOptions {
                scope: Scope::Quick,
                corrupt_euler: Some((j, EulerTable::new(EULER_MAX).get(j) + 1)),
            };
            let r = verify_suite(&opts);
            assert!(!r.overall, "E_{j}");
            assert!(r.first_failure().is_some());
        }
    }
}
