use std::fmt;

/// `α^a β^b ∏_{k∈J} δ_k` with `J ⊆ {1..n}` stored as a bitmask (bit `k-1`
/// for `δ_k`). Squares of `δ_k` are rewritten to `β` on construction, so
/// `δ` exponents are always 0 or 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
    pub j: u64,
}

impl Monomial {
    /// Largest supported number of marked points.
    pub const MAX_POINTS: u32 = 64;

    pub fn new(a: u32, b: u32, j: u64) -> Self {
        Self { a, b, j }
    }

    /// `α^a β^b ∏ δ_k^{e_k}` for `(k, e_k)` pairs with 1-based `k`. Each
    /// `δ_k^2` becomes a factor of `β`.
    pub fn from_exponents(a: u32, b: u32, deltas: &[(u32, u32)]) -> Self {
        let mut m = Self::new(a, b, 0);
        for &(k, e) in deltas {
            assert!(
                (1..=Self::MAX_POINTS).contains(&k),
                "δ index {k} out of range"
            );
            for _ in 0..e {
                m = m.mul(&Self::new(0, 0, 1 << (k - 1)));
            }
        }
        m
    }

    pub fn delta_count(&self) -> u32 {
        self.j.count_ones()
    }

    /// Sorted 1-based indices of the `δ` factors.
    pub fn deltas(&self) -> Vec<u32> {
        (0..64)
            .filter(|k| self.j >> k & 1 == 1)
            .map(|k| k + 1)
            .collect()
    }

    /// Degree in units of 2: `a + 2b + |J|`.
    pub fn weight(&self) -> u32 {
        self.a + 2 * self.b + self.delta_count()
    }

    /// Cohomological degree `2a + 4b + 2|J|`.
    pub fn degree(&self) -> u32 {
        2 * self.weight()
    }

    /// `a + b + |J|`, the quantity bounding the standard basis.
    pub fn exponent_sum(&self) -> u32 {
        self.a + self.b + self.delta_count()
    }

    /// Product with `δ_k^2 = β` applied.
    pub fn mul(&self, other: &Self) -> Self {
        let shared = (self.j & other.j).count_ones();
        Self {
            a: self.a + other.a,
            b: self.b + other.b + shared,
            j: self.j ^ other.j,
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.a {
            0 => {}
            1 => parts.push("α".to_string()),
            a => parts.push(format!("α^{a}")),
        }
        match self.b {
            0 => {}
            1 => parts.push("β".to_string()),
            b => parts.push(format!("β^{b}")),
        }
        parts.extend(self.deltas().into_iter().map(|k| format!("δ{k}")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}
