use num_traits::{One, Zero};

use super::Rational;

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Reduced row echelon form: `rows[i]` has a leading one in column `pivots[i]`
/// and zeros in every other pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Subtract multiples of the echelon rows so that `v` vanishes in every pivot column.
    pub fn reduce(&self, v: &mut [Rational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            entries.extend(r);
        }
        Self {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| super::rat(x)).collect())
                .collect(),
            cols,
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Reduced row echelon form with pivots searched in the natural column order.
    pub fn rref(&self) -> Echelon {
        let order: Vec<usize> = (0..self.cols).collect();
        self.rref_with_column_order(&order)
    }

    /// Reduced row echelon form where pivot columns are chosen in the order
    /// given by `order` (a permutation of `0..cols`). Pivot indices refer to
    /// the original columns.
    pub fn rref_with_column_order(&self, order: &[usize]) -> Echelon {
        let mut work: Vec<Vec<Rational>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut next = 0;
        for &c in order {
            if next == work.len() {
                break;
            }
            let Some(p) = (next..work.len()).find(|&r| !work[r][c].is_zero()) else {
                continue;
            };
            work.swap(next, p);
            let inv = work[next][c].recip();
            for x in work[next].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            let pivot_row = work[next].clone();
            for (r, row) in work.iter_mut().enumerate() {
                if r == next || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            next += 1;
        }
        work.truncate(next);
        Echelon { rows: work, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of the right null space. Each vector is scaled so that its last
    /// nonzero entry is 1.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let ech = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    v[p] = -row[f].clone();
                }
                normalize_last_nonzero(v)
            })
            .collect()
    }
}

fn normalize_last_nonzero(mut v: Vec<Rational>) -> Vec<Rational> {
    if let Some(last) = v.iter().rev().find(|x| !x.is_zero()).cloned() {
        for x in v.iter_mut() {
            *x /= &last;
        }
    }
    v
}

/// Free-function form of [`RationalMatrix::kernel`].
pub fn kernel(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    m.kernel()
}
