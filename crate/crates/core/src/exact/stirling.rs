//! Triangular tables of degenerate Stirling numbers of the second kind.

use super::{rat_int, Rat};
use num::{One, Zero};

/// Triangle of `S₂,λ(n,k)` values for a fixed rational λ, filled by the
/// recurrence
///
/// ```text
/// S₂,λ(n+1,k) = S₂,λ(n,k−1) + (k − nλ)·S₂,λ(n,k),    S₂,λ(0,0) = 1,
/// ```
///
/// which follows from `x·(x)ₖ = (x)ₖ₊₁ + k(x)ₖ` applied to the change of
/// basis into ordinary falling factorials. Out-of-triangle entries are 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    lambda: Rat,
    n_max: usize,
    rows: Vec<Vec<Rat>>,
}

impl StirlingTable {
    pub fn new(lambda: Rat, n_max: usize) -> Self {
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![Rat::one()]);
        for n in 0..n_max {
            let prev = &rows[n];
            let mut row = vec![Rat::zero(); n + 2];
            for (k, item) in row.iter_mut().enumerate() {
                let from_left = if k >= 1 && k - 1 <= n {
                    prev[k - 1].clone()
                } else {
                    Rat::zero()
                };
                let from_same = if k <= n {
                    (rat_int(k as i64) - rat_int(n as i64) * &lambda) * &prev[k]
                } else {
                    Rat::zero()
                };
                *item = from_left + from_same;
            }
            rows.push(row);
        }
        StirlingTable {
            lambda,
            n_max,
            rows,
        }
    }

    pub fn lambda(&self) -> &Rat {
        &self.lambda
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `S₂,λ(n,k)`; zero for `k > n`. Panics if `n > n_max`.
    pub fn entry(&self, n: usize, k: usize) -> Rat {
        assert!(n <= self.n_max, "row {n} beyond table size {}", self.n_max);
        if k > n {
            Rat::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    /// Rows in order n = 0..=n_max; row n holds entries k = 0..=n.
    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }
}
