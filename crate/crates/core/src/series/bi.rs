//! Bivariate truncated power series.

use crate::exact::Rat;
use num::Zero;

/// Truncated formal power series in two variables with exact rational
/// coefficients: `coeffs[n][k]` is the coefficient of `xⁿyᵏ`. The array
/// is rectangular with shape `(order_x + 1) × (order_y + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    order_x: usize,
    order_y: usize,
    coeffs: Vec<Vec<Rat>>,
}

impl BiSeries {
    pub fn zero(order_x: usize, order_y: usize) -> Self {
        BiSeries {
            order_x,
            order_y,
            coeffs: vec![vec![Rat::zero(); order_y + 1]; order_x + 1],
        }
    }

    pub fn from_fn(order_x: usize, order_y: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let coeffs = (0..=order_x)
            .map(|n| (0..=order_y).map(|k| f(n, k)).collect())
            .collect();
        BiSeries {
            order_x,
            order_y,
            coeffs,
        }
    }

    pub fn order_x(&self) -> usize {
        self.order_x
    }

    pub fn order_y(&self) -> usize {
        self.order_y
    }

    pub fn entry(&self, n: usize, k: usize) -> &Rat {
        &self.coeffs[n][k]
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.clone() - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rat, &Rat) -> Rat) -> Self {
        let nx = self.order_x.min(other.order_x);
        let ny = self.order_y.min(other.order_y);
        BiSeries::from_fn(nx, ny, |n, k| f(&self.coeffs[n][k], &other.coeffs[n][k]))
    }

    /// Product truncated to the minimum order in each variable.
    pub fn mul(&self, other: &Self) -> Self {
        let nx = self.order_x.min(other.order_x);
        let ny = self.order_y.min(other.order_y);
        let mut out = BiSeries::zero(nx, ny);
        for (i1, row1) in self.coeffs.iter().take(nx + 1).enumerate() {
            for (j1, a) in row1.iter().take(ny + 1).enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (i2, row2) in other.coeffs.iter().take(nx + 1 - i1).enumerate() {
                    for (j2, b) in row2.iter().take(ny + 1 - j1).enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        out.coeffs[i1 + i2][j1 + j2] += a.clone() * b;
                    }
                }
            }
        }
        out
    }

    /// Largest absolute difference across entries, for residual reports.
    pub fn max_abs_diff(&self, other: &Self) -> Rat {
        let nx = self.order_x.min(other.order_x);
        let ny = self.order_y.min(other.order_y);
        let mut worst = Rat::zero();
        for n in 0..=nx {
            for k in 0..=ny {
                let mut d = self.coeffs[n][k].clone() - &other.coeffs[n][k];
                if d < Rat::zero() {
                    d = -d;
                }
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use num::One;

    #[test]
    fn mul_is_truncated_convolution() {
        // (1 + x)(1 + y) = 1 + x + y + xy at orders (1, 1).
        let a = BiSeries::from_fn(1, 1, |n, k| {
            if k == 0 && n <= 1 {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        let b = BiSeries::from_fn(1, 1, |n, k| {
            if n == 0 && k <= 1 {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        let p = a.mul(&b);
        for n in 0..=1 {
            for k in 0..=1 {
                assert_eq!(p.entry(n, k), &rat_int(1));
            }
        }
    }

    #[test]
    fn mixed_orders_truncate() {
        let a = BiSeries::zero(5, 3);
        let b = BiSeries::zero(2, 7);
        let s = a.add(&b);
        assert_eq!((s.order_x(), s.order_y()), (2, 3));
        let p = a.mul(&b);
        assert_eq!((p.order_x(), p.order_y()), (2, 3));
    }

    #[test]
    fn max_abs_diff_picks_worst_entry() {
        let a = BiSeries::zero(1, 1);
        let b = BiSeries::from_fn(1, 1, |n, k| {
            if (n, k) == (1, 1) {
                rat(-2, 3)
            } else {
                Rat::zero()
            }
        });
        assert_eq!(a.max_abs_diff(&b), rat(2, 3));
    }
}
