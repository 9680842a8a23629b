//! Univariate truncated power series.

use super::SeriesError;
use crate::exact::{format_rat, Rat};
use num::{One, Zero};

/// Truncated formal power series in one variable with exact rational
/// coefficients. `coeffs[k]` is the coefficient of `yᵏ`; the truncation
/// order is `coeffs.len() − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniSeries {
    coeffs: Vec<Rat>,
}

impl UniSeries {
    /// Wrap a coefficient vector; the order is `coeffs.len() − 1`.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least a constant term"
        );
        UniSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        UniSeries {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rat::one(), order)
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = c;
        UniSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rat {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Common truncation order for a binary operation.
    fn joint_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.joint_order(other);
        UniSeries {
            coeffs: (0..=n)
                .map(|k| self.coeffs[k].clone() + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.joint_order(other);
        UniSeries {
            coeffs: (0..=n)
                .map(|k| self.coeffs[k].clone() - &other.coeffs[k])
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        UniSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        UniSeries {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s).collect(),
        }
    }

    /// Product, truncated to the smaller operand order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.joint_order(other);
        let mut coeffs = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a.clone() * b;
            }
        }
        UniSeries { coeffs }
    }

    /// `self^e` at this series' own order.
    pub fn pow(&self, e: usize) -> Self {
        let mut acc = UniSeries::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiply by `yᵏ`, keeping the truncation order (top coefficients
    /// fall off the end).
    pub fn mul_ypow(&self, k: usize) -> Self {
        let n = self.order();
        let mut coeffs = vec![Rat::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k > n {
                break;
            }
            coeffs[i + k] = c.clone();
        }
        UniSeries { coeffs }
    }

    /// Quotient `q` with `q·u = self` up to the joint truncation order.
    /// Fails when `u` has zero constant term.
    pub fn div_unit(&self, u: &Self) -> Result<Self, SeriesError> {
        if u.coeffs[0].is_zero() {
            return Err(SeriesError::NonUnitDivisor);
        }
        let n = self.joint_order(u);
        let inv0 = Rat::one() / &u.coeffs[0];
        let mut q = vec![Rat::zero(); n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                acc -= u.coeffs[i].clone() * &q[k - i];
            }
            q[k] = acc * &inv0;
        }
        Ok(UniSeries { coeffs: q })
    }

    /// Largest absolute coefficient difference up to the joint order, for
    /// residual reports.
    pub fn max_abs_diff(&self, other: &Self) -> Rat {
        let n = self.joint_order(other);
        let mut worst = Rat::zero();
        for k in 0..=n {
            let mut d = self.coeffs[k].clone() - &other.coeffs[k];
            if d < Rat::zero() {
                d = -d;
            }
            if d > worst {
                worst = d;
            }
        }
        worst
    }

    /// Evaluate the truncated polynomial at a rational point.
    pub fn eval(&self, at: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// Coefficients as canonical `"p/q"` strings, lowest degree first;
    /// the JSON wire form used by the CLI.
    pub fn to_pq_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rat).collect()
    }
}

impl serde::Serialize for UniSeries {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.to_pq_strings())
    }
}
