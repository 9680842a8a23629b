//! Truncated formal power series over exact rationals, in one variable
//! (`y`) and in two variables (`x`, `y`).
//!
//! Series are plain coefficient vectors with an explicit truncation order;
//! arithmetic never reads or writes beyond the order, and binary
//! operations on operands of different orders truncate to the minimum
//! order rather than padding.

mod bi;
mod uni;

pub use bi::BiSeries;
pub use uni::UniSeries;

use crate::exact::{factorial, rat_int, Rat};
use num::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division by a non-unit series (constant term is zero)")]
    NonUnitDivisor,
    #[error("need at least {needed} weights, got {got}")]
    InsufficientWeights { needed: usize, got: usize },
}

/// Series of the degenerate exponential `e_λ^x(y)`: the coefficient of
/// `yⁿ` is `(x)_{n,λ}/n!`.
pub fn degen_exp_series(x: &Rat, lambda: &Rat, order: usize) -> UniSeries {
    degen_exp_series_arg_scaled(x, lambda, &Rat::one(), order)
}

/// Series of `e_λ^x(c·y)`: the coefficient of `yⁿ` is `(x)_{n,λ}cⁿ/n!`.
pub fn degen_exp_series_arg_scaled(x: &Rat, lambda: &Rat, c: &Rat, order: usize) -> UniSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut coeff = Rat::one();
    let mut factor = x.clone();
    coeffs.push(coeff.clone());
    for n in 0..order {
        coeff = coeff * &factor * c / rat_int(n as i64 + 1);
        coeffs.push(coeff.clone());
        factor -= lambda;
    }
    UniSeries::from_coeffs(coeffs)
}

/// The unit series `1 + λy` at the given truncation order.
pub fn one_plus_lambda_y(lambda: &Rat, order: usize) -> UniSeries {
    let mut coeffs = vec![Rat::zero(); order + 1];
    coeffs[0] = Rat::one();
    if order >= 1 {
        coeffs[1] = lambda.clone();
    }
    UniSeries::from_coeffs(coeffs)
}

/// y-series of `Σₙ wₙ·Tₙ(y)` truncated to `order`, where `Tₙ(y)` is the
/// degree-n tail of `e_λ(y)`.
///
/// Interchanging the two summations gives the exactly computable form
/// `[yᵏ] Σₙ wₙTₙ(y) = ((1)_{k,λ}/k!)·Σ_{n=0}^{k−1} wₙ` with constant term
/// zero, so only the first `order` weights are ever read.
pub fn tail_weighted_sum_series(
    weights: &[Rat],
    lambda: &Rat,
    order: usize,
) -> Result<UniSeries, SeriesError> {
    if weights.len() < order {
        return Err(SeriesError::InsufficientWeights {
            needed: order,
            got: weights.len(),
        });
    }
    let exp = degen_exp_series(&Rat::one(), lambda, order);
    let mut coeffs = vec![Rat::zero(); order + 1];
    let mut prefix = Rat::zero();
    for (k, item) in coeffs.iter_mut().enumerate().skip(1) {
        prefix += &weights[k - 1];
        *item = exp.coeff(k).clone() * &prefix;
    }
    Ok(UniSeries::from_coeffs(coeffs))
}

/// Bivariate series `Σₙ xⁿ Tₙ(y)`, assembled directly from the tail
/// coefficients: the `xⁿyᵏ` entry is `(1)_{k,λ}/k!` when `k > n`, else 0.
pub fn biseries_tail_lhs(lambda: &Rat, order_x: usize, order_y: usize) -> BiSeries {
    let exp = degen_exp_series(&Rat::one(), lambda, order_y);
    BiSeries::from_fn(order_x, order_y, |n, k| {
        if k > n {
            exp.coeff(k).clone()
        } else {
            Rat::zero()
        }
    })
}

/// Bivariate series of `(e_λ(xy) − e_λ(y))/(x−1)`, computed as
/// `(e_λ(y) − e_λ(xy))·Σ_{m=0}^{order_x} xᵐ`: the factor `1/(x−1)` is
/// expanded about x = 0, keeping everything polynomial and exact.
pub fn biseries_tail_rhs(lambda: &Rat, order_x: usize, order_y: usize) -> BiSeries {
    let exp = degen_exp_series(&Rat::one(), lambda, order_y);
    // e_λ(xy): (1)_{k,λ}/k! at x^k y^k.
    let e_xy = BiSeries::from_fn(order_x, order_y, |n, k| {
        if n == k {
            exp.coeff(k).clone()
        } else {
            Rat::zero()
        }
    });
    // e_λ(y): coefficients along x^0.
    let e_y = BiSeries::from_fn(order_x, order_y, |n, k| {
        if n == 0 {
            exp.coeff(k).clone()
        } else {
            Rat::zero()
        }
    });
    let geom_x = BiSeries::from_fn(order_x, order_y, |_, k| {
        if k == 0 {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    e_y.sub(&e_xy).mul(&geom_x)
}

/// Exact tail `Tₙ(y)` for terminating λ = 1/m: the finitely many nonzero
/// series terms above degree n. `None` for non-terminating λ.
pub fn tail_value_terminating(lambda: &Rat, y: &Rat, n: usize) -> Option<Rat> {
    use num::{Signed, ToPrimitive};
    if !(lambda.numer().is_one() && lambda.is_positive()) {
        return None;
    }
    let m = lambda.denom().to_usize()?;
    if n >= m {
        return Some(Rat::zero());
    }
    let series = degen_exp_series(&Rat::one(), lambda, m);
    let mut acc = Rat::zero();
    let mut ypow = num::pow::pow(y.clone(), n + 1);
    for k in n + 1..=m {
        acc += series.coeff(k).clone() * &ypow;
        ypow *= y;
    }
    Some(acc)
}

/// Degenerate Stirling numbers extracted from the generating function:
/// expands `(e_λ(t) − 1)ᵏ/k!` to order `n_max` and returns `n!·[tⁿ]` for
/// n = 0..=n_max.
pub fn extract_stirling_from_gf(n_max: usize, k: usize, lambda: &Rat) -> Vec<Rat> {
    let mut base = degen_exp_series(&Rat::one(), lambda, n_max);
    base = base.sub(&UniSeries::constant(Rat::one(), n_max));
    let powed = base.pow(k);
    let kfact = Rat::from_integer(factorial(k));
    (0..=n_max)
        .map(|n| powed.coeff(n).clone() * Rat::from_integer(factorial(n)) / &kfact)
        .collect()
}
