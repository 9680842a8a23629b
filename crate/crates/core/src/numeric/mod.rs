//! Real-valued (f64) evaluation of the degenerate exponential family:
//! closed forms, partial sums, series tails and weighted tail sums, all
//! with explicit convergence guards and remainder bounds.
//!
//! Every comparison against a tolerance is made with a tolerance carried
//! by the caller; there is no hidden global epsilon. Functions reject
//! inputs outside their convergence domain instead of returning a silently
//! wrong value.

mod weights;

pub use weights::WeightSpec;

use serde::Serialize;
use thiserror::Error;

/// Safety margin for the ratio-test guard: a non-terminating series is
/// accepted only when its asymptotic term ratio is ≤ 1 − GUARD_DELTA.
pub const GUARD_DELTA: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("non-convergence: {0}")]
    NonConvergence(String),
    #[error(
        "term budget of {max_terms} exhausted before the remainder bound reached the tolerance"
    )]
    Budget { max_terms: usize },
}

/// Outcome of an adaptively truncated summation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumResult {
    pub value: f64,
    pub terms_used: usize,
    /// Bound on the magnitude of the discarded remainder.
    pub tail_bound: f64,
    pub converged: bool,
}

/// `m` such that λ = 1/m for a positive integer m, if any. For such λ the
/// coefficients `(1)_{k,λ}` vanish for every `k > m`, so all series in
/// this module terminate after finitely many terms.
pub fn terminating_order(lambda: f64) -> Option<usize> {
    if lambda <= 0.0 {
        return None;
    }
    let inv = 1.0 / lambda;
    let m = inv.round();
    if m >= 1.0 && (inv - m).abs() <= 1e-9 * m {
        Some(m as usize)
    } else {
        None
    }
}

/// Generalized falling factorial `(x)_{n,λ}` in floating point.
pub fn gen_falling_factorial_f64(x: f64, n: usize, lambda: f64) -> f64 {
    let mut acc = 1.0;
    for i in 0..n {
        acc *= x - i as f64 * lambda;
    }
    acc
}

/// Closed form of the degenerate exponential `e_λ^x(t)`:
/// `(1+λt)^{x/λ}` for λ ≠ 0 and `e^{xt}` for λ = 0.
///
/// For `1 + λt ≤ 0` the real closed form only exists when `x/λ` is a
/// non-negative integer (the series is then a polynomial); anything else
/// is a domain error.
pub fn degen_exp(x: f64, lambda: f64, t: f64) -> Result<f64, NumericError> {
    if lambda == 0.0 {
        return Ok((x * t).exp());
    }
    let base = 1.0 + lambda * t;
    let exponent = x / lambda;
    if base > 0.0 {
        return Ok(base.powf(exponent));
    }
    let m = exponent.round();
    if m >= 0.0 && (exponent - m).abs() <= 1e-9 * m.max(1.0) && m <= i32::MAX as f64 {
        Ok(base.powi(m as i32))
    } else {
        Err(NumericError::Domain(format!(
            "e_lambda^x(t) undefined: 1 + lambda*t = {base} <= 0 and x/lambda = {exponent} is not a non-negative integer"
        )))
    }
}

/// Partial sum `Σ_{k=0}^{n} (x)_{k,λ} tᵏ/k!`.
pub fn degen_exp_partial(x: f64, lambda: f64, t: f64, n: usize) -> f64 {
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..n {
        term *= (x - k as f64 * lambda) * t / (k + 1) as f64;
        sum += term;
    }
    sum
}

/// Degenerate hyperbolic cosine `(e_λ(−x) + e_λ(x))/2`.
pub fn cosh_deg(lambda: f64, x: f64) -> Result<f64, NumericError> {
    Ok((degen_exp(1.0, lambda, -x)? + degen_exp(1.0, lambda, x)?) / 2.0)
}

/// Upper bound on every term ratio `|t_{j+1}/t_j|` of the series
/// `Σ (1)_{k,λ} yᵏ/k!` from index `j ≥ k` on. The ratio is
/// `|1−jλ||y|/(j+1)`, which is monotone in `j` toward `|λy|`.
fn tail_ratio_sup(lambda: f64, y: f64, k: usize) -> f64 {
    let la = lambda.abs();
    y.abs() * (la + (1.0 - la).max(0.0) / (k as f64 + 2.0))
}

/// Tail `Tₙ(y) = Σ_{k=n+1}^{∞} (1)_{k,λ} yᵏ/k!`, summed forward term by
/// term (never as closed-form minus partial sum, which would cancel
/// catastrophically for deep tails).
///
/// Stops once the current term is small relative to the partial sum AND
/// the geometric remainder bound from the ratio test drops below `tol`.
pub fn tail(
    lambda: f64,
    y: f64,
    n: usize,
    tol: f64,
    max_terms: usize,
) -> Result<SumResult, NumericError> {
    let terminating = terminating_order(lambda);
    if terminating.is_none() && (lambda * y).abs() > 1.0 - GUARD_DELTA {
        return Err(NumericError::NonConvergence(format!(
            "|lambda*y| = {} >= {} and lambda is not the reciprocal of a positive integer",
            (lambda * y).abs(),
            1.0 - GUARD_DELTA
        )));
    }
    if let Some(m) = terminating {
        // Every coefficient past degree m is exactly zero.
        if n >= m {
            return Ok(SumResult {
                value: 0.0,
                terms_used: 0,
                tail_bound: 0.0,
                converged: true,
            });
        }
    }

    // term at k = n: (1)_{n,λ} yⁿ/n!
    let mut term = 1.0;
    for k in 0..n {
        term *= (1.0 - k as f64 * lambda) * y / (k + 1) as f64;
    }

    // The ratio-test bound is only meaningful inside the guard; a
    // terminating series with |λy| > 1 − δ exits through the exact stop.
    let ratio_stop = (lambda * y).abs() <= 1.0 - GUARD_DELTA;

    let mut sum = 0.0;
    let mut used = 0;
    let mut k = n;
    loop {
        if used >= max_terms {
            return Err(NumericError::Budget { max_terms });
        }
        term *= (1.0 - k as f64 * lambda) * y / (k + 1) as f64;
        k += 1;
        sum += term;
        used += 1;

        if let Some(m) = terminating {
            if k >= m {
                return Ok(SumResult {
                    value: sum,
                    terms_used: used,
                    tail_bound: 0.0,
                    converged: true,
                });
            }
        }
        if ratio_stop {
            let r = tail_ratio_sup(lambda, y, k);
            if r < 1.0 {
                let bound = term.abs() * r / (1.0 - r);
                if term.abs() <= tol * sum.abs().max(1.0) && bound <= tol {
                    return Ok(SumResult {
                        value: sum,
                        terms_used: used,
                        tail_bound: bound,
                        converged: true,
                    });
                }
            }
        }
    }
}

/// Degenerate Bell polynomial value by its Dobinski-style series
/// `e^{−x} Σ_k (k)_{n,λ} xᵏ/k!`, adaptively truncated.
///
/// Requires `x ≥ 0`. The remainder is controlled through the positive
/// majorant `(k + n|λ|)ⁿ xᵏ/k!` of the term magnitudes.
pub fn bell_degenerate_dobinski(
    n: usize,
    lambda: f64,
    x: f64,
    tol: f64,
    max_terms: usize,
) -> Result<SumResult, NumericError> {
    if x < 0.0 {
        return Err(NumericError::Domain(format!(
            "Dobinski-style summation requires x >= 0, got {x}"
        )));
    }
    let scale = (-x).exp();
    let c = n as f64 * lambda.abs();
    let mut sum = 0.0;
    let mut xpow_over_fact = 1.0; // xᵏ/k!
    for k in 0..max_terms {
        let kf = k as f64;
        sum += gen_falling_factorial_f64(kf, n, lambda) * xpow_over_fact;
        // Remainder bound from the first *omitted* majorant term
        // (kf+1+c)ⁿ·x^{k+1}/(k+1)!; the current term's majorant can be
        // zero while later terms are not.
        let next_majorant = (kf + 1.0 + c).powi(n as i32) * xpow_over_fact * x / (kf + 1.0);
        // Sup over j ≥ k+1 of the majorant ratio; both factors decrease in j.
        let rho = ((kf + 2.0 + c) / (kf + 1.0 + c)).powi(n as i32) * x / (kf + 2.0);
        if rho < 1.0 {
            let bound = scale * next_majorant / (1.0 - rho);
            if bound <= tol {
                return Ok(SumResult {
                    value: scale * sum,
                    terms_used: k + 1,
                    tail_bound: bound,
                    converged: true,
                });
            }
        }
        xpow_over_fact *= x / (kf + 1.0);
    }
    Err(NumericError::Budget { max_terms })
}

/// Weighted tail sum `Σₙ wₙ·Tₙ(y)`, evaluated through the interchanged
/// inner form `Σ_{k≥1} ((1)_{k,λ} yᵏ/k!)·W(k)` with `W(k) = Σ_{n<k} wₙ`,
/// so every series term is touched exactly once and the weight partial
/// sums come from closed forms or exact integer accumulation.
pub fn weighted_tail_sum(
    spec: &WeightSpec,
    lambda: f64,
    y: f64,
    tol: f64,
    max_terms: usize,
) -> Result<SumResult, NumericError> {
    spec.validate()?;
    if y == 0.0 {
        // Every tail Tₙ(0) is zero.
        return Ok(SumResult {
            value: 0.0,
            terms_used: 0,
            tail_bound: 0.0,
            converged: true,
        });
    }
    let terminating = terminating_order(lambda);
    let r_inf = (lambda * y).abs() * spec.growth_factor();
    if terminating.is_none() {
        if spec.requires_terminating_lambda() {
            return Err(NumericError::NonConvergence(format!(
                "weights {spec:?} grow too fast: the sum only converges when lambda is the reciprocal of a positive integer"
            )));
        }
        if r_inf > 1.0 - GUARD_DELTA {
            return Err(NumericError::NonConvergence(format!(
                "asymptotic term ratio {} >= {} for weights {spec:?}",
                r_inf,
                1.0 - GUARD_DELTA
            )));
        }
    }

    let mut weights = spec.prefix_state();
    let mut a = 1.0; // (1)_{k,λ} yᵏ/k!, starting at k = 0
    let mut sum = 0.0;
    let mut prev_majorant = f64::NAN;
    let mut ok_streak = 0usize;
    let r_cap = (1.0 + r_inf) / 2.0;
    let burn_in = spec.burn_in().max(8);
    // The ratio-based stop also applies to terminating λ inside the
    // guard, so a reciprocal of a huge integer does not grind to the
    // exact cutoff; outside the guard the exact cutoff is the only stop.
    let ratio_stop = r_inf <= 1.0 - GUARD_DELTA;

    for used in 1..=max_terms {
        let k = used; // inner index
        a *= (1.0 - (k - 1) as f64 * lambda) * y / k as f64;
        let (w, w_abs) = weights.advance();
        sum += a * w;

        if let Some(m) = terminating {
            if k >= m {
                return Ok(SumResult {
                    value: sum,
                    terms_used: used,
                    tail_bound: 0.0,
                    converged: true,
                });
            }
        }
        if !ratio_stop {
            continue;
        }

        let majorant = a.abs() * w_abs;
        if prev_majorant > 0.0 && majorant.is_finite() {
            let ratio = majorant / prev_majorant;
            if ratio <= r_cap {
                ok_streak += 1;
            } else {
                ok_streak = 0;
            }
        }
        prev_majorant = majorant;

        if k >= burn_in && ok_streak >= 3 {
            let bound = majorant * r_cap / (1.0 - r_cap);
            if bound <= tol && a.abs() * w_abs <= tol * sum.abs().max(1.0) {
                return Ok(SumResult {
                    value: sum,
                    terms_used: used,
                    tail_bound: bound,
                    converged: true,
                });
            }
        }
    }
    Err(NumericError::Budget { max_terms })
}
