//! Weight families for weighted tail sums, with exactly accumulated
//! partial sums `W(k) = Σ_{n<k} wₙ` and absolute-weight majorants.

use super::NumericError;
use crate::exact::{gen_falling_factorial, rat_int, rat_to_f64, Rat};
use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};

/// The weight sequence `wₙ` applied to the tails `Tₙ(y)`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    /// `wₙ = 1` for `n ≥ start` (start 0 or 1).
    Ones { start: usize },
    /// `wₙ = xⁿ` for `n ≥ 1`, zero at n = 0. Needs `|x| ≤ 1`, `x ≠ 1`.
    Geometric { x: f64 },
    /// `wₙ = C(n, p)`.
    Binomial { p: usize },
    /// `wₙ = (n)ₚ`, the ordinary falling factorial.
    FallingFactorial { p: usize },
    /// `wₙ = (n)_{p,λ}`.
    DegenFalling { p: usize, lambda: Rat },
    /// `wₙ = S₂(n, k)`, classical Stirling numbers of the second kind.
    StirlingClassical { k: usize },
    /// `wₙ = S₂,λ(n, k)`, the degenerate variant. Grows superexponentially
    /// for λ ∉ {0, 1/m}, so the sum is only accepted in those cases.
    StirlingDegenerate { k: usize, lambda: Rat },
}

impl WeightSpec {
    pub(crate) fn validate(&self) -> Result<(), NumericError> {
        if let WeightSpec::Geometric { x } = self {
            if *x == 1.0 {
                return Err(NumericError::Domain(
                    "geometric weight x = 1 is excluded (division by x \u{2212} 1)".into(),
                ));
            }
            if x.abs() > 1.0 {
                return Err(NumericError::NonConvergence(format!(
                    "geometric weights need |x| <= 1, got x = {x}"
                )));
            }
        }
        Ok(())
    }

    /// Factor by which the weights multiply the asymptotic term ratio of
    /// the underlying series. Polynomially growing weight families leave
    /// the geometric rate untouched.
    pub(crate) fn growth_factor(&self) -> f64 {
        match self {
            WeightSpec::StirlingClassical { k } => (*k).max(1) as f64,
            WeightSpec::StirlingDegenerate { k, lambda } if lambda.is_zero() => (*k).max(1) as f64,
            WeightSpec::StirlingDegenerate { k: 0, .. } => 1.0,
            _ => 1.0,
        }
    }

    /// True when the weights grow so fast that only a terminating λ
    /// (reciprocal of a positive integer) yields a convergent sum.
    pub(crate) fn requires_terminating_lambda(&self) -> bool {
        matches!(self, WeightSpec::StirlingDegenerate { k, lambda } if *k >= 1 && !lambda.is_zero())
    }

    /// Minimum number of terms before the ratio-based stopping rule may
    /// fire; keeps the rule clear of the pre-asymptotic regime where
    /// weight prefixes are still zero or erratic.
    pub(crate) fn burn_in(&self) -> usize {
        match self {
            WeightSpec::Ones { .. } | WeightSpec::Geometric { .. } => 8,
            WeightSpec::Binomial { p }
            | WeightSpec::FallingFactorial { p }
            | WeightSpec::DegenFalling { p, .. } => p + 8,
            WeightSpec::StirlingClassical { k } | WeightSpec::StirlingDegenerate { k, .. } => {
                2 * k + 10
            }
        }
    }

    pub(crate) fn prefix_state(&self) -> PrefixState {
        PrefixState::new(self.clone())
    }

    /// Single weight `wₙ`, for outer-sum convergence traces.
    pub fn weight_at(&self, n: usize) -> f64 {
        match self {
            WeightSpec::Ones { start } => {
                if n >= *start {
                    1.0
                } else {
                    0.0
                }
            }
            WeightSpec::Geometric { x } => {
                if n >= 1 {
                    x.powi(n as i32)
                } else {
                    0.0
                }
            }
            WeightSpec::Binomial { p } => crate::exact::binomial_int(n, *p)
                .to_f64()
                .unwrap_or(f64::INFINITY),
            WeightSpec::FallingFactorial { p } => {
                rat_to_f64(&crate::exact::falling_factorial(&rat_int(n as i64), *p))
            }
            WeightSpec::DegenFalling { p, lambda } => {
                rat_to_f64(&gen_falling_factorial(&rat_int(n as i64), *p, lambda))
            }
            WeightSpec::StirlingClassical { k } => {
                rat_to_f64(&crate::exact::stirling2_classical(n, *k))
            }
            WeightSpec::StirlingDegenerate { k, lambda } => {
                rat_to_f64(&crate::exact::stirling2_degenerate_explicit(n, *k, lambda))
            }
        }
    }
}

/// Running prefix sums of a weight sequence: after `j` calls to
/// [`PrefixState::advance`] the state holds `W(j) = Σ_{n<j} wₙ` and the
/// absolute variant `W̄(j) = Σ_{n<j} |wₙ|` used for remainder majorants.
pub(crate) struct PrefixState {
    spec: WeightSpec,
    /// Index of the next weight to be absorbed.
    j: usize,
    w_int: BigInt,
    w_rat: Rat,
    w_abs_rat: Rat,
    w_f: f64,
    w_abs_f: f64,
    xpow: f64,
    stirling_row: Vec<Rat>,
}

impl PrefixState {
    fn new(spec: WeightSpec) -> Self {
        let row_len = match &spec {
            WeightSpec::StirlingClassical { k } => Some(*k + 1),
            WeightSpec::StirlingDegenerate { k, .. } => Some(*k + 1),
            _ => None,
        };
        let stirling_row = row_len
            .map(|len| {
                let mut row = vec![Rat::zero(); len];
                row[0] = Rat::one(); // S₂,λ(0,0) = 1
                row
            })
            .unwrap_or_default();
        PrefixState {
            spec,
            j: 0,
            w_int: BigInt::zero(),
            w_rat: Rat::zero(),
            w_abs_rat: Rat::zero(),
            w_f: 0.0,
            w_abs_f: 0.0,
            xpow: 1.0,
            stirling_row,
        }
    }

    /// Absorb weight `w_j` and return `(W(j+1), W̄(j+1))` as floats.
    pub(crate) fn advance(&mut self) -> (f64, f64) {
        let n = self.j;
        match &self.spec {
            WeightSpec::Ones { start } => {
                if n >= *start {
                    self.w_int += BigInt::one();
                }
                let w = self.w_int.to_f64().unwrap_or(f64::INFINITY);
                self.j += 1;
                (w, w)
            }
            WeightSpec::Geometric { x } => {
                if n >= 1 {
                    self.w_f += self.xpow;
                    self.w_abs_f += self.xpow.abs();
                }
                self.xpow *= x;
                self.j += 1;
                (self.w_f, self.w_abs_f)
            }
            WeightSpec::Binomial { p } => {
                self.w_int += crate::exact::binomial_int(n, *p);
                let w = self.w_int.to_f64().unwrap_or(f64::INFINITY);
                self.j += 1;
                (w, w)
            }
            WeightSpec::FallingFactorial { p } => {
                let mut prod = BigInt::one();
                for i in 0..*p {
                    if i > n {
                        prod = BigInt::zero();
                        break;
                    }
                    prod *= BigInt::from(n - i);
                }
                self.w_int += prod;
                let w = self.w_int.to_f64().unwrap_or(f64::INFINITY);
                self.j += 1;
                (w, w)
            }
            WeightSpec::DegenFalling { p, lambda } => {
                let w_n = gen_falling_factorial(&rat_int(n as i64), *p, lambda);
                self.w_abs_rat += w_n.abs();
                self.w_rat += w_n;
                self.j += 1;
                (rat_to_f64(&self.w_rat), rat_to_f64(&self.w_abs_rat))
            }
            WeightSpec::StirlingClassical { k } => {
                let lambda = Rat::zero();
                let k = *k;
                self.absorb_stirling_row(k, &lambda)
            }
            WeightSpec::StirlingDegenerate { k, lambda } => {
                let k = *k;
                let lambda = lambda.clone();
                self.absorb_stirling_row(k, &lambda)
            }
        }
    }

    /// Shared path for Stirling-weight prefixes: take `S₂,λ(j, k)` from the
    /// maintained triangle row, then advance the row by one.
    fn absorb_stirling_row(&mut self, k: usize, lambda: &Rat) -> (f64, f64) {
        let n = self.j;
        let w_n = self.stirling_row[k].clone();
        self.w_abs_rat += w_n.abs();
        self.w_rat += w_n;
        // Row n → n+1: S₂,λ(n+1,i) = S₂,λ(n,i−1) + (i − nλ)·S₂,λ(n,i).
        let mut next = vec![Rat::zero(); self.stirling_row.len()];
        for (i, item) in next.iter_mut().enumerate() {
            let carry = if i >= 1 {
                self.stirling_row[i - 1].clone()
            } else {
                Rat::zero()
            };
            *item =
                carry + (rat_int(i as i64) - rat_int(n as i64) * lambda) * &self.stirling_row[i];
        }
        self.stirling_row = next;
        self.j += 1;
        (rat_to_f64(&self.w_rat), rat_to_f64(&self.w_abs_rat))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, stirling2_classical, stirling2_degenerate_explicit};

    fn prefixes(spec: &WeightSpec, count: usize) -> Vec<f64> {
        let mut st = spec.prefix_state();
        (0..count).map(|_| st.advance().0).collect()
    }

    #[test]
    fn ones_prefixes() {
        assert_eq!(
            prefixes(&WeightSpec::Ones { start: 0 }, 4),
            vec![1.0, 2.0, 3.0, 4.0]
        );
        assert_eq!(
            prefixes(&WeightSpec::Ones { start: 1 }, 4),
            vec![0.0, 1.0, 2.0, 3.0]
        );
    }

    #[test]
    fn geometric_prefixes_skip_n_zero() {
        // wₙ = (−1)ⁿ from n = 1: W = 0, −1, 0, −1, ...
        assert_eq!(
            prefixes(&WeightSpec::Geometric { x: -1.0 }, 4),
            vec![0.0, -1.0, 0.0, -1.0]
        );
    }

    #[test]
    fn binomial_prefixes_follow_hockey_stick() {
        // W(j) = Σ_{n<j} C(n,2) = C(j,3)
        let got = prefixes(&WeightSpec::Binomial { p: 2 }, 7);
        let want: Vec<f64> = (1..=7u32)
            .map(|j| crate::exact::binomial_int(j as usize, 3).to_f64().unwrap())
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn stirling_prefixes_match_direct_sums() {
        for k in 0..=3usize {
            let got = prefixes(&WeightSpec::StirlingClassical { k }, 8);
            for (idx, g) in got.iter().enumerate() {
                let j = idx + 1;
                let mut want = rat(0, 1);
                for n in 0..j {
                    want += stirling2_classical(n, k);
                }
                assert_eq!(*g, rat_to_f64(&want), "k={k} j={j}");
            }
        }
    }

    #[test]
    fn degenerate_stirling_prefixes_match_explicit() {
        let lambda = rat(1, 2);
        let spec = WeightSpec::StirlingDegenerate {
            k: 1,
            lambda: lambda.clone(),
        };
        let got = prefixes(&spec, 6);
        for (idx, g) in got.iter().enumerate() {
            let j = idx + 1;
            let mut want = rat(0, 1);
            for n in 0..j {
                want += stirling2_degenerate_explicit(n, 1, &lambda);
            }
            assert_eq!(*g, rat_to_f64(&want), "j={j}");
        }
    }

    #[test]
    fn geometric_validation() {
        assert!(WeightSpec::Geometric { x: 1.0 }.validate().is_err());
        assert!(WeightSpec::Geometric { x: 1.5 }.validate().is_err());
        assert!(WeightSpec::Geometric { x: -1.0 }.validate().is_ok());
    }
}
