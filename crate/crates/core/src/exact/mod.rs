//! Exact rational scalars and the combinatorial ground functions:
//! factorials, binomials, generalized falling factorials, classical and
//! degenerate Stirling numbers of the second kind, degenerate Bell
//! polynomials.
//!
//! Every function here is a pure function on immutable values; results are
//! always in canonical form (reduced fraction, positive denominator), so
//! equality of values is structural equality.

mod stirling;

pub use stirling::StirlingTable;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// The coefficient field for all exact computation: arbitrary-precision
/// rationals, kept reduced with a positive denominator.
pub type Rat = BigRational;

/// Error for rational literals that fail to parse.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}: expected \"p\" or \"p/q\" with integer p, q")]
    Malformed(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`. Panics on `q = 0`; intended for literals in code
/// and tests, not for user input (see [`parse_rat`]).
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "rat(p, q) requires q != 0");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"p"` or `"p/q"` into a canonical rational.
///
/// Rejects empty input, junk, and zero denominators before any
/// computation happens downstream.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(RatParseError::Empty);
    }
    let (num_str, den_str) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| RatParseError::Malformed(s.to_string()))?;
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| RatParseError::Malformed(s.to_string()))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(RatParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Rat::new(numer, denom))
}

/// Canonical text form: `"p/q"`, or just `"p"` when the denominator is 1.
/// Round-trips through [`parse_rat`] to the identical value.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest `f64`. Falls back to the numerator/denominator quotient for
/// magnitudes outside the conversion range.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY * sign_of(r));
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

fn sign_of(r: &Rat) -> f64 {
    if r.is_negative() {
        -1.0
    } else {
        1.0
    }
}

/// The fixed λ sample set used by property suites and the default grid:
/// zero (classical limit), reciprocals of integers (polynomial e_λ),
/// negatives, and |λ| > 1.
pub fn lambda_samples() -> Vec<Rat> {
    vec![
        rat_int(0),
        rat(1, 3),
        rat(1, 2),
        rat(-1, 2),
        rat_int(2),
        rat(-2, 3),
    ]
}

/// The real closed form exists but the value is not rational (or needs
/// the series outside its domain).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error(
    "e_lambda^x(y) undefined: 1 + lambda*y = {base} <= 0 with negative integer exponent {exponent}"
)]
pub struct ExpDomainError {
    pub base: String,
    pub exponent: i64,
}

/// Exact rational value of the degenerate exponential `e_λ^x(y)`, when
/// one exists: λ = 0 with x·y = 0, or an integer exponent q = x/λ. For
/// negative q the base `1 + λy` must be positive (negative bases would
/// be analytic continuation beyond the series' domain).
pub fn degen_exp_exact(x: &Rat, lambda: &Rat, y: &Rat) -> Result<Option<Rat>, ExpDomainError> {
    if lambda.is_zero() {
        return Ok(if (x * y).is_zero() {
            Some(Rat::one())
        } else {
            None
        });
    }
    let exponent = x / lambda;
    if !exponent.denom().is_one() {
        return Ok(None);
    }
    let base = Rat::one() + lambda * y;
    let Some(e) = exponent.numer().to_i64() else {
        return Ok(None);
    };
    if e >= 0 {
        Ok(Some(num::pow::pow(base, e as usize)))
    } else if base.is_positive() {
        Ok(Some(Rat::one() / num::pow::pow(base, (-e) as usize)))
    } else {
        Err(ExpDomainError {
            base: format_rat(&base),
            exponent: e,
        })
    }
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Integer binomial coefficient `C(n, k)`; 0 for `k > n`.
pub fn binomial_int(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized falling factorial `(x)_{n,λ} = x(x−λ)(x−2λ)⋯(x−(n−1)λ)`,
/// with the empty product `(x)_{0,λ} = 1`.
pub fn gen_falling_factorial(x: &Rat, n: usize, lambda: &Rat) -> Rat {
    let mut acc = Rat::one();
    let mut factor = x.clone();
    for _ in 0..n {
        if factor.is_zero() {
            return Rat::zero();
        }
        acc *= &factor;
        factor -= lambda;
    }
    acc
}

/// Ordinary falling factorial `(x)ₙ = x(x−1)⋯(x−n+1)`, i.e. `(x)_{n,1}`.
/// `(x)₀ = 1`.
pub fn falling_factorial(x: &Rat, n: usize) -> Rat {
    gen_falling_factorial(x, n, &Rat::one())
}

/// Generalized binomial coefficient `C(x, n) = (x)ₙ / n!` for rational `x`.
pub fn binomial(x: &Rat, n: usize) -> Rat {
    falling_factorial(x, n) / Rat::from_integer(factorial(n))
}

/// Classical Stirling number of the second kind
/// `S₂(n,k) = (1/k!) Σ_{j=0}^{k} C(k,j)(−1)^{k−j} jⁿ`, with `0⁰ = 1`.
/// Zero for `k > n`.
pub fn stirling2_classical(n: usize, k: usize) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let mut sum = BigInt::zero();
    for j in 0..=k {
        let term = binomial_int(k, j) * BigInt::from(j).pow(n as u32);
        if (k - j).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Rat::new(sum, factorial(k))
}

/// Degenerate Stirling number of the second kind by the explicit
/// alternating sum `(1/k!) Σ_{j=0}^{k} C(k,j)(−1)^{k−j} (j)_{n,λ}`.
///
/// At λ = 0 this reduces to [`stirling2_classical`].
pub fn stirling2_degenerate_explicit(n: usize, k: usize, lambda: &Rat) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let mut sum = Rat::zero();
    for j in 0..=k {
        let term = Rat::from_integer(binomial_int(k, j))
            * gen_falling_factorial(&rat_int(j as i64), n, lambda);
        if (k - j).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum / Rat::from_integer(factorial(k))
}

/// Full triangle of `S₂,λ(n,k)` for `0 ≤ k ≤ n ≤ n_max`, built by the
/// recurrence `S₂,λ(n+1,k) = S₂,λ(n,k−1) + (k − nλ)·S₂,λ(n,k)`.
pub fn stirling2_degenerate_recurrence(n_max: usize, lambda: &Rat) -> StirlingTable {
    StirlingTable::new(lambda.clone(), n_max)
}

/// Check the change of basis `(x)_{n,λ} = Σ_k S₂,λ(n,k) (x)_k` as a
/// degree-n polynomial identity, by evaluating both sides at the n+1
/// distinct points x = 0, 1, …, n.
pub fn verify_basis_expansion(n: usize, lambda: &Rat) -> bool {
    let row: Vec<Rat> = (0..=n)
        .map(|k| stirling2_degenerate_explicit(n, k, lambda))
        .collect();
    for xi in 0..=n {
        let x = rat_int(xi as i64);
        let lhs = gen_falling_factorial(&x, n, lambda);
        let mut rhs = Rat::zero();
        let mut ff = Rat::one();
        for (k, coeff) in row.iter().enumerate() {
            // (x)ₖ built incrementally: (x)ₖ₊₁ = (x)ₖ·(x−k).
            rhs += coeff * &ff;
            ff *= &x - rat_int(k as i64);
        }
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Degenerate Bell polynomial `φ_{n,λ}(x) = Σ_{k=0}^{n} S₂,λ(n,k) xᵏ`.
pub fn bell_degenerate(n: usize, lambda: &Rat, x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    let mut xpow = Rat::one();
    for k in 0..=n {
        acc += stirling2_degenerate_explicit(n, k, lambda) * &xpow;
        xpow *= x;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Brute-force oracle: count partitions of an n-element set into k
    /// non-empty blocks by enumerating restricted growth strings.
    fn stirling2_bruteforce(n: usize, k: usize) -> u64 {
        if n == 0 {
            return u64::from(k == 0);
        }
        fn go(rgs: &mut Vec<usize>, n: usize, k: usize) -> u64 {
            if rgs.len() == n {
                let blocks = rgs.iter().max().map_or(0, |m| m + 1);
                return u64::from(blocks == k);
            }
            let next_free = rgs.iter().max().map_or(0, |m| m + 1);
            let mut count = 0;
            for v in 0..=next_free.min(k - 1) {
                rgs.push(v);
                count += go(rgs, n, k);
                rgs.pop();
            }
            count
        }
        if k == 0 || k > n {
            return 0;
        }
        go(&mut Vec::new(), n, k)
    }

    #[test]
    fn rational_literals_are_canonical() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(1, -2), rat(-1, 2));
        assert!(rat(1, -2).denom() > &BigInt::zero());
        assert_eq!(rat(0, 7), rat_int(0));
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in [
            "0",
            "5",
            "-5",
            "1/2",
            "-2/3",
            "9/4",
            "100000000000000000001/3",
        ] {
            let r = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        }
        assert_eq!(parse_rat("2/4").unwrap(), rat(1, 2));
        assert_eq!(format_rat(&rat(3, 1)), "3");
        assert_eq!(format_rat(&rat(-3, 6)), "-1/2");
    }

    #[test]
    fn parse_rejects_malformed_input() {
        for s in ["", "  ", "abc", "1/", "/2", "1/2/3", "1.5", "1 2", "--3"] {
            assert!(parse_rat(s).is_err(), "should reject {s:?}");
        }
        assert_eq!(
            parse_rat("1/0"),
            Err(RatParseError::ZeroDenominator("1/0".into()))
        );
    }

    #[test]
    fn gen_falling_factorial_examples() {
        // Empty product.
        assert_eq!(
            gen_falling_factorial(&rat_int(1), 0, &rat(7, 3)),
            rat_int(1)
        );
        // (1 − 2·(1/2)) = 0 kills the product.
        assert_eq!(
            gen_falling_factorial(&rat_int(1), 3, &rat(1, 2)),
            rat_int(0)
        );
        // 1·(1 − 1/2) = 1/2.
        assert_eq!(gen_falling_factorial(&rat_int(1), 2, &rat(1, 2)), rat(1, 2));
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(&rat_int(5), 0), rat_int(1));
        assert_eq!(falling_factorial(&rat_int(5), 3), rat_int(60));
        assert_eq!(falling_factorial(&rat(1, 2), 2), rat(-1, 4));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(&rat_int(7), 2), rat_int(21));
        assert_eq!(binomial(&rat(-13, 7), 0), rat_int(1));
        // Factor (4−4) = 0 inside the falling factorial.
        assert_eq!(binomial(&rat_int(4), 6), rat_int(0));
    }

    #[test]
    fn stirling2_classical_examples() {
        assert_eq!(stirling2_classical(0, 0), rat_int(1));
        assert_eq!(stirling2_classical(3, 2), rat_int(3));
        assert_eq!(stirling2_classical(4, 7), rat_int(0));
    }

    #[test]
    fn stirling2_classical_matches_bruteforce() {
        for n in 0..=9 {
            for k in 0..=n {
                assert_eq!(
                    stirling2_classical(n, k),
                    rat_int(stirling2_bruteforce(n, k) as i64),
                    "S2({n},{k})"
                );
            }
        }
    }

    #[test]
    fn stirling2_degenerate_explicit_examples() {
        for lambda in lambda_samples() {
            let one_minus = rat_int(1) - &lambda;
            assert_eq!(stirling2_degenerate_explicit(2, 1, &lambda), one_minus);
            assert_eq!(
                stirling2_degenerate_explicit(3, 2, &lambda),
                rat_int(3) * (rat_int(1) - &lambda)
            );
        }
    }

    #[test]
    fn degenerate_reduces_to_classical_at_lambda_zero() {
        let zero = rat_int(0);
        for n in 0..=12 {
            for k in 0..=n {
                assert_eq!(
                    stirling2_degenerate_explicit(n, k, &zero),
                    stirling2_classical(n, k)
                );
            }
        }
    }

    #[test]
    fn basis_expansion_holds_on_sample_set() {
        assert!(verify_basis_expansion(0, &rat(5, 7)));
        assert!(verify_basis_expansion(3, &rat(1, 2)));
        assert!(verify_basis_expansion(6, &rat(-2, 3)));
        for lambda in lambda_samples() {
            for n in 0..=12 {
                assert!(verify_basis_expansion(n, &lambda), "n={n} λ={lambda}");
            }
        }
    }

    #[test]
    fn bell_degenerate_examples() {
        assert_eq!(bell_degenerate(0, &rat(1, 2), &rat_int(3)), rat_int(1));
        assert_eq!(bell_degenerate(2, &rat(1, 2), &rat_int(1)), rat(3, 2));
        for lambda in lambda_samples() {
            let x = rat(5, 3);
            assert_eq!(bell_degenerate(1, &lambda, &x), x);
        }
    }

    #[test]
    fn degen_exp_exact_values() {
        // (1 + 1/2)^2 = 9/4
        assert_eq!(
            degen_exp_exact(&rat_int(1), &rat(1, 2), &rat_int(1)).unwrap(),
            Some(rat(9, 4))
        );
        // Non-integer exponent: no rational value.
        assert_eq!(
            degen_exp_exact(&rat_int(1), &rat(2, 3), &rat_int(1)).unwrap(),
            None
        );
        // λ = 0: rational only at x·y = 0.
        assert_eq!(
            degen_exp_exact(&rat_int(3), &rat_int(0), &rat_int(0)).unwrap(),
            Some(rat_int(1))
        );
        assert_eq!(
            degen_exp_exact(&rat_int(1), &rat_int(0), &rat_int(1)).unwrap(),
            None
        );
        // Negative integer exponent with positive base: (1/2)^{-2} = 4.
        assert_eq!(
            degen_exp_exact(&rat_int(1), &rat(-1, 2), &rat_int(1)).unwrap(),
            Some(rat_int(4))
        );
        // Negative base with negative exponent is out of domain.
        assert!(degen_exp_exact(&rat_int(1), &rat(-1, 2), &rat_int(3)).is_err());
    }

    #[test]
    fn pascal_identity() {
        // C(x,n) = C(x+1,n) − C(x,n−1)
        let xs = [rat_int(0), rat_int(3), rat(1, 2), rat(-3, 4), rat(7, 5)];
        for x in &xs {
            for n in 1..=12 {
                let lhs = binomial(x, n);
                let rhs = binomial(&(x + rat_int(1)), n) - binomial(x, n - 1);
                assert_eq!(lhs, rhs, "x={x} n={n}");
            }
        }
    }

    #[test]
    fn backward_difference_identity() {
        // C(x−1,n−1) = C(x,n) − C(x−1,n)
        let xs = [rat_int(0), rat_int(3), rat(1, 2), rat(-3, 4), rat(7, 5)];
        for x in &xs {
            let xm1 = x - rat_int(1);
            for n in 1..=12 {
                let lhs = binomial(&xm1, n - 1);
                let rhs = binomial(x, n) - binomial(&xm1, n);
                assert_eq!(lhs, rhs, "x={x} n={n}");
            }
        }
    }

    #[test]
    fn hockey_stick_identity() {
        // Σ_{n=p}^{k−1} C(n,p) = C(k,p+1)
        for k in 1..=15usize {
            for p in 0..k {
                let mut sum = BigInt::zero();
                for n in p..k {
                    sum += binomial_int(n, p);
                }
                assert_eq!(sum, binomial_int(k, p + 1), "p={p} k={k}");
            }
        }
    }

    proptest! {
        #[test]
        fn gen_falling_factorial_at_lambda_one_is_falling_factorial(
            p in -40i64..40, q in 1i64..12, n in 0usize..10
        ) {
            let x = rat(p, q);
            prop_assert_eq!(
                gen_falling_factorial(&x, n, &rat_int(1)),
                falling_factorial(&x, n)
            );
        }

        #[test]
        fn parse_format_round_trip_random(p in -10_000i64..10_000, q in 1i64..10_000) {
            let r = rat(p, q);
            prop_assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        }
    }
}
