//! Exact and numeric computation around degenerate exponentials.
//!
//! The library computes, over exact big rationals and over `f64`:
//!
//! - generalized falling factorials `(x)_{n,λ}` and the degenerate
//!   exponentials `e_λ^x(t) = Σ (x)_{n,λ} tⁿ/n!`,
//! - classical and degenerate Stirling numbers of the second kind
//!   (three independent algorithms: explicit sum, triangle recurrence,
//!   generating-function extraction),
//! - degenerate Bell polynomials (basis sum and Dobinski-style series),
//! - tails `Tₙ(y)` of the degenerate exponential series and weighted
//!   infinite sums `Σₙ wₙ Tₙ(y)` for several weight families,
//! - a verification harness that checks each catalogued identity both as
//!   a truncated formal-power-series identity over the rationals and as
//!   a numerically summed series against its closed form.
//!
//! The `degenexp` binary exposes evaluation, table generation, identity
//! verification, convergence traces and a batch suite runner.

pub mod exact;
pub mod identities;
pub mod numeric;
pub mod series;

pub use exact::Rat;
