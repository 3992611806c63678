//! Convergent-series summation with a geometric tail estimate.
//!
//! Every infinite sum in this crate is eventually dominated by a geometric
//! sequence (terms behave like q^{kx}), so the remainder after the K-th term
//! is majorized by |t_K| * rho/(1 - rho) with rho the last observed term
//! ratio. That bound is cheap, sharp for these series, and what the
//! convergence test below uses.

use crate::error::{Error, Result};

/// Tolerances and limits shared by every series evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Relative tolerance on the summed value.
    pub rel_tol: f64,
    /// Absolute floor below which the tail is considered negligible.
    pub abs_tol: f64,
    /// Hard cap on the number of terms.
    pub max_terms: u32,
}

impl Default for EvalConfig {
    fn default() -> Self {
        // rel_tol sits near the double-precision limit so that downstream
        // inequality slacks at the 1e-10 scale stay trustworthy.
        EvalConfig {
            rel_tol: 1e-14,
            abs_tol: 1e-300,
            max_terms: 1_000_000,
        }
    }
}

/// Outcome of a truncated series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: u32,
    pub converged: bool,
    /// Geometric majorant of the discarded tail.
    pub tail_bound: f64,
}

impl SeriesResult {
    /// The summed value if converged, a `NoConvergence` error otherwise.
    pub fn require_converged(self) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::NoConvergence {
                terms: self.terms_used,
                tail_bound: self.tail_bound,
            })
        }
    }
}

/// Term ratios are clamped below 1 so the geometric bound stays finite; a
/// ratio at the clamp makes the tail so large that summation simply continues.
const MAX_RATIO: f64 = 1.0 - 1e-9;

/// Sum `term(1) + term(2) + ...` until the geometric tail bound drops below
/// `max(rel_tol * |sum|, abs_tol)` or `max_terms` is exhausted.
///
/// Accumulation is Kahan-compensated. A term equal to zero terminates the
/// sum (these series have one-signed terms, so a zero means the support has
/// ended) and yields an exact result for finite-support term functions.
pub fn sum_series<F>(mut term: F, cfg: &EvalConfig) -> Result<SeriesResult>
where
    F: FnMut(u32) -> f64,
{
    if cfg.rel_tol.is_nan() || cfg.rel_tol <= 0.0 {
        return Err(Error::Argument(format!(
            "rel_tol must be positive, got {}",
            cfg.rel_tol
        )));
    }
    if cfg.max_terms == 0 {
        return Err(Error::Argument("max_terms must be at least 1".into()));
    }

    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut prev_abs = f64::NAN;
    let mut tail = f64::INFINITY;

    for k in 1..=cfg.max_terms {
        let t = term(k);
        if !t.is_finite() {
            return Err(Error::NonFiniteTerm { index: k });
        }

        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;

        let abs_t = t.abs();
        if abs_t == 0.0 {
            return Ok(SeriesResult {
                value: sum,
                terms_used: k,
                converged: true,
                tail_bound: 0.0,
            });
        }

        // No ratio is observable at k = 1; assume the worst so a lone
        // nonzero first term never passes for a converged sum.
        let rho = if k >= 2 {
            (abs_t / prev_abs).clamp(0.0, MAX_RATIO)
        } else {
            MAX_RATIO
        };
        prev_abs = abs_t;
        tail = abs_t * rho / (1.0 - rho);

        if tail <= (cfg.rel_tol * sum.abs()).max(cfg.abs_tol) {
            return Ok(SeriesResult {
                value: sum,
                terms_used: k,
                converged: true,
                tail_bound: tail,
            });
        }
    }

    Ok(SeriesResult {
        value: sum,
        terms_used: cfg.max_terms,
        converged: false,
        tail_bound: tail,
    })
}
