//! Deformation-parameter context with q <-> 1/q branch handling.

use crate::error::{Error, Result};

/// Evaluation context for a fixed deformation parameter `q`.
///
/// Everything downstream works on the base branch `hat_q` in (0, 1); inputs
/// with `q > 1` are folded onto it through the reflection identity and carry
/// `heaviside = 1` for the branch-dependent correction terms. `q = 1` is the
/// classical limit and is rejected: approach it through a sequence of
/// contexts instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QContext {
    /// The deformation parameter as given (q > 0, q != 1).
    pub q: f64,
    /// `q` itself when q < 1, otherwise 1/q; always in (0, 1).
    pub hat_q: f64,
    /// Heaviside step H(q - 1): 0.0 for q < 1, 1.0 for q > 1.
    pub heaviside: f64,
    /// Cached natural log of `q`; negative iff q < 1.
    pub log_q: f64,
}

impl QContext {
    pub fn new(q: f64) -> Result<Self> {
        if !q.is_finite() || q <= 0.0 {
            return Err(Error::Domain(format!(
                "q must be positive and finite, got {q}"
            )));
        }
        if q == 1.0 {
            return Err(Error::Domain(
                "q = 1 is the classical limit and is not representable".into(),
            ));
        }
        let (hat_q, heaviside) = if q < 1.0 { (q, 0.0) } else { (1.0 / q, 1.0) };
        Ok(QContext {
            q,
            hat_q,
            heaviside,
            log_q: q.ln(),
        })
    }

    /// True when q itself lies in (0, 1) and no branch folding is needed.
    pub fn is_base_branch(&self) -> bool {
        self.heaviside == 0.0
    }

    /// Context for `hat_q`; the identity when q < 1.
    pub fn hat(&self) -> QContext {
        if self.is_base_branch() {
            *self
        } else {
            QContext {
                q: self.hat_q,
                hat_q: self.hat_q,
                heaviside: 0.0,
                log_q: -self.log_q,
            }
        }
    }

    /// log(hat_q), always negative.
    pub fn log_hat_q(&self) -> f64 {
        if self.is_base_branch() {
            self.log_q
        } else {
            -self.log_q
        }
    }

    /// q^y evaluated through the cached logarithm.
    pub fn qpow(&self, y: f64) -> f64 {
        (y * self.log_q).exp()
    }

    /// log(1 - q^y) for the base branch, stable both for q^y near 1
    /// (via -expm1) and q^y near 0 (via log1p).
    ///
    /// Callers must have q < 1 so that the argument is positive.
    pub fn ln_one_minus_qpow(&self, y: f64) -> f64 {
        debug_assert!(self.is_base_branch());
        let t = y * self.log_q; // < 0
        if t > -std::f64::consts::LN_2 {
            (-f64::exp_m1(t)).ln()
        } else {
            f64::ln_1p(-t.exp())
        }
    }

    /// log((1 - q^x)/(1 - q)), the logarithm of the q-bracket [x]_q,
    /// valid on both branches (for q > 1 both factors flip sign).
    ///
    /// Exact zero at x = 1 by construction.
    pub fn ln_qbracket(&self, x: f64) -> f64 {
        if self.is_base_branch() {
            self.ln_one_minus_qpow(x) - self.ln_one_minus_qpow(1.0)
        } else {
            self.ln_qpow_minus_one(x) - self.ln_qpow_minus_one(1.0)
        }
    }

    /// log(q^y - 1) for q > 1, overflow-safe for large y.
    fn ln_qpow_minus_one(&self, y: f64) -> f64 {
        debug_assert!(!self.is_base_branch());
        let t = y * self.log_q; // > 0
        if t < std::f64::consts::LN_2 {
            f64::exp_m1(t).ln()
        } else {
            t + f64::ln_1p(-(-t).exp())
        }
    }

    /// q^x / (1 - q^x), valid on both branches (negative for q > 1).
    pub fn qpow_over_one_minus_qpow(&self, x: f64) -> f64 {
        if self.is_base_branch() {
            let t = x * self.log_q;
            t.exp() / -f64::exp_m1(t)
        } else {
            // q^x/(1-q^x) = -1/(1-q^{-x})
            -1.0 / -f64::exp_m1(-x * self.log_q)
        }
    }
}
