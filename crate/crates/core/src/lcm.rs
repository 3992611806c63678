//! The two-parameter family
//!
//!   f_{alpha,beta}(x; q) = Gamma_q(x+beta) exp(-Li2(1-q^x)/log q)
//!                          / ((1-q^x)/(1-q))^{x+beta-alpha}
//!
//! together with closed forms for the derivatives of log f and a grid
//! certifier for the alternating-sign pattern that defines logarithmic
//! complete monotonicity.
//!
//! Order 1 uses the closed-form first derivative and orders n >= 2 use the
//! termwise-differentiated series
//!
//!   (log f)^(n)(x) = sum_k (k log q)^{n-2} (log q q^{kx}/(1-q^k))
//!                    Phi_{alpha,beta}(q^k),
//!
//! never repeated numeric differencing: an n-th difference loses about n
//! digits, while the series keeps full precision at every order.

use crate::context::QContext;
use crate::dilog;
use crate::error::{Error, Result};
use crate::gamma;
use crate::series::{sum_series, EvalConfig};

/// The (alpha, beta) pair of the family; beta must be nonnegative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LcmParams {
    pub alpha: f64,
    pub beta: f64,
}

impl LcmParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::Argument("alpha and beta must be finite".into()));
        }
        if beta < 0.0 {
            return Err(Error::Argument(format!(
                "beta must be nonnegative, got {beta}"
            )));
        }
        Ok(LcmParams { alpha, beta })
    }
}

/// Which sign pattern a certificate checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// (-1)^n (log f)^(n) >= 0 for n = 1..N.
    FIsLcm,
    /// (-1)^n (log 1/f)^(n) >= 0, i.e. the opposite signs.
    InverseIsLcm,
}

fn check_base(ctx: &QContext) -> Result<()> {
    if !ctx.is_base_branch() {
        return Err(Error::Domain(format!(
            "the f_(alpha,beta) family is defined for q in (0, 1), got q = {}",
            ctx.q
        )));
    }
    Ok(())
}

/// log f_{alpha,beta}(x; q) =
/// log Gamma_q(x+beta) - (x+beta-alpha) log((1-q^x)/(1-q)) - Li2(1-q^x)/log q.
pub fn log_f(params: &LcmParams, ctx: &QContext, x: f64, cfg: &EvalConfig) -> Result<f64> {
    check_base(ctx)?;
    Ok(gamma::log_qgamma(ctx, x + params.beta, cfg)?
        - (x + params.beta - params.alpha) * ctx.ln_qbracket(x)
        - dilog::li2_one_minus_qpow(ctx, x, cfg)? / ctx.log_q)
}

/// The sign kernel of the second-derivative series:
/// Phi_{alpha,beta}(y) = y^beta log y + (beta-alpha)(1-y) log y + (1-y),
/// for y in (0, 1).
pub fn phi(y: f64, params: &LcmParams) -> Result<f64> {
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::Domain(format!(
            "phi is defined on (0, 1), got y = {y}"
        )));
    }
    let ly = y.ln();
    Ok(y.powf(params.beta) * ly + (params.beta - params.alpha) * (1.0 - y) * ly + (1.0 - y))
}

/// Closed-form first derivative of log f:
/// psi_q(x+beta) - log((1-q^x)/(1-q)) + (beta-alpha) log q q^x/(1-q^x).
pub fn dlogf(params: &LcmParams, ctx: &QContext, x: f64, cfg: &EvalConfig) -> Result<f64> {
    check_base(ctx)?;
    Ok(
        gamma::qdigamma(ctx, x + params.beta, cfg)? - ctx.ln_qbracket(x)
            + (params.beta - params.alpha) * ctx.log_q * ctx.qpow_over_one_minus_qpow(x),
    )
}

/// n-th derivative of log f for n >= 2 via the convergent series.
pub fn dnlogf_series(
    params: &LcmParams,
    ctx: &QContext,
    x: f64,
    n: u32,
    cfg: &EvalConfig,
) -> Result<f64> {
    if n < 2 {
        return Err(Error::Argument(format!(
            "dnlogf_series needs n >= 2, got {n}; use dlogf for n = 1"
        )));
    }
    check_base(ctx)?;
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }

    let lq = ctx.log_q;
    let t = ctx.qpow(x);
    let qb = ctx.qpow(params.beta); // q^beta
    let q = ctx.q;
    let diff = params.beta - params.alpha;
    let pow = n as i32 - 2;

    // All per-term quantities update multiplicatively; Phi(q^k) expands to
    // q^{k beta} (k log q) + diff (1-q^k)(k log q) + (1-q^k).
    let mut tk = 1.0;
    let mut qk = 1.0;
    let mut qbk = 1.0;
    sum_series(
        move |k| {
            tk *= t;
            qk *= q;
            qbk *= qb;
            let ly = k as f64 * lq;
            let om = 1.0 - qk;
            let phi_k = qbk * ly + diff * om * ly + om;
            ly.powi(pow) * (lq * tk / om) * phi_k
        },
        cfg,
    )?
    .require_converged()
}

/// One sign check at a grid point: the raw derivative value and whether the
/// required sign held within tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignCheck {
    pub q: f64,
    pub x: f64,
    pub order: u32,
    pub value: f64,
    pub ok: bool,
}

/// Result of certifying a sign pattern over a (q, x) grid up to order N.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityCertificate {
    pub params: LcmParams,
    pub direction: Direction,
    pub q_grid: Vec<f64>,
    pub x_grid: Vec<f64>,
    pub max_order: u32,
    pub sign_tolerance: f64,
    /// Every evaluated point in (q, x, n) lexicographic order.
    pub checks: Vec<SignCheck>,
    /// The failing subset of `checks`, same order.
    pub violations: Vec<SignCheck>,
    pub passed: bool,
}

/// Check the alternating-derivative sign pattern of log f (or log 1/f) at
/// every (q, x, n) grid point.
///
/// A value v at order n passes when s * v >= -sign_tolerance * (1 + |v|),
/// where s is the required sign; the scaling keeps boundary cases that sit
/// exactly at zero from failing on rounding. A failed certificate is a
/// result, not an error.
pub fn certify(
    params: &LcmParams,
    direction: Direction,
    q_grid: &[f64],
    x_grid: &[f64],
    max_order: u32,
    sign_tolerance: f64,
    cfg: &EvalConfig,
) -> Result<MonotonicityCertificate> {
    if q_grid.is_empty() || x_grid.is_empty() {
        return Err(Error::Argument(
            "certification grids must be nonempty".into(),
        ));
    }
    if max_order < 1 {
        return Err(Error::Argument("max_order must be >= 1".into()));
    }
    if sign_tolerance.is_nan() || sign_tolerance < 0.0 {
        return Err(Error::Argument("sign_tolerance must be >= 0".into()));
    }
    if q_grid.iter().any(|&q| !(q > 0.0 && q < 1.0)) {
        return Err(Error::Precondition(
            "certification requires every q in (0, 1)".into(),
        ));
    }
    if x_grid.iter().any(|&x| !x.is_finite() || x <= 0.0) {
        return Err(Error::Precondition("x grid must be positive".into()));
    }

    let mut checks = Vec::with_capacity(q_grid.len() * x_grid.len() * max_order as usize);
    let mut violations = Vec::new();
    for &q in q_grid {
        let ctx = QContext::new(q)?;
        for &x in x_grid {
            for n in 1..=max_order {
                let value = if n == 1 {
                    dlogf(params, &ctx, x, cfg)?
                } else {
                    dnlogf_series(params, &ctx, x, n, cfg)?
                };
                let required_sign = match direction {
                    Direction::FIsLcm => {
                        if n % 2 == 0 {
                            1.0
                        } else {
                            -1.0
                        }
                    }
                    Direction::InverseIsLcm => {
                        if n % 2 == 0 {
                            -1.0
                        } else {
                            1.0
                        }
                    }
                };
                let ok = required_sign * value >= -sign_tolerance * (1.0 + value.abs());
                let check = SignCheck {
                    q,
                    x,
                    order: n,
                    value,
                    ok,
                };
                checks.push(check);
                if !ok {
                    violations.push(check);
                }
            }
        }
    }
    let passed = violations.is_empty();
    Ok(MonotonicityCertificate {
        params: *params,
        direction,
        q_grid: q_grid.to_vec(),
        x_grid: x_grid.to_vec(),
        max_order,
        sign_tolerance,
        checks,
        violations,
        passed,
    })
}
