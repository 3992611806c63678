//! Real dilogarithm Li2 on (-inf, 1].
//!
//! The power series sum z^k/k^2 is used on |z| <= 1/2, where it converges
//! geometrically with ratio <= 1/2. Arguments in (1/2, 1] go through the
//! reflection identity Li2(z) + Li2(1-z) = pi^2/6 - log z log(1-z),
//! arguments in [-1, -1/2) through the Landen transform
//! Li2(z) = -Li2(z/(z-1)) - (1/2) log^2(1-z), and arguments below -1 through
//! the inversion identity Li2(z) + Li2(1/z) = -pi^2/6 - (1/2) log^2(-z).
//! Each route lands back on a series argument of magnitude <= 1/2.

use std::f64::consts::PI;

use crate::context::QContext;
use crate::error::{Error, Result};
use crate::series::{sum_series, EvalConfig};

const PI_SQ_OVER_6: f64 = PI * PI / 6.0;

/// Power series sum_{k>=1} z^k / k^2 for |z| <= 1/2.
fn li2_series(z: f64, cfg: &EvalConfig) -> Result<(f64, u32)> {
    debug_assert!(z.abs() <= 0.5 + 1e-12);
    let mut zp = 1.0;
    let series = sum_series(
        move |k| {
            zp *= z;
            zp / (k as f64 * k as f64)
        },
        cfg,
    )?;
    Ok((series.require_converged()?, series.terms_used))
}

/// Li2(z) on (-inf, 1].
pub fn li2(z: f64, cfg: &EvalConfig) -> Result<f64> {
    Ok(li2_with_terms(z, cfg)?.0)
}

/// Same as [`li2`] but also reports the series terms consumed.
pub fn li2_with_terms(z: f64, cfg: &EvalConfig) -> Result<(f64, u32)> {
    if z.is_nan() || z > 1.0 {
        return Err(Error::Domain(format!(
            "dilogarithm argument must satisfy z <= 1, got {z}"
        )));
    }
    if z == 1.0 {
        return Ok((PI_SQ_OVER_6, 0));
    }
    if z > 0.5 {
        let om = 1.0 - z;
        let (s, terms) = li2_series(om, cfg)?;
        return Ok((PI_SQ_OVER_6 - z.ln() * om.ln() - s, terms));
    }
    if z >= -0.5 {
        return li2_series(z, cfg);
    }
    if z >= -1.0 {
        let l = (1.0 - z).ln();
        let (s, terms) = li2_series(z / (z - 1.0), cfg)?;
        return Ok((-0.5 * l * l - s, terms));
    }
    if z.is_infinite() {
        return Err(Error::Domain("dilogarithm argument must be finite".into()));
    }
    let l = (-z).ln();
    let (s, terms) = li2_with_terms(1.0 / z, cfg)?;
    Ok((-PI_SQ_OVER_6 - 0.5 * l * l - s, terms))
}

/// Li2(1 - q^x) for q in (0, 1) and x > 0, computed without ever forming
/// 1 - q^x by naive subtraction.
///
/// For q^x <= 1/2 the reflection identity is used with log(q^x) supplied as
/// x log q exactly, which keeps the result accurate even when q^x underflows
/// below the resolution of 1 - q^x.
pub fn li2_one_minus_qpow(ctx: &QContext, x: f64, cfg: &EvalConfig) -> Result<f64> {
    Ok(li2_one_minus_qpow_with_terms(ctx, x, cfg)?.0)
}

/// Same as [`li2_one_minus_qpow`] but also reports the series terms consumed.
pub fn li2_one_minus_qpow_with_terms(
    ctx: &QContext,
    x: f64,
    cfg: &EvalConfig,
) -> Result<(f64, u32)> {
    if !ctx.is_base_branch() {
        return Err(Error::Domain(format!(
            "argument form 1 - q^x needs q in (0, 1), got q = {}",
            ctx.q
        )));
    }
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    li2_one_minus_qpow_base(ctx, x, cfg)
}

fn li2_one_minus_qpow_base(ctx: &QContext, x: f64, cfg: &EvalConfig) -> Result<(f64, u32)> {
    let t = ctx.qpow(x); // q^x in (0, 1)
    if t >= 0.5 {
        // z = 1 - q^x <= 1/2: direct series on the stably-formed argument.
        li2_series(-f64::exp_m1(x * ctx.log_q), cfg)
    } else {
        // Reflection with log(1 - z) = x log q and log z = log1p(-q^x).
        let (s, terms) = li2_series(t, cfg)?;
        Ok((PI_SQ_OVER_6 - f64::ln_1p(-t) * (x * ctx.log_q) - s, terms))
    }
}

/// Li2(1 - q^x) on either branch of q; for q > 1 the argument is negative
/// and the inversion identity is applied with overflow-safe logarithms.
pub(crate) fn li2_one_minus_qpow_any_branch(
    ctx: &QContext,
    x: f64,
    cfg: &EvalConfig,
) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    if ctx.is_base_branch() {
        return Ok(li2_one_minus_qpow_base(ctx, x, cfg)?.0);
    }
    let u = x * ctx.log_q; // > 0
    if u < std::f64::consts::LN_2 {
        // z = 1 - q^x in (-1, 0): the direct routes apply.
        li2(-f64::exp_m1(u), cfg)
    } else {
        // z <= -1: inversion with log(-z) = log(q^x - 1) formed safely.
        let ln_neg_z = u + f64::ln_1p(-(-u).exp());
        let inv_z = -(-ln_neg_z).exp();
        Ok(-PI_SQ_OVER_6 - 0.5 * ln_neg_z * ln_neg_z - li2(inv_z, cfg)?)
    }
}
