//! Two-sided bound evaluation for the corollary inequalities: Jensen-type
//! bounds on weighted Gamma_q products, gamma-ratio bounds, Gamma_q(x+1)
//! bounds, factorial and Stirling-remainder bounds, and the q-Gurland ratio
//! with its classical limit.
//!
//! All comparisons happen in log space; the raw expressions overflow for
//! moderate arguments and the slack signal drowns. Containment is checked
//! against `BOUND_TOL`, an order of magnitude above the worst accumulated
//! series error at the default `rel_tol`.

use std::f64::consts::PI;

use crate::classical;
use crate::context::QContext;
use crate::dilog;
use crate::error::{Error, Result};
use crate::gamma;
use crate::series::EvalConfig;

/// Log-space containment tolerance for bound reports.
pub const BOUND_TOL: f64 = 1e-10;

/// A convex combination: points x_k > 0 with weights p_k >= 0 summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPoints {
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl WeightedPoints {
    pub fn new(points: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if points.is_empty() || points.len() != weights.len() {
            return Err(Error::Argument(
                "points and weights must be nonempty and of equal length".into(),
            ));
        }
        if points.iter().any(|&x| !x.is_finite() || x <= 0.0) {
            return Err(Error::Argument("every point must be positive".into()));
        }
        if weights.iter().any(|&p| !p.is_finite() || p < 0.0) {
            return Err(Error::Argument("every weight must be nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Argument(format!(
                "weights must sum to 1, got {total}"
            )));
        }
        Ok(WeightedPoints { points, weights })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// The convex combination sum_k p_k x_k.
    pub fn mean(&self) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(x, p)| p * x)
            .sum()
    }

    fn weighted_sum<F>(&self, mut f: F) -> Result<f64>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let mut acc = 0.0;
        for (&x, &p) in self.points.iter().zip(&self.weights) {
            acc += p * f(x)?;
        }
        Ok(acc)
    }
}

/// Lower/middle/upper triple in log space with containment verdict.
///
/// One-sided bounds leave the missing side (and its slack) absent.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub lower: Option<f64>,
    pub middle: f64,
    pub upper: Option<f64>,
    pub slack_low: Option<f64>,
    pub slack_high: Option<f64>,
    pub satisfied: bool,
    pub tol: f64,
    pub context: String,
}

impl BoundReport {
    pub fn new(
        lower: Option<f64>,
        middle: f64,
        upper: Option<f64>,
        tol: f64,
        context: String,
    ) -> Self {
        let slack_low = lower.map(|l| middle - l);
        let slack_high = upper.map(|u| u - middle);
        let satisfied = slack_low.is_none_or(|s| s >= -tol) && slack_high.is_none_or(|s| s >= -tol);
        BoundReport {
            lower,
            middle,
            upper,
            slack_low,
            slack_high,
            satisfied,
            tol,
            context,
        }
    }

    /// Smallest available slack; +inf when the report has no bound at all.
    pub fn min_slack(&self) -> f64 {
        self.slack_low
            .unwrap_or(f64::INFINITY)
            .min(self.slack_high.unwrap_or(f64::INFINITY))
    }
}

fn require_base(ctx: &QContext) -> Result<()> {
    if !ctx.is_base_branch() {
        return Err(Error::Precondition(format!(
            "the corollary bounds are stated for q in (0, 1), got q = {}",
            ctx.q
        )));
    }
    Ok(())
}

/// Jensen upper bound on the weighted Gamma_q ratio under the hypothesis
/// 2 alpha <= 1 <= beta:
///
///   log [Gamma_q(sum p_k x_k + beta) / prod Gamma_q(x_k + beta)^{p_k}]
///     <= (xbar+beta-alpha) L(xbar) - sum_k p_k (x_k+beta-alpha) L(x_k)
///        + [Li2(1-q^xbar) - sum_k p_k Li2(1-q^{x_k})]/log q
///
/// with L(x) = log((1-q^x)/(1-q)).
pub fn jensen_upper(
    wp: &WeightedPoints,
    params: &crate::lcm::LcmParams,
    ctx: &QContext,
    cfg: &EvalConfig,
) -> Result<BoundReport> {
    require_base(ctx)?;
    if !(2.0 * params.alpha <= 1.0 && params.beta >= 1.0) {
        return Err(Error::Precondition(format!(
            "the Jensen bound needs 2*alpha <= 1 <= beta, got alpha = {}, beta = {}",
            params.alpha, params.beta
        )));
    }
    let (alpha, beta) = (params.alpha, params.beta);
    let xbar = wp.mean();

    let middle = gamma::log_qgamma(ctx, xbar + beta, cfg)?
        - wp.weighted_sum(|x| gamma::log_qgamma(ctx, x + beta, cfg))?;
    let upper = (xbar + beta - alpha) * ctx.ln_qbracket(xbar)
        - wp.weighted_sum(|x| Ok((x + beta - alpha) * ctx.ln_qbracket(x)))?
        + (dilog::li2_one_minus_qpow(ctx, xbar, cfg)?
            - wp.weighted_sum(|x| dilog::li2_one_minus_qpow(ctx, x, cfg))?)
            / ctx.log_q;

    Ok(BoundReport::new(
        None,
        middle,
        Some(upper),
        BOUND_TOL,
        format!("jensen q={} alpha={alpha} beta={beta} xbar={xbar}", ctx.q),
    ))
}

/// Two-sided sandwich for the beta = 1 ratio: the lower side comes from the
/// log-concavity of f_{1,1}, the upper side from the Jensen bound at
/// alpha = 1/2, beta = 1.
pub fn convex_sandwich(
    wp: &WeightedPoints,
    ctx: &QContext,
    cfg: &EvalConfig,
) -> Result<BoundReport> {
    require_base(ctx)?;
    let xbar = wp.mean();

    let li2_part = (dilog::li2_one_minus_qpow(ctx, xbar, cfg)?
        - wp.weighted_sum(|x| dilog::li2_one_minus_qpow(ctx, x, cfg))?)
        / ctx.log_q;

    let middle = gamma::log_qgamma(ctx, xbar + 1.0, cfg)?
        - wp.weighted_sum(|x| gamma::log_qgamma(ctx, x + 1.0, cfg))?;
    let lower =
        xbar * ctx.ln_qbracket(xbar) - wp.weighted_sum(|x| Ok(x * ctx.ln_qbracket(x)))? + li2_part;
    let upper = (xbar + 0.5) * ctx.ln_qbracket(xbar)
        - wp.weighted_sum(|x| Ok((x + 0.5) * ctx.ln_qbracket(x)))?
        + li2_part;

    Ok(BoundReport::new(
        Some(lower),
        middle,
        Some(upper),
        BOUND_TOL,
        format!("sandwich q={} xbar={xbar}", ctx.q),
    ))
}

/// Two-sided bound on log[Gamma_q(b)/Gamma_q(a)] for 0 < a < b:
/// exponents (b-1, a-1) below and (b-1/2, a-1/2) above, both carrying the
/// dilogarithm exponential.
pub fn ratio_bounds(a: f64, b: f64, ctx: &QContext, cfg: &EvalConfig) -> Result<BoundReport> {
    require_base(ctx)?;
    if !(a > 0.0 && b > a) {
        return Err(Error::Argument(format!(
            "ratio bounds need 0 < a < b, got a = {a}, b = {b}"
        )));
    }
    let la = ctx.ln_qbracket(a);
    let lb = ctx.ln_qbracket(b);
    let li2_diff = (dilog::li2_one_minus_qpow(ctx, b, cfg)?
        - dilog::li2_one_minus_qpow(ctx, a, cfg)?)
        / ctx.log_q;

    let middle = gamma::log_qgamma(ctx, b, cfg)? - gamma::log_qgamma(ctx, a, cfg)?;
    let lower = (b - 1.0) * lb - (a - 1.0) * la + li2_diff;
    let upper = (b - 0.5) * lb - (a - 0.5) * la + li2_diff;

    Ok(BoundReport::new(
        Some(lower),
        middle,
        Some(upper),
        BOUND_TOL,
        format!("ratio q={} a={a} b={b}", ctx.q),
    ))
}

/// Two-sided bound on log Gamma_q(x+1) for x >= 1, with exponents x and
/// x + 1/2; all three sides collapse to 0 at x = 1.
pub fn qgamma_bounds(x: f64, ctx: &QContext, cfg: &EvalConfig) -> Result<BoundReport> {
    require_base(ctx)?;
    if x.is_nan() || x < 1.0 {
        return Err(Error::Precondition(format!(
            "the Gamma_q(x+1) bounds hold on [1, inf), got x = {x}"
        )));
    }
    let lx = ctx.ln_qbracket(x);
    let li2_diff = (dilog::li2_one_minus_qpow(ctx, x, cfg)?
        - dilog::li2_one_minus_qpow(ctx, 1.0, cfg)?)
        / ctx.log_q;

    let middle = gamma::log_qgamma(ctx, x + 1.0, cfg)?;
    let lower = x * lx + li2_diff;
    let upper = (x + 0.5) * lx + li2_diff;

    Ok(BoundReport::new(
        Some(lower),
        middle,
        Some(upper),
        BOUND_TOL,
        format!("qgamma-bounds q={} x={x}", ctx.q),
    ))
}

/// e (n/e)^n <= n! <= e sqrt(n) (n/e)^n in log space, with equality exactly
/// at n = 1.
pub fn factorial_bounds(n: u64) -> Result<BoundReport> {
    if n < 1 {
        return Err(Error::Argument("n must be >= 1".into()));
    }
    let nf = n as f64;
    let middle = classical::ln_factorial(n);
    let lower = 1.0 + nf * nf.ln() - nf;
    let upper = lower + 0.5 * nf.ln();
    Ok(BoundReport::new(
        Some(lower),
        middle,
        Some(upper),
        BOUND_TOL,
        format!("factorial n={n}"),
    ))
}

/// Stirling's formula remainder r_n = log n! - (1/2) log(2 pi n) - n log(n/e).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StirlingRemainder {
    pub n: u64,
    pub r_n: f64,
}

impl StirlingRemainder {
    /// Robbins' band: 1/(12n+1) < r_n < 1/(12n). Strict, so zero tolerance.
    pub fn robbins(&self) -> BoundReport {
        let n = self.n as f64;
        BoundReport::new(
            Some(1.0 / (12.0 * n + 1.0)),
            self.r_n,
            Some(1.0 / (12.0 * n)),
            0.0,
            format!("stirling-robbins n={}", self.n),
        )
    }

    /// The coarser band 1 - (1/2) log(2 pi n) <= r_n <= 1 - (1/2) log(2 pi),
    /// with equality on both sides exactly at n = 1.
    pub fn band(&self) -> BoundReport {
        let n = self.n as f64;
        BoundReport::new(
            Some(1.0 - 0.5 * (2.0 * PI * n).ln()),
            self.r_n,
            Some(1.0 - 0.5 * (2.0 * PI).ln()),
            0.0,
            format!("stirling-band n={}", self.n),
        )
    }
}

/// r_n in log space. Exact factorials feed n <= 20 directly; above that the
/// subtraction of two ~n log n quantities would drown the 1/(12n) signal, so
/// the algebraically equivalent form
/// (n + 1/2) log1p(1/n) - 1 + S(n+1), with S the Stirling tail of
/// log Gamma(n+1), is used instead.
pub fn stirling_remainder(n: u64) -> Result<StirlingRemainder> {
    if n < 1 {
        return Err(Error::Argument("n must be >= 1".into()));
    }
    let nf = n as f64;
    let r_n = if n <= 20 {
        classical::ln_factorial(n) - 0.5 * (2.0 * PI * nf).ln() - nf * (nf.ln() - 1.0)
    } else {
        (nf + 0.5) * f64::ln_1p(1.0 / nf) - 1.0 + classical::stirling_tail(nf + 1.0)
    };
    Ok(StirlingRemainder { n, r_n })
}

/// q-analogue of the Gurland ratio bound: sandwich on
/// Gamma_q^2((x+y+2)/2) / (Gamma_q(x+1) Gamma_q(y+1)) times the dilogarithm
/// exponential, in log space. All three sides vanish at x = y.
pub fn gurland_bounds(x: f64, y: f64, ctx: &QContext, cfg: &EvalConfig) -> Result<BoundReport> {
    require_base(ctx)?;
    if !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain(format!(
            "Gurland arguments must be positive, got x = {x}, y = {y}"
        )));
    }
    let m = 0.5 * (x + y);
    let lx = ctx.ln_qbracket(x);
    let ly = ctx.ln_qbracket(y);
    let lm = ctx.ln_qbracket(m);

    let middle = 2.0 * gamma::log_qgamma(ctx, m + 1.0, cfg)?
        - gamma::log_qgamma(ctx, x + 1.0, cfg)?
        - gamma::log_qgamma(ctx, y + 1.0, cfg)?
        + (dilog::li2_one_minus_qpow(ctx, x, cfg)? + dilog::li2_one_minus_qpow(ctx, y, cfg)?
            - 2.0 * dilog::li2_one_minus_qpow(ctx, m, cfg)?)
            / ctx.log_q;
    let lower = (x + y) * lm - x * lx - y * ly;
    let upper = (x + y + 1.0) * lm - (x + 0.5) * lx - (y + 0.5) * ly;

    Ok(BoundReport::new(
        Some(lower),
        middle,
        Some(upper),
        BOUND_TOL,
        format!("gurland q={} x={x} y={y}", ctx.q),
    ))
}

/// Classical limit of the Gurland sandwich:
/// ((x+y)/2)^{x+y} / (x^x y^y) <= Gamma^2((x+y+2)/2)/(Gamma(x+1) Gamma(y+1))
/// <= ((x+y)/2)^{x+y+1} / (x^{x+1/2} y^{y+1/2}), in log space.
pub fn classical_gurland(x: f64, y: f64) -> Result<BoundReport> {
    if !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain(format!(
            "Gurland arguments must be positive, got x = {x}, y = {y}"
        )));
    }
    let m = 0.5 * (x + y);
    let middle = 2.0 * classical::ln_gamma(m + 1.0)?
        - classical::ln_gamma(x + 1.0)?
        - classical::ln_gamma(y + 1.0)?;
    let lower = (x + y) * m.ln() - x * x.ln() - y * y.ln();
    let upper = (x + y + 1.0) * m.ln() - (x + 0.5) * x.ln() - (y + 0.5) * y.ln();

    Ok(BoundReport::new(
        Some(lower),
        middle,
        Some(upper),
        BOUND_TOL,
        format!("classical-gurland x={x} y={y}"),
    ))
}
