//! Default verification grids and the per-suite sweep drivers behind the
//! command-line `verify` front end and the acceptance tests.
//!
//! Suite names mirror the numbered statements they check so that a failing
//! record can be traced back directly. Grids are fixed here:
//!
//! - q: {0.1, ..., 0.9} plus 0.99, covering both the q -> 0 and q -> 1
//!   regimes the theorems quantify over;
//! - x: 25 log-spaced points on [0.1, 50];
//! - weighted point sets, ratio pairs and Gurland pairs as listed below;
//! - factorial bounds n = 1..100, Stirling remainder n = 1..1000.

use crate::context::QContext;
use crate::error::{Error, Result};
use crate::gamma;
use crate::inequalities::{
    classical_gurland, convex_sandwich, factorial_bounds, gurland_bounds, jensen_upper,
    qgamma_bounds, ratio_bounds, stirling_remainder, BoundReport, WeightedPoints,
};
use crate::lcm::{certify, Direction, LcmParams};
use crate::series::EvalConfig;

/// Scaled sign tolerance for monotonicity certificates.
pub const DEFAULT_SIGN_TOL: f64 = 1e-12;
/// Highest derivative order certified by default.
pub const DEFAULT_MAX_ORDER: u32 = 6;
/// Witness residual gate for the lemma suite.
pub const WITNESS_RESIDUAL_TOL: f64 = 1e-12;

/// q in {0.1, ..., 0.9, 0.99}.
pub fn default_q_grid() -> Vec<f64> {
    let mut g: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
    g.push(0.99);
    g
}

/// 25 log-spaced x values on [0.1, 50].
pub fn default_x_grid() -> Vec<f64> {
    log_spaced(0.1, 50.0, 25)
}

/// `count` points from `start` to `stop` inclusive, log-spaced.
pub fn log_spaced(start: f64, stop: f64, count: usize) -> Vec<f64> {
    assert!(start > 0.0 && stop > start && count >= 2);
    let ratio = stop / start;
    (0..count)
        .map(|i| start * ratio.powf(i as f64 / (count - 1) as f64))
        .collect()
}

/// The weighted point sets swept by the Jensen and sandwich suites.
fn default_point_sets() -> Vec<WeightedPoints> {
    vec![
        WeightedPoints::new(vec![3.0], vec![1.0]).unwrap(),
        WeightedPoints::new(vec![1.0, 2.0], vec![0.5, 0.5]).unwrap(),
        WeightedPoints::new(vec![0.5, 2.0, 7.0], vec![0.2, 0.3, 0.5]).unwrap(),
    ]
}

/// (alpha, beta) pairs inside the 2 alpha <= 1 <= beta region.
fn default_jensen_params() -> Vec<LcmParams> {
    vec![
        LcmParams::new(0.5, 1.0).unwrap(),
        LcmParams::new(0.5, 2.0).unwrap(),
        LcmParams::new(0.0, 1.5).unwrap(),
    ]
}

fn default_ratio_pairs() -> Vec<(f64, f64)> {
    vec![(0.1, 0.3), (0.5, 1.0), (1.0, 2.0), (2.0, 5.0), (5.0, 25.0)]
}

fn default_qgamma_bound_xs() -> Vec<f64> {
    vec![1.0, 1.5, 2.0, 4.0, 10.0, 25.0]
}

fn default_gurland_pairs() -> Vec<(f64, f64)> {
    vec![(1.0, 3.0), (0.5, 2.0), (2.0, 7.0), (5.0, 5.0), (0.3, 0.4)]
}

/// Comma-free rendering of a point list for check labels.
fn points_label(points: &[f64]) -> String {
    points
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("+")
}

/// The verification suites, named after the statements they exercise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Thm21,
    Thm22,
    Thm23,
    Lemma21,
    Cor31,
    Cor32,
    Cor33,
    Cor34,
    Cor35,
    Stirling,
    Gurland,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Thm21 => "thm-2.1",
            Suite::Thm22 => "thm-2.2",
            Suite::Thm23 => "thm-2.3",
            Suite::Lemma21 => "lemma-2.1",
            Suite::Cor31 => "cor-3.1",
            Suite::Cor32 => "cor-3.2",
            Suite::Cor33 => "cor-3.3",
            Suite::Cor34 => "cor-3.4",
            Suite::Cor35 => "cor-3.5",
            Suite::Stirling => "stirling",
            Suite::Gurland => "gurland",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Some(match name {
            "thm-2.1" => Suite::Thm21,
            "thm-2.2" => Suite::Thm22,
            "thm-2.3" => Suite::Thm23,
            "lemma-2.1" => Suite::Lemma21,
            "cor-3.1" => Suite::Cor31,
            "cor-3.2" => Suite::Cor32,
            "cor-3.3" => Suite::Cor33,
            "cor-3.4" => Suite::Cor34,
            "cor-3.5" => Suite::Cor35,
            "stirling" => Suite::Stirling,
            "gurland" => Suite::Gurland,
            _ => return None,
        })
    }

    pub fn all() -> [Suite; 11] {
        [
            Suite::Thm21,
            Suite::Thm22,
            Suite::Thm23,
            Suite::Lemma21,
            Suite::Cor31,
            Suite::Cor32,
            Suite::Cor33,
            Suite::Cor34,
            Suite::Cor35,
            Suite::Stirling,
            Suite::Gurland,
        ]
    }
}

/// Optional overrides applied on top of the suite defaults.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    /// Replaces the suite's alpha (theorem suites).
    pub alpha: Option<f64>,
    /// Replaces the suite's beta (theorem suites).
    pub beta: Option<f64>,
    /// Restricts the q grid to a single value.
    pub q: Option<f64>,
    pub sign_tol: f64,
    pub max_order: u32,
    /// Upper n for the Stirling-remainder suite.
    pub stirling_n_max: u64,
    pub cfg: EvalConfig,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            alpha: None,
            beta: None,
            q: None,
            sign_tol: DEFAULT_SIGN_TOL,
            max_order: DEFAULT_MAX_ORDER,
            stirling_n_max: 1000,
            cfg: EvalConfig::default(),
        }
    }
}

/// One verified point of a suite: a value with its pass verdict and the
/// coordinates that produced it (absent ones stay None).
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteCheck {
    pub suite: &'static str,
    pub check: String,
    pub q: Option<f64>,
    pub x: Option<f64>,
    pub order: Option<u32>,
    pub value: f64,
    pub pass: bool,
}

/// All checks of one suite run, with pass/fail tallies.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<SuiteCheck>,
    pub passed: usize,
    pub failed: usize,
    /// Largest margin by which a failing check missed, 0 when all passed.
    pub max_violation: f64,
}

impl SuiteReport {
    fn from_checks(suite: &'static str, checks: Vec<SuiteCheck>) -> SuiteReport {
        let passed = checks.iter().filter(|c| c.pass).count();
        let failed = checks.len() - passed;
        // For bound reports value is the min slack, for sign checks the raw
        // derivative; either way the interesting magnitude is |value| of the
        // failing records.
        let max_violation = checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.value.abs())
            .fold(0.0, f64::max);
        SuiteReport {
            suite,
            checks,
            passed,
            failed,
            max_violation,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

fn effective_q_grid(opts: &SuiteOptions) -> Result<Vec<f64>> {
    match opts.q {
        None => Ok(default_q_grid()),
        Some(q) => {
            if q > 0.0 && q < 1.0 {
                Ok(vec![q])
            } else {
                Err(Error::Argument(format!(
                    "suite q must lie in (0, 1), got {q}"
                )))
            }
        }
    }
}

fn bound_check(
    suite: &'static str,
    check: String,
    q: Option<f64>,
    x: Option<f64>,
    report: &BoundReport,
) -> SuiteCheck {
    SuiteCheck {
        suite,
        check,
        q,
        x,
        order: None,
        value: report.min_slack(),
        pass: report.satisfied,
    }
}

fn certificate_checks(
    suite: &'static str,
    params: LcmParams,
    direction: Direction,
    opts: &SuiteOptions,
) -> Result<Vec<SuiteCheck>> {
    let cert = certify(
        &params,
        direction,
        &effective_q_grid(opts)?,
        &default_x_grid(),
        opts.max_order,
        opts.sign_tol,
        &opts.cfg,
    )?;
    let label = format!("alpha={} beta={}", params.alpha, params.beta);
    Ok(cert
        .checks
        .iter()
        .map(|c| SuiteCheck {
            suite,
            check: label.clone(),
            q: Some(c.q),
            x: Some(c.x),
            order: Some(c.order),
            value: c.value,
            pass: c.ok,
        })
        .collect())
}

/// Run one suite and collect every check it makes.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport> {
    let name = suite.name();
    let cfg = &opts.cfg;
    let checks: Vec<SuiteCheck> = match suite {
        Suite::Thm21 => {
            let params = LcmParams::new(opts.alpha.unwrap_or(0.5), opts.beta.unwrap_or(1.0))?;
            certificate_checks(name, params, Direction::FIsLcm, opts)?
        }
        Suite::Thm22 => {
            let params = LcmParams::new(opts.alpha.unwrap_or(1.0), opts.beta.unwrap_or(1.0))?;
            certificate_checks(name, params, Direction::InverseIsLcm, opts)?
        }
        Suite::Thm23 => {
            let pairs: Vec<LcmParams> = match (opts.alpha, opts.beta) {
                (None, None) => vec![
                    LcmParams::new(0.5, 1.0)?,
                    LcmParams::new(0.5, 2.0)?,
                    LcmParams::new(0.0, 1.5)?,
                    LcmParams::new(-1.0, 3.0)?,
                ],
                (a, b) => vec![LcmParams::new(a.unwrap_or(0.5), b.unwrap_or(1.0))?],
            };
            let mut out = Vec::new();
            for params in pairs {
                out.extend(certificate_checks(name, params, Direction::FIsLcm, opts)?);
            }
            out
        }
        Suite::Lemma21 => {
            let mut out = Vec::new();
            for q in effective_q_grid(opts)? {
                let ctx = QContext::new(q)?;
                for &x in &default_x_grid() {
                    let w = gamma::solve_salem_witness(&ctx, x, cfg)?;
                    let pass =
                        (0.0..=1.0).contains(&w.a) && w.residual.abs() <= WITNESS_RESIDUAL_TOL;
                    out.push(SuiteCheck {
                        suite: name,
                        check: format!("witness a={:.6}", w.a),
                        q: Some(q),
                        x: Some(x),
                        order: None,
                        value: w.residual,
                        pass,
                    });
                }
            }
            out
        }
        Suite::Cor31 => {
            let mut out = Vec::new();
            for q in effective_q_grid(opts)? {
                let ctx = QContext::new(q)?;
                for params in default_jensen_params() {
                    for wp in default_point_sets() {
                        let r = jensen_upper(&wp, &params, &ctx, cfg)?;
                        let check = format!(
                            "alpha={} beta={} points={}",
                            params.alpha,
                            params.beta,
                            points_label(wp.points())
                        );
                        out.push(bound_check(name, check, Some(q), Some(wp.mean()), &r));
                    }
                }
            }
            out
        }
        Suite::Cor32 => {
            let mut out = Vec::new();
            for q in effective_q_grid(opts)? {
                let ctx = QContext::new(q)?;
                for wp in default_point_sets() {
                    let r = convex_sandwich(&wp, &ctx, cfg)?;
                    let check = format!("points={}", points_label(wp.points()));
                    out.push(bound_check(name, check, Some(q), Some(wp.mean()), &r));
                }
            }
            out
        }
        Suite::Cor33 => {
            let mut out = Vec::new();
            for q in effective_q_grid(opts)? {
                let ctx = QContext::new(q)?;
                for (a, b) in default_ratio_pairs() {
                    let r = ratio_bounds(a, b, &ctx, cfg)?;
                    out.push(bound_check(
                        name,
                        format!("a={a} b={b}"),
                        Some(q),
                        Some(b),
                        &r,
                    ));
                }
            }
            out
        }
        Suite::Cor34 => {
            let mut out = Vec::new();
            for q in effective_q_grid(opts)? {
                let ctx = QContext::new(q)?;
                for x in default_qgamma_bound_xs() {
                    let r = qgamma_bounds(x, &ctx, cfg)?;
                    out.push(bound_check(name, format!("x={x}"), Some(q), Some(x), &r));
                }
            }
            out
        }
        Suite::Cor35 => {
            let mut out = Vec::new();
            for n in 1..=100u64 {
                let r = factorial_bounds(n)?;
                out.push(SuiteCheck {
                    suite: name,
                    check: format!("n={n}"),
                    q: None,
                    x: Some(n as f64),
                    order: None,
                    value: r.min_slack(),
                    pass: r.satisfied,
                });
            }
            out
        }
        Suite::Stirling => {
            let mut out = Vec::new();
            for n in 1..=opts.stirling_n_max {
                let r = stirling_remainder(n)?;
                let robbins = r.robbins();
                let band = r.band();
                out.push(SuiteCheck {
                    suite: name,
                    check: format!("robbins n={n}"),
                    q: None,
                    x: Some(n as f64),
                    order: None,
                    value: robbins.min_slack(),
                    pass: robbins.satisfied,
                });
                out.push(SuiteCheck {
                    suite: name,
                    check: format!("band n={n}"),
                    q: None,
                    x: Some(n as f64),
                    order: None,
                    value: band.min_slack(),
                    pass: band.satisfied,
                });
            }
            out
        }
        Suite::Gurland => {
            let mut out = Vec::new();
            for q in effective_q_grid(opts)? {
                let ctx = QContext::new(q)?;
                for (x, y) in default_gurland_pairs() {
                    let r = gurland_bounds(x, y, &ctx, cfg)?;
                    out.push(bound_check(
                        name,
                        format!("x={x} y={y}"),
                        Some(q),
                        Some(x),
                        &r,
                    ));
                }
            }
            for (x, y) in default_gurland_pairs() {
                let r = classical_gurland(x, y)?;
                out.push(bound_check(
                    name,
                    format!("classical x={x} y={y}"),
                    None,
                    Some(x),
                    &r,
                ));
            }
            out
        }
    };
    Ok(SuiteReport::from_checks(name, checks))
}

/// Run every suite in declaration order.
pub fn run_all(opts: &SuiteOptions) -> Result<Vec<SuiteReport>> {
    Suite::all().iter().map(|&s| run_suite(s, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_have_documented_shape() {
        let q = default_q_grid();
        assert_eq!(q.len(), 10);
        assert_eq!(q[0], 0.1);
        assert_eq!(q[9], 0.99);
        let x = default_x_grid();
        assert_eq!(x.len(), 25);
        assert!((x[0] - 0.1).abs() < 1e-15);
        assert!((x[24] - 50.0).abs() < 1e-12);
        assert!(x.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::all() {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("thm-9.9"), None);
    }

    #[test]
    fn bound_suites_pass_on_defaults() {
        let opts = SuiteOptions::default();
        for suite in [
            Suite::Cor31,
            Suite::Cor32,
            Suite::Cor33,
            Suite::Cor34,
            Suite::Cor35,
            Suite::Gurland,
        ] {
            let r = run_suite(suite, &opts).unwrap();
            assert!(
                r.all_passed(),
                "{} failed: {:?}",
                r.suite,
                r.checks.iter().find(|c| !c.pass)
            );
        }
    }

    #[test]
    fn theorem_override_fails_outside_region() {
        let opts = SuiteOptions {
            alpha: Some(0.75),
            ..SuiteOptions::default()
        };
        let r = run_suite(Suite::Thm21, &opts).unwrap();
        assert!(r.failed > 0);
        assert!(r.max_violation > 0.0);
    }

    #[test]
    fn single_q_restriction() {
        let opts = SuiteOptions {
            q: Some(0.5),
            ..SuiteOptions::default()
        };
        let r = run_suite(Suite::Cor34, &opts).unwrap();
        assert!(r.checks.iter().all(|c| c.q == Some(0.5)));
        let bad = SuiteOptions {
            q: Some(1.5),
            ..SuiteOptions::default()
        };
        assert!(run_suite(Suite::Cor34, &bad).is_err());
    }
}
