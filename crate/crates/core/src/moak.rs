//! The q-Stirling asymptotic machinery: Bernoulli numbers, the P_k
//! polynomial recurrence, the C_q constant with its theta-like bilateral
//! sum, and the truncated expansion for log Gamma_q.

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use std::f64::consts::PI;

use crate::context::QContext;
use crate::dilog;
use crate::error::{Error, Result};
use crate::series::EvalConfig;

/// Coefficient table too large for exact i128 polynomial arithmetic.
const PK_MAX: usize = 32;

/// Dense integer-coefficient polynomial from the first-order recurrence
/// P_k(z) = (z - z^2) P'_{k-1}(z) + (kz + 1) P_{k-1}(z), P_0 = P_{-1} = 1.
///
/// Coefficients are exact integers (the recurrence preserves integrality);
/// they are converted to floats only at evaluation time because the
/// recurrence itself is unstable in floating point for large k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PkPolynomial {
    /// Coefficient of z^i at index i; length degree + 1, constant term first.
    pub coeffs: Vec<i128>,
}

impl PkPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation in f64.
    pub fn eval(&self, z: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c as f64;
        }
        acc
    }
}

/// [P_0, ..., P_kmax] by exact integer polynomial arithmetic.
///
/// Every computed polynomial has positive coefficients, constant term 1,
/// and P_k(1) = (k + 1)!; these observed properties are asserted.
pub fn pk_polynomials(kmax: usize) -> Vec<PkPolynomial> {
    assert!(
        kmax <= PK_MAX,
        "P_k coefficients exceed i128 beyond k = {PK_MAX}"
    );
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(PkPolynomial { coeffs: vec![1] });
    for k in 1..=kmax {
        let prev = &out[k - 1].coeffs;
        let mut next = vec![0i128; k + 1];
        // (z - z^2) * P'_{k-1}
        for (i, &c) in prev.iter().enumerate().skip(1) {
            let d = c * i as i128;
            next[i] += d;
            next[i + 1] -= d;
        }
        // (k z + 1) * P_{k-1}
        for (i, &c) in prev.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c * k as i128;
        }
        out.push(PkPolynomial { coeffs: next });
    }
    for (k, p) in out.iter().enumerate() {
        assert_eq!(p.coeffs[0], 1, "P_{k} constant term");
        assert!(p.coeffs.iter().all(|&c| c > 0), "P_{k} coefficient sign");
    }
    out
}

/// Bernoulli numbers B_0..B_n rendered to f64.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    pub values: Vec<f64>,
}

impl BernoulliTable {
    pub fn get(&self, k: usize) -> f64 {
        self.values[k]
    }
}

/// B_0..B_table_size by the binomial recurrence
/// B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j over exact big rationals,
/// rendered to f64 at the end (correctly rounded, so the table stays
/// usable well past B_60).
pub fn bernoulli(table_size: usize) -> BernoulliTable {
    let mut exact: Vec<BigRational> = Vec::with_capacity(table_size + 1);
    exact.push(BigRational::one());
    for m in 1..=table_size {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, b) in exact.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * b;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        exact.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    let values = exact
        .iter()
        .map(|r| r.to_f64().expect("bernoulli out of f64 range"))
        .collect();
    // Odd entries beyond B_1 vanish identically in the exact recurrence.
    for (m, r) in exact.iter().enumerate() {
        if m >= 3 && m % 2 == 1 {
            assert!(r.is_zero(), "B_{m} should vanish");
        }
    }
    BernoulliTable { values }
}

/// The q-analogue of (1/2) log(2 pi): C_{q_hat}, with the bilateral sum
/// sum_m [r^{m(6m+1)} - r^{(2m+1)(3m+1)}], r = exp(4 pi^2 / log q_hat).
///
/// The sum is truncated symmetrically once both exponent families at a level
/// fall below `abs_tol`; r <= exp(4 pi^2/log 0.999) makes that happen by
/// |m| = 8 for every q_hat of interest.
pub fn cq_constant(ctx: &QContext, cfg: &EvalConfig) -> Result<f64> {
    let qh = ctx.hat_q;
    let lqh = ctx.log_hat_q();
    let r = (4.0 * PI * PI / lqh).exp(); // in [0, 1)

    let mut theta = 1.0 - r; // m = 0 pair
    for m in 1i32..=12 {
        let e1p = m * (6 * m + 1);
        let e2p = (2 * m + 1) * (3 * m + 1);
        let e1n = m * (6 * m - 1);
        let e2n = (2 * m - 1) * (3 * m - 1);
        theta += r.powi(e1p) - r.powi(e2p) + r.powi(e1n) - r.powi(e2n);
        // e2n is the smallest exponent at this level and levels only grow.
        if r.powi(e2n) < cfg.abs_tol {
            break;
        }
    }
    if theta <= 0.0 {
        return Err(Error::Degeneracy(format!(
            "theta sum {theta:e} is not positive at q_hat = {qh}"
        )));
    }
    // (q_hat - 1)/log q_hat is positive: numerator and denominator are both
    // negative on (0, 1). Evaluate the ratio before taking the log.
    Ok(0.5 * (2.0 * PI).ln() + 0.5 * ((qh - 1.0) / lqh).ln() - lqh / 24.0 + theta.ln())
}

/// Truncated q-Stirling expansion of log Gamma_q(x) with `k_terms`
/// Bernoulli correction terms:
///
/// ```text
///   (x - 1/2) log((1-q^x)/(1-q)) + Li2(1-q^x)/log q + (1/2) H(q-1) log q
///   + C_{q_hat} + sum_{k=1}^{K} B_{2k}/(2k)! (log q_hat/(q_hat^x-1))^{2k-1}
///                  q_hat^x P_{2k-3}(q_hat^x)
/// ```
///
/// The leading terms use the original q, the correction sum uses q_hat, and
/// P_{-1} = P_0 = 1.
pub fn moak_expansion(ctx: &QContext, x: f64, k_terms: usize, cfg: &EvalConfig) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    if k_terms == 0 {
        return Err(Error::Argument("expansion needs at least one term".into()));
    }
    if 2 * k_terms > PK_MAX + 3 {
        return Err(Error::Argument(format!(
            "at most {} correction terms are supported",
            (PK_MAX + 3) / 2
        )));
    }

    let lq = ctx.log_q;
    let main = (x - 0.5) * ctx.ln_qbracket(x)
        + dilog::li2_one_minus_qpow_any_branch(ctx, x, cfg)? / lq
        + 0.5 * ctx.heaviside * lq
        + cq_constant(ctx, cfg)?;

    let lqh = ctx.log_hat_q();
    let t = (x * lqh).exp(); // q_hat^x
    let base = lqh / f64::exp_m1(x * lqh); // log q_hat / (q_hat^x - 1), positive
    let pk = pk_polynomials(if k_terms >= 2 { 2 * k_terms - 3 } else { 0 });
    let bern = bernoulli(2 * k_terms);

    let mut corr = 0.0;
    let mut fact = 1.0f64; // (2k)! running
    for k in 1..=k_terms {
        fact *= (2 * k - 1) as f64 * (2 * k) as f64;
        let p_idx = 2 * k as i64 - 3;
        let pval = if p_idx < 0 {
            1.0
        } else {
            pk[p_idx as usize].eval(t)
        };
        corr += bern.get(2 * k) / fact * base.powi(2 * k as i32 - 1) * t * pval;
    }
    Ok(main + corr)
}
