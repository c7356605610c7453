//! Closed-form constants and security bounds for the money scheme: the
//! two guessing constants, the acceptance-threshold line beta(eta), the
//! typicality and forgery bounds, and qubit-count solvers.
//!
//! All functions here are pure and safe for unrestricted concurrent use.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Monogamy constant M = (5 + sqrt(3))/4 bounding the summed both-correct
/// guessing probabilities of the two secret bits.
pub fn monogamy_m() -> f64 {
    (5.0 + 3.0f64.sqrt()) / 4.0
}

/// Optimal quantum single-party guessing probability P_Q = cos^2(pi/8).
pub fn p_quantum() -> f64 {
    (std::f64::consts::PI / 8.0).cos().powi(2)
}

/// Critical guessing probability below which the underlying SDI key rate
/// vanishes. Carried as the literature's decimal constant — there is no
/// closed form to evaluate — so quantities derived from it are only
/// meaningful to four decimals.
pub const P_CRIT_KEY: f64 = 0.8415;

/// Critical guessing probability for the money scheme:
/// (P_Q + P_crit_key)/2.
pub fn p_crit_money() -> f64 {
    (p_quantum() + P_CRIT_KEY) / 2.0
}

/// Per-round two-party average guess bound (2 P_Q + M)/2.
pub fn b_avg() -> f64 {
    (2.0 * p_quantum() + monogamy_m()) / 2.0
}

/// Upper bound on P(a0) + P(a1) + P(a0 xor a1) for qubit strategies:
/// (3/2)(1 + 1/sqrt(3)).
pub fn triple_sum_bound() -> f64 {
    1.5 * (1.0 + 1.0 / 3.0f64.sqrt())
}

/// The five headline constants in one bundle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub m: f64,
    pub p_q: f64,
    pub p_crit_key: f64,
    pub p_crit_money: f64,
    pub b_avg: f64,
}

/// Exact closed-form evaluation of all scheme constants.
pub fn constants() -> Constants {
    Constants {
        m: monogamy_m(),
        p_q: p_quantum(),
        p_crit_key: P_CRIT_KEY,
        p_crit_money: p_crit_money(),
        b_avg: b_avg(),
    }
}

/// Acceptance-threshold line
/// beta(eta) = (9 + 2 sqrt(2) + sqrt(3))/16 + ((17 + 2 sqrt(2) + sqrt(3))/8) eta.
///
/// beta(0) equals (2 P_Q + M)/4; a banknote threshold theta > beta(eta)
/// defeats the two-branch collusion.
pub fn beta(eta: f64) -> Result<f64> {
    if eta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "beta requires eta >= 0, got {eta}"
        )));
    }
    Ok(beta_intercept() + beta_slope() * eta)
}

/// beta(0) = (9 + 2 sqrt(2) + sqrt(3))/16.
pub fn beta_intercept() -> f64 {
    (9.0 + 2.0 * 2.0f64.sqrt() + 3.0f64.sqrt()) / 16.0
}

/// d beta / d eta = (17 + 2 sqrt(2) + sqrt(3))/8.
pub fn beta_slope() -> f64 {
    (17.0 + 2.0 * 2.0f64.sqrt() + 3.0f64.sqrt()) / 8.0
}

/// Largest usable fluctuation parameter:
/// eta_max = (-1 + 2 sqrt(2) - sqrt(3)) / (34 + 4 sqrt(2) + 2 sqrt(3)),
/// the solution of beta(eta) = P_Q.
pub fn eta_max() -> f64 {
    let s2 = 2.0f64.sqrt();
    let s3 = 3.0f64.sqrt();
    (-1.0 + 2.0 * s2 - s3) / (34.0 + 4.0 * s2 + 2.0 * s3)
}

/// Probability that a uniform challenge-XOR string fails eta-typicality:
/// 2 exp(-2 eta^2 n), clamped to [0, 1].
pub fn typicality_epsilon(eta: f64, n: u64) -> Result<f64> {
    if eta <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "typicality_epsilon requires eta > 0, got {eta}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter(
            "typicality_epsilon requires n >= 1".into(),
        ));
    }
    Ok((2.0 * (-2.0 * eta * eta * n as f64).exp()).min(1.0))
}

/// Two-branch forgery bound 10 k^2 exp(-2 eta^2 (1/2 - eta) n), clamped
/// to [0, 1]. Valid for eta in (0, eta_max].
pub fn forgery_bound(n: u64, eta: f64, k: u64) -> Result<f64> {
    if !(eta > 0.0 && eta <= eta_max() + 1e-15) {
        return Err(Error::InvalidParameter(format!(
            "forgery_bound requires 0 < eta <= eta_max ({:.6e}), got {eta}",
            eta_max()
        )));
    }
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter(
            "forgery_bound requires n >= 1 and k >= 1".into(),
        ));
    }
    Ok(forgery_bound_raw(n as f64, eta, k).min(1.0))
}

/// Unclamped forgery bound; useful to detect vacuous (>= 1) values.
pub fn forgery_bound_raw(n: f64, eta: f64, k: u64) -> f64 {
    10.0 * (k * k) as f64 * (-2.0 * eta * eta * (0.5 - eta) * n).exp()
}

/// True when the (unclamped) forgery bound at these arguments is >= 1;
/// a clamped value of 1 is a vacuous guarantee and downstream comparisons
/// must not treat it as one.
pub fn forgery_bound_is_trivial(n: u64, eta: f64, k: u64) -> bool {
    forgery_bound_raw(n as f64, eta, k) >= 1.0
}

/// Smallest banknote length for which the forgery bound at eta_max dips
/// below 1. Solves ln(10 k^2) = 2 eta_max^2 (1/2 - eta_max) n, then walks
/// the ceiling to the exact integer boundary.
pub fn min_nontrivial_n(k: u64) -> u64 {
    let eta = eta_max();
    let rate = 2.0 * eta * eta * (0.5 - eta);
    let target = (10.0 * (k * k) as f64).ln();
    let mut n = (target / rate).ceil() as u64;
    n = n.max(1);
    while forgery_bound_raw(n as f64, eta, k) >= 1.0 {
        n += 1;
    }
    while n > 1 && forgery_bound_raw((n - 1) as f64, eta, k) < 1.0 {
        n -= 1;
    }
    n
}

/// Smallest n (with the eta achieving it) such that the forgery bound is
/// at most `target`. The closed-form n(eta) = ln(10 k^2 / target) /
/// (2 eta^2 (1/2 - eta)) is minimised over eta in (0, eta_max] by a
/// golden-section search; the minimiser is eta_max since the denominator
/// grows on the whole interval, and the search confirms it numerically.
pub fn required_n(target: f64, k: u64) -> Result<(u64, f64)> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "required_n needs a target in (0, 1), got {target}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("required_n requires k >= 1".into()));
    }
    let numerator = (10.0 * (k * k) as f64 / target).ln();
    let n_of_eta = |eta: f64| numerator / (2.0 * eta * eta * (0.5 - eta));

    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut lo = eta_max() * 1e-6;
    let mut hi = eta_max();
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = n_of_eta(x1);
    let mut f2 = n_of_eta(x2);
    for _ in 0..200 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = n_of_eta(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = n_of_eta(x2);
        }
    }
    let eta = if f1 < f2 { x1 } else { x2 };
    let mut n = n_of_eta(eta).ceil() as u64;
    n = n.max(1);
    while forgery_bound_raw(n as f64, eta, k) > target {
        n += 1;
    }
    Ok((n, eta))
}

/// Count form of the Lemma-3 bound:
/// B = 2 P_Q (1/2 + eta) n + M (1/2 + eta) n + 2 eta n = 2 n beta(eta).
pub fn count_bound(n: u64, eta: f64) -> Result<f64> {
    if eta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "count_bound requires eta >= 0, got {eta}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("count_bound requires n >= 1".into()));
    }
    let nf = n as f64;
    Ok(2.0 * p_quantum() * (0.5 + eta) * nf + monogamy_m() * (0.5 + eta) * nf + 2.0 * eta * nf)
}

/// Every analytic constant and bound evaluated at one parameter point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: u64,
    pub theta: f64,
    pub eta: f64,
    pub k: u64,
    pub m: f64,
    pub p_q: f64,
    pub p_crit_key: f64,
    pub p_crit_money: f64,
    pub b_avg: f64,
    pub b_count: f64,
    pub beta: f64,
    pub beta_intercept: f64,
    pub beta_slope: f64,
    pub eta_max: f64,
    pub triple_sum_bound: f64,
    pub epsilon_typ: f64,
    pub forgery_bound: f64,
    /// True when the pre-clamp forgery bound is >= 1 (no guarantee).
    pub forgery_bound_trivial: bool,
    pub min_nontrivial_n: u64,
}

impl BoundsReport {
    /// Evaluates the full report. `eta` must lie in (0, eta_max].
    pub fn compute(n: u64, theta: f64, eta: f64, k: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&theta) {
            return Err(Error::InvalidParameter(format!(
                "theta must lie in [0, 1], got {theta}"
            )));
        }
        Ok(BoundsReport {
            n,
            theta,
            eta,
            k,
            m: monogamy_m(),
            p_q: p_quantum(),
            p_crit_key: P_CRIT_KEY,
            p_crit_money: p_crit_money(),
            b_avg: b_avg(),
            b_count: count_bound(n, eta)?,
            beta: beta(eta)?,
            beta_intercept: beta_intercept(),
            beta_slope: beta_slope(),
            eta_max: eta_max(),
            triple_sum_bound: triple_sum_bound(),
            epsilon_typ: typicality_epsilon(eta, n)?,
            forgery_bound: forgery_bound(n, eta, k)?,
            forgery_bound_trivial: forgery_bound_is_trivial(n, eta, k),
            min_nontrivial_n: min_nontrivial_n(k),
        })
    }
}
