use serde::{Deserialize, Serialize};

use super::market::{MarketParams, PriorWeights};
use crate::error::{Error, Result};
use crate::measures::{quadrature_points, LogReturnLaw, TiltedLaw};
use crate::numerics::{integrate_points, QuadratureSpec};

/// Relative agreement required between the three price paths, in units of
/// `s0 + X`.
pub const CONSISTENCY_TOL: f64 = 1e-8;

/// A European call price and the testing problem behind it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PricingResult {
    pub price: f64,
    /// Minimum Bayes risk `R_B`.
    pub bayes_risk: f64,
    /// Bayes barrier `d_B`.
    pub barrier: f64,
    /// `E S_T` used to place the barrier.
    pub mean_price: f64,
    /// `s0 - R_B (s0 + X e^{-rτ})`
    pub price_via_risk: f64,
    /// `s0 [1 - F_1(-D)] - X e^{-rτ} [1 - F_0(-D)]`
    pub price_via_tails: f64,
    /// `s0 ∫_{-D}^∞ f_1 - X e^{-rτ} [1 - F_0(-D)]` with the integral done by
    /// quadrature.
    pub price_via_integral: f64,
}

/// `R(d) = π1 F1(ln(d / E S_T)) + π0 [1 - F0(ln(d / E S_T))]`
pub fn risk_curve(
    law: &LogReturnLaw,
    tilt: &TiltedLaw,
    weights: &PriorWeights,
    mean_price: f64,
    d: f64,
) -> Result<f64> {
    if !(d > 0.0) || !(mean_price > 0.0) {
        return Err(Error::Domain(format!(
            "risk curve needs d > 0 and E S_T > 0, got d = {d}, E S_T = {mean_price}"
        )));
    }
    let y = (d / mean_price).ln();
    Ok(weights.pi1 * tilt.cdf(y) + weights.pi0 * law.sf(y))
}

/// The minimizer of the risk curve, `d_B = X e^{-rτ} E S_T / s0`.
pub fn bayes_barrier(market: &MarketParams, mean_price: f64) -> f64 {
    market.discounted_strike() * mean_price / market.s0
}

/// `R_B = π1 F1(-D) + π0 [1 - F0(-D)]`.
///
/// The barrier sits at `y = -D` whatever `E S_T` is, so the risk does not
/// depend on it.
pub fn min_bayes_risk(law: &LogReturnLaw, tilt: &TiltedLaw, market: &MarketParams) -> f64 {
    let w = PriorWeights::from_market(market);
    let y = -market.log_moneyness();
    w.pi1 * tilt.cdf(y) + w.pi0 * law.sf(y)
}

/// Price a European call three ways and insist they agree.
pub fn price_european(
    law: &LogReturnLaw,
    tilt: &TiltedLaw,
    market: &MarketParams,
    mean_price: f64,
) -> Result<PricingResult> {
    price_european_with(law, tilt, market, mean_price, &QuadratureSpec::default())
}

pub fn price_european_with(
    law: &LogReturnLaw,
    tilt: &TiltedLaw,
    market: &MarketParams,
    mean_price: f64,
    spec: &QuadratureSpec,
) -> Result<PricingResult> {
    market.validate()?;
    if !(mean_price > 0.0) || !mean_price.is_finite() {
        return Err(Error::InvalidParams(format!("E S_T must be positive, got {mean_price}")));
    }
    let s0 = market.s0;
    let k = market.discounted_strike();
    let y = -market.log_moneyness();

    let r_b = min_bayes_risk(law, tilt, market);
    let via_risk = s0 - r_b * (s0 + k);
    let upper0 = law.sf(y);
    let via_tails = s0 * tilt.sf(y) - k * upper0;

    let f1 = tilt.density();
    let (_, hi) = f1.support();
    let upper1 = if y >= hi {
        0.0
    } else {
        integrate_points(|v| f1.pdf(v), y, hi, &quadrature_points(f1.as_ref()), spec)?
    };
    let via_integral = s0 * upper1 - k * upper0;

    let tolerance = CONSISTENCY_TOL * (s0 + market.strike);
    let spread = via_risk.max(via_tails).max(via_integral) - via_risk.min(via_tails).min(via_integral);
    if !(spread <= tolerance) {
        return Err(Error::Inconsistent {
            via_risk,
            via_tails,
            via_integral,
            tolerance,
        });
    }
    Ok(PricingResult {
        price: via_risk,
        bayes_risk: r_b,
        barrier: bayes_barrier(market, mean_price),
        mean_price,
        price_via_risk: via_risk,
        price_via_tails: via_tails,
        price_via_integral: via_integral,
    })
}
