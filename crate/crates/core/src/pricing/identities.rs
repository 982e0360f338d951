use super::engine::PricingResult;
use super::market::MarketParams;
use crate::error::{Error, Result};
use crate::measures::{quadrature_points, Density};
use crate::numerics::{integrate_points, QuadratureSpec};

/// Price when both hypotheses are location-scale families of symmetric
/// standard CDFs `g0`, `g1`:
/// `C = s0 G1((D + θ1)/σ1) - X e^{-rτ} G0((D + θ0)/σ0)`.
#[allow(clippy::too_many_arguments)]
pub fn price_location_scale<G0, G1>(
    g0: G0,
    g1: G1,
    theta0: f64,
    theta1: f64,
    sigma0: f64,
    sigma1: f64,
    market: &MarketParams,
) -> f64
where
    G0: Fn(f64) -> f64,
    G1: Fn(f64) -> f64,
{
    let d = market.log_moneyness();
    market.s0 * g1((d + theta1) / sigma1) - market.discounted_strike() * g0((d + theta0) / sigma0)
}

/// Writer's accounting leverage `(s0 - C) / (s0 + X e^{-rτ} p)` for an
/// in-the-money probability `p`, and whether it is at least `R_B`.
pub fn leverage_bound(result: &PricingResult, market: &MarketParams, prob_itm: f64) -> Result<(f64, bool)> {
    if !(0.0..=1.0).contains(&prob_itm) {
        return Err(Error::Domain(format!("prob_itm must lie in [0, 1], got {prob_itm}")));
    }
    let ratio = (market.s0 - result.price) / (market.s0 + market.discounted_strike() * prob_itm);
    Ok((ratio, ratio >= result.bayes_risk - 1e-12))
}

/// `R_B (C + X e^{-rτ}) - (s0 - C)(1 - R_B)`, zero when the price makes the
/// bet between writer and buyer fair.
pub fn fair_game_residual(result: &PricingResult, market: &MarketParams) -> f64 {
    let r = result.bayes_risk;
    let c = result.price;
    r * (c + market.discounted_strike()) - (market.s0 - c) * (1.0 - r)
}

/// Squared Hellinger distance `∫ (√f - √g)^2`.
pub fn hellinger_squared(f: &dyn Density, g: &dyn Density, spec: &QuadratureSpec) -> Result<f64> {
    let (a0, b0) = f.support();
    let (a1, b1) = g.support();
    let mut points = quadrature_points(f);
    points.extend(quadrature_points(g));
    let v = integrate_points(
        |x| {
            let d = f.pdf(x).max(0.0).sqrt() - g.pdf(x).max(0.0).sqrt();
            d * d
        },
        a0.min(a1),
        b0.max(b1),
        &points,
        spec,
    )?;
    Ok(v.clamp(0.0, 2.0))
}

/// Hellinger distance, in `[0, √2]`.
pub fn hellinger(f: &dyn Density, g: &dyn Density, spec: &QuadratureSpec) -> Result<f64> {
    hellinger_squared(f, g, spec).map(f64::sqrt)
}
