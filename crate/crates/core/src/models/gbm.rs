use super::GbmSpec;
use crate::numerics::std_normal_cdf;
use crate::pricing::MarketParams;

/// Black-Scholes-Merton call price `s0 Φ(d1) - X e^{-rτ} Φ(d2)`.
pub fn bsm_price(spec: &GbmSpec, market: &MarketParams) -> f64 {
    let sd = spec.sigma * market.tau().sqrt();
    let d = market.log_moneyness();
    let d1 = d / sd + 0.5 * sd;
    let d2 = d / sd - 0.5 * sd;
    market.s0 * std_normal_cdf(d1) - market.discounted_strike() * std_normal_cdf(d2)
}
