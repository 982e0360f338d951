use serde::{Deserialize, Serialize};

use super::MixtureSpec;
use crate::error::{Error, Result};
use crate::measures::ln_mixture_mgf;
use crate::numerics::std_normal_cdf;
use crate::pricing::MarketParams;

/// Closed-form call price under the normal-mixture model, `t0 = 0`.
pub fn mixture_price(spec: &MixtureSpec, market: &MarketParams) -> Result<f64> {
    spec.validate()?;
    market.validate()?;
    if market.t0 != 0.0 {
        return Err(Error::InvalidParams(format!(
            "mixture prices are written for t0 = 0; shift the time origin (got t0 = {})",
            market.t0
        )));
    }
    let t = market.maturity;
    let d = market.log_moneyness();
    let ln_g = ln_mixture_mgf(&spec.weights, &spec.scales, t);
    let mut stock_leg = 0.0;
    let mut strike_leg = 0.0;
    for (&p, &a) in spec.weights.iter().zip(&spec.scales) {
        let v = a * a * t;
        let sd = v.sqrt();
        let q = (p.ln() + 0.5 * v - ln_g).exp();
        stock_leg += q * std_normal_cdf((d - ln_g + v) / sd);
        strike_leg += p * std_normal_cdf((d - ln_g) / sd);
    }
    Ok(market.s0 * stock_leg - market.discounted_strike() * strike_leg)
}

/// Exponent used in the near-martingale factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorExponent {
    /// `a_i^2 t`
    #[default]
    FullVariance,
    /// `a_i^2 t / 2`, matching the mixture's moment generating function
    HalfVariance,
}

/// `Σ p e^{a^2 u} Σ p e^{a^2 (t-u)} / Σ p e^{a^2 t}`: how far `S_t / E S_t`
/// is from a martingale between `u` and `t`.
pub fn mixture_near_martingale_factor(spec: &MixtureSpec, u: f64, t: f64) -> Result<f64> {
    mixture_near_martingale_factor_with(spec, u, t, FactorExponent::FullVariance)
}

pub fn mixture_near_martingale_factor_with(
    spec: &MixtureSpec,
    u: f64,
    t: f64,
    exponent: FactorExponent,
) -> Result<f64> {
    spec.validate()?;
    if !(0.0 < u && u < t) || !t.is_finite() {
        return Err(Error::Domain(format!("need 0 < u < t, got u = {u}, t = {t}")));
    }
    let k = match exponent {
        FactorExponent::FullVariance => 2.0,
        FactorExponent::HalfVariance => 1.0,
    };
    // ln Σ p e^{a^2 s}
    let lg = |s: f64| ln_mixture_mgf(&spec.weights, &spec.scales, k * s);
    Ok((lg(u) + lg(t - u) - lg(t)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{bsm_price, GbmSpec};

    #[test]
    fn single_component_is_bsm() {
        let m = MarketParams::new(60.0, 70.0, 0.04, 0.0, 0.1).unwrap();
        let mix = MixtureSpec { weights: vec![1.0], scales: vec![1.3] };
        let c = mixture_price(&mix, &m).unwrap();
        assert!((c - bsm_price(&GbmSpec { sigma: 1.3 }, &m)).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonzero_start() {
        let m = MarketParams::new(60.0, 70.0, 0.04, 0.5, 1.0).unwrap();
        let mix = MixtureSpec { weights: vec![1.0], scales: vec![1.0] };
        assert!(mixture_price(&mix, &m).is_err());
    }

    #[test]
    fn factor_is_one_for_one_component() {
        let mix = MixtureSpec { weights: vec![1.0], scales: vec![0.7] };
        for (u, t) in [(0.1, 0.3), (1.0, 2.0), (0.01, 5.0)] {
            assert!((mixture_near_martingale_factor(&mix, u, t).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn factor_is_at_most_one_and_tends_to_one() {
        // Σp e^{xu} and Σp e^{x(t-u)} are both increasing in x = a^2, so by
        // Chebyshev's sum inequality their product is at most Σp e^{xt}.
        let mix = MixtureSpec { weights: vec![0.5, 0.5], scales: vec![1.0, 2.0] };
        let f = mixture_near_martingale_factor(&mix, 0.005, 0.01).unwrap();
        assert!(f < 1.0 && f > 0.9999, "{f}");
        for t in [0.05, 0.3, 1.0, 4.0] {
            for j in 1..10 {
                let u = t * j as f64 / 10.0;
                for e in [FactorExponent::FullVariance, FactorExponent::HalfVariance] {
                    assert!(mixture_near_martingale_factor_with(&mix, u, t, e).unwrap() <= 1.0);
                }
            }
        }
        let mut previous = f64::INFINITY;
        for t in [0.4, 0.2, 0.1, 0.05] {
            let gap = (mixture_near_martingale_factor(&mix, t / 2.0, t).unwrap() - 1.0).abs();
            assert!(gap < previous);
            previous = gap;
        }
    }

    #[test]
    fn factor_domain() {
        let mix = MixtureSpec { weights: vec![1.0], scales: vec![0.7] };
        assert!(mixture_near_martingale_factor(&mix, 0.0, 1.0).is_err());
        assert!(mixture_near_martingale_factor(&mix, 1.0, 1.0).is_err());
    }
}
