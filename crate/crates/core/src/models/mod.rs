//! Stock price models. Each one yields a law of `ln(S_T / E S_T)` for the
//! generic engine and, where the model has one, a direct price formula.

mod gbm;
mod hyperbolic;
mod martingale;
mod mixture;
mod toy;

use serde::{Deserialize, Serialize};

pub use gbm::bsm_price;
pub use hyperbolic::{
    hyperbolic_cf, hyperbolic_density, hyperbolic_mgf_base, hyperbolic_pdf, hyperbolic_price,
    hyperbolic_price_with, HyperbolicLaw, SeriesDensity,
};
pub use martingale::{martingale_check, MartingaleCheck, MartingaleReport};
pub use mixture::{
    mixture_near_martingale_factor, mixture_near_martingale_factor_with, mixture_price, FactorExponent,
};
pub use toy::{toy_price, toy_result, ToyPrice};

use crate::error::{Error, Result};
use crate::measures::DiscretePriceLaw;

/// Geometric Brownian motion. The drift never enters a price.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GbmSpec {
    pub sigma: f64,
}

/// Log-price increments distributed as `Σ p_i N(0, a_i^2 t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    pub weights: Vec<f64>,
    pub scales: Vec<f64>,
}

/// Symmetric centred hyperbolic law, density proportional to
/// `exp(-ζ √(1 + (x/δ)^2))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicSpec {
    pub zeta: f64,
    pub delta: f64,
}

impl GbmSpec {
    pub fn validate(&self) -> Result<()> {
        if self.sigma > 0.0 && self.sigma.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("sigma must be positive, got {}", self.sigma)))
        }
    }
}

impl MixtureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.weights.is_empty() || self.weights.len() != self.scales.len() {
            return Err(Error::InvalidParams(format!(
                "mixture needs equally many weights and scales (got {} and {})",
                self.weights.len(),
                self.scales.len()
            )));
        }
        let total: f64 = self.weights.iter().sum();
        let weights_ok = self.weights.iter().all(|&p| p > 0.0 && p <= 1.0) && (total - 1.0).abs() <= 1e-12;
        if !weights_ok {
            return Err(Error::InvalidParams(format!(
                "mixture weights must lie in (0, 1] and sum to 1, got {:?}",
                self.weights
            )));
        }
        if !self.scales.iter().all(|&a| a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidParams(format!("mixture scales must be positive, got {:?}", self.scales)));
        }
        Ok(())
    }
}

impl HyperbolicSpec {
    pub fn validate(&self) -> Result<()> {
        if self.delta > 0.0 && self.zeta.is_finite() && self.delta < self.zeta {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "hyperbolic law needs 0 < delta < zeta for a finite exponential moment, got zeta = {}, delta = {}",
                self.zeta, self.delta
            )))
        }
    }

    /// Exponential rate `ζ/δ` of both tails.
    pub fn tail_rate(&self) -> f64 {
        self.zeta / self.delta
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum ModelSpec {
    Gbm(GbmSpec),
    Mixture(MixtureSpec),
    Hyperbolic(HyperbolicSpec),
    Discrete(DiscretePriceLaw),
}

impl ModelSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ModelSpec::Gbm(g) => g.validate(),
            ModelSpec::Mixture(m) => m.validate(),
            ModelSpec::Hyperbolic(h) => h.validate(),
            ModelSpec::Discrete(_) => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::Gbm(_) => "gbm",
            ModelSpec::Mixture(_) => "mixture",
            ModelSpec::Hyperbolic(_) => "hyperbolic",
            ModelSpec::Discrete(_) => "discrete",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(GbmSpec { sigma: 0.0 }.validate().is_err());
        assert!(MixtureSpec { weights: vec![0.5, 0.5], scales: vec![1.0, 2.0] }.validate().is_ok());
        assert!(MixtureSpec { weights: vec![0.5, 0.6], scales: vec![1.0, 2.0] }.validate().is_err());
        assert!(MixtureSpec { weights: vec![1.0], scales: vec![1.0, 2.0] }.validate().is_err());
        assert!(MixtureSpec { weights: vec![1.0], scales: vec![-1.0] }.validate().is_err());
        assert!(HyperbolicSpec { zeta: 2.0, delta: 1.0 }.validate().is_ok());
        assert!(matches!(HyperbolicSpec { zeta: 1.0, delta: 1.0 }.validate(), Err(Error::Domain(_))));
    }

    #[test]
    fn model_spec_serde_round_trip() {
        let m = ModelSpec::Mixture(MixtureSpec { weights: vec![0.5, 0.5], scales: vec![1.0, 2.0] });
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"model\":\"mixture\""));
        assert_eq!(serde_json::from_str::<ModelSpec>(&s).unwrap(), m);
    }
}
