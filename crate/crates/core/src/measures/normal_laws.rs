use super::Density;
use crate::error::{Error, Result};
use crate::numerics::{std_normal_cdf, std_normal_pdf};

/// Number of standard deviations the bulk extends on either side.
const BULK_SDS: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalLaw {
    pub mean: f64,
    pub sd: f64,
}

impl NormalLaw {
    pub fn new(mean: f64, sd: f64) -> Result<Self> {
        if !(sd > 0.0) || !sd.is_finite() || !mean.is_finite() {
            return Err(Error::InvalidParams(format!(
                "normal law needs finite mean and sd > 0, got N({mean}, {sd}^2)"
            )));
        }
        Ok(Self { mean, sd })
    }
}

impl Density for NormalLaw {
    fn pdf(&self, y: f64) -> f64 {
        std_normal_pdf((y - self.mean) / self.sd) / self.sd
    }

    fn cdf(&self, y: f64) -> f64 {
        std_normal_cdf((y - self.mean) / self.sd)
    }

    fn sf(&self, y: f64) -> f64 {
        std_normal_cdf((self.mean - y) / self.sd)
    }

    fn bulk(&self) -> (f64, f64) {
        (self.mean - BULK_SDS * self.sd, self.mean + BULK_SDS * self.sd)
    }
}

/// A finite mixture `Σ w_i N(m_i, s_i^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalMixtureLaw {
    components: Vec<(f64, NormalLaw)>,
}

impl NormalMixtureLaw {
    pub fn new(components: Vec<(f64, NormalLaw)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParams("mixture needs at least one component".into()));
        }
        let total: f64 = components.iter().map(|c| c.0).sum();
        if components.iter().any(|c| !(c.0 > 0.0)) || (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!(
                "mixture weights must be positive and sum to 1, got sum {total}"
            )));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[(f64, NormalLaw)] {
        &self.components
    }

    /// `(f_0, f_1)` for log returns whose increments are `Σ p_i N(0, a_i^2 t)`.
    ///
    /// `f_0 = Σ p_i N(-ln G, a_i^2 τ)` and `f_1 = Σ q_i N(-ln G + a_i^2 τ, a_i^2 τ)`
    /// with `G = Σ p_i e^{a_i^2 τ / 2}` and `q_i = p_i e^{a_i^2 τ / 2} / G`.
    pub fn log_return_pair(weights: &[f64], scales: &[f64], tau: f64) -> Result<(Self, Self)> {
        if weights.len() != scales.len() {
            return Err(Error::InvalidParams("weights and scales differ in length".into()));
        }
        let ln_g = ln_mixture_mgf(weights, scales, tau);
        let mut f0 = Vec::with_capacity(weights.len());
        let mut f1 = Vec::with_capacity(weights.len());
        for (&p, &a) in weights.iter().zip(scales) {
            let v = a * a * tau;
            let q = (p.ln() + 0.5 * v - ln_g).exp();
            f0.push((p, NormalLaw::new(-ln_g, v.sqrt())?));
            f1.push((q, NormalLaw::new(-ln_g + v, v.sqrt())?));
        }
        // q sums to 1 up to rounding; rescale so the constructor's check is exact
        let q_total: f64 = f1.iter().map(|c| c.0).sum();
        for c in &mut f1 {
            c.0 /= q_total;
        }
        Ok((Self::new(f0)?, Self::new(f1)?))
    }
}

/// `ln Σ p_i e^{a_i^2 τ / 2}`, evaluated without overflow.
pub(crate) fn ln_mixture_mgf(weights: &[f64], scales: &[f64], tau: f64) -> f64 {
    let exps: Vec<f64> = weights
        .iter()
        .zip(scales)
        .map(|(p, a)| p.ln() + 0.5 * a * a * tau)
        .collect();
    let top = exps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    top + exps.iter().map(|e| (e - top).exp()).sum::<f64>().ln()
}

impl Density for NormalMixtureLaw {
    fn pdf(&self, y: f64) -> f64 {
        self.components.iter().map(|(w, n)| w * n.pdf(y)).sum()
    }

    fn cdf(&self, y: f64) -> f64 {
        self.components.iter().map(|(w, n)| w * n.cdf(y)).sum()
    }

    fn sf(&self, y: f64) -> f64 {
        self.components.iter().map(|(w, n)| w * n.sf(y)).sum()
    }

    fn bulk(&self) -> (f64, f64) {
        self.components.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, n)| {
            let (a, b) = n.bulk();
            (lo.min(a), hi.max(b))
        })
    }
}
