use serde::{Deserialize, Serialize};

use super::hyperbolic::stitched_exp_moment;
use super::{hyperbolic_mgf_base, mixture_near_martingale_factor, ModelSpec};
use crate::error::{Error, Result};

/// Tolerance on `∫ e^x f_t = M^t` for the hyperbolic model.
const HYPERBOLIC_TOL: f64 = 1e-5;
const GBM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MartingaleCheck {
    pub t: f64,
    /// Earlier time of the pair, for the mixture factor.
    pub u: Option<f64>,
    pub value: f64,
    pub expected: f64,
    pub residual: f64,
    /// `None` for report-only rows.
    pub tolerance: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MartingaleReport {
    pub model: String,
    pub checks: Vec<MartingaleCheck>,
}

impl MartingaleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn row(t: f64, u: Option<f64>, value: f64, expected: f64, tolerance: Option<f64>) -> MartingaleCheck {
    let residual = value - expected;
    MartingaleCheck {
        t,
        u,
        value,
        expected,
        residual,
        tolerance,
        passed: tolerance.map_or(true, |tol| residual.abs() <= tol),
    }
}

/// Check that `S_t / E S_t` is a martingale, or report how far it is from one.
///
/// * GBM: `E e^{σ W_t}` against `M^t` with `M = e^{σ^2/2}`.
/// * Hyperbolic: `∫ e^x f_t(x) dx` against `M^t` from inverted densities.
/// * Mixture: the near-martingale factor at `u = t/2`, reported only.
pub fn martingale_check(model: &ModelSpec, t_grid: &[f64]) -> Result<MartingaleReport> {
    model.validate()?;
    if let Some(t) = t_grid.iter().find(|t| !(**t > 0.0) || !t.is_finite()) {
        return Err(Error::InvalidParams(format!("times must be positive, got {t}")));
    }
    let checks = match model {
        ModelSpec::Gbm(g) => t_grid
            .iter()
            .map(|&t| {
                let moment = (0.5 * g.sigma * g.sigma * t).exp();
                let m_t = (0.5 * g.sigma * g.sigma).exp().powf(t);
                row(t, None, moment / m_t, 1.0, Some(GBM_TOL))
            })
            .collect(),
        ModelSpec::Hyperbolic(h) => {
            let m = hyperbolic_mgf_base(h)?;
            t_grid
                .iter()
                .map(|&t| Ok(row(t, None, stitched_exp_moment(h, t)?, m.powf(t), Some(HYPERBOLIC_TOL))))
                .collect::<Result<Vec<_>>>()?
        }
        ModelSpec::Mixture(m) => t_grid
            .iter()
            .map(|&t| Ok(row(t, Some(0.5 * t), mixture_near_martingale_factor(m, 0.5 * t, t)?, 1.0, None)))
            .collect::<Result<Vec<_>>>()?,
        ModelSpec::Discrete(_) => {
            return Err(Error::Unsupported("a single-period discrete law has no time index".into()))
        }
    };
    Ok(MartingaleReport {
        model: model.name().to_string(),
        checks,
    })
}
