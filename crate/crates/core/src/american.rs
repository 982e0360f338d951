//! American call price as the best European testing problem over maturities:
//! `C_A = s0 - inf_{t in (t0, T]} (s0 + X e^{-r(t - t0)}) R_{B,t}`.

use std::cell::RefCell;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{log_return_law_of, tilt};
use crate::models::ModelSpec;
use crate::numerics::minimize_scalar_with_grid;
use crate::pricing::{min_bayes_risk, MarketParams};

pub const MIN_GRID: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiskSample {
    pub t: f64,
    pub bayes_risk: f64,
    pub objective: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmericanResult {
    pub price: f64,
    pub argmin_t: f64,
    pub risk_curve_samples: Vec<RiskSample>,
}

/// `R_{B,t}` and the objective `(s0 + X e^{-r(t - t0)}) R_{B,t}` for maturity `t`.
pub fn objective_at(model: &ModelSpec, market: &MarketParams, t: f64) -> Result<RiskSample> {
    let eval = || -> Result<RiskSample> {
        let m = market.with_maturity(t)?;
        let law = log_return_law_of(model, m.tau())?;
        let r_b = min_bayes_risk(&law, &tilt(&law)?, &m);
        Ok(RiskSample {
            t,
            bayes_risk: r_b,
            objective: (m.s0 + m.discounted_strike()) * r_b,
        })
    };
    eval().map_err(|e| Error::AtMaturity { t, source: Box::new(e) })
}

/// Smallest maturity tried: the interval `(t0, T]` is open on the left.
pub fn first_maturity(market: &MarketParams) -> f64 {
    let tau = market.tau();
    market.t0 + (tau / 1e6).max(1e-6).min(0.5 * tau)
}

pub fn price_american(model: &ModelSpec, market: &MarketParams, grid_size: usize) -> Result<AmericanResult> {
    market.validate()?;
    model.validate()?;
    if grid_size < MIN_GRID {
        return Err(Error::InvalidParams(format!("grid_size must be at least {MIN_GRID}, got {grid_size}")));
    }
    let lo = first_maturity(market);
    let hi = market.maturity;
    let node = |k: usize| {
        if k == grid_size - 1 {
            hi
        } else {
            lo + (hi - lo) * k as f64 / (grid_size - 1) as f64
        }
    };
    let mut samples = Vec::with_capacity(grid_size);
    for k in 0..grid_size {
        samples.push(objective_at(model, market, node(k))?);
    }
    let best = samples
        .iter()
        .enumerate()
        .fold(0, |b, (k, s)| if s.objective < samples[b].objective { k } else { b });

    let mut argmin = samples[best].t;
    let mut min = samples[best].objective;
    let a = node(best.saturating_sub(1));
    let b = node((best + 1).min(grid_size - 1));
    if b > a {
        let failure = RefCell::new(None);
        let (t, v) = minimize_scalar_with_grid(
            |t| match objective_at(model, market, t) {
                Ok(s) => s.objective,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    f64::NAN
                }
            },
            a,
            b,
            1e-10 * (hi - market.t0),
            3,
        );
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        if v < min {
            argmin = t;
            min = v;
        }
    }
    Ok(AmericanResult {
        price: market.s0 - min,
        argmin_t: argmin,
        risk_curve_samples: samples,
    })
}
