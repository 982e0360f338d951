use serde::{Deserialize, Serialize};

use bayes_pricer::american::{price_american, AmericanResult};
use bayes_pricer::measures::{log_return_law_of, tilt};
use bayes_pricer::models::{bsm_price, hyperbolic_price_with, mixture_price, toy_price, toy_result, ModelSpec};
use bayes_pricer::numerics::QuadratureSpec;
use bayes_pricer::pricing::{price_european_with, MarketParams, PricingResult, CONSISTENCY_TOL};
use bayes_pricer::Error;

use crate::config::RunConfig;
use crate::error::CliError;

/// Agreement required between the hyperbolic engine price and the
/// pointwise-inversion price.
pub const HYPERBOLIC_DUAL_TOL: f64 = 1e-5;

/// One priced contract, flat so that JSON and CSV carry the same fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceReport {
    pub model: String,
    /// The model's own price formula when it has one, otherwise the engine.
    pub price: f64,
    pub closed_form: Option<f64>,
    pub bayes_risk: f64,
    pub barrier: f64,
    pub mean_price: f64,
    pub price_via_risk: f64,
    pub price_via_tails: f64,
    pub price_via_integral: f64,
    /// Discrete laws only: every barrier in `(lo, hi]` attains the price.
    pub barrier_lo: Option<f64>,
    pub barrier_hi: Option<f64>,
}

fn engine(model: &ModelSpec, market: &MarketParams, quad: &QuadratureSpec) -> Result<PricingResult, Error> {
    let law = log_return_law_of(model, market.tau())?;
    price_european_with(&law, &tilt(&law)?, market, market.forward(), quad)
}

fn agree(result: &PricingResult, closed: f64, tolerance: f64) -> Result<(), Error> {
    if (result.price - closed).abs() <= tolerance {
        Ok(())
    } else {
        Err(Error::Inconsistent {
            via_risk: result.price_via_risk,
            via_tails: result.price_via_tails,
            via_integral: closed,
            tolerance,
        })
    }
}

pub fn price(config: &RunConfig) -> Result<PriceReport, CliError> {
    let m = &config.market;
    let quad = &config.quadrature;
    let scale = m.s0 + m.strike;
    let (result, closed, interval) = match &config.model {
        ModelSpec::Discrete(law) => {
            let direct = toy_price(law, m)?;
            (toy_result(law, m)?, Some(direct.price), Some(direct.interval))
        }
        model => {
            let result = engine(model, m, quad)?;
            let closed = match model {
                ModelSpec::Gbm(g) => Some(bsm_price(g, m)),
                ModelSpec::Mixture(mix) if m.t0 == 0.0 => Some(mixture_price(mix, m)?),
                ModelSpec::Hyperbolic(h) if m.t0 == 0.0 => Some(hyperbolic_price_with(h, m, quad)?),
                _ => None,
            };
            if let Some(c) = closed {
                let tol = match model {
                    ModelSpec::Hyperbolic(_) => HYPERBOLIC_DUAL_TOL,
                    _ => CONSISTENCY_TOL * scale,
                };
                agree(&result, c, tol)?;
            }
            (result, closed, None)
        }
    };
    Ok(PriceReport {
        model: config.model.name().to_string(),
        price: closed.unwrap_or(result.price),
        closed_form: closed,
        bayes_risk: result.bayes_risk,
        barrier: result.barrier,
        mean_price: result.mean_price,
        price_via_risk: result.price_via_risk,
        price_via_tails: result.price_via_tails,
        price_via_integral: result.price_via_integral,
        barrier_lo: interval.map(|i| i.0),
        barrier_hi: interval.map(|i| i.1),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmericanReport {
    pub model: String,
    #[serde(flatten)]
    pub result: AmericanResult,
    /// The European price with the same maturity, a lower bound.
    pub european: f64,
}

pub fn american(config: &RunConfig, grid_size: usize) -> Result<AmericanReport, CliError> {
    let m = &config.market;
    let result = price_american(&config.model, m, grid_size)?;
    let european = engine(&config.model, m, &config.quadrature)?.price;
    Ok(AmericanReport {
        model: config.model.name().to_string(),
        result,
        european,
    })
}
