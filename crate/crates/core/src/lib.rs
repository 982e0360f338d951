//! Call option prices as minimum Bayes risks.
//!
//! The price of a European call is `C = s0 - R_B (s0 + X e^{-rτ})`, where
//! `R_B` is the smallest error probability of a test between the law of
//! `ln(S_T / E S_T)` and its exponential tilt.
//!
//! ```
//! use bayes_pricer::measures::{log_return_law_of, tilt};
//! use bayes_pricer::models::{bsm_price, GbmSpec, ModelSpec};
//! use bayes_pricer::pricing::{price_european, MarketParams};
//!
//! let market = MarketParams::new(100.0, 100.0, 0.05, 0.0, 1.0)?;
//! let gbm = GbmSpec { sigma: 0.2 };
//! let law = log_return_law_of(&ModelSpec::Gbm(gbm), market.tau())?;
//! let result = price_european(&law, &tilt(&law)?, &market, market.forward())?;
//! assert!((result.price - bsm_price(&gbm, &market)).abs() < 1e-10);
//! # Ok::<(), bayes_pricer::Error>(())
//! ```

pub mod american;
pub mod error;
pub mod measures;
pub mod models;
pub mod numerics;
pub mod pricing;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/bayes-risk.md")]
    pub struct BayesRisk;
    #[doc = include_str!("../../../book/src/models.md")]
    pub struct Models;
    #[doc = include_str!("../../../book/src/hyperbolic.md")]
    pub struct Hyperbolic;
    #[doc = include_str!("../../../book/src/american.md")]
    pub struct American;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
    #[doc = include_str!("../../../book/src/validation.md")]
    pub struct Validation;
}
