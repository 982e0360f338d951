//! The Bayes-risk engine.
//!
//! A call is priced by testing `F_0` against its tilt `F_1` with priors in
//! proportion to `s0` and `X e^{-rτ}`. The minimum Bayes risk `R_B` then gives
//! `C = s0 - R_B (s0 + X e^{-rτ})`.

mod engine;
mod identities;
mod market;

pub use engine::{
    bayes_barrier, min_bayes_risk, price_european, price_european_with, risk_curve, PricingResult,
    CONSISTENCY_TOL,
};
pub use identities::{fair_game_residual, hellinger, hellinger_squared, leverage_bound, price_location_scale};
pub use market::{MarketParams, PriorWeights};
