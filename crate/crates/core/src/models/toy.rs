use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::DiscretePriceLaw;
use crate::pricing::{MarketParams, PriorWeights, PricingResult, CONSISTENCY_TOL};

/// Price of a call on a discrete law and the barriers `d` that attain it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToyPrice {
    pub price: f64,
    /// Every `d` in `(lo, hi]` attains the price.
    pub interval: (f64, f64),
}

/// `max_d { s0 E[(S/ES) 1{S >= d}] - X e^{-rτ} P(S >= d) }`.
///
/// The indicator only changes at atoms, so the maximum is over the sets
/// `{S >= s_k}`. Ties keep the lowest barrier.
pub fn toy_price(law: &DiscretePriceLaw, market: &MarketParams) -> Result<ToyPrice> {
    market.validate()?;
    let atoms = law.atoms();
    let mean = law.mean();
    let k = market.discounted_strike();
    let n = atoms.len();

    // Suffix sums give each candidate set in one pass.
    let mut best = ToyPrice {
        price: 0.0,
        interval: (atoms[n - 1].0, f64::INFINITY),
    };
    let mut stock = 0.0;
    let mut prob = 0.0;
    let mut candidates = Vec::with_capacity(n);
    for j in (0..n).rev() {
        let (s, p) = atoms[j];
        stock += s * p / mean;
        prob += p;
        let lo = if j == 0 { 0.0 } else { atoms[j - 1].0 };
        candidates.push((market.s0 * stock - k * prob, (lo, s)));
    }
    for (value, interval) in candidates.into_iter().rev() {
        if value > best.price || (value == best.price && interval.1 < best.interval.0) {
            best = ToyPrice { price: value, interval };
        }
    }
    Ok(best)
}

/// The full pricing record for a discrete law.
///
/// The risk and tail paths use the step CDFs at `-D`; the third path is the
/// maximization in [`toy_price`]. The barrier assumes `E S_T` is the law's
/// own mean.
pub fn toy_result(law: &DiscretePriceLaw, market: &MarketParams) -> Result<PricingResult> {
    let direct = toy_price(law, market)?;
    let mean = law.mean();
    let k = market.discounted_strike();
    let d_b = k * mean / market.s0;
    let w = PriorWeights::from_market(market);
    let f0 = law.cdf(d_b);
    let f1 = law.tilted_cdf(d_b);
    let r_b = w.pi1 * f1 + w.pi0 * (1.0 - f0);
    let via_risk = market.s0 - r_b * (market.s0 + k);
    let via_tails = market.s0 * (1.0 - f1) - k * (1.0 - f0);
    let tolerance = CONSISTENCY_TOL * (market.s0 + market.strike);
    let values = [via_risk, via_tails, direct.price];
    let spread = values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
        - values.iter().copied().fold(f64::INFINITY, f64::min);
    if !(spread <= tolerance) {
        return Err(Error::Inconsistent {
            via_risk,
            via_tails,
            via_integral: direct.price,
            tolerance,
        });
    }
    Ok(PricingResult {
        price: via_risk,
        bayes_risk: r_b,
        barrier: d_b,
        mean_price: mean,
        price_via_risk: via_risk,
        price_via_tails: via_tails,
        price_via_integral: direct.price,
    })
}
