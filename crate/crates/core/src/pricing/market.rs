use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Contract economics of a European call.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarketParams {
    /// Spot price at `t0`.
    pub s0: f64,
    pub strike: f64,
    /// Effective annual interest `i`; the continuous rate is `ln(1 + i)`.
    pub interest: f64,
    pub t0: f64,
    #[serde(rename = "T")]
    pub maturity: f64,
}

impl MarketParams {
    pub fn new(s0: f64, strike: f64, interest: f64, t0: f64, maturity: f64) -> Result<Self> {
        let m = Self {
            s0,
            strike,
            interest,
            t0,
            maturity,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.s0, self.strike, self.interest, self.t0, self.maturity]
            .iter()
            .all(|v| v.is_finite());
        if !finite || !(self.s0 > 0.0) || !(self.strike > 0.0) || !(self.maturity > self.t0) || !(self.interest > -1.0) {
            return Err(Error::InvalidParams(format!(
                "market needs s0 > 0, strike > 0, T > t0 and interest > -1, got {self:?}"
            )));
        }
        Ok(())
    }

    /// Continuously compounded rate `r = ln(1 + i)`.
    pub fn rate(&self) -> f64 {
        self.interest.ln_1p()
    }

    /// Time to maturity `T - t0`.
    pub fn tau(&self) -> f64 {
        self.maturity - self.t0
    }

    pub fn discount(&self) -> f64 {
        (-self.rate() * self.tau()).exp()
    }

    /// `X e^{-r(T - t0)}`
    pub fn discounted_strike(&self) -> f64 {
        self.strike * self.discount()
    }

    /// `D = ln(s0 / X) + r(T - t0)`, the log moneyness against the forward.
    pub fn log_moneyness(&self) -> f64 {
        (self.s0 / self.strike).ln() + self.rate() * self.tau()
    }

    /// `E S_T = s0 e^{r(T - t0)}`, the mean under the pricing measure.
    pub fn forward(&self) -> f64 {
        self.s0 / self.discount()
    }

    /// The same contract with another maturity.
    pub fn with_maturity(&self, maturity: f64) -> Result<Self> {
        Self::new(self.s0, self.strike, self.interest, self.t0, maturity)
    }
}

/// Priors of the two hypotheses: the stock (`pi1`) and the discounted strike
/// (`pi0`), in proportion to their present values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PriorWeights {
    pub pi1: f64,
    pub pi0: f64,
}

impl PriorWeights {
    pub fn from_market(m: &MarketParams) -> Self {
        let k = m.discounted_strike();
        let total = m.s0 + k;
        Self {
            pi1: m.s0 / total,
            pi0: k / total,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(MarketParams::new(100.0, 100.0, 0.0, 0.0, 1.0).is_ok());
        assert!(MarketParams::new(0.0, 100.0, 0.0, 0.0, 1.0).is_err());
        assert!(MarketParams::new(100.0, -1.0, 0.0, 0.0, 1.0).is_err());
        assert!(MarketParams::new(100.0, 100.0, -1.0, 0.0, 1.0).is_err());
        assert!(MarketParams::new(100.0, 100.0, 0.0, 1.0, 1.0).is_err());
        assert!(MarketParams::new(100.0, 100.0, f64::NAN, 0.0, 1.0).is_err());
    }

    #[test]
    fn derived_quantities() {
        let m = MarketParams::new(60.0, 70.0, 0.04, 0.0, 0.1).unwrap();
        assert!((m.rate() - 1.04_f64.ln()).abs() < 1e-16);
        assert!((m.discounted_strike() - 70.0 * 1.04_f64.powf(-0.1)).abs() < 1e-12);
        let w = PriorWeights::from_market(&m);
        assert!((w.pi0 + w.pi1 - 1.0).abs() < 1e-15);
        assert!((w.pi1 - 60.0 / (60.0 + m.discounted_strike())).abs() < 1e-15);
    }

    #[test]
    fn serde_uses_capital_t() {
        let m = MarketParams::new(1.0, 1.0, 0.0, 0.0, 1.0).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"T\":1.0"), "{s}");
    }
}
