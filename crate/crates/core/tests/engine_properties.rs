use approx::assert_abs_diff_eq;
use bayes_pricer::measures::{log_return_law_of, tilt};
use bayes_pricer::models::{bsm_price, GbmSpec, ModelSpec};
use bayes_pricer::numerics::QuadratureSpec;
use bayes_pricer::pricing::{
    fair_game_residual, hellinger_squared, leverage_bound, min_bayes_risk, price_european, MarketParams,
    PricingResult,
};
use proptest::prelude::*;

fn gbm_result(sigma: f64, m: &MarketParams) -> PricingResult {
    let law = log_return_law_of(&ModelSpec::Gbm(GbmSpec { sigma }), m.tau()).unwrap();
    price_european(&law, &tilt(&law).unwrap(), m, m.forward()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engine_recovers_bsm(
        sigma in 0.05f64..2.0,
        s0 in 10f64..200.0,
        x in 10f64..200.0,
        i in 0f64..0.1,
        tau in 0.01f64..2.0,
    ) {
        let m = MarketParams::new(s0, x, i, 0.0, tau).unwrap();
        let r = gbm_result(sigma, &m);
        let bsm = bsm_price(&GbmSpec { sigma }, &m);
        prop_assert!((r.price - bsm).abs() <= 1e-8 * (s0 + x));
        prop_assert!(r.bayes_risk > 0.0 && r.bayes_risk < 1.0);
        prop_assert!(r.price >= (s0 - m.discounted_strike()).max(0.0) - 1e-8);
        prop_assert!(r.price <= s0 + 1e-8);
        prop_assert!(fair_game_residual(&r, &m).abs() <= 1e-8 * (s0 + x));
    }

    #[test]
    fn leverage_bound_holds(p in 0f64..=1.0, sigma in 0.05f64..2.0, tau in 0.01f64..2.0) {
        let m = MarketParams::new(100.0, 90.0, 0.03, 0.0, tau).unwrap();
        let r = gbm_result(sigma, &m);
        let (ratio, holds) = leverage_bound(&r, &m, p).unwrap();
        prop_assert!(holds, "ratio {} below R_B {}", ratio, r.bayes_risk);
    }

    #[test]
    fn price_monotone_on_gbm(
        sigma in 0.1f64..1.5,
        s0 in 20f64..150.0,
        x in 20f64..150.0,
        tau in 0.05f64..2.0,
    ) {
        let h = 1e-4;
        let m = MarketParams::new(s0, x, 0.02, 0.0, tau).unwrap();
        let c = gbm_result(sigma, &m).price;
        let higher_strike = gbm_result(sigma, &MarketParams { strike: x + h, ..m }).price;
        let higher_spot = gbm_result(sigma, &MarketParams { s0: s0 + h, ..m }).price;
        let higher_vol = gbm_result(sigma + h, &m).price;
        let slack = 1e-12 * (s0 + x);
        prop_assert!(higher_strike <= c + slack && higher_spot >= c - slack && higher_vol >= c - slack);
        // away from the money the effect of a bump can sit below rounding
        let time_value = c - (s0 - m.discounted_strike()).max(0.0);
        if time_value > 1e-6 {
            prop_assert!(higher_strike < c && higher_spot > c && higher_vol > c);
        }
    }
}

#[test]
fn hellinger_and_risk_move_together_in_volatility() {
    let m = MarketParams::new(100.0, 100.0, 0.0, 0.0, 1.0).unwrap();
    let spec = QuadratureSpec::default();
    let mut last = (0.0, 1.0);
    for sigma in [0.1, 0.2, 0.5, 1.0, 2.0] {
        let law = log_return_law_of(&ModelSpec::Gbm(GbmSpec { sigma }), 1.0).unwrap();
        let t = tilt(&law).unwrap();
        let h2 = hellinger_squared(law.base().as_ref(), t.density().as_ref(), &spec).unwrap();
        let r_b = min_bayes_risk(&law, &t, &m);
        assert_abs_diff_eq!(h2, 2.0 * (1.0 - (-sigma * sigma / 8.0).exp()), epsilon = 1e-8);
        assert!(h2 > last.0 && r_b < last.1, "sigma = {sigma}");
        last = (h2, r_b);
    }
}

#[test]
fn near_deterministic_stock() {
    let m = MarketParams::new(100.0, 80.0, 0.0, 0.0, 1.0).unwrap();
    assert!((gbm_result(1e-6, &m).price - 20.0).abs() < 1e-6);
}
