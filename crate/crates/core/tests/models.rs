use approx::assert_abs_diff_eq;
use bayes_pricer::measures::{log_return_law_of, quadrature_tilt, tilt};
use bayes_pricer::models::{
    bsm_price, hyperbolic_density, hyperbolic_price, mixture_price, GbmSpec, HyperbolicLaw, HyperbolicSpec,
    MixtureSpec, ModelSpec,
};
use bayes_pricer::numerics::{integrate_points, std_normal_cdf, QuadratureSpec};
use bayes_pricer::pricing::{price_european, MarketParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn example_two() -> (MixtureSpec, MarketParams) {
    (
        MixtureSpec {
            weights: vec![0.5, 0.5],
            scales: vec![1.0, 2.0],
        },
        MarketParams::new(60.0, 70.0, 0.04, 0.0, 0.1).unwrap(),
    )
}

#[test]
fn mixture_closed_form_matches_engine() {
    let (mix, m) = example_two();
    let law = log_return_law_of(&ModelSpec::Mixture(mix.clone()), m.tau()).unwrap();
    let r = price_european(&law, &tilt(&law).unwrap(), &m, m.forward()).unwrap();
    assert_abs_diff_eq!(mixture_price(&mix, &m).unwrap(), r.price, epsilon = 1e-8);
}

#[test]
fn mixture_closed_form_matches_raw_quadrature() {
    let (mix, m) = example_two();
    let t = m.maturity;
    // f0 written out here from scratch: Σ p N(-ln G, a^2 t)
    let g: f64 = mix.weights.iter().zip(&mix.scales).map(|(p, a)| p * (a * a * t / 2.0).exp()).sum();
    // e^{k y} f0(y), with the exponent folded in so the far tail stays finite
    let weighted = |k: f64, y: f64| -> f64 {
        mix.weights
            .iter()
            .zip(&mix.scales)
            .map(|(p, a)| {
                let sd = a * t.sqrt();
                let z = (y + g.ln()) / sd;
                p * (k * y - 0.5 * z * z).exp() / (sd * (2.0 * std::f64::consts::PI).sqrt())
            })
            .sum()
    };
    let lower = -m.log_moneyness();
    let spec = QuadratureSpec::default();
    let pts: Vec<f64> = (-10..=10).map(|k| -g.ln() + 0.1 * k as f64).collect();
    let up1 = integrate_points(|y| weighted(1.0, y), lower, f64::INFINITY, &pts, &spec).unwrap();
    let up0 = integrate_points(|y| weighted(0.0, y), lower, f64::INFINITY, &pts, &spec).unwrap();
    let oracle = m.s0 * up1 - m.discounted_strike() * up0;
    assert_abs_diff_eq!(mixture_price(&mix, &m).unwrap(), oracle, epsilon = 1e-7);
}

#[test]
fn mixture_single_component_equals_bsm() {
    let m = MarketParams::new(60.0, 70.0, 0.04, 0.0, 0.1).unwrap();
    for sigma in [0.1, 1.0, 2.3] {
        let mix = MixtureSpec { weights: vec![1.0], scales: vec![sigma] };
        assert_abs_diff_eq!(mixture_price(&mix, &m).unwrap(), bsm_price(&GbmSpec { sigma }, &m), epsilon = 1e-12);
    }
}

#[test]
fn bsm_is_the_table_comparator() {
    // variance p a1^2 + (1-p) a2^2 with p = 1/2, a = (1, 2)
    let m = MarketParams::new(60.0, 70.0, 0.04, 0.0, 0.1).unwrap();
    let sigma = 2.5_f64.sqrt();
    let law = log_return_law_of(&ModelSpec::Gbm(GbmSpec { sigma }), m.tau()).unwrap();
    let r = price_european(&law, &tilt(&law).unwrap(), &m, m.forward()).unwrap();
    assert_abs_diff_eq!(bsm_price(&GbmSpec { sigma }, &m), r.price, epsilon = 1e-10);
}

#[test]
fn generic_tilt_agrees_with_closed_form_for_mixture() {
    let (mix, m) = example_two();
    let law = log_return_law_of(&ModelSpec::Mixture(mix), m.tau()).unwrap();
    let closed = price_european(&law, &tilt(&law).unwrap(), &m, m.forward()).unwrap();
    let quad = price_european(&law, &quadrature_tilt(&law, &QuadratureSpec::default()).unwrap(), &m, m.forward())
        .unwrap();
    assert_abs_diff_eq!(closed.price, quad.price, epsilon = 1e-8 * (m.s0 + m.strike));
}

#[test]
fn hyperbolic_paths_agree_and_respect_bounds() {
    for (zeta, delta) in [(2.0, 1.0), (3.0, 0.5), (1.5, 1.2)] {
        let h = HyperbolicSpec { zeta, delta };
        for (s0, x, i, t) in [(100.0, 100.0, 0.0, 1.0), (60.0, 70.0, 0.04, 0.25), (150.0, 80.0, 0.08, 0.5)] {
            let m = MarketParams::new(s0, x, i, 0.0, t).unwrap();
            let law = log_return_law_of(&ModelSpec::Hyperbolic(h), t).unwrap();
            let r = price_european(&law, &tilt(&law).unwrap(), &m, m.forward()).unwrap();
            let direct = hyperbolic_price(&h, &m).unwrap();
            assert!((r.price - direct).abs() < 1e-5, "{h:?} {m:?}: {} vs {direct}", r.price);
            assert!(r.price >= (s0 - m.discounted_strike()).max(0.0) - 1e-8 && r.price <= s0 + 1e-8);
        }
    }
}

#[test]
fn hyperbolic_vanishing_strike() {
    let h = HyperbolicSpec { zeta: 2.0, delta: 1.0 };
    let m = MarketParams::new(100.0, 1e-9, 0.0, 0.0, 1.0).unwrap();
    assert!((hyperbolic_price(&h, &m).unwrap() - 100.0).abs() < 1e-5);
}

#[test]
fn inverted_density_is_nonnegative_and_normalized() {
    let quad = QuadratureSpec::default();
    for (zeta, delta, t) in [(2.0, 1.0, 0.25), (3.0, 0.5, 1.0), (1.5, 1.2, 0.25)] {
        let h = HyperbolicSpec { zeta, delta };
        for k in -60..=60 {
            let x = 0.25 * k as f64;
            assert!(hyperbolic_density(&h, t, x, &quad).unwrap() >= -1e-8);
        }
        let law = HyperbolicLaw::new(h, t).unwrap();
        let f0 = law.f0();
        let (lo, hi) = f0.window();
        let pts: Vec<f64> = (-8..=8).map(|k| -law.shift() + delta * t * k as f64).collect();
        let mass = integrate_points(|y| bayes_pricer::measures::Density::pdf(f0.as_ref(), y), lo, hi, &pts, &quad).unwrap();
        assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-8);
    }
}

/// Random parameters for every family; the engine rejects any instance whose
/// three price paths disagree by more than 1e-8 (s0 + X).
#[test]
fn three_way_consistency_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    let market = |rng: &mut ChaCha8Rng| {
        MarketParams::new(
            rng.gen_range(10.0..200.0),
            rng.gen_range(10.0..200.0),
            rng.gen_range(0.0..0.1),
            0.0,
            rng.gen_range(0.1..2.0),
        )
        .unwrap()
    };
    for _ in 0..100 {
        let m = market(&mut rng);
        let sigma = rng.gen_range(0.05..2.0);
        let a1 = rng.gen_range(0.05..2.0);
        let a2 = rng.gen_range(0.05..4.0);
        let p = rng.gen_range(0.01..0.99);
        let zeta = rng.gen_range(1.5..4.0);
        let delta = zeta * rng.gen_range(0.1..0.8);
        for model in [
            ModelSpec::Gbm(GbmSpec { sigma }),
            ModelSpec::Mixture(MixtureSpec { weights: vec![p, 1.0 - p], scales: vec![a1, a2] }),
            ModelSpec::Hyperbolic(HyperbolicSpec { zeta, delta }),
        ] {
            let law = log_return_law_of(&model, m.tau()).unwrap();
            let r = price_european(&law, &tilt(&law).unwrap(), &m, m.forward());
            assert!(r.is_ok(), "{model:?} {m:?}: {r:?}");
        }
    }
}

#[test]
fn mixture_weights_of_the_tilt() {
    // the generic engine and Φ-by-hand agree on F1(-D)
    let (mix, m) = example_two();
    let t = m.maturity;
    let law = log_return_law_of(&ModelSpec::Mixture(mix.clone()), t).unwrap();
    let f1 = tilt(&law).unwrap();
    let g: f64 = mix.weights.iter().zip(&mix.scales).map(|(p, a)| p * (a * a * t / 2.0).exp()).sum();
    let y = -m.log_moneyness();
    let by_hand: f64 = mix
        .weights
        .iter()
        .zip(&mix.scales)
        .map(|(p, a)| {
            let q = p * (a * a * t / 2.0).exp() / g;
            q * std_normal_cdf((y + g.ln() - a * a * t) / (a * t.sqrt()))
        })
        .sum();
    assert_abs_diff_eq!(f1.cdf(y), by_hand, epsilon = 1e-15);
}
