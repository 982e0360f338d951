use approx::{assert_abs_diff_eq, assert_relative_eq};
use bayes_pricer::models::{hyperbolic_cf, hyperbolic_pdf, HyperbolicSpec};
use bayes_pricer::numerics::{
    bessel_k0, bessel_k1, fourier_cosine_density, integrate, integrate_points, minimize_scalar, std_normal_cdf,
    std_normal_pdf, QuadratureSpec,
};

fn tight() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-18,
        rel_tol: 1e-13,
        max_subdivisions: 10_000,
        ..QuadratureSpec::default()
    }
}

// beyond t = 30 the integrands are below 1e-300 for every z >= 1e-2
const T_MAX: f64 = 30.0;

/// K_1(z) = ∫_0^∞ e^{-z cosh t} cosh t dt
fn k1_oracle(z: f64) -> f64 {
    integrate(|t: f64| (-z * t.cosh()).exp() * t.cosh(), 0.0, T_MAX, &tight()).unwrap()
}

/// K_0(z) = ∫_0^∞ e^{-z cosh t} dt
fn k0_oracle(z: f64) -> f64 {
    integrate(|t: f64| (-z * t.cosh()).exp(), 0.0, T_MAX, &tight()).unwrap()
}

#[test]
fn k1_matches_integral_representation() {
    for z in [0.5, 1.0, 2.0, 5.0] {
        assert_relative_eq!(bessel_k1(z).unwrap(), k1_oracle(z), max_relative = 1e-12);
    }
    for i in 0..=40 {
        let z = 1e-2 * 5000f64.powf(i as f64 / 40.0);
        assert_relative_eq!(bessel_k1(z).unwrap(), k1_oracle(z), max_relative = 1e-10);
    }
}

#[test]
fn k1_is_minus_the_derivative_of_k0() {
    for z in [1.0, 2.0] {
        let h = 1e-4;
        let fd = -(k0_oracle(z + h) - k0_oracle(z - h)) / (2.0 * h);
        assert_relative_eq!(bessel_k1(z).unwrap(), fd, max_relative = 1e-7);
        assert_relative_eq!(bessel_k0(z).unwrap(), k0_oracle(z), max_relative = 1e-12);
    }
}

#[test]
fn k1_decays() {
    assert!(bessel_k1(100.0).unwrap() < 1e-40);
}

#[test]
fn normal_cdf_matches_quadrature() {
    for x in [-2.0, -1.0, 0.5, 3.0] {
        let q = integrate(std_normal_pdf, f64::NEG_INFINITY, x, &tight()).unwrap();
        assert_abs_diff_eq!(std_normal_cdf(x), q, epsilon = 1e-15);
    }
    assert_eq!(std_normal_cdf(0.0), 0.5);
    assert_eq!(std_normal_cdf(40.0), 1.0);
}

#[test]
fn hyperbolic_density_self_normalizes() {
    let h = HyperbolicSpec { zeta: 2.0, delta: 1.0 };
    let pts: Vec<f64> = (-5..=5).map(f64::from).collect();
    let v = integrate_points(|x| hyperbolic_pdf(&h, x), f64::NEG_INFINITY, f64::INFINITY, &pts, &QuadratureSpec::default())
        .unwrap();
    assert_abs_diff_eq!(v, 1.0, epsilon = 1e-8);
}

#[test]
fn inverted_hyperbolic_density_integrates_to_one() {
    let h = HyperbolicSpec { zeta: 2.0, delta: 1.0 };
    let spec = QuadratureSpec::default();
    let outer = QuadratureSpec::with_tolerances(1e-9, 1e-9);
    let f = |x: f64| fourier_cosine_density(|u| hyperbolic_cf(&h, u).powf(0.25), x, &spec).unwrap();
    let pts: Vec<f64> = (-8..=8).map(|k| 0.25 * k as f64).collect();
    let v = integrate_points(f, -40.0, 40.0, &pts, &outer).unwrap();
    assert_abs_diff_eq!(v, 1.0, epsilon = 1e-6);
}

#[test]
fn gaussian_inversion_on_a_grid() {
    let spec = QuadratureSpec::default();
    for i in 0..=100 {
        let x = -5.0 + 0.1 * i as f64;
        let f = fourier_cosine_density(|u| (-0.5 * u * u).exp(), x, &spec).unwrap();
        assert_abs_diff_eq!(f, std_normal_pdf(x), epsilon = 1e-8);
    }
}

#[test]
fn quadrature_is_exact_on_quintics() {
    let spec = QuadratureSpec::default();
    for k in 0..=5 {
        let v = integrate(|x: f64| x.powi(k), -1.0, 2.0, &spec).unwrap();
        let exact = (2f64.powi(k + 1) - (-1f64).powi(k + 1)) / (k + 1) as f64;
        assert_abs_diff_eq!(v, exact, epsilon = 1e-12);
    }
}

#[test]
fn minimizer_on_convex_functions() {
    for (c, w) in [(0.3, 1.0), (-2.5, 4.0), (7.1, 0.2)] {
        let (x, _) = minimize_scalar(|x: f64| w * (x - c).powi(2) + (x - c).powi(4), -10.0, 10.0, 1e-9);
        assert!((x - c).abs() <= 1e-8, "{x} vs {c}");
    }
}
