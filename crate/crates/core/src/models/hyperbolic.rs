//! Hyperbolic Lévy motion.
//!
//! `Z_1` has density `h(x) = exp(-ζ √(1 + (x/δ)^2)) / (2 δ K_1(ζ))` and
//! characteristic function
//! `φ(u) = (ζ / K_1(ζ)) K_1(√(ζ^2 + δ^2 u^2)) / √(ζ^2 + δ^2 u^2)`.
//! `Z_T` has transform `φ^T`, which has no closed inverse except at `T = 1`.
//!
//! The law used for pricing is that of `Y = Z_T - T ln M` with `M = E e^{Z_1}`,
//! and its tilt `e^y f_0(y)`. Both tails of `Z_T` decay like `e^{-α|x|}` with
//! `α = ζ/δ`, so the tilt's right tail decays only like `e^{-(α - 1) x}`.
//! Multiplying a real-axis inversion of `f_0` by `e^y` would amplify its
//! rounding error without bound, so the tilt is inverted directly from
//! `φ(u - i)^T`, the transform on the shifted contour.

use std::sync::Arc;

use num_complex::Complex64;

use super::HyperbolicSpec;
use crate::error::{Error, Result};
use crate::measures::Density;
use crate::numerics::bessel::{bessel_k1_scaled, ln_bessel_k1, ln_bessel_k1_complex};
use crate::numerics::{fourier_cosine_density, integrate_points, PeriodizedInversion, QuadratureSpec};
use crate::pricing::MarketParams;

/// Relative tail mass left outside a series window.
const WINDOW_EPS: f64 = 1e-16;
/// Relative tail mass outside the bulk.
const BULK_EPS: f64 = 1e-9;
/// Relative tail mass ignored by the pointwise-inversion price.
const DIRECT_EPS: f64 = 1e-13;
const CHERNOFF_GRID: usize = 256;
const COEFF_CUTOFF: f64 = 1e-18;
const MAX_FREQUENCY: f64 = 1e7;

/// `ln E e^{s Z_1}` for `|s| < ζ/δ`.
fn ln_mgf(spec: &HyperbolicSpec, s: f64) -> Result<f64> {
    let r2 = spec.zeta * spec.zeta - spec.delta * spec.delta * s * s;
    if !(r2 > 0.0) {
        return Err(Error::Domain(format!(
            "exponential moment of order {s} diverges (needs |s| < {})",
            spec.tail_rate()
        )));
    }
    let r = r2.sqrt();
    Ok(spec.zeta.ln() - ln_bessel_k1(spec.zeta)? + ln_bessel_k1(r)? - r.ln())
}

/// `ln φ(w)` on the strip `|Im w| < ζ/δ`.
fn ln_cf_complex(spec: &HyperbolicSpec, w: Complex64) -> Result<Complex64> {
    let r = (spec.zeta * spec.zeta + spec.delta * spec.delta * w * w).sqrt();
    Ok(spec.zeta.ln() - ln_bessel_k1(spec.zeta)? + ln_bessel_k1_complex(r)? - r.ln())
}

/// `M = E e^{Z_1}`.
pub fn hyperbolic_mgf_base(spec: &HyperbolicSpec) -> Result<f64> {
    spec.validate()?;
    ln_mgf(spec, 1.0).map(f64::exp)
}

/// Characteristic function `φ(u)` of `Z_1`.
pub fn hyperbolic_cf(spec: &HyperbolicSpec, u: f64) -> f64 {
    let r = spec.zeta.hypot(spec.delta * u);
    match (ln_bessel_k1(spec.zeta), ln_bessel_k1(r)) {
        (Ok(a), Ok(b)) => (spec.zeta.ln() - a + b - r.ln()).exp(),
        _ => f64::NAN,
    }
}

/// Density `h(x)` of `Z_1`.
pub fn hyperbolic_pdf(spec: &HyperbolicSpec, x: f64) -> f64 {
    let k1s = bessel_k1_scaled(spec.zeta).unwrap_or(f64::NAN);
    let s = (x / spec.delta).hypot(1.0);
    (-spec.zeta * (s - 1.0)).exp() / (2.0 * spec.delta * k1s)
}

/// Density of `Z_t` by pointwise inversion of `φ^t` along the real axis.
pub fn hyperbolic_density(spec: &HyperbolicSpec, t: f64, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    fourier_cosine_density(|u| hyperbolic_cf(spec, u).powf(t), x, quad)
}

/// Radius beyond which the measure `e^{βx} f_t(x) dx` keeps at most `eps` of
/// its mass, on the right (`side = 1`) or the left (`side = -1`).
///
/// Chernoff: the mass beyond `x` is at most `E_β e^{γ Z} e^{-γ x}`, minimized
/// over `γ` on a grid.
fn chernoff_radius(spec: &HyperbolicSpec, t: f64, beta: f64, side: f64, eps: f64) -> Result<f64> {
    let alpha = spec.tail_rate();
    let g_max = if side > 0.0 { alpha - beta } else { alpha + beta };
    let base = t * ln_mgf(spec, beta)?;
    let mut best = f64::INFINITY;
    for j in 1..=CHERNOFF_GRID {
        let g = g_max * j as f64 / (CHERNOFF_GRID + 1) as f64;
        let v = (t * ln_mgf(spec, beta + side * g)? - base - eps.ln()) / g;
        best = best.min(v);
    }
    Ok(best.max(0.0))
}

/// The measure `e^{βx} f_t(x) dx` recovered by Fourier series, in the
/// coordinate `y = x - shift` and scaled by `e^{-β shift}`.
///
/// Its transform is `φ(u - iβ)^t e^{-β shift - iu shift}`. Outside the window
/// the density is reported as zero.
#[derive(Debug, Clone)]
pub struct SeriesDensity {
    inv: PeriodizedInversion,
    bulk: (f64, f64),
    mass: f64,
}

impl SeriesDensity {
    pub fn new(spec: &HyperbolicSpec, t: f64, beta: f64, shift: f64) -> Result<Self> {
        spec.validate()?;
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidParams(format!("time must be positive, got {t}")));
        }
        let right = chernoff_radius(spec, t, beta, 1.0, WINDOW_EPS)?;
        let left = chernoff_radius(spec, t, beta, -1.0, WINDOW_EPS)?;
        let bulk = (
            -chernoff_radius(spec, t, beta, -1.0, BULK_EPS)? - shift,
            chernoff_radius(spec, t, beta, 1.0, BULK_EPS)? - shift,
        );
        let psi = |u: f64| -> Result<Complex64> {
            let l = ln_cf_complex(spec, Complex64::new(u, -beta))?;
            Ok((t * l - Complex64::new(beta * shift, u * shift)).exp())
        };
        let inv = PeriodizedInversion::new(psi, -left - shift, left + right, COEFF_CUTOFF, MAX_FREQUENCY)?;
        let mass = (t * ln_mgf(spec, beta)? - beta * shift).exp();
        Ok(Self { inv, bulk, mass })
    }

    /// Total mass, `E e^{β Z_t} e^{-β shift}`.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn window(&self) -> (f64, f64) {
        self.inv.window()
    }

    pub fn terms(&self) -> usize {
        self.inv.terms()
    }
}

impl Density for SeriesDensity {
    fn pdf(&self, y: f64) -> f64 {
        let (lo, hi) = self.inv.window();
        if y < lo || y > hi {
            0.0
        } else {
            self.inv.density(y)
        }
    }

    fn cdf(&self, y: f64) -> f64 {
        self.inv.cdf(y)
    }

    fn sf(&self, y: f64) -> f64 {
        let (lo, hi) = self.inv.window();
        if y <= lo {
            self.mass
        } else if y >= hi {
            0.0
        } else {
            self.mass - self.inv.cdf(y)
        }
    }

    fn support(&self) -> (f64, f64) {
        self.inv.window()
    }

    fn bulk(&self) -> (f64, f64) {
        self.bulk
    }
}

/// The pair `(f_0, f_1)` for `Y = Z_T - T ln M`.
#[derive(Debug, Clone)]
pub struct HyperbolicLaw {
    spec: HyperbolicSpec,
    t: f64,
    ln_m: f64,
    f0: Arc<SeriesDensity>,
    f1: Arc<SeriesDensity>,
}

impl HyperbolicLaw {
    pub fn new(spec: HyperbolicSpec, t: f64) -> Result<Self> {
        spec.validate()?;
        let ln_m = ln_mgf(&spec, 1.0)?;
        let shift = t * ln_m;
        let f0 = Arc::new(SeriesDensity::new(&spec, t, 0.0, shift)?);
        let f1 = Arc::new(SeriesDensity::new(&spec, t, 1.0, shift)?);
        Ok(Self { spec, t, ln_m, f0, f1 })
    }

    pub fn spec(&self) -> HyperbolicSpec {
        self.spec
    }

    pub fn horizon(&self) -> f64 {
        self.t
    }

    /// `T ln M`, the shift that centres `e^Y`.
    pub fn shift(&self) -> f64 {
        self.t * self.ln_m
    }

    pub fn f0(&self) -> &Arc<SeriesDensity> {
        &self.f0
    }

    pub fn f1(&self) -> &Arc<SeriesDensity> {
        &self.f1
    }

    pub fn into_pair(self) -> (Arc<dyn Density>, Arc<dyn Density>) {
        (self.f0, self.f1)
    }
}

/// Price by integrating the pointwise-inverted density directly:
/// `s0 ∫_{-D}^∞ e^y f_0 - X e^{-rT} ∫_{-D}^∞ f_0`, with `f_0(y) = f_T(y + T ln M)`.
///
/// The first integral is taken as `1 - ∫_{-∞}^{-D} e^y f_0`, which keeps the
/// weight `e^y` below `e^{-D}` on the whole range.
pub fn hyperbolic_price(spec: &HyperbolicSpec, market: &MarketParams) -> Result<f64> {
    let quad = QuadratureSpec::with_tolerances(1e-9, 1e-9);
    hyperbolic_price_with(spec, market, &quad)
}

pub fn hyperbolic_price_with(spec: &HyperbolicSpec, market: &MarketParams, quad: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    market.validate()?;
    if market.t0 != 0.0 {
        return Err(Error::InvalidParams(format!(
            "hyperbolic prices are written for t0 = 0; shift the time origin (got t0 = {})",
            market.t0
        )));
    }
    let t = market.maturity;
    let shift = t * ln_mgf(spec, 1.0)?;
    let a = -market.log_moneyness();
    let inner = QuadratureSpec::default();
    let f0 = |y: f64| hyperbolic_density(spec, t, y + shift, &inner);

    // Both integrals stop where the Chernoff bound puts the remaining mass
    // below DIRECT_EPS.
    let tilt_lo = -chernoff_radius(spec, t, 1.0, -1.0, DIRECT_EPS)? - shift;
    let base_lo = -chernoff_radius(spec, t, 0.0, -1.0, DIRECT_EPS)? - shift;
    let base_hi = chernoff_radius(spec, t, 0.0, 1.0, DIRECT_EPS)? - shift;
    let scale = spec.delta * t.max(0.05);
    let points: Vec<f64> = (-8..=8).map(|k| -shift + scale * k as f64).collect();

    let checked = |y: f64, weight: f64| -> f64 {
        match f0(y) {
            Ok(v) => weight * v,
            Err(_) => f64::NAN,
        }
    };

    let below = if a <= tilt_lo {
        0.0
    } else {
        integrate_points(|y| checked(y, y.exp()), tilt_lo, a, &points, quad)?
    };
    let first = 1.0 - below;
    let second = if a >= base_hi {
        0.0
    } else {
        integrate_points(|y| checked(y, 1.0), a.max(base_lo), base_hi, &points, quad)?
    };
    Ok(market.s0 * first - market.discounted_strike() * second)
}

/// `∫ e^x f_t(x) dx` computed from two independent inversions: the real-axis
/// density on `x < 0` and the inversion along `Im u = -β`, `β = (1 + α)/2`,
/// on `x > 0`.
pub(crate) fn stitched_exp_moment(spec: &HyperbolicSpec, t: f64) -> Result<f64> {
    spec.validate()?;
    let quad = QuadratureSpec::with_tolerances(1e-10, 1e-10);
    let inner = QuadratureSpec::default();
    let lo = -chernoff_radius(spec, t, 1.0, -1.0, 1e-13)?;
    let hi = chernoff_radius(spec, t, 1.0, 1.0, 1e-13)?;
    let scale = spec.delta * t.max(0.05);
    let left_points: Vec<f64> = (1..=8).map(|k| -scale * k as f64).collect();
    let left = integrate_points(
        |x| match hyperbolic_density(spec, t, x, &inner) {
            Ok(v) => x.exp() * v,
            Err(_) => f64::NAN,
        },
        lo,
        0.0,
        &left_points,
        &quad,
    )?;

    let beta = 0.5 * (1.0 + spec.tail_rate());
    let g = SeriesDensity::new(spec, t, beta, 0.0)?;
    let right_points: Vec<f64> = (1..=8).map(|k| scale * k as f64).collect();
    let hi = hi.min(g.window().1);
    let right = integrate_points(|x| ((1.0 - beta) * x).exp() * g.pdf(x), 0.0, hi, &right_points, &quad)?;
    Ok(left + right)
}
