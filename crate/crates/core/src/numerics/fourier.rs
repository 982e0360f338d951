//! Densities from characteristic functions.
//!
//! [`fourier_cosine_density`] is the pointwise inversion of a real, even
//! characteristic function. [`fourier_density_complex`] is the same integral
//! for a complex transform, which is what appears after shifting the
//! integration contour off the real axis. Both integrate panel by panel over
//! half periods of the oscillation and stop once the remaining tail, estimated
//! from the observed exponential decay of the envelope, is negligible.
//!
//! [`PeriodizedInversion`] is the cached alternative used when the same law
//! is evaluated many times: the transform is sampled once on a uniform grid
//! `u_k = k h` and the density of the `2π/h`-periodized law is summed
//! directly, together with its exact antiderivative.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature::{integrate_estimate, QuadratureSpec};
use crate::error::{Error, Result};

/// Widest panel used when `|x|` is small and the cosine barely oscillates.
const MAX_PANEL: f64 = 4.0;

fn oscillatory_half_line<G, E>(integrand: G, envelope: E, x: f64, spec: &QuadratureSpec) -> Result<f64>
where
    G: Fn(f64) -> f64,
    E: Fn(f64) -> f64,
{
    spec.validate()?;
    let width = if x.abs() > PI / MAX_PANEL {
        PI / x.abs()
    } else {
        MAX_PANEL
    };
    let panel_spec = QuadratureSpec {
        abs_tol: spec.abs_tol * PI / 50.0,
        rel_tol: spec.rel_tol,
        ..*spec
    };
    let tail_target = 0.1 * spec.abs_tol * PI;

    let mut total = 0.0;
    let mut lo = 0.0;
    let mut prev_env = envelope(0.0);
    if !prev_env.is_finite() {
        return Err(Error::NotDecaying {
            at: 0.0,
            magnitude: prev_env,
        });
    }
    let mut quiet_panels = 0;
    loop {
        let hi = lo + width;
        if hi > spec.truncation_bound {
            return Err(Error::NotDecaying {
                at: hi,
                magnitude: envelope(hi),
            });
        }
        let part = integrate_estimate(&integrand, lo, hi, &[], &panel_spec)?;
        total += part.value;

        let env = envelope(hi);
        // Remaining tail for an envelope decaying like e^{-λu}: env / λ.
        let decay = if env > 0.0 && prev_env > env {
            (prev_env / env).ln() / width
        } else {
            0.0
        };
        let tail = if env == 0.0 {
            0.0
        } else if decay > 0.0 {
            env / decay
        } else {
            f64::INFINITY
        };
        if tail < tail_target && part.value.abs() < tail_target {
            quiet_panels += 1;
            if quiet_panels >= 2 {
                break;
            }
        } else {
            quiet_panels = 0;
        }
        prev_env = env;
        lo = hi;
    }
    Ok(total / PI)
}

/// `(1/π) ∫_0^∞ cos(ux) φ(u) du` for a real, even, integrable `φ` with
/// `φ(0) = 1` and an eventually monotone envelope.
///
/// Fails with [`Error::NotDecaying`] when `|φ|` has not decayed below the
/// tolerance by `spec.truncation_bound`.
pub fn fourier_cosine_density<P: Fn(f64) -> f64>(phi_t: P, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    oscillatory_half_line(|u| (u * x).cos() * phi_t(u), |u| phi_t(u).abs(), x, spec)
}

/// `(1/π) ∫_0^∞ Re[e^{-iux} ψ(u)] du` for a transform satisfying
/// `ψ(-u) = conj ψ(u)`.
pub fn fourier_density_complex<P: Fn(f64) -> Complex64>(psi: P, x: f64, spec: &QuadratureSpec) -> Result<f64> {
    oscillatory_half_line(
        |u| {
            let (s, c) = (u * x).sin_cos();
            let p = psi(u);
            p.re * c + p.im * s
        },
        |u| psi(u).norm(),
        x,
        spec,
    )
}

/// Reseed the rotation recurrence this often to bound drift.
const RESEED: usize = 64;

/// A law recovered from its transform by Fourier series on a window
/// `[start, start + period)`.
///
/// With `h = 2π / period` and samples `ψ_k = ψ(k h)`, the density of the
/// periodized law is `(h/2π) [ψ_0 + 2 Σ_k Re(ψ_k e^{-ikhx})]`. Mass outside the
/// window aliases back in, so the window must hold all but a negligible part
/// of the law; that choice is the caller's.
#[derive(Debug, Clone)]
pub struct PeriodizedInversion {
    start: f64,
    period: f64,
    step: f64,
    coeffs: Vec<Complex64>,
    /// `Σ_k Im(ψ_k e^{-ikh·start}) / k`
    start_phase_sum: f64,
}

impl PeriodizedInversion {
    /// Sample `psi` until `|ψ(u)| < cutoff · |ψ(0)|`.
    pub fn new<P: Fn(f64) -> Result<Complex64>>(
        psi: P,
        start: f64,
        period: f64,
        cutoff: f64,
        max_u: f64,
    ) -> Result<Self> {
        if !(period > 0.0) || !start.is_finite() {
            return Err(Error::InvalidParams(format!(
                "inversion window needs a finite start and positive period, got [{start}, +{period})"
            )));
        }
        let step = 2.0 * PI / period;
        let c0 = psi(0.0)?;
        let floor = cutoff * c0.norm();
        let mut coeffs = vec![c0];
        let mut quiet = 0;
        let mut k = 1usize;
        loop {
            let u = k as f64 * step;
            if u > max_u {
                return Err(Error::NotDecaying {
                    at: u,
                    magnitude: coeffs.last().map_or(f64::NAN, |c| c.norm()),
                });
            }
            let c = psi(u)?;
            coeffs.push(c);
            if c.norm() < floor {
                quiet += 1;
                if quiet >= 4 {
                    break;
                }
            } else {
                quiet = 0;
            }
            k += 1;
        }
        let mut inv = Self {
            start,
            period,
            step,
            coeffs,
            start_phase_sum: 0.0,
        };
        inv.start_phase_sum = inv.phase_sums(start).1;
        Ok(inv)
    }

    pub fn window(&self) -> (f64, f64) {
        (self.start, self.start + self.period)
    }

    pub fn terms(&self) -> usize {
        self.coeffs.len()
    }

    /// `(Σ Re(ψ_k e^{-ikhx}), Σ Im(ψ_k e^{-ikhx}) / k)` over `k >= 1`.
    fn phase_sums(&self, x: f64) -> (f64, f64) {
        let (s1, c1) = (self.step * x).sin_cos();
        let rot = Complex64::new(c1, -s1);
        let mut w = rot;
        let mut re_sum = 0.0;
        let mut im_sum = 0.0;
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            if k % RESEED == 0 {
                let (s, c) = (k as f64 * self.step * x).sin_cos();
                w = Complex64::new(c, -s);
            }
            let term = c * w;
            re_sum += term.re;
            im_sum += term.im / k as f64;
            w *= rot;
        }
        (re_sum, im_sum)
    }

    pub fn density(&self, x: f64) -> f64 {
        let (re_sum, _) = self.phase_sums(x);
        self.step / PI * (0.5 * self.coeffs[0].re + re_sum)
    }

    /// Mass of the periodized law on `[start, x]`, for `x` inside the window.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= self.start {
            return 0.0;
        }
        if x >= self.start + self.period {
            return self.coeffs[0].re;
        }
        let (_, im_sum) = self.phase_sums(x);
        self.coeffs[0].re * (x - self.start) / self.period - (im_sum - self.start_phase_sum) / PI
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::normal::{std_normal_cdf, std_normal_pdf};
    use approx::assert_abs_diff_eq;

    fn gauss_cf(u: f64) -> f64 {
        (-0.5 * u * u).exp()
    }

    #[test]
    fn gaussian_inversion() {
        let spec = QuadratureSpec::default();
        assert_abs_diff_eq!(
            fourier_cosine_density(gauss_cf, 0.0, &spec).unwrap(),
            1.0 / (2.0 * PI).sqrt(),
            epsilon = 1e-12
        );
        for i in -50..=50 {
            let x = i as f64 * 0.1;
            let f = fourier_cosine_density(gauss_cf, x, &spec).unwrap();
            assert_abs_diff_eq!(f, std_normal_pdf(x), epsilon = 1e-8);
        }
    }

    #[test]
    fn shifted_gaussian_via_complex_transform() {
        // N(m, 1) has transform e^{ium - u^2/2}
        let m = 0.7;
        let spec = QuadratureSpec::default();
        let psi = |u: f64| Complex64::new(0.0, u * m).exp() * (-0.5 * u * u).exp();
        for &x in &[-2.0, 0.0, 0.7, 1.5, 4.0] {
            let f = fourier_density_complex(psi, x, &spec).unwrap();
            assert_abs_diff_eq!(f, std_normal_pdf(x - m), epsilon = 1e-9);
        }
    }

    #[test]
    fn non_decaying_transform_is_rejected() {
        let spec = QuadratureSpec {
            truncation_bound: 200.0,
            ..QuadratureSpec::default()
        };
        let err = fourier_cosine_density(|u| 1.0 / (1.0 + u.abs()).sqrt(), 0.3, &spec).unwrap_err();
        assert!(matches!(err, Error::NotDecaying { .. }));
    }

    #[test]
    fn periodized_gaussian() {
        let m = 0.4;
        let inv = PeriodizedInversion::new(
            |u| Ok(Complex64::new(0.0, u * m).exp() * (-0.5 * u * u).exp()),
            -20.0,
            40.0,
            1e-18,
            1e3,
        )
        .unwrap();
        for &x in &[-3.0, -0.5, 0.4, 1.0, 5.0] {
            assert_abs_diff_eq!(inv.density(x), std_normal_pdf(x - m), epsilon = 1e-14);
            assert_abs_diff_eq!(inv.cdf(x), std_normal_cdf(x - m), epsilon = 1e-14);
        }
    }
}
