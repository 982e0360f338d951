//! Laws of the normalized log price `Y = ln(S_T / E S_T)` and their
//! exponential tilts.
//!
//! A law is usable for pricing only when `E e^Y = 1`. Then `e^y f_0(y)` is again
//! a density, the tilt `f_1`, and the option price is a statement about how
//! well a single threshold separates `f_0` from `f_1`.

mod discrete;
mod normal_laws;
mod quadrature_tilt;

use std::fmt::Debug;
use std::sync::Arc;

pub use discrete::DiscretePriceLaw;
pub use normal_laws::{NormalLaw, NormalMixtureLaw};
pub(crate) use normal_laws::ln_mixture_mgf;
pub use quadrature_tilt::QuadratureTilt;

use crate::error::{Error, Result};
use crate::models::{HyperbolicLaw, ModelSpec};
use crate::numerics::{integrate_points, QuadratureSpec};

/// A one-dimensional absolutely continuous law.
pub trait Density: Send + Sync + Debug {
    fn pdf(&self, y: f64) -> f64;
    fn cdf(&self, y: f64) -> f64;

    /// `1 - cdf(y)`. Implementations override this when they can avoid the
    /// cancellation.
    fn sf(&self, y: f64) -> f64 {
        1.0 - self.cdf(y)
    }

    fn support(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }

    /// A finite interval holding all but a negligible part of the mass.
    /// Quadrature over the law splits its range here.
    fn bulk(&self) -> (f64, f64);
}

/// Breakpoints for integrating against `d`: the bulk cut into eight panels.
pub fn quadrature_points(d: &dyn Density) -> Vec<f64> {
    let (lo, hi) = d.bulk();
    (0..=8).map(|k| lo + (hi - lo) * k as f64 / 8.0).collect()
}

/// `∫ g(y) f(y) dy` over the support of `f`.
pub fn expect<G: Fn(f64) -> f64>(d: &dyn Density, g: G, spec: &QuadratureSpec) -> Result<f64> {
    let (lo, hi) = d.support();
    integrate_points(|y| {
        let p = d.pdf(y);
        if p == 0.0 {
            0.0
        } else {
            g(y) * p
        }
    }, lo, hi, &quadrature_points(d), spec)
}

/// The law `F_0` of `ln(S_T / E S_T)`, optionally with a tilt supplied by the
/// model.
#[derive(Debug, Clone)]
pub struct LogReturnLaw {
    base: Arc<dyn Density>,
    closed_form_tilt: Option<Arc<dyn Density>>,
}

impl LogReturnLaw {
    pub fn new(base: Arc<dyn Density>) -> Self {
        Self {
            base,
            closed_form_tilt: None,
        }
    }

    pub fn with_tilt(base: Arc<dyn Density>, tilt: Arc<dyn Density>) -> Self {
        Self {
            base,
            closed_form_tilt: Some(tilt),
        }
    }

    pub fn base(&self) -> &Arc<dyn Density> {
        &self.base
    }

    pub fn pdf(&self, y: f64) -> f64 {
        self.base.pdf(y)
    }

    pub fn cdf(&self, y: f64) -> f64 {
        self.base.cdf(y)
    }

    pub fn sf(&self, y: f64) -> f64 {
        self.base.sf(y)
    }

    pub fn support(&self) -> (f64, f64) {
        self.base.support()
    }

    pub fn has_closed_form_tilt(&self) -> bool {
        self.closed_form_tilt.is_some()
    }

    /// `E e^Y` by quadrature.
    pub fn exp_moment(&self, spec: &QuadratureSpec) -> Result<f64> {
        expect(self.base.as_ref(), f64::exp, spec)
    }
}

/// The tilted law `F_1` with density `e^y f_0(y)`.
#[derive(Debug, Clone)]
pub struct TiltedLaw {
    law: Arc<dyn Density>,
    closed_form: bool,
}

impl TiltedLaw {
    pub fn pdf(&self, y: f64) -> f64 {
        self.law.pdf(y)
    }

    pub fn cdf(&self, y: f64) -> f64 {
        self.law.cdf(y)
    }

    pub fn sf(&self, y: f64) -> f64 {
        self.law.sf(y)
    }

    pub fn density(&self) -> &Arc<dyn Density> {
        &self.law
    }

    /// Whether the tilt came from the model rather than from quadrature.
    pub fn is_closed_form(&self) -> bool {
        self.closed_form
    }
}

/// The tilt supplied by the model, or the generic quadrature tilt.
pub fn tilt(law: &LogReturnLaw) -> Result<TiltedLaw> {
    match &law.closed_form_tilt {
        Some(t) => Ok(TiltedLaw {
            law: t.clone(),
            closed_form: true,
        }),
        None => quadrature_tilt(law, &QuadratureSpec::default()),
    }
}

/// Tilt by quadrature of `e^y f_0(y)`, ignoring any model-supplied tilt.
///
/// Fails with [`Error::NotMeanNormalized`] when `E e^Y` is off by more than
/// `1e-4`.
pub fn quadrature_tilt(law: &LogReturnLaw, spec: &QuadratureSpec) -> Result<TiltedLaw> {
    Ok(TiltedLaw {
        law: Arc::new(QuadratureTilt::new(law.base.clone(), *spec)?),
        closed_form: false,
    })
}

/// The law of `ln(S_T / E S_T)` under the model over a horizon `tau = T - t0`.
pub fn log_return_law_of(model: &ModelSpec, tau: f64) -> Result<LogReturnLaw> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidParams(format!("horizon must be positive, got {tau}")));
    }
    model.validate()?;
    match model {
        ModelSpec::Gbm(g) => {
            let v = g.sigma * g.sigma * tau;
            Ok(LogReturnLaw::with_tilt(
                Arc::new(NormalLaw::new(-0.5 * v, v.sqrt())?),
                Arc::new(NormalLaw::new(0.5 * v, v.sqrt())?),
            ))
        }
        ModelSpec::Mixture(m) => {
            let (f0, f1) = NormalMixtureLaw::log_return_pair(&m.weights, &m.scales, tau)?;
            Ok(LogReturnLaw::with_tilt(Arc::new(f0), Arc::new(f1)))
        }
        ModelSpec::Hyperbolic(h) => {
            let law = HyperbolicLaw::new(*h, tau)?;
            let (f0, f1) = law.into_pair();
            Ok(LogReturnLaw::with_tilt(f0, f1))
        }
        ModelSpec::Discrete(_) => Err(Error::Unsupported(
            "a discrete price law has no density; price it with models::toy_price".into(),
        )),
    }
}
