use std::sync::Arc;

use super::Density;
use crate::error::{Error, Result};
use crate::numerics::{integrate, QuadratureSpec};

const NODES: usize = 33;
const NORMALIZATION_SLACK: f64 = 1e-4;

/// The tilt `e^y f_0(y)` of a law that has no closed-form tilt.
///
/// Cumulative masses to the left and right of a fixed node grid are computed
/// once; a CDF query adds one short quadrature from the nearest node.
#[derive(Debug)]
pub struct QuadratureTilt {
    base: Arc<dyn Density>,
    spec: QuadratureSpec,
    nodes: Vec<f64>,
    left: Vec<f64>,
    right: Vec<f64>,
}

impl QuadratureTilt {
    pub fn new(base: Arc<dyn Density>, spec: QuadratureSpec) -> Result<Self> {
        let (lo, hi) = base.bulk();
        let nodes: Vec<f64> = (0..NODES)
            .map(|k| lo + (hi - lo) * k as f64 / (NODES - 1) as f64)
            .collect();
        let f = |y: f64| tilted(base.as_ref(), y);
        let (s_lo, s_hi) = base.support();

        let mut pieces = Vec::with_capacity(NODES + 1);
        pieces.push(integrate(f, s_lo, nodes[0].max(s_lo), &spec)?);
        for w in nodes.windows(2) {
            pieces.push(integrate(f, w[0], w[1], &spec)?);
        }
        pieces.push(integrate(f, nodes[NODES - 1].min(s_hi), s_hi, &spec)?);

        let mut left = Vec::with_capacity(NODES);
        let mut acc = 0.0;
        for p in &pieces[..NODES] {
            acc += p;
            left.push(acc);
        }
        let mut right = vec![0.0; NODES];
        let mut acc = 0.0;
        for k in (0..NODES).rev() {
            acc += pieces[k + 1];
            right[k] = acc;
        }

        let total = left[NODES - 1] + right[NODES - 1];
        if (total - 1.0).abs() > NORMALIZATION_SLACK || !total.is_finite() {
            return Err(Error::NotMeanNormalized {
                moment: total,
                deviation: total - 1.0,
            });
        }
        Ok(Self {
            base,
            spec,
            nodes,
            left,
            right,
        })
    }

    /// Total mass, `E e^Y` under the base law.
    pub fn total_mass(&self) -> f64 {
        self.left[NODES - 1] + self.right[NODES - 1]
    }

    fn piece(&self, a: f64, b: f64) -> f64 {
        // The pieces were already integrated once at construction, so a
        // failure here can only be a near-miss on tolerance.
        match integrate(|y| tilted(self.base.as_ref(), y), a, b, &self.spec) {
            Ok(v) => v,
            Err(Error::NonConvergence { estimate, .. }) => estimate,
            Err(_) => f64::NAN,
        }
    }
}

fn tilted(base: &dyn Density, y: f64) -> f64 {
    let p = base.pdf(y);
    if p == 0.0 {
        0.0
    } else {
        y.exp() * p
    }
}

impl Density for QuadratureTilt {
    fn pdf(&self, y: f64) -> f64 {
        tilted(self.base.as_ref(), y)
    }

    fn cdf(&self, y: f64) -> f64 {
        let (s_lo, _) = self.base.support();
        if y <= s_lo {
            return 0.0;
        }
        let k = self.nodes.partition_point(|&n| n <= y);
        if k == 0 {
            self.piece(s_lo, y)
        } else {
            self.left[k - 1] + self.piece(self.nodes[k - 1], y)
        }
    }

    fn sf(&self, y: f64) -> f64 {
        let (_, s_hi) = self.base.support();
        if y >= s_hi {
            return 0.0;
        }
        let k = self.nodes.partition_point(|&n| n < y);
        if k == NODES {
            self.piece(y, s_hi)
        } else {
            self.right[k] + self.piece(y, self.nodes[k])
        }
    }

    fn support(&self) -> (f64, f64) {
        self.base.support()
    }

    fn bulk(&self) -> (f64, f64) {
        self.base.bulk()
    }
}
