//! Globally adaptive Gauss–Kronrod (10/21) quadrature.
//!
//! Finite panels are bisected worst-error-first. Infinite ends are mapped onto
//! `(0, 1]` with `x = anchor ± s (1 - t) / t`, which keeps exponentially
//! decaying tails inside a finite number of panels without choosing a cut-off.
//! The length scale `s` is the width of the neighbouring finite segment. User
//! supplied breakpoints split the range before refinement starts, which is how
//! callers make sure a narrow peak is seen by the first round of nodes.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances and limits shared by every integrator in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Hard upper limit for truncated semi-infinite ranges (used by the
    /// oscillatory Fourier integrals, which cannot be mapped onto `(0, 1]`).
    pub truncation_bound: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            truncation_bound: 1e4,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.abs_tol > 0.0
            && self.rel_tol > 0.0
            && self.max_subdivisions >= 1
            && self.truncation_bound > 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "quadrature spec needs abs_tol > 0, rel_tol > 0, \
                 max_subdivisions >= 1, truncation_bound > 0: {self:?}"
            )))
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// An integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
    pub subdivisions: usize,
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_351_995,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// One 21-point Kronrod panel with the QUADPACK error heuristic.
fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    if !value.is_finite() {
        err = f64::INFINITY;
    }
    (value, err)
}

#[derive(Clone, Copy, Debug)]
enum Map {
    Identity,
    /// `x = anchor + scale (1 - t) / t`
    Upper { anchor: f64, scale: f64 },
    /// `x = anchor - scale (1 - t) / t`
    Lower { anchor: f64, scale: f64 },
}

impl Map {
    fn eval<F: Fn(f64) -> f64>(self, f: &F, t: f64) -> f64 {
        match self {
            Map::Identity => f(t),
            Map::Upper { anchor, scale } | Map::Lower { anchor, scale } => {
                let s = scale * (1.0 - t) / t;
                let x = if matches!(self, Map::Upper { .. }) {
                    anchor + s
                } else {
                    anchor - s
                };
                let v = f(x);
                if v == 0.0 {
                    0.0
                } else {
                    v * scale / (t * t)
                }
            }
        }
    }
}

struct Panel {
    lo: f64,
    hi: f64,
    map: Map,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn panel<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, map: Map) -> Panel {
    let g = |t: f64| map.eval(f, t);
    let (value, err) = gk21(&g, lo, hi);
    Panel {
        lo,
        hi,
        map,
        value,
        err,
    }
}

/// Integrate `f` over `[a, b]`; either end may be infinite.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    integrate_estimate(f, a, b, &[], spec).map(|e| e.value)
}

/// Integrate with extra breakpoints that seed the initial partition.
pub fn integrate_points<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<f64> {
    integrate_estimate(f, a, b, points, spec).map(|e| e.value)
}

/// Full-detail adaptive integration.
///
/// On exhaustion of `max_subdivisions` the error carries the best estimate
/// and its error bound.
pub fn integrate_estimate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    spec.validate()?;
    if a.is_nan() || b.is_nan() {
        return Err(Error::Domain("integration bounds must not be NaN".into()));
    }
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            abs_error: 0.0,
            subdivisions: 0,
        });
    }
    if a > b {
        return integrate_estimate(f, b, a, points, spec).map(|e| Estimate {
            value: -e.value,
            ..e
        });
    }

    let mut cuts: Vec<f64> = points
        .iter()
        .copied()
        .filter(|p| p.is_finite() && *p > a && *p < b)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    if cuts.is_empty() && a.is_infinite() && b.is_infinite() {
        cuts.push(0.0);
    }

    let mut heap = BinaryHeap::new();
    let mut nodes = Vec::with_capacity(cuts.len() + 2);
    nodes.push(a);
    nodes.extend(cuts);
    nodes.push(b);
    let n = nodes.len();
    let tail_scale = |neighbour: Option<f64>| match neighbour {
        Some(w) if w.is_finite() && w > 0.0 => w,
        _ => 1.0,
    };
    for (i, w) in nodes.windows(2).enumerate() {
        let (lo, hi) = (w[0], w[1]);
        let p = if lo.is_infinite() {
            let scale = tail_scale((n > 2).then(|| nodes[2] - nodes[1]));
            panel(&f, 0.0, 1.0, Map::Lower { anchor: hi, scale })
        } else if hi.is_infinite() {
            let scale = tail_scale((i >= 1).then(|| nodes[i] - nodes[i - 1]));
            panel(&f, 0.0, 1.0, Map::Upper { anchor: lo, scale })
        } else {
            panel(&f, lo, hi, Map::Identity)
        };
        heap.push(p);
    }

    let mut subdivisions = 0;
    loop {
        let (total, total_err) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.err));
        if !total.is_finite() {
            return Err(Error::Domain("integrand is not finite on the range".into()));
        }
        if total_err <= spec.target(total) {
            return Ok(Estimate {
                value: total,
                abs_error: total_err,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        let too_small = (worst.hi - worst.lo) <= 1e3 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE);
        if subdivisions >= spec.max_subdivisions || too_small {
            return Err(Error::NonConvergence {
                estimate: total,
                error_estimate: total_err,
                subdivisions,
            });
        }
        heap.push(panel(&f, worst.lo, mid, worst.map));
        heap.push(panel(&f, mid, worst.hi, worst.map));
        subdivisions += 1;
    }
}
