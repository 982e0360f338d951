//! One-dimensional minimization: coarse grid, then golden section around the
//! best grid point.
//!
//! For a unimodal objective the two grid neighbours of the best node always
//! bracket the minimizer, so the refinement meets `tol`. For anything else the
//! result is the best point seen, which is as good as the grid allows.

pub const DEFAULT_GRID: usize = 512;

const INV_PHI: f64 = 0.618_033_988_749_894_9; // (√5 - 1) / 2

/// Minimize `g` on `[lo, hi]` with the default 512-point grid.
pub fn minimize_scalar<G: Fn(f64) -> f64>(g: G, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    minimize_scalar_with_grid(g, lo, hi, tol, DEFAULT_GRID)
}

pub fn minimize_scalar_with_grid<G: Fn(f64) -> f64>(
    g: G,
    lo: f64,
    hi: f64,
    tol: f64,
    grid: usize,
) -> (f64, f64) {
    assert!(lo < hi, "minimize_scalar needs lo < hi, got [{lo}, {hi}]");
    let grid = grid.max(2);
    let step = (hi - lo) / (grid - 1) as f64;
    let node = |i: usize| if i == grid - 1 { hi } else { lo + step * i as f64 };

    let mut best_i = 0;
    let mut best = (lo, g(lo));
    for i in 1..grid {
        let x = node(i);
        let v = g(x);
        // NaNs never win
        if v < best.1 || best.1.is_nan() {
            best = (x, v);
            best_i = i;
        }
    }

    let mut a = node(best_i.saturating_sub(1));
    let mut b = node((best_i + 1).min(grid - 1));
    let tol = tol.max(f64::EPSILON * best.0.abs());

    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    while (b - a) > tol {
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d);
        }
    }
    for cand in [(c, gc), (d, gd)] {
        if cand.1 < best.1 {
            best = cand;
        }
    }
    best
}
