//! Grid-then-golden-section scalar maximization.

use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_GRID: usize = 1001;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptResult {
    pub x_star: f64,
    pub f_star: f64,
    pub evals: usize,
    /// Smallest objective value seen on the grid; equal to `f_star` when the
    /// objective is flat.
    pub f_grid_min: f64,
}

impl OptResult {
    pub fn is_flat(&self, tol: f64) -> bool {
        self.f_star - self.f_grid_min <= tol
    }
}

/// Maximize `f` on `[lo, hi]`.
///
/// `f` is evaluated on `grid_n` uniform points; the bracket formed by the
/// neighbours of the best grid point is then narrowed by golden-section
/// search until narrower than `tol`. The best point seen is returned, so the
/// result is never worse than the grid maximum. On ties the leftmost grid
/// point wins.
pub fn maximize_scalar<F>(mut f: F, lo: f64, hi: f64, grid_n: usize, tol: f64) -> Result<OptResult>
where
    F: FnMut(f64) -> f64,
{
    try_maximize_scalar(|x| Ok(f(x)), lo, hi, grid_n, tol)
}

/// As [`maximize_scalar`] for a fallible objective; the first error aborts.
pub fn try_maximize_scalar<F>(mut f: F, lo: f64, hi: f64, grid_n: usize, tol: f64) -> Result<OptResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Domain(format!("need lo < hi, got [{lo}, {hi}]")));
    }
    if grid_n < 3 {
        return Err(Error::Domain(format!("grid needs at least 3 points, got {grid_n}")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
    }

    let mut evals = 0usize;
    let mut eval = |x: f64| -> Result<f64> {
        evals += 1;
        let v = f(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite { x })
        }
    };

    let last = (grid_n - 1) as f64;
    let at = |i: usize| lo + (hi - lo) * i as f64 / last;
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    let mut worst = f64::INFINITY;
    for i in 0..grid_n {
        let v = eval(at(i))?;
        if v > best {
            best = v;
            best_i = i;
        }
        worst = worst.min(v);
    }
    let mut x_star = at(best_i);
    let mut f_star = best;

    let mut a = at(best_i.saturating_sub(1));
    let mut b = at((best_i + 1).min(grid_n - 1));
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    while b - a >= tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(x2)?;
        }
        for (x, v) in [(x1, f1), (x2, f2)] {
            if v > f_star {
                f_star = v;
                x_star = x;
            }
        }
    }

    Ok(OptResult {
        x_star,
        f_star,
        evals,
        f_grid_min: worst,
    })
}
