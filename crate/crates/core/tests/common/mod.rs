// Oracles independent of Fourier-Motzkin: vertex enumeration of small
// polytopes and 2-D convex hulls.
#![allow(dead_code)]

use icobr::LinearRateSystem;
use nalgebra::{DMatrix, DVector};

const TOL: f64 = 1e-9;

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Vertices of `{x >= 0, A x <= b}` by solving every choice of `n` active
/// constraints.
pub fn vertices(sys: &LinearRateSystem) -> Vec<Vec<f64>> {
    let n = sys.vars().len();
    let mut rows: Vec<(Vec<f64>, f64)> = sys
        .ineqs()
        .iter()
        .map(|r| (r.coeffs.clone(), r.rhs))
        .collect();
    for i in 0..n {
        let mut c = vec![0.0; n];
        c[i] = -1.0;
        rows.push((c, 0.0));
    }
    let mut out = Vec::new();
    combinations(rows.len(), n, |pick| {
        let a = DMatrix::from_fn(n, n, |i, j| rows[pick[i]].0[j]);
        let b = DVector::from_fn(n, |i, _| rows[pick[i]].1);
        let Some(x) = a.lu().solve(&b) else { return };
        if x.iter().any(|v| !v.is_finite()) {
            return;
        }
        let feasible = rows.iter().all(|(c, r)| {
            let lhs: f64 = c.iter().zip(x.iter()).map(|(p, q)| p * q).sum();
            lhs <= r + TOL * (1.0 + r.abs())
        });
        if feasible {
            out.push(x.iter().copied().collect());
        }
    });
    out
}

/// Maximum of a linear objective over the vertices.
pub fn max_over_vertices(sys: &LinearRateSystem, obj: &[f64]) -> Option<f64> {
    vertices(sys)
        .iter()
        .map(|v| v.iter().zip(obj).map(|(a, b)| a * b).sum::<f64>())
        .fold(None, |m, v| Some(m.map_or(v, |m: f64| m.max(v))))
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counter-clockwise hull without collinear points.
pub fn convex_hull(pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    // solver noise and -0.0 would break the lexicographic sweep
    let snap = |v: f64| if v.abs() < 1e-12 { 0.0 } else { v };
    let mut pts: Vec<[f64; 2]> = pts.into_iter().map(|p| [snap(p[0]), snap(p[1])]).collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup_by(|a, b| (a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 1e-15 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 1e-15 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Signed distance from `p` to the hull boundary: positive inside.
pub fn hull_depth(hull: &[[f64; 2]], p: [f64; 2]) -> f64 {
    if hull.len() < 3 {
        return -1.0;
    }
    let mut depth = f64::INFINITY;
    for i in 0..hull.len() {
        let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
        let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
        depth = depth.min(cross(a, b, p) / len);
    }
    depth
}

/// Image of the rate-split polytope under `(r1p + r1r, r2cp + r2cpp + r2r)`.
pub fn rate_pair_hull(split_system: &LinearRateSystem) -> Vec<[f64; 2]> {
    let pts = vertices(split_system)
        .into_iter()
        .map(|v| [v[0] + v[1], v[2] + v[3] + v[4]])
        .collect();
    convex_hull(pts)
}
