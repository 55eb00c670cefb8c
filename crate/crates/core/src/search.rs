//! One-dimensional minimisation over a periodic angle.
//!
//! A uniform grid over `[0, 2pi)` locates every basin. Each basin is then
//! refined with golden-section search. All global minima are reported.

use std::f64::consts::TAU;

use crate::projection::canonical_angle;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a local minimum of `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `xtol`; returns `(x, f(x))`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, xtol: f64) -> (f64, f64) {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > xtol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    [(c, fc), (d, fd), (x, fx)].into_iter().fold(
        (x, fx),
        |best, cand| if cand.1 < best.1 { cand } else { best },
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Grid spacing over `[0, 2pi)`.
    pub grid_step: f64,
    /// Bracket width at which golden-section refinement stops.
    pub xtol: f64,
    /// Objective slack within which a point counts as a global minimum.
    pub minimum_tol: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            grid_step: 1e-4,
            xtol: 1e-8,
            minimum_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minima {
    /// Global minimum objective value.
    pub value: f64,
    /// Every angle attaining it, ascending in `[0, 2pi)`.
    pub points: Vec<f64>,
}

/// Angular distance on the circle.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Finds all global minima of a `2pi`-periodic `f`.
pub fn periodic_minima<F: Fn(f64) -> f64>(f: F, config: &SearchConfig) -> Minima {
    let n = (TAU / config.grid_step).ceil() as usize;
    let grid: Vec<f64> = (0..n).map(|i| i as f64 * config.grid_step).collect();
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();

    let mut candidates: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in basins(&grid, &values, config.grid_step) {
        let (x, fx) = golden_section(&f, lo, hi, config.xtol);
        let mut x = canonical_angle(x);
        if TAU - x < config.xtol {
            x = 0.0;
        }
        candidates.push((x, fx));
    }
    // Whole-circle plateau: every point attains the minimum.
    if candidates.is_empty() {
        candidates.push((0.0, values[0]));
    }

    let value = candidates.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let ceiling = value + config.minimum_tol;
    let mut points: Vec<f64> = candidates
        .iter()
        .filter(|c| c.1 <= ceiling)
        .map(|c| c.0)
        .collect();
    points.sort_by(f64::total_cmp);

    // Rounding noise on a flat stretch produces many tiny basins; keep one
    // point per stretch of grid values within tolerance of the minimum.
    let flat = flat_runs(&values, ceiling);
    if flat.iter().all(Option::is_some) && flat[0] == flat[n - 1] {
        return Minima {
            value,
            points: vec![0.0],
        };
    }
    let merge_tol = 10.0 * config.xtol;
    let mut merged: Vec<f64> = Vec::with_capacity(points.len());
    let mut seen_runs: Vec<usize> = Vec::new();
    for x in points {
        let run = flat[((x / config.grid_step).round() as usize) % n];
        if let Some(r) = run {
            if seen_runs.contains(&r) {
                continue;
            }
            seen_runs.push(r);
        }
        if merged.iter().all(|&m| circular_distance(m, x) > merge_tol) {
            merged.push(x);
        }
    }
    Minima {
        value,
        points: merged,
    }
}

// Labels each grid index whose value is at most `ceiling` with the id of its
// circular run; other indices get `None`.
fn flat_runs(values: &[f64], ceiling: f64) -> Vec<Option<usize>> {
    let n = values.len();
    let mut labels: Vec<Option<usize>> = vec![None; n];
    let mut id = 0;
    for i in 0..n {
        if values[i] <= ceiling {
            if i > 0 && labels[i - 1].is_none() {
                id += 1;
            }
            labels[i] = Some(id);
        }
    }
    // A run touching both ends continues across the seam.
    if let (Some(first), Some(last)) = (labels[0], labels[n - 1]) {
        for label in labels.iter_mut().filter(|l| **l == Some(last)) {
            *label = Some(first);
        }
    }
    labels
}

// Brackets around each local-minimum run of the circular grid. A run is a
// maximal stretch of equal values lower than both neighbouring runs.
fn basins(grid: &[f64], values: &[f64], step: f64) -> Vec<(f64, f64)> {
    let n = values.len();
    let Some(start) = (0..n).find(|&i| values[i] != values[(i + n - 1) % n]) else {
        return Vec::new();
    };
    // Runs as (first index, length), walking the circle from `start`.
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut k = 0;
    while k < n {
        let first = (start + k) % n;
        let mut len = 1;
        while k + len < n && values[(start + k + len) % n] == values[first] {
            len += 1;
        }
        runs.push((first, len));
        k += len;
    }
    let m = runs.len();
    let mut out = Vec::new();
    for r in 0..m {
        let (first, len) = runs[r];
        let v = values[first];
        let prev = values[runs[(r + m - 1) % m].0];
        let next = values[runs[(r + 1) % m].0];
        if v < prev && v < next {
            let lo = grid[first] - step;
            let last = first + len - 1;
            // Unwrap runs that cross the end of the grid.
            let hi = if last >= n {
                grid[last - n] + TAU + step
            } else {
                grid[last] + step
            };
            out.push((lo, hi));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn golden_finds_parabola_vertex() {
        let (x, fx) = golden_section(|x| (x - 1.234).powi(2), 0.0, 3.0, 1e-10);
        assert_abs_diff_eq!(x, 1.234, epsilon = 1e-9);
        assert!(fx < 1e-18);
        let (x, _) = golden_section(|x| (x + 0.5).powi(2), 1.0, -2.0, 1e-10);
        assert_abs_diff_eq!(x, -0.5, epsilon = 1e-9);
    }

    #[test]
    fn finds_both_cosine_minima() {
        let m = periodic_minima(|x| (2.0 * x).cos(), &SearchConfig::default());
        assert_eq!(m.points.len(), 2);
        assert_abs_diff_eq!(m.points[0], PI / 2.0, epsilon = 1e-7);
        assert_abs_diff_eq!(m.points[1], 3.0 * PI / 2.0, epsilon = 1e-7);
        assert_abs_diff_eq!(m.value, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn minimum_at_origin_wraps() {
        let m = periodic_minima(|x| 1.0 - x.cos(), &SearchConfig::default());
        assert_eq!(m.points.len(), 1);
        assert!(circular_distance(m.points[0], 0.0) < 1e-7);
        assert!(m.points[0] < TAU);
    }

    #[test]
    fn constant_objective_reports_origin() {
        let m = periodic_minima(|_| 0.25, &SearchConfig::default());
        assert_eq!(m.points, vec![0.0]);
        assert_eq!(m.value, 0.25);
    }

    #[test]
    fn non_global_basins_are_dropped() {
        // Local minimum 0.7 at 0, global minimum -1.3 at pi.
        let f = |x: f64| x.cos() - 0.3 * (2.0 * x).cos();
        let m = periodic_minima(f, &SearchConfig::default());
        assert_eq!(m.points.len(), 1);
        assert_abs_diff_eq!(m.points[0], PI, epsilon = 1e-7);
    }

    #[test]
    fn noisy_flat_objective_reports_origin() {
        let f = |x: f64| 0.25 + 1e-17 * (977.0 * x).sin();
        let m = periodic_minima(f, &SearchConfig::default());
        assert_eq!(m.points, vec![0.0]);
    }

    #[test]
    fn flat_stretch_reports_one_point() {
        // Zero on [1, 2], positive elsewhere, with noise on the flat part.
        let f = |x: f64| {
            let d = (1.0 - x).max(x - 2.0).max(0.0);
            d * d + if d == 0.0 { 1e-15 * (300.0 * x).sin().abs() } else { 0.0 }
        };
        let m = periodic_minima(f, &SearchConfig::default());
        assert_eq!(m.points.len(), 1);
        assert!((0.99..=2.01).contains(&m.points[0]), "{:?}", m.points);
    }

    #[test]
    fn circular_distance_is_symmetric() {
        assert_abs_diff_eq!(circular_distance(0.1, TAU - 0.1), 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(circular_distance(TAU - 0.1, 0.1), 0.2, epsilon = 1e-12);
        assert_eq!(circular_distance(1.0, 1.0), 0.0);
    }
}
