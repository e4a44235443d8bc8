use serde::Serialize;

use crate::error::{Error, Result};

/// Default right end of sample grids.
pub const DEFAULT_X_MAX: f64 = 50.0;
/// Default number of grid points.
pub const DEFAULT_POINTS: usize = 2001;
const UNIFORM_END: f64 = 5.0;

/// A finite, sorted set of sample points on the half-line; the finite
/// surrogate for suprema over `x ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    points: Vec<f64>,
}

impl GridSpec {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Grid("grid must not be empty".into()));
        }
        if points.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::Grid("grid points must be finite and >= 0".into()));
        }
        if points.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Grid("grid points must be sorted".into()));
        }
        Ok(Self { points })
    }

    /// Uniform points on `[0, min(5, x_max)]` followed, when `x_max > 5`, by
    /// geometrically spaced points on `(5, x_max]`; `points` in total.
    pub fn half_line(x_max: f64, points: usize) -> Result<Self> {
        check_extent(x_max, points)?;
        if points == 1 {
            return Self::new(vec![0.0]);
        }
        if x_max <= UNIFORM_END {
            return Self::new(uniform(0.0, x_max, points));
        }
        let n_uniform = points / 2 + 1;
        let n_geometric = points - n_uniform;
        let mut xs = uniform(0.0, UNIFORM_END, n_uniform);
        let ratio = x_max / UNIFORM_END;
        xs.extend((1..=n_geometric).map(|i| {
            if i == n_geometric {
                x_max
            } else {
                UNIFORM_END * ratio.powf(i as f64 / n_geometric as f64)
            }
        }));
        Self::new(xs)
    }

    /// Points uniformly spaced in `u = x/(1+x)` on `[0, x_max/(1+x_max)]`.
    pub fn transformed_uniform(x_max: f64, points: usize) -> Result<Self> {
        check_extent(x_max, points)?;
        let u_max = x_max / (1.0 + x_max);
        let xs = uniform(0.0, u_max, points)
            .into_iter()
            .enumerate()
            .map(|(i, u)| if i + 1 == points { x_max } else { u / (1.0 - u) })
            .collect();
        Self::new(xs)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn x_max(&self) -> f64 {
        *self.points.last().expect("nonempty grid")
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::half_line(DEFAULT_X_MAX, DEFAULT_POINTS).expect("default grid is valid")
    }
}

fn check_extent(x_max: f64, points: usize) -> Result<()> {
    if !(x_max.is_finite() && x_max > 0.0) {
        return Err(Error::Grid(format!("x_max must be finite and > 0, got {x_max}")));
    }
    if points == 0 {
        return Err(Error::Grid("grid needs at least one point".into()));
    }
    Ok(())
}

fn uniform(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (points - 1) as f64;
    (0..points)
        .map(|i| if i + 1 == points { hi } else { lo + step * i as f64 })
        .collect()
}

/// A finite union of closed intervals in `[0, ∞]`; degenerate intervals are
/// single points and `r = ∞` is allowed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSet {
    intervals: Vec<(f64, f64)>,
}

impl PointSet {
    /// Sorts and merges the given intervals.
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::Domain("point set must not be empty".into()));
        }
        for &(l, r) in &intervals {
            if !(l.is_finite() && l >= 0.0 && !r.is_nan() && r >= l) {
                return Err(Error::Domain(format!("invalid interval [{l}, {r}]")));
            }
        }
        intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for (l, r) in intervals {
            match merged.last_mut() {
                Some(last) if l <= last.1 => last.1 = last.1.max(r),
                _ => merged.push((l, r)),
            }
        }
        Ok(Self { intervals: merged })
    }

    /// `[0, ∞)`.
    pub fn half_line() -> Self {
        Self {
            intervals: vec![(0.0, f64::INFINITY)],
        }
    }

    pub fn point(y: f64) -> Result<Self> {
        Self::new(vec![(y, y)])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }
}

/// `d(x, E) = inf_{y ∈ E} |x - y|`.
pub fn distance_to_set(x: f64, set: &PointSet) -> f64 {
    set.intervals
        .iter()
        .map(|&(l, r)| {
            if x < l {
                l - x
            } else if x > r {
                x - r
            } else {
                0.0
            }
        })
        .fold(f64::INFINITY, f64::min)
}
