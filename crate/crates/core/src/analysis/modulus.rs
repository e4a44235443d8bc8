use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::function::RealFunction;
use crate::operator::eval_point;

use super::{to_unit, GridSpec};

/// A function sampled on a grid, stored in the transformed coordinate
/// `u = x/(1+x)` where the half-line metric becomes `|u - v|`.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    u: Vec<f64>,
    values: Vec<f64>,
}

impl SampledFunction {
    pub fn new<F: RealFunction + ?Sized>(f: &F, grid: &GridSpec) -> Result<Self> {
        let values = grid
            .points()
            .par_iter()
            .map(|&x| eval_point(f, x))
            .collect::<Result<Vec<_>>>()?;
        let u = grid.points().iter().map(|&x| to_unit(x)).collect();
        Ok(Self { u, values })
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `max |f(t) - f(x)|` over sample pairs with `|u_t - u_x| ≤ delta`.
    ///
    /// Sliding window over the sorted samples with monotone deques for the
    /// running max and min, so each call is linear in the grid size.
    pub fn modulus(&self, delta: f64) -> f64 {
        if delta.is_nan() || delta <= 0.0 {
            return 0.0;
        }
        let mut maxq: VecDeque<usize> = VecDeque::new();
        let mut minq: VecDeque<usize> = VecDeque::new();
        let mut left = 0;
        let mut best: f64 = 0.0;
        for right in 0..self.u.len() {
            let v = self.values[right];
            while maxq.back().is_some_and(|&i| self.values[i] <= v) {
                maxq.pop_back();
            }
            maxq.push_back(right);
            while minq.back().is_some_and(|&i| self.values[i] >= v) {
                minq.pop_back();
            }
            minq.push_back(right);
            while self.u[right] - self.u[left] > delta {
                left += 1;
            }
            while maxq.front().is_some_and(|&i| i < left) {
                maxq.pop_front();
            }
            while minq.front().is_some_and(|&i| i < left) {
                minq.pop_front();
            }
            let spread = self.values[maxq[0]] - self.values[minq[0]];
            best = best.max(spread);
        }
        best
    }
}

/// Grid estimate of `ω̃(f; δ) = sup { |f(t) - f(x)| : |t/(1+t) - x/(1+x)| ≤ δ }`.
///
/// This is a lower bound for the true modulus and converges to it as the
/// grid refines; pass [`GridSpec::transformed_uniform`] for even resolution.
pub fn modulus_estimate<F: RealFunction + ?Sized>(f: &F, delta: f64, grid: &GridSpec) -> Result<f64> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::Domain(format!("modulus needs delta > 0, got {delta}")));
    }
    Ok(SampledFunction::new(f, grid)?.modulus(delta))
}

/// Smallest `M` with `|f(t) - f(y)| ≤ M |t/(1+t) - y/(1+y)|^α` over all grid
/// pairs.
pub fn lipschitz_constant_estimate<F: RealFunction + ?Sized>(f: &F, alpha: f64, grid: &GridSpec) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    if grid.len() < 2 {
        return Err(Error::Grid("Lipschitz estimate needs at least two points".into()));
    }
    let sampled = SampledFunction::new(f, grid)?;
    let (u, g) = (sampled.u(), sampled.values());
    let row_max = |i: usize| {
        let mut best: f64 = 0.0;
        for j in i + 1..u.len() {
            let du = u[j] - u[i];
            if du > 0.0 {
                best = best.max((g[j] - g[i]).abs() / du.powf(alpha));
            }
        }
        best
    };
    Ok((0..u.len()).into_par_iter().map(row_max).reduce(|| 0.0, f64::max))
}
