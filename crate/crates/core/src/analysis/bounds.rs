use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::RealFunction;
use crate::operator::{eval_point, evaluate, OperatorSpec, Variant};
use crate::pq::pq_integer;

use super::{delta_n, distance_to_set, GridSpec, PointSet, SampledFunction};

/// Absolute slack on inequality checks, absorbing grid resolution in `ω̃`.
pub const DEFAULT_SLACK: f64 = 1e-6;
const MODULUS_X_MAX: f64 = 1e6;
const MODULUS_POINTS: usize = 8001;

/// Lipschitz-type class: `|f(t) - f(x₀)| ≤ M |t/(1+t) - x₀/(1+x₀)|^α` for
/// `x₀ ∈ E`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LipschitzClass {
    m: f64,
    alpha: f64,
    set: PointSet,
}

impl LipschitzClass {
    pub fn new(m: f64, alpha: f64, set: PointSet) -> Result<Self> {
        check_m_alpha(m, alpha)?;
        Ok(Self { m, alpha, set })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn set(&self) -> &PointSet {
        &self.set
    }
}

fn check_m_alpha(m: f64, alpha: f64) -> Result<()> {
    if !(m.is_finite() && m > 0.0) {
        return Err(Error::Domain(format!("M must be > 0, got {m}")));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!("alpha must lie in (0, 1], got {alpha}")));
    }
    Ok(())
}

/// `M (δ_n(x)^{α/2} + 2 d(x, E)^α)`.
pub fn lipschitz_bound(spec: &OperatorSpec, class: &LipschitzClass, x: f64) -> Result<f64> {
    let delta = delta_n(spec, x)?.max(0.0);
    let d = distance_to_set(x, &class.set);
    Ok(class.m * (delta.powf(class.alpha / 2.0) + 2.0 * d.powf(class.alpha)))
}

#[derive(Debug, Clone)]
pub struct RateCheckOptions {
    /// Grid on which `ω̃` is estimated; should be uniform in `x/(1+x)`.
    pub modulus_grid: GridSpec,
    pub slack: f64,
}

impl Default for RateCheckOptions {
    fn default() -> Self {
        Self {
            modulus_grid: GridSpec::transformed_uniform(MODULUS_X_MAX, MODULUS_POINTS).expect("valid modulus grid"),
            slack: DEFAULT_SLACK,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatePoint {
    pub x: f64,
    /// `|L_n(f; x) - f(x)|`
    pub lhs: f64,
    /// `2 ω̃(f; √δ_n(x))`
    pub rhs: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    pub points: Vec<RatePoint>,
}

impl RateReport {
    pub fn all_pass(&self) -> bool {
        self.points.iter().all(|p| p.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RatePoint> {
        self.points.iter().filter(|p| !p.pass)
    }
}

/// Checks `|L_n(f; x) - f(x)| ≤ 2 ω̃(f; √δ_n(x))` at every grid point with
/// the default modulus grid and slack.
pub fn rate_bound_check<F: RealFunction + ?Sized>(spec: &OperatorSpec, f: &F, grid: &GridSpec) -> Result<RateReport> {
    rate_bound_check_with(spec, f, grid, &RateCheckOptions::default())
}

pub fn rate_bound_check_with<F: RealFunction + ?Sized>(
    spec: &OperatorSpec,
    f: &F,
    grid: &GridSpec,
    options: &RateCheckOptions,
) -> Result<RateReport> {
    let sampled = SampledFunction::new(f, &options.modulus_grid)?;
    let points = grid
        .points()
        .par_iter()
        .map(|&x| {
            let lhs = (evaluate(spec, f, x)? - eval_point(f, x)?).abs();
            let delta = delta_n(spec, x)?.max(0.0);
            let rhs = 2.0 * sampled.modulus(delta.sqrt());
            Ok(RatePoint {
                x,
                lhs,
                rhs,
                pass: lhs <= rhs + options.slack,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RateReport { points })
}

/// The Stancu-variant bound `3M · max{T₁, T₂, T₃}`, evaluated term by term as
/// stated, including a possibly negative `T₃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StancuBound {
    pub terms: [f64; 3],
    pub max_term: f64,
    pub bound: f64,
}

impl StancuBound {
    /// The third term is negative for small `n` (e.g. `-1/9` at `p = q = 1,
    /// n = 2`).
    pub fn third_term_negative(&self) -> bool {
        self.terms[2] < 0.0
    }

    /// The maximum is not positive, so the bound collapses to zero or below.
    pub fn degenerate(&self) -> bool {
        self.max_term <= 0.0
    }
}

/// ```text
/// T₁ = ([n]/(c_n+γ))^α (γ/[n])^α
/// T₂ = |1 - [n+1]/(c_n+γ)|^α (p[n]/[n+1])^α
/// T₃ = 1 - 2p[n]/[n+1] + q[n][n-1]/[n+1]²
/// ```
/// with `c_n = [n+1] + β`.
pub fn stancu_bound(spec: &OperatorSpec, m: f64, alpha: f64) -> Result<StancuBound> {
    let Variant::Stancu { gamma, .. } = spec.variant() else {
        return Err(Error::VariantMismatch("stancu_bound needs a Stancu operator"));
    };
    check_m_alpha(m, alpha)?;
    let (n, params) = (spec.n(), spec.params());
    let (p, q) = (params.p(), params.q());
    let shifted = spec.c_n() + gamma;
    if shifted.is_nan() || shifted <= 0.0 {
        return Err(Error::Domain(format!("c_n + gamma must be > 0, got {shifted}")));
    }
    if gamma < 0.0 && alpha != 1.0 {
        return Err(Error::Domain(format!(
            "first term (gamma/[n])^alpha is undefined for gamma = {gamma} < 0 and alpha = {alpha}"
        )));
    }
    let nn = pq_integer(n, &params);
    let nm1 = pq_integer(n - 1, &params);
    let np1 = pq_integer(n + 1, &params);

    let pow = |v: f64| if alpha == 1.0 { v } else { v.powf(alpha) };
    let t1 = pow(nn / shifted) * pow(gamma / nn);
    let t2 = pow((1.0 - np1 / shifted).abs()) * pow(p * nn / np1);
    let t3 = 1.0 - 2.0 * p * nn / np1 + q * nn * nm1 / (np1 * np1);
    let max_term = t1.max(t2).max(t3);
    Ok(StancuBound {
        terms: [t1, t2, t3],
        max_term,
        bound: 3.0 * m * max_term,
    })
}
