//! The (p,q)-Bleimann-Butzer-Hahn operator family.
//!
//! For degree `n` and parameters `(p, q)` the operator acts on `f` by
//!
//! ```text
//! L_n(f; x) = (1/ℓ_n(x)) Σ_{k=0}^{n} f(t_{n,k}) c_k x^k,
//! t_{n,k}   = p^{n-k+1} [k] / ([n-k+1] q^k),
//! ```
//!
//! with `c_k` the Euler coefficients of `ℓ_n`. The Stancu-type variant keeps the
//! weights and moves the nodes to `(p^{n-k+1}[k] + γ)/(q^k [n-k+1] + β)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::RealFunction;
use crate::pq::{self, PqParams};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Variant {
    Base,
    Stancu { gamma: f64, beta: f64 },
}

/// Degree, parameters and variant; fully determines an operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatorSpec {
    n: u32,
    params: PqParams,
    variant: Variant,
}

impl OperatorSpec {
    pub fn base(n: u32, params: PqParams) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOperator("degree n must be at least 1".into()));
        }
        Ok(Self {
            n,
            params,
            variant: Variant::Base,
        })
    }

    pub fn stancu(n: u32, params: PqParams, gamma: f64, beta: f64) -> Result<Self> {
        let base = Self::base(n, params)?;
        if !gamma.is_finite() {
            return Err(Error::InvalidOperator(format!("gamma must be finite, got {gamma}")));
        }
        if !(beta.is_finite() && beta >= 0.0) {
            return Err(Error::InvalidOperator(format!("beta must be >= 0, got {beta}")));
        }
        Ok(Self {
            variant: Variant::Stancu { gamma, beta },
            ..base
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn params(&self) -> PqParams {
        self.params
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// The same degree and parameters with the base variant.
    pub fn as_base(&self) -> Self {
        Self {
            variant: Variant::Base,
            ..*self
        }
    }

    /// Nodes of this operator's variant.
    pub fn nodes(&self) -> NodeTable {
        match self.variant {
            Variant::Base => nodes(self),
            Variant::Stancu { gamma, beta } => stancu_node_table(self, gamma, beta),
        }
    }

    pub fn weights(&self, x: f64) -> Result<WeightTable> {
        weights(self, x)
    }

    pub fn evaluate<F: RealFunction + ?Sized>(&self, f: &F, x: f64) -> Result<f64> {
        evaluate(self, f, x)
    }

    /// `[n+1] + β`, the common value of `p^{n-k+1}[k] + b_{n,k}`.
    pub fn c_n(&self) -> f64 {
        let beta = match self.variant {
            Variant::Base => 0.0,
            Variant::Stancu { beta, .. } => beta,
        };
        pq::pq_integer(self.n + 1, &self.params) + beta
    }
}

/// Nodes `t_{n,0..=n}` of an operator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeTable {
    values: Vec<f64>,
    off_domain: Vec<usize>,
}

impl NodeTable {
    fn from_values(values: Vec<f64>) -> Self {
        let off_domain = values
            .iter()
            .enumerate()
            .filter(|(_, t)| **t < 0.0)
            .map(|(k, _)| k)
            .collect();
        Self { values, off_domain }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest node. For small `q` the last node `p[n]/q^n` grows quickly and
    /// any function passed to the operator must be defined there.
    pub fn max_node(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Indices of nodes below zero (possible only for Stancu nodes with `γ < 0`).
    pub fn off_domain(&self) -> &[usize] {
        &self.off_domain
    }

    pub fn on_half_line(&self) -> bool {
        self.off_domain.is_empty()
    }
}

/// Base nodes `t_{n,k} = p^{n-k+1}[k] / ([n-k+1] q^k)` for the spec's `n` and
/// parameters (the variant is ignored).
pub fn nodes(spec: &OperatorSpec) -> NodeTable {
    let (n, params) = (spec.n, &spec.params);
    let values = (0..=n)
        .map(|k| {
            let num = params.p().powi((n - k + 1) as i32) * pq::pq_integer(k, params);
            num / (pq::pq_integer(n - k + 1, params) * params.q().powi(k as i32))
        })
        .collect();
    NodeTable::from_values(values)
}

fn stancu_node_table(spec: &OperatorSpec, gamma: f64, beta: f64) -> NodeTable {
    let (n, params) = (spec.n, &spec.params);
    let values = (0..=n)
        .map(|k| {
            let num = params.p().powi((n - k + 1) as i32) * pq::pq_integer(k, params) + gamma;
            num / stancu_denominator(n, k, params, beta)
        })
        .collect();
    NodeTable::from_values(values)
}

/// `b_{n,k} = q^k [n-k+1] + β`.
pub fn stancu_denominator(n: u32, k: u32, params: &PqParams, beta: f64) -> f64 {
    params.q().powi(k as i32) * pq::pq_integer(n - k + 1, params) + beta
}

/// Stancu-type nodes `(p^{n-k+1}[k] + γ) / b_{n,k}`. Negative nodes are kept
/// and listed in [`NodeTable::off_domain`].
pub fn stancu_nodes(spec: &OperatorSpec) -> Result<NodeTable> {
    match spec.variant {
        Variant::Stancu { gamma, beta } => Ok(stancu_node_table(spec, gamma, beta)),
        Variant::Base => Err(Error::VariantMismatch("stancu_nodes needs a Stancu operator")),
    }
}

/// Kernel weights at one point; nonnegative and summing to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightTable {
    x: f64,
    weights: Vec<f64>,
    log_normalizer: f64,
}

impl WeightTable {
    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn values(&self) -> &[f64] {
        &self.weights
    }

    /// `ln Σ_k c_k x^k`, i.e. `ln ℓ_n(x)` as produced by the recurrence.
    pub fn log_normalizer(&self) -> f64 {
        self.log_normalizer
    }
}

pub(crate) fn check_point(x: f64) -> Result<()> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::Domain(format!("x must be finite and >= 0, got {x}")));
    }
    Ok(())
}

/// `w_k(x) = c_k x^k / ℓ_n(x)`.
///
/// The terms are accumulated as logarithms through the ratio recurrence
/// `term_{k+1}/term_k = (c_{k+1}/c_k)·x`, shifted by their maximum before
/// exponentiation, and normalized by their sum. The resulting normalizer is
/// checked against `Σ_s ln(p^s + q^s x)`.
pub fn weights(spec: &OperatorSpec, x: f64) -> Result<WeightTable> {
    check_point(x)?;
    let (n, params) = (spec.n, &spec.params);
    let len = n as usize + 1;
    let ln_c0 = pq::tri(n) as f64 * params.p().ln();
    if x == 0.0 {
        let mut w = vec![0.0; len];
        w[0] = 1.0;
        return Ok(WeightTable {
            x,
            weights: w,
            log_normalizer: ln_c0,
        });
    }

    let (lp, lq, lx) = (params.p().ln(), params.q().ln(), x.ln());
    let mut logs = Vec::with_capacity(len);
    let mut acc = ln_c0;
    logs.push(acc);
    for k in 0..n {
        acc += pq::ln_euler_ratio(n, k, lp, lq, params) + lx;
        logs.push(acc);
    }
    let shift = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut w: Vec<f64> = logs.iter().map(|l| (l - shift).exp()).collect();
    let sum: f64 = w.iter().sum();
    for v in &mut w {
        *v /= sum;
    }
    let log_normalizer = shift + sum.ln();

    let expected = pq::ln_pochhammer_ell(n, x, params);
    if (log_normalizer - expected).abs() > 1e-8 * expected.abs().max(1.0) {
        return Err(Error::Normalization {
            computed: log_normalizer,
            expected,
        });
    }
    Ok(WeightTable {
        x,
        weights: w,
        log_normalizer,
    })
}

pub(crate) fn eval_at<F: RealFunction + ?Sized>(f: &F, index: usize, t: f64) -> Result<f64> {
    let value = f.eval(t).map_err(|source| Error::Function { index, t, source })?;
    if !value.is_finite() {
        return Err(Error::NonFinite { t, value });
    }
    Ok(value)
}

pub(crate) fn eval_point<F: RealFunction + ?Sized>(f: &F, t: f64) -> Result<f64> {
    let value = f.eval(t).map_err(|source| Error::Evaluation { t, source })?;
    if !value.is_finite() {
        return Err(Error::NonFinite { t, value });
    }
    Ok(value)
}

fn apply<F: RealFunction + ?Sized>(spec: &OperatorSpec, table: &NodeTable, f: &F, x: f64) -> Result<f64> {
    if let Some(&index) = table.off_domain().first() {
        return Err(Error::OffDomainNode {
            index,
            node: table.values[index],
        });
    }
    let w = weights(spec, x)?;
    let mut acc = 0.0;
    for (k, (&t, &wk)) in table.values.iter().zip(w.values()).enumerate() {
        acc += eval_at(f, k, t)? * wk;
    }
    Ok(acc)
}

/// `L_n(f; x)` for the spec's variant.
pub fn evaluate<F: RealFunction + ?Sized>(spec: &OperatorSpec, f: &F, x: f64) -> Result<f64> {
    apply(spec, &spec.nodes(), f, x)
}

/// `L_n^{γ}(f; x)`; the spec must carry the Stancu variant.
pub fn evaluate_stancu<F: RealFunction + ?Sized>(spec: &OperatorSpec, f: &F, x: f64) -> Result<f64> {
    let table = stancu_nodes(spec)?;
    apply(spec, &table, f, x)
}
