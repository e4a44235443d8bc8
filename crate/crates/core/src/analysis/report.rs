use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::operator::OperatorSpec;

use super::{delta_n, korovkin_discrepancy, lipschitz_bound, GridSpec, LipschitzClass, ParamSchedule};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: u32,
    pub p: f64,
    pub q: f64,
    /// Korovkin discrepancy for `ν = 0, 1, 2`.
    pub discrepancy: [f64; 3],
    /// `max_{x ∈ grid} δ_n(x)`
    pub sup_delta: f64,
    /// `max_{x ∈ grid}` of the Lipschitz-class bound, when a class was given.
    pub sup_lipschitz_bound: Option<f64>,
}

/// One row per requested degree, in request order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
}

pub fn convergence_report<S: ParamSchedule + ?Sized>(
    schedule: &S,
    degrees: &[u32],
    grid: &GridSpec,
    class: Option<&LipschitzClass>,
) -> Result<ConvergenceReport> {
    let rows = degrees
        .par_iter()
        .map(|&n| {
            let params = schedule.params(n)?;
            let spec = OperatorSpec::base(n, params)?;
            let mut discrepancy = [0.0; 3];
            for (nu, slot) in discrepancy.iter_mut().enumerate() {
                *slot = korovkin_discrepancy(&spec, nu as u32, grid)?;
            }
            let mut sup_delta: f64 = 0.0;
            let mut sup_bound: f64 = 0.0;
            for &x in grid.points() {
                sup_delta = sup_delta.max(delta_n(&spec, x)?);
                if let Some(cls) = class {
                    sup_bound = sup_bound.max(lipschitz_bound(&spec, cls, x)?);
                }
            }
            Ok(ConvergenceRow {
                n,
                p: params.p(),
                q: params.q(),
                discrepancy,
                sup_delta,
                sup_lipschitz_bound: class.map(|_| sup_bound),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport { rows })
}
