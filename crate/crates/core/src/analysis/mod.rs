//! Moments, Korovkin discrepancies, moduli of continuity and the rate bounds
//! built from them.

mod bounds;
mod grid;
mod modulus;
mod moments;
mod report;
mod schedule;

pub use bounds::{
    lipschitz_bound, rate_bound_check, rate_bound_check_with, stancu_bound, LipschitzClass, RateCheckOptions,
    RatePoint, RateReport, StancuBound, DEFAULT_SLACK,
};
pub use grid::{distance_to_set, GridSpec, PointSet, DEFAULT_POINTS, DEFAULT_X_MAX};
pub use modulus::{lipschitz_constant_estimate, modulus_estimate, SampledFunction};
pub use moments::{delta_n, korovkin_discrepancy, moment_closed, test_function};
pub use report::{convergence_report, ConvergenceReport, ConvergenceRow};
pub use schedule::{param_schedule, HarmonicSchedule, ParamSchedule};

/// `u = x/(1+x)`, the coordinate in which the half-line becomes `[0, 1)`.
pub fn to_unit(x: f64) -> f64 {
    x / (1.0 + x)
}
