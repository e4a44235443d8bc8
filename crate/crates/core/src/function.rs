use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::FunctionError;

/// A real function on the half-line `t ≥ 0`.
///
/// Implementations may refuse points where they are undefined; operators
/// report such failures together with the offending node.
pub trait RealFunction: Sync {
    fn eval(&self, t: f64) -> Result<f64, FunctionError>;
}

impl<F> RealFunction for F
where
    F: Fn(f64) -> f64 + Sync,
{
    fn eval(&self, t: f64) -> Result<f64, FunctionError> {
        Ok(self(t))
    }
}

/// The built-in test functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Registered {
    /// `f ≡ 1`
    One,
    /// `t/(1+t)`
    BbhMetric,
    /// `(t/(1+t))²`
    BbhMetricSq,
    /// `exp(-t)`
    ExpNeg,
    /// `sin(t)/(1+t)`
    SinDamped,
}

impl Registered {
    pub const ALL: [Registered; 5] = [
        Registered::One,
        Registered::BbhMetric,
        Registered::BbhMetricSq,
        Registered::ExpNeg,
        Registered::SinDamped,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Registered::One => "one",
            Registered::BbhMetric => "bbh_metric",
            Registered::BbhMetricSq => "bbh_metric_sq",
            Registered::ExpNeg => "exp_neg",
            Registered::SinDamped => "sin_damped",
        }
    }

    pub fn value(self, t: f64) -> f64 {
        match self {
            Registered::One => 1.0,
            Registered::BbhMetric => t / (1.0 + t),
            Registered::BbhMetricSq => {
                let u = t / (1.0 + t);
                u * u
            }
            Registered::ExpNeg => (-t).exp(),
            Registered::SinDamped => t.sin() / (1.0 + t),
        }
    }
}

impl RealFunction for Registered {
    fn eval(&self, t: f64) -> Result<f64, FunctionError> {
        Ok(self.value(t))
    }
}

impl fmt::Display for Registered {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Registered {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        // `one_` is accepted as a spelling of `one`.
        if s == "one_" {
            return Ok(Registered::One);
        }
        Registered::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| {
            let names: Vec<_> = Registered::ALL.iter().map(|r| r.name()).collect();
            format!("unknown registry function `{s}` (expected one of {})", names.join(", "))
        })
    }
}
