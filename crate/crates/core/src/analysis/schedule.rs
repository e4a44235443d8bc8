use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pq::PqParams;

/// A sequence `n ↦ (p_n, q_n)` with `0 < q_n < p_n ≤ 1` and both tending to 1.
pub trait ParamSchedule: fmt::Debug + Sync {
    fn params(&self, n: u32) -> Result<PqParams>;
}

/// `p_n = 1 - a/n`, `q_n = 1 - b/n` with `0 < a < b < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HarmonicSchedule {
    a: f64,
    b: f64,
}

impl HarmonicSchedule {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && a < b && b < 1.0) {
            return Err(Error::InvalidParams(format!(
                "harmonic schedule needs 0 < a < b < 1, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

impl Default for HarmonicSchedule {
    fn default() -> Self {
        Self { a: 0.25, b: 0.5 }
    }
}

impl ParamSchedule for HarmonicSchedule {
    fn params(&self, n: u32) -> Result<PqParams> {
        if n == 0 {
            return Err(Error::InvalidOperator("schedules start at n = 1".into()));
        }
        let n = n as f64;
        PqParams::new(1.0 - self.a / n, 1.0 - self.b / n)
    }
}

impl fmt::Display for HarmonicSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "harmonic:{},{}", self.a, self.b)
    }
}

/// Parses `harmonic:A,B`.
impl FromStr for HarmonicSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("expected `harmonic:A,B`, got `{s}`"));
        let args = s.strip_prefix("harmonic:").ok_or_else(bad)?;
        let (a, b) = args.split_once(',').ok_or_else(bad)?;
        let a: f64 = a.trim().parse().map_err(|_| bad())?;
        let b: f64 = b.trim().parse().map_err(|_| bad())?;
        Self::new(a, b)
    }
}

/// `(p_n, q_n)` for step `n` of a schedule.
pub fn param_schedule<S: ParamSchedule + ?Sized>(schedule: &S, n: u32) -> Result<PqParams> {
    schedule.params(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_examples() {
        let s = HarmonicSchedule::new(0.25, 0.5).unwrap();
        let params = param_schedule(&s, 4).unwrap();
        assert_eq!((params.p(), params.q()), (0.9375, 0.875));
        let far = s.params(1_000_000).unwrap();
        assert!(1.0 - far.p() < 1e-6 && 1.0 - far.q() < 1e-6);
        assert!(s.params(1).is_ok());
        assert!(s.params(0).is_err());
    }

    #[test]
    fn harmonic_rejects_bad_parameters() {
        assert!(HarmonicSchedule::new(0.5, 0.25).is_err());
        assert!(HarmonicSchedule::new(0.5, 0.5).is_err());
        assert!(HarmonicSchedule::new(0.0, 0.5).is_err());
        assert!(HarmonicSchedule::new(0.25, 1.0).is_err());
    }

    #[test]
    fn parses_cli_syntax() {
        let s: HarmonicSchedule = "harmonic:0.25,0.5".parse().unwrap();
        assert_eq!(s, HarmonicSchedule::default());
        assert!("harmonic:0.5,0.25".parse::<HarmonicSchedule>().is_err());
        assert!("linear:0.1,0.2".parse::<HarmonicSchedule>().is_err());
        assert!("harmonic:0.1".parse::<HarmonicSchedule>().is_err());
    }
}
