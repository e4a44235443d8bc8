use crate::error::{Error, Result};
use crate::operator::{check_point, OperatorSpec, Variant};
use crate::pq::pq_integer;

use super::{to_unit, GridSpec};

fn check_nu(nu: u32) -> Result<()> {
    if nu > 2 {
        return Err(Error::Domain(format!("moment order must be 0, 1 or 2, got {nu}")));
    }
    Ok(())
}

fn check_base(spec: &OperatorSpec) -> Result<()> {
    match spec.variant() {
        Variant::Base => Ok(()),
        Variant::Stancu { .. } => Err(Error::VariantMismatch("closed forms need the base operator")),
    }
}

/// The Korovkin test function `(t/(1+t))^ν`.
pub fn test_function(nu: u32) -> impl Fn(f64) -> f64 + Sync + Copy {
    move |t: f64| to_unit(t).powi(nu as i32)
}

/// Coefficients shared by the second-moment closed forms:
/// `(p²q²[n][n-1]/[n+1]², p[n]/[n+1], p^{n+1}[n]/[n+1]²)`.
fn second_moment_coefficients(spec: &OperatorSpec) -> (f64, f64, f64) {
    let (n, params) = (spec.n(), spec.params());
    let (p, q) = (params.p(), params.q());
    let nn = pq_integer(n, &params);
    let nm1 = pq_integer(n - 1, &params);
    let np1 = pq_integer(n + 1, &params);
    let quad = p * p * q * q * nn * nm1 / (np1 * np1);
    let first = p * nn / np1;
    let lin = p.powi(n as i32 + 1) * nn / (np1 * np1);
    (quad, first, lin)
}

/// `x²/((1+x)(p+qx))`
fn quadratic_factor(spec: &OperatorSpec, x: f64) -> f64 {
    let params = spec.params();
    x * x / ((1.0 + x) * (params.p() + params.q() * x))
}

/// Closed form of `L_n((t/(1+t))^ν; x)` for `ν ∈ {0, 1, 2}`:
///
/// * `ν = 0`: `1`
/// * `ν = 1`: `p[n]/[n+1] · x/(1+x)`
/// * `ν = 2`: `p²q²[n][n-1]/[n+1]² · x²/((1+x)(p+qx)) + p^{n+1}[n]/[n+1]² · x/(1+x)`
pub fn moment_closed(spec: &OperatorSpec, nu: u32, x: f64) -> Result<f64> {
    check_nu(nu)?;
    check_base(spec)?;
    check_point(x)?;
    let u = to_unit(x);
    let (quad, first, lin) = second_moment_coefficients(spec);
    Ok(match nu {
        0 => 1.0,
        1 => first * u,
        _ => quad * quadratic_factor(spec, x) + lin * u,
    })
}

/// `δ_n(x) = L_n((t/(1+t) - x/(1+x))²; x)` in closed form:
///
/// ```text
/// x²/(1+x)² · (A (1+x)/(p+qx) - 2p[n]/[n+1] + 1) + p^{n+1}[n]/[n+1]² · x/(1+x)
/// ```
///
/// with `A = p²q²[n][n-1]/[n+1]²`.
pub fn delta_n(spec: &OperatorSpec, x: f64) -> Result<f64> {
    check_base(spec)?;
    check_point(x)?;
    let u = to_unit(x);
    let (quad, first, lin) = second_moment_coefficients(spec);
    let params = spec.params();
    let ratio = (1.0 + x) / (params.p() + params.q() * x);
    Ok(u * u * (quad * ratio - 2.0 * first + 1.0) + lin * u)
}

/// `max_{x ∈ grid} |L_n((t/(1+t))^ν; x) - (x/(1+x))^ν|`, a lower bound for the
/// sup norm over the half-line.
pub fn korovkin_discrepancy(spec: &OperatorSpec, nu: u32, grid: &GridSpec) -> Result<f64> {
    check_nu(nu)?;
    let mut worst: f64 = 0.0;
    for &x in grid.points() {
        let d = (moment_closed(spec, nu, x)? - to_unit(x).powi(nu as i32)).abs();
        worst = worst.max(d);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::evaluate;
    use crate::pq::PqParams;
    use approx::assert_relative_eq;

    fn spec(n: u32, p: f64, q: f64) -> OperatorSpec {
        OperatorSpec::base(n, PqParams::with_limit(p, q).unwrap()).unwrap()
    }

    /// Brute-force moment: evaluate the operator on the test function.
    fn brute(spec: &OperatorSpec, nu: u32, x: f64) -> f64 {
        evaluate(spec, &test_function(nu), x).unwrap()
    }

    #[test]
    fn moment_examples() {
        let s = spec(2, 1.0, 1.0);
        assert_eq!(moment_closed(&spec(9, 0.8, 0.3), 0, 3.0).unwrap(), 1.0);
        assert_relative_eq!(moment_closed(&s, 1, 1.0).unwrap(), 1.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(brute(&s, 1, 1.0), 1.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(moment_closed(&s, 2, 1.0).unwrap(), 1.0 / 6.0, max_relative = 1e-15);
        assert_relative_eq!(brute(&s, 2, 1.0), 1.0 / 6.0, max_relative = 1e-15);
        assert!(moment_closed(&s, 3, 1.0).is_err());
    }

    #[test]
    fn second_moment_needs_p_squared_for_p_below_one() {
        // At p < 1 the coefficient p·q²·[n][n-1]/[n+1]² misses a factor p; only
        // p²q² reproduces the brute-force sum.
        let s = spec(3, 0.9, 0.5);
        let x = 2.0;
        let direct = brute(&s, 2, x);
        assert_relative_eq!(moment_closed(&s, 2, x).unwrap(), direct, max_relative = 1e-13);
        let (quad, _, lin) = second_moment_coefficients(&s);
        let with_single_p = quad / 0.9 * quadratic_factor(&s, x) + lin * to_unit(x);
        assert!((with_single_p - direct).abs() > 1e-3);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_n(&spec(5, 0.9, 0.6), 0.0).unwrap(), 0.0);
        assert!((delta_n(&spec(2, 1.0, 1.0), 1.0).unwrap() - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn delta_matches_centered_moment() {
        for &(n, p, q, x) in &[
            (1, 0.9, 0.4, 0.7),
            (4, 0.97, 0.8, 3.0),
            (30, 0.99, 0.95, 12.0),
            (7, 0.6, 0.6, 5.0),
        ] {
            let s = spec(n, p, q);
            let u = to_unit(x);
            let centered = moment_closed(&s, 2, x).unwrap() - 2.0 * u * moment_closed(&s, 1, x).unwrap() + u * u;
            let d = delta_n(&s, x).unwrap();
            assert!((d - centered).abs() < 1e-12);
            assert!(d >= -1e-14);
        }
    }

    #[test]
    fn discrepancy_examples() {
        let grid = GridSpec::default();
        assert_eq!(korovkin_discrepancy(&spec(9, 1.0, 1.0), 0, &grid).unwrap(), 0.0);
        let d = korovkin_discrepancy(&spec(9, 1.0, 1.0), 1, &grid).unwrap();
        assert_relative_eq!(d, 0.1 * 50.0 / 51.0, max_relative = 1e-12);
    }
}
