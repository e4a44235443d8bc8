//! Divided differences and the divided-difference representation of
//! `L_n(f; x) - f(px/q)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::RealFunction;
use crate::operator::{self, OperatorSpec, Variant};
use crate::pq::{self, tri};

/// Points closer than `COLLISION_TOL·(1 + |t|)` are treated as coincident.
pub const COLLISION_TOL: f64 = 1e-9;

pub(crate) fn collides(a: f64, b: f64) -> bool {
    (a - b).abs() < COLLISION_TOL * (1.0 + b.abs())
}

fn check_distinct(points: &[f64]) -> Result<()> {
    for (i, &a) in points.iter().enumerate() {
        if !a.is_finite() {
            return Err(Error::Domain(format!("divided difference point {a} is not finite")));
        }
        for &b in &points[i + 1..] {
            if collides(a, b) {
                return Err(Error::Domain(format!(
                    "coincident divided-difference points {a} and {b}"
                )));
            }
        }
    }
    Ok(())
}

fn first_order(a: f64, fa: f64, b: f64, fb: f64) -> f64 {
    (fb - fa) / (b - a)
}

fn second_order(a: f64, fa: f64, b: f64, fb: f64, c: f64, fc: f64) -> f64 {
    (first_order(b, fb, c, fc) - first_order(a, fa, b, fb)) / (c - a)
}

/// Newton divided difference `[x_0; …; x_m; f]` for two or three points.
pub fn divided_difference<F: RealFunction + ?Sized>(points: &[f64], f: &F) -> Result<f64> {
    check_distinct(points)?;
    let values = points
        .iter()
        .map(|&t| operator::eval_point(f, t))
        .collect::<Result<Vec<_>>>()?;
    match (points, values.as_slice()) {
        (&[a, b], &[fa, fb]) => Ok(first_order(a, fa, b, fb)),
        (&[a, b, c], &[fa, fb, fc]) => Ok(second_order(a, fa, b, fb, c, fc)),
        _ => Err(Error::Domain(format!(
            "divided differences need 2 or 3 points, got {}",
            points.len()
        ))),
    }
}

/// Both sides of the representation identity at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Representation {
    pub x: f64,
    /// `L_n(f; x) - f(px/q)` computed directly.
    pub lhs: f64,
    /// The divided-difference expansion.
    pub rhs: f64,
}

impl Representation {
    pub fn abs_diff(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

/// The divided-difference expansion of `L_n(f; x) - f(px/q)`:
///
/// ```text
/// -(x^{n+1}/ℓ_n(x)) [y; t_n; f] p q^{n(n-1)/2 - 1}
///   + (x/ℓ_n(x)) Σ_{k<n} [y; t_k; t_{k+1}; f] g_k p^{(n-k)(n-k-1)/2+1} q^{k(k-1)/2-1} [n choose k] x^k
/// ```
///
/// where `y = px/q` and `g_k = t_{k+1} - t_k = p^{n-k}[n+1]/([n-k][n-k+1]q^{k+1})`.
/// `y` must stay clear of every node.
pub fn representation_rhs<F: RealFunction + ?Sized>(spec: &OperatorSpec, f: &F, x: f64) -> Result<f64> {
    if spec.variant() != Variant::Base {
        return Err(Error::VariantMismatch("representation needs the base operator"));
    }
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::Domain(format!("representation needs x > 0, got {x}")));
    }
    let (n, params) = (spec.n(), spec.params());
    let (p, q) = (params.p(), params.q());
    let y = p * x / q;
    let table = operator::nodes(spec);
    let t = table.values();
    if let Some(index) = t.iter().position(|&node| collides(y, node)) {
        return Err(Error::NodeCollision {
            point: y,
            node: t[index],
            index,
        });
    }

    let fy = operator::eval_point(f, y)?;
    let ft = t
        .iter()
        .enumerate()
        .map(|(k, &tk)| operator::eval_at(f, k, tk))
        .collect::<Result<Vec<_>>>()?;

    // 1/ℓ_n(x) and the powers of x are folded into logarithms so that large
    // degrees and arguments do not overflow.
    let ln_ell = pq::ln_pochhammer_ell(n, x, &params);
    let lx = x.ln();
    let nu = n as usize;
    let n1 = pq::pq_integer(n + 1, &params);

    let head_scale = ((n + 1) as f64 * lx - ln_ell).exp();
    let head = -head_scale * first_order(y, fy, t[nu], ft[nu]) * p * q.powi(tri(n) - 1);

    let mut sum = 0.0;
    for k in 0..n {
        let ku = k as usize;
        let gap = p.powi((n - k) as i32) * n1
            / (pq::pq_integer(n - k, &params) * pq::pq_integer(n - k + 1, &params) * q.powi(k as i32 + 1));
        let dd = second_order(y, fy, t[ku], ft[ku], t[ku + 1], ft[ku + 1]);
        let coeff = p.powi(tri(n - k) + 1) * q.powi(tri(k) - 1);
        let binom_xk = (pq::ln_pq_binomial(n, k, &params)? + k as f64 * lx + lx - ln_ell).exp();
        sum += dd * gap * coeff * binom_xk;
    }
    Ok(head + sum)
}

/// Direct left-hand side `L_n(f; x) - f(px/q)` together with
/// [`representation_rhs`].
pub fn representation<F: RealFunction + ?Sized>(spec: &OperatorSpec, f: &F, x: f64) -> Result<Representation> {
    let rhs = representation_rhs(spec, f, x)?;
    let params = spec.params();
    let y = params.p() * x / params.q();
    let lhs = operator::evaluate(spec, f, x)? - operator::eval_point(f, y)?;
    Ok(Representation { x, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pq::PqParams;
    use approx::assert_relative_eq;

    #[test]
    fn divided_difference_examples() {
        let sq = |t: f64| t * t;
        assert_eq!(divided_difference(&[0.0, 1.0], &sq).unwrap(), 1.0);
        assert_eq!(divided_difference(&[0.0, 1.0, 2.0], &sq).unwrap(), 1.0);
        assert_eq!(divided_difference(&[1.0, 2.0], &|t: f64| 1.0 / t).unwrap(), -0.5);
    }

    #[test]
    fn divided_difference_is_symmetric() {
        let f = |t: f64| (0.3 * t).sin() + t * t * t;
        let a = divided_difference(&[0.2, 1.1, 3.0], &f).unwrap();
        let b = divided_difference(&[3.0, 0.2, 1.1], &f).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-13);
    }

    #[test]
    fn divided_difference_rejects_bad_input() {
        let f = |t: f64| t;
        assert!(divided_difference(&[1.0, 1.0 + 1e-12], &f).is_err());
        assert!(divided_difference(&[1.0], &f).is_err());
        assert!(divided_difference(&[1.0, 2.0, 3.0, 4.0], &f).is_err());
    }

    #[test]
    fn hand_case() {
        let spec = OperatorSpec::base(1, PqParams::classical()).unwrap();
        let rhs = representation_rhs(&spec, &|t: f64| t, 2.0).unwrap();
        assert_relative_eq!(rhs, -4.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn constant_function_gives_zero() {
        let spec = OperatorSpec::base(5, PqParams::new(0.9, 0.6).unwrap()).unwrap();
        assert_eq!(representation_rhs(&spec, &|_: f64| 4.2, 0.77).unwrap(), 0.0);
    }

    #[test]
    fn matches_direct_left_hand_side() {
        let spec = OperatorSpec::base(6, PqParams::new(0.95, 0.7).unwrap()).unwrap();
        let f = |t: f64| 1.0 - 0.5 * t + 0.1 * t * t * t;
        let r = representation(&spec, &f, 1.3).unwrap();
        assert!(r.abs_diff() <= 1e-9 * (1.0 + r.lhs.abs()), "{r:?}");
    }

    #[test]
    fn rejects_collisions_and_bad_points() {
        let spec = OperatorSpec::base(2, PqParams::classical()).unwrap();
        // y = x for p = q = 1, and t_{2,1} = 1/2.
        match representation_rhs(&spec, &|t: f64| t, 0.5) {
            Err(Error::NodeCollision { index, .. }) => assert_eq!(index, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(representation_rhs(&spec, &|t: f64| t, 0.0).is_err());
        let stancu = OperatorSpec::stancu(2, PqParams::classical(), 1.0, 0.0).unwrap();
        assert!(representation_rhs(&stancu, &|t: f64| t, 1.3).is_err());
    }
}
