//! (p,q)-calculus kernel: integers, factorials, binomials, the Pochhammer-type
//! product `ℓ_n(x) = Π_{s<n} (p^s + q^s x)` and its Euler expansion.
//!
//! Everything here is a pure function of a validated [`PqParams`]. Quantities
//! that can overflow (factorials and binomials beyond `n = 150`) also have
//! `ln_*` counterparts that stay finite for any practical `n`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `n` for which factorials and binomials are formed by direct products.
pub const DIRECT_PRODUCT_LIMIT: u32 = 150;

/// A validated `(p, q)` pair with `0 < q ≤ p ≤ 1`.
///
/// `q < p` is the ordinary regime. `q == p` is only reachable through
/// [`PqParams::limit`] or [`PqParams::with_limit`]; in that case `[n]` is the
/// analytic limit `n·p^(n-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PqParams {
    p: f64,
    q: f64,
}

impl PqParams {
    /// Strict constructor: `0 < q < p ≤ 1`.
    pub fn new(p: f64, q: f64) -> Result<Self> {
        let params = Self::with_limit(p, q)?;
        if params.is_limit() {
            return Err(Error::InvalidParams(format!("q = p = {p} requires limit mode")));
        }
        Ok(params)
    }

    /// Accepts `0 < q ≤ p ≤ 1`, entering limit mode when `q == p`.
    pub fn with_limit(p: f64, q: f64) -> Result<Self> {
        if !(p.is_finite() && q.is_finite()) {
            return Err(Error::InvalidParams(format!("non-finite p = {p}, q = {q}")));
        }
        if !(q > 0.0 && q <= p && p <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "need 0 < q <= p <= 1, got p = {p}, q = {q}"
            )));
        }
        Ok(Self { p, q })
    }

    /// Limit mode `q = p`.
    pub fn limit(p: f64) -> Result<Self> {
        Self::with_limit(p, p)
    }

    /// The classical case `p = q = 1`.
    pub fn classical() -> Self {
        Self { p: 1.0, q: 1.0 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn is_limit(&self) -> bool {
        self.p == self.q
    }

    /// `ln(q/p)`, accurate when `q` is close to `p`.
    fn log_ratio(&self) -> f64 {
        ((self.q - self.p) / self.p).ln_1p()
    }
}

/// `[n]_{p,q} = (p^n - q^n)/(p - q)`, or `n·p^(n-1)` in limit mode.
pub fn pq_integer(n: u32, params: &PqParams) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let p = params.p;
    let lead = p.powi(n as i32 - 1);
    if params.is_limit() {
        return n as f64 * lead;
    }
    // p^(n-1) · (1 - r^n)/(1 - r) with r = q/p, written with expm1 so that
    // nothing cancels when q is close to p.
    let lr = params.log_ratio();
    lead * (n as f64 * lr).exp_m1() / lr.exp_m1()
}

/// `ln [n]_{p,q}`; `-inf` for `n = 0`.
pub fn ln_pq_integer(n: u32, params: &PqParams) -> f64 {
    if n == 0 {
        return f64::NEG_INFINITY;
    }
    let lead = (n - 1) as f64 * params.p.ln();
    if params.is_limit() {
        return lead + (n as f64).ln();
    }
    let lr = params.log_ratio();
    lead + ((n as f64 * lr).exp_m1() / lr.exp_m1()).ln()
}

/// `ln [n]_{p,q}!`.
pub fn ln_pq_factorial(n: u32, params: &PqParams) -> f64 {
    (1..=n).map(|i| ln_pq_integer(i, params)).sum()
}

/// `[n]_{p,q}! = Π_{i=1}^{n} [i]_{p,q}`.
pub fn pq_factorial(n: u32, params: &PqParams) -> f64 {
    if n <= DIRECT_PRODUCT_LIMIT {
        (1..=n).map(|i| pq_integer(i, params)).product()
    } else {
        ln_pq_factorial(n, params).exp()
    }
}

fn check_binomial_args(n: u32, k: u32) -> Result<()> {
    if k > n {
        return Err(Error::Domain(format!("binomial needs k <= n, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// `ln [n choose k]_{p,q}`.
pub fn ln_pq_binomial(n: u32, k: u32, params: &PqParams) -> Result<f64> {
    check_binomial_args(n, k)?;
    let k = k.min(n - k);
    Ok((1..=k)
        .map(|i| ln_pq_integer(n - k + i, params) - ln_pq_integer(i, params))
        .sum())
}

/// `[n choose k]_{p,q} = [n]! / ([k]! [n-k]!)`.
pub fn pq_binomial(n: u32, k: u32, params: &PqParams) -> Result<f64> {
    check_binomial_args(n, k)?;
    if n > DIRECT_PRODUCT_LIMIT {
        return ln_pq_binomial(n, k, params).map(f64::exp);
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 1..=k {
        acc *= pq_integer(n - k + i, params) / pq_integer(i, params);
    }
    Ok(acc)
}

/// `ℓ_n(x) = Π_{s=0}^{n-1} (p^s + q^s x)`.
pub fn pochhammer_ell(n: u32, x: f64, params: &PqParams) -> f64 {
    (0..n)
        .map(|s| params.p.powi(s as i32) + params.q.powi(s as i32) * x)
        .product()
}

/// `ln ℓ_n(x)`.
pub fn ln_pochhammer_ell(n: u32, x: f64, params: &PqParams) -> f64 {
    (0..n)
        .map(|s| (params.p.powi(s as i32) + params.q.powi(s as i32) * x).ln())
        .sum()
}

/// `k(k-1)/2` as a signed exponent (zero for `k = 0` and `k = 1`).
pub(crate) fn tri(k: u32) -> i32 {
    let k = k as i64;
    (k * (k - 1) / 2) as i32
}

/// Coefficients `c_k = p^{(n-k)(n-k-1)/2} q^{k(k-1)/2} [n choose k]` of the
/// Euler expansion `ℓ_n(x) = Σ_k c_k x^k`, for `k = 0..=n`.
pub fn euler_coefficients(n: u32, params: &PqParams) -> Vec<f64> {
    (0..=n)
        .map(|k| {
            let binom = pq_binomial(n, k, params).expect("k <= n");
            params.p.powi(tri(n - k)) * params.q.powi(tri(k)) * binom
        })
        .collect()
}

/// `Σ_k c_k x^k`, each term taken from its logarithm and summed after a
/// max-shift. Unlike summing [`euler_coefficients`] directly this stays
/// accurate when some `c_k` fall below the floating-point range while
/// `c_k x^k` does not.
pub fn euler_expansion(n: u32, x: f64, params: &PqParams) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::Domain(format!("x must be finite and >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(params.p.powi(tri(n)));
    }
    let (lp, lq, lx) = (params.p.ln(), params.q.ln(), x.ln());
    let logs = (0..=n)
        .map(|k| Ok(tri(n - k) as f64 * lp + tri(k) as f64 * lq + ln_pq_binomial(n, k, params)? + k as f64 * lx))
        .collect::<Result<Vec<f64>>>()?;
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let scaled: f64 = logs.iter().map(|l| (l - top).exp()).sum();
    Ok((top + scaled.ln()).exp())
}

/// `ln c_k` for the Euler coefficients, built by the ratio recurrence
/// `c_{k+1}/c_k = p^{-(n-k-1)} q^k [n-k]/[k+1]`.
pub fn ln_euler_coefficients(n: u32, params: &PqParams) -> Vec<f64> {
    let (lp, lq) = (params.p.ln(), params.q.ln());
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc = tri(n) as f64 * lp;
    out.push(acc);
    for k in 0..n {
        acc += ln_euler_ratio(n, k, lp, lq, params);
        out.push(acc);
    }
    out
}

#[inline]
pub(crate) fn ln_euler_ratio(n: u32, k: u32, lp: f64, lq: f64, params: &PqParams) -> f64 {
    -((n - k - 1) as f64) * lp + k as f64 * lq + ln_pq_integer(n - k, params) - ln_pq_integer(k + 1, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pq(p: f64, q: f64) -> PqParams {
        PqParams::with_limit(p, q).unwrap()
    }

    fn geometric_oracle(n: u32, p: f64, q: f64) -> f64 {
        (0..n).map(|i| p.powi((n - 1 - i) as i32) * q.powi(i as i32)).sum()
    }

    #[test]
    fn params_validation() {
        assert!(PqParams::new(0.9, 0.5).is_ok());
        assert!(PqParams::new(1.0, 1.0).is_err());
        assert!(PqParams::with_limit(1.0, 1.0).unwrap().is_limit());
        assert!(PqParams::with_limit(0.5, 0.9).is_err());
        assert!(PqParams::with_limit(1.1, 0.9).is_err());
        assert!(PqParams::with_limit(0.5, 0.0).is_err());
        assert!(PqParams::with_limit(f64::NAN, 0.5).is_err());
        assert_eq!(PqParams::classical(), PqParams::limit(1.0).unwrap());
    }

    #[test]
    fn integer_examples() {
        assert_eq!(pq_integer(0, &pq(0.9, 0.5)), 0.0);
        assert_relative_eq!(pq_integer(3, &pq(0.9, 0.5)), 1.51, max_relative = 1e-15);
        assert_eq!(pq_integer(5, &PqParams::classical()), 5.0);
    }

    #[test]
    fn integer_matches_geometric_sum() {
        for &(p, q) in &[(0.9, 0.5), (1.0, 0.3), (0.99, 0.98), (0.7, 0.1), (1.0, 0.999_999)] {
            for n in 0..80 {
                let got = pq_integer(n, &pq(p, q));
                let want = geometric_oracle(n, p, q);
                assert_relative_eq!(got, want, max_relative = 1e-13, epsilon = 1e-300);
                assert!(got >= 0.0 && got <= n as f64 + 1e-12);
            }
        }
    }

    #[test]
    fn limit_mode_is_continuous() {
        let near = pq(0.8, 0.8 - 1e-9);
        let at = PqParams::limit(0.8).unwrap();
        for n in 1..40 {
            assert_relative_eq!(pq_integer(n, &near), pq_integer(n, &at), max_relative = 1e-7);
        }
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(pq_factorial(0, &pq(0.9, 0.5)), 1.0);
        assert_eq!(pq_factorial(3, &PqParams::classical()), 6.0);
        assert_relative_eq!(pq_factorial(3, &pq(0.9, 0.5)), 1.0 * 1.4 * 1.51, max_relative = 1e-15);
    }

    #[test]
    fn factorial_switches_to_log_space() {
        let params = pq(0.99, 0.9);
        let direct: f64 = (1..=160).map(|i| pq_integer(i, &params)).product();
        assert_relative_eq!(pq_factorial(160, &params), direct, max_relative = 1e-11);
        assert!(pq_factorial(200, &PqParams::classical()).is_infinite());
        assert_relative_eq!(
            ln_pq_factorial(200, &PqParams::classical()),
            (1..=200).map(|i| (i as f64).ln()).sum::<f64>(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn binomial_examples() {
        let params = pq(0.9, 0.5);
        assert_eq!(pq_binomial(7, 0, &params).unwrap(), 1.0);
        assert_eq!(pq_binomial(4, 2, &PqParams::classical()).unwrap(), 6.0);
        // factorial oracle: [2]!/([1]![1]!) = [2] = p + q
        let oracle = pq_factorial(2, &params) / (pq_factorial(1, &params) * pq_factorial(1, &params));
        assert_relative_eq!(pq_binomial(2, 1, &params).unwrap(), oracle, max_relative = 1e-15);
        assert_relative_eq!(oracle, 1.4, max_relative = 1e-15);
        assert!(matches!(pq_binomial(2, 3, &params), Err(Error::Domain(_))));
    }

    #[test]
    fn binomial_matches_factorial_ratio() {
        let params = pq(0.95, 0.6);
        for n in 0..40 {
            for k in 0..=n {
                let ratio = pq_factorial(n, &params) / (pq_factorial(k, &params) * pq_factorial(n - k, &params));
                let got = pq_binomial(n, k, &params).unwrap();
                assert!(got > 0.0);
                assert_relative_eq!(got, ratio, max_relative = 1e-12);
                assert_relative_eq!(
                    ln_pq_binomial(n, k, &params).unwrap(),
                    ratio.ln(),
                    epsilon = 1e-12,
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer_ell(0, 3.0, &pq(0.9, 0.5)), 1.0);
        assert_eq!(pochhammer_ell(2, 1.0, &PqParams::classical()), 4.0);
        assert_relative_eq!(pochhammer_ell(2, 2.0, &pq(0.9, 0.5)), 5.7, max_relative = 1e-15);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_coefficients(1, &pq(0.9, 0.5)), vec![1.0, 1.0]);
        assert_eq!(euler_coefficients(2, &PqParams::classical()), vec![1.0, 2.0, 1.0]);
        let c = euler_coefficients(2, &pq(0.9, 0.5));
        for (got, want) in c.iter().zip([0.9, 1.4, 0.5]) {
            assert_relative_eq!(*got, want, max_relative = 1e-15);
        }
    }

    #[test]
    fn log_euler_agrees_with_direct() {
        let params = pq(0.93, 0.71);
        for n in [1, 5, 17, 40] {
            let direct = euler_coefficients(n, &params);
            let logs = ln_euler_coefficients(n, &params);
            for (d, l) in direct.iter().zip(&logs) {
                assert_relative_eq!(d.ln(), *l, epsilon = 1e-11, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn reduces_to_q_integer_at_p_one() {
        for &q in &[0.1f64, 0.3, 0.5, 0.7, 0.9] {
            for n in 0..60 {
                let q_int = (1.0 - q.powi(n as i32)) / (1.0 - q);
                assert_relative_eq!(pq_integer(n, &pq(1.0, q)), q_int, max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn expansion_survives_tiny_coefficients() {
        // c_43.. are subnormal or zero here but c_k x^k dominates.
        let params = pq(0.6, 0.54);
        let direct: f64 = euler_coefficients(50, &params)
            .iter()
            .enumerate()
            .map(|(k, c)| c * 100f64.powi(k as i32))
            .sum();
        let ell = pochhammer_ell(50, 100.0, &params);
        assert!(((direct - ell) / ell).abs() > 1e-8);
        assert_relative_eq!(euler_expansion(50, 100.0, &params).unwrap(), ell, max_relative = 1e-12);
        assert_relative_eq!(
            euler_expansion(7, 0.0, &params).unwrap(),
            pochhammer_ell(7, 0.0, &params)
        );
        assert!(euler_expansion(3, -1.0, &params).is_err());
    }
}
