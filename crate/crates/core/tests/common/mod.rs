//! Reference implementations that share no code with the library: integers
//! as geometric sums, binomials from the Pascal recursion, weights from a
//! plain log-space product.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `Σ_{j<n} p^{n-1-j} q^j`
pub fn geo_integer(n: u32, p: f64, q: f64) -> f64 {
    (0..n).map(|j| p.powi((n - 1 - j) as i32) * q.powi(j as i32)).sum()
}

/// Rows `0..=n` of `[m choose k]` from `[m k] = p^{m-k}[m-1 k-1] + q^k[m-1 k]`.
pub fn pascal(n: u32, p: f64, q: f64) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = vec![vec![1.0]];
    for m in 1..=n as usize {
        let prev = &rows[m - 1];
        let mut row = vec![1.0; m + 1];
        for k in 1..m {
            row[k] = p.powi((m - k) as i32) * prev[k - 1] + q.powi(k as i32) * prev[k];
        }
        rows.push(row);
    }
    rows
}

fn tri(k: u32) -> f64 {
    (k as f64) * (k as f64 - 1.0) / 2.0
}

pub fn nodes(n: u32, p: f64, q: f64) -> Vec<f64> {
    (0..=n)
        .map(|k| p.powi((n - k + 1) as i32) * geo_integer(k, p, q) / (geo_integer(n - k + 1, p, q) * q.powi(k as i32)))
        .collect()
}

/// Weights `p^{tri(n-k)} q^{tri(k)} [n k] x^k / Π_{s<n}(p^s + q^s x)`, each
/// term exponentiated from its own logarithm.
pub fn weights(n: u32, p: f64, q: f64, x: f64) -> Vec<f64> {
    let binom = pascal(n, p, q).pop().unwrap();
    let ln_ell: f64 = (0..n).map(|s| (p.powi(s as i32) + q.powi(s as i32) * x).ln()).sum();
    (0..=n)
        .map(|k| {
            if x == 0.0 {
                return if k == 0 { 1.0 } else { 0.0 };
            }
            let ln_c = tri(n - k) * p.ln() + tri(k) * q.ln() + binom[k as usize].ln() + k as f64 * x.ln();
            (ln_c - ln_ell).exp()
        })
        .collect()
}

pub fn operator(n: u32, p: f64, q: f64, f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let t = nodes(n, p, q);
    weights(n, p, q, x).iter().zip(&t).map(|(w, &tk)| w * f(tk)).sum()
}

/// The q-analogue (`p = 1`) in plain arithmetic.
pub fn q_bbh(n: u32, q: f64, f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let qint = |m: u32| (0..m).map(|j| q.powi(j as i32)).sum::<f64>();
    let binom = pascal(n, 1.0, q).pop().unwrap();
    let ell: f64 = (0..n).map(|s| 1.0 + q.powi(s as i32) * x).product();
    let mut sum = 0.0;
    for k in 0..=n {
        let node = qint(k) / (qint(n - k + 1) * q.powi(k as i32));
        sum += f(node) * q.powf(tri(k)) * binom[k as usize] * x.powi(k as i32);
    }
    sum / ell
}

/// `(1+x)^{-n} Σ f(k/(n-k+1)) C(n,k) x^k`
pub fn classical_bbh(n: u32, f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let binom = pascal(n, 1.0, 1.0).pop().unwrap();
    let mut sum = 0.0;
    for k in 0..=n {
        sum += f(k as f64 / (n - k + 1) as f64) * binom[k as usize] * x.powi(k as i32);
    }
    sum / (1.0 + x).powi(n as i32)
}

pub fn unit(t: f64) -> f64 {
    t / (1.0 + t)
}

/// `0 < q < p ≤ 1` with `q ≥ q_min`; now and then the classical or limit case.
pub fn random_params(rng: &mut ChaCha8Rng, p_min: f64, q_min: f64) -> (f64, f64) {
    match rng.gen_range(0..10) {
        0 => (1.0, 1.0),
        1 => {
            let p = rng.gen_range(p_min..=1.0);
            (p, p)
        }
        _ => {
            let p: f64 = rng.gen_range(p_min..=1.0);
            let q = rng.gen_range(q_min.min(p * 0.99)..p);
            (p, q)
        }
    }
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }
}
