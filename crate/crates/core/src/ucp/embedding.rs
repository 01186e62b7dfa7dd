use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{domain, FsqError, Result};

/// Largest denominator tried when approximating a weight.
pub const DENOMINATOR_CAP: u64 = 1_000_000;

/// Unital embedding `x -> (+)_s x_s^{(+) r_s}` of `(+)_s M_{m_s}` into `M_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEmbedding {
    pub n: u64,
    pub multiplicities: Vec<u64>,
    /// Weights `r_s m_s / n` realized by `tr_n o rho`.
    pub realized: Vec<f64>,
    /// `sum_s |t_s - r_s m_s / n|`, a bound on `sup_{||x|| <= 1} |tau(x) - tr_n(rho(x))|`.
    pub defect_bound: f64,
    pub exact: bool,
}

/// Continued-fraction convergent `p / q` of `x` with `|x - p/q| < tol`, or
/// the last convergent whose denominator stays within `cap`.
pub fn rational_approximation(x: f64, tol: f64, cap: u64) -> (u64, u64) {
    let (mut p0, mut q0, mut p1, mut q1) = (0u64, 1u64, 1u64, 0u64);
    let mut r = x;
    loop {
        let a = r.floor();
        let Some(p2) = (a as u64).checked_mul(p1).and_then(|v| v.checked_add(p0)) else { break };
        let Some(q2) = (a as u64).checked_mul(q1).and_then(|v| v.checked_add(q0)) else { break };
        if q2 > cap {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a;
        if (x - p1 as f64 / q1 as f64).abs() < tol || frac < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    (p1, q1)
}

/// Multiplicities `r_s` with `|tau(x) - tr_n(rho(x))| < eps ||x||`, where
/// `tau = sum_s t_s tr_{m_s}` is a convex combination of the extreme traces.
pub fn trace_preserving_embedding(sizes: &[usize], weights: &[f64], eps: f64) -> Result<TraceEmbedding> {
    if !(eps > 0.0) {
        return domain("embedding tolerance must be positive");
    }
    if sizes.is_empty() || sizes.len() != weights.len() || sizes.contains(&0) {
        return domain("need one weight per nonempty summand");
    }
    if weights.iter().any(|&t| !(t >= 0.0)) || (weights.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
        return domain("weights must be a probability vector");
    }
    let k = sizes.len();
    // each approximated weight is off by < eps / (2k); the largest weight
    // absorbs the rounding of the others.
    let tol = eps / (2.0 * k as f64);
    let pivot = (0..k).max_by(|&a, &b| weights[a].total_cmp(&weights[b])).expect("nonempty");
    let mut fracs: Vec<(u64, u64)> = weights
        .iter()
        .map(|&t| {
            let (p, q) = rational_approximation(t, tol, DENOMINATOR_CAP);
            if p == 0 {
                // keep every summand: rho must be injective
                (1, ((1.0 / tol).ceil() as u64 + 1).min(DENOMINATOR_CAP))
            } else {
                (p, q)
            }
        })
        .collect();
    let overflow = || FsqError::Resource("embedding dimension overflows u64".into());
    let mut d: u64 = 1;
    for (s, &(_, q)) in fracs.iter().enumerate() {
        if s != pivot {
            d = d.lcm(&q);
        }
    }
    let mut c: Vec<u64> = fracs.iter().map(|&(p, q)| p * (d / q)).collect();
    let others: u64 = c.iter().enumerate().filter(|&(s, _)| s != pivot).map(|(_, &v)| v).sum();
    if others >= d {
        return domain("weights could not be approximated consistently; decrease eps");
    }
    c[pivot] = d - others;
    fracs[pivot] = (c[pivot], d);

    // r_s = c_s n / (d m_s) must be an integer
    let mut n: u64 = 1;
    for (s, &m) in sizes.iter().enumerate() {
        let dm = d.checked_mul(m as u64).ok_or_else(overflow)?;
        let need = dm / dm.gcd(&c[s]);
        n = n.checked_mul(need / n.gcd(&need)).ok_or_else(overflow)?;
    }
    let multiplicities: Vec<u64> = sizes
        .iter()
        .zip(&c)
        .map(|(&m, &cs)| (cs as u128 * n as u128 / (d as u128 * m as u128)) as u64)
        .collect();
    let realized: Vec<f64> = sizes
        .iter()
        .zip(&multiplicities)
        .map(|(&m, &r)| (r as f64 * m as f64) / n as f64)
        .collect();
    let defect_bound = weights.iter().zip(&realized).map(|(t, r)| (t - r).abs()).sum::<f64>();
    Ok(TraceEmbedding {
        n,
        multiplicities,
        exact: defect_bound <= 1e-15,
        realized,
        defect_bound,
    })
}
