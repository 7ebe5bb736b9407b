//! The truncated cluster expansion `T_m = Σ_{g(Γ) < m} φ(Γ) ∏ w_γ`.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::cluster::{for_each_cluster, ClusterLimits};
use super::PolymerIndex;
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Truncation {
    pub m: f64,
    pub value: f64,
    pub cluster_count: usize,
    pub size_bound: usize,
}

/// `m = ln(n/ε)`: the cutoff at which `|ln Ξ − T_m| ≤ ε` under the
/// Kotecký–Preiss condition.
pub fn truncation_cutoff(n: usize, eps: f64) -> f64 {
    (n.max(1) as f64 / eps).ln()
}

/// `T_m` with compensated summation. Partial sums are formed per root
/// polymer and merged in root order, so the result does not depend on the
/// thread count.
pub fn truncated_expansion(index: &PolymerIndex, m: f64) -> Result<Truncation> {
    truncated_expansion_with(index, ClusterLimits::for_index(index, m))
}

pub fn truncated_expansion_with(index: &PolymerIndex, limits: ClusterLimits) -> Result<Truncation> {
    let partials = for_each_cluster(
        index,
        limits,
        || (CompensatedSum::new(), 0usize),
        |acc, c| {
            acc.0.add(c.term());
            acc.1 += 1;
        },
    )?;
    let mut total = CompensatedSum::new();
    let mut count = 0;
    for (s, n) in &partials {
        total.merge(s);
        count += n;
    }
    Ok(Truncation {
        m: limits.m,
        value: total.value(),
        cluster_count: count,
        size_bound: limits.size_bound,
    })
}

/// `T_m` in exact rational arithmetic; needs exact polymer weights.
pub fn truncated_expansion_exact(index: &PolymerIndex, m: f64) -> Result<BigRational> {
    let weights = index
        .exact_weights()
        .ok_or_else(|| Error::InvalidParameter("index has no exact weights".into()))?;
    let partials = for_each_cluster(
        index,
        ClusterLimits::for_index(index, m),
        BigRational::zero,
        |acc, c| *acc += c.exact_term(&weights),
    )?;
    Ok(partials.into_iter().fold(BigRational::zero(), |a, b| a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymer::{AbstractPolymer, PolymerIndex};
    use num_bigint::BigInt;

    fn taylor_log1p(x: f64, order: usize) -> f64 {
        (1..=order)
            .map(|j| (if j % 2 == 1 { 1.0 } else { -1.0 }) * x.powi(j as i32) / j as f64)
            .sum()
    }

    #[test]
    fn worked_order_two_value() {
        let idx = PolymerIndex::mutually_incompatible(3, 0.1);
        let t = truncated_expansion(&idx, 2.5).unwrap();
        assert!((t.value - 0.255).abs() < 1e-15);
    }

    #[test]
    fn single_polymer_series() {
        for &w in &[0.05, 0.1, 0.3] {
            let idx = PolymerIndex::from_parts(vec![AbstractPolymer::unit(w)], &[]);
            for order in 1..=9 {
                let t = truncated_expansion(&idx, order as f64 + 0.5).unwrap();
                assert!(
                    (t.value - taylor_log1p(w, order)).abs() < 1e-14,
                    "w={w} order={order}"
                );
            }
        }
    }

    #[test]
    fn exact_mode_matches_series() {
        let w = BigRational::new(BigInt::from(1), BigInt::from(10));
        let idx = PolymerIndex::from_parts(
            vec![AbstractPolymer::unit_exact(w.clone()); 3],
            &[(0, 1), (1, 2), (0, 2)],
        );
        let three_w = w * BigInt::from(3);
        for order in 1..=6usize {
            let t = truncated_expansion_exact(&idx, order as f64 + 0.5).unwrap();
            let mut expected = BigRational::zero();
            for j in 1..=order {
                let term = num_traits::pow(three_w.clone(), j) / BigInt::from(j);
                if j % 2 == 1 {
                    expected += term;
                } else {
                    expected -= term;
                }
            }
            assert_eq!(t, expected, "order {order}");
        }
    }

    #[test]
    fn empty_index_is_zero() {
        let idx = PolymerIndex::from_parts(Vec::new(), &[]);
        let t = truncated_expansion(&idx, 10.0).unwrap();
        assert_eq!((t.value, t.cluster_count), (0.0, 0));
    }

    #[test]
    fn cutoff_formula() {
        assert!((truncation_cutoff(10, 0.1) - 100f64.ln()).abs() < 1e-15);
    }
}
