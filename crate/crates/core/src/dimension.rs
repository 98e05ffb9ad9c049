//! From representative counts to an embedding-dimension estimate.
//!
//! A connected abelian Lie group is `T^q x R^p`, and `H_k(T^q)` has rank
//! `C(q, k)`. Given observed counts `c_k` per homology dimension, each
//! `k >= 1` is inverted separately to the `q_k` whose binomial is closest to
//! `c_k`. Circles count twice and lines once:
//!
//! ```text
//! dim_u       = c_0 + 2 * sum_k q_k
//! uncertainty = 2 * sum_k |C(q_k, k) - c_k|
//! width       = [2 * dim_u, 2 * (dim_u + uncertainty)]
//! ```
//!
//! The widths are doubled because an invertible coupling network splits its
//! layer into two halves.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper end of the `q` scan.
pub const DEFAULT_Q_MAX: u64 = 64;

/// Exact `C(q, k)`; zero for `k > q`.
pub fn binomial(q: u64, k: u64) -> Result<u64> {
    if k > q {
        return Ok(0);
    }
    let k = k.min(q - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // acc * (q + 1 - i) is divisible by i: it is i * C(q, i).
        acc = acc
            .checked_mul(u128::from(q + 1 - i))
            .ok_or(Error::Overflow { q, k })?
            / u128::from(i);
        if acc > u128::from(u64::MAX) {
            return Err(Error::Overflow { q, k });
        }
    }
    Ok(acc as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QEstimate {
    pub k: u64,
    pub q: u64,
    /// `|C(q, k) - c_k|`.
    pub residual: u64,
}

/// Scans `q` in `0..=q_max` for the binomial closest to `count`; ties go to
/// the smaller `q`.
pub fn solve_q(count: u64, k: u64, q_max: u64) -> QEstimate {
    let mut best = QEstimate {
        k,
        q: 0,
        residual: count.abs_diff(binomial(0, k).unwrap_or(0)),
    };
    for q in 1..=q_max {
        // C(q, k) grows with q for k >= 1; an overflow is farther than anything seen.
        let Ok(c) = binomial(q, k) else { break };
        let residual = c.abs_diff(count);
        if residual < best.residual {
            best = QEstimate { k, q, residual };
        }
        if k >= 1 && c > count {
            break;
        }
    }
    best
}

/// Representatives per homology dimension, `c_0, c_1, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyCounts {
    pub counts: Vec<u64>,
}

impl HomologyCounts {
    pub fn new(counts: Vec<u64>) -> Self {
        Self { counts }
    }
}

impl From<Vec<u64>> for HomologyCounts {
    fn from(counts: Vec<u64>) -> Self {
        Self { counts }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionEstimate {
    /// Line factors, read off `c_0`.
    pub p: u64,
    /// One entry per `k >= 1`.
    #[serde(rename = "q")]
    pub q_estimates: Vec<QEstimate>,
    pub dim_u: u64,
    pub uncertainty: u64,
    pub width_interval: [u64; 2],
}

impl DecompositionEstimate {
    /// Total circle count `sum_k q_k`.
    pub fn total_q(&self) -> u64 {
        self.q_estimates.iter().map(|e| e.q).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("estimate always serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let de: Self = serde_json::from_str(text)?;
        let expected = reconstruct(de.p, &de.q_estimates);
        if (expected.dim_u, expected.uncertainty, expected.width_interval)
            != (de.dim_u, de.uncertainty, de.width_interval)
        {
            return Err(Error::InvalidParams(
                "estimate fields are inconsistent with its q entries".into(),
            ));
        }
        Ok(de)
    }
}

fn reconstruct(p: u64, q_estimates: &[QEstimate]) -> DecompositionEstimate {
    let dim_u = p + 2 * q_estimates.iter().map(|e| e.q).sum::<u64>();
    let uncertainty = 2 * q_estimates.iter().map(|e| e.residual).sum::<u64>();
    let mut de = DecompositionEstimate {
        p,
        q_estimates: q_estimates.to_vec(),
        dim_u,
        uncertainty,
        width_interval: [0, 0],
    };
    de.width_interval = recommended_width(&de);
    de
}

pub fn estimate(hc: &HomologyCounts) -> Result<DecompositionEstimate> {
    estimate_with(hc, DEFAULT_Q_MAX)
}

pub fn estimate_with(hc: &HomologyCounts, q_max: u64) -> Result<DecompositionEstimate> {
    if hc.counts.len() < 2 {
        return Err(Error::DegenerateInput(format!(
            "need counts for at least H_0 and H_1, got {}",
            hc.counts.len()
        )));
    }
    if hc.counts.iter().all(|&c| c == 0) {
        return Err(Error::DegenerateInput("all homology counts are zero".into()));
    }
    if q_max < 1 {
        return Err(Error::InvalidParams("q_max must be at least 1".into()));
    }
    let q_estimates: Vec<QEstimate> = hc
        .counts
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| {
            if c == 0 {
                QEstimate { k: k as u64, q: 0, residual: 0 }
            } else {
                solve_q(c, k as u64, q_max)
            }
        })
        .collect();
    Ok(reconstruct(hc.counts[0], &q_estimates))
}

/// `[2 dim_u, 2 (dim_u + uncertainty)]`.
pub fn recommended_width(de: &DecompositionEstimate) -> [u64; 2] {
    [2 * de.dim_u, 2 * (de.dim_u + de.uncertainty)]
}

/// Alternative reading: one torus `T^q` that should explain every `c_k`
/// at once, chosen to minimize the summed residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingleTorusFit {
    pub p: u64,
    pub q: u64,
    pub total_residual: u64,
    /// `p + 2 q`.
    pub dim_u: u64,
}

pub fn single_torus_fit(hc: &HomologyCounts, q_max: u64) -> Result<SingleTorusFit> {
    if hc.counts.len() < 2 || hc.counts.iter().all(|&c| c == 0) {
        return Err(Error::DegenerateInput(
            "need at least two counts, not all zero".into(),
        ));
    }
    let p = hc.counts[0];
    let mut best: Option<SingleTorusFit> = None;
    for q in 0..=q_max {
        let mut total: u64 = 0;
        let mut overflow = false;
        for (k, &c) in hc.counts.iter().enumerate().skip(1) {
            match binomial(q, k as u64) {
                Ok(b) => total = total.saturating_add(b.abs_diff(c)),
                Err(_) => overflow = true,
            }
        }
        if overflow {
            break;
        }
        if best.is_none_or(|b| total < b.total_residual) {
            best = Some(SingleTorusFit {
                p,
                q,
                total_residual: total,
                dim_u: p + 2 * q,
            });
        }
    }
    Ok(best.expect("q = 0 is always evaluated"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(9, 2).unwrap(), 36);
        assert_eq!(binomial(8, 3).unwrap(), 56);
        assert_eq!(binomial(17, 0).unwrap(), 1);
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(64, 32).unwrap(), 1_832_624_140_942_590_534);
        assert!(matches!(binomial(200, 100), Err(Error::Overflow { .. })));
    }

    #[test]
    fn solve_q_table_cells() {
        assert_eq!(solve_q(40, 2, 64), QEstimate { k: 2, q: 9, residual: 4 });
        assert_eq!(solve_q(59, 3, 64), QEstimate { k: 3, q: 8, residual: 3 });
        assert_eq!(solve_q(50, 4, 64), QEstimate { k: 4, q: 7, residual: 15 });
        assert_eq!(solve_q(16, 1, 64), QEstimate { k: 1, q: 16, residual: 0 });
    }

    #[test]
    fn solve_q_ties_prefer_smaller() {
        // C(4,2)=6 and C(5,2)=10 are both 2 away from 8.
        assert_eq!(solve_q(8, 2, 64).q, 4);
        // Below C(k,k) = 1 every q < k ties at c_k.
        assert_eq!(solve_q(0, 3, 64), QEstimate { k: 3, q: 0, residual: 0 });
    }

    #[test]
    fn solve_q_respects_q_max() {
        assert_eq!(solve_q(100, 1, 10), QEstimate { k: 1, q: 10, residual: 90 });
    }

    #[test]
    fn single_circle() {
        let de = estimate(&HomologyCounts::new(vec![1, 1])).unwrap();
        assert_eq!((de.p, de.dim_u, de.uncertainty), (1, 3, 0));
        assert_eq!(de.q_estimates, vec![QEstimate { k: 1, q: 1, residual: 0 }]);
        assert_eq!(de.width_interval, [6, 6]);
    }

    #[test]
    fn absent_dimension_adds_nothing() {
        let de = estimate(&HomologyCounts::new(vec![2, 0, 1])).unwrap();
        assert_eq!(de.q_estimates[0], QEstimate { k: 1, q: 0, residual: 0 });
        assert_eq!(de.q_estimates[1], QEstimate { k: 2, q: 2, residual: 0 });
        assert_eq!(de.dim_u, 6);
    }

    #[test]
    fn degenerate_counts() {
        assert!(matches!(
            estimate(&HomologyCounts::new(vec![0, 0, 0])),
            Err(Error::DegenerateInput(_))
        ));
        assert!(estimate(&HomologyCounts::new(vec![3])).is_err());
    }

    #[test]
    fn estimate_json_schema() {
        let de = estimate(&HomologyCounts::new(vec![1, 1])).unwrap();
        let json: serde_json::Value = serde_json::from_str(&de.to_json()).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "p": 1,
                "q": [{"k": 1, "q": 1, "residual": 0}],
                "dim_u": 3,
                "uncertainty": 0,
                "width_interval": [6, 6]
            })
        );
        assert_eq!(DecompositionEstimate::from_json(&de.to_json()).unwrap(), de);
        let tampered = de.to_json().replace("\"dim_u\": 3", "\"dim_u\": 4");
        assert!(DecompositionEstimate::from_json(&tampered).is_err());
    }

    #[test]
    fn single_torus_reading() {
        // T^3: counts C(3,k) = 3, 3, 1.
        let fit = single_torus_fit(&HomologyCounts::new(vec![1, 3, 3, 1]), 64).unwrap();
        assert_eq!((fit.q, fit.total_residual, fit.dim_u), (3, 0, 7));
    }
}
