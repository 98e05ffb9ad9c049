//! Betti numbers straight from the definition, `dim ker d_k - rank d_(k+1)`,
//! by dense Gaussian elimination over `Z/2`. Quadratic memory, so only for
//! small complexes; it shares nothing with the column reduction.

use crate::error::{Error, Result};
use crate::filtration::Filtration;

/// Largest sublevel complex the oracle accepts.
pub const ORACLE_CAPACITY: usize = 2000;

/// Rank over `Z/2` of a matrix given as columns of row indices (`rows` rows).
pub fn z2_rank(rows: usize, columns: &[Vec<usize>]) -> usize {
    let words = rows.div_ceil(64).max(1);
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; rows];
    let mut rank = 0;
    for col in columns {
        let mut v = vec![0u64; words];
        for &r in col {
            v[r / 64] ^= 1 << (r % 64);
        }
        while let Some(top) = highest_bit(&v) {
            match &basis[top] {
                Some(b) => {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
                None => {
                    basis[top] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn highest_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .rev()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
}

/// `[beta_0, ..., beta_max_dim]` of the sublevel complex `{value <= eps}`.
pub fn brute_force_betti(f: &Filtration, eps: f64) -> Result<Vec<usize>> {
    let sub: Vec<_> = f.simplices().iter().filter(|s| s.value <= eps).collect();
    if sub.len() > ORACLE_CAPACITY {
        return Err(Error::CapacityExceeded {
            dim: f.max_dim(),
            budget: ORACLE_CAPACITY,
        });
    }
    let top = f.max_dim();
    // Per-dimension local numbering.
    let mut by_dim: Vec<Vec<&[usize]>> = vec![Vec::new(); top + 1];
    for s in &sub {
        by_dim[s.simplex.dim()].push(s.simplex.vertices());
    }
    let local: Vec<std::collections::HashMap<&[usize], usize>> = by_dim
        .iter()
        .map(|list| list.iter().enumerate().map(|(i, v)| (*v, i)).collect())
        .collect();

    // rank of d_k : C_k -> C_(k-1), for k = 1..=top
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let mut columns = Vec::with_capacity(by_dim[k].len());
        for verts in &by_dim[k] {
            let mut col = Vec::with_capacity(k + 1);
            for omit in 0..verts.len() {
                let face: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != omit)
                    .map(|(_, &v)| v)
                    .collect();
                let idx = local[k - 1].get(face.as_slice()).ok_or_else(|| Error::MissingFace {
                    simplex: verts.to_vec(),
                    face: face.clone(),
                })?;
                col.push(*idx);
            }
            columns.push(col);
        }
        ranks[k] = z2_rank(by_dim[k - 1].len(), &columns);
    }

    Ok((0..=top)
        .map(|k| by_dim[k].len() - ranks[k] - ranks[k + 1])
        .collect())
}
