use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::PersistencePair;
use crate::error::{Error, Result};

/// A point of a persistence diagram; `death == None` encodes infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramPoint {
    pub birth: f64,
    pub death: Option<f64>,
}

impl DiagramPoint {
    pub fn new(birth: f64, death: Option<f64>) -> Self {
        Self { birth, death }
    }

    pub fn persistence(&self) -> f64 {
        self.death.map_or(f64::INFINITY, |d| d - self.birth)
    }

    /// True if the class is alive at scale `eps`: `birth <= eps < death`.
    pub fn alive_at(&self, eps: f64) -> bool {
        self.birth <= eps && self.death.is_none_or(|d| eps < d)
    }

    fn order(&self, other: &Self) -> Ordering {
        self.birth.total_cmp(&other.birth).then(match (self.death, other.death) {
            (Some(a), Some(b)) => a.total_cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        })
    }
}

/// The multiset of off-diagonal points in homology dimension `k`, sorted by
/// `(birth, death)` with infinite deaths last.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    pub k: usize,
    pub points: Vec<DiagramPoint>,
}

impl PersistenceDiagram {
    /// Sorts the points; rejects points below the diagonal.
    pub fn new(k: usize, mut points: Vec<DiagramPoint>) -> Result<Self> {
        for p in &points {
            if !p.birth.is_finite() || p.death.is_some_and(|d| !d.is_finite() || d < p.birth) {
                return Err(Error::InvalidParams(format!(
                    "diagram point ({}, {:?}) is not a valid (birth, death) pair",
                    p.birth, p.death
                )));
            }
        }
        points.sort_by(DiagramPoint::order);
        Ok(Self { k, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn essential_count(&self) -> usize {
        self.points.iter().filter(|p| p.death.is_none()).count()
    }

    /// Largest finite birth or death value, if any.
    pub fn max_finite_value(&self) -> Option<f64> {
        self.points
            .iter()
            .flat_map(|p| std::iter::once(p.birth).chain(p.death))
            .reduce(f64::max)
    }
}

/// Dimension-`k` diagram: zero-persistence pairs are dropped, essential pairs
/// kept with infinite death.
pub fn diagram(pairs: &[PersistencePair], k: usize) -> PersistenceDiagram {
    let mut points: Vec<DiagramPoint> = pairs
        .iter()
        .filter(|p| p.dim == k && !p.is_zero_persistence())
        .map(|p| DiagramPoint::new(p.birth, p.death))
        .collect();
    points.sort_by(DiagramPoint::order);
    PersistenceDiagram { k, points }
}

/// `betti[i]` = number of classes alive at `grid[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BettiCurve {
    pub k: usize,
    pub grid: Vec<f64>,
    pub betti: Vec<usize>,
}

pub fn betti_curve(dg: &PersistenceDiagram, grid: &[f64]) -> BettiCurve {
    let betti = grid
        .iter()
        .map(|&eps| dg.points.iter().filter(|p| p.alive_at(eps)).count())
        .collect();
    BettiCurve {
        k: dg.k,
        grid: grid.to_vec(),
        betti,
    }
}

/// Persistent Betti numbers on a scale grid `e_0 < ... < e_{m-1}`, extended
/// by `e_m = +inf`. `rank(a, b)` counts classes born at or before `e_a` that
/// are still alive after `e_b`; for `a <= b` this is the rank of the map
/// `H_k(K^{e_a}) -> H_k(K^{e_b})`. Index `-1` stands for "before the grid".
#[derive(Debug, Clone)]
pub struct BettiTable {
    pub k: usize,
    pub grid: Vec<f64>,
    // (m + 1) rows for a in -1..m, (m + 2) columns for b in -1..=m
    ranks: Vec<usize>,
}

impl BettiTable {
    /// Builds the table for dimension `k` from all pairs, including
    /// zero-persistence ones.
    pub fn from_pairs(pairs: &[PersistencePair], k: usize, grid: &[f64]) -> Self {
        let m = grid.len();
        let locate = |v: f64| grid.partition_point(|&g| g < v);
        // counts[bi][di] for bi in 0..=m, di in 0..=m
        let mut counts = vec![0usize; (m + 1) * (m + 1)];
        for p in pairs.iter().filter(|p| p.dim == k) {
            let bi = locate(p.birth);
            let di = p.death.map_or(m, locate);
            counts[bi * (m + 1) + di] += 1;
        }
        let rows = m + 1;
        let cols = m + 2;
        // suffix[bi][t] = sum of counts[bi][di] over di >= t, t in 0..=m+1
        let mut suffix = vec![0usize; (m + 1) * cols];
        for bi in 0..=m {
            for t in (0..=m).rev() {
                suffix[bi * cols + t] = suffix[bi * cols + t + 1] + counts[bi * (m + 1) + t];
            }
        }
        // rank(a, b) = sum over bi <= a of suffix[bi][b + 1]
        let mut ranks = vec![0usize; rows * cols];
        for a in 0..m {
            for c in 0..cols {
                let prev = ranks[a * cols + c];
                ranks[(a + 1) * cols + c] = prev + suffix[a * cols + c];
            }
        }
        Self {
            k,
            grid: grid.to_vec(),
            ranks,
        }
    }

    /// Number of finite grid values `m`; the infinite index is `m`.
    pub fn size(&self) -> usize {
        self.grid.len()
    }

    pub fn rank(&self, a: isize, b: isize) -> usize {
        let m = self.grid.len() as isize;
        assert!((-1..m).contains(&a) && (-1..=m).contains(&b));
        if a < 0 {
            return 0;
        }
        self.ranks[(a + 1) as usize * (self.grid.len() + 2) + (b + 1) as usize]
    }
}

/// Number of classes born at grid index `i` and dying at grid index `j`
/// (`j == m` for essential classes), by inclusion–exclusion over persistent
/// Betti numbers. For `i == j` this counts zero-persistence pairs.
pub fn multiplicity(table: &BettiTable, i: usize, j: usize) -> Result<usize> {
    let m = table.size();
    if i >= m || j > m || i > j {
        return Err(Error::IndexOutOfRange(format!(
            "need i <= j, i < {m}, j <= {m}; got i = {i}, j = {j}"
        )));
    }
    let (i, j) = (i as isize, j as isize);
    let r = |a, b| table.rank(a, b) as i64;
    let mu = (r(i, j - 1) - r(i, j)) - (r(i - 1, j - 1) - r(i - 1, j));
    debug_assert!(mu >= 0);
    Ok(mu as usize)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramRecord {
    k: usize,
    birth: f64,
    #[serde(deserialize_with = "nullable")]
    death: Option<f64>,
}

// Present-but-null means infinity; a missing field is an error.
fn nullable<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Option<f64>, D::Error> {
    Option::<f64>::deserialize(d)
}

/// `[{"k": .., "birth": .., "death": ..|null}, ...]` ordered by `(k, birth, death)`.
pub fn diagrams_to_json(diagrams: &[PersistenceDiagram]) -> String {
    let mut sorted: Vec<&PersistenceDiagram> = diagrams.iter().collect();
    sorted.sort_by_key(|d| d.k);
    let mut records = Vec::new();
    for dg in sorted {
        let mut points = dg.points.clone();
        points.sort_by(DiagramPoint::order);
        records.extend(points.into_iter().map(|p| DiagramRecord {
            k: dg.k,
            birth: p.birth,
            death: p.death,
        }));
    }
    serde_json::to_string_pretty(&records).expect("diagram records always serialize")
}

/// Parses diagram JSON into one diagram per dimension `0..=max k`.
pub fn diagrams_from_json(text: &str) -> Result<Vec<PersistenceDiagram>> {
    let records: Vec<DiagramRecord> = serde_json::from_str(text)?;
    let max_k = records.iter().map(|r| r.k).max().unwrap_or(0);
    let mut buckets: Vec<Vec<DiagramPoint>> = vec![Vec::new(); max_k + 1];
    for r in records {
        buckets[r.k].push(DiagramPoint::new(r.birth, r.death));
    }
    buckets
        .into_iter()
        .enumerate()
        .map(|(k, pts)| PersistenceDiagram::new(k, pts))
        .collect()
}
