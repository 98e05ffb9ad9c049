//! Vietoris–Rips filtrations.
//!
//! A simplex enters at the largest pairwise distance among its vertices.
//! Simplices are stored sorted by `(value, dim, vertices)`, so every prefix of
//! the stored sequence is itself a simplicial complex and faces always come
//! before their cofaces.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointcloud::DistanceMatrix;

/// Default cap on the number of simplices a filtration may hold.
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// A simplex given by strictly increasing vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts and validates the vertex list.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParams(format!(
                "simplex vertices must be non-empty and distinct: {vertices:?}"
            )));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Codimension-one faces, the `i`-th omitting vertex `i`.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Simplex(v)
        })
    }

    /// Largest pairwise distance between vertices.
    pub fn diameter(&self, dm: &DistanceMatrix) -> f64 {
        let mut best = 0.0f64;
        for (a, &i) in self.0.iter().enumerate() {
            for &j in &self.0[a + 1..] {
                best = best.max(dm.get(i, j));
            }
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilteredSimplex {
    pub simplex: Simplex,
    pub value: f64,
}

fn filtration_order(a: &FilteredSimplex, b: &FilteredSimplex) -> Ordering {
    a.value
        .total_cmp(&b.value)
        .then(a.simplex.dim().cmp(&b.simplex.dim()))
        .then_with(|| a.simplex.vertices().cmp(b.simplex.vertices()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiltrationParams {
    /// Largest simplex dimension to expand to.
    pub max_dim: usize,
    /// Edges longer than this are left out.
    pub max_edge: f64,
    /// Upper bound on the total simplex count.
    pub budget: usize,
}

impl FiltrationParams {
    pub fn new(max_dim: usize, max_edge: f64) -> Self {
        Self {
            max_dim,
            max_edge,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.max_edge.is_nan() || self.max_edge <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "max_edge must be positive, got {}",
                self.max_edge
            )));
        }
        if n > 0 && self.max_dim > n - 1 {
            return Err(Error::InvalidParams(format!(
                "max_dim {} exceeds n - 1 = {}",
                self.max_dim,
                n - 1
            )));
        }
        Ok(())
    }
}

/// A Rips filtration in canonical order.
#[derive(Debug, Clone)]
pub struct Filtration {
    simplices: Vec<FilteredSimplex>,
    max_dim: usize,
    max_edge: f64,
}

impl Filtration {
    /// Wraps simplices after sorting them into filtration order. Closure and
    /// monotonicity are the caller's responsibility; see [`Filtration::check`].
    pub fn from_simplices(mut simplices: Vec<FilteredSimplex>, max_edge: f64) -> Self {
        simplices.sort_by(filtration_order);
        let max_dim = simplices.iter().map(|s| s.simplex.dim()).max().unwrap_or(0);
        Self {
            simplices,
            max_dim,
            max_edge,
        }
    }

    pub fn simplices(&self) -> &[FilteredSimplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn max_edge(&self) -> f64 {
        self.max_edge
    }

    /// Largest filtration value, 0 for an empty filtration.
    pub fn max_value(&self) -> f64 {
        self.simplices.last().map_or(0.0, |s| s.value)
    }

    /// Number of simplices per dimension.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_dim + 1];
        for s in &self.simplices {
            counts[s.simplex.dim()] += 1;
        }
        counts
    }

    /// Position lookup keyed by vertex list.
    pub fn index(&self) -> HashMap<&[usize], usize> {
        self.simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.simplex.vertices(), i))
            .collect()
    }

    /// Verifies order, closure and face monotonicity.
    pub fn check(&self) -> Result<()> {
        if self
            .simplices
            .windows(2)
            .any(|w| filtration_order(&w[0], &w[1]) != Ordering::Less)
        {
            return Err(Error::InvalidParams("simplices are not strictly ordered".into()));
        }
        let index = self.index();
        for s in &self.simplices {
            for face in s.simplex.faces() {
                match index.get(face.vertices()) {
                    Some(&i) if self.simplices[i].value <= s.value => {}
                    Some(_) => {
                        return Err(Error::InvalidParams(format!(
                            "face {:?} enters after {:?}",
                            face.vertices(),
                            s.simplex.vertices()
                        )))
                    }
                    None => {
                        return Err(Error::MissingFace {
                            simplex: s.simplex.vertices().to_vec(),
                            face: face.vertices().to_vec(),
                        })
                    }
                }
            }
        }
        Ok(())
    }

    /// Writes one JSON object `{"v": [...], "t": value}` per line in stored order.
    pub fn write_json_lines<W: Write>(&self, mut out: W) -> Result<()> {
        #[derive(Serialize)]
        struct Line<'a> {
            v: &'a [usize],
            t: f64,
        }
        for s in &self.simplices {
            serde_json::to_writer(
                &mut out,
                &Line {
                    v: s.simplex.vertices(),
                    t: s.value,
                },
            )?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    /// Reads the format produced by [`Filtration::write_json_lines`].
    pub fn read_json_lines(text: &str, max_edge: f64) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Line {
            v: Vec<usize>,
            t: f64,
        }
        let mut simplices = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let parsed: Line = serde_json::from_str(line).map_err(|e| Error::MalformedInput {
                row: i + 1,
                column: e.column(),
                message: e.to_string(),
            })?;
            simplices.push(FilteredSimplex {
                simplex: Simplex::new(parsed.v)?,
                value: parsed.t,
            });
        }
        let f = Self::from_simplices(simplices, max_edge);
        f.check()?;
        Ok(f)
    }
}

/// Builds the Rips filtration by incremental expansion: each simplex is only
/// extended by common lower neighbours of all its vertices, so every clique is
/// generated exactly once.
pub fn build_filtration(dm: &DistanceMatrix, params: &FiltrationParams) -> Result<Filtration> {
    let n = dm.len();
    params.validate(n)?;

    let lower: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..v).filter(|&u| dm.get(u, v) <= params.max_edge).collect())
        .collect();

    let total = count_cliques(&lower, params.max_dim, params.budget)?;
    let mut out: Vec<FilteredSimplex> = Vec::with_capacity(total);
    let push = |vertices: &[usize], value: f64, out: &mut Vec<FilteredSimplex>| {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        out.push(FilteredSimplex {
            simplex: Simplex(v),
            value,
        });
    };

    // Depth-first expansion; `stack` holds (vertices, value, candidate set).
    for v in 0..n {
        push(&[v], 0.0, &mut out);
        if params.max_dim == 0 {
            continue;
        }
        let mut stack: Vec<(Vec<usize>, f64, Vec<usize>)> =
            vec![(vec![v], 0.0, lower[v].clone())];
        while let Some((tau, value, candidates)) = stack.pop() {
            for &u in candidates.iter().rev() {
                let mut sigma = tau.clone();
                sigma.push(u);
                let sigma_value = tau.iter().map(|&w| dm.get(w, u)).fold(value, f64::max);
                push(&sigma, sigma_value, &mut out);
                if sigma.len() <= params.max_dim {
                    let next = intersect_sorted(&candidates, &lower[u]);
                    if !next.is_empty() {
                        stack.push((sigma, sigma_value, next));
                    }
                }
            }
        }
    }

    out.sort_by(filtration_order);
    Ok(Filtration {
        simplices: out,
        max_dim: params.max_dim,
        max_edge: params.max_edge,
    })
}

/// Number of simplices the expansion will produce, without storing them;
/// fails as soon as the count passes `budget`.
fn count_cliques(lower: &[Vec<usize>], max_dim: usize, budget: usize) -> Result<usize> {
    let mut total = 0usize;
    let mut bump = |dim: usize, by: usize| -> Result<()> {
        total += by;
        if total > budget {
            return Err(Error::CapacityExceeded { dim, budget });
        }
        Ok(())
    };
    for candidates in lower {
        bump(0, 1)?;
        if max_dim == 0 {
            continue;
        }
        // (dimension of the simplex being extended, candidate set)
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, candidates.clone())];
        while let Some((dim, candidates)) = stack.pop() {
            bump(dim + 1, candidates.len())?;
            if dim + 1 < max_dim {
                for &u in &candidates {
                    let next = intersect_sorted(&candidates, &lower[u]);
                    if !next.is_empty() {
                        stack.push((dim + 1, next));
                    }
                }
            }
        }
    }
    Ok(total)
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// How [`filtration_grid`] samples the scale axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMode {
    /// Every distinct filtration value.
    Critical,
    /// `resolution` equally spaced values over `[0, max value]`.
    Uniform(usize),
}

pub fn filtration_grid(f: &Filtration, mode: GridMode) -> Vec<f64> {
    match mode {
        GridMode::Critical => {
            let mut values: Vec<f64> = f.simplices.iter().map(|s| s.value).collect();
            values.dedup();
            values
        }
        GridMode::Uniform(resolution) => uniform_grid(0.0, f.max_value(), resolution),
    }
}

/// `resolution` equally spaced points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, resolution: usize) -> Vec<f64> {
    match resolution {
        0 => Vec::new(),
        1 => vec![lo],
        r => {
            let step = (hi - lo) / (r - 1) as f64;
            (0..r)
                .map(|i| if i == r - 1 { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}
