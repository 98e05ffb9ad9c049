//! Finite point sets in Euclidean space and their pairwise distances.
//!
//! Points are stored row-major in a flat buffer. Every coordinate is finite,
//! so downstream code never has to guard against NaN.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `n` points in `R^d`.
#[derive(Clone, PartialEq)]
pub struct PointCloud {
    coords: Vec<f64>,
    n: usize,
    d: usize,
}

impl PointCloud {
    /// Builds a cloud from rows of coordinates.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::MalformedInput {
                row: 0,
                column: 0,
                message: "point cloud is empty".into(),
            });
        };
        let d = first.len();
        let n = rows.len();
        let mut coords = Vec::with_capacity(n * d);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != d {
                return Err(Error::MalformedInput {
                    row: i + 1,
                    column: row.len().min(d) + 1,
                    message: format!("expected {d} columns, found {}", row.len()),
                });
            }
            coords.extend(row);
        }
        Self::from_flat(coords, d)
    }

    /// Builds a cloud from a row-major buffer with `d` columns.
    pub fn from_flat(coords: Vec<f64>, d: usize) -> Result<Self> {
        if d == 0 || coords.is_empty() {
            return Err(Error::MalformedInput {
                row: 0,
                column: 0,
                message: "point cloud needs at least one point and one dimension".into(),
            });
        }
        if !coords.len().is_multiple_of(d) {
            return Err(Error::MalformedInput {
                row: coords.len() / d + 1,
                column: coords.len() % d + 1,
                message: format!("buffer length {} is not a multiple of {d}", coords.len()),
            });
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::MalformedInput {
                row: pos / d + 1,
                column: pos % d + 1,
                message: format!("coordinate {} is not finite", coords[pos]),
            });
        }
        let n = coords.len() / d;
        Ok(Self { coords, n, d })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; a cloud holds at least one point.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.d..(i + 1) * self.d]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> {
        self.coords.chunks_exact(self.d)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }

    /// Index pairs `(i, j)`, `i < j`, of points with identical coordinates.
    pub fn duplicates(&self) -> Vec<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| {
            self.point(a)
                .iter()
                .zip(self.point(b))
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        let mut dups = Vec::new();
        let mut start = 0;
        while start < order.len() {
            let mut end = start + 1;
            while end < order.len() && self.point(order[end]) == self.point(order[start]) {
                end += 1;
            }
            for a in start..end {
                for b in a + 1..end {
                    let (i, j) = (order[a].min(order[b]), order[a].max(order[b]));
                    dups.push((i, j));
                }
            }
            start = end;
        }
        dups.sort_unstable();
        dups
    }

    /// Writes one point per line, comma separated, no header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for p in self.points() {
            let row: Vec<String> = p.iter().map(|c| format!("{c:?}")).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// `{"points": [[x, y, ...], ...]}`.
    pub fn to_json(&self) -> String {
        let doc = PointsDocument {
            points: self.points().map(<[f64]>::to_vec).collect(),
        };
        serde_json::to_string(&doc).expect("finite coordinates always serialize")
    }
}

impl fmt::Debug for PointCloud {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PointCloud")
            .field("n", &self.n)
            .field("d", &self.d)
            .finish()
    }
}

/// On-disk encodings accepted by [`load_points`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointFormat {
    Csv,
    Json,
}

impl PointFormat {
    /// Guesses the format from a file extension, defaulting to CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => PointFormat::Json,
            _ => PointFormat::Csv,
        }
    }
}

pub fn load_points(path: impl AsRef<Path>, format: PointFormat) -> Result<PointCloud> {
    let text = std::fs::read_to_string(path)?;
    match format {
        PointFormat::Csv => parse_csv(&text),
        PointFormat::Json => parse_json(&text),
    }
}

/// Parses headerless comma-separated rows.
pub fn parse_csv(text: &str) -> Result<PointCloud> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::MalformedInput {
            row: i + 1,
            column: 0,
            message: e.to_string(),
        })?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        let row_no = rows.len() + 1;
        let row = record
            .iter()
            .enumerate()
            .map(|(j, cell)| {
                cell.parse::<f64>().map_err(|_| Error::MalformedInput {
                    row: row_no,
                    column: j + 1,
                    message: format!("cannot parse {cell:?} as a number"),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::MalformedInput {
                    row: row_no,
                    column: row.len().min(first.len()) + 1,
                    message: format!("expected {} columns, found {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    PointCloud::new(rows)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointsDocument {
    points: Vec<Vec<f64>>,
}

/// Parses `{"points": [[x, y, ...], ...]}`.
pub fn parse_json(text: &str) -> Result<PointCloud> {
    let doc: PointsDocument = serde_json::from_str(text).map_err(|e| Error::MalformedInput {
        row: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    PointCloud::new(doc.points)
}

/// Symmetric matrix of Euclidean distances.
#[derive(Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl DistanceMatrix {
    /// Wraps a full row-major `n x n` matrix after checking symmetry, a zero
    /// diagonal and non-negativity.
    pub fn from_full(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::InvalidParams(format!(
                "distance matrix needs {} entries for n = {n}, got {}",
                n * n,
                entries.len()
            )));
        }
        for i in 0..n {
            if entries[i * n + i] != 0.0 {
                return Err(Error::InvalidParams(format!("diagonal entry {i} is not zero")));
            }
            for j in i + 1..n {
                let a = entries[i * n + j];
                if !(a.is_finite() && a >= 0.0) || a != entries[j * n + i] {
                    return Err(Error::InvalidParams(format!(
                        "entry ({i}, {j}) must be finite, non-negative and symmetric"
                    )));
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Largest pairwise distance; 0 for a single point.
    pub fn diameter(&self) -> f64 {
        self.entries.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest distance between distinct indices, the natural filtration step.
    /// `None` for a single point.
    pub fn min_off_diagonal(&self) -> Option<f64> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .reduce(f64::min)
    }
}

impl fmt::Debug for DistanceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DistanceMatrix").field("n", &self.n).finish()
    }
}

/// Euclidean distances; each unordered pair is evaluated once and mirrored.
pub fn pairwise_distances(pc: &PointCloud) -> DistanceMatrix {
    let n = pc.len();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        let a = pc.point(i);
        for j in i + 1..n {
            let b = pc.point(j);
            let d = a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt();
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    DistanceMatrix { n, entries }
}
