use super::boundary::BoundaryMatrix;

/// Column reduction strategy. Both produce the same pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Left-to-right reduction over all columns.
    Standard,
    /// Reduce by decreasing dimension and zero every column that is already
    /// known to be a pivot row ("twist").
    #[default]
    Clearing,
}

/// The reduced matrix `R = D V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedMatrix {
    columns: Vec<Vec<usize>>,
}

impl ReducedMatrix {
    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    /// Largest row index of column `j`.
    pub fn low(&self, j: usize) -> Option<usize> {
        self.columns[j].last().copied()
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }
}

/// A pairing in filtration positions: the class created by simplex `birth`
/// is killed by simplex `death`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct IndexPair {
    pub dim: usize,
    pub birth: usize,
    pub death: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub reduced: ReducedMatrix,
    /// Sorted by birth position.
    pub pairs: Vec<IndexPair>,
}

/// Standard left-to-right reduction.
pub fn reduce(bm: &BoundaryMatrix) -> Reduction {
    reduce_with(bm, Strategy::Standard)
}

pub fn reduce_with(bm: &BoundaryMatrix, strategy: Strategy) -> Reduction {
    let n = bm.len();
    let mut columns: Vec<Vec<usize>> = bm.columns.clone();
    // pivot_owner[row] = column whose reduced low is `row`
    let mut pivot_owner: Vec<Option<usize>> = vec![None; n];
    let mut scratch = Vec::new();

    match strategy {
        Strategy::Standard => {
            for j in 0..n {
                reduce_column(&mut columns, j, &mut pivot_owner, &mut scratch);
            }
        }
        Strategy::Clearing => {
            let max_dim = bm.dims.iter().copied().max().unwrap_or(0);
            for dim in (1..=max_dim).rev() {
                for j in 0..n {
                    if bm.dims[j] != dim {
                        continue;
                    }
                    if pivot_owner[j].is_some() {
                        // j is a pivot row of a higher-dimensional column, so
                        // it creates a class and its reduced column is zero.
                        columns[j].clear();
                        continue;
                    }
                    reduce_column(&mut columns, j, &mut pivot_owner, &mut scratch);
                }
            }
            // Vertex columns are zero to begin with.
        }
    }

    let mut pairs = Vec::new();
    for j in 0..n {
        if let Some(&low) = columns[j].last() {
            pairs.push(IndexPair {
                dim: bm.dims[low],
                birth: low,
                death: Some(j),
            });
        } else if pivot_owner[j].is_none() {
            pairs.push(IndexPair {
                dim: bm.dims[j],
                birth: j,
                death: None,
            });
        }
    }
    pairs.sort_unstable_by_key(|p| p.birth);

    Reduction {
        reduced: ReducedMatrix { columns },
        pairs,
    }
}

fn reduce_column(
    columns: &mut [Vec<usize>],
    j: usize,
    pivot_owner: &mut [Option<usize>],
    scratch: &mut Vec<usize>,
) {
    while let Some(&low) = columns[j].last() {
        match pivot_owner[low] {
            Some(k) => {
                let (left, right) = columns.split_at_mut(j);
                add_into(&mut right[0], &left[k], scratch);
            }
            None => {
                pivot_owner[low] = Some(j);
                return;
            }
        }
    }
}

/// `target ^= source` on sorted index lists.
fn add_into(target: &mut Vec<usize>, source: &[usize], scratch: &mut Vec<usize>) {
    scratch.clear();
    scratch.reserve(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < source.len() {
        let (a, b) = (target[i], source[j]);
        if a < b {
            scratch.push(a);
            i += 1;
        } else if b < a {
            scratch.push(b);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    scratch.extend_from_slice(&target[i..]);
    scratch.extend_from_slice(&source[j..]);
    std::mem::swap(target, scratch);
}
