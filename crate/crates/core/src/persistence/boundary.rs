use crate::error::{Error, Result};
use crate::filtration::Filtration;

/// Sparse `Z/2` boundary matrix in filtration order. Column `j` lists the
/// positions of the codimension-one faces of simplex `j`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub(crate) columns: Vec<Vec<usize>>,
    pub(crate) dims: Vec<usize>,
}

impl BoundaryMatrix {
    /// Builds a matrix from explicit columns. Entries are sorted; each entry
    /// must point to an earlier column of dimension one less.
    pub fn from_columns(dims: Vec<usize>, mut columns: Vec<Vec<usize>>) -> Result<Self> {
        if dims.len() != columns.len() {
            return Err(Error::InvalidParams("dims and columns differ in length".into()));
        }
        for (j, col) in columns.iter_mut().enumerate() {
            col.sort_unstable();
            let expected = if dims[j] == 0 { 0 } else { dims[j] + 1 };
            if col.len() != expected || col.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParams(format!(
                    "column {j} of dimension {} must have {expected} distinct entries",
                    dims[j]
                )));
            }
            if col.iter().any(|&i| i >= j || dims[i] + 1 != dims[j]) {
                return Err(Error::InvalidParams(format!(
                    "column {j} references a non-face or a later column"
                )));
            }
        }
        Ok(Self { columns, dims })
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    pub fn dim(&self, j: usize) -> usize {
        self.dims[j]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
}

pub fn boundary_matrix(f: &Filtration) -> Result<BoundaryMatrix> {
    let index = f.index();
    let mut columns = Vec::with_capacity(f.len());
    let mut dims = Vec::with_capacity(f.len());
    for s in f.simplices() {
        let mut col = Vec::with_capacity(s.simplex.dim() + 1);
        for face in s.simplex.faces() {
            match index.get(face.vertices()) {
                Some(&i) => col.push(i),
                None => {
                    return Err(Error::MissingFace {
                        simplex: s.simplex.vertices().to_vec(),
                        face: face.vertices().to_vec(),
                    })
                }
            }
        }
        col.sort_unstable();
        columns.push(col);
        dims.push(s.simplex.dim());
    }
    Ok(BoundaryMatrix { columns, dims })
}
