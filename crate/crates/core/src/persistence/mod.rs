//! Persistent homology with `Z/2` coefficients.
//!
//! The pipeline is [`boundary_matrix`] → [`reduce`] → [`PersistencePair`]s →
//! [`diagram`]. Cycle and boundary groups are never built explicitly; the
//! column reduction encodes them. [`brute_force_betti`] recomputes Betti
//! numbers by plain rank computations and serves as an independent check.

mod boundary;
mod diagram;
mod oracle;
mod reduce;

pub use boundary::{boundary_matrix, BoundaryMatrix};
pub use diagram::{
    betti_curve, diagram, diagrams_from_json, diagrams_to_json, multiplicity, BettiCurve,
    BettiTable, DiagramPoint, PersistenceDiagram,
};
pub use oracle::{brute_force_betti, z2_rank, ORACLE_CAPACITY};
pub use reduce::{reduce, reduce_with, IndexPair, Reduction, ReducedMatrix, Strategy};

use crate::error::Result;
use crate::filtration::Filtration;

/// A homology class born at `birth` and killed at `death` (`None` if it
/// never dies).
#[derive(Debug, Clone, PartialEq)]
pub struct PersistencePair {
    pub dim: usize,
    pub birth: f64,
    pub death: Option<f64>,
    pub birth_index: usize,
    pub death_index: Option<usize>,
}

impl PersistencePair {
    pub fn is_essential(&self) -> bool {
        self.death.is_none()
    }

    /// `death - birth`, infinite for essential classes.
    pub fn persistence(&self) -> f64 {
        self.death.map_or(f64::INFINITY, |d| d - self.birth)
    }

    /// Born and killed at the same filtration value.
    pub fn is_zero_persistence(&self) -> bool {
        self.death == Some(self.birth)
    }
}

/// Converts index pairs into value pairs using the filtration.
pub fn pairs_from_indices(f: &Filtration, pairs: &[IndexPair]) -> Vec<PersistencePair> {
    let s = f.simplices();
    pairs
        .iter()
        .map(|p| PersistencePair {
            dim: p.dim,
            birth: s[p.birth].value,
            death: p.death.map(|d| s[d].value),
            birth_index: p.birth,
            death_index: p.death,
        })
        .collect()
}

/// Boundary matrix, clearing reduction and value conversion in one call.
pub fn persistence_pairs(f: &Filtration) -> Result<Vec<PersistencePair>> {
    let bm = boundary_matrix(f)?;
    let reduction = reduce_with(&bm, Strategy::Clearing);
    Ok(pairs_from_indices(f, &reduction.pairs))
}

/// Diagrams for dimensions `0..=max_k`.
pub fn diagrams(pairs: &[PersistencePair], max_k: usize) -> Vec<PersistenceDiagram> {
    (0..=max_k).map(|k| diagram(pairs, k)).collect()
}
