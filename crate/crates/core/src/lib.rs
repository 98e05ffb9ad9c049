//! # homodim
//!
//! Persistent homology of point clouds, persistence landscapes, and an
//! embedding-dimension estimate built on the decomposition of connected
//! abelian Lie groups into `T^q x R^p`.
//!
//! The modules follow the pipeline:
//!
//! 1. [`pointcloud`] and [`manifold`]: load or sample points, compute
//!    Euclidean distances.
//! 2. [`filtration`]: Vietoris–Rips filtration up to a maximal expansion
//!    dimension and edge length.
//! 3. [`persistence`]: `Z/2` boundary matrix reduction, persistence pairs,
//!    diagrams, Betti curves, and a brute-force rank oracle.
//! 4. [`landscape`]: tent functions, landscape layers, Gaussian smoothing,
//!    local-maximum counts.
//! 5. [`dimension`]: inverts `rank H_k(T^q) = C(q, k)` on those counts.
//!
//! ```
//! use homodim::prelude::*;
//!
//! let cloud = sample_manifold(&ManifoldSpec::new(ManifoldKind::Circle, 80).seed(1)).unwrap();
//! let dm = pairwise_distances(&cloud);
//! let f = build_filtration(&dm, &FiltrationParams::new(2, dm.diameter())).unwrap();
//! let pairs = persistence_pairs(&f).unwrap();
//! let h1 = diagram(&pairs, 1);
//! let longest = h1.points.iter().map(|p| p.persistence()).fold(0.0, f64::max);
//! assert!(longest > 0.5);
//! ```
//!
//! The `book/` directory at the repository root walks through each stage in
//! more detail; its code samples are compiled and run as doctests of this
//! crate.

pub mod dimension;
pub mod error;
pub mod filtration;
pub mod landscape;
pub mod manifold;
pub mod persistence;
pub mod pointcloud;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::dimension::{
        binomial, estimate, estimate_with, recommended_width, single_torus_fit, solve_q,
        DecompositionEstimate, HomologyCounts, QEstimate,
    };
    pub use crate::error::{Error, Result};
    pub use crate::filtration::{
        build_filtration, filtration_grid, Filtration, FiltrationParams, GridMode, Simplex,
    };
    pub use crate::landscape::{
        build_landscape, count_maxima, smooth, MaximaCount, PersistenceLandscape, SmoothingParams,
        TentFunction,
    };
    pub use crate::manifold::{sample_manifold, ManifoldKind, ManifoldSpec};
    pub use crate::persistence::{
        betti_curve, boundary_matrix, brute_force_betti, diagram, persistence_pairs, reduce,
        BettiCurve, PersistenceDiagram, PersistencePair,
    };
    pub use crate::pointcloud::{load_points, pairwise_distances, DistanceMatrix, PointCloud, PointFormat};
}

// Chapters of the guide, compiled as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/point-clouds.md")]
    mod point_clouds {}
    #[doc = include_str!("../../../book/src/filtrations.md")]
    mod filtrations {}
    #[doc = include_str!("../../../book/src/persistence.md")]
    mod persistence {}
    #[doc = include_str!("../../../book/src/landscapes.md")]
    mod landscapes {}
    #[doc = include_str!("../../../book/src/dimension.md")]
    mod dimension {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
