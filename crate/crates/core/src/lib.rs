//! Exact enumeration and classification of normal, almost normal and
//! 2-normal surfaces in triangulated 3-manifolds.
//!
//! The pipeline, bottom up:
//!
//! - [`triangulation`] and [`skeleton`]: gluing tables and their edge and
//!   vertex classes.
//! - [`curves`]: normal curves on one tetrahedron boundary, found by
//!   exhaustive search. The piece taxonomy in [`pieces`] is read off it.
//! - [`matching`]: the arc-matching equations and admissibility rules.
//! - [`cone`] and [`enumeration`]: exact extreme-ray enumeration with
//!   arbitrary precision integers, iterated over per-tetrahedron type choices.
//! - [`surface`]: rebuilds each solution as a cell complex and reports Euler
//!   characteristic, components and orientability.
//! - [`order`]: the complexity ordering on surfaces and thick-level lists.
//!
//! ```
//! use twonormal::{enumerate_vertex_surfaces, AdmissibilityMode, EnumerationOptions, Triangulation};
//!
//! let tri = Triangulation::builtin("double2").unwrap();
//! let found = enumerate_vertex_surfaces(&tri, AdmissibilityMode::Normal, &EnumerationOptions::default()).unwrap();
//! assert_eq!(found.len(), 7);
//! ```

pub mod cone;
pub mod curves;
pub mod enumeration;
mod linalg;
pub mod matching;
pub mod order;
pub mod perm;
pub mod pieces;
pub mod selftest;
pub mod skeleton;
pub mod stacking;
pub mod surface;
pub mod tetra;
pub mod triangulation;

pub use cone::{brute_force_rays, extreme_rays, ConeError, Ray, BRUTE_FORCE_MAX_DIMENSION};
pub use curves::{
    check_single_long_length, disjointly_realizable, enumerate_curves, CurveError, CurveOracle,
    CurveSystem, NormalCurve, DEFAULT_CURVE_BOUND,
};
pub use enumeration::{
    enumerate_vertex_surfaces, type_restrictions, EnumerationError, EnumerationOptions,
    TetSelection, TypeRestriction, VertexSurface,
};
pub use matching::{
    build_matching_system, is_admissible, AdmissibilityMode, AdmissibilityOptions,
    ExceptionalPattern, MatchingError, MatchingSystem, Violation,
};
pub use order::{compare_ghs, complexity, compress, OrderError, SurfaceComplexity, SymbolicGhs};
pub use perm::{Permutation4, PermutationError};
pub use pieces::{
    boundary_curve, compatible, coordinate_layout, CoordinateLayout, LayoutMeta, PieceCatalog,
    PieceError, PieceKind, TubeDecoration,
};
pub use skeleton::{compute_skeleton, EdgeClass, EdgeEmbedding, Skeleton, VertexClass};
pub use surface::{
    classify, euler_characteristic_from_vector, reconstruct, report, ComponentReport, FaceOrigin,
    SurfaceClass, SurfaceComplex, SurfaceError, SurfaceFace, SurfaceReport, TwoNormalKind,
};
pub use triangulation::{Gluing, Triangulation, TriangulationError};
