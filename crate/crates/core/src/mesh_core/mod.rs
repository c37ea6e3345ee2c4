//! Exact embedded simplicial complexes in R^3 and the surgery performed on
//! them: validation, manifold checks, clipping, extrusion, merging,
//! one-point compactification and hole filling.

mod clip;
mod compactify;
mod complex;
mod containment;
mod extrude;
mod geometry;
pub mod io;
mod manifold;
pub mod predicates;
mod spatial;
mod subdivide;
mod validate;
pub mod voxel;

pub use clip::{cut_halfspace, general_position_shift, plane_section};
pub use compactify::{compactify, fill_holes, Compactification};
pub use complex::{Complex, MeshBuilder, MeshComplex, Simplex, Subcomplex, UnionFind, VertexId};
pub use containment::{contained_in, contained_in_any};
pub use extrude::{extrude, extrude_layers, merge, merge_unchecked};
pub use geometry::{format_rational, int, parse_rational, rat, to_f64, AxisBox, Plane, Rational, RationalPoint3, Side};
pub use manifold::{boundary_surface, manifold_check, surface_check, ManifoldReport, SurfaceReport};
pub use subdivide::{barycentric_subdivision, barycentric_subdivision_complex};
pub use validate::{validate_triangulation, ValidityReport};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("simplex {0} is not in the parent complex")]
    UnknownSimplex(String),
    #[error("subcomplex is not face-closed: {0}")]
    NotFaceClosed(String),
    #[error("simplex references missing vertex label {0}")]
    DanglingVertex(u32),
    #[error("complex is not pure 3-dimensional: {0}")]
    NotPure(String),
    #[error("not a manifold: {0}")]
    NotManifold(String),
    #[error("vertex {vertex} lies on the cutting plane; apply general_position_shift first")]
    VertexOnPlane { vertex: VertexId },
    #[error("invalid extrusion interval: {0}")]
    BadInterval(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("compactification failed: {0}")]
    Compactify(String),
    #[error("hole filling failed: {0}")]
    FillHoles(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
