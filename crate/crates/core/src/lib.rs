//! Exact computational topology for polyhedral neighbourhoods in R^3.
//!
//! `wildlab` stores embedded simplicial complexes with exact rational
//! coordinates, computes their homology over GF(2) together with
//! inclusion-induced maps, and builds on that:
//!
//! * [`mesh_core`]: validation, manifold checks, half-space clipping,
//!   extrusion, merging, compactification into S^3, hole filling.
//! * [`z2_homology`]: boundary matrices, Betti numbers, generators,
//!   induced maps, Mayer–Vietoris bookkeeping.
//! * [`planar_surface`]: disks with holes in a plane, their nesting and
//!   capping disks.
//! * [`splitting`]: cutting a neighbourhood along a plane into two
//!   neighbourhoods whose first Betti numbers add up to at most the original.
//! * [`towers`]: finite neighbourhood towers, rank bounds and cellularity.
//! * [`duality`]: Lefschetz and Alexander duality checks at rank level.
//!
//! Internal parallelism uses rayon; set `WILDLAB_THREADS` to cap the pool
//! (see [`init_thread_pool`]). All results are independent of the thread count.

pub mod duality;
pub mod mesh_core;
pub mod planar_surface;
pub mod splitting;
pub mod towers;
pub mod z2_homology;

pub use mesh_core::MeshError;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("homology dimension {0} is out of range 0..=3")]
    DimensionOutOfRange(usize),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("vertex map is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("reduced homology of the empty complex is not defined here")]
    EmptyReduced,
    #[error("criterion needs a connected complex, found {0} components")]
    Disconnected(usize),
    #[error("not a 3-manifold: {0}")]
    NotManifold(String),
    #[error("planar decomposition failed: {0}")]
    Planar(String),
    #[error("decomposition is not tame in the frame: {0}")]
    NotTame(String),
    #[error("splitting failed: {0}")]
    Split(String),
    #[error("W too tight: no epsilon down to 2^-{0} works")]
    WTooTight(u32),
    #[error("tower error: {0}")]
    Tower(String),
    #[error("H2 obstruction at stage {stage}: the induced map on H2 has rank {rank}")]
    H2Obstruction { stage: usize, rank: usize },
    #[error("containment failed at stage {stage}: {count} tetrahedra outside")]
    ContainmentFailed { stage: usize, count: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("duality check failed to run: {0}")]
    Duality(String),
    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Configures the global rayon pool from `WILDLAB_THREADS`, if set to a
/// positive integer. Returns the thread count installed, if any. Calling it
/// after the pool has started is harmless.
pub fn init_thread_pool() -> Option<usize> {
    let n: usize = std::env::var("WILDLAB_THREADS").ok()?.trim().parse().ok()?;
    if n == 0 {
        return None;
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok().map(|_| n)
}
