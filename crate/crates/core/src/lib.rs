#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Voronoi sweep scheduling and an upwind discontinuous Galerkin
//! discrete-ordinates solver for the mono-energetic transport equation.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! filesystem, the clock or threads lives in the `sweepvor` companion crate.
//!
//! Layout:
//! - [`geometry`]: clipped Voronoi tessellations of convex polygons, Lloyd
//!   relaxation, seed sampling and cell/facet quadrature.
//! - [`sweep`]: directed dual graphs, the projection-sort scheduler, Kahn's
//!   algorithm and schedule verification.
//! - [`dg`]: per-direction upwind DG assembly, sweeps, the dense oracle solver
//!   and energy-norm errors.
//! - [`bte`]: ordinate sets, scattering, manufactured solutions and source
//!   iteration.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bte;
pub mod dg;
mod error;
pub mod geometry;
pub mod linalg;
pub(crate) mod math;
pub mod sweep;

pub use error::{Error, Result};
pub use geometry::{Point, VoronoiMesh};
pub use sweep::{Direction, Schedule};
