//! Planar geometry: convex domains, clipped Voronoi meshes and quadrature.

mod grid;
mod lloyd;
mod point;
pub mod polygon;
pub mod quadrature;
mod seeds;
mod voronoi;

pub use grid::SeedGrid;
pub use lloyd::{lloyd_relax, lloyd_relax_traced, LloydTrace};
pub use point::Point;
pub use polygon::DomainPolygon;
pub use quadrature::{cell_quadrature, facet_quadrature, GaussLegendre, TriangleRule};
pub use seeds::{grid_seeds, random_seeds, MIN_SEED_SEPARATION};
pub use voronoi::{
    build_voronoi, Cell, Facet, FacetKind, FacetRecord, VoronoiMesh, DUPLICATE_SEED_TOL,
    FACET_MATCH_TOL, MIN_FACET_LENGTH,
};
