//! Self-checks of generated meshes.

use sweepvor_core::geometry::{polygon, random_seeds, FacetKind};
use sweepvor_core::VoronoiMesh;

use crate::mesh_io::{mesh_from_json, mesh_to_json};

pub const AREA_TOL: f64 = 1e-9;
pub const NORMAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct MeshReport {
    /// `|sum of cell areas - domain area| / domain area`.
    pub area_rel_error: f64,
    /// Largest `|nu - unit(v_j - v_i)|` over interior facets.
    pub max_normal_error: f64,
    pub samples: usize,
    /// Sample points whose containing cell's seed is not a nearest seed.
    pub nearest_seed_violations: usize,
    /// Write, read, write gives identical bytes and an equal mesh.
    pub roundtrip_stable: bool,
}

impl MeshReport {
    pub fn passed(&self) -> bool {
        self.area_rel_error <= AREA_TOL
            && self.max_normal_error <= NORMAL_TOL
            && self.nearest_seed_violations == 0
            && self.roundtrip_stable
    }
}

pub fn check_mesh(mesh: &VoronoiMesh, samples: usize, rng_seed: u64) -> MeshReport {
    let domain = mesh.domain();
    let total: f64 = mesh.cells().iter().map(|c| c.area).sum();
    let area_rel_error = (total - domain.area()).abs() / domain.area();

    let max_normal_error = mesh
        .facets()
        .iter()
        .filter_map(|f| match f.kind {
            FacetKind::Interior { i, j } => {
                let d = (mesh.cell(j).seed - mesh.cell(i).seed).normalized();
                Some((f.normal - d).norm())
            }
            FacetKind::Boundary { .. } => None,
        })
        .fold(0.0, f64::max);

    let tol = 1e-12 * domain.diameter();
    let mut nearest_seed_violations = 0;
    let points = if samples > 0 {
        random_seeds(samples, domain, rng_seed).unwrap_or_default()
    } else {
        Vec::new()
    };
    for &x in &points {
        let best = mesh.seeds().iter().map(|s| s.distance(x)).fold(f64::INFINITY, f64::min);
        let ok = mesh
            .cells()
            .iter()
            .filter(|c| polygon::convex_contains(&c.vertices, x, tol))
            .any(|c| c.seed.distance(x) <= best + tol);
        if !ok {
            nearest_seed_violations += 1;
        }
    }

    let first = mesh_to_json(mesh);
    let roundtrip_stable = match mesh_from_json(&first) {
        Ok(back) => back == *mesh && mesh_to_json(&back) == first,
        Err(_) => false,
    };

    MeshReport {
        area_rel_error,
        max_normal_error,
        samples: points.len(),
        nearest_seed_violations,
        roundtrip_stable,
    }
}
