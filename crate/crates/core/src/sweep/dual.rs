use alloc::vec::Vec;

use super::Direction;
use crate::geometry::{FacetKind, VoronoiMesh};
use crate::Result;

/// Default width of the band `|omega . nu| <= tol` treated as characteristic.
pub const CHARACTERISTIC_TOL: f64 = 1e-12;

/// Upwind-to-downwind dependency graph of a mesh for one direction.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectedDual {
    /// Size of the id space (cells of the full mesh).
    pub n_nodes: usize,
    /// Node ids taking part, ascending.
    pub nodes: Vec<usize>,
    /// `(from, to)`: `to` is downwind of `from`.
    pub edges: Vec<(usize, usize)>,
    /// Facet that produced each edge.
    pub edge_facets: Vec<usize>,
    /// Interior facets with `|omega . nu| <= tol`.
    pub characteristic_facets: Vec<usize>,
}

impl DirectedDual {
    /// Subgraph induced by `subset` (ids into the same node space).
    pub fn induced(&self, subset: &[usize]) -> DirectedDual {
        let mut member = alloc::vec![false; self.n_nodes];
        for &s in subset {
            member[s] = true;
        }
        let mut nodes: Vec<usize> = subset.to_vec();
        nodes.sort_unstable();
        nodes.dedup();
        let mut edges = Vec::new();
        let mut edge_facets = Vec::new();
        for (&(a, b), &f) in self.edges.iter().zip(&self.edge_facets) {
            if member[a] && member[b] {
                edges.push((a, b));
                edge_facets.push(f);
            }
        }
        DirectedDual {
            n_nodes: self.n_nodes,
            nodes,
            edges,
            edge_facets,
            characteristic_facets: Vec::new(),
        }
    }

    /// Reversed graph, as obtained for `-omega`.
    pub fn reversed(&self) -> DirectedDual {
        DirectedDual {
            edges: self.edges.iter().map(|&(a, b)| (b, a)).collect(),
            ..self.clone()
        }
    }

    pub fn out_degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == node).count()
    }

    pub fn in_degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|e| e.1 == node).count()
    }
}

/// Orients every interior facet of `mesh` along `dir`.
pub fn directed_dual(mesh: &VoronoiMesh, dir: &Direction, tol: f64) -> Result<DirectedDual> {
    let omega = dir.as_point()?;
    let mut edges = Vec::new();
    let mut edge_facets = Vec::new();
    let mut characteristic_facets = Vec::new();
    for (k, facet) in mesh.facets().iter().enumerate() {
        if let FacetKind::Interior { i, j } = facet.kind {
            let flux = omega.dot(facet.normal);
            if flux > tol {
                edges.push((i, j));
            } else if flux < -tol {
                edges.push((j, i));
            } else {
                characteristic_facets.push(k);
                continue;
            }
            edge_facets.push(k);
        }
    }
    Ok(DirectedDual {
        n_nodes: mesh.n_cells(),
        nodes: (0..mesh.n_cells()).collect(),
        edges,
        edge_facets,
        characteristic_facets,
    })
}
