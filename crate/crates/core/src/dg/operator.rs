//! Upwind DG assembly for `omega . grad u + sigma_t u = f` with inflow data.
//!
//! On each inflow facet of a cell the interior trace is tied to the upwind
//! trace by `+|omega . nu| (u_T - u_up) v_T`; on inflow boundary facets the
//! upwind trace is the boundary datum, which moves to the right-hand side.

use alloc::vec;
use alloc::vec::Vec;

use super::{CoefficientField, DgSpace};
use crate::geometry::{GaussLegendre, Point, VoronoiMesh};
use crate::linalg::{gemv_add, Coo, LuFactor};
use crate::sweep::{Direction, CHARACTERISTIC_TOL};
use crate::{Error, Result};

/// How a facet looks from one of its cells for a given direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FacetRole {
    /// `omega . nu_T < -tol`
    Inflow,
    /// `omega . nu_T > tol`
    Outflow,
    Characteristic,
}

impl FacetRole {
    pub fn of_flux(flux: f64, tol: f64) -> Self {
        if flux < -tol {
            FacetRole::Inflow
        } else if flux > tol {
            FacetRole::Outflow
        } else {
            FacetRole::Characteristic
        }
    }
}

/// Per cell, `(facet id, role)` for each incident facet.
pub type FacetRoles = Vec<Vec<(usize, FacetRole)>>;

pub fn classify_facets(mesh: &VoronoiMesh, dir: &Direction, tol: f64) -> Result<FacetRoles> {
    let omega = dir.as_point()?;
    Ok((0..mesh.n_cells())
        .map(|t| {
            mesh.cell_facets(t)
                .iter()
                .map(|&f| {
                    let flux = omega.dot(mesh.facets()[f].outward_normal(t));
                    (f, FacetRole::of_flux(flux, tol))
                })
                .collect()
        })
        .collect())
}

/// Block-sparse DG operator for one direction, stored cell-major.
#[derive(Clone, Debug)]
pub struct BlockOperator {
    n_cells: usize,
    block_size: usize,
    direction: Direction,
    diagonal: Vec<f64>,
    /// `upwind[T]` holds `(T', C_{T,T'})` for every upwind neighbour `T'`.
    upwind: Vec<Vec<(usize, Vec<f64>)>>,
    factors: Vec<LuFactor>,
}

impl BlockOperator {
    /// Builds an operator from explicit blocks and factors the diagonal.
    pub fn from_blocks(
        block_size: usize,
        direction: Direction,
        diagonal: Vec<f64>,
        upwind: Vec<Vec<(usize, Vec<f64>)>>,
    ) -> Result<Self> {
        let nn = block_size * block_size;
        let n_cells = upwind.len();
        if diagonal.len() != n_cells * nn {
            return Err(Error::SizeMismatch {
                expected: n_cells * nn,
                found: diagonal.len(),
            });
        }
        let factors = diagonal
            .chunks_exact(nn)
            .enumerate()
            .map(|(t, d)| {
                LuFactor::new(d.to_vec(), block_size).map_err(|_| Error::SingularDiagonalBlock(t))
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            n_cells,
            block_size,
            direction,
            diagonal,
            upwind,
            factors,
        })
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn n_dofs(&self) -> usize {
        self.n_cells * self.block_size
    }

    pub fn direction(&self) -> &Direction {
        &self.direction
    }

    pub fn diagonal_block(&self, cell: usize) -> &[f64] {
        let nn = self.block_size * self.block_size;
        &self.diagonal[cell * nn..(cell + 1) * nn]
    }

    pub fn upwind_blocks(&self, cell: usize) -> &[(usize, Vec<f64>)] {
        &self.upwind[cell]
    }

    pub(crate) fn factor(&self, cell: usize) -> &LuFactor {
        &self.factors[cell]
    }

    /// `y = A x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let nb = self.block_size;
        let mut y = vec![0.0; self.n_dofs()];
        for t in 0..self.n_cells {
            let out = &mut y[t * nb..(t + 1) * nb];
            gemv_add(self.diagonal_block(t), nb, nb, &x[t * nb..(t + 1) * nb], out);
            for (up, block) in &self.upwind[t] {
                gemv_add(block, nb, nb, &x[up * nb..(up + 1) * nb], out);
            }
        }
        y
    }

    /// Scalar entries, cell-major numbering.
    pub fn to_coo(&self) -> Coo {
        let nb = self.block_size;
        let mut entries = Vec::new();
        let mut push_block = |row_cell: usize, col_cell: usize, block: &[f64]| {
            for a in 0..nb {
                for b in 0..nb {
                    let v = block[a * nb + b];
                    if v != 0.0 {
                        entries.push((row_cell * nb + a, col_cell * nb + b, v));
                    }
                }
            }
        };
        for t in 0..self.n_cells {
            push_block(t, t, self.diagonal_block(t));
            for (up, block) in &self.upwind[t] {
                push_block(t, *up, block);
            }
        }
        Coo {
            rows: self.n_dofs(),
            cols: self.n_dofs(),
            entries,
        }
        .sorted()
    }
}

/// Gauss-Legendre points per facet for the assembly order of `space`.
fn facet_rule(space: &DgSpace) -> GaussLegendre {
    GaussLegendre::for_degree(DgSpace::assembly_order(space.degree()))
}

/// Assembles the upwind DG operator for direction `dir`.
pub fn assemble_direction(
    mesh: &VoronoiMesh,
    space: &DgSpace,
    dir: &Direction,
    sigma_t: &CoefficientField,
) -> Result<BlockOperator> {
    let omega = dir.as_point()?;
    let nb = space.n_basis();
    let nn = nb * nb;
    let gl = facet_rule(space);
    let mut diagonal = vec![0.0; mesh.n_cells() * nn];
    let mut upwind = Vec::with_capacity(mesh.n_cells());
    let mut phi = vec![0.0; nb];
    let mut phi_up = vec![0.0; nb];

    for t in 0..mesh.n_cells() {
        let d = &mut diagonal[t * nn..(t + 1) * nn];
        let q = space.cell_quadrature(t);
        for (k, (&x, &w)) in q.points.iter().zip(&q.weights).enumerate() {
            let vals = &q.values[k * nb..(k + 1) * nb];
            let grads = &q.gradients[k * nb..(k + 1) * nb];
            let sig = sigma_t.at(x);
            for a in 0..nb {
                let wa = w * vals[a];
                for b in 0..nb {
                    d[a * nb + b] += wa * (omega.dot(grads[b]) + sig * vals[b]);
                }
            }
        }

        let mut blocks: Vec<(usize, Vec<f64>)> = Vec::new();
        for &f in mesh.cell_facets(t) {
            let facet = &mesh.facets()[f];
            let flux = omega.dot(facet.outward_normal(t));
            if FacetRole::of_flux(flux, CHARACTERISTIC_TOL) != FacetRole::Inflow {
                continue;
            }
            let speed = -flux;
            let nodes = gl.on_segment(facet.endpoints[0], facet.endpoints[1]);
            let neighbour = facet.neighbour(t);
            let mut c = neighbour.map(|_| vec![0.0; nn]);
            for &(x, w) in &nodes {
                space.eval(t, x, &mut phi);
                for a in 0..nb {
                    for b in 0..nb {
                        d[a * nb + b] += w * speed * phi[b] * phi[a];
                    }
                }
                if let (Some(up), Some(c)) = (neighbour, c.as_mut()) {
                    space.eval(up, x, &mut phi_up);
                    for a in 0..nb {
                        for b in 0..nb {
                            c[a * nb + b] -= w * speed * phi_up[b] * phi[a];
                        }
                    }
                }
            }
            if let (Some(up), Some(c)) = (neighbour, c) {
                match blocks.iter_mut().find(|(u, _)| *u == up) {
                    Some((_, existing)) => existing.iter_mut().zip(&c).for_each(|(e, v)| *e += v),
                    None => blocks.push((up, c)),
                }
            }
        }
        if d.iter().any(|v| !v.is_finite()) {
            return Err(Error::QuadratureFailure(t));
        }
        blocks.sort_by_key(|(u, _)| *u);
        upwind.push(blocks);
    }
    BlockOperator::from_blocks(nb, dir.clone(), diagonal, upwind)
}

/// Right-hand side `int f v + int_{inflow boundary} |omega . nu| g v`.
pub fn assemble_rhs(
    mesh: &VoronoiMesh,
    space: &DgSpace,
    dir: &Direction,
    f: &dyn Fn(Point) -> f64,
    g: &dyn Fn(Point) -> f64,
) -> Result<Vec<f64>> {
    let omega = dir.as_point()?;
    let nb = space.n_basis();
    let gl = facet_rule(space);
    let mut rhs = vec![0.0; space.n_dofs()];
    let mut phi = vec![0.0; nb];
    for t in 0..mesh.n_cells() {
        let out = &mut rhs[t * nb..(t + 1) * nb];
        let q = space.cell_quadrature(t);
        for (k, (&x, &w)) in q.points.iter().zip(&q.weights).enumerate() {
            let fx = f(x);
            if fx != 0.0 {
                for (o, v) in out.iter_mut().zip(&q.values[k * nb..(k + 1) * nb]) {
                    *o += w * fx * v;
                }
            }
        }
        for &fid in mesh.cell_facets(t) {
            let facet = &mesh.facets()[fid];
            if !facet.is_boundary() {
                continue;
            }
            let flux = omega.dot(facet.normal);
            if FacetRole::of_flux(flux, CHARACTERISTIC_TOL) != FacetRole::Inflow {
                continue;
            }
            for (x, w) in gl.on_segment(facet.endpoints[0], facet.endpoints[1]) {
                let gx = g(x);
                space.eval(t, x, &mut phi);
                for (o, v) in out.iter_mut().zip(&phi) {
                    *o -= w * flux * gx * v;
                }
            }
        }
        if out.iter().any(|v| !v.is_finite()) {
            return Err(Error::QuadratureFailure(t));
        }
    }
    Ok(rhs)
}
