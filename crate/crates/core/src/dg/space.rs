use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{Point, TriangleRule, VoronoiMesh};
use crate::math::powi;
use crate::Result;

/// Exponents `(a, b)` of the monomials of total degree `<= p`, ordered by
/// total degree and then by descending power of `x`.
pub fn multi_indices(p: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity((p + 1) * (p + 2) / 2);
    for d in 0..=p as u32 {
        for a in (0..=d).rev() {
            out.push((a, d - a));
        }
    }
    out
}

/// Number of basis functions per cell for degree `p`.
pub const fn basis_size(p: usize) -> usize {
    (p + 1) * (p + 2) / 2
}

/// Volume quadrature of one cell with basis values and gradients at the
/// nodes, stored node-major.
#[derive(Clone, Debug)]
pub struct CellQuadrature {
    pub points: Vec<Point>,
    pub weights: Vec<f64>,
    pub values: Vec<f64>,
    pub gradients: Vec<Point>,
}

/// Discontinuous piecewise polynomials of total degree `p` on a mesh, with
/// the scaled monomial basis `((x - c_T) / h_T)^alpha` on every cell.
#[derive(Clone, Debug)]
pub struct DgSpace {
    degree: usize,
    n_basis: usize,
    exponents: Vec<(u32, u32)>,
    centres: Vec<Point>,
    scales: Vec<f64>,
    mass: Vec<f64>,
    quadrature: Vec<CellQuadrature>,
}

impl DgSpace {
    pub fn new(mesh: &VoronoiMesh, degree: usize) -> Result<Self> {
        let n_basis = basis_size(degree);
        let mut space = Self {
            degree,
            n_basis,
            exponents: multi_indices(degree),
            centres: mesh.cells().iter().map(|c| c.centroid).collect(),
            scales: mesh.cells().iter().map(|c| c.diameter).collect(),
            mass: Vec::with_capacity(mesh.n_cells() * n_basis * n_basis),
            quadrature: Vec::with_capacity(mesh.n_cells()),
        };
        let rule = TriangleRule::new(Self::assembly_order(degree))?;
        for (t, cell) in mesh.cells().iter().enumerate() {
            let nodes = rule.on_polygon(&cell.vertices, cell.centroid);
            let mut q = CellQuadrature {
                points: Vec::with_capacity(nodes.len()),
                weights: Vec::with_capacity(nodes.len()),
                values: vec![0.0; nodes.len() * n_basis],
                gradients: vec![Point::ORIGIN; nodes.len() * n_basis],
            };
            let mut m = vec![0.0; n_basis * n_basis];
            for (k, &(x, w)) in nodes.iter().enumerate() {
                let vals = &mut q.values[k * n_basis..(k + 1) * n_basis];
                let grads = &mut q.gradients[k * n_basis..(k + 1) * n_basis];
                space.eval_with_gradients(t, x, vals, grads);
                for a in 0..n_basis {
                    for b in 0..n_basis {
                        m[a * n_basis + b] += w * vals[a] * vals[b];
                    }
                }
                q.points.push(x);
                q.weights.push(w);
            }
            space.mass.extend_from_slice(&m);
            space.quadrature.push(q);
        }
        Ok(space)
    }

    /// Quadrature degree used for operator assembly: `2p + 2`.
    pub fn assembly_order(degree: usize) -> usize {
        2 * degree + 2
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn n_basis(&self) -> usize {
        self.n_basis
    }

    pub fn n_cells(&self) -> usize {
        self.centres.len()
    }

    pub fn n_dofs(&self) -> usize {
        self.n_cells() * self.n_basis
    }

    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.exponents
    }

    /// Row-major mass matrix of `cell`.
    pub fn mass(&self, cell: usize) -> &[f64] {
        let nn = self.n_basis * self.n_basis;
        &self.mass[cell * nn..(cell + 1) * nn]
    }

    pub fn cell_quadrature(&self, cell: usize) -> &CellQuadrature {
        &self.quadrature[cell]
    }

    /// Basis values of `cell` at `x` written into `out`.
    pub fn eval(&self, cell: usize, x: Point, out: &mut [f64]) {
        let h = self.scales[cell];
        let s = (x - self.centres[cell]) * (1.0 / h);
        for (o, &(a, b)) in out.iter_mut().zip(&self.exponents) {
            *o = powi(s.x, a) * powi(s.y, b);
        }
    }

    pub fn eval_with_gradients(&self, cell: usize, x: Point, vals: &mut [f64], grads: &mut [Point]) {
        let h = self.scales[cell];
        let s = (x - self.centres[cell]) * (1.0 / h);
        for (k, &(a, b)) in self.exponents.iter().enumerate() {
            let xa = powi(s.x, a);
            let yb = powi(s.y, b);
            vals[k] = xa * yb;
            let dx = if a == 0 { 0.0 } else { a as f64 * powi(s.x, a - 1) * yb / h };
            let dy = if b == 0 { 0.0 } else { b as f64 * xa * powi(s.y, b - 1) / h };
            grads[k] = Point::new(dx, dy);
        }
    }

    /// Value at `x` of the local expansion with coefficients `coeffs`.
    pub fn eval_expansion(&self, cell: usize, coeffs: &[f64], x: Point) -> f64 {
        let h = self.scales[cell];
        let s = (x - self.centres[cell]) * (1.0 / h);
        coeffs
            .iter()
            .zip(&self.exponents)
            .map(|(c, &(a, b))| c * powi(s.x, a) * powi(s.y, b))
            .sum()
    }
}
