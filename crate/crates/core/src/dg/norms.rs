use alloc::vec;
use alloc::vec::Vec;

use super::{DgSpace, SolutionField};
use crate::geometry::{GaussLegendre, Point, TriangleRule, VoronoiMesh};
use crate::linalg::LuFactor;
use crate::sweep::{Direction, CHARACTERISTIC_TOL};
use crate::{math, Error, Result};

/// Minimum quadrature degree for error norms, enough to resolve smooth
/// non-polynomial reference solutions.
pub const ERROR_QUADRATURE_ORDER: usize = 8;

/// DG energy norm of `reference - u_h` for direction `dir`:
///
/// `sum_T ||sigma_0^(1/2) e||^2_T + 1/2 || |w.n|^(1/2) [e] ||^2 on interior
/// inflow facets + 1/2 || |w.n|^(1/2) e ||^2 on the inflow boundary`.
///
/// `reference(cell, x)` is the reference value at `x` seen from `cell`, so
/// discontinuous references (other DG fields) work as well.
pub fn energy_norm_with(
    u_h: &SolutionField,
    reference: &dyn Fn(usize, Point) -> f64,
    dir: &Direction,
    sigma0: f64,
    mesh: &VoronoiMesh,
    space: &DgSpace,
) -> Result<f64> {
    if !(sigma0 > 0.0) {
        return Err(Error::InvalidArgument("sigma_0 must be positive"));
    }
    if u_h.coefficients.len() != space.n_dofs() {
        return Err(Error::SizeMismatch {
            expected: space.n_dofs(),
            found: u_h.coefficients.len(),
        });
    }
    let omega = dir.as_point()?;
    let order = ERROR_QUADRATURE_ORDER.max(2 * space.degree() + 2);
    let rule = TriangleRule::new(order)?;
    let gl = GaussLegendre::for_degree(order);
    let err = |t: usize, x: Point| reference(t, x) - space.eval_expansion(t, u_h.cell(t), x);

    let mut total = 0.0;
    for (t, cell) in mesh.cells().iter().enumerate() {
        for (x, w) in rule.on_polygon(&cell.vertices, cell.centroid) {
            let e = err(t, x);
            total += sigma0 * w * e * e;
        }
        for &f in mesh.cell_facets(t) {
            let facet = &mesh.facets()[f];
            let flux = omega.dot(facet.outward_normal(t));
            if flux >= -CHARACTERISTIC_TOL {
                continue;
            }
            let upwind = facet.neighbour(t);
            for (x, w) in gl.on_segment(facet.endpoints[0], facet.endpoints[1]) {
                let jump = match upwind {
                    Some(up) => err(up, x) - err(t, x),
                    None => err(t, x),
                };
                total += 0.5 * w * (-flux) * jump * jump;
            }
        }
    }
    Ok(math::sqrt(total))
}

/// Energy norm of `exact - u_h` for a continuous exact solution.
pub fn energy_norm_error(
    u_h: &SolutionField,
    exact: &dyn Fn(Point) -> f64,
    dir: &Direction,
    sigma0: f64,
    mesh: &VoronoiMesh,
    space: &DgSpace,
) -> Result<f64> {
    energy_norm_with(u_h, &|_, x| exact(x), dir, sigma0, mesh, space)
}

/// Energy norm of the difference of two DG fields on the same space.
pub fn energy_norm_between(
    a: &SolutionField,
    b: &SolutionField,
    dir: &Direction,
    sigma0: f64,
    mesh: &VoronoiMesh,
    space: &DgSpace,
) -> Result<f64> {
    energy_norm_with(
        a,
        &|t, x| space.eval_expansion(t, b.cell(t), x),
        dir,
        sigma0,
        mesh,
        space,
    )
}

/// `||u||_{L^2}` through the cell mass matrices.
pub fn l2_norm(u: &SolutionField, space: &DgSpace) -> f64 {
    let nb = space.n_basis();
    let mut total = 0.0;
    for t in 0..space.n_cells() {
        let m = space.mass(t);
        let c = u.cell(t);
        for a in 0..nb {
            for b in 0..nb {
                total += c[a] * m[a * nb + b] * c[b];
            }
        }
    }
    math::sqrt(total.max(0.0))
}

/// `||a - b||_{L^2}`.
pub fn l2_distance(a: &SolutionField, b: &SolutionField, space: &DgSpace) -> f64 {
    let diff = SolutionField {
        n_basis: a.n_basis,
        coefficients: a
            .coefficients
            .iter()
            .zip(&b.coefficients)
            .map(|(x, y)| x - y)
            .collect(),
    };
    l2_norm(&diff, space)
}

/// Point value of `u_h`; the containing cell is found by nearest centre.
pub fn evaluate(u_h: &SolutionField, mesh: &VoronoiMesh, space: &DgSpace, x: Point) -> Result<f64> {
    let t = mesh.locate(x)?;
    Ok(space.eval_expansion(t, u_h.cell(t), x))
}

/// Mean value of `u_h` over each cell.
pub fn cell_means(u_h: &SolutionField, mesh: &VoronoiMesh, space: &DgSpace) -> Vec<f64> {
    (0..mesh.n_cells())
        .map(|t| {
            let q = space.cell_quadrature(t);
            let nb = space.n_basis();
            let mut acc = 0.0;
            for (k, w) in q.weights.iter().enumerate() {
                let vals = &q.values[k * nb..(k + 1) * nb];
                acc += w * vals.iter().zip(u_h.cell(t)).map(|(a, b)| a * b).sum::<f64>();
            }
            acc / mesh.cell(t).area
        })
        .collect()
}

/// Cell-wise `L^2` projection of `f`, using the assembly quadrature.
pub fn project(f: &dyn Fn(Point) -> f64, space: &DgSpace) -> Result<SolutionField> {
    let nb = space.n_basis();
    let mut out = SolutionField::zeros(space.n_cells(), nb);
    let mut rhs = vec![0.0; nb];
    for t in 0..space.n_cells() {
        let q = space.cell_quadrature(t);
        rhs.iter_mut().for_each(|r| *r = 0.0);
        for (k, (&x, &w)) in q.points.iter().zip(&q.weights).enumerate() {
            let fx = f(x);
            for (r, v) in rhs.iter_mut().zip(&q.values[k * nb..(k + 1) * nb]) {
                *r += w * fx * v;
            }
        }
        let lu = LuFactor::new(space.mass(t).to_vec(), nb).map_err(|_| Error::SingularDiagonalBlock(t))?;
        lu.solve_in_place(&mut rhs);
        out.cell_mut(t).copy_from_slice(&rhs);
    }
    Ok(out)
}
