//! Manufactured solution `psi(x, omega) = exp(-(x . omega)^2)`.

use super::{OrdinateSet, ScatteringKernel};
use crate::dg::CoefficientField;
use crate::geometry::{DomainPolygon, Point};
use crate::{math, Error, Result};

pub fn mms_exact(x: Point, omega: Point) -> f64 {
    let s = x.dot(omega);
    math::exp(-s * s)
}

/// `omega . grad psi = -2 (x . omega) psi`.
pub fn mms_streaming(x: Point, omega: Point) -> f64 {
    let s = x.dot(omega);
    -2.0 * s * math::exp(-s * s)
}

/// Source for ordinate `k` that makes the exact solution satisfy the
/// discrete-ordinates system, with the scattering integral evaluated by the
/// same ordinate quadrature.
pub fn mms_source(
    x: Point,
    k: usize,
    ords: &OrdinateSet,
    sigma_t: &CoefficientField,
    kernel: &ScatteringKernel,
) -> f64 {
    let wk = ords.vector(k);
    let scatter: f64 = (0..ords.len())
        .map(|l| {
            let wl = ords.vector(l);
            ords.weights[l] * kernel.at(x, wk.dot(wl)) * mms_exact(x, wl)
        })
        .sum();
    mms_streaming(x, wk) + sigma_t.at(x) * mms_exact(x, wk) - scatter
}

/// Inflow datum for ordinate `k` at a boundary point: the exact trace.
pub fn mms_inflow(domain: &DomainPolygon, x: Point, k: usize, ords: &OrdinateSet) -> Result<f64> {
    let omega = ords.vector(k);
    let verts = domain.vertices();
    let n = verts.len();
    let tol = 1e-12 * domain.diameter();
    let inflow = (0..n).any(|e| {
        let a = verts[e];
        let b = verts[(e + 1) % n];
        let t = b - a;
        let len = t.norm();
        let along = (x - a).dot(t) / len;
        let off = t.cross(x - a) / len;
        let outward = Point::new(t.y, -t.x) * (1.0 / len);
        off.abs() <= tol && along >= -tol && along <= len + tol && omega.dot(outward) < 0.0
    });
    if inflow {
        Ok(mms_exact(x, omega))
    } else {
        Err(Error::NotInflow { point: x, ordinate: k })
    }
}
