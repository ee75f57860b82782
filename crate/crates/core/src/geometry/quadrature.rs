//! Gauss rules on segments, triangles and polygonal cells.
//!
//! Triangle rules are collapsed (Duffy) products of Gauss-Legendre rules,
//! generated on demand rather than tabulated, so any order up to
//! [`MAX_ORDER`] is available. All weights are positive and all nodes are
//! interior.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{Cell, Facet, Point};
use crate::{math, Error, Result};

/// Highest polynomial degree the cell rules accept.
pub const MAX_ORDER: usize = 40;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one point");
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = math::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Rule with enough points to integrate degree `degree` exactly.
    pub fn for_degree(degree: usize) -> Self {
        Self::new(degree / 2 + 1)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped onto the segment `a`-`b`.
    pub fn on_segment(&self, a: Point, b: Point) -> Vec<(Point, f64)> {
        let half = 0.5 * a.distance(b);
        let mid = a.midpoint(b);
        let dir = (b - a) * 0.5;
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| (mid + dir * t, w * half))
            .collect()
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Rule on the reference triangle `(0,0), (1,0), (0,1)`: barycentric-like
/// coordinates `(xi, eta)` with weights summing to `1/2`.
#[derive(Clone, Debug)]
pub struct TriangleRule {
    order: usize,
    pub points: Vec<(f64, f64, f64)>,
}

impl TriangleRule {
    /// Rule exact for total degree `order`.
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::UnsupportedOrder(order));
        }
        // The collapsed map contributes one extra degree in the radial
        // direction through its Jacobian.
        let gl = GaussLegendre::new((order + 3) / 2);
        let mut points = Vec::with_capacity(gl.len() * gl.len());
        for (&s, &ws) in gl.nodes.iter().zip(&gl.weights) {
            let s = 0.5 * (s + 1.0);
            for (&t, &wt) in gl.nodes.iter().zip(&gl.weights) {
                let t = 0.5 * (t + 1.0);
                points.push((s, t * (1.0 - s), 0.25 * ws * wt * (1.0 - s)));
            }
        }
        Ok(Self { order, points })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Maps the rule onto the triangle `a, b, c` (any orientation).
    pub fn on_triangle(&self, a: Point, b: Point, c: Point, out: &mut Vec<(Point, f64)>) {
        let jac = (b - a).cross(c - a).abs();
        for &(xi, eta, w) in &self.points {
            out.push((a + (b - a) * xi + (c - a) * eta, w * jac));
        }
    }

    /// Fans `vertices` from `centre` and maps the rule onto every triangle.
    pub fn on_polygon(&self, vertices: &[Point], centre: Point) -> Vec<(Point, f64)> {
        let n = vertices.len();
        let mut out = Vec::with_capacity(n * self.points.len());
        for k in 0..n {
            self.on_triangle(centre, vertices[k], vertices[(k + 1) % n], &mut out);
        }
        out
    }
}

/// Quadrature over a cell, exact for total degree `order`.
pub fn cell_quadrature(cell: &Cell, order: usize) -> Result<Vec<(Point, f64)>> {
    let rule = TriangleRule::new(order)?;
    Ok(rule.on_polygon(&cell.vertices, cell.centroid))
}

/// Gauss-Legendre quadrature with `n_points` nodes along a facet.
pub fn facet_quadrature(facet: &Facet, n_points: usize) -> Vec<(Point, f64)> {
    GaussLegendre::new(n_points).on_segment(facet.endpoints[0], facet.endpoints[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_voronoi, DomainPolygon};
    use crate::math::powi;
    use alloc::vec;

    #[test]
    fn gauss_legendre_exactness() {
        for n in 1..=20 {
            let gl = GaussLegendre::new(n);
            assert!((gl.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            for deg in 0..2 * n {
                let q: f64 = gl
                    .nodes
                    .iter()
                    .zip(&gl.weights)
                    .map(|(&x, &w)| w * powi(x, deg as u32))
                    .sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13, "n={n} deg={deg} {q} {exact}");
            }
        }
    }

    #[test]
    fn triangle_moments() {
        // int_ref x^a y^b = a! b! / (a + b + 2)!
        let fact = |k: u32| (1..=k).map(f64::from).product::<f64>();
        for order in 1..=MAX_ORDER {
            let rule = TriangleRule::new(order).unwrap();
            for a in 0..=order as u32 {
                for b in 0..=(order as u32 - a) {
                    let q: f64 = rule
                        .points
                        .iter()
                        .map(|&(x, y, w)| w * powi(x, a) * powi(y, b))
                        .sum();
                    let exact = fact(a) * fact(b) / fact(a + b + 2);
                    assert!(
                        (q - exact).abs() <= 1e-12 * exact,
                        "order {order}: x^{a} y^{b}"
                    );
                }
            }
        }
    }

    #[test]
    fn unsupported_orders() {
        assert_eq!(TriangleRule::new(0).unwrap_err(), Error::UnsupportedOrder(0));
        assert!(TriangleRule::new(MAX_ORDER + 1).is_err());
        assert!(TriangleRule::new(10).is_ok());
    }

    #[test]
    fn cell_rules_on_square() {
        let mesh = build_voronoi(&[Point::new(0.5, 0.5)], &DomainPolygon::unit_square()).unwrap();
        let q = cell_quadrature(mesh.cell(0), 2).unwrap();
        let one: f64 = q.iter().map(|(_, w)| w).sum();
        let x: f64 = q.iter().map(|(p, w)| w * p.x).sum();
        assert!((one - 1.0).abs() < 1e-14);
        assert!((x - 0.5).abs() < 1e-14);
    }

    #[test]
    fn facet_rules() {
        let seeds = vec![Point::new(0.25, 0.5), Point::new(0.75, 0.5)];
        let mesh = build_voronoi(&seeds, &DomainPolygon::unit_square()).unwrap();
        let f = &mesh.facets()[0];
        let q = facet_quadrature(f, 1);
        assert_eq!(q.len(), 1);
        let lin = |p: Point| 2.0 * p.x - 3.0 * p.y + 1.0;
        let val: f64 = q.iter().map(|&(p, w)| w * lin(p)).sum();
        assert!((val - lin(f.midpoint) * f.length).abs() < 1e-14);
        let len: f64 = facet_quadrature(f, 4).iter().map(|(_, w)| w).sum();
        assert!((len - f.length).abs() < 1e-15);
    }

    #[test]
    fn degree_five_on_unit_segment() {
        // p(t) = 3t^5 - t^4 + 2t^2 - 7, antiderivative at 1: 1/2 - 1/5 + 2/3 - 7
        let gl = GaussLegendre::new(3);
        let q: f64 = gl
            .on_segment(Point::new(0.0, 0.0), Point::new(1.0, 0.0))
            .iter()
            .map(|&(p, w)| w * (3.0 * powi(p.x, 5) - powi(p.x, 4) + 2.0 * p.x * p.x - 7.0))
            .sum();
        let exact = 0.5 - 0.2 + 2.0 / 3.0 - 7.0;
        assert!((q - exact).abs() < 1e-14);
    }
}
