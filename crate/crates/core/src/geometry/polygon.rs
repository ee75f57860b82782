use alloc::vec::Vec;

use super::Point;
use crate::{Error, Result};

/// Signed area of a closed polygon (positive when counter-clockwise).
pub fn signed_area(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    let mut twice = 0.0;
    for k in 0..n {
        twice += vertices[k].cross(vertices[(k + 1) % n]);
    }
    0.5 * twice
}

/// Area centroid of a simple polygon; falls back to the vertex mean when the
/// polygon has no area.
pub fn centroid(vertices: &[Point]) -> Point {
    let n = vertices.len();
    // Shift to the first vertex to limit cancellation.
    let origin = vertices[0];
    let mut twice_area = 0.0;
    let mut acc = Point::ORIGIN;
    for k in 0..n {
        let a = vertices[k] - origin;
        let b = vertices[(k + 1) % n] - origin;
        let c = a.cross(b);
        twice_area += c;
        acc += (a + b) * c;
    }
    if twice_area == 0.0 {
        let mut mean = Point::ORIGIN;
        for v in vertices {
            mean += *v;
        }
        return mean * (1.0 / n as f64);
    }
    origin + acc * (1.0 / (3.0 * twice_area))
}

/// Largest pairwise vertex distance.
pub fn diameter(vertices: &[Point]) -> f64 {
    let mut best = 0.0f64;
    for (k, a) in vertices.iter().enumerate() {
        for b in &vertices[k + 1..] {
            best = best.max(a.distance(*b));
        }
    }
    best
}

/// Every turn is a strict left turn.
pub fn is_strictly_convex(vertices: &[Point]) -> bool {
    let n = vertices.len();
    if n < 3 {
        return false;
    }
    (0..n).all(|k| {
        let a = vertices[k];
        let b = vertices[(k + 1) % n];
        let c = vertices[(k + 2) % n];
        (b - a).cross(c - b) > 0.0
    })
}

/// Point-in-convex-polygon test for a CCW polygon. Points within `tol` of
/// an edge line count as inside when `tol >= 0`; a negative `tol` demands a
/// margin.
pub fn convex_contains(vertices: &[Point], p: Point, tol: f64) -> bool {
    let n = vertices.len();
    (0..n).all(|k| {
        let a = vertices[k];
        let b = vertices[(k + 1) % n];
        let edge = b - a;
        let len = edge.norm();
        // signed distance, positive on the left (inside)
        edge.cross(p - a) / len >= -tol
    })
}

/// The convex computational domain.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainPolygon {
    vertices: Vec<Point>,
    area: f64,
    diameter: f64,
}

impl DomainPolygon {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::NonConvexDomain("fewer than three vertices"));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonConvexDomain("non-finite vertex"));
        }
        if !is_strictly_convex(&vertices) {
            return Err(Error::NonConvexDomain(
                "vertices must be counter-clockwise with strictly positive turns",
            ));
        }
        let area = signed_area(&vertices);
        if area <= 0.0 {
            return Err(Error::NonConvexDomain("non-positive area"));
        }
        let diameter = diameter(&vertices);
        Ok(Self {
            vertices,
            area,
            diameter,
        })
    }

    /// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self> {
        Self::new(alloc::vec![
            Point::new(x0, y0),
            Point::new(x1, y0),
            Point::new(x1, y1),
            Point::new(x0, y1),
        ])
    }

    pub fn unit_square() -> Self {
        Self::rectangle(0.0, 0.0, 1.0, 1.0).expect("unit square is convex")
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices[1..] {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    /// Inside or on the boundary, up to `1e-12 * diameter`.
    pub fn contains(&self, p: Point) -> bool {
        convex_contains(&self.vertices, p, 1e-12 * self.diameter)
    }

    /// Strictly inside: at least `1e-12 * diameter` away from every edge line.
    pub fn contains_strictly(&self, p: Point) -> bool {
        convex_contains(&self.vertices, p, -1e-12 * self.diameter)
    }

    /// Whether the segment `a`-`b` lies on one of the domain edges.
    pub fn on_boundary(&self, a: Point, b: Point, tol: f64) -> bool {
        let n = self.vertices.len();
        (0..n).any(|k| {
            let p = self.vertices[k];
            let q = self.vertices[(k + 1) % n];
            let dir = (q - p).normalized();
            dir.cross(a - p).abs() <= tol && dir.cross(b - p).abs() <= tol
        })
    }
}

/// Provenance of a clipped-polygon edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum EdgeLabel {
    /// Lies on domain edge `k`.
    Domain(usize),
    /// Lies on the bisector with seed `j`.
    Seed(usize),
}

/// Convex CCW polygon whose edge `k` (from vertex `k` to `k + 1`) carries a
/// label.
#[derive(Clone, Debug)]
pub(crate) struct LabeledPolygon {
    pub vertices: Vec<Point>,
    pub labels: Vec<EdgeLabel>,
}

impl LabeledPolygon {
    pub fn from_domain(domain: &DomainPolygon) -> Self {
        Self {
            vertices: domain.vertices.clone(),
            labels: (0..domain.vertices.len()).map(EdgeLabel::Domain).collect(),
        }
    }

    /// Keeps the half-plane `(x - origin) . normal <= 0`; `normal` is a unit
    /// vector. Vertices within `eps` of the line count as inside. Returns
    /// whether anything was cut off.
    pub fn clip(&mut self, origin: Point, normal: Point, label: EdgeLabel, eps: f64) -> bool {
        let n = self.vertices.len();
        let dist: Vec<f64> = self
            .vertices
            .iter()
            .map(|v| (*v - origin).dot(normal))
            .collect();
        if dist.iter().all(|&d| d <= eps) {
            return false;
        }
        let mut verts = Vec::with_capacity(n + 1);
        let mut labels = Vec::with_capacity(n + 1);
        for k in 0..n {
            let k1 = (k + 1) % n;
            let (a, b) = (self.vertices[k], self.vertices[k1]);
            let (da, db) = (dist[k], dist[k1]);
            let edge_label = self.labels[k];
            if da <= eps {
                verts.push(a);
                labels.push(edge_label);
                if db > eps {
                    if da >= -eps {
                        // `a` sits on the cut: its outgoing edge is the cut itself
                        *labels.last_mut().unwrap() = label;
                    } else {
                        let t = da / (da - db);
                        verts.push(a + (b - a) * t);
                        labels.push(label);
                    }
                }
            } else if db < -eps {
                let t = da / (da - db);
                verts.push(a + (b - a) * t);
                labels.push(edge_label);
            }
        }
        self.vertices = verts;
        self.labels = labels;
        true
    }

    /// Merges vertices closer than `tol` and drops collinear vertices.
    pub fn cleanup(&mut self, tol: f64) {
        // Coincident vertices: the zero-length edge k -> k+1 disappears and
        // vertex k inherits the label of edge k+1.
        let mut changed = true;
        while changed && self.vertices.len() > 2 {
            changed = false;
            let n = self.vertices.len();
            for k in 0..n {
                let k1 = (k + 1) % n;
                if self.vertices[k].distance(self.vertices[k1]) < tol {
                    self.labels[k] = self.labels[k1];
                    self.vertices.remove(k1);
                    self.labels.remove(k1);
                    changed = true;
                    break;
                }
            }
        }
        changed = true;
        while changed && self.vertices.len() > 3 {
            changed = false;
            let n = self.vertices.len();
            for k in 0..n {
                let prev = (k + n - 1) % n;
                let next = (k + 1) % n;
                let e0 = self.vertices[k] - self.vertices[prev];
                let e1 = self.vertices[next] - self.vertices[k];
                let (l0, l1) = (e0.norm(), e1.norm());
                if e0.cross(e1) <= 1e-12 * l0 * l1 {
                    // Keep the label of the longer of the two merged edges.
                    if l1 > l0 {
                        self.labels[prev] = self.labels[k];
                    }
                    self.vertices.remove(k);
                    self.labels.remove(k);
                    changed = true;
                    break;
                }
            }
        }
    }

    pub fn max_distance_from(&self, p: Point) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.distance(p))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn square_measures() {
        let sq = DomainPolygon::unit_square();
        assert_eq!(sq.area(), 1.0);
        assert!((sq.diameter() - core::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(centroid(sq.vertices()), Point::new(0.5, 0.5));
    }

    #[test]
    fn rejects_clockwise_and_reflex() {
        let cw = vec![
            Point::new(0.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
        ];
        assert!(matches!(
            DomainPolygon::new(cw),
            Err(Error::NonConvexDomain(_))
        ));
        let dart = vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(1.0, 0.5),
            Point::new(1.0, 2.0),
        ];
        assert!(DomainPolygon::new(dart).is_err());
        let collinear = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(1.0, 1.0),
        ];
        assert!(DomainPolygon::new(collinear).is_err());
    }

    #[test]
    fn clip_square_by_bisector() {
        let mut poly = LabeledPolygon::from_domain(&DomainPolygon::unit_square());
        assert!(poly.clip(
            Point::new(0.5, 0.5),
            Point::new(1.0, 0.0),
            EdgeLabel::Seed(1),
            1e-14
        ));
        poly.cleanup(1e-12);
        assert_eq!(poly.vertices.len(), 4);
        assert!((signed_area(&poly.vertices) - 0.5).abs() < 1e-15);
        assert_eq!(
            poly.labels.iter().filter(|l| **l == EdgeLabel::Seed(1)).count(),
            1
        );
    }

    #[test]
    fn clip_through_vertex_keeps_polygon() {
        let mut poly = LabeledPolygon::from_domain(&DomainPolygon::unit_square());
        // diagonal cut through two corners
        let normal = Point::new(1.0, 1.0).normalized();
        poly.clip(Point::new(0.5, 0.5), normal, EdgeLabel::Seed(7), 1e-14);
        poly.cleanup(1e-12);
        assert_eq!(poly.vertices.len(), 3);
        assert!((signed_area(&poly.vertices) - 0.5).abs() < 1e-15);
        assert!(poly.labels.contains(&EdgeLabel::Seed(7)));
    }
}
