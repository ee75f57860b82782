use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::geometry::Point;
use crate::sweep::Direction;

/// Discrete ordinates on the unit circle with weights normalised to one.
#[derive(Clone, Debug, PartialEq)]
pub struct OrdinateSet {
    pub angles: Vec<f64>,
    pub directions: Vec<Direction>,
    pub weights: Vec<f64>,
}

impl OrdinateSet {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Planar vector of ordinate `k`.
    pub fn vector(&self, k: usize) -> Point {
        let c = self.directions[k].coords();
        Point::new(c[0], c[1])
    }

    /// `sum_k w_k z(omega_k)`, approximating the mean of `z` over the circle.
    pub fn integrate(&self, z: impl Fn(Point) -> f64) -> f64 {
        (0..self.len()).map(|k| self.weights[k] * z(self.vector(k))).sum()
    }
}

/// Equal-angle midpoint rule: `theta_k = 2 pi (k + 1/2) / n_q` for
/// `k = 0..n_q`, all weights `1 / n_q`. The half-step offset keeps the
/// ordinates off the coordinate axes.
pub fn ordinates(n_q: usize) -> OrdinateSet {
    assert!(n_q >= 1, "at least one ordinate is required");
    let angles: Vec<f64> = (0..n_q)
        .map(|k| 2.0 * PI * (k as f64 + 0.5) / n_q as f64)
        .collect();
    OrdinateSet {
        directions: angles.iter().map(|&t| Direction::from_angle(t)).collect(),
        weights: alloc::vec![1.0 / n_q as f64; n_q],
        angles,
    }
}
