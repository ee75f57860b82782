use alloc::vec::Vec;

use crate::geometry::Point;
use crate::{math, Error, Result};

/// Allowed deviation of `|omega|` from one.
pub const UNIT_TOL: f64 = 1e-12;

/// A unit flow direction in `d` dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct Direction {
    coords: Vec<f64>,
}

impl Direction {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let norm = math::sqrt(coords.iter().map(|c| c * c).sum());
        if coords.is_empty() || !norm.is_finite() || (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnitDirection(norm));
        }
        Ok(Self { coords })
    }

    /// Normalizes `coords`; fails on the zero vector.
    pub fn normalized(coords: Vec<f64>) -> Result<Self> {
        let norm = math::sqrt(coords.iter().map(|c| c * c).sum());
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotUnitDirection(norm));
        }
        Ok(Self {
            coords: coords.into_iter().map(|c| c / norm).collect(),
        })
    }

    /// `(cos theta, sin theta)`.
    pub fn from_angle(theta: f64) -> Self {
        Self {
            coords: alloc::vec![math::cos(theta), math::sin(theta)],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn reversed(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// The direction as a planar vector.
    pub fn as_point(&self) -> Result<Point> {
        match self.coords[..] {
            [x, y] => Ok(Point::new(x, y)),
            _ => Err(Error::DimensionMismatch {
                expected: 2,
                found: self.coords.len(),
            }),
        }
    }
}

/// Anything with coordinates that can be projected onto a direction.
pub trait Centre {
    fn dim(&self) -> usize;
    fn project(&self, dir: &[f64]) -> f64;
}

impl Centre for Point {
    fn dim(&self) -> usize {
        2
    }
    #[inline]
    fn project(&self, dir: &[f64]) -> f64 {
        self.x * dir[0] + self.y * dir[1]
    }
}

impl<const N: usize> Centre for [f64; N] {
    fn dim(&self) -> usize {
        N
    }
    #[inline]
    fn project(&self, dir: &[f64]) -> f64 {
        self.iter().zip(dir).map(|(a, b)| a * b).sum()
    }
}

impl Centre for Vec<f64> {
    fn dim(&self) -> usize {
        self.len()
    }
    #[inline]
    fn project(&self, dir: &[f64]) -> f64 {
        self.iter().zip(dir).map(|(a, b)| a * b).sum()
    }
}
