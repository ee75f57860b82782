use alloc::sync::Arc;
use core::fmt;

use crate::geometry::Point;

/// A scalar coefficient `x -> value`, e.g. a cross-section or a source.
#[derive(Clone)]
pub enum CoefficientField {
    Constant(f64),
    Callable(Arc<dyn Fn(Point) -> f64 + Send + Sync>),
}

impl CoefficientField {
    pub fn callable(f: impl Fn(Point) -> f64 + Send + Sync + 'static) -> Self {
        Self::Callable(Arc::new(f))
    }

    #[inline]
    pub fn at(&self, x: Point) -> f64 {
        match self {
            Self::Constant(c) => *c,
            Self::Callable(f) => f(x),
        }
    }

    pub fn as_constant(&self) -> Option<f64> {
        match self {
            Self::Constant(c) => Some(*c),
            Self::Callable(_) => None,
        }
    }
}

impl From<f64> for CoefficientField {
    fn from(c: f64) -> Self {
        Self::Constant(c)
    }
}

impl fmt::Debug for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(c) => f.debug_tuple("Constant").field(c).finish(),
            Self::Callable(_) => f.write_str("Callable(..)"),
        }
    }
}
