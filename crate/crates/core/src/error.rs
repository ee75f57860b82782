use alloc::string::String;

use crate::geometry::Point;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("seed {index} at ({x}, {y}) is not strictly inside the domain", x = .point.x, y = .point.y)]
    SeedOutsideDomain { index: usize, point: Point },
    #[error("seeds {first} and {second} are closer than the separation tolerance")]
    DuplicateSeeds { first: usize, second: usize },
    #[error("domain polygon is not strictly convex: {0}")]
    NonConvexDomain(&'static str),
    #[error("at least one seed is required")]
    NoSeeds,
    #[error("quadrature order {0} is not supported")]
    UnsupportedOrder(usize),
    #[error("rejection sampling gave up after {attempts} attempts ({accepted} points accepted)")]
    SamplingExhausted { attempts: usize, accepted: usize },
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("direction is not a unit vector (norm {0})")]
    NotUnitDirection(f64),
    #[error("schedule and dual graph cover different node sets")]
    NodeSetMismatch,
    #[error("subset is empty")]
    EmptySubset,
    #[error("unknown cell id {0}")]
    UnknownId(usize),
    #[error("quadrature produced a non-finite value in cell {0}")]
    QuadratureFailure(usize),
    #[error("diagonal block of cell {0} is singular")]
    SingularDiagonalBlock(usize),
    #[error("cell {cell} depends on upwind cell {upwind} which has not been solved")]
    ScheduleInvalid { cell: usize, upwind: usize },
    #[error("matrix is singular at pivot {0}")]
    SingularMatrix(usize),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("point ({x}, {y}) is outside the domain", x = .0.x, y = .0.y)]
    PointOutsideDomain(Point),
    #[error("coercivity fails at ({x}, {y}) for ordinate {ordinate}: margin {margin}", x = .point.x, y = .point.y)]
    NotCoercive { point: Point, ordinate: usize, margin: f64 },
    #[error("point ({x}, {y}) is not on the inflow boundary of ordinate {ordinate}", x = .point.x, y = .point.y)]
    NotInflow { point: Point, ordinate: usize },
    #[error("source iteration stopped after {iterations} iterations with update norm {update_norm}")]
    MaxIterationsExceeded { iterations: usize, update_norm: f64 },
    #[error("not enough data: {0}")]
    InsufficientData(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
