use alloc::vec::Vec;

use super::{build_voronoi, DomainPolygon, Point};
use crate::Result;

/// Result of a Lloyd run: final seeds and, per iteration, the largest
/// distance any seed moved to reach its cell centroid.
#[derive(Clone, Debug)]
pub struct LloydTrace {
    pub seeds: Vec<Point>,
    pub max_shift: Vec<f64>,
}

/// Replaces every seed by its cell centroid `iterations` times.
pub fn lloyd_relax(seeds: &[Point], domain: &DomainPolygon, iterations: usize) -> Result<Vec<Point>> {
    lloyd_relax_traced(seeds, domain, iterations).map(|t| t.seeds)
}

pub fn lloyd_relax_traced(
    seeds: &[Point],
    domain: &DomainPolygon,
    iterations: usize,
) -> Result<LloydTrace> {
    let mut current = seeds.to_vec();
    let mut max_shift = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let mesh = build_voronoi(&current, domain)?;
        let mut shift = 0.0f64;
        for (seed, cell) in current.iter_mut().zip(mesh.cells()) {
            shift = shift.max(seed.distance(cell.centroid));
            *seed = cell.centroid;
        }
        max_shift.push(shift);
    }
    Ok(LloydTrace {
        seeds: current,
        max_shift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::random_seeds;
    use alloc::vec;

    #[test]
    fn zero_iterations_is_identity() {
        let sq = DomainPolygon::unit_square();
        let seeds = random_seeds(20, &sq, 1).unwrap();
        assert_eq!(lloyd_relax(&seeds, &sq, 0).unwrap(), seeds);
    }

    #[test]
    fn centroidal_grid_is_fixed() {
        let sq = DomainPolygon::unit_square();
        let seeds = vec![
            Point::new(0.25, 0.25),
            Point::new(0.75, 0.25),
            Point::new(0.25, 0.75),
            Point::new(0.75, 0.75),
        ];
        let relaxed = lloyd_relax(&seeds, &sq, 5).unwrap();
        for (a, b) in seeds.iter().zip(&relaxed) {
            assert!(a.distance(*b) < 1e-15);
        }
    }

    #[test]
    fn shift_decreases() {
        let sq = DomainPolygon::unit_square();
        let seeds = random_seeds(100, &sq, 11).unwrap();
        let trace = lloyd_relax_traced(&seeds, &sq, 50).unwrap();
        assert_eq!(trace.max_shift.len(), 50);
        assert!(trace.max_shift[49] < trace.max_shift[0]);
    }

    #[test]
    fn propagates_build_errors() {
        let sq = DomainPolygon::unit_square();
        assert!(lloyd_relax(&[Point::new(2.0, 0.0)], &sq, 1).is_err());
    }
}
