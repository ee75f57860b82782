use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DomainPolygon, Point};
use crate::{math, Error, Result};

/// Minimum separation between sampled points, relative to the domain
/// diameter.
pub const MIN_SEED_SEPARATION: f64 = 1e-6;

/// `n` points uniformly distributed in `domain`, by rejection sampling from
/// its bounding box. Deterministic in `rng_seed`.
pub fn random_seeds(n: usize, domain: &DomainPolygon, rng_seed: u64) -> Result<Vec<Point>> {
    if n == 0 {
        return Err(Error::InvalidArgument("at least one seed is required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let (lo, hi) = domain.bounding_box();
    let span = hi - lo;
    let sep = MIN_SEED_SEPARATION * domain.diameter();

    // Buckets at least `sep` wide so only the 3x3 neighbourhood matters.
    let cell = math::sqrt(span.x * span.y / n as f64).max(sep);
    let nx = (span.x / cell) as usize + 1;
    let ny = (span.y / cell) as usize + 1;
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); nx * ny];
    let bucket = |p: Point| {
        let cx = (((p.x - lo.x) / cell) as usize).min(nx - 1);
        let cy = (((p.y - lo.y) / cell) as usize).min(ny - 1);
        (cx, cy)
    };

    let budget = 100 * n + 1000;
    let mut out: Vec<Point> = Vec::with_capacity(n);
    let mut attempts = 0;
    while out.len() < n {
        if attempts == budget {
            return Err(Error::SamplingExhausted {
                attempts,
                accepted: out.len(),
            });
        }
        attempts += 1;
        let p = Point::new(
            lo.x + span.x * rng.gen::<f64>(),
            lo.y + span.y * rng.gen::<f64>(),
        );
        if !domain.contains_strictly(p) {
            continue;
        }
        let (cx, cy) = bucket(p);
        let mut clash = false;
        'scan: for y in cy.saturating_sub(1)..=(cy + 1).min(ny - 1) {
            for x in cx.saturating_sub(1)..=(cx + 1).min(nx - 1) {
                for &k in &buckets[y * nx + x] {
                    if out[k as usize].distance(p) < sep {
                        clash = true;
                        break 'scan;
                    }
                }
            }
        }
        if clash {
            continue;
        }
        buckets[cy * nx + cx].push(out.len() as u32);
        out.push(p);
    }
    Ok(out)
}

/// Seeds at the centres of a `k x k` grid over the bounding box of `domain`,
/// keeping those strictly inside.
pub fn grid_seeds(k: usize, domain: &DomainPolygon) -> Vec<Point> {
    let (lo, hi) = domain.bounding_box();
    let mut out = Vec::with_capacity(k * k);
    for row in 0..k {
        for col in 0..k {
            let p = Point::new(
                lo.x + (hi.x - lo.x) * (col as f64 + 0.5) / k as f64,
                lo.y + (hi.y - lo.y) * (row as f64 + 0.5) / k as f64,
            );
            if domain.contains_strictly(p) {
                out.push(p);
            }
        }
    }
    out
}
