//! Uniform bucket grid over a point set for nearest-neighbour and ring
//! queries.

use alloc::vec;
use alloc::vec::Vec;

use super::Point;
use crate::math;

#[derive(Clone, Debug)]
pub struct SeedGrid {
    origin: Point,
    cell: f64,
    nx: usize,
    ny: usize,
    starts: Vec<u32>,
    items: Vec<u32>,
}

impl SeedGrid {
    /// Buckets `points` inside the box `lo`-`hi`, aiming at roughly one point
    /// per bucket.
    pub fn new(points: &[Point], lo: Point, hi: Point) -> Self {
        let w = (hi.x - lo.x).max(f64::MIN_POSITIVE);
        let h = (hi.y - lo.y).max(f64::MIN_POSITIVE);
        let n = points.len().max(1) as f64;
        let cell = math::sqrt(w * h / n).max(w.max(h) * 1e-7);
        let nx = ((w / cell) as usize + 1).max(1);
        let ny = ((h / cell) as usize + 1).max(1);
        let mut counts = vec![0u32; nx * ny + 1];
        let grid = Self {
            origin: lo,
            cell,
            nx,
            ny,
            starts: Vec::new(),
            items: Vec::new(),
        };
        let buckets: Vec<usize> = points.iter().map(|p| grid.bucket_of(*p)).collect();
        for &b in &buckets {
            counts[b + 1] += 1;
        }
        for k in 1..counts.len() {
            counts[k] += counts[k - 1];
        }
        let mut fill = counts.clone();
        let mut items = vec![0u32; points.len()];
        for (i, &b) in buckets.iter().enumerate() {
            items[fill[b] as usize] = i as u32;
            fill[b] += 1;
        }
        Self {
            starts: counts,
            items,
            ..grid
        }
    }

    pub fn cell_size(&self) -> f64 {
        self.cell
    }

    fn coords_of(&self, p: Point) -> (usize, usize) {
        let fx = libm::floor((p.x - self.origin.x) / self.cell);
        let fy = libm::floor((p.y - self.origin.y) / self.cell);
        let cx = if fx < 0.0 { 0 } else { (fx as usize).min(self.nx - 1) };
        let cy = if fy < 0.0 { 0 } else { (fy as usize).min(self.ny - 1) };
        (cx, cy)
    }

    fn bucket_of(&self, p: Point) -> usize {
        let (cx, cy) = self.coords_of(p);
        cy * self.nx + cx
    }

    fn bucket(&self, cx: usize, cy: usize) -> &[u32] {
        let b = cy * self.nx + cx;
        &self.items[self.starts[b] as usize..self.starts[b + 1] as usize]
    }

    /// Largest ring index that can still contain buckets.
    pub fn max_ring(&self) -> usize {
        self.nx.max(self.ny)
    }

    /// Calls `visit` with every point index stored in the buckets at
    /// Chebyshev distance exactly `ring` from the bucket containing `p`.
    /// Points found in ring `r + 1` or later are at least `r * cell_size()`
    /// away from `p` when `p` lies inside the grid box.
    pub fn for_ring(&self, p: Point, ring: usize, mut visit: impl FnMut(usize)) {
        let (cx, cy) = self.coords_of(p);
        let (cx, cy, r) = (cx as isize, cy as isize, ring as isize);
        let mut take = |x: isize, y: isize| {
            if x >= 0 && y >= 0 && (x as usize) < self.nx && (y as usize) < self.ny {
                for &i in self.bucket(x as usize, y as usize) {
                    visit(i as usize);
                }
            }
        };
        if r == 0 {
            take(cx, cy);
            return;
        }
        for x in cx - r..=cx + r {
            take(x, cy - r);
            take(x, cy + r);
        }
        for y in cy - r + 1..cy + r {
            take(cx - r, y);
            take(cx + r, y);
        }
    }

    /// Index of the point nearest to `p`, smallest index on exact ties.
    pub fn nearest(&self, points: &[Point], p: Point) -> Option<usize> {
        let mut best: Option<(f64, usize)> = None;
        for ring in 0..=self.max_ring() {
            self.for_ring(p, ring, |i| {
                let d = points[i].distance(p);
                match best {
                    Some((bd, bi)) if d > bd || (d == bd && i > bi) => {}
                    _ => best = Some((d, i)),
                }
            });
            if let Some((bd, _)) = best {
                if bd <= ring as f64 * self.cell {
                    break;
                }
            }
        }
        best.map(|(_, i)| i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearest_matches_brute_force() {
        let mut pts = Vec::new();
        let mut s = 12345u64;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..300 {
            pts.push(Point::new(next(), next()));
        }
        let grid = SeedGrid::new(&pts, Point::new(0.0, 0.0), Point::new(1.0, 1.0));
        for _ in 0..500 {
            let q = Point::new(next(), next());
            let brute = (0..pts.len())
                .min_by(|&a, &b| pts[a].distance(q).total_cmp(&pts[b].distance(q)))
                .unwrap();
            assert_eq!(grid.nearest(&pts, q), Some(brute));
        }
    }
}
