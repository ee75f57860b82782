//! Clipped Voronoi tessellations of convex domains.
//!
//! Each cell is built by clipping the domain polygon against the bisector
//! half-planes of nearby seeds, visiting seeds ring by ring on a bucket grid
//! and stopping once no unvisited seed can reach the cell (twice the cell
//! radius). Facets are identified through the seed labels carried by the
//! clipped edges, so both sides of an interior facet map to one record.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::grid::SeedGrid;
use super::polygon::{self, DomainPolygon, EdgeLabel, LabeledPolygon};
use super::Point;
use crate::{Error, Result};

/// Seeds closer than this (relative to the domain diameter) are duplicates.
pub const DUPLICATE_SEED_TOL: f64 = 1e-9;
/// Facets shorter than this (relative to the domain diameter) are dropped.
pub const MIN_FACET_LENGTH: f64 = 1e-12;
/// Endpoint agreement required between the two sides of an interior facet.
pub const FACET_MATCH_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub id: usize,
    pub seed_index: usize,
    /// The Voronoi centre.
    pub seed: Point,
    /// Counter-clockwise polygon.
    pub vertices: Vec<Point>,
    pub area: f64,
    pub centroid: Point,
    /// Largest vertex-to-vertex distance, `h_T`.
    pub diameter: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FacetKind {
    /// Shared by cells `i` and `j`; the normal points from `i` into `j`.
    Interior { i: usize, j: usize },
    /// On the domain boundary; the normal points out of cell `i`.
    Boundary { i: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    pub kind: FacetKind,
    pub endpoints: [Point; 2],
    pub length: f64,
    pub normal: Point,
    pub midpoint: Point,
}

impl Facet {
    /// Unit normal pointing out of `cell`, which must be incident.
    pub fn outward_normal(&self, cell: usize) -> Point {
        match self.kind {
            FacetKind::Interior { j, .. } if j == cell => -self.normal,
            _ => self.normal,
        }
    }

    /// The cell on the other side, if any.
    pub fn neighbour(&self, cell: usize) -> Option<usize> {
        match self.kind {
            FacetKind::Interior { i, j } if i == cell => Some(j),
            FacetKind::Interior { i, .. } => Some(i),
            FacetKind::Boundary { .. } => None,
        }
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self.kind, FacetKind::Boundary { .. })
    }
}

/// Raw facet data as stored on disk; derived quantities are recomputed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FacetRecord {
    pub kind: FacetKind,
    pub endpoints: [Point; 2],
}

/// A Voronoi tessellation `(cells, facets)` of a convex domain.
#[derive(Clone, Debug)]
pub struct VoronoiMesh {
    domain: DomainPolygon,
    seeds: Vec<Point>,
    cells: Vec<Cell>,
    facets: Vec<Facet>,
    adjacency: Vec<Vec<(usize, usize)>>,
    cell_facets: Vec<Vec<usize>>,
    grid: SeedGrid,
}

impl PartialEq for VoronoiMesh {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain
            && self.seeds == other.seeds
            && self.cells == other.cells
            && self.facets == other.facets
    }
}

impl VoronoiMesh {
    /// Assembles a mesh from stored parts, recomputing all derived
    /// quantities. `cells[k] = (seed_index, vertices)` defines cell `k`.
    pub fn from_parts(
        domain: DomainPolygon,
        seeds: Vec<Point>,
        cells: Vec<(usize, Vec<Point>)>,
        facets: Vec<FacetRecord>,
    ) -> Result<Self> {
        let cells: Vec<Cell> = cells
            .into_iter()
            .enumerate()
            .map(|(id, (seed_index, vertices))| {
                let seed = *seeds.get(seed_index).ok_or_else(|| {
                    Error::InvalidMesh(format!("cells[{id}].seed_index {seed_index} out of range"))
                })?;
                if vertices.len() < 3 {
                    return Err(Error::InvalidMesh(format!(
                        "cells[{id}].vertices has fewer than three points"
                    )));
                }
                let area = polygon::signed_area(&vertices);
                if !(area > 0.0) {
                    return Err(Error::InvalidMesh(format!(
                        "cells[{id}].vertices is not counter-clockwise"
                    )));
                }
                Ok(Cell {
                    id,
                    seed_index,
                    seed,
                    centroid: polygon::centroid(&vertices),
                    diameter: polygon::diameter(&vertices),
                    vertices,
                    area,
                })
            })
            .collect::<Result<_>>()?;
        let n = cells.len();
        let check = |k: usize, c: usize| {
            if c < n {
                Ok(())
            } else {
                Err(Error::InvalidMesh(format!("facets[{k}].cells references cell {c}")))
            }
        };
        let mut adjacency = alloc::vec![Vec::new(); n];
        let mut cell_facets = alloc::vec![Vec::new(); n];
        let mut out = Vec::with_capacity(facets.len());
        for (k, rec) in facets.into_iter().enumerate() {
            let [a, b] = rec.endpoints;
            let length = a.distance(b);
            let midpoint = a.midpoint(b);
            let normal = match rec.kind {
                FacetKind::Interior { i, j } => {
                    check(k, i)?;
                    check(k, j)?;
                    if i == j {
                        return Err(Error::InvalidMesh(format!("facets[{k}] joins cell {i} to itself")));
                    }
                    adjacency[i].push((j, k));
                    adjacency[j].push((i, k));
                    cell_facets[i].push(k);
                    cell_facets[j].push(k);
                    (cells[j].seed - cells[i].seed).normalized()
                }
                FacetKind::Boundary { i } => {
                    check(k, i)?;
                    cell_facets[i].push(k);
                    let t = b - a;
                    let nrm = Point::new(t.y, -t.x).normalized();
                    if nrm.dot(midpoint - cells[i].centroid) < 0.0 {
                        -nrm
                    } else {
                        nrm
                    }
                }
            };
            out.push(Facet {
                kind: rec.kind,
                endpoints: rec.endpoints,
                length,
                normal,
                midpoint,
            });
        }
        let (lo, hi) = domain.bounding_box();
        let centres: Vec<Point> = cells.iter().map(|c| c.seed).collect();
        let grid = SeedGrid::new(&centres, lo, hi);
        Ok(Self {
            domain,
            seeds,
            cells,
            facets: out,
            adjacency,
            cell_facets,
            grid,
        })
    }

    pub fn domain(&self) -> &DomainPolygon {
        &self.domain
    }

    pub fn seeds(&self) -> &[Point] {
        &self.seeds
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// `(neighbour, facet)` pairs of cell `id`.
    pub fn adjacency(&self, id: usize) -> &[(usize, usize)] {
        &self.adjacency[id]
    }

    /// All facet ids (interior and boundary) incident to cell `id`.
    pub fn cell_facets(&self, id: usize) -> &[usize] {
        &self.cell_facets[id]
    }

    /// Voronoi centres in cell order.
    pub fn centres(&self) -> Vec<Point> {
        self.cells.iter().map(|c| c.seed).collect()
    }

    /// `max_T h_T`.
    pub fn h_max(&self) -> f64 {
        self.cells.iter().map(|c| c.diameter).fold(0.0, f64::max)
    }

    /// Cell whose centre is nearest to `p`, which by construction is the
    /// cell containing `p`.
    pub fn locate(&self, p: Point) -> Result<usize> {
        if !p.is_finite() || !self.domain.contains(p) {
            return Err(Error::PointOutsideDomain(p));
        }
        let centres: Vec<Point>;
        let pts = if self.cells.iter().enumerate().all(|(k, c)| c.seed_index == k) {
            &self.seeds[..]
        } else {
            centres = self.centres();
            &centres[..]
        };
        self.grid
            .nearest(pts, p)
            .ok_or(Error::PointOutsideDomain(p))
    }

    /// The stored representation of every facet.
    pub fn facet_records(&self) -> Vec<FacetRecord> {
        self.facets
            .iter()
            .map(|f| FacetRecord {
                kind: f.kind,
                endpoints: f.endpoints,
            })
            .collect()
    }
}

/// Builds the Voronoi tessellation of `domain` generated by `seeds`.
pub fn build_voronoi(seeds: &[Point], domain: &DomainPolygon) -> Result<VoronoiMesh> {
    if seeds.is_empty() {
        return Err(Error::NoSeeds);
    }
    for (index, &point) in seeds.iter().enumerate() {
        if !point.is_finite() || !domain.contains_strictly(point) {
            return Err(Error::SeedOutsideDomain { index, point });
        }
    }
    let diam = domain.diameter();
    let dup_tol = DUPLICATE_SEED_TOL * diam;
    let on_line = 1e-13 * diam;
    let min_len = MIN_FACET_LENGTH * diam;

    let (lo, hi) = domain.bounding_box();
    let grid = SeedGrid::new(seeds, lo, hi);
    let mut polys = Vec::with_capacity(seeds.len());
    let mut ring_members = Vec::new();
    for (i, &vi) in seeds.iter().enumerate() {
        let mut poly = LabeledPolygon::from_domain(domain);
        for ring in 0..=grid.max_ring() {
            if ring > 0 && (ring - 1) as f64 * grid.cell_size() >= 2.0 * poly.max_distance_from(vi) {
                break;
            }
            ring_members.clear();
            grid.for_ring(vi, ring, |j| {
                if j != i {
                    ring_members.push((seeds[j].distance(vi), j));
                }
            });
            ring_members.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            for &(dist, j) in &ring_members {
                if dist <= dup_tol {
                    return Err(Error::DuplicateSeeds {
                        first: i.min(j),
                        second: i.max(j),
                    });
                }
                let normal = (seeds[j] - vi) * (1.0 / dist);
                poly.clip(vi.midpoint(seeds[j]), normal, EdgeLabel::Seed(j), on_line);
            }
        }
        poly.cleanup(min_len);
        polys.push(poly);
    }

    // Pair up the two sides of every interior facet.
    let mut interior: BTreeMap<(usize, usize), [Option<[Point; 2]>; 2]> = BTreeMap::new();
    let mut boundary = Vec::new();
    for (i, poly) in polys.iter().enumerate() {
        let n = poly.vertices.len();
        for k in 0..n {
            let a = poly.vertices[k];
            let b = poly.vertices[(k + 1) % n];
            if a.distance(b) < min_len {
                continue;
            }
            match poly.labels[k] {
                EdgeLabel::Domain(_) => boundary.push(FacetRecord {
                    kind: FacetKind::Boundary { i },
                    endpoints: [a, b],
                }),
                EdgeLabel::Seed(j) => {
                    let key = (i.min(j), i.max(j));
                    let slot = if i < j { 0 } else { 1 };
                    interior.entry(key).or_insert([None, None])[slot] = Some([a, b]);
                }
            }
        }
    }
    let mut facets = Vec::with_capacity(interior.len() + boundary.len());
    for ((i, j), sides) in interior {
        let endpoints = match sides {
            [Some(ab), Some(ba)] => {
                let swapped_ok = ab[0].distance(ba[1]) <= FACET_MATCH_TOL * diam
                    && ab[1].distance(ba[0]) <= FACET_MATCH_TOL * diam;
                if !swapped_ok {
                    return Err(Error::InvalidMesh(format!(
                        "facet between cells {i} and {j} disagrees across sides"
                    )));
                }
                ab
            }
            [Some(ab), None] => ab,
            [None, Some([b, a])] => [a, b],
            [None, None] => unreachable!(),
        };
        facets.push(FacetRecord {
            kind: FacetKind::Interior { i, j },
            endpoints,
        });
    }
    facets.extend(boundary);

    let cells = polys
        .into_iter()
        .enumerate()
        .map(|(i, p)| (i, p.vertices))
        .collect();
    VoronoiMesh::from_parts(domain.clone(), seeds.to_vec(), cells, facets)
}
