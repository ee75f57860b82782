use alloc::vec::Vec;

use super::{Centre, DirectedDual, Direction};
use crate::geometry::VoronoiMesh;
use crate::{Error, Result};

/// Rank of a node that is not part of the schedule.
pub const UNSCHEDULED: usize = usize::MAX;

/// A sweep order: `order[r]` is the cell solved at rank `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct Schedule {
    pub order: Vec<usize>,
    /// `rank[cell]`, or [`UNSCHEDULED`] for cells outside the schedule.
    pub rank: Vec<usize>,
    /// `delta = omega . v` of `order[r]`, non-decreasing in `r`.
    pub keys: Vec<f64>,
    pub direction: Direction,
}

impl Schedule {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// True when every cell of the id space is scheduled.
    pub fn is_complete(&self) -> bool {
        self.order.len() == self.rank.len()
    }
}

fn sorted_schedule<C: Centre>(centers: &[C], ids: Vec<usize>, dir: &Direction) -> Result<Schedule> {
    let omega = dir.coords();
    let mut keyed = Vec::with_capacity(ids.len());
    for id in ids {
        let c = &centers[id];
        if c.dim() != omega.len() {
            return Err(Error::DimensionMismatch {
                expected: omega.len(),
                found: c.dim(),
            });
        }
        keyed.push((c.project(omega), id));
    }
    // Unstable sort on (delta, id) gives the same permutation as a stable
    // argsort on delta.
    keyed.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut rank = alloc::vec![UNSCHEDULED; centers.len()];
    let mut order = Vec::with_capacity(keyed.len());
    let mut keys = Vec::with_capacity(keyed.len());
    for (r, &(delta, id)) in keyed.iter().enumerate() {
        rank[id] = r;
        order.push(id);
        keys.push(delta);
    }
    Ok(Schedule {
        order,
        rank,
        keys,
        direction: dir.clone(),
    })
}

/// Sorts cells by the projection of their Voronoi centre onto `dir`; ties
/// go to the smaller id. Only the centres are used, in any dimension.
pub fn schedule_centers<C: Centre>(centers: &[C], dir: &Direction) -> Result<Schedule> {
    sorted_schedule(centers, (0..centers.len()).collect(), dir)
}

/// Schedule for a subset of cells of a larger tessellation.
pub fn subdomain_schedule<C: Centre>(centers: &[C], subset: &[usize], dir: &Direction) -> Result<Schedule> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut ids = subset.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if let Some(&bad) = ids.iter().find(|&&id| id >= centers.len()) {
        return Err(Error::UnknownId(bad));
    }
    sorted_schedule(centers, ids, dir)
}

/// Outcome of checking a schedule against a dependency graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScheduleReport {
    /// Edges `i -> j` with `rank(i) > rank(j)`.
    pub backward_edges: usize,
    pub first_violation: Option<(usize, usize)>,
}

impl ScheduleReport {
    pub fn is_valid(&self) -> bool {
        self.backward_edges == 0
    }
}

pub fn verify_schedule(schedule: &Schedule, dual: &DirectedDual) -> Result<ScheduleReport> {
    if schedule.rank.len() != dual.n_nodes || schedule.order.len() != dual.nodes.len() {
        return Err(Error::NodeSetMismatch);
    }
    if dual.nodes.iter().any(|&n| schedule.rank[n] == UNSCHEDULED) {
        return Err(Error::NodeSetMismatch);
    }
    let mut report = ScheduleReport {
        backward_edges: 0,
        first_violation: None,
    };
    for &(from, to) in &dual.edges {
        if schedule.rank[from] > schedule.rank[to] {
            report.backward_edges += 1;
            report.first_violation.get_or_insert((from, to));
        }
    }
    Ok(report)
}

/// Source of per-direction sweep orders for a mesh.
pub trait ScheduleProvider {
    fn schedule(&self, mesh: &VoronoiMesh, dir: &Direction) -> Result<Schedule>;
}

/// The projection sort on Voronoi centres.
#[derive(Clone, Copy, Debug, Default)]
pub struct VoronoiScheduler;

impl ScheduleProvider for VoronoiScheduler {
    fn schedule(&self, mesh: &VoronoiMesh, dir: &Direction) -> Result<Schedule> {
        schedule_centers(&mesh.centres(), dir)
    }
}

impl<F> ScheduleProvider for F
where
    F: Fn(&VoronoiMesh, &Direction) -> Result<Schedule>,
{
    fn schedule(&self, mesh: &VoronoiMesh, dir: &Direction) -> Result<Schedule> {
        self(mesh, dir)
    }
}
