//! Sweep ordering for Voronoi meshes.
//!
//! For a Voronoi tessellation the interior normal between cells `i` and `j`
//! is parallel to `v_j - v_i`, so `omega . nu_ij > 0` exactly when
//! `omega . v_i < omega . v_j`. Sorting the centres by their projection onto
//! `omega` is therefore a topological order of the directed dual, for every
//! direction. [`kahn_toposort`] and [`verify_schedule`] check this
//! independently of the sort.

mod direction;
mod dual;
mod kahn;
mod schedule;

pub use direction::{Centre, Direction, UNIT_TOL};
pub use dual::{directed_dual, DirectedDual, CHARACTERISTIC_TOL};
pub use kahn::{kahn_toposort, CycleWitness, Toposort};
pub use schedule::{
    schedule_centers, subdomain_schedule, verify_schedule, Schedule, ScheduleProvider,
    ScheduleReport, VoronoiScheduler, UNSCHEDULED,
};

#[cfg(test)]
mod tests;
