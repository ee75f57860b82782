//! Source iteration for the discrete-ordinates system.
//!
//! Each iteration lags the scattering term: every ordinate is swept once
//! with the scattering source built from the previous iterate, so the
//! ordinates of one iteration are independent of each other.

use alloc::vec;
use alloc::vec::Vec;

use super::{coercivity_check, OrdinateSet, ScatteringKernel};
use crate::dg::{
    assemble_direction, assemble_rhs, energy_norm_between, energy_norm_error, l2_distance,
    sweep_solve, BlockOperator, CoefficientField, DgSpace, SolutionField,
};
use crate::geometry::{Point, VoronoiMesh};
use crate::linalg::gemv_add;
use crate::sweep::{Schedule, ScheduleProvider};
use crate::{math, Error, Result};

/// One DG field per ordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct AngularFlux {
    pub fields: Vec<SolutionField>,
    pub iteration: usize,
}

impl AngularFlux {
    pub fn zeros(n_q: usize, space: &DgSpace) -> Self {
        Self {
            fields: vec![SolutionField::zeros(space.n_cells(), space.n_basis()); n_q],
            iteration: 0,
        }
    }
}

/// Runs one closure per ordinate and collects the results in ordinate
/// order. Implementations may run them concurrently.
pub trait OrdinateExecutor {
    fn map_ordinates<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Runs ordinates one after another.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl OrdinateExecutor for Sequential {
    fn map_ordinates<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).map(f).collect()
    }
}

/// Scattering contribution to the right-hand side of ordinate `k`:
/// `int sum_l w_l sigma_s(x, omega_k . omega_l) psi_l v`.
pub fn scattering_source(
    psi: &AngularFlux,
    kernel: &ScatteringKernel,
    ords: &OrdinateSet,
    k: usize,
    space: &DgSpace,
) -> Result<Vec<f64>> {
    let k_mat = kernel.coupling_matrix(ords);
    let weighted = WeightedMass::new(kernel, space);
    let mut out = vec![0.0; space.n_dofs()];
    weighted.apply_coupled(&psi.fields, &k_mat[k * ords.len()..(k + 1) * ords.len()], space, &mut out);
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::QuadratureFailure(k));
    }
    Ok(out)
}

/// Cell mass matrices weighted by the spatial factor of the kernel.
struct WeightedMass {
    blocks: Option<Vec<f64>>,
}

impl WeightedMass {
    fn new(kernel: &ScatteringKernel, space: &DgSpace) -> Self {
        let blocks = match &kernel.spatial {
            None => None,
            Some(CoefficientField::Constant(s)) => Some(
                (0..space.n_cells())
                    .flat_map(|t| space.mass(t).iter().map(move |m| m * s))
                    .collect(),
            ),
            Some(field) => {
                let nb = space.n_basis();
                let mut all = Vec::with_capacity(space.n_cells() * nb * nb);
                for t in 0..space.n_cells() {
                    let q = space.cell_quadrature(t);
                    let mut m = vec![0.0; nb * nb];
                    for (i, (&x, &w)) in q.points.iter().zip(&q.weights).enumerate() {
                        let s = field.at(x);
                        let vals = &q.values[i * nb..(i + 1) * nb];
                        for a in 0..nb {
                            for b in 0..nb {
                                m[a * nb + b] += w * s * vals[a] * vals[b];
                            }
                        }
                    }
                    all.extend_from_slice(&m);
                }
                Some(all)
            }
        };
        Self { blocks }
    }

    fn block<'a>(&'a self, t: usize, space: &'a DgSpace) -> &'a [f64] {
        let nn = space.n_basis() * space.n_basis();
        match &self.blocks {
            Some(b) => &b[t * nn..(t + 1) * nn],
            None => space.mass(t),
        }
    }

    /// `out += M_s sum_l row[l] psi_l`, cell by cell.
    fn apply_coupled(&self, fields: &[SolutionField], row: &[f64], space: &DgSpace, out: &mut [f64]) {
        let nb = space.n_basis();
        let mut combined = vec![0.0; nb];
        for t in 0..space.n_cells() {
            combined.iter_mut().for_each(|c| *c = 0.0);
            for (field, &r) in fields.iter().zip(row) {
                if r != 0.0 {
                    for (c, v) in combined.iter_mut().zip(field.cell(t)) {
                        *c += r * v;
                    }
                }
            }
            gemv_add(self.block(t, space), nb, nb, &combined, &mut out[t * nb..(t + 1) * nb]);
        }
    }
}

/// The discrete-ordinates problem: `omega_k . grad psi_k + sigma_t psi_k =
/// scattering + f_k`, `psi_k = g_k` on the inflow boundary of `omega_k`.
pub struct TransportProblem<'a> {
    pub mesh: &'a VoronoiMesh,
    pub space: &'a DgSpace,
    pub ordinates: &'a OrdinateSet,
    pub sigma_t: &'a CoefficientField,
    pub kernel: &'a ScatteringKernel,
    /// `f(x, k)`.
    pub source: &'a (dyn Fn(Point, usize) -> f64 + Sync),
    /// `g(x, k)`, only evaluated on inflow boundary facets of ordinate `k`.
    pub inflow: &'a (dyn Fn(Point, usize) -> f64 + Sync),
}

/// What to compare iterates against in the log.
#[derive(Clone, Copy)]
pub enum ErrorReference<'a> {
    None,
    /// A converged discrete solution.
    Discrete(&'a AngularFlux),
    /// An exact solution `psi(x, k)`.
    Exact(&'a (dyn Fn(Point, usize) -> f64 + Sync)),
}

#[derive(Clone, Copy)]
pub struct IterationOptions<'a> {
    /// Stop once the weighted update norm drops below this.
    pub tol: f64,
    pub max_iter: usize,
    pub reference: ErrorReference<'a>,
}

impl Default for IterationOptions<'_> {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 500,
            reference: ErrorReference::None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord {
    /// 1-based iteration index.
    pub iteration: usize,
    /// `sum_k w_k ||psi_k^(n) - psi_k^(n-1)||_{L^2}`.
    pub update_norm: f64,
    /// Ratio to the previous update norm.
    pub reduction: Option<f64>,
    /// Bochner energy-norm distance to the reference, when one is given.
    pub error: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct IterationLog {
    pub records: Vec<IterationRecord>,
}

impl IterationLog {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn update_norms(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.update_norm).collect()
    }

    pub fn errors(&self) -> Vec<Option<f64>> {
        self.records.iter().map(|r| r.error).collect()
    }
}

/// Result of [`source_iteration`]; `converged` is false when `max_iter` was
/// hit, in which case `flux` is the last iterate.
#[derive(Clone, Debug)]
pub struct SourceIterationOutcome {
    pub flux: AngularFlux,
    pub log: IterationLog,
    pub converged: bool,
    /// Coercivity constant `sigma_0` found on the assembly quadrature nodes.
    pub sigma0: f64,
}

impl SourceIterationOutcome {
    /// `Err(MaxIterationsExceeded)` unless the run converged.
    pub fn into_result(self) -> Result<(AngularFlux, IterationLog)> {
        if self.converged {
            Ok((self.flux, self.log))
        } else {
            Err(Error::MaxIterationsExceeded {
                iterations: self.log.len(),
                update_norm: self.log.records.last().map_or(f64::NAN, |r| r.update_norm),
            })
        }
    }
}

/// Per-ordinate data reused across iterations.
struct Sweeper {
    op: BlockOperator,
    schedule: Schedule,
    rhs: Vec<f64>,
}

/// Swept source iteration from a zero initial guess.
pub fn source_iteration<P, E>(
    problem: &TransportProblem<'_>,
    options: &IterationOptions<'_>,
    schedules: &P,
    executor: &E,
) -> Result<SourceIterationOutcome>
where
    P: ScheduleProvider + Sync,
    E: OrdinateExecutor,
{
    let TransportProblem {
        mesh,
        space,
        ordinates: ords,
        sigma_t,
        kernel,
        source,
        inflow,
    } = *problem;
    let n_q = ords.len();
    let samples: Vec<Point> = (0..space.n_cells())
        .flat_map(|t| space.cell_quadrature(t).points.iter().copied())
        .collect();
    let sigma0 = coercivity_check(sigma_t, kernel, ords, &samples)?;

    let sweepers: Vec<Result<Sweeper>> = executor.map_ordinates(n_q, |k| {
        let dir = &ords.directions[k];
        Ok(Sweeper {
            op: assemble_direction(mesh, space, dir, sigma_t)?,
            schedule: schedules.schedule(mesh, dir)?,
            rhs: assemble_rhs(mesh, space, dir, &|x| source(x, k), &|x| inflow(x, k))?,
        })
    });
    let sweepers: Vec<Sweeper> = sweepers.into_iter().collect::<Result<_>>()?;

    let coupling = kernel.coupling_matrix(ords);
    let weighted = WeightedMass::new(kernel, space);
    let scatter = !kernel.is_zero();

    let mut psi = AngularFlux::zeros(n_q, space);
    let mut log = IterationLog::default();
    let mut converged = false;
    for n in 1..=options.max_iter {
        let previous = &psi;
        let next: Vec<Result<SolutionField>> = executor.map_ordinates(n_q, |k| {
            let sw = &sweepers[k];
            let mut rhs = sw.rhs.clone();
            if scatter {
                weighted.apply_coupled(&previous.fields, &coupling[k * n_q..(k + 1) * n_q], space, &mut rhs);
            }
            sweep_solve(&sw.op, &sw.schedule, &rhs)
        });
        let next = AngularFlux {
            fields: next.into_iter().collect::<Result<_>>()?,
            iteration: n,
        };
        let update_norm: f64 = (0..n_q)
            .map(|k| ords.weights[k] * l2_distance(&next.fields[k], &previous.fields[k], space))
            .sum();
        if !update_norm.is_finite() {
            return Err(Error::QuadratureFailure(0));
        }
        let error = match options.reference {
            ErrorReference::None => None,
            ErrorReference::Discrete(reference) => {
                let per: Vec<Result<f64>> = executor.map_ordinates(n_q, |k| {
                    energy_norm_between(&next.fields[k], &reference.fields[k], &ords.directions[k], sigma0, mesh, space)
                });
                Some(weighted_sum(ords, per)?)
            }
            ErrorReference::Exact(exact) => {
                let per: Vec<Result<f64>> = executor.map_ordinates(n_q, |k| {
                    energy_norm_error(&next.fields[k], &|x| exact(x, k), &ords.directions[k], sigma0, mesh, space)
                });
                Some(weighted_sum(ords, per)?)
            }
        };
        let reduction = log
            .records
            .last()
            .and_then(|r: &IterationRecord| (r.update_norm > 0.0).then(|| update_norm / r.update_norm));
        log.records.push(IterationRecord {
            iteration: n,
            update_norm,
            reduction,
            error,
        });
        psi = next;
        if update_norm < options.tol {
            converged = true;
            break;
        }
    }
    Ok(SourceIterationOutcome {
        flux: psi,
        log,
        converged,
        sigma0,
    })
}

fn weighted_sum(ords: &OrdinateSet, per: Vec<Result<f64>>) -> Result<f64> {
    let mut total = 0.0;
    for (w, e) in ords.weights.iter().zip(per) {
        total += w * e?;
    }
    Ok(total)
}

/// `sum_k w_k ||psi(., omega_k) - psi_{h,k}||_E`.
pub fn bochner_error(
    psi_h: &AngularFlux,
    exact: &dyn Fn(Point, usize) -> f64,
    ords: &OrdinateSet,
    sigma0: f64,
    mesh: &VoronoiMesh,
    space: &DgSpace,
) -> Result<f64> {
    let per = (0..ords.len())
        .map(|k| energy_norm_error(&psi_h.fields[k], &|x| exact(x, k), &ords.directions[k], sigma0, mesh, space))
        .collect();
    weighted_sum(ords, per)
}

/// Per-ordinate energy errors `||psi(., omega_k) - psi_{h,k}||_E`.
pub fn ordinate_errors(
    psi_h: &AngularFlux,
    exact: &dyn Fn(Point, usize) -> f64,
    ords: &OrdinateSet,
    sigma0: f64,
    mesh: &VoronoiMesh,
    space: &DgSpace,
) -> Result<Vec<f64>> {
    (0..ords.len())
        .map(|k| energy_norm_error(&psi_h.fields[k], &|x| exact(x, k), &ords.directions[k], sigma0, mesh, space))
        .collect()
}

/// `phi_h = sum_k w_k psi_{h,k}`, coefficient-wise.
pub fn scalar_flux(psi_h: &AngularFlux, ords: &OrdinateSet) -> SolutionField {
    let first = &psi_h.fields[0];
    let mut out = SolutionField {
        n_basis: first.n_basis,
        coefficients: vec![0.0; first.coefficients.len()],
    };
    for (field, w) in psi_h.fields.iter().zip(&ords.weights) {
        for (o, c) in out.coefficients.iter_mut().zip(&field.coefficients) {
            *o += w * c;
        }
    }
    out
}

/// Geometric-mean ratio of consecutive update norms over the second half of
/// the run, an estimate of the spectral radius of the iteration.
pub fn reduction_factor(log: &IterationLog) -> Result<f64> {
    let norms = log.update_norms();
    reduction_factor_of(&norms)
}

pub fn reduction_factor_of(norms: &[f64]) -> Result<f64> {
    if norms.len() < 4 {
        return Err(Error::InsufficientData("need at least four iterations"));
    }
    let tail = &norms[norms.len() / 2..];
    let (first, last) = (tail[0], tail[tail.len() - 1]);
    if !(first > 0.0) || !(last > 0.0) {
        return Err(Error::InsufficientData("update norms vanished"));
    }
    let steps = (tail.len() - 1) as f64;
    Ok(math::exp(math::ln(last / first) / steps))
}
