//! Experiment drivers behind the CLI subcommands. Each returns its data and,
//! when `cfg.out` is set, writes its artifacts there.

use std::collections::BTreeMap;
use std::fs;
use std::hint::black_box;
use std::path::Path;
use std::time::Instant;

use sweepvor_core::bte::{
    bochner_error, coercivity_check, mms_exact, mms_source, ordinate_errors, ordinates, reduction_factor,
    scalar_flux, source_iteration, AngularFlux, ErrorReference, IterationOptions, OrdinateExecutor,
    OrdinateSet, ScatteringKernel, Sequential, SourceIterationOutcome, TransportProblem,
};
use sweepvor_core::dg::{apply_permutation, assemble_direction, cell_means, CoefficientField, DgSpace};
use sweepvor_core::geometry::{build_voronoi, grid_seeds, lloyd_relax, random_seeds};
use sweepvor_core::linalg::Coo;
use sweepvor_core::sweep::{
    directed_dual, kahn_toposort, schedule_centers, verify_schedule, ScheduleProvider, Toposort, VoronoiScheduler,
    CHARACTERISTIC_TOL,
};
use sweepvor_core::{Point, Schedule, VoronoiMesh};

use crate::config::{KernelName, RunConfig};
use crate::formats::{coo_text, config_header, iteration_table, schedule_csv, sig17, Table};
use crate::mesh_io::{mesh_or_solution_from_json, mesh_to_json, solution_to_json};
use crate::parallel::Parallel;
use crate::svg::render_svg;
use crate::verify::{check_mesh, MeshReport};
use crate::RunError;

/// Sample points used by the mesh self-check.
pub const CHECK_SAMPLES: usize = 1000;

fn write_artifact(cfg: &RunConfig, name: &str, contents: &str) -> Result<(), RunError> {
    if let Some(dir) = &cfg.out {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(name), contents)?;
    }
    Ok(())
}

fn header(cfg: &RunConfig) -> String {
    config_header(&cfg.to_json(), &cfg.hash())
}

/// Random or grid seeds, optionally Lloyd-relaxed, and their tessellation.
pub fn generate_mesh(cfg: &RunConfig, n: usize) -> Result<VoronoiMesh, RunError> {
    let domain = cfg.domain_polygon()?;
    let seeds = if cfg.grid {
        let k = (n as f64).sqrt().round() as usize;
        if k * k != n {
            return Err(RunError::Config(format!("grid preset needs a square cell count, got {n}")));
        }
        grid_seeds(k, &domain)
    } else {
        random_seeds(n, &domain, cfg.seed)?
    };
    let seeds = if cfg.lloyd > 0 {
        lloyd_relax(&seeds, &domain, cfg.lloyd)?
    } else {
        seeds
    };
    Ok(build_voronoi(&seeds, &domain)?)
}

pub fn scattering_kernel(cfg: &RunConfig, sigma_s: f64) -> ScatteringKernel {
    match cfg.kernel {
        KernelName::Isotropic => ScatteringKernel::constant(sigma_s),
        KernelName::Linear => {
            let a = cfg.anisotropy;
            ScatteringKernel::angular(move |mu| sigma_s * (1.0 + a * mu))
        }
    }
}

#[derive(Clone, Debug)]
pub struct MeshGenReport {
    pub meshes: Vec<VoronoiMesh>,
    pub checks: Vec<MeshReport>,
}

pub fn mesh_gen(cfg: &RunConfig) -> Result<MeshGenReport, RunError> {
    let mut report = MeshGenReport {
        meshes: Vec::new(),
        checks: Vec::new(),
    };
    for &n in &cfg.n {
        let mesh = generate_mesh(cfg, n)?;
        write_artifact(cfg, &format!("mesh_{n}.json"), &mesh_to_json(&mesh))?;
        if cfg.verify {
            let check = check_mesh(&mesh, CHECK_SAMPLES, cfg.seed.wrapping_add(1));
            if !check.passed() {
                return Err(RunError::Verification(format!("mesh with {n} cells failed its self-check: {check:?}")));
            }
            report.checks.push(check);
        }
        report.meshes.push(mesh);
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchRecord {
    pub n_elements: usize,
    pub n_q: usize,
    /// Seconds spent scheduling all `n_q` directions, minimum over repeats.
    pub time: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    /// Directions checked with the Kahn oracle.
    pub verified_directions: usize,
    pub cycles: usize,
    pub backward_edges: usize,
}

/// Times the projection sort for every `(n, n_q)` pair.
pub fn schedule_bench(cfg: &RunConfig) -> Result<BenchReport, RunError> {
    let domain = cfg.domain_polygon()?;
    let mut report = BenchReport::default();
    for &n in &cfg.n {
        let centres = random_seeds(n, &domain, cfg.seed)?;
        for &n_q in &cfg.nq {
            let dirs = ordinates(n_q).directions;
            let mut best = f64::INFINITY;
            for _ in 0..cfg.repeats {
                let start = Instant::now();
                for d in &dirs {
                    black_box(schedule_centers(black_box(&centres), d)?);
                }
                best = best.min(start.elapsed().as_secs_f64());
            }
            report.records.push(BenchRecord {
                n_elements: n,
                n_q,
                time: best.max(f64::MIN_POSITIVE),
            });
        }
        if cfg.verify {
            let mesh = build_voronoi(&centres, &domain)?;
            let max_q = cfg.nq.iter().copied().max().unwrap_or(1);
            for d in &ordinates(max_q).directions {
                let dual = directed_dual(&mesh, d, CHARACTERISTIC_TOL)?;
                if let Toposort::Cycle(_) = kahn_toposort(&dual) {
                    report.cycles += 1;
                }
                let schedule = schedule_centers(&mesh.centres(), d)?;
                report.backward_edges += verify_schedule(&schedule, &dual)?.backward_edges;
                report.verified_directions += 1;
            }
        }
    }
    let mut by_q: BTreeMap<usize, Table> = BTreeMap::new();
    for r in &report.records {
        by_q.entry(r.n_q)
            .or_insert_with(|| Table::new(["n_elements", "time"]))
            .push(vec![r.n_elements.to_string(), sig17(r.time)]);
    }
    for (q, table) in by_q {
        write_artifact(cfg, &format!("schedule_nq{q}.csv"), &table.to_csv(&header(cfg)))?;
    }
    if report.cycles > 0 || report.backward_edges > 0 {
        return Err(RunError::Verification(format!(
            "{} cyclic directed duals and {} backward edges",
            report.cycles, report.backward_edges
        )));
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpyReport {
    pub n_dofs: usize,
    /// Above-diagonal nonzeros of each `A_k` in mesh numbering.
    pub upper_unswept: Vec<usize>,
    /// Above-diagonal nonzeros of each `P_k A_k P_k^T`.
    pub upper_swept: Vec<usize>,
    /// Nonzero blocks above the block diagonal of each `P_k A_k P_k^T`.
    pub upper_blocks_swept: Vec<usize>,
    /// Above-diagonal nonzeros of `P_k S_{k,l} P_l^T` for `k != l`.
    pub scattering_upper_swept: Vec<((usize, usize), usize)>,
}

fn scattering_block(space: &DgSpace, factor: f64, rank_row: Option<&[usize]>, rank_col: Option<&[usize]>) -> Coo {
    let nb = space.n_basis();
    let mut entries = Vec::new();
    for t in 0..space.n_cells() {
        let (r, c) = (rank_row.map_or(t, |r| r[t]), rank_col.map_or(t, |r| r[t]));
        let m = space.mass(t);
        for a in 0..nb {
            for b in 0..nb {
                entries.push((r * nb + a, c * nb + b, factor * m[a * nb + b]));
            }
        }
    }
    Coo {
        rows: space.n_dofs(),
        cols: space.n_dofs(),
        entries,
    }
    .sorted()
}

/// Dumps the sparsity of the per-direction operators and scattering blocks,
/// in mesh numbering or, with `swept`, in sweep numbering.
pub fn spy(cfg: &RunConfig) -> Result<SpyReport, RunError> {
    let n = cfg.n[0];
    let n_q = cfg.nq[0];
    let mesh = generate_mesh(cfg, n)?;
    let space = DgSpace::new(&mesh, cfg.p)?;
    let ords = ordinates(n_q);
    let sigma_t = CoefficientField::Constant(cfg.sigma_t);
    let coupling = scattering_kernel(cfg, cfg.sigma_s).coupling_matrix(&ords);
    let n_dofs = space.n_dofs();
    let mut report = SpyReport {
        n_dofs,
        ..Default::default()
    };
    let mut schedules: Vec<Schedule> = Vec::with_capacity(n_q);
    let mut system = Vec::new();
    for (k, dir) in ords.directions.iter().enumerate() {
        let op = assemble_direction(&mesh, &space, dir, &sigma_t)?;
        let schedule = VoronoiScheduler.schedule(&mesh, dir)?;
        let unswept = op.to_coo();
        let (permuted, tri) = apply_permutation(&op, &schedule)?;
        let swept = permuted.to_coo();
        report.upper_unswept.push(unswept.strictly_upper_nonzeros());
        report.upper_swept.push(swept.strictly_upper_nonzeros());
        report.upper_blocks_swept.push(tri.upper_blocks);
        let a = if cfg.swept { swept } else { unswept };
        write_artifact(cfg, &format!("A_{k}.coo"), &coo_text(&a, false))?;
        write_artifact(cfg, &format!("A_{k}.pattern.coo"), &coo_text(&a, true))?;
        write_artifact(cfg, &format!("schedule_{k}.csv"), &schedule_csv(&schedule))?;
        system.extend(a.entries.iter().map(|&(r, c, v)| (k * n_dofs + r, k * n_dofs + c, v)));
        schedules.push(schedule);
    }
    for k in 0..n_q {
        for l in 0..n_q {
            let factor = coupling[k * n_q + l];
            let permuted = scattering_block(&space, factor, Some(&schedules[k].rank), Some(&schedules[l].rank));
            if k != l {
                report
                    .scattering_upper_swept
                    .push(((k, l), permuted.strictly_upper_nonzeros()));
            }
            let s = if cfg.swept {
                permuted
            } else {
                scattering_block(&space, factor, None, None)
            };
            write_artifact(cfg, &format!("S_{k}_{l}.pattern.coo"), &coo_text(&s, true))?;
            system.extend(s.entries.iter().map(|&(r, c, v)| (k * n_dofs + r, l * n_dofs + c, -v)));
        }
    }
    let system = Coo {
        rows: n_q * n_dofs,
        cols: n_q * n_dofs,
        entries: system,
    }
    .sorted();
    write_artifact(cfg, "system.pattern.coo", &coo_text(&system, true))?;
    Ok(report)
}

/// Runs the source iteration for the manufactured solution.
pub fn solve_mms(
    cfg: &RunConfig,
    mesh: &VoronoiMesh,
    space: &DgSpace,
    ords: &OrdinateSet,
    sigma_s: f64,
    options: &IterationOptions,
) -> Result<SourceIterationOutcome, RunError> {
    let sigma_t = CoefficientField::Constant(cfg.sigma_t);
    let kernel = scattering_kernel(cfg, sigma_s);
    let source = |x: Point, k: usize| mms_source(x, k, ords, &sigma_t, &kernel);
    let inflow = |x: Point, k: usize| mms_exact(x, ords.vector(k));
    let problem = TransportProblem {
        mesh,
        space,
        ordinates: ords,
        sigma_t: &sigma_t,
        kernel: &kernel,
        source: &source,
        inflow: &inflow,
    };
    fn run<E: OrdinateExecutor>(
        p: &TransportProblem,
        o: &IterationOptions,
        e: &E,
    ) -> sweepvor_core::Result<SourceIterationOutcome> {
        source_iteration(p, o, &VoronoiScheduler, e)
    }
    let outcome = if cfg.parallel {
        run(&problem, options, &Parallel)?
    } else {
        run(&problem, options, &Sequential)?
    };
    Ok(outcome)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fitted_order(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() < 2 || x.len() != y.len() {
        return None;
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let m = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / m, ly.iter().sum::<f64>() / m);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergeRow {
    pub n_elements: usize,
    /// Largest cell diameter.
    pub h: f64,
    pub bochner: f64,
    pub ordinate: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergeReport {
    pub rows: Vec<ConvergeRow>,
    /// Fitted Bochner-error order over the converged rows.
    pub eoc: Option<f64>,
}

impl ConvergeReport {
    pub fn all_converged(&self) -> bool {
        self.rows.iter().all(|r| r.converged)
    }
}

/// Manufactured-solution errors on each mesh of the refinement list.
pub fn converge(cfg: &RunConfig) -> Result<ConvergeReport, RunError> {
    let n_q = cfg.nq[0];
    let ords = ordinates(n_q);
    let options = IterationOptions {
        tol: cfg.tol,
        max_iter: cfg.max_iter,
        reference: ErrorReference::None,
    };
    let mut rows = Vec::new();
    let mut last = None;
    for &n in &cfg.n {
        let mesh = generate_mesh(cfg, n)?;
        let space = DgSpace::new(&mesh, cfg.p)?;
        let out = solve_mms(cfg, &mesh, &space, &ords, cfg.sigma_s, &options)?;
        let exact = |x: Point, k: usize| mms_exact(x, ords.vector(k));
        let ordinate = ordinate_errors(&out.flux, &exact, &ords, out.sigma0, &mesh, &space)?;
        let bochner = bochner_error(&out.flux, &exact, &ords, out.sigma0, &mesh, &space)?;
        rows.push(ConvergeRow {
            n_elements: mesh.n_cells(),
            h: mesh.h_max(),
            bochner,
            ordinate,
            iterations: out.log.len(),
            converged: out.converged,
        });
        last = Some((mesh, space, out.flux));
    }
    let ok: Vec<&ConvergeRow> = rows.iter().filter(|r| r.converged).collect();
    let eoc = fitted_order(
        &ok.iter().map(|r| r.h).collect::<Vec<_>>(),
        &ok.iter().map(|r| r.bochner).collect::<Vec<_>>(),
    );

    let mut table = Table::new(
        ["n_elements", "h", "bochner", "iterations", "converged"]
            .into_iter()
            .map(String::from)
            .chain((0..n_q).map(|k| format!("e_{k}"))),
    );
    for r in &rows {
        let mut row = vec![
            r.n_elements.to_string(),
            sig17(r.h),
            sig17(r.bochner),
            r.iterations.to_string(),
            r.converged.to_string(),
        ];
        row.extend(r.ordinate.iter().map(|e| sig17(*e)));
        table.push(row);
    }
    write_artifact(cfg, "converge.csv", &table.to_csv(&header(cfg)))?;
    if let Some((mesh, space, flux)) = last {
        let phi = scalar_flux(&flux, &ords);
        write_artifact(cfg, "scalar_flux.json", &solution_to_json(&mesh, &cell_means(&phi, &mesh, &space)))?;
    }
    Ok(ConvergeReport { rows, eoc })
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterateRun {
    pub c: f64,
    pub n_elements: usize,
    /// Bochner energy distance to the reference after each iteration.
    pub errors: Vec<f64>,
    pub update_norms: Vec<f64>,
    pub factor: Option<f64>,
    pub converged: bool,
    /// Final update norm of the reference run.
    pub reference_update: f64,
}

/// Budget multiplier and tolerance of the reference run.
pub const REFERENCE_BUDGET: usize = 2;
pub const REFERENCE_TOL: f64 = 1e-15;

/// Source-iteration histories for each scattering ratio and mesh size.
pub fn iterate(cfg: &RunConfig) -> Result<Vec<IterateRun>, RunError> {
    let ords = ordinates(cfg.nq[0]);
    let mut runs = Vec::new();
    let meshes: Vec<(VoronoiMesh, DgSpace)> = cfg
        .n
        .iter()
        .map(|&n| {
            let mesh = generate_mesh(cfg, n)?;
            let space = DgSpace::new(&mesh, cfg.p)?;
            Ok((mesh, space))
        })
        .collect::<Result<_, RunError>>()?;
    for &c in &cfg.c {
        let sigma_s = c * cfg.sigma_t;
        for (mesh, space) in &meshes {
            coercivity_check(
                &CoefficientField::Constant(cfg.sigma_t),
                &scattering_kernel(cfg, sigma_s),
                &ords,
                &[Point::ORIGIN],
            )?;
            let reference = solve_mms(
                cfg,
                mesh,
                space,
                &ords,
                sigma_s,
                &IterationOptions {
                    tol: REFERENCE_TOL,
                    max_iter: REFERENCE_BUDGET * cfg.max_iter,
                    reference: ErrorReference::None,
                },
            )?;
            let reference_flux: &AngularFlux = &reference.flux;
            let out = solve_mms(
                cfg,
                mesh,
                space,
                &ords,
                sigma_s,
                &IterationOptions {
                    tol: cfg.tol,
                    max_iter: cfg.max_iter,
                    reference: ErrorReference::Discrete(reference_flux),
                },
            )?;
            runs.push(IterateRun {
                c,
                n_elements: mesh.n_cells(),
                errors: out.log.errors().into_iter().map(|e| e.unwrap_or(f64::NAN)).collect(),
                update_norms: out.log.update_norms(),
                factor: reduction_factor(&out.log).ok(),
                converged: out.converged,
                reference_update: reference.log.records.last().map_or(f64::NAN, |r| r.update_norm),
            });
        }
    }

    let head = header(cfg);
    let mut summary = Table::new(["c", "n_elements", "factor", "iterations", "converged"]);
    for &c in &cfg.c {
        let per_c: Vec<&IterateRun> = runs.iter().filter(|r| r.c == c).collect();
        let labels: Vec<String> = per_c.iter().map(|r| r.n_elements.to_string()).collect();
        let errors: Vec<Vec<f64>> = per_c.iter().map(|r| r.errors.clone()).collect();
        let updates: Vec<Vec<f64>> = per_c.iter().map(|r| r.update_norms.clone()).collect();
        write_artifact(cfg, &format!("iterate_c{c}.csv"), &iteration_table(&labels, &errors).to_csv(&head))?;
        write_artifact(
            cfg,
            &format!("iterate_update_c{c}.csv"),
            &iteration_table(&labels, &updates).to_csv(&head),
        )?;
        for r in per_c {
            summary.push(vec![
                c.to_string(),
                r.n_elements.to_string(),
                r.factor.map(sig17).unwrap_or_default(),
                r.update_norms.len().to_string(),
                r.converged.to_string(),
            ]);
        }
    }
    write_artifact(cfg, "reduction.csv", &summary.to_csv(&head))?;
    Ok(runs)
}

/// Renders a mesh or solution file to SVG.
pub fn render(input: &Path) -> Result<String, RunError> {
    let text = fs::read_to_string(input)?;
    let (mesh, values) = mesh_or_solution_from_json(&text)?;
    Ok(render_svg(&mesh, values.as_deref()))
}

/// Renders `cfg.input` and writes `<stem>.svg` into `cfg.out`.
pub fn render_cmd(cfg: &RunConfig) -> Result<String, RunError> {
    let input = cfg.input.as_deref().ok_or_else(|| RunError::Config("render needs --input".into()))?;
    let svg = render(input)?;
    let stem = input.file_stem().and_then(|s| s.to_str()).unwrap_or("render");
    write_artifact(cfg, &format!("{stem}.svg"), &svg)?;
    Ok(svg)
}
