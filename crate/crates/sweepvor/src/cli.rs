//! `sweepvor <subcommand> [flags]`.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;
use sweepvor_core::Error as CoreError;

use crate::config::{Command, KernelName, RunConfig};
use crate::experiments;
use crate::RunError;

#[derive(Debug, Parser)]
#[command(name = "sweepvor", version, about = "Sweep-scheduled DG transport on Voronoi meshes")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// JSON file with configuration keys; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Cell counts (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// Ordinate counts (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub nq: Option<Vec<usize>>,
    /// Polynomial degree.
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub sigma_t: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub sigma_s: Option<f64>,
    #[arg(long, value_enum)]
    pub kernel: Option<KernelName>,
    #[arg(long, allow_negative_numbers = true)]
    pub anisotropy: Option<f64>,
    /// Scattering ratios (comma separated).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub c: Option<Vec<f64>>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// RNG seed for seed placement.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Lloyd relaxation steps.
    #[arg(long)]
    pub lloyd: Option<usize>,
    /// Place seeds on a square grid.
    #[arg(long)]
    pub grid: bool,
    /// Timing repetitions.
    #[arg(long)]
    pub repeats: Option<usize>,
    /// Run internal verification passes.
    #[arg(long)]
    pub verify: bool,
    /// Dump matrices in sweep numbering.
    #[arg(long)]
    pub swept: bool,
    /// Process ordinates concurrently.
    #[arg(long)]
    pub parallel: bool,
    /// Input mesh or solution file (render).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Cli {
    /// Defaults, then the config file, then flags.
    pub fn resolve(&self) -> Result<RunConfig, RunError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| RunError::Config(format!("cannot read {}: {e}", path.display())))?;
                RunConfig::from_json_overlay(self.command, &text)?
            }
            None => RunConfig::defaults_for(self.command),
        };
        macro_rules! set {
            ($($f:ident),*) => { $( if let Some(v) = &self.$f { cfg.$f = v.clone(); } )* };
        }
        set!(n, nq, p, sigma_t, sigma_s, kernel, anisotropy, c, tol, max_iter, seed, lloyd, repeats);
        cfg.grid |= self.grid;
        cfg.verify |= self.verify;
        cfg.swept |= self.swept;
        cfg.parallel |= self.parallel;
        if self.input.is_some() {
            cfg.input = self.input.clone();
        }
        if self.out.is_some() {
            cfg.out = self.out.clone();
        }
        if cfg.out.is_none() {
            cfg.out = Some(PathBuf::from("."));
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Runs a resolved configuration, printing a summary to `w`.
pub fn execute(cfg: &RunConfig, w: &mut dyn Write) -> Result<(), RunError> {
    writeln!(w, "# config_sha256={}", cfg.hash())?;
    match cfg.command {
        Command::MeshGen => {
            let report = experiments::mesh_gen(cfg)?;
            for (i, mesh) in report.meshes.iter().enumerate() {
                writeln!(w, "mesh: {} cells, h_max {:.6}", mesh.n_cells(), mesh.h_max())?;
                if let Some(c) = report.checks.get(i) {
                    writeln!(
                        w,
                        "  check: area {:.3e}, normals {:.3e}, nearest-seed violations {}/{}, round trip {}",
                        c.area_rel_error, c.max_normal_error, c.nearest_seed_violations, c.samples, c.roundtrip_stable
                    )?;
                }
            }
        }
        Command::ScheduleBench => {
            let report = experiments::schedule_bench(cfg)?;
            writeln!(w, "n_q,n_elements,time")?;
            for r in &report.records {
                writeln!(w, "{},{},{:.6e}", r.n_q, r.n_elements, r.time)?;
            }
            if cfg.verify {
                writeln!(
                    w,
                    "verified {} directions: {} cycles, {} backward edges",
                    report.verified_directions, report.cycles, report.backward_edges
                )?;
            }
        }
        Command::Spy => {
            let report = experiments::spy(cfg)?;
            writeln!(w, "ordinate,upper_unswept,upper_swept,upper_blocks_swept")?;
            for k in 0..report.upper_swept.len() {
                writeln!(
                    w,
                    "{k},{},{},{}",
                    report.upper_unswept[k], report.upper_swept[k], report.upper_blocks_swept[k]
                )?;
            }
            let s_upper: usize = report.scattering_upper_swept.iter().map(|(_, c)| c).sum();
            writeln!(w, "scattering blocks, above-diagonal nonzeros after permutation: {s_upper}")?;
        }
        Command::Converge => {
            let report = experiments::converge(cfg)?;
            writeln!(w, "n_elements,h,bochner,iterations,converged")?;
            for r in &report.rows {
                writeln!(w, "{},{:.6e},{:.6e},{},{}", r.n_elements, r.h, r.bochner, r.iterations, r.converged)?;
            }
            match report.eoc {
                Some(e) => writeln!(w, "eoc {e:.4}")?,
                None => writeln!(w, "eoc unavailable")?,
            }
            if let Some(r) = report.rows.iter().find(|r| !r.converged) {
                return Err(CoreError::MaxIterationsExceeded {
                    iterations: r.iterations,
                    update_norm: f64::NAN,
                }
                .into());
            }
        }
        Command::Iterate => {
            let runs = experiments::iterate(cfg)?;
            writeln!(w, "c,n_elements,factor,iterations,converged")?;
            for r in &runs {
                let factor = r.factor.map_or_else(|| "-".to_string(), |f| format!("{f:.4}"));
                writeln!(w, "{},{},{},{},{}", r.c, r.n_elements, factor, r.update_norms.len(), r.converged)?;
            }
            if let Some(r) = runs.iter().find(|r| !r.converged) {
                return Err(CoreError::MaxIterationsExceeded {
                    iterations: r.update_norms.len(),
                    update_norm: r.update_norms.last().copied().unwrap_or(f64::NAN),
                }
                .into());
            }
        }
        Command::Render => {
            let svg = experiments::render_cmd(cfg)?;
            writeln!(w, "rendered {} cells", svg.matches("<polygon").count())?;
        }
    }
    Ok(())
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match cli.resolve().and_then(|cfg| execute(&cfg, out)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
