//! Resolved run configuration shared by all subcommands.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use sweepvor_core::geometry::DomainPolygon;
use sweepvor_core::Point;

use crate::RunError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    MeshGen,
    ScheduleBench,
    Spy,
    Converge,
    Iterate,
    Render,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum KernelName {
    /// `Sigma_s(x, mu) = sigma_s`.
    Isotropic,
    /// `Sigma_s(x, mu) = sigma_s (1 + anisotropy mu)`.
    Linear,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    /// Counter-clockwise vertices of the convex domain.
    pub domain: Vec<[f64; 2]>,
    /// Cell counts, one run per entry.
    pub n: Vec<usize>,
    /// Ordinate counts, one run per entry.
    pub nq: Vec<usize>,
    pub p: usize,
    pub sigma_t: f64,
    pub sigma_s: f64,
    pub kernel: KernelName,
    pub anisotropy: f64,
    /// Scattering ratios; `sigma_s = c sigma_t` per run.
    pub c: Vec<f64>,
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    pub lloyd: usize,
    /// Seeds on a square grid instead of random points.
    pub grid: bool,
    /// Timing repetitions; the minimum is reported.
    pub repeats: usize,
    pub verify: bool,
    pub swept: bool,
    pub parallel: bool,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig::defaults_for(Command::MeshGen)
    }
}

impl RunConfig {
    pub fn defaults_for(command: Command) -> Self {
        let mut cfg = RunConfig {
            command,
            domain: vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
            n: vec![100],
            nq: vec![16],
            p: 0,
            sigma_t: 1.0,
            sigma_s: 0.7,
            kernel: KernelName::Isotropic,
            anisotropy: 0.5,
            c: vec![0.7, 0.95, 0.999],
            tol: 1e-10,
            max_iter: 500,
            seed: 1,
            lloyd: 0,
            grid: false,
            repeats: 3,
            verify: false,
            swept: false,
            parallel: false,
            input: None,
            out: None,
        };
        match command {
            Command::MeshGen | Command::Render => {}
            Command::ScheduleBench => {
                cfg.n = vec![1_000, 10_000, 100_000, 1_000_000];
                cfg.nq = vec![4, 16, 64];
            }
            Command::Spy => {
                cfg.nq = vec![4];
            }
            Command::Converge => {
                cfg.n = vec![25, 50, 100, 200];
                cfg.lloyd = 20;
            }
            Command::Iterate => {
                cfg.n = vec![200];
                cfg.nq = vec![64];
                cfg.lloyd = 20;
            }
        }
        cfg
    }

    /// Defaults for `command`, overlaid with the keys of a JSON object.
    pub fn from_json_overlay(command: Command, overlay: &str) -> Result<Self, RunError> {
        let overlay: serde_json::Value =
            serde_json::from_str(overlay).map_err(|e| RunError::Config(format!("config file: {e}")))?;
        let serde_json::Value::Object(overlay) = overlay else {
            return Err(RunError::Config("config file must hold a JSON object".into()));
        };
        let mut base = serde_json::to_value(RunConfig::defaults_for(command)).expect("config serialises");
        let map = base.as_object_mut().expect("config is an object");
        for (k, v) in overlay {
            if k == "command" {
                continue;
            }
            map.insert(k, v);
        }
        serde_path_to_error::deserialize(base)
            .map_err(|e| RunError::Config(format!("config file at `{}`: {}", e.path(), e.inner())))
    }

    pub fn domain_polygon(&self) -> Result<DomainPolygon, RunError> {
        DomainPolygon::new(self.domain.iter().map(|&p| Point::from(p)).collect())
            .map_err(|e| RunError::Config(format!("domain: {e}")))
    }

    /// Rejects values no subcommand can run with.
    pub fn validate(&self) -> Result<(), RunError> {
        let fail = |m: &str| Err(RunError::Config(m.to_string()));
        self.domain_polygon()?;
        if self.n.is_empty() || self.n.contains(&0) {
            return fail("n must list positive cell counts");
        }
        if self.nq.is_empty() || self.nq.contains(&0) {
            return fail("nq must list positive ordinate counts");
        }
        if !(self.sigma_t.is_finite() && self.sigma_t > 0.0) {
            return fail("sigma-t must be positive");
        }
        if !(self.sigma_s.is_finite() && self.sigma_s >= 0.0) {
            return fail("sigma-s must be non-negative");
        }
        if !self.anisotropy.is_finite() || self.anisotropy.abs() > 1.0 {
            return fail("anisotropy must lie in [-1, 1]");
        }
        if self.c.iter().any(|c| !(0.0..1.0).contains(c)) {
            return fail("scattering ratios c must lie in [0, 1)");
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return fail("tol must be positive");
        }
        if self.max_iter == 0 {
            return fail("max-iter must be positive");
        }
        if self.repeats == 0 {
            return fail("repeats must be positive");
        }
        match self.command {
            Command::Spy if self.n.iter().any(|&n| n > 1000) => fail("spy supports at most 1000 cells"),
            Command::Spy if self.nq.iter().any(|&q| q > 16) => fail("spy supports at most 16 ordinates"),
            Command::Iterate if self.c.is_empty() => fail("iterate needs at least one c"),
            Command::Render if self.input.is_none() => fail("render needs --input"),
            _ => Ok(()),
        }
    }

    /// Canonical JSON of the resolved configuration.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serialises")
    }

    /// SHA-256 of [`RunConfig::to_json`], hex encoded.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }
}
