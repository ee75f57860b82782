use std::fs;
use std::path::Path;
use std::process::{Command as Process, Stdio};

use sweepvor::cli::main_with_args;
use sweepvor::config::{Command, RunConfig};
use sweepvor::experiments::{self, converge, iterate, mesh_gen, schedule_bench, spy};
use sweepvor::formats::data_lines;
use sweepvor::read_mesh;
use sweepvor::verify::check_mesh;

fn run(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with_args(std::iter::once("sweepvor").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn out_arg(dir: &Path) -> String {
    dir.to_str().unwrap().to_string()
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_sweepvor");
    let dir = tempfile::tempdir().unwrap();
    let status = |args: &[&str]| Process::new(bin).args(args).stderr(Stdio::null()).status().unwrap().code();
    assert_eq!(status(&["mesh-gen", "--n", "4", "--grid", "--out", &out_arg(dir.path())]), Some(0));
    assert_eq!(status(&["mesh-gen", "--n", "5", "--grid", "--out", &out_arg(dir.path())]), Some(2));
    assert_eq!(status(&["frobnicate"]), Some(2));
    assert_eq!(status(&["converge", "--sigma-s", "1.2", "--out", &out_arg(dir.path())]), Some(3));
}

#[test]
fn grid_preset_mesh() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run(&["mesh-gen", "--n", "4", "--grid", "--out", &out_arg(dir.path())]);
    assert_eq!(code, 0);
    assert!(out.contains("4 cells"));
    assert_eq!(read_mesh(&dir.path().join("mesh_4.json")).unwrap().n_cells(), 4);
}

#[test]
fn mesh_gen_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let (code, ..) = run(&["mesh-gen", "--n", "300", "--seed", "17", "--lloyd", "2", "--out", &out_arg(d.path())]);
        assert_eq!(code, 0);
    }
    let read = |d: &tempfile::TempDir| fs::read(d.path().join("mesh_300.json")).unwrap();
    assert_eq!(read(&a), read(&b));
    let (code, ..) = run(&["mesh-gen", "--n", "300", "--seed", "18", "--out", &out_arg(b.path())]);
    assert_eq!(code, 0);
    assert_ne!(read(&a), read(&b));
}

#[test]
fn thousand_cell_mesh_passes_self_check() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, err) = run(&["mesh-gen", "--n", "1000", "--verify", "--out", &out_arg(dir.path())]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("violations 0/1000"), "{out}");
    let back = read_mesh(&dir.path().join("mesh_1000.json")).unwrap();
    assert!(check_mesh(&back, 200, 5).passed());
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("cfg.json");
    fs::write(&cfg_path, r#"{"n": [9], "grid": true, "seed": 3}"#).unwrap();
    let (code, ..) = run(&["mesh-gen", "--config", cfg_path.to_str().unwrap(), "--out", &out_arg(dir.path())]);
    assert_eq!(code, 0);
    assert_eq!(read_mesh(&dir.path().join("mesh_9.json")).unwrap().n_cells(), 9);
    let (code, ..) = run(&[
        "mesh-gen",
        "--config",
        cfg_path.to_str().unwrap(),
        "--n",
        "16",
        "--out",
        &out_arg(dir.path()),
    ]);
    assert_eq!(code, 0);
    assert_eq!(read_mesh(&dir.path().join("mesh_16.json")).unwrap().n_cells(), 16);

    fs::write(&cfg_path, r#"{"bogus": 1}"#).unwrap();
    let (code, _, err) = run(&["mesh-gen", "--config", cfg_path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("bogus"), "{err}");
    fs::write(&cfg_path, r#"{"tol": "small"}"#).unwrap();
    let (code, _, err) = run(&["converge", "--config", cfg_path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("tol"), "{err}");
}

#[test]
fn config_validation() {
    for args in [
        &["spy", "--n", "2000"][..],
        &["spy", "--nq", "32"],
        &["iterate", "--c", "1.0"],
        &["converge", "--tol", "-1"],
        &["converge", "--n", "0"],
        &["render"],
    ] {
        let (code, ..) = run(args);
        assert_eq!(code, 2, "{args:?}");
    }
}

#[test]
fn config_hash_tracks_content() {
    let a = RunConfig::defaults_for(Command::Converge);
    let mut b = a.clone();
    assert_eq!(a.hash(), b.hash());
    b.seed += 1;
    assert_ne!(a.hash(), b.hash());
    assert_eq!(a.hash().len(), 64);
}

#[test]
fn bench_csv_layout_and_verification() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::defaults_for(Command::ScheduleBench);
    cfg.n = vec![100, 400];
    cfg.nq = vec![2, 8];
    cfg.verify = true;
    cfg.out = Some(dir.path().to_path_buf());
    let report = schedule_bench(&cfg).unwrap();
    assert_eq!(report.records.len(), 4);
    assert!(report.records.iter().all(|r| r.time > 0.0));
    assert_eq!(report.verified_directions, 16);
    assert_eq!((report.cycles, report.backward_edges), (0, 0));
    let csv = fs::read_to_string(dir.path().join("schedule_nq8.csv")).unwrap();
    assert!(csv.starts_with(&format!("# config_sha256={}\n", cfg.hash())));
    let rows = data_lines(&csv);
    assert_eq!(rows[0], "n_elements,time");
    assert!(rows[1].starts_with("100,") && rows[2].starts_with("400,"));
}

#[test]
fn spy_counts_and_dumps() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, err) = run(&["spy", "--n", "100", "--nq", "4", "--swept", "--out", &out_arg(dir.path())]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("ordinate,upper_unswept"));
    for k in 0..4 {
        assert!(dir.path().join(format!("A_{k}.pattern.coo")).exists());
        assert!(dir.path().join(format!("schedule_{k}.csv")).exists());
    }
    assert!(dir.path().join("S_1_2.pattern.coo").exists());
    assert!(dir.path().join("system.pattern.coo").exists());

    let mut cfg = RunConfig::defaults_for(Command::Spy);
    cfg.n = vec![100];
    cfg.nq = vec![4];
    let report = spy(&cfg).unwrap();
    assert!(report.upper_swept.iter().all(|&u| u == 0));
    assert!(report.upper_unswept.iter().all(|&u| u > 0));
    assert!(report.scattering_upper_swept.iter().all(|&(_, u)| u > 0));
    cfg.p = 1;
    let report = spy(&cfg).unwrap();
    assert!(report.upper_blocks_swept.iter().all(|&u| u == 0));
    assert!(report.upper_swept.iter().all(|&u| u > 0));
}

#[test]
fn swept_dump_is_lower_triangular() {
    let dir = tempfile::tempdir().unwrap();
    let (code, ..) = run(&["spy", "--n", "60", "--nq", "2", "--swept", "--out", &out_arg(dir.path())]);
    assert_eq!(code, 0);
    let entries = sweepvor::formats::parse_coo(&fs::read_to_string(dir.path().join("A_1.coo")).unwrap()).unwrap();
    assert!(entries.iter().all(|&(r, c, _)| c <= r));
    let (code, ..) = run(&["spy", "--n", "60", "--nq", "2", "--out", &out_arg(dir.path())]);
    assert_eq!(code, 0);
    let entries = sweepvor::formats::parse_coo(&fs::read_to_string(dir.path().join("A_1.coo")).unwrap()).unwrap();
    assert!(entries.iter().any(|&(r, c, _)| c > r));
}

fn small_converge() -> RunConfig {
    let mut cfg = RunConfig::defaults_for(Command::Converge);
    cfg.n = vec![25, 50, 100];
    cfg.nq = vec![8];
    cfg
}

#[test]
fn converge_reruns_are_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let mut cfg = small_converge();
    cfg.out = Some(a.path().to_path_buf());
    let ra = converge(&cfg).unwrap();
    cfg.out = Some(b.path().to_path_buf());
    cfg.parallel = true;
    let rb = converge(&cfg).unwrap();
    assert_eq!(ra, rb);
    let read = |d: &tempfile::TempDir| fs::read_to_string(d.path().join("converge.csv")).unwrap();
    let (ca, cb) = (read(&a), read(&b));
    assert_eq!(data_lines(&ca), data_lines(&cb));
    assert!(ra.all_converged());
}

#[test]
fn converge_without_scattering_and_with_p1() {
    let mut cfg = small_converge();
    cfg.sigma_s = 0.0;
    let r = converge(&cfg).unwrap();
    assert!(r.rows.iter().all(|row| row.iterations == 2));
    assert!(r.rows.windows(2).all(|w| w[1].bochner < w[0].bochner));

    let p0 = converge(&small_converge()).unwrap();
    let mut cfg = small_converge();
    cfg.p = 1;
    let p1 = converge(&cfg).unwrap();
    for (a, b) in p0.rows.iter().zip(&p1.rows) {
        assert_eq!(a.h, b.h);
        assert!(b.bochner < a.bochner);
    }
}

#[test]
fn iterate_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::defaults_for(Command::Iterate);
    cfg.n = vec![60];
    cfg.nq = vec![8];
    cfg.c = vec![0.0, 0.7];
    cfg.out = Some(dir.path().to_path_buf());
    let runs = iterate(&cfg).unwrap();
    assert_eq!(runs.len(), 2);
    assert_eq!(runs[0].update_norms.len(), 2);
    assert_eq!(runs[0].factor, None);
    let f = runs[1].factor.unwrap();
    assert!(f > 0.0 && f <= 0.7);
    let errors = &runs[1].errors;
    assert!(errors.windows(2).skip(1).all(|w| w[1] <= w[0]));
    let csv = fs::read_to_string(dir.path().join("iterate_c0.7.csv")).unwrap();
    assert_eq!(data_lines(&csv)[0], "iterates,60");
    let summary = fs::read_to_string(dir.path().join("reduction.csv")).unwrap();
    assert_eq!(data_lines(&summary)[0], "c,n_elements,factor,iterations,converged");
    assert!(data_lines(&summary)[1].starts_with("0,60,,2,true"));
}

#[test]
fn render_files() {
    let dir = tempfile::tempdir().unwrap();
    let (code, ..) = run(&["mesh-gen", "--n", "4", "--grid", "--out", &out_arg(dir.path())]);
    assert_eq!(code, 0);
    let input = dir.path().join("mesh_4.json");
    let (code, out, _) = run(&["render", "--input", input.to_str().unwrap(), "--out", &out_arg(dir.path())]);
    assert_eq!(code, 0);
    assert!(out.contains("rendered 4 cells"));
    let svg = fs::read_to_string(dir.path().join("mesh_4.svg")).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 4);
    assert_eq!(svg, experiments::render(&input).unwrap());

    let (code, _, err) = run(&["render", "--input", dir.path().join("nope.json").to_str().unwrap()]);
    assert_eq!(code, 1, "{err}");
    fs::write(dir.path().join("bad.json"), "{\"domain\": 3}").unwrap();
    let (code, ..) = run(&["render", "--input", dir.path().join("bad.json").to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn mms_scalar_flux_peaks_at_origin_corner() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::defaults_for(Command::Converge);
    cfg.n = vec![500];
    cfg.lloyd = 5;
    cfg.out = Some(dir.path().to_path_buf());
    converge(&cfg).unwrap();
    let text = fs::read_to_string(dir.path().join("scalar_flux.json")).unwrap();
    let (mesh, values) = sweepvor::mesh_io::mesh_or_solution_from_json(&text).unwrap();
    let values = values.unwrap();
    let hottest = (0..values.len()).max_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap();
    let corner = mesh.locate(sweepvor_core::Point::new(1e-9, 1e-9)).unwrap();
    let c = mesh.cell(hottest).centroid;
    assert!(hottest == corner || c.norm() < 0.1, "hottest cell at {c:?}");
    let svg = experiments::render(&dir.path().join("scalar_flux.json")).unwrap();
    assert_eq!(svg.matches("<polygon").count(), 500);
    assert!(svg.contains(&sweepvor::svg::colour(1.0)));
}

#[test]
fn mesh_gen_api() {
    let mut cfg = RunConfig::defaults_for(Command::MeshGen);
    cfg.n = vec![20, 40];
    cfg.verify = true;
    let report = mesh_gen(&cfg).unwrap();
    assert_eq!(report.meshes.len(), 2);
    assert!(report.checks.iter().all(|c| c.passed()));
}
