use sweepvor::mesh_io::{mesh_or_solution_from_json, solution_to_json};
use sweepvor::{mesh_from_json, mesh_to_json, read_mesh, write_mesh, MeshIoError};
use sweepvor_core::geometry::{build_voronoi, lloyd_relax, random_seeds, DomainPolygon};
use sweepvor_core::{Point, VoronoiMesh};

fn two_cells() -> VoronoiMesh {
    let sq = DomainPolygon::unit_square();
    build_voronoi(&[Point::new(0.25, 0.5), Point::new(0.75, 0.5)], &sq).unwrap()
}

fn schema_path(err: MeshIoError) -> String {
    match err {
        MeshIoError::Schema { path, .. } => path,
        other => panic!("expected a schema error, got {other}"),
    }
}

#[test]
fn two_cell_round_trip() {
    let mesh = two_cells();
    let back = mesh_from_json(&mesh_to_json(&mesh)).unwrap();
    assert_eq!(back, mesh);
    assert_eq!(back.cells()[1].area, 0.5);
}

#[test]
fn file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let mesh = two_cells();
    write_mesh(&path, &mesh).unwrap();
    assert_eq!(read_mesh(&path).unwrap(), mesh);
    assert!(matches!(read_mesh(&dir.path().join("missing.json")), Err(MeshIoError::Io(_))));
}

#[test]
fn large_random_mesh_is_byte_stable() {
    let sq = DomainPolygon::unit_square();
    let seeds = lloyd_relax(&random_seeds(500, &sq, 9).unwrap(), &sq, 3).unwrap();
    let mesh = build_voronoi(&seeds, &sq).unwrap();
    let first = mesh_to_json(&mesh);
    let back = mesh_from_json(&first).unwrap();
    assert_eq!(back, mesh);
    assert_eq!(mesh_to_json(&back), first);
}

#[test]
fn numbers_carry_seventeen_digits() {
    let sq = DomainPolygon::unit_square();
    let mesh = build_voronoi(&[Point::new(0.1, 0.2), Point::new(0.7, 0.9)], &sq).unwrap();
    let text = mesh_to_json(&mesh);
    assert!(text.contains("1.0000000000000001e-1"));
    assert!(text.contains("2.0000000000000001e-1"));
}

#[test]
fn missing_facets_is_a_schema_error() {
    let mut v: serde_json::Value = serde_json::from_str(&mesh_to_json(&two_cells())).unwrap();
    v.as_object_mut().unwrap().remove("facets");
    let err = mesh_from_json(&v.to_string()).unwrap_err();
    assert!(err.to_string().contains("facets"), "{err}");
}

#[test]
fn schema_errors_name_the_field() {
    let base: serde_json::Value = serde_json::from_str(&mesh_to_json(&two_cells())).unwrap();

    let mut v = base.clone();
    v["cells"][1]["vertices"][0][1] = serde_json::json!("x");
    assert_eq!(schema_path(mesh_from_json(&v.to_string()).unwrap_err()), "cells[1].vertices[0][1]");

    let mut v = base.clone();
    v["cells"][1]["id"] = serde_json::json!(7);
    assert_eq!(schema_path(mesh_from_json(&v.to_string()).unwrap_err()), "cells[1].id");

    let mut v = base.clone();
    v["cells"][0]["seed_index"] = serde_json::json!(5);
    assert_eq!(schema_path(mesh_from_json(&v.to_string()).unwrap_err()), "cells[0].seed_index");

    let mut v = base.clone();
    v["facets"][0]["cells"] = serde_json::json!([0]);
    assert_eq!(schema_path(mesh_from_json(&v.to_string()).unwrap_err()), "facets[0].cells");

    let mut v = base.clone();
    v["facets"][0]["kind"] = serde_json::json!("sideways");
    assert_eq!(schema_path(mesh_from_json(&v.to_string()).unwrap_err()), "facets[0].kind");

    let mut v = base;
    v["domain"] = serde_json::json!([[0, 0], [0, 1], [1, 1], [1, 0]]);
    assert_eq!(schema_path(mesh_from_json(&v.to_string()).unwrap_err()), "domain");

    assert!(matches!(mesh_from_json("{"), Err(MeshIoError::Schema { .. })));
}

#[test]
fn solution_documents() {
    let mesh = two_cells();
    let text = solution_to_json(&mesh, &[1.0, 2.5]);
    let (back, values) = mesh_or_solution_from_json(&text).unwrap();
    assert_eq!(back, mesh);
    assert_eq!(values, Some(vec![1.0, 2.5]));
    let (_, none) = mesh_or_solution_from_json(&mesh_to_json(&mesh)).unwrap();
    assert_eq!(none, None);

    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["cell_values"] = serde_json::json!([1.0]);
    assert_eq!(schema_path(mesh_or_solution_from_json(&v.to_string()).unwrap_err()), "cell_values");
    v["mesh"]["cells"][0]["id"] = serde_json::json!(3);
    assert_eq!(schema_path(mesh_or_solution_from_json(&v.to_string()).unwrap_err()), "mesh.cells[0].id");
}
