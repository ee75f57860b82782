//! JSON mesh format.
//!
//! ```text
//! {"domain": [[x,y],...], "seeds": [[x,y],...],
//!  "cells": [{"id", "seed_index", "vertices": [[x,y],...]}],
//!  "facets": [{"kind": "interior"|"boundary", "cells": [i] or [i,j],
//!              "endpoints": [[x,y],[x,y]]}]}
//! ```
//!
//! Numbers are written with 17 significant digits. Derived quantities are
//! recomputed on read.

use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sweepvor_core::geometry::{DomainPolygon, FacetKind, FacetRecord};
use sweepvor_core::{Error as CoreError, Point, VoronoiMesh};

use crate::formats::SigDigits;

#[derive(Debug, thiserror::Error)]
pub enum MeshIoError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },
}

impl MeshIoError {
    fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        MeshIoError::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeshFile {
    domain: Vec<[f64; 2]>,
    seeds: Vec<[f64; 2]>,
    cells: Vec<CellFile>,
    facets: Vec<FacetFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellFile {
    id: usize,
    seed_index: usize,
    vertices: Vec<[f64; 2]>,
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum FacetKindFile {
    Interior,
    Boundary,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FacetFile {
    kind: FacetKindFile,
    cells: Vec<usize>,
    endpoints: [[f64; 2]; 2],
}

fn pair(p: Point) -> [f64; 2] {
    [p.x, p.y]
}

fn points(v: &[[f64; 2]]) -> Vec<Point> {
    v.iter().map(|&p| Point::from(p)).collect()
}

impl MeshFile {
    fn from_mesh(mesh: &VoronoiMesh) -> Self {
        MeshFile {
            domain: mesh.domain().vertices().iter().copied().map(pair).collect(),
            seeds: mesh.seeds().iter().copied().map(pair).collect(),
            cells: mesh
                .cells()
                .iter()
                .map(|c| CellFile {
                    id: c.id,
                    seed_index: c.seed_index,
                    vertices: c.vertices.iter().copied().map(pair).collect(),
                })
                .collect(),
            facets: mesh
                .facet_records()
                .iter()
                .map(|f| {
                    let (kind, cells) = match f.kind {
                        FacetKind::Interior { i, j } => (FacetKindFile::Interior, vec![i, j]),
                        FacetKind::Boundary { i } => (FacetKindFile::Boundary, vec![i]),
                    };
                    FacetFile {
                        kind,
                        cells,
                        endpoints: [pair(f.endpoints[0]), pair(f.endpoints[1])],
                    }
                })
                .collect(),
        }
    }

    fn into_mesh(self) -> Result<VoronoiMesh, MeshIoError> {
        let domain = DomainPolygon::new(points(&self.domain))
            .map_err(|e| MeshIoError::schema("domain", e.to_string()))?;
        let mut cells = Vec::with_capacity(self.cells.len());
        for (k, c) in self.cells.into_iter().enumerate() {
            if c.id != k {
                return Err(MeshIoError::schema(
                    format!("cells[{k}].id"),
                    format!("expected {k}, found {}", c.id),
                ));
            }
            cells.push((c.seed_index, points(&c.vertices)));
        }
        let mut facets = Vec::with_capacity(self.facets.len());
        for (k, f) in self.facets.into_iter().enumerate() {
            let kind = match (f.kind, f.cells.as_slice()) {
                (FacetKindFile::Interior, &[i, j]) => FacetKind::Interior { i, j },
                (FacetKindFile::Boundary, &[i]) => FacetKind::Boundary { i },
                (FacetKindFile::Interior, _) => {
                    return Err(MeshIoError::schema(format!("facets[{k}].cells"), "interior facet needs two cells"))
                }
                (FacetKindFile::Boundary, _) => {
                    return Err(MeshIoError::schema(format!("facets[{k}].cells"), "boundary facet needs one cell"))
                }
            };
            facets.push(FacetRecord {
                kind,
                endpoints: [f.endpoints[0].into(), f.endpoints[1].into()],
            });
        }
        VoronoiMesh::from_parts(domain, points(&self.seeds), cells, facets).map_err(|e| match e {
            CoreError::InvalidMesh(msg) => {
                let (path, message) = msg.split_once(' ').unwrap_or((msg.as_str(), ""));
                MeshIoError::schema(path, message)
            }
            other => MeshIoError::schema("", other.to_string()),
        })
    }
}

/// Serialises `mesh` to the JSON mesh format.
pub fn mesh_to_json(mesh: &VoronoiMesh) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits);
    MeshFile::from_mesh(mesh)
        .serialize(&mut ser)
        .expect("in-memory serialisation cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// Parses a JSON mesh document.
pub fn mesh_from_json(text: &str) -> Result<VoronoiMesh, MeshIoError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: MeshFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        MeshIoError::schema(path, e.into_inner().to_string())
    })?;
    file.into_mesh()
}

pub fn write_mesh(path: &Path, mesh: &VoronoiMesh) -> Result<(), MeshIoError> {
    fs::write(path, mesh_to_json(mesh))?;
    Ok(())
}

pub fn read_mesh(path: &Path) -> Result<VoronoiMesh, MeshIoError> {
    mesh_from_json(&fs::read_to_string(path)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionFile {
    mesh: MeshFile,
    cell_values: Vec<f64>,
}

/// A mesh with one value per cell, e.g. cell means of a scalar flux.
pub fn solution_to_json(mesh: &VoronoiMesh, cell_values: &[f64]) -> String {
    assert_eq!(cell_values.len(), mesh.n_cells(), "one value per cell");
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits);
    SolutionFile {
        mesh: MeshFile::from_mesh(mesh),
        cell_values: cell_values.to_vec(),
    }
    .serialize(&mut ser)
    .expect("in-memory serialisation cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// Parses either a mesh document or a solution document.
pub fn mesh_or_solution_from_json(text: &str) -> Result<(VoronoiMesh, Option<Vec<f64>>), MeshIoError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| MeshIoError::schema("", e.to_string()))?;
    if value.get("cell_values").is_none() {
        return Ok((mesh_from_json(text)?, None));
    }
    let file: SolutionFile = serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        MeshIoError::schema(path, e.into_inner().to_string())
    })?;
    let values = file.cell_values;
    let mesh = file.mesh.into_mesh().map_err(|e| match e {
        MeshIoError::Schema { path, message } => MeshIoError::schema(format!("mesh.{path}"), message),
        other => other,
    })?;
    if values.len() != mesh.n_cells() {
        return Err(MeshIoError::schema(
            "cell_values",
            format!("expected {} values, found {}", mesh.n_cells(), values.len()),
        ));
    }
    Ok((mesh, Some(values)))
}
