//! ASCII OFF reader and writer for triangle meshes.
//!
//! Accepted dialect: an `OFF` header (counts may follow on the same line),
//! a `V F E` counts line (E is ignored), V vertex lines of three floats,
//! then F face lines of `3 i j k`. `#` comments and blank lines may appear
//! anywhere; extra tokens on vertex and face lines (colors) are ignored.
//! Every parse error carries its 1-based line number.

use std::fs;
use std::path::Path;

use super::mesh::{MeshError, TriMesh};

pub fn parse_off(text: &str) -> Result<TriMesh, MeshError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (line, header) = lines
        .next()
        .ok_or_else(|| MeshError::Parse { line: 1, message: "empty file".into() })?;
    let mut header_tokens = header.split_whitespace();
    if header_tokens.next() != Some("OFF") {
        return Err(MeshError::Parse { line, message: format!("expected OFF header, got {header:?}") });
    }
    let leftover: Vec<&str> = header_tokens.collect();
    let (counts_line, counts) = if leftover.is_empty() {
        lines
            .next()
            .ok_or_else(|| MeshError::Parse { line, message: "missing counts line".into() })?
    } else {
        (line, header.trim_start_matches("OFF").trim())
    };
    let counts: Vec<usize> = counts
        .split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| MeshError::Parse {
                line: counts_line,
                message: format!("bad count {t:?}"),
            })
        })
        .collect::<Result<_, _>>()?;
    if counts.len() != 3 {
        return Err(MeshError::Parse {
            line: counts_line,
            message: format!("counts line needs 3 integers, got {}", counts.len()),
        });
    }
    let (n_vertices, n_faces) = (counts[0], counts[1]);

    let mut vertices = Vec::with_capacity(n_vertices);
    for _ in 0..n_vertices {
        let (line, text) = lines.next().ok_or_else(|| MeshError::Parse {
            line: counts_line,
            message: format!("file ends before {n_vertices} vertices are read"),
        })?;
        let fields: Vec<f64> = text
            .split_whitespace()
            .take(3)
            .map(|t| {
                t.parse().map_err(|_| MeshError::Parse {
                    line,
                    message: format!("bad coordinate {t:?}"),
                })
            })
            .collect::<Result<_, _>>()?;
        if fields.len() != 3 {
            return Err(MeshError::Parse {
                line,
                message: format!("vertex needs 3 coordinates, got {}", fields.len()),
            });
        }
        vertices.push([fields[0], fields[1], fields[2]]);
    }

    let mut faces = Vec::with_capacity(n_faces);
    for _ in 0..n_faces {
        let (line, text) = lines.next().ok_or_else(|| MeshError::Parse {
            line: counts_line,
            message: format!("file ends before {n_faces} faces are read"),
        })?;
        let fields: Vec<usize> = text
            .split_whitespace()
            .take(4)
            .map(|t| {
                t.parse().map_err(|_| MeshError::Parse {
                    line,
                    message: format!("bad face index {t:?}"),
                })
            })
            .collect::<Result<_, _>>()?;
        if fields.first() != Some(&3) {
            return Err(MeshError::Parse {
                line,
                message: format!(
                    "only triangles are supported; face starts with {:?}",
                    fields.first()
                ),
            });
        }
        if fields.len() != 4 {
            return Err(MeshError::Parse {
                line,
                message: format!("triangle needs 3 indices, got {}", fields.len() - 1),
            });
        }
        faces.push([fields[1], fields[2], fields[3]]);
    }

    if let Some((line, _)) = lines.next() {
        return Err(MeshError::Parse { line, message: "unexpected content after the last face".into() });
    }
    TriMesh::new(vertices, faces)
}

pub fn load_off(path: &Path) -> Result<TriMesh, MeshError> {
    parse_off(&fs::read_to_string(path)?)
}

pub fn write_off(mesh: &TriMesh) -> String {
    let mut out = String::from("OFF\n");
    out.push_str(&format!(
        "{} {} {}\n",
        mesh.vertex_count(),
        mesh.face_count(),
        mesh.edge_count()
    ));
    for v in mesh.vertices() {
        out.push_str(&format!("{} {} {}\n", v[0], v[1], v[2]));
    }
    for f in mesh.faces() {
        out.push_str(&format!("3 {} {} {}\n", f[0], f[1], f[2]));
    }
    out
}

pub fn save_off(mesh: &TriMesh, path: &Path) -> Result<(), MeshError> {
    Ok(fs::write(path, write_off(mesh))?)
}
