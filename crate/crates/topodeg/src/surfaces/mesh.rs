//! Closed oriented triangle meshes and their combinatorial invariants.
//!
//! A mesh is valid when every directed edge is matched by exactly one
//! reverse copy. That single discipline rules out boundary, non-manifold
//! gluing and inconsistent orientation at once, and it forces 3F = 2E, so
//! the Euler characteristic V - E + F needs no edge list of its own.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::error::{Result, TopoError};
use crate::linalg::{cross3, norm3};
use crate::quadrature::pairwise_sum;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("mesh needs at least 4 faces, got {0}")]
    TooSmall(usize),
    #[error("face {face} refers to vertex {index}, but there are only {vertex_count} vertices")]
    IndexOutOfRange { face: usize, index: usize, vertex_count: usize },
    #[error("face {face} out of range ({face_count} faces)")]
    FaceOutOfRange { face: usize, face_count: usize },
    #[error("face {face} repeats a vertex")]
    RepeatedVertex { face: usize },
    #[error("face {face} is degenerate (area {area:.3e})")]
    DegenerateFace { face: usize, area: f64 },
    #[error("vertex {vertex} belongs to no face")]
    IsolatedVertex { vertex: usize },
    #[error("edge ({a}, {b}) borders {count} faces, so the mesh is not a manifold")]
    NonManifold { a: usize, b: usize, count: usize },
    #[error("edge ({a}, {b}) borders a single face, so the mesh has boundary")]
    Boundary { a: usize, b: usize },
    #[error("edge ({a}, {b}) is traversed twice in the same direction, so the orientation is inconsistent")]
    Orientation { a: usize, b: usize },
}

const MIN_FACE_AREA: f64 = 1e-14;

/// A validated closed oriented triangle mesh in R^3.
#[derive(Debug, Clone)]
pub struct TriMesh {
    vertices: Vec<[f64; 3]>,
    faces: Vec<[usize; 3]>,
}

impl TriMesh {
    pub fn new(vertices: Vec<[f64; 3]>, faces: Vec<[usize; 3]>) -> std::result::Result<Self, MeshError> {
        if faces.len() < 4 {
            return Err(MeshError::TooSmall(faces.len()));
        }
        let mut used = vec![false; vertices.len()];
        for (fi, f) in faces.iter().enumerate() {
            for &i in f {
                if i >= vertices.len() {
                    return Err(MeshError::IndexOutOfRange {
                        face: fi,
                        index: i,
                        vertex_count: vertices.len(),
                    });
                }
                used[i] = true;
            }
            if f[0] == f[1] || f[1] == f[2] || f[2] == f[0] {
                return Err(MeshError::RepeatedVertex { face: fi });
            }
            let area = triangle_area(vertices[f[0]], vertices[f[1]], vertices[f[2]]);
            if !(area.is_finite() && area >= MIN_FACE_AREA) {
                return Err(MeshError::DegenerateFace { face: fi, area });
            }
        }
        if let Some(vertex) = used.iter().position(|u| !u) {
            return Err(MeshError::IsolatedVertex { vertex });
        }

        // directed-edge discipline: per undirected edge, one copy each way
        let mut edges: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
        for f in &faces {
            for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                let key = (a.min(b), a.max(b));
                let slot = edges.entry(key).or_insert((0, 0));
                if a < b {
                    slot.0 += 1;
                } else {
                    slot.1 += 1;
                }
            }
        }
        for (&(a, b), &(fwd, bwd)) in &edges {
            match fwd + bwd {
                2 if fwd == 1 => {}
                1 => return Err(MeshError::Boundary { a, b }),
                2 => return Err(MeshError::Orientation { a, b }),
                count => return Err(MeshError::NonManifold { a, b, count }),
            }
        }
        Ok(TriMesh { vertices, faces })
    }

    pub fn vertices(&self) -> &[[f64; 3]] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// E = 3F / 2, an integer by validity.
    pub fn edge_count(&self) -> usize {
        3 * self.faces.len() / 2
    }

    /// Same connectivity with every vertex pushed through `f`.
    pub fn map_vertices(&self, f: impl Fn([f64; 3]) -> [f64; 3]) -> std::result::Result<Self, MeshError> {
        TriMesh::new(self.vertices.iter().map(|&v| f(v)).collect(), self.faces.clone())
    }
}

fn triangle_area(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    0.5 * norm3(cross3(u, v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct EulerReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub face_count: usize,
    pub chi: i64,
}

pub fn euler_characteristic(mesh: &TriMesh) -> EulerReport {
    let (v, e, f) = (mesh.vertex_count(), mesh.edge_count(), mesh.face_count());
    EulerReport {
        vertex_count: v,
        edge_count: e,
        face_count: f,
        chi: v as i64 - e as i64 + f as i64,
    }
}

/// Total angle defect over 2 pi. Equals the Euler characteristic exactly
/// for straight-edge triangles (each triangle's angles sum to pi), so any
/// visible residual is pure floating point.
pub fn angle_defect_chi(mesh: &TriMesh) -> f64 {
    let mut angle_sum = vec![0.0_f64; mesh.vertex_count()];
    for f in mesh.faces() {
        for corner in 0..3 {
            let p = mesh.vertices()[f[corner]];
            let q = mesh.vertices()[f[(corner + 1) % 3]];
            let r = mesh.vertices()[f[(corner + 2) % 3]];
            let u = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
            let v = [r[0] - p[0], r[1] - p[1], r[2] - p[2]];
            let cosine = crate::linalg::dot3(u, v) / (norm3(u) * norm3(v));
            angle_sum[f[corner]] += cosine.clamp(-1.0, 1.0).acos();
        }
    }
    let tau = 2.0 * std::f64::consts::PI;
    let defects: Vec<f64> = angle_sum.iter().map(|s| tau - s).collect();
    pairwise_sum(&defects) / tau
}

/// Genus of a connected closed oriented surface, (2 - chi) / 2.
pub fn genus(mesh: &TriMesh) -> Result<u32> {
    let chi = euler_characteristic(mesh).chi;
    if chi % 2 != 0 || chi > 2 {
        return Err(TopoError::Geometry(format!(
            "chi = {chi} is not of the form 2 - 2g; the mesh is not a connected closed orientable surface"
        )));
    }
    Ok(((2 - chi) / 2) as u32)
}

/// chi(A # B) = chi(A) + chi(B) - 2 for closed orientable summands.
pub fn connected_sum_chi(chi_a: i64, chi_b: i64) -> Result<i64> {
    for chi in [chi_a, chi_b] {
        if chi % 2 != 0 || chi > 2 {
            return Err(TopoError::Geometry(format!(
                "chi = {chi} does not belong to a closed orientable surface"
            )));
        }
    }
    Ok(chi_a + chi_b - 2)
}

/// Glue two meshes along one face of each: both faces are removed and
/// their vertices identified crosswise (first with second) so the directed
/// edges of the two rims cancel. Identified vertices land on midpoints.
pub fn connected_sum(
    a: &TriMesh,
    b: &TriMesh,
    face_a: usize,
    face_b: usize,
) -> std::result::Result<TriMesh, MeshError> {
    if face_a >= a.face_count() {
        return Err(MeshError::FaceOutOfRange { face: face_a, face_count: a.face_count() });
    }
    if face_b >= b.face_count() {
        return Err(MeshError::FaceOutOfRange { face: face_b, face_count: b.face_count() });
    }
    let fa = a.faces()[face_a];
    let fb = b.faces()[face_b];

    let mut vertices = a.vertices().to_vec();
    // rim identification: fb[0] ~ fa[1], fb[1] ~ fa[0], fb[2] ~ fa[2]
    let pairs = [(fb[0], fa[1]), (fb[1], fa[0]), (fb[2], fa[2])];
    for (bv, av) in pairs {
        let (p, q) = (b.vertices()[bv], vertices[av]);
        vertices[av] = [0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]), 0.5 * (p[2] + q[2])];
    }

    let mut b_index = HashMap::new();
    for (bv, av) in pairs {
        b_index.insert(bv, av);
    }
    for bv in 0..b.vertex_count() {
        b_index.entry(bv).or_insert_with(|| {
            vertices.push(b.vertices()[bv]);
            vertices.len() - 1
        });
    }

    let mut faces = Vec::with_capacity(a.face_count() + b.face_count() - 2);
    for (fi, f) in a.faces().iter().enumerate() {
        if fi != face_a {
            faces.push(*f);
        }
    }
    for (fi, f) in b.faces().iter().enumerate() {
        if fi != face_b {
            faces.push([b_index[&f[0]], b_index[&f[1]], b_index[&f[2]]]);
        }
    }
    TriMesh::new(vertices, faces)
}

/// One-to-four midpoint refinement; flat, so every invariant here is
/// untouched.
pub fn subdivide(mesh: &TriMesh) -> TriMesh {
    let mut vertices = mesh.vertices().to_vec();
    let mut mid_index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut faces = Vec::with_capacity(4 * mesh.face_count());
    for f in mesh.faces() {
        let mut mids = [0; 3];
        for (slot, (i, j)) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])].into_iter().enumerate() {
            let key = (i.min(j), i.max(j));
            mids[slot] = *mid_index.entry(key).or_insert_with(|| {
                let (p, q) = (vertices[i], vertices[j]);
                vertices.push([
                    0.5 * (p[0] + q[0]),
                    0.5 * (p[1] + q[1]),
                    0.5 * (p[2] + q[2]),
                ]);
                vertices.len() - 1
            });
        }
        faces.push([f[0], mids[0], mids[2]]);
        faces.push([mids[0], f[1], mids[1]]);
        faces.push([mids[2], mids[1], f[2]]);
        faces.push([mids[0], mids[1], mids[2]]);
    }
    TriMesh::new(vertices, faces).expect("midpoint refinement preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::corpus;

    fn tetra() -> TriMesh {
        corpus::tetrahedron()
    }

    #[test]
    fn counts_and_chi() {
        let rep = euler_characteristic(&tetra());
        assert_eq!((rep.vertex_count, rep.edge_count, rep.face_count), (4, 6, 4));
        assert_eq!(rep.chi, 2);
        assert_eq!(3 * rep.face_count, 2 * rep.edge_count);
    }

    #[test]
    fn angle_defect_matches_chi_exactly() {
        let raw = angle_defect_chi(&tetra());
        assert!((raw - 2.0).abs() < 1e-12, "raw {raw}");
    }

    #[test]
    fn boundary_is_rejected() {
        let t = tetra();
        let faces = t.faces()[..3].to_vec();
        let err = TriMesh::new(t.vertices().to_vec(), faces).unwrap_err();
        assert!(matches!(err, MeshError::TooSmall(3)));

        // punch a hole in something bigger than the minimum
        let o = corpus::octahedron();
        let faces = o.faces()[1..].to_vec();
        let err = TriMesh::new(o.vertices().to_vec(), faces).unwrap_err();
        assert!(matches!(err, MeshError::Boundary { .. }));
    }

    #[test]
    fn orientation_flip_is_rejected() {
        let t = tetra();
        let mut faces = t.faces().to_vec();
        faces[0].swap(1, 2);
        let err = TriMesh::new(t.vertices().to_vec(), faces).unwrap_err();
        assert!(matches!(err, MeshError::Orientation { .. }));
    }

    #[test]
    fn duplicated_face_is_non_manifold() {
        let t = tetra();
        let mut faces = t.faces().to_vec();
        let mut flipped = faces[0];
        flipped.swap(1, 2);
        faces.push(flipped);
        faces.push(faces[0]);
        let err = TriMesh::new(t.vertices().to_vec(), faces).unwrap_err();
        assert!(matches!(err, MeshError::NonManifold { .. }));
    }

    #[test]
    fn degenerate_and_isolated_are_rejected() {
        let t = tetra();
        let mut vertices = t.vertices().to_vec();
        vertices.push([9.0, 9.0, 9.0]);
        let err = TriMesh::new(vertices, t.faces().to_vec()).unwrap_err();
        assert!(matches!(err, MeshError::IsolatedVertex { vertex: 4 }));

        let mut vertices = t.vertices().to_vec();
        vertices[3] = vertices[2]; // collapses every face touching vertex 3
        let err = TriMesh::new(vertices, t.faces().to_vec()).unwrap_err();
        assert!(matches!(err, MeshError::DegenerateFace { .. }));

        let mut faces = t.faces().to_vec();
        faces[1] = [0, 1, 7];
        let err = TriMesh::new(t.vertices().to_vec(), faces).unwrap_err();
        assert!(matches!(err, MeshError::IndexOutOfRange { index: 7, .. }));
    }

    #[test]
    fn subdivision_preserves_chi_and_defect() {
        let mut mesh = corpus::octahedron();
        for _ in 0..2 {
            mesh = subdivide(&mesh);
            let rep = euler_characteristic(&mesh);
            assert_eq!(rep.chi, 2);
            assert!((angle_defect_chi(&mesh) - 2.0).abs() < 1e-10);
        }
        assert_eq!(mesh.face_count(), 8 * 16);
    }

    #[test]
    fn genus_values() {
        assert_eq!(genus(&tetra()).unwrap(), 0);
        assert_eq!(genus(&corpus::torus_grid(8, 8, 2.0, 1.0)).unwrap(), 1);
    }

    #[test]
    fn connected_sum_of_tori_has_genus_two() {
        let glued = corpus::genus2();
        let rep = euler_characteristic(&glued);
        assert_eq!(rep.chi, -2);
        assert_eq!(genus(&glued).unwrap(), 2);
        assert!((angle_defect_chi(&glued) - -2.0).abs() < 1e-10);
        assert_eq!(connected_sum_chi(0, 0).unwrap(), -2);
    }

    #[test]
    fn connected_sum_chi_rejects_odd_input() {
        assert!(connected_sum_chi(1, 2).is_err());
        assert!(connected_sum_chi(2, 4).is_err());
        assert_eq!(connected_sum_chi(2, 2).unwrap(), 2);
    }
}
