//! Built-in meshes: the Platonic trio, refined spheres, a torus grid and
//! a genus-2 surface glued from two tori. All faces wind counterclockwise
//! seen from outside.

use super::mesh::{connected_sum, subdivide, TriMesh};

pub fn tetrahedron() -> TriMesh {
    let s = 1.0 / 3.0_f64.sqrt();
    let vertices = vec![
        [s, s, s],
        [s, -s, -s],
        [-s, s, -s],
        [-s, -s, s],
    ];
    let faces = vec![[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]];
    TriMesh::new(vertices, faces).expect("tetrahedron is valid")
}

pub fn octahedron() -> TriMesh {
    let vertices = vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let faces = vec![
        [0, 2, 4],
        [2, 1, 4],
        [1, 3, 4],
        [3, 0, 4],
        [2, 0, 5],
        [1, 2, 5],
        [3, 1, 5],
        [0, 3, 5],
    ];
    TriMesh::new(vertices, faces).expect("octahedron is valid")
}

pub fn icosahedron() -> TriMesh {
    let p = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let n = (1.0 + p * p).sqrt();
    let (a, b) = (1.0 / n, p / n);
    let vertices = vec![
        [-a, b, 0.0],
        [a, b, 0.0],
        [-a, -b, 0.0],
        [a, -b, 0.0],
        [0.0, -a, b],
        [0.0, a, b],
        [0.0, -a, -b],
        [0.0, a, -b],
        [b, 0.0, -a],
        [b, 0.0, a],
        [-b, 0.0, -a],
        [-b, 0.0, a],
    ];
    let faces = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    TriMesh::new(vertices, faces).expect("icosahedron is valid")
}

/// Icosahedron refined by midpoint subdivision `level` times, every vertex
/// projected back to the unit sphere.
pub fn icosphere(level: u32) -> TriMesh {
    assert!(level <= 5, "icosphere level {level} too deep (20 * 4^level faces)");
    let mut mesh = icosahedron();
    for _ in 0..level {
        mesh = subdivide(&mesh);
        mesh = mesh
            .map_vertices(|v| {
                let n = crate::linalg::norm3(v);
                [v[0] / n, v[1] / n, v[2] / n]
            })
            .expect("projection keeps the sphere valid");
    }
    mesh
}

/// An nu x nv quad grid on the torus of major radius `big_r` and tube
/// radius `small_r`, each quad split into two triangles.
pub fn torus_grid(nu: usize, nv: usize, big_r: f64, small_r: f64) -> TriMesh {
    assert!(nu >= 3 && nv >= 3, "torus grid needs at least 3 x 3 quads");
    assert!(big_r > small_r && small_r > 0.0, "need R > r > 0, got R = {big_r}, r = {small_r}");
    let tau = 2.0 * std::f64::consts::PI;
    let mut vertices = Vec::with_capacity(nu * nv);
    for i in 0..nu {
        let theta = tau * i as f64 / nu as f64;
        for j in 0..nv {
            let psi = tau * j as f64 / nv as f64;
            let ring = big_r + small_r * psi.cos();
            vertices.push([ring * theta.cos(), ring * theta.sin(), small_r * psi.sin()]);
        }
    }
    let at = |i: usize, j: usize| (i % nu) * nv + (j % nv);
    let mut faces = Vec::with_capacity(2 * nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            let (v00, v10) = (at(i, j), at(i + 1, j));
            let (v11, v01) = (at(i + 1, j + 1), at(i, j + 1));
            faces.push([v00, v10, v11]);
            faces.push([v00, v11, v01]);
        }
    }
    TriMesh::new(vertices, faces).expect("torus grid is valid")
}

/// Two 8 x 8 tori joined by a connected sum: the second sits two tube
/// diameters above the first and they are glued along the facing faces.
pub fn genus2() -> TriMesh {
    let a = torus_grid(8, 8, 2.0, 1.0);
    let b = a
        .map_vertices(|v| [v[0], v[1], v[2] + 4.0])
        .expect("translation keeps the torus valid");
    let face_a = extreme_face(&a, 1.0);
    let face_b = extreme_face(&b, -1.0);
    connected_sum(&a, &b, face_a, face_b).expect("facing tori glue cleanly")
}

/// Index of the face whose centroid is furthest along `sign * z`.
fn extreme_face(mesh: &TriMesh, sign: f64) -> usize {
    let mut best = (f64::NEG_INFINITY, 0);
    for (fi, f) in mesh.faces().iter().enumerate() {
        let z = f.iter().map(|&v| mesh.vertices()[v][2]).sum::<f64>() / 3.0;
        if sign * z > best.0 {
            best = (sign * z, fi);
        }
    }
    best.1
}

/// The corpus by name, as the command line spells it.
pub fn by_name(name: &str) -> Option<TriMesh> {
    match name {
        "tetrahedron" => Some(tetrahedron()),
        "octahedron" => Some(octahedron()),
        "icosahedron" => Some(icosahedron()),
        "icosphere2" => Some(icosphere(2)),
        "torus" => Some(torus_grid(8, 8, 2.0, 1.0)),
        "genus2" => Some(genus2()),
        _ => None,
    }
}

pub const CORPUS_NAMES: [&str; 6] =
    ["tetrahedron", "octahedron", "icosahedron", "icosphere2", "torus", "genus2"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::mesh::{angle_defect_chi, euler_characteristic, genus};

    #[test]
    fn corpus_counts() {
        let cases: [(&str, usize, usize, i64); 6] = [
            ("tetrahedron", 4, 4, 2),
            ("octahedron", 6, 8, 2),
            ("icosahedron", 12, 20, 2),
            ("icosphere2", 162, 320, 2),
            ("torus", 64, 128, 0),
            ("genus2", 125, 254, -2),
        ];
        for (name, v, f, chi) in cases {
            let mesh = by_name(name).unwrap();
            let rep = euler_characteristic(&mesh);
            assert_eq!((rep.vertex_count, rep.face_count, rep.chi), (v, f, chi), "{name}");
            assert_eq!(3 * rep.face_count, 2 * rep.edge_count, "{name}");
        }
        assert!(by_name("klein").is_none());
    }

    #[test]
    fn corpus_defects_match_chi() {
        for name in CORPUS_NAMES {
            let mesh = by_name(name).unwrap();
            let chi = euler_characteristic(&mesh).chi as f64;
            let raw = angle_defect_chi(&mesh);
            assert!((raw - chi).abs() < 1e-9, "{name}: {raw} vs {chi}");
        }
    }

    #[test]
    fn corpus_genera() {
        for (name, g) in [("octahedron", 0), ("icosphere2", 0), ("torus", 1), ("genus2", 2)] {
            assert_eq!(genus(&by_name(name).unwrap()).unwrap(), g, "{name}");
        }
    }

    #[test]
    fn outward_orientation() {
        // solid angle of every face from an interior point is positive
        for name in ["tetrahedron", "octahedron", "icosahedron", "icosphere2"] {
            let mesh = by_name(name).unwrap();
            for (fi, f) in mesh.faces().iter().enumerate() {
                let [a, b, c] =
                    [mesh.vertices()[f[0]], mesh.vertices()[f[1]], mesh.vertices()[f[2]]];
                assert!(crate::linalg::det3(a, b, c) > 0.0, "{name} face {fi}");
            }
        }
    }

    #[test]
    fn icosphere_vertices_sit_on_the_sphere() {
        let mesh = icosphere(2);
        for v in mesh.vertices() {
            assert!((crate::linalg::norm3(*v) - 1.0).abs() < 1e-12);
        }
    }
}
