//! Triangulated and smooth closed surfaces: Euler characteristics, angle
//! defects, genus, connected sums, OFF I/O and Gauss-Bonnet counts for
//! surfaces of revolution.

pub mod corpus;
mod mesh;
mod off;
mod revolution;

pub use mesh::{
    angle_defect_chi, connected_sum, connected_sum_chi, euler_characteristic, genus, subdivide,
    EulerReport, MeshError, TriMesh,
};
pub use off::{load_off, parse_off, save_off, write_off};
pub use revolution::{gauss_bonnet_revolution, ProfileClosure, SurfaceOfRevolution};
