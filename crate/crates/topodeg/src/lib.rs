//! Integer invariants of maps, vector fields and closed surfaces, computed
//! two ways at once: quadrature of the defining integral, and an independent
//! combinatorial or sign-count oracle. Quadrature never lands exactly on an
//! integer, so results carry the raw value, the snapped integer and the
//! residual; a residual past the tolerance is an error, not a rounding.
//!
//! - [`degree`]: winding numbers of circle maps, degrees of sphere maps.
//! - [`field_index`]: indices of vector field zeros along enclosing curves
//!   and surfaces, with additivity reports.
//! - [`forms`]: the unit-total solid-angle form and its pullbacks.
//! - [`gauge`]: charges of boundary gauge transformations and Higgs
//!   direction fields, a ball-integrated second Chern number.
//! - [`surfaces`]: triangle meshes (Euler characteristic, angle defect,
//!   genus, connected sums, OFF files) and surfaces of revolution.
//! - [`poincare_hopf`]: zeros of tangent fields on the sphere and torus,
//!   indices summed against the Euler characteristic.
//! - [`registry`] and [`expr`]: the `name:arg` spellings and the little
//!   expression language the command line uses to name maps and fields.

pub mod cli;
pub mod degree;
pub mod error;
pub mod expr;
pub mod field_index;
pub mod forms;
pub mod gauge;
pub mod linalg;
pub mod poincare_hopf;
pub mod quadrature;
pub mod registry;
pub mod surfaces;

pub use error::{Result, TopoError};
pub use quadrature::{snap_integer, IntegerSnapResult, PeriodicGrid1D, SphereGrid2, SphereGrid3};
