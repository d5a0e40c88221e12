//! Indices of vector fields with respect to closed curves and surfaces.
//! The index only counts the zeros inside, so it is blind to the size and
//! shape of the contour, and it splits into one integer per zero.

use topodeg::field_index::{
    index_additivity_report_2d, index_at_point_2d, index_wrt_surface_2d, index_wrt_surface_3d,
    Surface2, Surface3, VectorField2, VectorField3,
};
use topodeg::{PeriodicGrid1D, SphereGrid2};

fn main() -> topodeg::Result<()> {
    let grid = PeriodicGrid1D::standard(512)?;

    // z^n as a plane field has one zero of index n at the origin; every
    // contour around it reports the same integer.
    let square = VectorField2::new(|[x, y]| [x * x - y * y, 2.0 * x * y]);
    for surface in [
        Surface2::Circle { center: [0.0, 0.0], radius: 0.5 },
        Surface2::Circle { center: [0.0, 0.0], radius: 3.0 },
        Surface2::Ellipse { center: [0.0, 0.0], semi_axes: [2.0, 0.4] },
    ] {
        let snap = index_wrt_surface_2d(&square, &surface, &grid, 1e-3)?;
        println!("z^2 field, contour {}: index {} (raw {:.6})", label(&surface), snap.snapped, snap.raw);
    }

    // A saddle has index -1; measured directly from the winding of the
    // field on a small circle around the zero.
    let saddle = index_at_point_2d(|x, _| x, |_, y| -y, [0.0, 0.0], 0.5, 256, 1e-3)?;
    println!("\nsaddle (x, -y) at the origin: index {}", saddle.snapped);

    // Two zeros of opposite index, one regular and one saddle-like. The
    // big circle sees their sum; the report splits it back into +1 and -1.
    let dipole = VectorField2::new(|[x, y]| [x * x + y * y - 1.0, 2.0 * y])
        .with_zeros(vec![[1.0, 0.0], [-1.0, 0.0]]);
    let outer = Surface2::Circle { center: [0.0, 0.0], radius: 3.0 };
    let report = index_additivity_report_2d(&dipole, &outer, &[[1.0, 0.0], [-1.0, 0.0]], 0.25, &grid, 1e-3)?;
    let parts: Vec<i64> = report.per_point.iter().map(|r| r.snapped).collect();
    println!(
        "dipole: outer index {}, per-zero {:?}, sum {} (balanced: {})",
        report.outer.snapped,
        parts,
        report.sum,
        report.balanced()
    );

    // The hedgehog points radially outward; any surface around the origin
    // reports index 1, even a squashed one.
    let hedgehog = VectorField3::with_jacobian(
        |x| x,
        |_| [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    );
    let sgrid = SphereGrid2::new(32, 64)?;
    for surface in [
        Surface3::Sphere { center: [0.0, 0.0, 0.0], radius: 1.0 },
        Surface3::Ellipsoid { center: [0.2, 0.0, -0.1], semi_axes: [2.0, 1.0, 0.5] },
    ] {
        let snap = index_wrt_surface_3d(&hedgehog, &surface, &sgrid, 1e-3)?;
        println!(
            "hedgehog, {}: index {} (residual {:.1e})",
            label3(&surface),
            snap.snapped,
            snap.residual
        );
    }
    Ok(())
}

fn label(s: &Surface2) -> String {
    match s {
        Surface2::Circle { radius, .. } => format!("circle r={radius}"),
        Surface2::Ellipse { semi_axes, .. } => format!("ellipse {}x{}", semi_axes[0], semi_axes[1]),
        Surface2::Curve(_) => "curve".into(),
    }
}

fn label3(s: &Surface3) -> String {
    match s {
        Surface3::Sphere { radius, .. } => format!("sphere r={radius}"),
        Surface3::Ellipsoid { semi_axes, .. } => {
            format!("ellipsoid {}x{}x{}", semi_axes[0], semi_axes[1], semi_axes[2])
        }
        Surface3::Patch(_) => "patch".into(),
    }
}
