//! Degrees of maps from the 2-sphere to itself. The degree is the signed
//! number of times the image wraps the target sphere, computed here as the
//! normalized area of the image counted with multiplicity.

use topodeg::degree::{degree_sphere2, sphere2_degree_along_homotopy, SphereMap2};
use topodeg::SphereGrid2;

fn main() -> topodeg::Result<()> {
    let grid = SphereGrid2::new(32, 64)?;

    // The antipodal map on S^2 reverses orientation, so its degree is -1.
    let antipodal = SphereMap2::new(
        |theta, _| std::f64::consts::PI - theta,
        |_, phi| phi + std::f64::consts::PI,
    )?;
    let snap = degree_sphere2(&antipodal, &grid, 1e-3)?;
    println!("antipodal map: degree {} (raw {:.6})", snap.snapped, snap.raw);

    // Winding k times in longitude wraps the sphere k times.
    for k in [-3_i64, -1, 1, 2, 4] {
        let kf = k as f64;
        let map = SphereMap2::with_partials(
            move |theta, _| theta,
            move |_, phi| kf * phi,
            move |_, _| [[1.0, 0.0], [0.0, kf]],
        )?;
        let snap = degree_sphere2(&map, &grid, 1e-3)?;
        println!(
            "longitude wrap k = {k:2}: degree {:2} (residual {:.1e})",
            snap.snapped, snap.residual
        );
    }

    // Squashing the sphere toward a point is a homotopy of the identity;
    // every stage still has degree 1 even as the area integrand distorts.
    let stages: Vec<f64> = (0..=4).map(|i| i as f64 * 0.25).collect();
    let degrees = sphere2_degree_along_homotopy(
        |t| {
            SphereMap2::new(
                move |theta, _| {
                    let squash = theta + t * theta.sin() * (1.0 - theta / std::f64::consts::PI);
                    squash.clamp(0.0, std::f64::consts::PI)
                },
                |_, phi| phi,
            )
        },
        &stages,
        &grid,
        1e-2,
    )?;
    println!("\nsquashing the identity:");
    for (t, snap) in stages.iter().zip(&degrees) {
        println!("  t = {t:.2}: degree {} (raw {:.6})", snap.snapped, snap.raw);
    }
    Ok(())
}
