//! Magnetic charges read off from asymptotic Higgs data on the boundary
//! 2-sphere. The charge is the degree of the direction map, so overall
//! magnitude and rigid rotations of the field drop out.

use topodeg::gauge::{monopole_charge, HiggsBoundaryField};
use topodeg::SphereGrid2;

fn main() -> topodeg::Result<()> {
    let grid = SphereGrid2::new(32, 64)?;

    let unit = monopole_charge(&HiggsBoundaryField::hedgehog(1.0), &grid, 1e-3)?;
    println!("hedgehog: charge {} (raw {:.6})", unit.snapped, unit.raw);

    let scaled = monopole_charge(&HiggsBoundaryField::hedgehog(2.5), &grid, 1e-3)?;
    println!("hedgehog, magnitude 2.5: charge {} (magnitude divides out)", scaled.snapped);

    for k in [-3, -1, 0, 2, 3] {
        let snap = monopole_charge(&HiggsBoundaryField::twist(k, 1.0), &grid, 1e-3)?;
        println!("twist k = {k:2}: charge {:2} (residual {:.1e})", snap.snapped, snap.residual);
    }

    // A nonvanishing constant field has nothing to wind around.
    let flat = monopole_charge(&HiggsBoundaryField::constant([0.3, -1.0, 2.0]), &grid, 1e-3)?;
    println!("constant field: charge {}", flat.snapped);

    // Rotating the whole field in the internal space is a gauge artifact;
    // the charge ignores it.
    let axis = [1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0];
    for angle in [0.0, 0.7, 2.1] {
        let field = HiggsBoundaryField::twist(2, 1.0).rotated(axis, angle);
        let snap = monopole_charge(&field, &grid, 1e-3)?;
        println!("twist k = 2 rotated by {angle:.1}: charge {}", snap.snapped);
    }
    Ok(())
}
