//! Second Chern number of a concentrated gauge field, integrated over balls
//! of growing radius. The ball integral is deliberately left unsnapped: the
//! approach to the integer as the cutoff grows is the physics, and the
//! boundary winding supplies the exact answer to converge to.

use topodeg::gauge::{chern_number_ball, instanton_charge_boundary, GaugeFieldR4, Su2Map};
use topodeg::SphereGrid3;

fn main() -> topodeg::Result<()> {
    let rho = 1.0;
    let field = GaugeFieldR4::bpst(rho, [0.0; 4])?;
    let grid = SphereGrid3::new(12, 12, 24)?;

    println!("one-instanton field of size rho = {rho}:");
    println!("  radius   charge over ball   distance to 1");
    for radius in [2.0, 4.0, 6.0, 8.0] {
        let q = chern_number_ball(&field, [0.0; 4], radius, 32, &grid)?;
        println!("  {radius:4.1}     {q:+.6}          {:.2e}", (q - 1.0).abs());
    }

    // The exact charge comes from the boundary map the field approaches at
    // infinity, where the integral is over a compact sphere and snaps.
    let boundary = instanton_charge_boundary(
        &Su2Map::omega_power(1),
        &SphereGrid3::new(16, 16, 32)?,
        1e-3,
    )?;
    println!("\nboundary winding: {} (residual {:.1e})", boundary.snapped, boundary.residual);

    // A pure gauge field is flat, so the ball integral vanishes at every
    // radius, not just asymptotically.
    let flat = GaugeFieldR4::pure_gauge(&Su2Map::omega_power(1))?;
    let q = chern_number_ball(&flat, [0.0; 4], 5.0, 16, &SphereGrid3::new(8, 8, 16)?)?;
    println!("pure gauge over a ball of radius 5: {q:+.2e}");
    Ok(())
}
