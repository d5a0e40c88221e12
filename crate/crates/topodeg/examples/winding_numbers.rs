//! Winding numbers of circle maps, counted two ways: by integrating the
//! lift's derivative over a period, and by summing signs over the preimages
//! of a regular value. The integral drifts with the grid; the count is an
//! integer from the start. They have to agree.

use topodeg::degree::{degree_circle_preimage, winding_number, CircleMapLift};
use topodeg::PeriodicGrid1D;

fn main() -> topodeg::Result<()> {
    let grid = PeriodicGrid1D::standard(512)?;

    println!("perturbed lifts n*phi + 0.3 sin(2 phi), preimages of 0.7:");
    for n in [-3_i64, -1, 0, 2, 5] {
        let nf = n as f64;
        let map = CircleMapLift::with_derivative(
            move |phi| nf * phi + 0.3 * (2.0 * phi).sin(),
            move |phi| nf + 0.6 * (2.0 * phi).cos(),
        )?;
        let snap = winding_number(&map, &grid, 1e-3)?;
        let count = degree_circle_preimage(&map, 0.7)?;
        println!(
            "  n = {n:2}: integral {:9.6} -> {:2} (residual {:.1e}), {} preimages signed to {:2}",
            snap.raw,
            snap.snapped,
            snap.residual,
            count.preimages.len(),
            count.degree,
        );
    }

    // A homotopy cannot change the winding number, however wild the
    // intermediate maps look.
    let grid = PeriodicGrid1D::standard(256)?;
    let stages: Vec<f64> = (0..=4).map(|i| i as f64 / 4.0).collect();
    let degrees = topodeg::degree::circle_degree_along_homotopy(
        |t| {
            CircleMapLift::with_derivative(
                move |phi| 2.0 * phi + t * (5.0 * phi).sin(),
                move |phi| 2.0 + 5.0 * t * (5.0 * phi).cos(),
            )
        },
        &stages,
        &grid,
        1e-3,
    )?;
    println!("\ndeforming 2 phi by t sin(5 phi):");
    for (t, snap) in stages.iter().zip(&degrees) {
        println!("  t = {t:.2}: winding {} (raw {:.6})", snap.snapped, snap.raw);
    }
    Ok(())
}
