//! The normalized volume forms behind every charge here. Integrating
//! Omega_n over the unit n-sphere must give exactly 1; watching the
//! residual shrink with the grid is the cheapest health check the crate
//! has, and the same grids are then trusted everywhere else.

use topodeg::forms::{integrate_omega_over_sphere, pullback_integral_s2, AnySphereGrid};
use topodeg::{PeriodicGrid1D, SphereGrid2, SphereGrid3};

fn main() -> topodeg::Result<()> {
    println!("circle (trapezoid rule, spectral convergence):");
    for n in [8usize, 16, 64, 256] {
        let g = AnySphereGrid::S1(PeriodicGrid1D::standard(n)?);
        let snap = integrate_omega_over_sphere(&g, 0.4)?;
        println!("  {n:4} samples: total {:+.12}, residual {:.1e}", snap.raw, snap.residual);
    }

    println!("\n2-sphere (Gauss-Legendre in theta, trapezoid in phi):");
    for (nt, np) in [(4usize, 8usize), (8, 16), (16, 32), (32, 64)] {
        let g = AnySphereGrid::S2(SphereGrid2::new(nt, np)?);
        let snap = integrate_omega_over_sphere(&g, 0.4)?;
        println!("  {nt:2} x {np:2}: total {:+.12}, residual {:.1e}", snap.raw, snap.residual);
    }

    println!("\n3-sphere:");
    for (nc, nt, np) in [(4usize, 4usize, 8usize), (8, 8, 16), (16, 16, 32), (24, 24, 48)] {
        let g = AnySphereGrid::S3(SphereGrid3::new(nc, nt, np)?);
        let snap = integrate_omega_over_sphere(&g, 0.4)?;
        println!(
            "  {nc:2} x {nt:2} x {np:2}: total {:+.12}, residual {:.1e}",
            snap.raw, snap.residual
        );
    }

    // The form only sees the direction of the field, never its magnitude,
    // so a sphere that does not enclose the origin integrates to zero.
    let grid = SphereGrid2::new(32, 64)?;
    for shift in [0.0, 0.5, 3.0] {
        let raw = pullback_integral_s2(&grid, move |theta, phi| {
            let (x, j) = topodeg::forms::sphere2_point(theta, phi);
            Ok(([x[0] + shift, x[1], x[2]], j))
        })?;
        let enclosed = shift < 1.0;
        println!(
            "\nsphere shifted by {shift:.1} in x: total {raw:+.12} (origin enclosed: {enclosed})"
        );
    }
    Ok(())
}
