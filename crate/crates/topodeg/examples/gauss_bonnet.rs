//! Total curvature of smooth surfaces of revolution. Integrating K over
//! the whole surface and dividing by 2 pi gives the Euler characteristic,
//! no matter how the curvature is distributed along the profile.

use topodeg::surfaces::{gauss_bonnet_revolution, SurfaceOfRevolution};

fn main() -> topodeg::Result<()> {
    // Spheres carry all their curvature positively; scaling trades local
    // curvature against area and the total never moves.
    for radius in [0.5, 1.0, 4.0] {
        let s = SurfaceOfRevolution::sphere(radius)?;
        let snap = gauss_bonnet_revolution(&s, 48, 1e-3)?;
        println!(
            "sphere r = {radius}: chi {} (raw {:+.9}, residual {:.1e})",
            snap.snapped, snap.raw, snap.residual
        );
    }

    // Tori balance the positive outer rim against the negative inner one.
    for (big_r, small_r) in [(2.0, 1.0), (3.0, 0.5)] {
        let t = SurfaceOfRevolution::torus(big_r, small_r)?;
        let snap = gauss_bonnet_revolution(&t, 48, 1e-3)?;
        println!(
            "torus R = {big_r}, r = {small_r}: chi {} (raw {:+.2e})",
            snap.snapped, snap.raw
        );
    }

    // The pointwise curvature tells the cancellation story: sample K along
    // the torus profile from the outer equator to the inner one.
    let t = SurfaceOfRevolution::torus(2.0, 0.5)?;
    println!("\ncurvature along the torus profile (R = 2, r = 0.5):");
    for i in 0..=4 {
        let u = t.length() * i as f64 / 8.0;
        println!("  u = {u:.3}: K = {:+.4}", t.gaussian_curvature(u));
    }
    Ok(())
}
