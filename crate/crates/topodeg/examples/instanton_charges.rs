//! Instanton numbers from boundary maps S^3 -> SU(2). The charge is the
//! degree of the map, it adds under pointwise products, and the volume
//! form it integrates satisfies a pointwise trace identity that central
//! differences can check anywhere on the sphere.

use topodeg::gauge::{
    instanton_charge_boundary, maurer_cartan_residual, product_charge_report, random_s3_samples,
    Su2Map,
};
use topodeg::SphereGrid3;

fn main() -> topodeg::Result<()> {
    let grid = SphereGrid3::new(24, 24, 48)?;

    println!("powers of the identity map:");
    for k in [-2, -1, 0, 1, 3] {
        let map = Su2Map::omega_power(k);
        let snap = instanton_charge_boundary(&map, &grid, 1e-3)?;
        println!("  omega^{k:2}: charge {:2} (raw {:9.6}, residual {:.1e})", snap.snapped, snap.raw, snap.residual);
    }

    // Charges add under the pointwise group product.
    let a = Su2Map::omega_power(2);
    let b = Su2Map::omega_power(-1);
    let report = product_charge_report(&a, &b, &grid, 1e-3)?;
    println!(
        "\nproduct: Q(omega^2) = {}, Q(omega^-1) = {}, Q(product) = {} (additive: {})",
        report.q1.snapped,
        report.q2.snapped,
        report.q_product.snapped,
        report.additive()
    );

    // Inversion flips the orientation of the image, hence the sign.
    let inv = Su2Map::omega_power(3).inverted();
    let snap = instanton_charge_boundary(&inv, &grid, 1e-3)?;
    println!("inverse of omega^3: charge {}", snap.snapped);

    // The density being integrated is not just numerically convenient; it
    // equals a Maurer-Cartan trace pointwise. Sample the defect at random
    // chart points.
    let samples = random_s3_samples(100, 0x5eed);
    for (name, map) in [
        ("omega^1", Su2Map::omega_power(1)),
        ("omega^3", Su2Map::omega_power(3)),
        ("omega^2 * omega^-1", Su2Map::product(&Su2Map::omega_power(2), &Su2Map::omega_power(-1))),
    ] {
        let worst = maurer_cartan_residual(&map, &samples)?;
        println!("trace identity, {name}: worst pointwise defect {worst:.2e} over {} samples", samples.len());
    }
    Ok(())
}
