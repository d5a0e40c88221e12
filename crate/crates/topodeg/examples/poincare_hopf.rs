//! Zeros of tangent vector fields, their indices, and the sum that the
//! surface forces on them. However the field is arranged, the indices of
//! its zeros total the Euler characteristic: 2 on the sphere, 0 on the
//! torus.

use topodeg::poincare_hopf::{poincare_hopf_report, TangentField};

fn main() -> topodeg::Result<()> {
    let cases = [
        ("gradient of height on the sphere", TangentField::sphere_gradient_z()),
        ("rotation about the z axis", TangentField::sphere_rotation_z()),
        ("constant drift on the torus", TangentField::torus_constant()),
        ("gradient of height on the torus", TangentField::torus_height_gradient()),
    ];

    for (name, field) in cases {
        let report = poincare_hopf_report(&field, 1e-3)?;
        println!("{name} (chi = {}):", report.chi);
        if report.zeros.is_empty() {
            println!("  no zeros at all");
        }
        for z in &report.zeros {
            println!(
                "  index {:+} at ({:+.3}, {:+.3}, {:+.3}) [{}]",
                z.index, z.ambient[0], z.ambient[1], z.ambient[2], z.chart
            );
        }
        println!("  index sum {} (matches chi: {})\n", report.index_sum, report.matches());
    }

    // A homemade field: tilt the rotation axis so the zeros leave the
    // poles. The count and the sum survive.
    let tilted = TangentField::sphere_from_ambient(|p| {
        let a = [0.6, 0.0, 0.8];
        [
            a[1] * p[2] - a[2] * p[1],
            a[2] * p[0] - a[0] * p[2],
            a[0] * p[1] - a[1] * p[0],
        ]
    });
    let report = poincare_hopf_report(&tilted, 1e-3)?;
    println!("rotation about a tilted axis:");
    for z in &report.zeros {
        println!(
            "  index {:+} at ({:+.3}, {:+.3}, {:+.3})",
            z.index, z.ambient[0], z.ambient[1], z.ambient[2]
        );
    }
    println!("  index sum {} (matches chi: {})", report.index_sum, report.matches());
    Ok(())
}
