//! One test per release criterion. Every tolerance is pinned here, next to
//! the computation it gates; each test ends by printing a single PASS line
//! so the run log doubles as the acceptance record.

use std::time::{Duration, Instant};

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use topodeg::cli::{execute, Cli};
use topodeg::degree::{degree_circle_preimage, degree_sphere2, winding_number};
use topodeg::field_index::index_additivity_report_2d;
use topodeg::forms::{integrate_omega_over_sphere, pullback_integral_s2, sphere2_point, AnySphereGrid};
use topodeg::gauge::{
    chern_number_ball, instanton_charge_boundary, maurer_cartan_residual, monopole_charge,
    product_charge_report, random_s3_samples,
};
use topodeg::poincare_hopf::poincare_hopf_report;
use topodeg::registry;
use topodeg::surfaces::{
    angle_defect_chi, corpus, euler_characteristic, gauss_bonnet_revolution, genus, subdivide,
};
use topodeg::{snap_integer, PeriodicGrid1D, SphereGrid2, SphereGrid3};

const SNAP_TOL: f64 = 1e-3;

const WINDING_RESIDUAL: f64 = 1e-9;
const SPHERE_RESIDUAL: f64 = 1e-8;
const OMEGA_RESIDUALS: [f64; 3] = [1e-12, 1e-10, 1e-9];
const PLANE_RESIDUAL: f64 = 1e-6;
const MONOPOLE_RESIDUAL: f64 = 1e-6;
const INSTANTON_RESIDUAL: f64 = 1e-6;
const MC_BOUND: f64 = 1e-7;
const CHERN_WINDOW: f64 = 0.05;
const DEFECT_MATCH: f64 = 1e-9;
const REVOLUTION_RESIDUAL: f64 = 1e-6;

const INSTANTON_BUDGET: Duration = Duration::from_secs(30);
const CHERN_BUDGET: Duration = Duration::from_secs(180);

fn pass(name: &str, detail: String) {
    println!("ACCEPTANCE PASS {name}: {detail}");
}

#[test]
fn criterion_01_circle_windings() {
    let grid = PeriodicGrid1D::standard(512).unwrap();
    let mut worst: f64 = 0.0;
    for n in -5..=5_i64 {
        for (a, m) in [(0.0, 1), (0.2, 3), (0.25, 7)] {
            let map = registry::circle_map(&format!("perturbed:{n},{a},{m}")).unwrap();
            let snap = winding_number(&map, &grid, SNAP_TOL).unwrap();
            assert_eq!(snap.snapped, n, "perturbed:{n},{a},{m}");
            worst = worst.max(snap.residual);
        }
    }
    assert!(worst < WINDING_RESIDUAL, "worst residual {worst:.3e}");

    // Independent count: preimages of five regular values, signed. The
    // perturbation is kept below |n| so every lift stays monotone.
    let values = [0.3, 1.1, 2.0, 3.7, 5.5];
    for n in -5..=5_i64 {
        let map = registry::circle_map(&format!("perturbed:{n},0.2,3")).unwrap();
        for v in values {
            let sum = degree_circle_preimage(&map, v).unwrap();
            assert_eq!(sum.degree, n, "preimages of {v} for n = {n}");
        }
    }
    pass(
        "criterion 01 (circle windings)",
        format!(
            "n in -5..=5 over 3 lifts each, max residual {worst:.2e} < {WINDING_RESIDUAL:.0e}; \
             sign counts agreed at {} regular values",
            values.len()
        ),
    );
}

#[test]
fn criterion_02_sphere_degrees() {
    let grid = SphereGrid2::new(32, 64).unwrap();
    let mut worst: f64 = 0.0;
    let mut cases = vec![("identity".to_string(), 1), ("antipodal".to_string(), -1)];
    for k in -4..=4_i64 {
        cases.push((format!("twist:{k}"), k));
    }
    for (text, want) in &cases {
        let map = registry::sphere_map(text).unwrap();
        let snap = degree_sphere2(&map, &grid, SNAP_TOL).unwrap();
        assert_eq!(snap.snapped, *want, "{text}");
        worst = worst.max(snap.residual);
    }
    assert!(worst < SPHERE_RESIDUAL, "worst residual {worst:.3e}");
    pass(
        "criterion 02 (sphere degrees)",
        format!("{} maps on a 32x64 grid, max residual {worst:.2e} < {SPHERE_RESIDUAL:.0e}", cases.len()),
    );
}

#[test]
fn criterion_03_solid_angle_normalization() {
    let grids = [
        AnySphereGrid::S1(PeriodicGrid1D::standard(64).unwrap()),
        AnySphereGrid::S2(SphereGrid2::new(32, 64).unwrap()),
        AnySphereGrid::S3(SphereGrid3::new(24, 24, 48).unwrap()),
    ];
    let mut residuals = [0.0; 3];
    for (i, grid) in grids.iter().enumerate() {
        let snap = integrate_omega_over_sphere(grid, SNAP_TOL).unwrap();
        assert_eq!(snap.snapped, 1, "dimension {}", i + 1);
        assert!(
            snap.residual < OMEGA_RESIDUALS[i],
            "dimension {}: residual {:.3e}",
            i + 1,
            snap.residual
        );
        residuals[i] = snap.residual;
    }

    // A sphere that does not enclose the origin subtends no solid angle.
    let grid = SphereGrid2::new(32, 64).unwrap();
    let off = pullback_integral_s2(&grid, |theta, phi| {
        let (x, tangents) = sphere2_point(theta, phi);
        Ok(([x[0] + 3.0, x[1], x[2]], tangents))
    })
    .unwrap();
    assert!(off.abs() < 1e-9, "displaced sphere total {off:.3e}");

    pass(
        "criterion 03 (solid angle normalization)",
        format!(
            "totals 1 on S^1/S^2/S^3 with residuals {:.1e}/{:.1e}/{:.1e}; displaced sphere {:.1e}",
            residuals[0], residuals[1], residuals[2], off
        ),
    );
}

#[test]
fn criterion_04_plane_indices() {
    let grid = PeriodicGrid1D::standard(512).unwrap();
    let unit = registry::plane_surface("circle").unwrap();
    for (text, want) in [("power:1", 1), ("power:2", 2), ("power:-1", -1)] {
        let f = registry::plane_field(text).unwrap();
        let snap = topodeg::field_index::index_wrt_surface_2d(&f, &unit, &grid, SNAP_TOL).unwrap();
        assert_eq!(snap.snapped, want, "{text}");
        assert!(snap.residual < PLANE_RESIDUAL, "{text}: residual {:.3e}", snap.residual);
    }

    // The index counts the enclosed zero, not the contour drawn around it.
    let f = registry::plane_field("power:2").unwrap();
    for text in ["circle:0,0,0.5", "circle:0,0,2", "ellipse:0,0,2,0.5"] {
        let s = registry::plane_surface(text).unwrap();
        let snap = topodeg::field_index::index_wrt_surface_2d(&f, &s, &grid, SNAP_TOL).unwrap();
        assert_eq!(snap.snapped, 2, "power:2 on {text}");
    }

    let dipole = registry::plane_field("dipole").unwrap();
    let outer = registry::plane_surface("circle:0,0,3").unwrap();
    let report =
        index_additivity_report_2d(&dipole, &outer, dipole.zeros(), 0.25, &grid, SNAP_TOL)
            .unwrap();
    assert!(report.balanced(), "outer {} vs sum {}", report.outer.snapped, report.sum);
    assert_eq!(report.outer.snapped, 2);
    assert_eq!(report.per_point.len(), 2);

    pass(
        "criterion 04 (plane field indices)",
        format!(
            "indices 1/2/-1 on the unit circle, contour independence over 3 shapes, \
             dipole additivity {} = {} + {}",
            report.outer.snapped, report.per_point[0].snapped, report.per_point[1].snapped
        ),
    );
}

#[test]
fn criterion_05_monopole_charges() {
    let grid = SphereGrid2::new(32, 64).unwrap();
    let mut worst: f64 = 0.0;
    let mut run = |text: &str, want: i64| {
        let f = registry::higgs_field(text).unwrap();
        let snap = monopole_charge(&f, &grid, SNAP_TOL).unwrap();
        assert_eq!(snap.snapped, want, "{text}");
        worst = worst.max(snap.residual);
    };
    run("hedgehog", 1);
    run("hedgehog:2.5", 1);
    for k in [-3, -2, -1, 1, 2, 3] {
        run(&format!("twist:{k}"), k);
    }
    run("constant:0.3,-1,2", 0);
    assert!(worst < MONOPOLE_RESIDUAL, "worst residual {worst:.3e}");

    // Rigid rotations change the field, not the charge.
    let hedgehog = registry::higgs_field("hedgehog").unwrap();
    let rotated = hedgehog.rotated([1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0], 1.0);
    let snap = monopole_charge(&rotated, &grid, SNAP_TOL).unwrap();
    assert_eq!(snap.snapped, 1);

    pass(
        "criterion 05 (monopole charges)",
        format!("hedgehogs, twists |k| <= 3 and a constant, max residual {worst:.2e} < {MONOPOLE_RESIDUAL:.0e}; rotation invariant"),
    );
}

#[test]
fn criterion_06_boundary_charges() {
    let start = Instant::now();

    let grid = SphereGrid3::new(24, 24, 48).unwrap();
    let mut worst: f64 = 0.0;
    for k in -5..=5_i64 {
        let map = registry::su2_map(&format!("omega:{k}")).unwrap();
        let snap = instanton_charge_boundary(&map, &grid, SNAP_TOL).unwrap();
        assert_eq!(snap.snapped, k, "omega:{k}");
        worst = worst.max(snap.residual);
    }
    assert!(worst < INSTANTON_RESIDUAL, "worst residual {worst:.3e}");

    // Charges add under the pointwise group product.
    let small = SphereGrid3::new(16, 16, 32).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x70616972);
    let mut pairs = Vec::new();
    for _ in 0..5 {
        let k1 = rng.gen_range(-3..=3_i64);
        let k2 = rng.gen_range(-3..=3_i64);
        let m1 = registry::su2_map(&format!("omega:{k1}")).unwrap();
        let m2 = registry::su2_map(&format!("omega:{k2}")).unwrap();
        let report = product_charge_report(&m1, &m2, &small, SNAP_TOL).unwrap();
        assert!(report.additive(), "({k1}, {k2}): {} + {} vs {}", k1, k2, report.q_product.snapped);
        pairs.push((k1, k2));
    }

    // The two densities agree pointwise, not just after integration.
    let samples = random_s3_samples(100, 0xabcd);
    let mut mc_worst: f64 = 0.0;
    for text in ["omega:1", "omega:3", "product:2,-1"] {
        let map = registry::su2_map(text).unwrap();
        let r = maurer_cartan_residual(&map, &samples).unwrap();
        assert!(r < MC_BOUND, "{text}: residual {r:.3e}");
        mc_worst = mc_worst.max(r);
    }

    let elapsed = start.elapsed();
    assert!(elapsed < INSTANTON_BUDGET, "took {elapsed:.2?}");
    pass(
        "criterion 06 (boundary charges)",
        format!(
            "Q(omega_k) = k for |k| <= 5 with max residual {worst:.2e}; additive on pairs {pairs:?}; \
             pointwise identity within {mc_worst:.2e} at 100 points; {elapsed:.2?} < {INSTANTON_BUDGET:?}"
        ),
    );
}

#[test]
fn criterion_07_chern_ball() {
    let start = Instant::now();
    let field = registry::gauge_field("bpst:1").unwrap();

    // The tail of the density outside the ball shrinks like (rho/R)^4,
    // so widening the ball has to improve the estimate.
    let sweep_grid = SphereGrid3::new(12, 12, 24).unwrap();
    let mut errs = Vec::new();
    for radius in [4.0, 6.0, 8.0] {
        let raw = chern_number_ball(&field, [0.0; 4], radius, 32, &sweep_grid).unwrap();
        errs.push((raw - 1.0).abs());
    }
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "errors not shrinking: {errs:?}");

    let grid = SphereGrid3::new(16, 16, 32).unwrap();
    let raw = chern_number_ball(&field, [0.0; 4], 8.0, 48, &grid).unwrap();
    assert!((raw - 1.0).abs() < CHERN_WINDOW, "raw {raw:.6}");
    let snap = snap_integer(raw, CHERN_WINDOW).unwrap();

    // Independent oracle: at the boundary the field is pure gauge with unit
    // winding, and the boundary charge is computed by a different integral.
    let boundary = registry::su2_map("omega:1").unwrap();
    let oracle = instanton_charge_boundary(&boundary, &grid, SNAP_TOL).unwrap();
    assert_eq!(snap.snapped, oracle.snapped);

    let elapsed = start.elapsed();
    assert!(elapsed < CHERN_BUDGET, "took {elapsed:.2?}");
    let err_list: Vec<String> = errs.iter().map(|e| format!("{e:.2e}")).collect();
    pass(
        "criterion 07 (ball charge)",
        format!(
            "raw {raw:.4} within {CHERN_WINDOW} of 1, errors [{}] shrink with radius, \
             boundary oracle {}; {elapsed:.2?} < {CHERN_BUDGET:?}",
            err_list.join(", "),
            oracle.snapped
        ),
    );
}

#[test]
fn criterion_08_surface_invariants() {
    let table: [(&str, usize, usize, i64, u32); 6] = [
        ("tetrahedron", 4, 4, 2, 0),
        ("octahedron", 6, 8, 2, 0),
        ("icosahedron", 12, 20, 2, 0),
        ("icosphere2", 162, 320, 2, 0),
        ("torus", 64, 128, 0, 1),
        ("genus2", 125, 254, -2, 2),
    ];
    let mut worst: f64 = 0.0;
    for (name, v, f, chi, g) in table {
        let mesh = corpus::by_name(name).unwrap();
        let report = euler_characteristic(&mesh);
        assert_eq!((report.vertex_count, report.face_count), (v, f), "{name} counts");
        assert_eq!(2 * report.edge_count, 3 * report.face_count, "{name} edge balance");
        assert_eq!(report.chi, chi, "{name} chi");
        let defect = angle_defect_chi(&mesh);
        let gap = (defect - chi as f64).abs();
        assert!(gap < DEFECT_MATCH, "{name}: defect off by {gap:.3e}");
        worst = worst.max(gap);
        assert_eq!(genus(&mesh).unwrap(), g, "{name} genus");
    }

    // Refinement is invisible to every invariant above.
    for name in ["tetrahedron", "torus"] {
        let mesh = corpus::by_name(name).unwrap();
        let fine = subdivide(&mesh);
        assert_eq!(euler_characteristic(&fine).chi, euler_characteristic(&mesh).chi, "{name}");
        let gap = (angle_defect_chi(&fine) - euler_characteristic(&fine).chi as f64).abs();
        assert!(gap < DEFECT_MATCH, "subdivided {name}: defect off by {gap:.3e}");
    }

    // The smooth counterpart: total curvature over 2 pi.
    let mut rev_worst: f64 = 0.0;
    for (text, want) in [("sphere", 2_i64), ("sphere:3", 2), ("torus", 0), ("torus:3,0.5", 0)] {
        let surface = registry::revolution_surface(text).unwrap();
        let snap = gauss_bonnet_revolution(&surface, 48, SNAP_TOL).unwrap();
        assert_eq!(snap.snapped, want, "{text}");
        assert!(snap.residual < REVOLUTION_RESIDUAL, "{text}: residual {:.3e}", snap.residual);
        rev_worst = rev_worst.max(snap.residual);
    }

    pass(
        "criterion 08 (surface invariants)",
        format!(
            "6 meshes: counts, 2E = 3F, genus, defect gap < {worst:.2e}; stable under subdivision; \
             curvature totals match with residual < {rev_worst:.2e}"
        ),
    );
}

#[test]
fn criterion_09_poincare_hopf() {
    let cases: [(&str, usize, Vec<i64>, i64); 4] = [
        ("sphere-gradient-z", 2, vec![1, 1], 2),
        ("sphere-rotation-z", 2, vec![1, 1], 2),
        ("torus-constant", 0, vec![], 0),
        ("torus-height-gradient", 4, vec![-1, -1, 1, 1], 0),
    ];
    for (text, zero_count, indices, chi) in &cases {
        let field = registry::tangent_field(text).unwrap();
        let report = poincare_hopf_report(&field, SNAP_TOL).unwrap();
        assert_eq!(report.zeros.len(), *zero_count, "{text} zero count");
        let mut got: Vec<i64> = report.zeros.iter().map(|z| z.index).collect();
        got.sort_unstable();
        assert_eq!(&got, indices, "{text} indices");
        assert_eq!(report.chi, *chi, "{text} chi");
        assert!(report.matches(), "{text}: sum {} vs chi {}", report.index_sum, report.chi);
    }
    pass(
        "criterion 09 (index sums)",
        "gradient and rotation fields on the sphere, constant and height fields on the torus, \
         every index sum equal to chi"
            .to_string(),
    );
}

#[test]
fn criterion_10_determinism() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["winding", "--map", "perturbed:3,0.4,2", "--regular-value", "0.5"],
        vec!["sphere-degree", "--map", "twist:-2", "--grid", "16,32"],
        vec!["omega-normalize", "--dim", "2", "--grid", "16,16"],
        vec!["vf-index", "--field", "hedgehog", "--surface", "sphere:0.2,0,0,1", "--grid", "16,16"],
        vec!["additivity", "--field", "dipole", "--outer", "circle:0,0,3"],
        vec!["monopole", "--field", "twist:2", "--grid", "16,16"],
        vec!["instanton", "--map", "omega:2", "--grid", "8,8,16"],
        vec!["mc-identity", "--map", "omega:1", "--samples", "25"],
        vec!["chern-ball", "--field", "pure-gauge:1", "--radius", "5", "--grid", "12,8,8,12"],
        vec!["euler", "--mesh", "genus2"],
        vec!["angle-defect", "--mesh", "icosphere2"],
        vec!["gauss-bonnet-rev", "--surface", "torus"],
        vec!["poincare-hopf", "--field", "torus-height-gradient"],
    ];
    for case in &cases {
        let stripped: Vec<String> = (0..2)
            .map(|_| {
                let args = std::iter::once("topodeg").chain(case.iter().copied());
                let cli = Cli::try_parse_from(args).expect("args parse");
                let run = execute(&cli).expect("command runs");
                assert!(run.passed, "{case:?}: {}", run.text);
                let mut v = serde_json::to_value(&run.report).expect("serializes");
                v.as_object_mut().expect("object").remove("elapsed_ms");
                serde_json::to_string(&v).expect("restringifies")
            })
            .collect();
        assert_eq!(stripped[0], stripped[1], "{case:?} not reproducible");
    }
    pass(
        "criterion 10 (determinism)",
        format!("{} commands re-run byte-identically (timing field aside)", cases.len()),
    );
}
