//! Command-line front end. One subcommand per invariant, map and surface
//! specs resolved through [`crate::registry`], results as plain text or a
//! single-line JSON report.

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::degree::{degree_circle_preimage, degree_sphere2, winding_number};
use crate::error::TopoError;
use crate::field_index::{
    index_additivity_report_2d, index_at_point_2d, index_wrt_surface_2d, index_wrt_surface_3d,
};
use crate::forms::{integrate_omega_over_sphere, AnySphereGrid};
use crate::gauge::{
    chern_number_ball, instanton_charge_boundary, maurer_cartan_residual, monopole_charge,
    product_charge_report, random_s3_samples,
};
use crate::poincare_hopf::poincare_hopf_report;
use crate::quadrature::{snap_integer, IntegerSnapResult, PeriodicGrid1D, SphereGrid2, SphereGrid3};
use crate::registry::{self, UsageError};
use crate::surfaces::{angle_defect_chi, euler_characteristic, gauss_bonnet_revolution, genus};

/// Fallback snap tolerance when neither `--tol` nor `TOPO_DEFAULT_TOL` is set.
pub const DEFAULT_TOL: f64 = 1e-3;

/// Looser default for the second Chern number; the interior quadrature
/// carries more discretization error than the boundary pullbacks.
pub const CHERN_DEFAULT_TOL: f64 = 0.05;

#[derive(Parser, Debug)]
#[command(name = "topodeg", version, about = "Integer invariants of maps, fields and surfaces")]
pub struct Cli {
    /// Snap tolerance for integer results; TOPO_DEFAULT_TOL is the fallback.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Emit a single-line JSON report on stdout instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Winding number of a circle map.
    Winding {
        /// Map spec: power:n or perturbed:n,a,m.
        #[arg(long)]
        map: String,
        /// Sample count, a power of two.
        #[arg(long)]
        grid: Option<usize>,
        /// Also count preimages of this angle with signs and compare.
        #[arg(long)]
        regular_value: Option<f64>,
    },
    /// Degree of a sphere-to-sphere map.
    SphereDegree {
        /// Map spec: identity, antipodal, or twist:k.
        #[arg(long)]
        map: String,
        /// Grid as theta,phi counts.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Index of a vector field along a closed curve or surface.
    VfIndex {
        /// Field spec; planar: power:n, dipole, saddle, source, sink.
        /// Spatial: hedgehog, mirror, shift:a,b,c, expr:vx=..,vy=..,vz=..
        #[arg(long)]
        field: String,
        /// Surface spec: circle[:cx,cy,r], ellipse:cx,cy,a,b,
        /// sphere[:cx,cy,cz,r], ellipsoid:cx,cy,cz,a,b,c.
        #[arg(long)]
        surface: String,
        /// Sample count (curves) or theta,phi counts (surfaces).
        #[arg(long)]
        grid: Option<String>,
    },
    /// Index of an isolated zero of a planar field.
    VfPointIndex {
        /// Field spec, as for vf-index.
        #[arg(long)]
        field: String,
        /// Zero location as x,y.
        #[arg(long)]
        point: String,
        /// Radius of the encircling loop.
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
        /// Sample count on the loop, a power of two.
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Outer index versus the sum over enclosed zeros of a planar field.
    Additivity {
        /// Field spec with known zeros, as for vf-index.
        #[arg(long)]
        field: String,
        /// Outer curve spec enclosing every zero.
        #[arg(long)]
        outer: String,
        /// Radius of the per-zero loops.
        #[arg(long, default_value_t = 0.25)]
        radius: f64,
        /// Sample count per loop, a power of two.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Magnetic charge of a Higgs field direction on the boundary sphere.
    Monopole {
        /// Field spec: hedgehog[:scale], twist:k[,scale], constant:x,y,z.
        #[arg(long)]
        field: String,
        /// Grid as theta,phi counts.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Topological charge of a boundary gauge transformation.
    Instanton {
        /// Map spec: omega:k, product:k1,k2, constant.
        #[arg(long)]
        map: String,
        /// Grid as chi,theta,phi counts.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Pointwise identity between charge densities, checked at random points.
    McIdentity {
        /// Map spec, as for instanton.
        #[arg(long)]
        map: String,
        /// Number of sample points.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// RNG seed for the sample points.
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Largest acceptable residual.
        #[arg(long, default_value_t = 1e-7)]
        bound: f64,
    },
    /// Charges of two maps and of their pointwise product.
    ProductCharge {
        /// First map spec, as for instanton.
        #[arg(long)]
        map1: String,
        /// Second map spec.
        #[arg(long)]
        map2: String,
        /// Grid as chi,theta,phi counts.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Second Chern number of a gauge field over a ball.
    ChernBall {
        /// Field spec: bpst:rho, pure-gauge:k, zero.
        #[arg(long)]
        field: String,
        /// Ball radius.
        #[arg(long, default_value_t = 8.0)]
        radius: f64,
        /// Grid as radial,chi,theta,phi counts (radial may be omitted).
        #[arg(long)]
        grid: Option<String>,
    },
    /// Euler characteristic of a triangle mesh.
    Euler {
        /// Bundled mesh name or a path ending in .off.
        #[arg(long)]
        mesh: String,
    },
    /// Total angle defect of a mesh against its Euler characteristic.
    AngleDefect {
        /// Bundled mesh name or a path ending in .off.
        #[arg(long)]
        mesh: String,
    },
    /// Genus of a closed orientable triangle mesh.
    Genus {
        /// Bundled mesh name or a path ending in .off.
        #[arg(long)]
        mesh: String,
    },
    /// Total curvature over 2 pi for a surface of revolution.
    GaussBonnetRev {
        /// Surface spec: sphere[:radius] or torus[:R,r].
        #[arg(long)]
        surface: String,
        /// Profile node count.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Zeros and indices of a tangent field, summed against chi.
    PoincareHopf {
        /// Field spec: sphere-gradient-z, sphere-rotation-z, torus-constant,
        /// torus-height-gradient, sphere-ambient:vx=..,vy=..,vz=..,
        /// torus-chart:vu=..,vv=..
        #[arg(long)]
        field: String,
    },
    /// Total of the unit solid-angle form over the round sphere.
    OmegaNormalize {
        /// Sphere dimension: 1, 2 or 3.
        #[arg(long)]
        dim: usize,
        /// Grid: one count per angle.
        #[arg(long)]
        grid: Option<String>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub raw: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integer: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug)]
pub struct RunResult {
    /// All checks passed. Commands without checks always pass; failing to
    /// produce a result at all is a [`CliError::Run`] instead.
    pub passed: bool,
    pub text: String,
    pub report: Report,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments; exit 2, nothing useful to report.
    Usage(String),
    /// The computation itself failed; exit 1 with the error in the report.
    Run(Report),
}

/// Exit status for a parsed command line. Split from `main` so tests can
/// drive it without spawning processes.
pub fn main_with(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(run) => {
            if cli.json {
                println!("{}", serde_json::to_string(&run.report).expect("report serializes"));
            } else {
                println!("{}", run.text);
            }
            if run.passed {
                0
            } else {
                1
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Run(report)) => {
            let msg = report.error.as_deref().unwrap_or("failed");
            if cli.json {
                println!("{}", serde_json::to_string(&report).expect("report serializes"));
            } else {
                eprintln!("error: {msg}");
            }
            1
        }
    }
}

pub fn execute(cli: &Cli) -> Result<RunResult, CliError> {
    let start = std::time::Instant::now();
    let mut out = dispatch(cli);
    let elapsed = start.elapsed().as_millis() as u64;
    match &mut out {
        Ok(run) => run.report.elapsed_ms = elapsed,
        Err(CliError::Run(report)) => report.elapsed_ms = elapsed,
        Err(CliError::Usage(_)) => {}
    }
    out
}

/// `--tol`, then the environment text, then demand membership in (0, 1/2)
/// where snapping is meaningful.
pub fn resolve_tol(cli_tol: Option<f64>, env: Option<&str>, default: f64) -> Result<f64, String> {
    let tol = match (cli_tol, env) {
        (Some(t), _) => t,
        (None, Some(text)) => text
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("TOPO_DEFAULT_TOL={text:?} is not a number"))?,
        (None, None) => default,
    };
    if !(tol > 0.0 && tol < 0.5) {
        return Err(format!("tolerance {tol} must lie strictly between 0 and 0.5"));
    }
    Ok(tol)
}

fn tol_for(cli: &Cli, default: f64) -> Result<f64, CliError> {
    let env = std::env::var("TOPO_DEFAULT_TOL").ok();
    resolve_tol(cli.tol, env.as_deref(), default).map_err(CliError::Usage)
}

fn spec<T>(r: Result<T, UsageError>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Usage(e.0))
}

fn grid_usage<T>(r: crate::error::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Usage(e.to_string()))
}

fn fail(command: &str, input: &str, e: TopoError) -> CliError {
    CliError::Run(Report {
        command: command.into(),
        input: input.into(),
        raw: None,
        integer: None,
        residual: None,
        grid: None,
        elapsed_ms: 0,
        checks: Vec::new(),
        details: None,
        error: Some(e.to_string()),
    })
}

fn split_counts(text: &str, what: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("{what}: bad count {t:?} in {text:?}")))
        })
        .collect()
}

fn counts_or(text: Option<&str>, default: &[usize], what: &str) -> Result<Vec<usize>, CliError> {
    match text {
        Some(t) => {
            let parts = split_counts(t, what)?;
            if parts.len() != default.len() {
                return Err(CliError::Usage(format!(
                    "{what}: expected {} comma-separated counts, got {t:?}",
                    default.len()
                )));
            }
            Ok(parts)
        }
        None => Ok(default.to_vec()),
    }
}

fn parse_point2(text: &str) -> Result<[f64; 2], CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(CliError::Usage(format!("point: expected x,y, got {text:?}")));
    }
    let mut p = [0.0; 2];
    for (slot, t) in p.iter_mut().zip(&parts) {
        *slot = t
            .parse()
            .map_err(|_| CliError::Usage(format!("point: bad coordinate {t:?}")))?;
    }
    Ok(p)
}

fn sci(x: f64) -> String {
    format!("{x:.1e}")
}

#[derive(Default)]
struct Outcome {
    raw: Option<f64>,
    integer: Option<i64>,
    residual: Option<f64>,
    grid: Option<String>,
    checks: Vec<Check>,
    details: Option<serde_json::Value>,
    text: String,
}

fn snap_outcome(label: &str, snap: &IntegerSnapResult, grid: Option<String>) -> Outcome {
    Outcome {
        raw: Some(snap.raw),
        integer: Some(snap.snapped),
        residual: Some(snap.residual),
        grid,
        text: format!(
            "{label} = {} (raw {:.6}, residual {})",
            snap.snapped,
            snap.raw,
            sci(snap.residual)
        ),
        ..Default::default()
    }
}

fn done(command: &str, input: String, mut out: Outcome) -> Result<RunResult, CliError> {
    let passed = out.checks.iter().all(|c| c.passed);
    for c in &out.checks {
        out.text.push_str(&format!(
            "\ncheck {}: {} ({})",
            c.name,
            if c.passed { "ok" } else { "FAIL" },
            c.detail
        ));
    }
    Ok(RunResult {
        passed,
        text: out.text,
        report: Report {
            command: command.to_string(),
            input,
            raw: out.raw,
            integer: out.integer,
            residual: out.residual,
            grid: out.grid,
            elapsed_ms: 0,
            checks: out.checks,
            details: out.details,
            error: None,
        },
    })
}

fn dispatch(cli: &Cli) -> Result<RunResult, CliError> {
    match &cli.command {
        Command::Winding { map, grid, regular_value } => {
            let tol = tol_for(cli, DEFAULT_TOL)?;
            let lift = spec(registry::circle_map(map))?;
            let n = grid.unwrap_or(512);
            let g = grid_usage(PeriodicGrid1D::standard(n))?;
            let gs = n.to_string();
            let snap =
                winding_number(&lift, &g, tol).map_err(|e| fail("winding", map, e))?;
            let mut out = snap_outcome("winding", &snap, Some(gs));
            if let Some(v) = regular_value {
                let oracle =
                    degree_circle_preimage(&lift, *v).map_err(|e| fail("winding", map, e))?;
                out.checks.push(Check {
                    name: "preimage-oracle".into(),
                    passed: oracle.degree == snap.snapped,
                    detail: format!(
                        "sign sum {} over {} preimages of {v}",
                        oracle.degree,
                        oracle.preimages.len()
                    ),
                });
            }
            done("winding", map.clone(), out)
        }

        Command::SphereDegree { map, grid } => {
            let tol = tol_for(cli, DEFAULT_TOL)?;
            let m = spec(registry::sphere_map(map))?;
            let c = counts_or(grid.as_deref(), &[32, 64], "grid")?;
            let g = grid_usage(SphereGrid2::new(c[0], c[1]))?;
            let snap =
                degree_sphere2(&m, &g, tol).map_err(|e| fail("sphere-degree", map, e))?;
            done("sphere-degree", map.clone(), snap_outcome("degree", &snap, Some(format!("{},{}", c[0], c[1]))))
        }

        Command::VfIndex { field, surface, grid } => {
            let tol = tol_for(cli, DEFAULT_TOL)?;
            let input = format!("{field} on {surface}");
            let kind = surface.split(':').next().unwrap_or("");
            match kind {
                "circle" | "ellipse" => {
                    let f = spec(registry::plane_field(field))?;
                    let s = spec(registry::plane_surface(surface))?;
                    let n = counts_or(grid.as_deref(), &[512], "grid")?[0];
                    let g = grid_usage(PeriodicGrid1D::standard(n))?;
                    let snap = index_wrt_surface_2d(&f, &s, &g, tol)
                        .map_err(|e| fail("vf-index", &input, e))?;
                    done("vf-index", input.clone(), snap_outcome("index", &snap, Some(n.to_string())))
                }
                "sphere" | "ellipsoid" => {
                    let f = spec(registry::space_field_or_expr(field))?;
                    let s = spec(registry::space_surface(surface))?;
                    let c = counts_or(grid.as_deref(), &[32, 64], "grid")?;
                    let g = grid_usage(SphereGrid2::new(c[0], c[1]))?;
                    let snap = index_wrt_surface_3d(&f, &s, &g, tol)
                        .map_err(|e| fail("vf-index", &input, e))?;
                    done("vf-index", input.clone(), snap_outcome("index", &snap, Some(format!("{},{}", c[0], c[1]))))
                }
                other => Err(CliError::Usage(format!(
                    "unknown surface {other:?}; available: circle, ellipse, sphere, ellipsoid"
                ))),
            }
        }

        Command::VfPointIndex { field, point, radius, samples } => {
            let tol = tol_for(cli, DEFAULT_TOL)?;
            let f = spec(registry::plane_field(field))?;
            let center = parse_point2(point)?;
            let input = format!("{field} at ({}, {})", center[0], center[1]);
            let snap = index_at_point_2d(
                |x, y| f.eval([x, y])[0],
                |x, y| f.eval([x, y])[1],
                center,
                *radius,
                *samples,
                tol,
            )
            .map_err(|e| fail("vf-point-index", &input, e))?;
            done("vf-point-index", input.clone(), snap_outcome("index", &snap, Some(samples.to_string())))
        }

        Command::Additivity { field, outer, radius, grid } => {
            let tol = tol_for(cli, DEFAULT_TOL)?;
            let f = spec(registry::plane_field(field))?;
            let s = spec(registry::plane_surface(outer))?;
            let input = format!("{field} on {outer}");
            let n = grid.unwrap_or(512);
            let g = grid_usage(PeriodicGrid1D::standard(n))?;
            let zeros = f.zeros().to_vec();
            let r = index_additivity_report_2d(&f, &s, &zeros, *radius, &g, tol)
                .map_err(|e| fail("additivity", &input, e))?;
            let checks = vec![Check {
                name: "additivity".into(),
                passed: r.balanced(),
                detail: format!(
                    "outer {} vs sum {} over {} zeros",
                    r.outer.snapped,
                    r.sum,
                    r.per_point.len()
                ),
            }];
            let text = format!(
                "outer = {} (raw {:.6}), zero points sum = {}",
                r.outer.snapped, r.outer.raw, r.sum
            );
            done(
                "additivity",
                input,
                Outcome {
                    raw: Some(r.outer.raw),
                    integer: Some(r.outer.snapped),
                    residual: Some(r.outer.residual),
                    grid: Some(n.to_string()),
                    checks,
                    details: Some(json!({
                        "outer": r.outer,
                        "per_point": r.per_point,
                        "sum": r.sum,
                    })),
                    text,
                },
            )
        }

        Command::Monopole { field, grid } => {
            let tol = tol_for(cli, DEFAULT_TOL)?;
            let f = spec(registry::higgs_field(field))?;
            let c = counts_or(grid.as_deref(), &[32, 64], "grid")?;
            let g = grid_usage(SphereGrid2::new(c[0], c[1]))?;
            let snap = monopole_charge(&f, &g, tol).map_err(|e| fail("monopole", field, e))?;
            done("monopole", field.clone(), snap_outcome("charge", &snap, Some(format!("{},{}", c[0], c[1]))))
        }

        Command::Instanton { map, grid } => {
            let tol = tol_for(cli, DEFAULT_TOL)?;
            let m = spec(registry::su2_map(map))?;
            let c = counts_or(grid.as_deref(), &[24, 24, 48], "grid")?;
            let g = grid_usage(SphereGrid3::new(c[0], c[1], c[2]))?;
            let snap =
                instanton_charge_boundary(&m, &g, tol).map_err(|e| fail("instanton", map, e))?;
            done("instanton", map.clone(), snap_outcome("charge", &snap, Some(format!("{},{},{}", c[0], c[1], c[2]))))
        }

        Command::McIdentity { map, samples, seed, bound } => {
            let m = spec(registry::su2_map(map))?;
            if *samples == 0 {
                return Err(CliError::Usage("samples must be positive".into()));
            }
            if !(*bound > 0.0) {
                return Err(CliError::Usage(format!("bound {bound} must be positive")));
            }
            let pts = random_s3_samples(*samples, *seed);
            let res =
                maurer_cartan_residual(&m, &pts).map_err(|e| fail("mc-identity", map, e))?;
            let checks = vec![Check {
                name: "bound".into(),
                passed: res <= *bound,
                detail: format!("max residual {} vs bound {}", sci(res), sci(*bound)),
            }];
            let text = format!("residual = {} over {} samples (bound {})", sci(res), samples, sci(*bound));
            done(
                "mc-identity",
                map.clone(),
                Outcome {
                    residual: Some(res),
                    checks,
                    details: Some(json!({
                        "samples": samples,
                        "seed": seed,
                        "bound": bound,
                    })),
                    text,
                    ..Default::default()
                },
            )
        }

        Command::ProductCharge { map1, map2, grid } => {
            let tol = tol_for(cli, DEFAULT_TOL)?;
            let m1 = spec(registry::su2_map(map1))?;
            let m2 = spec(registry::su2_map(map2))?;
            let input = format!("{map1} * {map2}");
            let c = counts_or(grid.as_deref(), &[24, 24, 48], "grid")?;
            let g = grid_usage(SphereGrid3::new(c[0], c[1], c[2]))?;
            let r = product_charge_report(&m1, &m2, &g, tol)
                .map_err(|e| fail("product-charge", &input, e))?;
            let checks = vec![Check {
                name: "additive".into(),
                passed: r.additive(),
                detail: format!(
                    "{} + {} vs {}",
                    r.q1.snapped, r.q2.snapped, r.q_product.snapped
                ),
            }];
            let text = format!(
                "Q1 = {}, Q2 = {}, Q(product) = {}",
                r.q1.snapped, r.q2.snapped, r.q_product.snapped
            );
            done(
                "product-charge",
                input,
                Outcome {
                    raw: Some(r.q_product.raw),
                    integer: Some(r.q_product.snapped),
                    residual: Some(r.q_product.residual),
                    grid: Some(format!("{},{},{}", c[0], c[1], c[2])),
                    checks,
                    details: Some(json!({
                        "q1": r.q1,
                        "q2": r.q2,
                        "q_product": r.q_product,
                    })),
                    text,
                },
            )
        }

        Command::ChernBall { field, radius, grid } => {
            let tol = tol_for(cli, CHERN_DEFAULT_TOL)?;
            let f = spec(registry::gauge_field(field))?;
            if !(*radius > 0.0 && radius.is_finite()) {
                return Err(CliError::Usage(format!("radius {radius} must be positive")));
            }
            let parts = match grid.as_deref() {
                Some(t) => split_counts(t, "grid")?,
                None => vec![48, 16, 16, 32],
            };
            let (radial, angular) = match parts.len() {
                3 => (48, [parts[0], parts[1], parts[2]]),
                4 => (parts[0], [parts[1], parts[2], parts[3]]),
                n => {
                    return Err(CliError::Usage(format!(
                        "grid: expected radial,chi,theta,phi or chi,theta,phi, got {n} counts"
                    )))
                }
            };
            let g = grid_usage(SphereGrid3::new(angular[0], angular[1], angular[2]))?;
            let raw = chern_number_ball(&f, [0.0; 4], *radius, radial, &g)
                .map_err(|e| fail("chern-ball", field, e))?;
            let snap = snap_integer(raw, tol).map_err(|e| fail("chern-ball", field, e))?;
            let mut out = snap_outcome("Q", &snap, Some(format!("{radial},{},{},{}", angular[0], angular[1], angular[2])));
            out.text = format!(
                "Q = {} (raw {:.6}, residual {}, ball radius {radius})",
                snap.snapped,
                snap.raw,
                sci(snap.residual)
            );
            done("chern-ball", field.clone(), out)
        }

        Command::Euler { mesh } => {
            let m = spec(registry::mesh_spec(mesh))?
                .load()
                .map_err(|e| fail("euler", mesh, e))?;
            let r = euler_characteristic(&m);
            let text = format!(
                "chi = {} (V={}, E={}, F={})",
                r.chi, r.vertex_count, r.edge_count, r.face_count
            );
            done(
                "euler",
                mesh.clone(),
                Outcome {
                    integer: Some(r.chi),
                    details: Some(serde_json::to_value(r).expect("counts serialize")),
                    text,
                    ..Default::default()
                },
            )
        }

        Command::AngleDefect { mesh } => {
            let tol = tol_for(cli, DEFAULT_TOL)?;
            let m = spec(registry::mesh_spec(mesh))?
                .load()
                .map_err(|e| fail("angle-defect", mesh, e))?;
            let defect = angle_defect_chi(&m);
            let snap = snap_integer(defect, tol).map_err(|e| fail("angle-defect", mesh, e))?;
            let chi = euler_characteristic(&m).chi;
            let checks = vec![Check {
                name: "matches-euler".into(),
                passed: snap.snapped == chi,
                detail: format!("defect {defect:.9} vs chi {chi}"),
            }];
            let text = format!("defect chi = {} (raw {:.9}, combinatorial chi = {chi})", snap.snapped, defect);
            done(
                "angle-defect",
                mesh.clone(),
                Outcome {
                    raw: Some(defect),
                    integer: Some(snap.snapped),
                    residual: Some(snap.residual),
                    checks,
                    text,
                    ..Default::default()
                },
            )
        }

        Command::Genus { mesh } => {
            let m = spec(registry::mesh_spec(mesh))?
                .load()
                .map_err(|e| fail("genus", mesh, e))?;
            let g = genus(&m).map_err(|e| fail("genus", mesh, e))?;
            let chi = euler_characteristic(&m).chi;
            done(
                "genus",
                mesh.clone(),
                Outcome {
                    integer: Some(g as i64),
                    details: Some(json!({ "chi": chi })),
                    text: format!("genus = {g} (chi = {chi})"),
                    ..Default::default()
                },
            )
        }

        Command::GaussBonnetRev { surface, grid } => {
            let tol = tol_for(cli, DEFAULT_TOL)?;
            let s = spec(registry::revolution_surface(surface))?;
            let n = grid.unwrap_or(48);
            let snap = gauss_bonnet_revolution(&s, n, tol)
                .map_err(|e| fail("gauss-bonnet-rev", surface, e))?;
            done("gauss-bonnet-rev", surface.clone(), snap_outcome("chi", &snap, Some(n.to_string())))
        }

        Command::PoincareHopf { field } => {
            let tol = tol_for(cli, DEFAULT_TOL)?;
            let f = spec(registry::tangent_field(field))?;
            let r = poincare_hopf_report(&f, tol).map_err(|e| fail("poincare-hopf", field, e))?;
            let mut text = format!("surface = {}, chi = {}", f.surface, r.chi);
            for z in &r.zeros {
                text.push_str(&format!(
                    "\nzero on {} at ({:.6}, {:.6}) [ambient ({:.6}, {:.6}, {:.6})]: index {}",
                    z.chart, z.uv[0], z.uv[1], z.ambient[0], z.ambient[1], z.ambient[2], z.index
                ));
            }
            text.push_str(&format!("\nindex sum = {}", r.index_sum));
            let checks = vec![Check {
                name: "matches-chi".into(),
                passed: r.matches(),
                detail: format!("sum {} vs chi {}", r.index_sum, r.chi),
            }];
            let zeros: Vec<serde_json::Value> = r
                .zeros
                .iter()
                .map(|z| {
                    json!({
                        "chart": z.chart,
                        "uv": z.uv,
                        "ambient": z.ambient,
                        "index": z.index,
                    })
                })
                .collect();
            done(
                "poincare-hopf",
                field.clone(),
                Outcome {
                    integer: Some(r.index_sum),
                    checks,
                    details: Some(json!({
                        "surface": f.surface,
                        "chi": r.chi,
                        "zeros": zeros,
                    })),
                    text,
                    ..Default::default()
                },
            )
        }

        Command::OmegaNormalize { dim, grid } => {
            let tol = tol_for(cli, DEFAULT_TOL)?;
            let input = format!("S^{dim}");
            let (any, gs) = match dim {
                1 => {
                    let n = counts_or(grid.as_deref(), &[256], "grid")?[0];
                    (AnySphereGrid::S1(grid_usage(PeriodicGrid1D::standard(n))?), n.to_string())
                }
                2 => {
                    let c = counts_or(grid.as_deref(), &[32, 64], "grid")?;
                    (
                        AnySphereGrid::S2(grid_usage(SphereGrid2::new(c[0], c[1]))?),
                        format!("{},{}", c[0], c[1]),
                    )
                }
                3 => {
                    let c = counts_or(grid.as_deref(), &[24, 24, 48], "grid")?;
                    (
                        AnySphereGrid::S3(grid_usage(SphereGrid3::new(c[0], c[1], c[2]))?),
                        format!("{},{},{}", c[0], c[1], c[2]),
                    )
                }
                other => {
                    return Err(CliError::Usage(format!("dim {other} is not 1, 2 or 3")));
                }
            };
            let snap =
                integrate_omega_over_sphere(&any, tol).map_err(|e| fail("omega-normalize", &input, e))?;
            let mut out = snap_outcome("total", &snap, Some(gs));
            out.text = format!(
                "total = {} (raw {:.9}, residual {})",
                snap.snapped,
                snap.raw,
                sci(snap.residual)
            );
            out.checks.push(Check {
                name: "unit-total".into(),
                passed: snap.snapped == 1,
                detail: format!("total {} vs 1", snap.snapped),
            });
            done("omega-normalize", input, out)
        }
    }
}
