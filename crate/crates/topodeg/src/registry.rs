//! Named builders for everything the command line can ask for, spelled
//!
//!   name
//!   name:arg,arg
//!   name:key=expr,key=expr
//!
//! Bad spellings come back as [`UsageError`] so the binary can exit with
//! the usage status instead of the computation-failed one. Every built-in
//! map carries its analytic derivatives; only expression-defined fields
//! fall back to differences.

use std::fmt;
use std::path::PathBuf;

use crate::degree::{CircleMapLift, SphereMap2};
use crate::error::TopoError;
use crate::expr::Expr;
use crate::field_index::{Surface2, Surface3, VectorField2, VectorField3};
use crate::gauge::{GaugeFieldR4, HiggsBoundaryField, Su2Map};
use crate::poincare_hopf::TangentField;
use crate::surfaces::{corpus, load_off, SurfaceOfRevolution, TriMesh};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::error::Error for UsageError {}

struct Spec<'a> {
    full: &'a str,
    name: &'a str,
    items: Vec<(Option<&'a str>, &'a str)>,
}

impl<'a> Spec<'a> {
    fn parse(text: &'a str) -> Result<Spec<'a>, UsageError> {
        let (name, rest) = match text.split_once(':') {
            Some((n, r)) => (n.trim(), Some(r)),
            None => (text.trim(), None),
        };
        if name.is_empty() {
            return Err(UsageError(format!("empty name in {text:?}")));
        }
        let items = match rest {
            None => Vec::new(),
            Some(r) => r
                .split(',')
                .map(|item| match item.split_once('=') {
                    Some((k, v)) => (Some(k.trim()), v.trim()),
                    None => (None, item.trim()),
                })
                .collect(),
        };
        Ok(Spec { full: text, name, items })
    }

    fn no_args(&self) -> Result<(), UsageError> {
        if self.items.is_empty() {
            Ok(())
        } else {
            Err(UsageError(format!("{} takes no arguments, got {:?}", self.name, self.full)))
        }
    }

    /// Positional values, at least `min` and at most `max` of them.
    fn positional(&self, min: usize, max: usize) -> Result<Vec<&'a str>, UsageError> {
        let mut out = Vec::new();
        for (k, v) in &self.items {
            if let Some(k) = k {
                return Err(UsageError(format!("{} takes positional arguments, not {k}=", self.name)));
            }
            out.push(*v);
        }
        if out.len() < min || out.len() > max {
            let want = if min == max { format!("{min}") } else { format!("{min} to {max}") };
            return Err(UsageError(format!(
                "{} takes {want} argument(s), got {} in {:?}",
                self.name,
                out.len(),
                self.full
            )));
        }
        Ok(out)
    }

    fn keyed(&self, key: &str) -> Result<&'a str, UsageError> {
        self.items
            .iter()
            .find(|(k, _)| *k == Some(key))
            .map(|(_, v)| *v)
            .ok_or_else(|| UsageError(format!("{} needs {key}=... in {:?}", self.name, self.full)))
    }
}

fn int(text: &str, what: &str) -> Result<i64, UsageError> {
    text.parse().map_err(|_| UsageError(format!("{what} must be an integer, got {text:?}")))
}

fn float(text: &str, what: &str) -> Result<f64, UsageError> {
    text.parse().map_err(|_| UsageError(format!("{what} must be a number, got {text:?}")))
}

fn build<T>(r: crate::error::Result<T>) -> Result<T, UsageError> {
    r.map_err(|e| UsageError(e.to_string()))
}

/// Lifts of circle maps: `power:n` is phi -> n phi, `perturbed:n,a,m` is
/// phi -> n phi + a sin(m phi).
pub fn circle_map(text: &str) -> Result<CircleMapLift, UsageError> {
    let spec = Spec::parse(text)?;
    match spec.name {
        "power" => {
            let args = spec.positional(1, 1)?;
            let n = int(args[0], "winding")? as f64;
            build(CircleMapLift::with_derivative(move |phi| n * phi, move |_| n))
        }
        "perturbed" => {
            let args = spec.positional(3, 3)?;
            let n = int(args[0], "winding")? as f64;
            let a = float(args[1], "amplitude")?;
            let m = int(args[2], "mode")? as f64;
            build(CircleMapLift::with_derivative(
                move |phi| n * phi + a * (m * phi).sin(),
                move |phi| n + a * m * (m * phi).cos(),
            ))
        }
        other => Err(UsageError(format!(
            "unknown circle map {other:?}; available: power:n, perturbed:n,a,m"
        ))),
    }
}

/// Sphere-to-sphere maps in the polar chart: `identity`, `antipodal`,
/// `twist:k` (theta, k phi).
pub fn sphere_map(text: &str) -> Result<SphereMap2, UsageError> {
    let spec = Spec::parse(text)?;
    match spec.name {
        "identity" => {
            spec.no_args()?;
            build(SphereMap2::with_partials(
                |theta, _| theta,
                |_, phi| phi,
                |_, _| [[1.0, 0.0], [0.0, 1.0]],
            ))
        }
        "antipodal" => {
            spec.no_args()?;
            build(SphereMap2::with_partials(
                |theta, _| std::f64::consts::PI - theta,
                |_, phi| phi + std::f64::consts::PI,
                |_, _| [[-1.0, 0.0], [0.0, 1.0]],
            ))
        }
        "twist" => {
            let args = spec.positional(1, 1)?;
            let k = int(args[0], "twist")? as f64;
            build(SphereMap2::with_partials(
                |theta, _| theta,
                move |_, phi| k * phi,
                move |_, _| [[1.0, 0.0], [0.0, k]],
            ))
        }
        other => Err(UsageError(format!(
            "unknown sphere map {other:?}; available: identity, antipodal, twist:k"
        ))),
    }
}

/// Plane fields: complex powers `power:n` (zero of order n at the origin),
/// `dipole` (z^2 - 1), `saddle`, `source`, `sink`.
pub fn plane_field(text: &str) -> Result<VectorField2, UsageError> {
    let spec = Spec::parse(text)?;
    match spec.name {
        "power" => {
            let args = spec.positional(1, 1)?;
            let n = int(args[0], "power")?;
            if n.unsigned_abs() > 16 {
                return Err(UsageError(format!("power {n} out of range (|n| <= 16)")));
            }
            let n = n as i32;
            let field = VectorField2::with_jacobian(
                move |x| complex_power(x, n),
                move |x| {
                    let d = complex_power(x, n - 1);
                    let nf = n as f64;
                    [[nf * d[0], -nf * d[1]], [nf * d[1], nf * d[0]]]
                },
            );
            Ok(if n > 0 { field.with_zeros(vec![[0.0, 0.0]]) } else { field })
        }
        "dipole" => {
            spec.no_args()?;
            Ok(VectorField2::with_jacobian(
                |x| [x[0] * x[0] - x[1] * x[1] - 1.0, 2.0 * x[0] * x[1]],
                |x| [[2.0 * x[0], -2.0 * x[1]], [2.0 * x[1], 2.0 * x[0]]],
            )
            .with_zeros(vec![[1.0, 0.0], [-1.0, 0.0]]))
        }
        "saddle" => {
            spec.no_args()?;
            Ok(VectorField2::with_jacobian(|x| [x[0], -x[1]], |_| [[1.0, 0.0], [0.0, -1.0]])
                .with_zeros(vec![[0.0, 0.0]]))
        }
        "source" => {
            spec.no_args()?;
            Ok(VectorField2::with_jacobian(|x| x, |_| [[1.0, 0.0], [0.0, 1.0]])
                .with_zeros(vec![[0.0, 0.0]]))
        }
        "sink" => {
            spec.no_args()?;
            Ok(VectorField2::with_jacobian(
                |x| [-x[0], -x[1]],
                |_| [[-1.0, 0.0], [0.0, -1.0]],
            )
            .with_zeros(vec![[0.0, 0.0]]))
        }
        other => Err(UsageError(format!(
            "unknown plane field {other:?}; available: power:n, dipole, saddle, source, sink"
        ))),
    }
}

/// z = x + iy raised to an integer power, as a plane vector.
fn complex_power(x: [f64; 2], n: i32) -> [f64; 2] {
    let (mut re, mut im) = (1.0_f64, 0.0_f64);
    let (zx, zy) = if n >= 0 {
        (x[0], x[1])
    } else {
        let r2 = x[0] * x[0] + x[1] * x[1];
        (x[0] / r2, -x[1] / r2)
    };
    for _ in 0..n.unsigned_abs() {
        (re, im) = (re * zx - im * zy, re * zy + im * zx);
    }
    [re, im]
}

/// Space fields: `hedgehog` (x), `mirror` (x, y, -z), `shift:a,b,c`
/// (zero moved to (a, b, c)).
pub fn space_field(text: &str) -> Result<VectorField3, UsageError> {
    let spec = Spec::parse(text)?;
    match spec.name {
        "hedgehog" => {
            spec.no_args()?;
            Ok(VectorField3::with_jacobian(|x| x, |_| identity3()).with_zeros(vec![[0.0; 3]]))
        }
        "mirror" => {
            spec.no_args()?;
            Ok(VectorField3::with_jacobian(
                |x| [x[0], x[1], -x[2]],
                |_| [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]],
            )
            .with_zeros(vec![[0.0; 3]]))
        }
        "shift" => {
            let args = spec.positional(3, 3)?;
            let p = [
                float(args[0], "shift x")?,
                float(args[1], "shift y")?,
                float(args[2], "shift z")?,
            ];
            Ok(VectorField3::with_jacobian(
                move |x| [x[0] - p[0], x[1] - p[1], x[2] - p[2]],
                |_| identity3(),
            )
            .with_zeros(vec![p]))
        }
        other => Err(UsageError(format!(
            "unknown space field {other:?}; available: hedgehog, mirror, shift:a,b,c"
        ))),
    }
}

fn identity3() -> [[f64; 3]; 3] {
    [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
}

/// Boundary Higgs fields: `hedgehog[:scale]`, `twist:k[,scale]`,
/// `constant:x,y,z`.
pub fn higgs_field(text: &str) -> Result<HiggsBoundaryField, UsageError> {
    let spec = Spec::parse(text)?;
    match spec.name {
        "hedgehog" => {
            let args = spec.positional(0, 1)?;
            let scale = args.first().map(|a| float(a, "scale")).transpose()?.unwrap_or(1.0);
            Ok(HiggsBoundaryField::hedgehog(scale))
        }
        "twist" => {
            let args = spec.positional(1, 2)?;
            let k = bounded_int(args[0], "twist", 16)?;
            let scale = args.get(1).map(|a| float(a, "scale")).transpose()?.unwrap_or(1.0);
            Ok(HiggsBoundaryField::twist(k, scale))
        }
        "constant" => {
            let args = spec.positional(3, 3)?;
            Ok(HiggsBoundaryField::constant([
                float(args[0], "x component")?,
                float(args[1], "y component")?,
                float(args[2], "z component")?,
            ]))
        }
        other => Err(UsageError(format!(
            "unknown Higgs field {other:?}; available: hedgehog[:scale], twist:k[,scale], constant:x,y,z"
        ))),
    }
}

fn bounded_int(text: &str, what: &str, bound: i64) -> Result<i32, UsageError> {
    let k = int(text, what)?;
    if k.abs() > bound {
        return Err(UsageError(format!("{what} {k} out of range (|{what}| <= {bound})")));
    }
    Ok(k as i32)
}

/// Group-valued boundary maps: `omega:k` (charge k winding), `product:k1,k2`,
/// `constant`.
pub fn su2_map(text: &str) -> Result<Su2Map, UsageError> {
    let spec = Spec::parse(text)?;
    match spec.name {
        "omega" => {
            let args = spec.positional(1, 1)?;
            Ok(Su2Map::omega_power(bounded_int(args[0], "winding", 16)?))
        }
        "product" => {
            let args = spec.positional(2, 2)?;
            let k1 = bounded_int(args[0], "winding", 16)?;
            let k2 = bounded_int(args[1], "winding", 16)?;
            Ok(Su2Map::product(&Su2Map::omega_power(k1), &Su2Map::omega_power(k2)))
        }
        "constant" => {
            spec.no_args()?;
            Ok(Su2Map::constant(crate::gauge::UnitQuat::ONE))
        }
        other => Err(UsageError(format!(
            "unknown map {other:?}; available: omega:k, product:k1,k2, constant"
        ))),
    }
}

/// Gauge potentials on R^4: `bpst:rho` (unit charge, centered at the
/// origin), `pure-gauge:k`, `zero`.
pub fn gauge_field(text: &str) -> Result<GaugeFieldR4, UsageError> {
    let spec = Spec::parse(text)?;
    match spec.name {
        "bpst" => {
            let args = spec.positional(1, 1)?;
            let rho = float(args[0], "size rho")?;
            build(GaugeFieldR4::bpst(rho, [0.0; 4]))
        }
        "pure-gauge" => {
            let args = spec.positional(1, 1)?;
            let k = bounded_int(args[0], "winding", 16)?;
            build(GaugeFieldR4::pure_gauge(&Su2Map::omega_power(k)))
        }
        "zero" => {
            spec.no_args()?;
            Ok(GaugeFieldR4::zero())
        }
        other => Err(UsageError(format!(
            "unknown gauge field {other:?}; available: bpst:rho, pure-gauge:k, zero"
        ))),
    }
}

/// Where a mesh comes from: a bundled corpus name or an OFF file (anything
/// ending in `.off`). Spelling mistakes are usage errors; unreadable or
/// invalid files only surface at [`MeshSpec::load`] time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeshSpec {
    Corpus(String),
    File(PathBuf),
}

pub fn mesh_spec(text: &str) -> Result<MeshSpec, UsageError> {
    if text.to_ascii_lowercase().ends_with(".off") {
        return Ok(MeshSpec::File(PathBuf::from(text)));
    }
    if corpus::CORPUS_NAMES.contains(&text) {
        Ok(MeshSpec::Corpus(text.to_string()))
    } else {
        Err(UsageError(format!(
            "unknown mesh {text:?}; available: {}, or a path ending in .off",
            corpus::CORPUS_NAMES.join(", ")
        )))
    }
}

impl MeshSpec {
    pub fn load(&self) -> Result<TriMesh, TopoError> {
        match self {
            MeshSpec::Corpus(name) => {
                Ok(corpus::by_name(name).expect("corpus names are validated at parse time"))
            }
            MeshSpec::File(path) => Ok(load_off(path)?),
        }
    }
}

/// Surfaces of revolution: `sphere[:radius]`, `torus[:R,r]`.
pub fn revolution_surface(text: &str) -> Result<SurfaceOfRevolution, UsageError> {
    let spec = Spec::parse(text)?;
    match spec.name {
        "sphere" => {
            let args = spec.positional(0, 1)?;
            let radius = args.first().map(|a| float(a, "radius")).transpose()?.unwrap_or(1.0);
            build(SurfaceOfRevolution::sphere(radius))
        }
        "torus" => {
            let args = spec.positional(0, 2)?;
            let (big_r, small_r) = match args.len() {
                0 => (2.0, 1.0),
                2 => (float(args[0], "major radius")?, float(args[1], "tube radius")?),
                _ => {
                    return Err(UsageError(
                        "torus takes both radii or neither: torus:R,r".into(),
                    ))
                }
            };
            build(SurfaceOfRevolution::torus(big_r, small_r))
        }
        other => Err(UsageError(format!(
            "unknown revolution surface {other:?}; available: sphere[:radius], torus[:R,r]"
        ))),
    }
}

/// Closed curves in the plane: `circle[:cx,cy,r]` (unit circle at the
/// origin by default), `ellipse:cx,cy,a,b`.
pub fn plane_surface(text: &str) -> Result<Surface2, UsageError> {
    let spec = Spec::parse(text)?;
    match spec.name {
        "circle" => {
            let args = spec.positional(0, 3)?;
            match args.len() {
                0 => Ok(Surface2::Circle { center: [0.0, 0.0], radius: 1.0 }),
                3 => Ok(Surface2::Circle {
                    center: [float(args[0], "center x")?, float(args[1], "center y")?],
                    radius: float(args[2], "radius")?,
                }),
                _ => Err(UsageError("circle takes no arguments or cx,cy,r".into())),
            }
        }
        "ellipse" => {
            let args = spec.positional(4, 4)?;
            Ok(Surface2::Ellipse {
                center: [float(args[0], "center x")?, float(args[1], "center y")?],
                semi_axes: [float(args[2], "semi-axis a")?, float(args[3], "semi-axis b")?],
            })
        }
        other => Err(UsageError(format!(
            "unknown curve {other:?}; available: circle[:cx,cy,r], ellipse:cx,cy,a,b"
        ))),
    }
}

/// Closed surfaces in space: `sphere[:cx,cy,cz,r]` (unit sphere at the
/// origin by default), `ellipsoid:cx,cy,cz,a,b,c`.
pub fn space_surface(text: &str) -> Result<Surface3, UsageError> {
    let spec = Spec::parse(text)?;
    match spec.name {
        "sphere" => {
            let args = spec.positional(0, 4)?;
            match args.len() {
                0 => Ok(Surface3::Sphere { center: [0.0; 3], radius: 1.0 }),
                4 => Ok(Surface3::Sphere {
                    center: [
                        float(args[0], "center x")?,
                        float(args[1], "center y")?,
                        float(args[2], "center z")?,
                    ],
                    radius: float(args[3], "radius")?,
                }),
                _ => Err(UsageError("sphere takes no arguments or cx,cy,cz,r".into())),
            }
        }
        "ellipsoid" => {
            let args = spec.positional(6, 6)?;
            Ok(Surface3::Ellipsoid {
                center: [
                    float(args[0], "center x")?,
                    float(args[1], "center y")?,
                    float(args[2], "center z")?,
                ],
                semi_axes: [
                    float(args[3], "semi-axis a")?,
                    float(args[4], "semi-axis b")?,
                    float(args[5], "semi-axis c")?,
                ],
            })
        }
        other => Err(UsageError(format!(
            "unknown surface {other:?}; available: sphere[:cx,cy,cz,r], ellipsoid:cx,cy,cz,a,b,c"
        ))),
    }
}

/// Tangent fields for the index-sum check. Built-ins:
/// `sphere-gradient-z`, `sphere-rotation-z`, `torus-constant`,
/// `torus-height-gradient`. Custom fields take expressions:
/// `sphere-ambient:vx=...,vy=...,vz=...` in x, y, z (projected onto the
/// sphere) and `torus-chart:vu=...,vv=...` in the periodic u, v.
pub fn tangent_field(text: &str) -> Result<TangentField, UsageError> {
    let spec = Spec::parse(text)?;
    match spec.name {
        "sphere-gradient-z" => {
            spec.no_args()?;
            Ok(TangentField::sphere_gradient_z())
        }
        "sphere-rotation-z" => {
            spec.no_args()?;
            Ok(TangentField::sphere_rotation_z())
        }
        "torus-constant" => {
            spec.no_args()?;
            Ok(TangentField::torus_constant())
        }
        "torus-height-gradient" => {
            spec.no_args()?;
            Ok(TangentField::torus_height_gradient())
        }
        "sphere-ambient" => {
            let f = [
                component(&spec, "vx", &["x", "y", "z"])?,
                component(&spec, "vy", &["x", "y", "z"])?,
                component(&spec, "vz", &["x", "y", "z"])?,
            ];
            let [fx, fy, fz] = f;
            Ok(TangentField::sphere_from_ambient(move |p| {
                [fx.eval(&p), fy.eval(&p), fz.eval(&p)]
            }))
        }
        "torus-chart" => {
            let fu = component(&spec, "vu", &["u", "v"])?;
            let fv = component(&spec, "vv", &["u", "v"])?;
            Ok(TangentField::torus_from_chart(move |u, v| {
                [fu.eval(&[u, v]), fv.eval(&[u, v])]
            }))
        }
        other => Err(UsageError(format!(
            "unknown tangent field {other:?}; available: sphere-gradient-z, sphere-rotation-z, \
             torus-constant, torus-height-gradient, sphere-ambient:vx=..,vy=..,vz=.., \
             torus-chart:vu=..,vv=.."
        ))),
    }
}

fn component(spec: &Spec<'_>, key: &str, vars: &[&str]) -> Result<Expr, UsageError> {
    let text = spec.keyed(key)?;
    Expr::parse(text, vars).map_err(|e| UsageError(format!("{key}={text:?}: {e}")))
}

/// Ambient R^3 fields for index computations along closed surfaces, from
/// expressions in x, y, z: `expr:vx=..,vy=..,vz=..`. Shares the spelling
/// with [`space_field`] names.
pub fn space_field_or_expr(text: &str) -> Result<VectorField3, UsageError> {
    let spec = Spec::parse(text)?;
    if spec.name == "expr" {
        let f = [
            component(&spec, "vx", &["x", "y", "z"])?,
            component(&spec, "vy", &["x", "y", "z"])?,
            component(&spec, "vz", &["x", "y", "z"])?,
        ];
        let [fx, fy, fz] = f;
        return Ok(VectorField3::new(move |p| [fx.eval(&p), fy.eval(&p), fz.eval(&p)]));
    }
    space_field(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_grammar() {
        let s = Spec::parse("twist:3").unwrap();
        assert_eq!(s.name, "twist");
        assert_eq!(s.positional(1, 1).unwrap(), vec!["3"]);

        let s = Spec::parse("sphere-ambient:vx=0, vy = z ,vz=-y").unwrap();
        assert_eq!(s.keyed("vy").unwrap(), "z");
        assert_eq!(s.keyed("vz").unwrap(), "-y");
        assert!(s.keyed("vw").is_err());

        assert!(Spec::parse(":3").is_err());
        assert!(Spec::parse("power:1").unwrap().no_args().is_err());
    }

    #[test]
    fn circle_maps_build_and_wind() {
        let grid = crate::quadrature::PeriodicGrid1D::standard(128).unwrap();
        for (text, want) in [("power:3", 3), ("power:-2", -2), ("perturbed:2,0.4,3", 2)] {
            let map = circle_map(text).unwrap();
            let got = crate::degree::winding_number(&map, &grid, 1e-3).unwrap();
            assert_eq!(got.snapped, want, "{text}");
        }
        assert!(circle_map("power").is_err());
        assert!(circle_map("power:x").is_err());
        assert!(circle_map("spiral:1").is_err());
    }

    #[test]
    fn bounded_windings() {
        assert!(su2_map("omega:16").is_ok());
        let err = su2_map("omega:17").unwrap_err();
        assert!(err.0.contains("out of range"), "{err}");
        assert!(su2_map("product:2,-1").is_ok());
        assert!(higgs_field("twist:40").is_err());
    }

    #[test]
    fn plane_fields_know_their_zeros() {
        assert_eq!(plane_field("dipole").unwrap().zeros().len(), 2);
        assert_eq!(plane_field("power:3").unwrap().zeros().len(), 1);
        assert!(plane_field("power:-1").unwrap().zeros().is_empty());
        assert!(plane_field("vortex").is_err());
    }

    #[test]
    fn complex_power_jacobian_is_holomorphic() {
        let f = plane_field("power:-2").unwrap();
        let x = [0.7, -0.4];
        let h = 1e-6;
        let fx = f.eval([x[0] + h, x[1]]);
        let bx = f.eval([x[0] - h, x[1]]);
        let d_dx = [(fx[0] - bx[0]) / (2.0 * h), (fx[1] - bx[1]) / (2.0 * h)];
        let tangent = f.derivative(x, [1.0, 0.0], 1.0);
        assert!((d_dx[0] - tangent[0]).abs() < 1e-7);
        assert!((d_dx[1] - tangent[1]).abs() < 1e-7);
    }

    #[test]
    fn mesh_specs() {
        assert_eq!(mesh_spec("torus").unwrap(), MeshSpec::Corpus("torus".into()));
        assert!(matches!(mesh_spec("bundle/thing.off").unwrap(), MeshSpec::File(_)));
        assert!(mesh_spec("cube").is_err());

        let missing = MeshSpec::File(PathBuf::from("/nonexistent/x.off"));
        assert!(missing.load().is_err());
    }

    #[test]
    fn expression_fields_evaluate() {
        let field = tangent_field("torus-chart:vu=-sin(u),vv=cos(v)*0.5").unwrap();
        let c = field.charts()[0].components(0.3, 1.0);
        assert!((c[0] + 0.3_f64.sin()).abs() < 1e-15);
        assert!((c[1] - 0.5 * 1.0_f64.cos()).abs() < 1e-15);

        let err = tangent_field("torus-chart:vu=-sin(w),vv=0").unwrap_err();
        assert!(err.0.contains("unknown name"), "{err}");
        assert!(tangent_field("torus-chart:vu=1").is_err(), "missing vv");
    }

    #[test]
    fn revolution_surfaces() {
        assert!(revolution_surface("sphere").is_ok());
        assert!(revolution_surface("sphere:3").is_ok());
        assert!(revolution_surface("torus:2,0.5").is_ok());
        assert!(revolution_surface("torus:0.5,2").is_err(), "needs R > r");
        assert!(revolution_surface("cone").is_err());
    }
}
