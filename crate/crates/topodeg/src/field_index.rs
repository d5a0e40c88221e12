//! Indices of vector fields with respect to closed surfaces.
//!
//! The index of a nonvanishing field V along a closed hypersurface is the
//! degree of its Gauss map x -> V(x)/|V(x)|, computed here as the integral
//! of the solid-angle density
//!
//!   det[ V | dV/dt^1 | ... | dV/dt^n ] / ( vol(S^n) |V|^(n+1) )
//!
//! over the surface parameters. In the plane this is the classical
//!
//!   ind = (1 / 2pi) * contour integral of (P dQ - Q dP) / (P^2 + Q^2),
//!
//! for V = (P, Q). The index depends only on which zeros the surface
//! encloses, so it must agree across shapes and radii and must add up over
//! the enclosed zeros; those are the checks this module's reports expose.

use crate::error::{Result, TopoError};
use crate::forms::{pullback_integral_s1, pullback_integral_s2, pullback_integral_s3, sphere2_point, sphere3_point};
use crate::linalg::{norm2, norm3, norm4};
use crate::quadrature::{snap_integer, IntegerSnapResult, PeriodicGrid1D, SphereGrid2, SphereGrid3};

const ZERO_ON_SURFACE: f64 = 1e-10;
const AMBIENT_STEP: f64 = 1e-5;
const PARAM_STEP: f64 = 1e-6;

macro_rules! vector_field {
    ($name:ident, $n:literal, $norm:ident) => {
        /// A vector field on R^n given by closures, with optional analytic
        /// Jacobian (rows dV_i/dx_j) and a list of declared zeros.
        pub struct $name {
            v: Box<dyn Fn([f64; $n]) -> [f64; $n] + Send + Sync>,
            jacobian: Option<Box<dyn Fn([f64; $n]) -> [[f64; $n]; $n] + Send + Sync>>,
            zeros: Vec<[f64; $n]>,
        }

        impl $name {
            pub fn new(v: impl Fn([f64; $n]) -> [f64; $n] + Send + Sync + 'static) -> Self {
                Self {
                    v: Box::new(v),
                    jacobian: None,
                    zeros: Vec::new(),
                }
            }

            pub fn with_jacobian(
                v: impl Fn([f64; $n]) -> [f64; $n] + Send + Sync + 'static,
                jacobian: impl Fn([f64; $n]) -> [[f64; $n]; $n] + Send + Sync + 'static,
            ) -> Self {
                Self {
                    v: Box::new(v),
                    jacobian: Some(Box::new(jacobian)),
                    zeros: Vec::new(),
                }
            }

            /// Declares where the field vanishes; additivity reports use
            /// this list.
            pub fn with_zeros(mut self, zeros: Vec<[f64; $n]>) -> Self {
                self.zeros = zeros;
                self
            }

            pub fn eval(&self, x: [f64; $n]) -> [f64; $n] {
                (self.v)(x)
            }

            pub fn zeros(&self) -> &[[f64; $n]] {
                &self.zeros
            }

            /// Directional derivative of V along `tangent` at x: analytic
            /// Jacobian when present, ambient central difference otherwise.
            /// `scale` sets the difference step relative to the geometry.
            pub fn derivative(&self, x: [f64; $n], tangent: [f64; $n], scale: f64) -> [f64; $n] {
                if let Some(jac) = &self.jacobian {
                    let m = jac(x);
                    let mut out = [0.0; $n];
                    for i in 0..$n {
                        for j in 0..$n {
                            out[i] += m[i][j] * tangent[j];
                        }
                    }
                    return out;
                }
                let t_norm = $norm(tangent);
                if t_norm == 0.0 {
                    return [0.0; $n];
                }
                let h = AMBIENT_STEP * scale;
                let mut fwd = x;
                let mut bwd = x;
                for i in 0..$n {
                    fwd[i] += h * tangent[i] / t_norm;
                    bwd[i] -= h * tangent[i] / t_norm;
                }
                let (vf, vb) = ((self.v)(fwd), (self.v)(bwd));
                let mut out = [0.0; $n];
                for i in 0..$n {
                    out[i] = (vf[i] - vb[i]) / (2.0 * h) * t_norm;
                }
                out
            }
        }
    };
}

vector_field!(VectorField2, 2, norm2);
vector_field!(VectorField3, 3, norm3);
vector_field!(VectorField4, 4, norm4);

/// A closed curve in the plane, parametrized over [0, 2pi).
pub enum Surface2 {
    Circle { center: [f64; 2], radius: f64 },
    Ellipse { center: [f64; 2], semi_axes: [f64; 2] },
    Curve(Box<dyn Fn(f64) -> [f64; 2] + Send + Sync>),
}

impl Surface2 {
    fn check(&self) -> Result<()> {
        match self {
            Surface2::Circle { radius, .. } if *radius <= 0.0 => Err(TopoError::Geometry(
                format!("circle radius {radius} must be positive"),
            )),
            Surface2::Ellipse { semi_axes, .. } if semi_axes[0] <= 0.0 || semi_axes[1] <= 0.0 => {
                Err(TopoError::Geometry(format!(
                    "ellipse semi-axes {semi_axes:?} must be positive"
                )))
            }
            _ => Ok(()),
        }
    }

    fn point_and_tangent(&self, t: f64) -> ([f64; 2], [f64; 2]) {
        match self {
            Surface2::Circle { center, radius } => (
                [center[0] + radius * t.cos(), center[1] + radius * t.sin()],
                [-radius * t.sin(), radius * t.cos()],
            ),
            Surface2::Ellipse { center, semi_axes } => (
                [
                    center[0] + semi_axes[0] * t.cos(),
                    center[1] + semi_axes[1] * t.sin(),
                ],
                [-semi_axes[0] * t.sin(), semi_axes[1] * t.cos()],
            ),
            Surface2::Curve(f) => {
                let a = f(t + PARAM_STEP);
                let b = f(t - PARAM_STEP);
                (
                    f(t),
                    [
                        (a[0] - b[0]) / (2.0 * PARAM_STEP),
                        (a[1] - b[1]) / (2.0 * PARAM_STEP),
                    ],
                )
            }
        }
    }

    fn scale(&self) -> f64 {
        match self {
            Surface2::Circle { radius, .. } => *radius,
            Surface2::Ellipse { semi_axes, .. } => semi_axes[0].max(semi_axes[1]),
            Surface2::Curve(_) => 1.0,
        }
    }
}

/// A closed surface in R^3, charted by (theta, phi).
pub enum Surface3 {
    Sphere { center: [f64; 3], radius: f64 },
    Ellipsoid { center: [f64; 3], semi_axes: [f64; 3] },
    Patch(Box<dyn Fn(f64, f64) -> [f64; 3] + Send + Sync>),
}

impl Surface3 {
    fn check(&self) -> Result<()> {
        match self {
            Surface3::Sphere { radius, .. } if *radius <= 0.0 => Err(TopoError::Geometry(
                format!("sphere radius {radius} must be positive"),
            )),
            Surface3::Ellipsoid { semi_axes, .. } if semi_axes.iter().any(|a| *a <= 0.0) => {
                Err(TopoError::Geometry(format!(
                    "ellipsoid semi-axes {semi_axes:?} must be positive"
                )))
            }
            _ => Ok(()),
        }
    }

    fn point_and_tangents(&self, theta: f64, phi: f64) -> ([f64; 3], [[f64; 3]; 2]) {
        match self {
            Surface3::Sphere { center, radius } => {
                let (u, j) = sphere2_point(theta, phi);
                (
                    [
                        center[0] + radius * u[0],
                        center[1] + radius * u[1],
                        center[2] + radius * u[2],
                    ],
                    [
                        [radius * j[0][0], radius * j[0][1], radius * j[0][2]],
                        [radius * j[1][0], radius * j[1][1], radius * j[1][2]],
                    ],
                )
            }
            Surface3::Ellipsoid { center, semi_axes } => {
                let (u, j) = sphere2_point(theta, phi);
                let a = semi_axes;
                (
                    [
                        center[0] + a[0] * u[0],
                        center[1] + a[1] * u[1],
                        center[2] + a[2] * u[2],
                    ],
                    [
                        [a[0] * j[0][0], a[1] * j[0][1], a[2] * j[0][2]],
                        [a[0] * j[1][0], a[1] * j[1][1], a[2] * j[1][2]],
                    ],
                )
            }
            Surface3::Patch(f) => {
                let x = f(theta, phi);
                let h = PARAM_STEP;
                let tp = f(theta + h, phi);
                let tm = f(theta - h, phi);
                let pp = f(theta, phi + h);
                let pm = f(theta, phi - h);
                (
                    x,
                    [
                        [
                            (tp[0] - tm[0]) / (2.0 * h),
                            (tp[1] - tm[1]) / (2.0 * h),
                            (tp[2] - tm[2]) / (2.0 * h),
                        ],
                        [
                            (pp[0] - pm[0]) / (2.0 * h),
                            (pp[1] - pm[1]) / (2.0 * h),
                            (pp[2] - pm[2]) / (2.0 * h),
                        ],
                    ],
                )
            }
        }
    }

    fn scale(&self) -> f64 {
        match self {
            Surface3::Sphere { radius, .. } => *radius,
            Surface3::Ellipsoid { semi_axes, .. } => {
                semi_axes.iter().fold(0.0_f64, |m, a| m.max(*a))
            }
            Surface3::Patch(_) => 1.0,
        }
    }
}

/// The only supported closed 3-surface in R^4: a round S^3.
pub struct Surface4 {
    pub center: [f64; 4],
    pub radius: f64,
}

impl Surface4 {
    fn check(&self) -> Result<()> {
        if self.radius <= 0.0 {
            return Err(TopoError::Geometry(format!(
                "S^3 radius {} must be positive",
                self.radius
            )));
        }
        Ok(())
    }

    fn point_and_tangents(&self, chi: f64, theta: f64, phi: f64) -> ([f64; 4], [[f64; 4]; 3]) {
        let (u, j) = sphere3_point(chi, theta, phi);
        let r = self.radius;
        let mut x = [0.0; 4];
        let mut tans = [[0.0; 4]; 3];
        for i in 0..4 {
            x[i] = self.center[i] + r * u[i];
            for k in 0..3 {
                tans[k][i] = r * j[k][i];
            }
        }
        (x, tans)
    }
}

fn nonzero<const N: usize>(v: [f64; N], norm: f64, loc: impl FnOnce() -> String) -> Result<[f64; N]> {
    if norm <= ZERO_ON_SURFACE {
        Err(TopoError::ZeroOnSurface {
            magnitude: norm,
            location: loc(),
        })
    } else {
        Ok(v)
    }
}

/// Raw Gauss-map degree of a plane field along a closed curve.
pub fn index_integral_2d(field: &VectorField2, surface: &Surface2, grid: &PeriodicGrid1D) -> Result<f64> {
    surface.check()?;
    let scale = surface.scale();
    pullback_integral_s1(grid, |t| {
        let (x, tan) = surface.point_and_tangent(t);
        let v = field.eval(x);
        let v = nonzero(v, norm2(v), || format!("t = {t:.6}, x = ({:.4}, {:.4})", x[0], x[1]))?;
        Ok((v, field.derivative(x, tan, scale)))
    })
}

/// Index of a plane field with respect to a closed curve.
pub fn index_wrt_surface_2d(
    field: &VectorField2,
    surface: &Surface2,
    grid: &PeriodicGrid1D,
    tol: f64,
) -> Result<IntegerSnapResult> {
    snap_integer(index_integral_2d(field, surface, grid)?, tol)
}

/// Raw Gauss-map degree of a 3-field along a closed surface.
pub fn index_integral_3d(field: &VectorField3, surface: &Surface3, grid: &SphereGrid2) -> Result<f64> {
    surface.check()?;
    let scale = surface.scale();
    pullback_integral_s2(grid, |theta, phi| {
        let (x, tans) = surface.point_and_tangents(theta, phi);
        let v = field.eval(x);
        let v = nonzero(v, norm3(v), || format!("(theta, phi) = ({theta:.6}, {phi:.6})"))?;
        Ok((
            v,
            [
                field.derivative(x, tans[0], scale),
                field.derivative(x, tans[1], scale),
            ],
        ))
    })
}

/// Index of a 3-field with respect to a closed surface.
pub fn index_wrt_surface_3d(
    field: &VectorField3,
    surface: &Surface3,
    grid: &SphereGrid2,
    tol: f64,
) -> Result<IntegerSnapResult> {
    snap_integer(index_integral_3d(field, surface, grid)?, tol)
}

/// Raw Gauss-map degree of a 4-field along a round S^3.
pub fn index_integral_4d(field: &VectorField4, surface: &Surface4, grid: &SphereGrid3) -> Result<f64> {
    surface.check()?;
    let scale = surface.radius;
    pullback_integral_s3(grid, |chi, theta, phi| {
        let (x, tans) = surface.point_and_tangents(chi, theta, phi);
        let v = field.eval(x);
        let v = nonzero(v, norm4(v), || {
            format!("(chi, theta, phi) = ({chi:.6}, {theta:.6}, {phi:.6})")
        })?;
        Ok((
            v,
            [
                field.derivative(x, tans[0], scale),
                field.derivative(x, tans[1], scale),
                field.derivative(x, tans[2], scale),
            ],
        ))
    })
}

/// Index of a 4-field with respect to a round S^3.
pub fn index_wrt_surface_4d(
    field: &VectorField4,
    surface: &Surface4,
    grid: &SphereGrid3,
    tol: f64,
) -> Result<IntegerSnapResult> {
    snap_integer(index_integral_4d(field, surface, grid)?, tol)
}

/// Index of the plane field (P, Q) around an isolated zero, from the
/// winding of the field along a small circle.
pub fn index_at_point_2d(
    p: impl Fn(f64, f64) -> f64,
    q: impl Fn(f64, f64) -> f64,
    center: [f64; 2],
    radius: f64,
    samples: usize,
    tol: f64,
) -> Result<IntegerSnapResult> {
    if radius <= 0.0 {
        return Err(TopoError::Geometry(format!("encircling radius {radius} must be positive")));
    }
    let grid = PeriodicGrid1D::standard(samples)?;
    let h = grid.period() / (8.0 * samples as f64);
    let at = |t: f64| {
        let x = [center[0] + radius * t.cos(), center[1] + radius * t.sin()];
        [p(x[0], x[1]), q(x[0], x[1])]
    };
    let raw = pullback_integral_s1(&grid, |t| {
        let v = at(t);
        let v = nonzero(v, norm2(v), || format!("t = {t:.6} on the encircling circle"))?;
        let (f, b) = (at(t + h), at(t - h));
        Ok((v, [(f[0] - b[0]) / (2.0 * h), (f[1] - b[1]) / (2.0 * h)]))
    })?;
    snap_integer(raw, tol)
}

/// Whether `surface` encloses `p`: the winding of x - p along the surface,
/// which is 1 inside and 0 outside for embedded surfaces.
pub fn encloses_2d(surface: &Surface2, p: [f64; 2]) -> Result<bool> {
    let probe = VectorField2::with_jacobian(
        move |x| [x[0] - p[0], x[1] - p[1]],
        |_| [[1.0, 0.0], [0.0, 1.0]],
    );
    let grid = PeriodicGrid1D::standard(256)?;
    match index_wrt_surface_2d(&probe, surface, &grid, 0.25)?.snapped {
        0 => Ok(false),
        1 => Ok(true),
        k => Err(TopoError::Geometry(format!(
            "surface winds {k} times around ({}, {}); not embedded",
            p[0], p[1]
        ))),
    }
}

/// 3-dimensional counterpart of [`encloses_2d`].
pub fn encloses_3d(surface: &Surface3, p: [f64; 3]) -> Result<bool> {
    let probe = VectorField3::with_jacobian(
        move |x| [x[0] - p[0], x[1] - p[1], x[2] - p[2]],
        |_| [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
    );
    let grid = SphereGrid2::new(24, 48)?;
    match index_wrt_surface_3d(&probe, surface, &grid, 0.25)?.snapped {
        0 => Ok(false),
        1 => Ok(true),
        k => Err(TopoError::Geometry(format!(
            "surface winds {k} times around ({}, {}, {}); not embedded",
            p[0], p[1], p[2]
        ))),
    }
}

/// Outer index, per-zero indices, and their sum.
#[derive(Debug, Clone)]
pub struct AdditivityReport {
    pub outer: IntegerSnapResult,
    pub per_point: Vec<IntegerSnapResult>,
    pub sum: i64,
}

impl AdditivityReport {
    /// The additivity statement itself: outer index equals the sum of the
    /// enclosed point indices.
    pub fn balanced(&self) -> bool {
        self.outer.snapped == self.sum
    }
}

fn min_node_distance_2d(surface: &Surface2, p: [f64; 2]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..512 {
        let t = i as f64 * 2.0 * std::f64::consts::PI / 512.0;
        let (x, _) = surface.point_and_tangent(t);
        best = best.min(norm2([x[0] - p[0], x[1] - p[1]]));
    }
    best
}

fn min_node_distance_3d(surface: &Surface3, p: [f64; 3]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..64 {
        for j in 0..128 {
            let theta = (i as f64 + 0.5) * std::f64::consts::PI / 64.0;
            let phi = j as f64 * 2.0 * std::f64::consts::PI / 128.0;
            let (x, _) = surface.point_and_tangents(theta, phi);
            best = best.min(norm3([x[0] - p[0], x[1] - p[1], x[2] - p[2]]));
        }
    }
    best
}

/// Splits the index along an outer curve into contributions of the declared
/// zeros, each measured on a circle of radius `small_radius`.
pub fn index_additivity_report_2d(
    field: &VectorField2,
    outer: &Surface2,
    zero_points: &[[f64; 2]],
    small_radius: f64,
    grid: &PeriodicGrid1D,
    tol: f64,
) -> Result<AdditivityReport> {
    if small_radius <= 0.0 {
        return Err(TopoError::Geometry(format!(
            "small radius {small_radius} must be positive"
        )));
    }
    for (i, a) in zero_points.iter().enumerate() {
        if !encloses_2d(outer, *a)? {
            return Err(TopoError::Geometry(format!(
                "declared zero ({}, {}) is not strictly inside the outer curve",
                a[0], a[1]
            )));
        }
        if min_node_distance_2d(outer, *a) <= small_radius {
            return Err(TopoError::Geometry(format!(
                "circle of radius {small_radius} around ({}, {}) crosses the outer curve",
                a[0], a[1]
            )));
        }
        for b in &zero_points[i + 1..] {
            if norm2([a[0] - b[0], a[1] - b[1]]) <= 2.0 * small_radius {
                return Err(TopoError::Geometry(format!(
                    "encircling circles of radius {small_radius} around ({}, {}) and ({}, {}) overlap",
                    a[0], a[1], b[0], b[1]
                )));
            }
        }
    }
    let outer_index = index_wrt_surface_2d(field, outer, grid, tol)?;
    let mut per_point = Vec::with_capacity(zero_points.len());
    let mut sum = 0;
    for z in zero_points {
        let s = Surface2::Circle {
            center: *z,
            radius: small_radius,
        };
        let r = index_wrt_surface_2d(field, &s, grid, tol)?;
        sum += r.snapped;
        per_point.push(r);
    }
    Ok(AdditivityReport {
        outer: outer_index,
        per_point,
        sum,
    })
}

/// 3-dimensional counterpart of [`index_additivity_report_2d`].
pub fn index_additivity_report_3d(
    field: &VectorField3,
    outer: &Surface3,
    zero_points: &[[f64; 3]],
    small_radius: f64,
    grid: &SphereGrid2,
    tol: f64,
) -> Result<AdditivityReport> {
    if small_radius <= 0.0 {
        return Err(TopoError::Geometry(format!(
            "small radius {small_radius} must be positive"
        )));
    }
    for (i, a) in zero_points.iter().enumerate() {
        if !encloses_3d(outer, *a)? {
            return Err(TopoError::Geometry(format!(
                "declared zero ({}, {}, {}) is not strictly inside the outer surface",
                a[0], a[1], a[2]
            )));
        }
        if min_node_distance_3d(outer, *a) <= small_radius {
            return Err(TopoError::Geometry(format!(
                "sphere of radius {small_radius} around ({}, {}, {}) crosses the outer surface",
                a[0], a[1], a[2]
            )));
        }
        for b in &zero_points[i + 1..] {
            if norm3([a[0] - b[0], a[1] - b[1], a[2] - b[2]]) <= 2.0 * small_radius {
                return Err(TopoError::Geometry(format!(
                    "encircling spheres of radius {small_radius} overlap near ({}, {}, {})",
                    a[0], a[1], a[2]
                )));
            }
        }
    }
    let outer_index = index_wrt_surface_3d(field, outer, grid, tol)?;
    let mut per_point = Vec::with_capacity(zero_points.len());
    let mut sum = 0;
    for z in zero_points {
        let s = Surface3::Sphere {
            center: *z,
            radius: small_radius,
        };
        let r = index_wrt_surface_3d(field, &s, grid, tol)?;
        sum += r.snapped;
        per_point.push(r);
    }
    Ok(AdditivityReport {
        outer: outer_index,
        per_point,
        sum,
    })
}
