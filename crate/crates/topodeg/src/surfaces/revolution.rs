//! Smooth surfaces of revolution with unit-speed profiles.
//!
//! The profile u -> (g(u), z(u)), u in [0, L], revolves around the z axis;
//! unit speed (g'^2 + z'^2 = 1) makes the Gaussian curvature K = -g''/g
//! and the area element g du dphi, so the total-curvature count
//!
//!   (1 / 2 pi) * integral of K dA = integral over [0, L] of -g''(u) du
//!
//! recovers the Euler characteristic: 2 when the profile closes onto the
//! axis at both ends, 0 when it is periodic.

use crate::error::{Result, TopoError};
use crate::quadrature::{
    gauss_legendre_on, pairwise_sum, snap_integer, IntegerSnapResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileClosure {
    /// g vanishes at both ends of [0, L]; the surface is a topological sphere.
    SphereLike,
    /// g and z' are L-periodic; the surface is a topological torus.
    TorusLike,
}

pub struct SurfaceOfRevolution {
    g: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    #[allow(dead_code)]
    z: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    length: f64,
    closure: ProfileClosure,
}

impl std::fmt::Debug for SurfaceOfRevolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SurfaceOfRevolution")
            .field("length", &self.length)
            .field("closure", &self.closure)
            .finish_non_exhaustive()
    }
}

const SPEED_TOL: f64 = 1e-8;

impl SurfaceOfRevolution {
    /// Checks unit speed and the declared closure on a coarse sample
    /// before accepting the profile.
    pub fn new(
        g: impl Fn(f64) -> f64 + Send + Sync + 'static,
        z: impl Fn(f64) -> f64 + Send + Sync + 'static,
        length: f64,
        closure: ProfileClosure,
    ) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(TopoError::Geometry(format!("profile length {length} must be positive")));
        }
        let h = 1e-6 * length;
        for i in 1..64 {
            let u = length * i as f64 / 64.0;
            let gp = (g(u + h) - g(u - h)) / (2.0 * h);
            let zp = (z(u + h) - z(u - h)) / (2.0 * h);
            let speed2 = gp * gp + zp * zp;
            if (speed2 - 1.0).abs() > SPEED_TOL {
                return Err(TopoError::Geometry(format!(
                    "profile is not unit speed at u = {u:.6}: g'^2 + z'^2 = {speed2}"
                )));
            }
            if g(u) <= 0.0 {
                return Err(TopoError::Geometry(format!(
                    "profile radius g({u:.6}) = {} is not positive", g(u)
                )));
            }
        }
        match closure {
            ProfileClosure::SphereLike => {
                for u in [0.0, length] {
                    if g(u).abs() > 1e-6 * length {
                        return Err(TopoError::Geometry(format!(
                            "sphere-like profile must close onto the axis: g({u}) = {}",
                            g(u)
                        )));
                    }
                }
            }
            ProfileClosure::TorusLike => {
                let dg = (g(length) - g(0.0)).abs();
                let dz = (z(length) - z(0.0)).abs();
                if dg > 1e-8 || dz > 1e-8 * length {
                    return Err(TopoError::Geometry(
                        "torus-like profile must repeat with period L".into(),
                    ));
                }
            }
        }
        Ok(Self { g: Box::new(g), z: Box::new(z), length, closure })
    }

    /// Round sphere of the given radius: g = r sin(u/r) on [0, pi r].
    pub fn sphere(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(TopoError::Geometry(format!("sphere radius {radius} must be positive")));
        }
        Self::new(
            move |u| radius * (u / radius).sin(),
            move |u| -radius * (u / radius).cos(),
            std::f64::consts::PI * radius,
            ProfileClosure::SphereLike,
        )
    }

    /// Torus of revolution: g = R + r cos(u/r) on [0, 2 pi r].
    pub fn torus(big_r: f64, small_r: f64) -> Result<Self> {
        if !(big_r.is_finite() && small_r.is_finite() && big_r > small_r && small_r > 0.0) {
            return Err(TopoError::Geometry(format!(
                "torus radii must satisfy R > r > 0, got R = {big_r}, r = {small_r}"
            )));
        }
        Self::new(
            move |u| big_r + small_r * (u / small_r).cos(),
            move |u| small_r * (u / small_r).sin(),
            2.0 * std::f64::consts::PI * small_r,
            ProfileClosure::TorusLike,
        )
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn closure(&self) -> ProfileClosure {
        self.closure
    }

    /// K(u) = -g''(u) / g(u); the step shrinks near the ends so the
    /// stencil stays inside [0, L].
    pub fn gaussian_curvature(&self, u: f64) -> f64 {
        let h = self.stencil_step(u);
        let g = &self.g;
        let g2 = (g(u + h) - 2.0 * g(u) + g(u - h)) / (h * h);
        -g2 / g(u)
    }

    fn stencil_step(&self, u: f64) -> f64 {
        let h = 1e-4 * self.length;
        match self.closure {
            ProfileClosure::SphereLike => h.min(0.45 * u).min(0.45 * (self.length - u)),
            ProfileClosure::TorusLike => h,
        }
    }

    fn radius(&self, u: f64) -> f64 {
        (self.g)(u)
    }
}

/// (1 / 2 pi) * integral of K dA, snapped to the Euler characteristic.
/// `n` is the number of profile nodes: a Gauss rule for sphere-like
/// profiles (K g stays bounded but the nodes must avoid the poles), the
/// periodic trapezoid rule for torus-like ones.
pub fn gauss_bonnet_revolution(
    surface: &SurfaceOfRevolution,
    n: usize,
    tol: f64,
) -> Result<IntegerSnapResult> {
    if n < 8 {
        return Err(TopoError::InvalidGrid(format!("need at least 8 profile nodes, got {n}")));
    }
    let l = surface.length();
    let nodes: Vec<(f64, f64)> = match surface.closure() {
        ProfileClosure::SphereLike => gauss_legendre_on(n, 0.0, l),
        ProfileClosure::TorusLike => {
            (0..n).map(|i| (l * i as f64 / n as f64, l / n as f64)).collect()
        }
    };
    let vals: Vec<f64> = nodes
        .iter()
        .map(|&(u, w)| {
            let term = surface.gaussian_curvature(u) * surface.radius(u) * w;
            if term.is_finite() {
                Ok(term)
            } else {
                Err(TopoError::NumericalDomain { value: term, location: format!("u = {u:.6}") })
            }
        })
        .collect::<Result<_>>()?;
    snap_integer(pairwise_sum(&vals), tol)
}
