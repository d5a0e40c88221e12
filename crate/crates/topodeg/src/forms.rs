//! The normalized solid-angle form and its pullbacks.
//!
//! On R^{n+1} minus the origin there is a closed n-form Omega_n with unit
//! total integral over S^n,
//!
//!   Omega_n = (1 / vol(S^n)) sum_a (-1)^(a-1) x^a / |x|^(n+1)
//!             dx^1 ^ ... ^ (dx^a omitted) ^ ... ^ dx^(n+1),
//!
//! and every invariant in this crate is an integral of its pullback. Pulled
//! back along t -> x(t), the coefficient of dt^1 ^ ... ^ dt^n collapses to a
//! single (n+1) x (n+1) determinant whose first column is x and whose
//! remaining columns are the partials dx/dt^i:
//!
//!   density(t) = det[ x | dx/dt^1 | ... | dx/dt^n ] / (vol(S^n) |x|^(n+1)).
//!
//! The cofactor expansion along the first column reproduces the alternating
//! sum, so no term bookkeeping is needed. Signs are pinned by the convention
//! that the identity immersion of S^n has positive density; the chart
//! orderings below are chosen to satisfy it.

use crate::error::{Result, TopoError};
use crate::linalg::{det2, det3, det4, norm2, norm3, norm4};
use crate::quadrature::{
    pairwise_sum, snap_integer, IntegerSnapResult, PeriodicGrid1D, SphereGrid2, SphereGrid3,
};

/// vol(S^n) for the dimensions the crate integrates over.
pub fn sphere_volume(n: usize) -> Result<f64> {
    use std::f64::consts::PI;
    match n {
        1 => Ok(2.0 * PI),
        2 => Ok(4.0 * PI),
        3 => Ok(2.0 * PI * PI),
        other => Err(TopoError::UnsupportedDimension(other)),
    }
}

const SINGULAR_NORM: f64 = 1e-12;

pub(crate) fn density_s1(x: [f64; 2], j: [f64; 2]) -> Result<f64> {
    let r = norm2(x);
    if r < SINGULAR_NORM {
        return Err(TopoError::SingularPoint);
    }
    Ok(det2(x, j) / (2.0 * std::f64::consts::PI * r * r))
}

pub(crate) fn density_s2(x: [f64; 3], j: [[f64; 3]; 2]) -> Result<f64> {
    let r = norm3(x);
    if r < SINGULAR_NORM {
        return Err(TopoError::SingularPoint);
    }
    Ok(det3(x, j[0], j[1]) / (4.0 * std::f64::consts::PI * r * r * r))
}

pub(crate) fn density_s3(x: [f64; 4], j: [[f64; 4]; 3]) -> Result<f64> {
    let r = norm4(x);
    if r < SINGULAR_NORM {
        return Err(TopoError::SingularPoint);
    }
    let pi = std::f64::consts::PI;
    Ok(det4(x, j[0], j[1], j[2]) / (2.0 * pi * pi * r * r * r * r))
}

/// Pullback coefficient of Omega_n on dt^1 ^ ... ^ dt^n at one point.
///
/// `x` has length n+1 and `jacobian_columns` holds the n partials dx/dt^i,
/// each of length n+1.
pub fn solid_angle_pullback_density(n: usize, x: &[f64], jacobian_columns: &[&[f64]]) -> Result<f64> {
    if x.len() != n + 1
        || jacobian_columns.len() != n
        || jacobian_columns.iter().any(|c| c.len() != n + 1)
    {
        return Err(TopoError::InvalidMap(format!(
            "density in dimension n = {n} needs x of length {} and {} Jacobian columns of the same length",
            n + 1,
            n
        )));
    }
    match n {
        1 => density_s1([x[0], x[1]], [jacobian_columns[0][0], jacobian_columns[0][1]]),
        2 => {
            let col = |c: &[f64]| [c[0], c[1], c[2]];
            density_s2([x[0], x[1], x[2]], [col(jacobian_columns[0]), col(jacobian_columns[1])])
        }
        3 => {
            let col = |c: &[f64]| [c[0], c[1], c[2], c[3]];
            density_s3(
                [x[0], x[1], x[2], x[3]],
                [
                    col(jacobian_columns[0]),
                    col(jacobian_columns[1]),
                    col(jacobian_columns[2]),
                ],
            )
        }
        other => Err(TopoError::UnsupportedDimension(other)),
    }
}

fn finite(value: f64, location: impl FnOnce() -> String) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(TopoError::NumericalDomain {
            value,
            location: location(),
        })
    }
}

/// Integral of the pulled-back Omega_1 over one period of a closed curve.
///
/// `eval(t)` returns the curve point and its t-derivative.
pub fn pullback_integral_s1(
    grid: &PeriodicGrid1D,
    eval: impl Fn(f64) -> Result<([f64; 2], [f64; 2])>,
) -> Result<f64> {
    let mut vals = Vec::with_capacity(grid.samples());
    let w = grid.period() / grid.samples() as f64;
    for i in 0..grid.samples() {
        let t = grid.node(i);
        let (x, j) = eval(t)?;
        let d = finite(density_s1(x, j)?, || format!("t = {t:.6}"))?;
        vals.push(d * w);
    }
    Ok(pairwise_sum(&vals))
}

/// Integral of the pulled-back Omega_2 over a closed parametrized surface.
///
/// `eval(theta, phi)` returns the surface point and the two tangents
/// d x / d theta, d x / d phi.
pub fn pullback_integral_s2(
    grid: &SphereGrid2,
    eval: impl Fn(f64, f64) -> Result<([f64; 3], [[f64; 3]; 2])>,
) -> Result<f64> {
    let mut vals = Vec::with_capacity(grid.n_theta() * grid.n_phi());
    let wp = grid.phi_weight();
    for (t, wt) in grid.theta_nodes() {
        for jj in 0..grid.n_phi() {
            let p = grid.phi_node(jj);
            let (x, j) = eval(*t, p)?;
            let d = finite(density_s2(x, j)?, || format!("(theta, phi) = ({t:.6}, {p:.6})"))?;
            vals.push(d * wt * wp);
        }
    }
    Ok(pairwise_sum(&vals))
}

/// Integral of the pulled-back Omega_3 over a closed parametrized 3-surface.
pub fn pullback_integral_s3(
    grid: &SphereGrid3,
    eval: impl Fn(f64, f64, f64) -> Result<([f64; 4], [[f64; 4]; 3])>,
) -> Result<f64> {
    let mut vals = Vec::with_capacity(grid.n_chi() * grid.n_theta() * grid.n_phi());
    let wp = grid.phi_weight();
    for (c, wc) in grid.chi_nodes() {
        for (t, wt) in grid.theta_nodes() {
            for jj in 0..grid.n_phi() {
                let p = grid.phi_node(jj);
                let (x, j) = eval(*c, *t, p)?;
                let d = finite(density_s3(x, j)?, || {
                    format!("(chi, theta, phi) = ({c:.6}, {t:.6}, {p:.6})")
                })?;
                vals.push(d * wc * wt * wp);
            }
        }
    }
    Ok(pairwise_sum(&vals))
}

/// Unit circle with its tangent.
pub fn circle_point(phi: f64) -> ([f64; 2], [f64; 2]) {
    ([phi.cos(), phi.sin()], [-phi.sin(), phi.cos()])
}

/// Unit S^2 in colatitude/azimuth, with both chart tangents.
pub fn sphere2_point(theta: f64, phi: f64) -> ([f64; 3], [[f64; 3]; 2]) {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let x = [st * cp, st * sp, ct];
    let d_theta = [ct * cp, ct * sp, -st];
    let d_phi = [-st * sp, st * cp, 0.0];
    (x, [d_theta, d_phi])
}

/// Unit S^3 in the chart (chi, theta, phi) -> (cos chi, sin chi sin theta
/// cos phi, sin chi sin theta sin phi, sin chi cos theta).
///
/// This ordering makes det[x | J] = + sin^2(chi) sin(theta), so the chart is
/// positively oriented for the first-column determinant convention.
pub fn sphere3_point(chi: f64, theta: f64, phi: f64) -> ([f64; 4], [[f64; 4]; 3]) {
    let (sc, cc) = chi.sin_cos();
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let x = [cc, sc * st * cp, sc * st * sp, sc * ct];
    let d_chi = [-sc, cc * st * cp, cc * st * sp, cc * ct];
    let d_theta = [0.0, sc * ct * cp, sc * ct * sp, -sc * st];
    let d_phi = [0.0, -sc * st * sp, sc * st * cp, 0.0];
    (x, [d_chi, d_theta, d_phi])
}

/// Grid for [`integrate_omega_over_sphere`], one variant per sphere
/// dimension.
pub enum AnySphereGrid {
    S1(PeriodicGrid1D),
    S2(SphereGrid2),
    S3(SphereGrid3),
}

impl AnySphereGrid {
    pub fn dim(&self) -> usize {
        match self {
            AnySphereGrid::S1(_) => 1,
            AnySphereGrid::S2(_) => 2,
            AnySphereGrid::S3(_) => 3,
        }
    }

    pub fn counts(&self) -> Vec<usize> {
        match self {
            AnySphereGrid::S1(g) => vec![g.samples()],
            AnySphereGrid::S2(g) => vec![g.n_theta(), g.n_phi()],
            AnySphereGrid::S3(g) => vec![g.n_chi(), g.n_theta(), g.n_phi()],
        }
    }
}

/// Normalization check: integrates Omega_n over the standard unit sphere
/// and snaps. The result certifies both the form's normalization and the
/// grid's fitness, so other modules can trust the same grids.
pub fn integrate_omega_over_sphere(grid: &AnySphereGrid, tol: f64) -> Result<IntegerSnapResult> {
    let raw = match grid {
        AnySphereGrid::S1(g) => pullback_integral_s1(g, |t| Ok(circle_point(t)))?,
        AnySphereGrid::S2(g) => pullback_integral_s2(g, |t, p| Ok(sphere2_point(t, p)))?,
        AnySphereGrid::S3(g) => pullback_integral_s3(g, |c, t, p| Ok(sphere3_point(c, t, p)))?,
    };
    snap_integer(raw, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::DEFAULT_SNAP_TOL;
    use std::f64::consts::PI;

    #[test]
    fn sphere_volumes() {
        assert_eq!(sphere_volume(1).unwrap(), 2.0 * PI);
        assert_eq!(sphere_volume(2).unwrap(), 4.0 * PI);
        assert_eq!(sphere_volume(3).unwrap(), 2.0 * PI * PI);
        assert!(sphere_volume(0).is_err());
        assert!(sphere_volume(4).is_err());
    }

    #[test]
    fn density_at_north_pole() {
        let x = [0.0, 0.0, 1.0];
        let j0 = [1.0, 0.0, 0.0];
        let j1 = [0.0, 1.0, 0.0];
        let d = solid_angle_pullback_density(2, &x, &[&j0, &j1]).unwrap();
        assert!((d - 1.0 / (4.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn density_on_circle() {
        let d = solid_angle_pullback_density(1, &[1.0, 0.0], &[&[0.0, 1.0]]).unwrap();
        assert!((d - 1.0 / (2.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn density_vanishes_with_jacobian() {
        let d = solid_angle_pullback_density(2, &[0.3, -0.2, 0.9], &[&[0.0; 3], &[0.0; 3]]).unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn density_rejects_origin() {
        let r = solid_angle_pullback_density(1, &[0.0, 1e-13], &[&[0.0, 1.0]]);
        assert!(matches!(r, Err(TopoError::SingularPoint)));
    }

    #[test]
    fn density_scale_invariance() {
        let x = [0.4, -1.1, 0.7];
        let j0 = [0.2, 0.5, -0.3];
        let j1 = [-0.6, 0.1, 0.9];
        let base = solid_angle_pullback_density(2, &x, &[&j0, &j1]).unwrap();
        for lam in [1e-3, 2.0, 1e3] {
            let xs: Vec<f64> = x.iter().map(|v| v * lam).collect();
            let j0s: Vec<f64> = j0.iter().map(|v| v * lam).collect();
            let j1s: Vec<f64> = j1.iter().map(|v| v * lam).collect();
            let d = solid_angle_pullback_density(2, &xs, &[&j0s, &j1s]).unwrap();
            assert!((d - base).abs() <= 1e-12 * base.abs());
        }
    }

    #[test]
    fn density_antisymmetric_in_columns() {
        let x = [0.4, -1.1, 0.7];
        let j0 = [0.2, 0.5, -0.3];
        let j1 = [-0.6, 0.1, 0.9];
        let a = solid_angle_pullback_density(2, &x, &[&j0, &j1]).unwrap();
        let b = solid_angle_pullback_density(2, &x, &[&j1, &j0]).unwrap();
        assert!((a + b).abs() < 1e-15);
    }

    #[test]
    fn omega_has_unit_integral_s1() {
        let g = AnySphereGrid::S1(PeriodicGrid1D::standard(64).unwrap());
        let r = integrate_omega_over_sphere(&g, DEFAULT_SNAP_TOL).unwrap();
        assert_eq!(r.snapped, 1);
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn omega_has_unit_integral_s2() {
        let g = AnySphereGrid::S2(SphereGrid2::new(32, 64).unwrap());
        let r = integrate_omega_over_sphere(&g, DEFAULT_SNAP_TOL).unwrap();
        assert_eq!(r.snapped, 1);
        assert!(r.residual < 1e-10);
    }

    #[test]
    fn omega_has_unit_integral_s3() {
        let g = AnySphereGrid::S3(SphereGrid3::new(24, 24, 48).unwrap());
        let r = integrate_omega_over_sphere(&g, DEFAULT_SNAP_TOL).unwrap();
        assert_eq!(r.snapped, 1);
        assert!(r.residual < 1e-9);
    }

    #[test]
    fn radius_does_not_matter() {
        let g = SphereGrid2::new(24, 48).unwrap();
        let raw = pullback_integral_s2(&g, |t, p| {
            let (x, j) = sphere2_point(t, p);
            let scale = 2.5;
            Ok((
                [x[0] * scale, x[1] * scale, x[2] * scale],
                [
                    [j[0][0] * scale, j[0][1] * scale, j[0][2] * scale],
                    [j[1][0] * scale, j[1][1] * scale, j[1][2] * scale],
                ],
            ))
        })
        .unwrap();
        assert!((raw - 1.0).abs() < 1e-10);
    }

    #[test]
    fn closed_form_sees_nothing_outside_the_origin() {
        // Unit sphere translated to (3, 0, 0): the origin is outside, so the
        // pullback integral snaps to 0.
        let g = SphereGrid2::new(32, 64).unwrap();
        let raw = pullback_integral_s2(&g, |t, p| {
            let (x, j) = sphere2_point(t, p);
            Ok(([x[0] + 3.0, x[1], x[2]], j))
        })
        .unwrap();
        let r = snap_integer(raw, DEFAULT_SNAP_TOL).unwrap();
        assert_eq!(r.snapped, 0);

        let g1 = PeriodicGrid1D::standard(64).unwrap();
        let raw1 = pullback_integral_s1(&g1, |t| {
            let (x, j) = circle_point(t);
            Ok(([x[0] + 2.0, x[1]], j))
        })
        .unwrap();
        assert_eq!(snap_integer(raw1, DEFAULT_SNAP_TOL).unwrap().snapped, 0);
    }
}
