//! Mapping degrees for circle self-maps and sphere self-maps.
//!
//! A circle map is handed over as a lift f with f(phi + 2pi) = f(phi) +
//! 2pi n; its winding number is the full-period integral
//!
//!   deg = (1 / 2pi) * integral of f'(phi) dphi,
//!
//! which the trapezoid rule resolves to machine accuracy. The independent
//! oracle is the regular-value sign sum: pick a value, find every preimage,
//! and add the signs of f' there. Quadrature and counting have to agree,
//! and tests hold them to that.
//!
//! Sphere maps go through the chart form of the degree,
//!
//!   deg = (1 / 4pi) * integral of sin(f1) * d(f1, f2)/d(theta, phi),
//!
//! where (f1, f2) are the image colatitude/azimuth of (theta, phi) and the
//! second factor is the Jacobian determinant of the pair.

use crate::error::{Result, TopoError};
use crate::quadrature::{
    integrate_periodic_1d, integrate_sphere2, snap_integer, IntegerSnapResult, PeriodicGrid1D,
    SphereGrid2,
};

const LIFT_TOL: f64 = 1e-9;
const SCAN_CELLS: usize = 4096;
const BISECT_TOL: f64 = 1e-12;
const CRITICAL_DERIVATIVE: f64 = 1e-8;
const PREIMAGE_MERGE_TOL: f64 = 1e-9;

type Scalar1 = Box<dyn Fn(f64) -> f64 + Send + Sync>;
type Scalar2 = Box<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A circle self-map, stored as a lift R -> R.
pub struct CircleMapLift {
    f: Scalar1,
    df: Option<Scalar1>,
}

impl CircleMapLift {
    /// Checks the lift condition f(phi + 2pi) = f(phi) + 2pi n at a couple
    /// of base points; maps that fail it have no winding number at all.
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        Self::build(Box::new(f), None)
    }

    pub fn with_derivative(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::build(Box::new(f), Some(Box::new(df)))
    }

    fn build(f: Scalar1, df: Option<Scalar1>) -> Result<Self> {
        let tau = 2.0 * std::f64::consts::PI;
        let jump = f(tau) - f(0.0);
        if !jump.is_finite() {
            return Err(TopoError::InvalidMap("lift is not finite".into()));
        }
        let n = (jump / tau).round();
        if (jump - tau * n).abs() > LIFT_TOL {
            return Err(TopoError::InvalidMap(format!(
                "f(2pi) - f(0) = {jump:.9} is not an integer multiple of 2pi"
            )));
        }
        for base in [1.3, 2.6] {
            let j = f(base + tau) - f(base);
            if (j - tau * n).abs() > LIFT_TOL {
                return Err(TopoError::InvalidMap(format!(
                    "lift jump at phi = {base} is {j:.9}, expected {:.9}",
                    tau * n
                )));
            }
        }
        Ok(Self { f, df })
    }

    pub fn value(&self, phi: f64) -> f64 {
        (self.f)(phi)
    }

    /// f'(phi): analytic when supplied, otherwise a central difference with
    /// the given step.
    pub fn derivative(&self, phi: f64, h: f64) -> f64 {
        match &self.df {
            Some(df) => df(phi),
            None => ((self.f)(phi + h) - (self.f)(phi - h)) / (2.0 * h),
        }
    }
}

/// Winding number of a circle map by quadrature of its derivative.
pub fn winding_number(
    map: &CircleMapLift,
    grid: &PeriodicGrid1D,
    tol: f64,
) -> Result<IntegerSnapResult> {
    let h = grid.period() / (8.0 * grid.samples() as f64);
    let total = integrate_periodic_1d(grid, |phi| map.derivative(phi, h))?;
    snap_integer(total / (2.0 * std::f64::consts::PI), tol)
}

/// One preimage of a regular value, with the sign of f' there.
#[derive(Debug, Clone, Copy)]
pub struct Preimage {
    pub phi: f64,
    pub derivative: f64,
    pub sign: i8,
}

/// Regular-value sign sum for a circle map.
#[derive(Debug, Clone)]
pub struct PreimageSum {
    pub degree: i64,
    pub preimages: Vec<Preimage>,
}

/// Counts solutions of f(phi) = value (mod 2pi) in [0, 2pi) with signs.
///
/// A dense scan over 4096 cells brackets every transversal crossing; each
/// bracket is bisected to 1e-12. Crossings that touch without sign change
/// are below the scan's resolution by construction and are the caller's
/// responsibility to avoid (pick a regular value).
pub fn degree_circle_preimage(map: &CircleMapLift, value: f64) -> Result<PreimageSum> {
    let tau = 2.0 * std::f64::consts::PI;
    let g = |phi: f64| map.value(phi) - value;

    // Sample cell boundaries once; the final boundary is phi = 2pi itself.
    let mut samples = Vec::with_capacity(SCAN_CELLS + 1);
    for i in 0..=SCAN_CELLS {
        let phi = i as f64 * tau / SCAN_CELLS as f64;
        let gv = g(phi);
        if !gv.is_finite() {
            return Err(TopoError::NumericalDomain {
                value: gv,
                location: format!("phi = {phi:.6}"),
            });
        }
        samples.push((phi, gv));
    }

    let mut roots: Vec<f64> = Vec::new();
    for w in samples.windows(2) {
        let (lo, glo) = w[0];
        let (hi, ghi) = w[1];
        let m_min = (glo.min(ghi) / tau).floor() as i64;
        let m_max = (glo.max(ghi) / tau).ceil() as i64;
        for m in m_min..=m_max {
            let target = tau * m as f64;
            let (a, b) = (glo - target, ghi - target);
            if a == 0.0 {
                roots.push(lo);
                continue;
            }
            if b == 0.0 {
                continue; // next cell picks it up as its left endpoint
            }
            if a * b > 0.0 {
                continue;
            }
            let (mut lo, mut hi, mut a) = (lo, hi, a);
            for _ in 0..100 {
                if hi - lo < BISECT_TOL {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                let gm = g(mid) - target;
                if gm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if a * gm < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    a = gm;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
    }

    // Fold phi = 2pi onto 0 and merge near-duplicates from shared cell
    // boundaries.
    for r in roots.iter_mut() {
        if *r >= tau - PREIMAGE_MERGE_TOL {
            *r -= tau;
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() < PREIMAGE_MERGE_TOL);

    let h = tau / (8.0 * SCAN_CELLS as f64);
    let mut preimages = Vec::with_capacity(roots.len());
    let mut degree = 0i64;
    for phi in roots {
        let d = map.derivative(phi, h);
        if d.abs() <= CRITICAL_DERIVATIVE {
            return Err(TopoError::CriticalValue {
                point: phi,
                derivative: d.abs(),
            });
        }
        let sign: i8 = if d > 0.0 { 1 } else { -1 };
        degree += sign as i64;
        preimages.push(Preimage {
            phi,
            derivative: d,
            sign,
        });
    }
    Ok(PreimageSum { degree, preimages })
}

/// Winding number at each stage of a homotopy; constancy across stages is
/// the caller's check.
pub fn circle_degree_along_homotopy(
    family: impl Fn(f64) -> Result<CircleMapLift>,
    t_samples: &[f64],
    grid: &PeriodicGrid1D,
    tol: f64,
) -> Result<Vec<IntegerSnapResult>> {
    t_samples
        .iter()
        .map(|t| winding_number(&family(*t)?, grid, tol))
        .collect()
}

/// A sphere self-map in image colatitude/azimuth form.
pub struct SphereMap2 {
    f1: Scalar2,
    f2: Scalar2,
    /// rows: [df1/dtheta, df1/dphi], [df2/dtheta, df2/dphi]
    partials: Option<Box<dyn Fn(f64, f64) -> [[f64; 2]; 2] + Send + Sync>>,
}

impl SphereMap2 {
    pub fn new(
        f1: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        f2: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::build(Box::new(f1), Box::new(f2), None)
    }

    pub fn with_partials(
        f1: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        f2: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        partials: impl Fn(f64, f64) -> [[f64; 2]; 2] + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::build(Box::new(f1), Box::new(f2), Some(Box::new(partials)))
    }

    fn build(
        f1: Scalar2,
        f2: Scalar2,
        partials: Option<Box<dyn Fn(f64, f64) -> [[f64; 2]; 2] + Send + Sync>>,
    ) -> Result<Self> {
        let map = Self { f1, f2, partials };
        let tau = 2.0 * std::f64::consts::PI;
        // The angles themselves may jump by multiples of 2pi; the image
        // point must not move.
        for theta in [0.31, 1.17, 2.23, 2.9] {
            for phi in [0.0, 1.7, 4.4] {
                let a = map.image_point(theta, phi);
                let b = map.image_point(theta, phi + tau);
                let dist =
                    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
                if !dist.is_finite() || dist > LIFT_TOL {
                    return Err(TopoError::InvalidMap(format!(
                        "image is not 2pi-periodic in phi at (theta, phi) = ({theta}, {phi}): moved by {dist:.3e}"
                    )));
                }
            }
        }
        Ok(map)
    }

    pub fn angles(&self, theta: f64, phi: f64) -> (f64, f64) {
        ((self.f1)(theta, phi), (self.f2)(theta, phi))
    }

    /// Image as a point of S^2.
    pub fn image_point(&self, theta: f64, phi: f64) -> [f64; 3] {
        let (a, b) = self.angles(theta, phi);
        [a.sin() * b.cos(), a.sin() * b.sin(), a.cos()]
    }

    fn jacobian(&self, theta: f64, phi: f64, h_theta: f64, h_phi: f64) -> [[f64; 2]; 2] {
        match &self.partials {
            Some(p) => p(theta, phi),
            None => {
                let d1t = ((self.f1)(theta + h_theta, phi) - (self.f1)(theta - h_theta, phi))
                    / (2.0 * h_theta);
                let d1p =
                    ((self.f1)(theta, phi + h_phi) - (self.f1)(theta, phi - h_phi)) / (2.0 * h_phi);
                let d2t = ((self.f2)(theta + h_theta, phi) - (self.f2)(theta - h_theta, phi))
                    / (2.0 * h_theta);
                let d2p =
                    ((self.f2)(theta, phi + h_phi) - (self.f2)(theta, phi - h_phi)) / (2.0 * h_phi);
                [[d1t, d1p], [d2t, d2p]]
            }
        }
    }
}

/// Degree of a sphere map by quadrature of the pulled-back area form.
pub fn degree_sphere2(map: &SphereMap2, grid: &SphereGrid2, tol: f64) -> Result<IntegerSnapResult> {
    let h_theta = std::f64::consts::PI / (8.0 * grid.n_theta() as f64);
    let h_phi = 2.0 * std::f64::consts::PI / (8.0 * grid.n_phi() as f64);
    let raw = integrate_sphere2(grid, |theta, phi| {
        let (a, _) = map.angles(theta, phi);
        let j = map.jacobian(theta, phi, h_theta, h_phi);
        a.sin() * (j[0][0] * j[1][1] - j[0][1] * j[1][0])
    })? / (4.0 * std::f64::consts::PI);
    snap_integer(raw, tol)
}

/// Sphere-map degree at each stage of a homotopy.
pub fn sphere2_degree_along_homotopy(
    family: impl Fn(f64) -> Result<SphereMap2>,
    t_samples: &[f64],
    grid: &SphereGrid2,
    tol: f64,
) -> Result<Vec<IntegerSnapResult>> {
    t_samples
        .iter()
        .map(|t| degree_sphere2(&family(*t)?, grid, tol))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::DEFAULT_SNAP_TOL;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn grid64() -> PeriodicGrid1D {
        PeriodicGrid1D::standard(64).unwrap()
    }

    #[test]
    fn winding_of_linear_lifts() {
        for n in -5..=5 {
            let map = CircleMapLift::new(move |p| n as f64 * p).unwrap();
            let r = winding_number(&map, &grid64(), DEFAULT_SNAP_TOL).unwrap();
            assert_eq!(r.snapped, n);
            assert!(r.residual < 1e-12);
        }
    }

    #[test]
    fn winding_of_perturbed_lifts() {
        let map = CircleMapLift::new(|p| p + 0.5 * p.sin()).unwrap();
        assert_eq!(winding_number(&map, &grid64(), DEFAULT_SNAP_TOL).unwrap().snapped, 1);

        let map = CircleMapLift::with_derivative(
            |p| -2.0 * p + 0.3 * (2.0 * p).cos(),
            |p| -2.0 - 0.6 * (2.0 * p).sin(),
        )
        .unwrap();
        let r = winding_number(&map, &grid64(), DEFAULT_SNAP_TOL).unwrap();
        assert_eq!(r.snapped, -2);
        assert!(r.residual < 1e-12);
    }

    #[test]
    fn non_lift_is_rejected() {
        assert!(CircleMapLift::new(|p| 0.5 * p).is_err());
        assert!(CircleMapLift::new(|p| p + 0.1 * (0.5 * p).sin()).is_err());
    }

    #[test]
    fn preimage_examples() {
        let map = CircleMapLift::new(|p| 2.0 * p).unwrap();
        let r = degree_circle_preimage(&map, 0.7).unwrap();
        assert_eq!(r.degree, 2);
        assert_eq!(r.preimages.len(), 2);
        assert!((r.preimages[0].phi - 0.35).abs() < 1e-9);
        assert!((r.preimages[1].phi - (0.35 + PI)).abs() < 1e-9);

        let map = CircleMapLift::new(|p| p + 0.9 * p.sin()).unwrap();
        let r = degree_circle_preimage(&map, PI).unwrap();
        assert_eq!(r.degree, 1);
        assert_eq!(r.preimages.len(), 1);

        let map = CircleMapLift::new(|p| 0.4 * p.sin()).unwrap();
        let r = degree_circle_preimage(&map, 1.8).unwrap();
        assert_eq!(r.degree, 0);
        assert!(r.preimages.is_empty());
    }

    #[test]
    fn degree_zero_map_with_cancelling_preimages() {
        // f = 0.9 sin(phi) crosses 0.3 going up and coming back down.
        let map = CircleMapLift::new(|p| 0.9 * p.sin()).unwrap();
        let r = degree_circle_preimage(&map, 0.3).unwrap();
        assert_eq!(r.degree, 0);
        assert_eq!(r.preimages.len(), 2);
        assert_eq!(r.preimages.iter().map(|p| p.sign as i64).sum::<i64>(), 0);
    }

    #[test]
    fn critical_value_is_refused() {
        // f' = 1 + cos(phi) vanishes at phi = pi where f = pi.
        let map = CircleMapLift::with_derivative(|p| p + p.sin(), |p| 1.0 + p.cos()).unwrap();
        let err = degree_circle_preimage(&map, PI).unwrap_err();
        assert!(matches!(err, TopoError::CriticalValue { .. }));
    }

    #[test]
    fn quadrature_agrees_with_sign_counting() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for n in -3..=3i64 {
            let map = CircleMapLift::with_derivative(
                move |p| n as f64 * p + 0.3 * (2.0 * p).sin(),
                move |p| n as f64 + 0.6 * (2.0 * p).cos(),
            )
            .unwrap();
            let by_integral = winding_number(&map, &grid64(), DEFAULT_SNAP_TOL).unwrap().snapped;
            let mut checked = 0;
            while checked < 5 {
                let value = rng.gen_range(-10.0..10.0);
                match degree_circle_preimage(&map, value) {
                    Ok(sum) => {
                        assert_eq!(sum.degree, by_integral, "n = {n}, value = {value}");
                        checked += 1;
                    }
                    Err(TopoError::CriticalValue { .. }) => continue,
                    Err(other) => panic!("unexpected error {other:?}"),
                }
            }
        }
    }

    #[test]
    fn winding_is_multiplicative_under_composition() {
        let outer = |x: f64| 2.0 * x + 0.1 * x.sin();
        for (m, dm) in [(1i64, 0.2), (-3, 0.15), (0, 0.4)] {
            let inner = move |p: f64| m as f64 * p + dm * p.cos() - dm;
            let composed = CircleMapLift::new(move |p| outer(inner(p))).unwrap();
            let r = winding_number(&composed, &grid64(), DEFAULT_SNAP_TOL).unwrap();
            assert_eq!(r.snapped, 2 * m);
        }
    }

    #[test]
    fn degree_constant_along_homotopies() {
        let g = grid64();
        let ts: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();

        // straight-line homotopy between two degree-2 lifts
        let rs = circle_degree_along_homotopy(
            |t| CircleMapLift::new(move |p| 2.0 * p + t * 0.8 * (3.0 * p).sin()),
            &ts,
            &g,
            DEFAULT_SNAP_TOL,
        )
        .unwrap();
        assert!(rs.iter().all(|r| r.snapped == 2));

        // rotation of the image circle
        let rs = circle_degree_along_homotopy(
            |t| CircleMapLift::new(move |p| 3.0 * p + t),
            &ts,
            &g,
            DEFAULT_SNAP_TOL,
        )
        .unwrap();
        assert!(rs.iter().all(|r| r.snapped == 3));
    }

    fn sphere_grid() -> SphereGrid2 {
        SphereGrid2::new(32, 64).unwrap()
    }

    fn twist(k: i64) -> SphereMap2 {
        SphereMap2::with_partials(
            |t, _| t,
            move |_, p| k as f64 * p,
            move |_, _| [[1.0, 0.0], [0.0, k as f64]],
        )
        .unwrap()
    }

    #[test]
    fn sphere_identity_and_twists() {
        for k in -4..=4 {
            let r = degree_sphere2(&twist(k), &sphere_grid(), DEFAULT_SNAP_TOL).unwrap();
            assert_eq!(r.snapped, k);
            assert!(r.residual < 1e-8, "k = {k}: residual {}", r.residual);
        }
    }

    #[test]
    fn sphere_antipodal_map() {
        let map = SphereMap2::with_partials(
            |t, _| PI - t,
            |_, p| p + PI,
            |_, _| [[-1.0, 0.0], [0.0, 1.0]],
        )
        .unwrap();
        let r = degree_sphere2(&map, &sphere_grid(), DEFAULT_SNAP_TOL).unwrap();
        assert_eq!(r.snapped, -1);
        assert!(r.residual < 1e-8);
    }

    #[test]
    fn sphere_twist_without_partials_still_snaps() {
        let map = SphereMap2::new(|t, _| t, |_, p| 2.0 * p).unwrap();
        let r = degree_sphere2(&map, &sphere_grid(), DEFAULT_SNAP_TOL).unwrap();
        assert_eq!(r.snapped, 2);
    }

    #[test]
    fn non_surjective_sphere_map_has_degree_zero() {
        // image stays in a small cap around colatitude 1
        let map = SphereMap2::new(
            |t, p| 1.0 + 0.3 * t.sin() * p.cos(),
            |t, p| 0.5 + 0.2 * t.cos() * p.sin(),
        )
        .unwrap();
        let r = degree_sphere2(&map, &sphere_grid(), DEFAULT_SNAP_TOL).unwrap();
        assert_eq!(r.snapped, 0);
    }

    #[test]
    fn sphere_map_must_be_periodic() {
        assert!(SphereMap2::new(|t, _| t, |_, p| 0.5 * p).is_err());
    }

    #[test]
    fn sphere_degree_constant_along_homotopy() {
        let ts: Vec<f64> = (0..=6).map(|i| i as f64 / 6.0).collect();
        let rs = sphere2_degree_along_homotopy(
            |s| {
                SphereMap2::new(
                    move |t, _| t,
                    move |t, p| 2.0 * p + s * PI * t.sin(),
                )
            },
            &ts,
            &sphere_grid(),
            DEFAULT_SNAP_TOL,
        )
        .unwrap();
        assert!(rs.iter().all(|r| r.snapped == 2), "{rs:?}");
    }

    #[test]
    fn doubling_the_grid_does_not_hurt() {
        // residual may sit at the noise floor; doubling must not push it
        // above twice its value plus that floor
        let floor = 1e-13;
        let g = grid64();
        let map = CircleMapLift::new(|p| 2.0 * p + 0.7 * p.sin()).unwrap();
        let r1 = winding_number(&map, &g, DEFAULT_SNAP_TOL).unwrap().residual;
        let r2 = winding_number(&map, &g.doubled(), DEFAULT_SNAP_TOL).unwrap().residual;
        assert!(r2 <= 2.0 * r1 + floor);

        let sg = sphere_grid();
        let r1 = degree_sphere2(&twist(3), &sg, DEFAULT_SNAP_TOL).unwrap().residual;
        let r2 = degree_sphere2(&twist(3), &sg.doubled().unwrap(), DEFAULT_SNAP_TOL)
            .unwrap()
            .residual;
        assert!(r2 <= 2.0 * r1 + floor);
    }
}
