//! SU(2)-valued boundary data and its topological charges.
//!
//! Group elements are unit quaternions in the basis (e1, e2, e3, 1) of
//! anti-Hermitian generators plus the identity, with the product law
//!
//!   e_a e_b = -delta_ab - eps_abc e_c,
//!
//! so an element is a real quadruple (v1, v2, v3, v4) and the matrix trace
//! is 2 v4. Everything stays in this closed form; no complex 2x2 matrices
//! appear anywhere.
//!
//! A map S^3 -> SU(2) is a unit 4-vector field, and its charge
//!
//!   Q = (1 / (2 pi^2 * 3!)) * integral of eps_abcd V^a dV^b ^ dV^c ^ dV^d
//!
//! is exactly the solid-angle pullback integral in dimension 3: after
//! antisymmetrization over the three chart directions, the eps-contraction
//! collapses to det[V | dV] and the 3! cancels. The winding family
//! omega_k(u) = quat(u)^k carries charge k, additively under pointwise
//! products, and the same machinery evaluates the (1 / 8 pi^2) tr[F ^ F]
//! volume integral for gauge fields on R^4.

use std::sync::Arc;

use rand::{Rng, SeedableRng};

use crate::error::{Result, TopoError};
use crate::forms::{pullback_integral_s2, pullback_integral_s3, sphere3_point};
use crate::linalg::{det4, norm3};
use crate::quadrature::{
    pairwise_sum, snap_integer, IntegerSnapResult, SphereGrid2, SphereGrid3,
};

/// A quaternion in the (e1, e2, e3, 1) basis; v4 multiplies the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quat {
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
    pub v4: f64,
}

impl Quat {
    pub const ZERO: Quat = Quat { v1: 0.0, v2: 0.0, v3: 0.0, v4: 0.0 };
    pub const ONE: Quat = Quat { v1: 0.0, v2: 0.0, v3: 0.0, v4: 1.0 };

    pub fn from_vec4(u: [f64; 4]) -> Quat {
        Quat { v1: u[0], v2: u[1], v3: u[2], v4: u[3] }
    }

    pub fn as_vec4(self) -> [f64; 4] {
        [self.v1, self.v2, self.v3, self.v4]
    }

    /// Product in the anti-Hermitian basis: the vector parts pick up a
    /// minus sign relative to the classical quaternion table.
    pub fn mul(self, o: Quat) -> Quat {
        let a = [self.v1, self.v2, self.v3];
        let b = [o.v1, o.v2, o.v3];
        let cross = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        Quat {
            v1: self.v4 * b[0] + o.v4 * a[0] - cross[0],
            v2: self.v4 * b[1] + o.v4 * a[1] - cross[1],
            v3: self.v4 * b[2] + o.v4 * a[2] - cross[2],
            v4: self.v4 * o.v4 - (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]),
        }
    }

    pub fn conj(self) -> Quat {
        Quat { v1: -self.v1, v2: -self.v2, v3: -self.v3, v4: self.v4 }
    }

    pub fn add(self, o: Quat) -> Quat {
        Quat { v1: self.v1 + o.v1, v2: self.v2 + o.v2, v3: self.v3 + o.v3, v4: self.v4 + o.v4 }
    }

    pub fn sub(self, o: Quat) -> Quat {
        Quat { v1: self.v1 - o.v1, v2: self.v2 - o.v2, v3: self.v3 - o.v3, v4: self.v4 - o.v4 }
    }

    pub fn scale(self, s: f64) -> Quat {
        Quat { v1: s * self.v1, v2: s * self.v2, v3: s * self.v3, v4: s * self.v4 }
    }

    pub fn norm(self) -> f64 {
        (self.v1 * self.v1 + self.v2 * self.v2 + self.v3 * self.v3 + self.v4 * self.v4).sqrt()
    }

    /// Trace of the corresponding 2x2 matrix.
    pub fn re_trace(self) -> f64 {
        2.0 * self.v4
    }

    pub fn commutator(self, o: Quat) -> Quat {
        self.mul(o).sub(o.mul(self))
    }
}

const UNIT_DRIFT: f64 = 1e-12;

/// A quaternion certified to have unit norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuat(Quat);

impl UnitQuat {
    pub const ONE: UnitQuat = UnitQuat(Quat::ONE);

    pub fn new(q: Quat) -> Result<UnitQuat> {
        let n = q.norm();
        if (n - 1.0).abs() > UNIT_DRIFT {
            return Err(TopoError::InvalidMap(format!(
                "quaternion norm {n} is not 1 within 1e-12"
            )));
        }
        Ok(UnitQuat(q))
    }

    /// Normalizes, so callers may pass any nonzero quadruple.
    pub fn normalized(q: Quat) -> Result<UnitQuat> {
        let n = q.norm();
        if n < 1e-12 {
            return Err(TopoError::SingularPoint);
        }
        Ok(UnitQuat(q.scale(1.0 / n)))
    }

    pub fn as_quat(self) -> Quat {
        self.0
    }

    pub fn as_vec4(self) -> [f64; 4] {
        self.0.as_vec4()
    }

    /// Group product. Floating-point drift beyond 1e-12 is renormalized so
    /// long trajectories stay on the group.
    pub fn mul(self, o: UnitQuat) -> UnitQuat {
        let q = self.0.mul(o.0);
        let n = q.norm();
        if (n - 1.0).abs() > UNIT_DRIFT {
            UnitQuat(q.scale(1.0 / n))
        } else {
            UnitQuat(q)
        }
    }

    pub fn inverse(self) -> UnitQuat {
        UnitQuat(self.0.conj())
    }

    pub fn re_trace(self) -> f64 {
        self.0.re_trace()
    }

    pub fn pow(self, k: i32) -> UnitQuat {
        let base = if k >= 0 { self } else { self.inverse() };
        let mut acc = UnitQuat::ONE;
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(base);
        }
        acc
    }
}

type EvalFn = Arc<dyn Fn([f64; 4]) -> UnitQuat + Send + Sync>;
type DerivFn = Arc<dyn Fn([f64; 4], [f64; 4]) -> Quat + Send + Sync>;

/// A map from S^3 (unit 4-vectors) into the group, with an optional
/// analytic directional derivative d(u, du) for du tangent to the sphere.
#[derive(Clone)]
pub struct Su2Map {
    eval: EvalFn,
    deriv: Option<DerivFn>,
}

impl std::fmt::Debug for Su2Map {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Su2Map")
            .field("has_derivative", &self.deriv.is_some())
            .finish_non_exhaustive()
    }
}

impl Su2Map {
    pub fn new(eval: impl Fn([f64; 4]) -> UnitQuat + Send + Sync + 'static) -> Self {
        Su2Map { eval: Arc::new(eval), deriv: None }
    }

    pub fn with_derivative(
        eval: impl Fn([f64; 4]) -> UnitQuat + Send + Sync + 'static,
        deriv: impl Fn([f64; 4], [f64; 4]) -> Quat + Send + Sync + 'static,
    ) -> Self {
        Su2Map { eval: Arc::new(eval), deriv: Some(Arc::new(deriv)) }
    }

    pub fn constant(q: UnitQuat) -> Self {
        Su2Map {
            eval: Arc::new(move |_| q),
            deriv: Some(Arc::new(|_, _| Quat::ZERO)),
        }
    }

    /// The winding family: u -> quat(u)^k, the identity identification of
    /// S^3 with the group raised to the k-th power. Carries charge k.
    ///
    /// The argument is normalized first, so the same closure also serves as
    /// the radial extension x -> omega(x/|x|) on R^4 minus the origin.
    pub fn omega_power(k: i32) -> Self {
        assert!(k.unsigned_abs() <= 16, "winding exponent {k} out of range (|k| <= 16)");
        let eval = move |u: [f64; 4]| {
            UnitQuat::normalized(Quat::from_vec4(u))
                .expect("omega_power evaluated at the origin")
                .pow(k)
        };
        let deriv = move |u: [f64; 4], du: [f64; 4]| -> Quat {
            let q = UnitQuat::normalized(Quat::from_vec4(u))
                .expect("omega_power differentiated at the origin");
            let dq = Quat::from_vec4(du);
            if k == 0 {
                return Quat::ZERO;
            }
            let (base, dbase) = if k > 0 { (q, dq) } else { (q.inverse(), dq.conj()) };
            // product rule over omega^m = omega * ... * omega
            let m = k.unsigned_abs();
            let mut sum = Quat::ZERO;
            for j in 0..m {
                let left = base.pow(j as i32).as_quat();
                let right = base.pow((m - 1 - j) as i32).as_quat();
                sum = sum.add(left.mul(dbase).mul(right));
            }
            sum
        };
        Su2Map { eval: Arc::new(eval), deriv: Some(Arc::new(deriv)) }
    }

    /// Pointwise group product of two maps.
    pub fn product(a: &Su2Map, b: &Su2Map) -> Self {
        let (ea, eb) = (a.eval.clone(), b.eval.clone());
        let eval = move |u: [f64; 4]| ea(u).mul(eb(u));
        let deriv = match (&a.deriv, &b.deriv) {
            (Some(da), Some(db)) => {
                let (ea, eb) = (a.eval.clone(), b.eval.clone());
                let (da, db) = (da.clone(), db.clone());
                let d = move |u: [f64; 4], du: [f64; 4]| -> Quat {
                    let (qa, qb) = (ea(u).as_quat(), eb(u).as_quat());
                    da(u, du).mul(qb).add(qa.mul(db(u, du)))
                };
                Some(Arc::new(d) as DerivFn)
            }
            _ => None,
        };
        Su2Map { eval: Arc::new(eval), deriv }
    }

    /// Pointwise inverse; negates the charge.
    pub fn inverted(&self) -> Self {
        let e = self.eval.clone();
        let eval = move |u: [f64; 4]| e(u).inverse();
        let deriv = self.deriv.as_ref().map(|d| {
            let d = d.clone();
            Arc::new(move |u: [f64; 4], du: [f64; 4]| d(u, du).conj()) as DerivFn
        });
        Su2Map { eval: Arc::new(eval), deriv }
    }

    pub fn eval(&self, u: [f64; 4]) -> UnitQuat {
        (self.eval)(u)
    }

    pub fn has_derivative(&self) -> bool {
        self.deriv.is_some()
    }

    /// Value and the three chart partials at (chi, theta, phi). Analytic
    /// derivative when available, otherwise central differences in the
    /// chart with the supplied steps.
    fn value_and_partials(
        &self,
        chi: f64,
        theta: f64,
        phi: f64,
        steps: [f64; 3],
    ) -> ([f64; 4], [[f64; 4]; 3]) {
        let (u, tangents) = sphere3_point(chi, theta, phi);
        let v = self.eval(u).as_vec4();
        let mut partials = [[0.0; 4]; 3];
        match &self.deriv {
            Some(d) => {
                for i in 0..3 {
                    partials[i] = d(u, tangents[i]).as_vec4();
                }
            }
            None => {
                let at = |c: f64, t: f64, p: f64| self.eval(sphere3_point(c, t, p).0).as_vec4();
                let stencil = [
                    (at(chi + steps[0], theta, phi), at(chi - steps[0], theta, phi), steps[0]),
                    (at(chi, theta + steps[1], phi), at(chi, theta - steps[1], phi), steps[1]),
                    (at(chi, theta, phi + steps[2]), at(chi, theta, phi - steps[2]), steps[2]),
                ];
                for (i, (f, b, h)) in stencil.iter().enumerate() {
                    for c in 0..4 {
                        partials[i][c] = (f[c] - b[c]) / (2.0 * h);
                    }
                }
            }
        }
        (v, partials)
    }
}

fn chart_steps(grid: &SphereGrid3) -> [f64; 3] {
    let pi = std::f64::consts::PI;
    [
        pi / (8.0 * grid.n_chi() as f64),
        pi / (8.0 * grid.n_theta() as f64),
        2.0 * pi / (8.0 * grid.n_phi() as f64),
    ]
}

/// Boundary winding charge of a group-valued map.
pub fn instanton_charge_boundary(
    map: &Su2Map,
    grid: &SphereGrid3,
    tol: f64,
) -> Result<IntegerSnapResult> {
    let steps = chart_steps(grid);
    let raw = pullback_integral_s3(grid, |chi, theta, phi| {
        Ok(map.value_and_partials(chi, theta, phi, steps))
    })?;
    snap_integer(raw, tol)
}

/// Charges of two maps and of their pointwise product.
#[derive(Debug, Clone)]
pub struct ProductChargeReport {
    pub q1: IntegerSnapResult,
    pub q2: IntegerSnapResult,
    pub q_product: IntegerSnapResult,
}

impl ProductChargeReport {
    pub fn additive(&self) -> bool {
        self.q_product.snapped == self.q1.snapped + self.q2.snapped
    }
}

pub fn product_charge_report(
    m1: &Su2Map,
    m2: &Su2Map,
    grid: &SphereGrid3,
    tol: f64,
) -> Result<ProductChargeReport> {
    Ok(ProductChargeReport {
        q1: instanton_charge_boundary(m1, grid, tol)?,
        q2: instanton_charge_boundary(m2, grid, tol)?,
        q_product: instanton_charge_boundary(&Su2Map::product(m1, m2), grid, tol)?,
    })
}

/// An S^3 chart point with three tangent directions to probe.
#[derive(Debug, Clone, Copy)]
pub struct S3Sample {
    /// (chi, theta, phi)
    pub point: [f64; 3],
    /// chart components of three tangent vectors
    pub frame: [[f64; 3]; 3],
}

/// Seeded interior sample points with random frames; polar margins keep
/// difference stencils inside the chart.
pub fn random_s3_samples(count: usize, seed: u64) -> Vec<S3Sample> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let pi = std::f64::consts::PI;
    (0..count)
        .map(|_| {
            let point = [
                rng.gen_range(0.3..pi - 0.3),
                rng.gen_range(0.3..pi - 0.3),
                rng.gen_range(0.0..2.0 * pi),
            ];
            let mut frame = [[0.0; 3]; 3];
            for row in frame.iter_mut() {
                for entry in row.iter_mut() {
                    *entry = rng.gen_range(-1.0..1.0);
                }
            }
            S3Sample { point, frame }
        })
        .collect()
}

const MC_STEP: f64 = 1e-5;

const PERMS3: [([usize; 3], f64); 6] = [
    ([0, 1, 2], 1.0),
    ([1, 2, 0], 1.0),
    ([2, 0, 1], 1.0),
    ([0, 2, 1], -1.0),
    ([2, 1, 0], -1.0),
    ([1, 0, 2], -1.0),
];

/// Largest pointwise defect of the identity
///
///   tr[(d omega omega^-1)^3] = -2 eps_abcd V^a dV^b ^ dV^c ^ dV^d
///
/// over the given samples, both sides evaluated on the sample's tangent
/// frame with central differences of step 1e-5.
pub fn maurer_cartan_residual(map: &Su2Map, samples: &[S3Sample]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for s in samples {
        let [chi, theta, phi] = s.point;
        let omega = map.eval(sphere3_point(chi, theta, phi).0);
        let inv = omega.inverse().as_quat();
        let v = omega.as_vec4();

        // derivatives of omega along the three frame directions
        let mut d_omega = [Quat::ZERO; 3];
        for (i, dir) in s.frame.iter().enumerate() {
            let probe = |sgn: f64| {
                let c = chi + sgn * MC_STEP * dir[0];
                let t = theta + sgn * MC_STEP * dir[1];
                let p = phi + sgn * MC_STEP * dir[2];
                map.eval(sphere3_point(c, t, p).0).as_quat()
            };
            d_omega[i] = probe(1.0).sub(probe(-1.0)).scale(1.0 / (2.0 * MC_STEP));
        }

        let a = [
            d_omega[0].mul(inv),
            d_omega[1].mul(inv),
            d_omega[2].mul(inv),
        ];
        let mut lhs = 0.0;
        for (p, sgn) in PERMS3 {
            lhs += sgn * a[p[0]].mul(a[p[1]]).mul(a[p[2]]).re_trace();
        }

        let dv = [d_omega[0].as_vec4(), d_omega[1].as_vec4(), d_omega[2].as_vec4()];
        let rhs = -12.0 * det4(v, dv[0], dv[1], dv[2]);

        let defect = (lhs - rhs).abs();
        if !defect.is_finite() {
            return Err(TopoError::NumericalDomain {
                value: defect,
                location: format!("(chi, theta, phi) = ({chi:.6}, {theta:.6}, {phi:.6})"),
            });
        }
        worst = worst.max(defect);
    }
    Ok(worst)
}

/// Asymptotic Higgs data on the boundary 2-sphere, as a 3-vector field of
/// the chart angles. Need not be normalized; the charge divides it out.
pub struct HiggsBoundaryField {
    phi: Box<dyn Fn(f64, f64) -> [f64; 3] + Send + Sync>,
    partials: Option<Box<dyn Fn(f64, f64) -> [[f64; 3]; 2] + Send + Sync>>,
}

impl HiggsBoundaryField {
    pub fn new(phi: impl Fn(f64, f64) -> [f64; 3] + Send + Sync + 'static) -> Self {
        Self { phi: Box::new(phi), partials: None }
    }

    pub fn with_partials(
        phi: impl Fn(f64, f64) -> [f64; 3] + Send + Sync + 'static,
        partials: impl Fn(f64, f64) -> [[f64; 3]; 2] + Send + Sync + 'static,
    ) -> Self {
        Self { phi: Box::new(phi), partials: Some(Box::new(partials)) }
    }

    /// (f1, f2) = (theta, k phi) boundary data of magnitude `scale`; the
    /// hedgehog is k = 1.
    pub fn twist(k: i32, scale: f64) -> Self {
        let kf = k as f64;
        Self::with_partials(
            move |theta: f64, phi: f64| {
                let (st, ct) = theta.sin_cos();
                let (sk, ck) = (kf * phi).sin_cos();
                [scale * st * ck, scale * st * sk, scale * ct]
            },
            move |theta: f64, phi: f64| {
                let (st, ct) = theta.sin_cos();
                let (sk, ck) = (kf * phi).sin_cos();
                [
                    [scale * ct * ck, scale * ct * sk, -scale * st],
                    [-scale * kf * st * sk, scale * kf * st * ck, 0.0],
                ]
            },
        )
    }

    pub fn hedgehog(scale: f64) -> Self {
        Self::twist(1, scale)
    }

    pub fn constant(v: [f64; 3]) -> Self {
        Self::with_partials(move |_, _| v, |_, _| [[0.0; 3]; 2])
    }

    /// The same field rotated pointwise by a fixed rotation; the charge is
    /// blind to it.
    pub fn rotated(self, axis: [f64; 3], angle: f64) -> Self {
        let HiggsBoundaryField { phi, partials } = self;
        let rotated_partials = partials.map(|p| {
            Box::new(move |t: f64, f: f64| {
                let m = p(t, f);
                [
                    crate::linalg::rotate3(axis, angle, m[0]),
                    crate::linalg::rotate3(axis, angle, m[1]),
                ]
            }) as Box<dyn Fn(f64, f64) -> [[f64; 3]; 2] + Send + Sync>
        });
        Self {
            phi: Box::new(move |t, f| crate::linalg::rotate3(axis, angle, phi(t, f))),
            partials: rotated_partials,
        }
    }

    fn value_and_partials(&self, theta: f64, phi: f64, steps: [f64; 2]) -> ([f64; 3], [[f64; 3]; 2]) {
        let v = (self.phi)(theta, phi);
        match &self.partials {
            Some(p) => (v, p(theta, phi)),
            None => {
                let f = &self.phi;
                let (tp, tm) = (f(theta + steps[0], phi), f(theta - steps[0], phi));
                let (pp, pm) = (f(theta, phi + steps[1]), f(theta, phi - steps[1]));
                let mut out = [[0.0; 3]; 2];
                for c in 0..3 {
                    out[0][c] = (tp[c] - tm[c]) / (2.0 * steps[0]);
                    out[1][c] = (pp[c] - pm[c]) / (2.0 * steps[1]);
                }
                (v, out)
            }
        }
    }
}

const ZERO_HIGGS: f64 = 1e-10;

/// Magnetic charge of the boundary Higgs field: the degree of its
/// direction map S^2 -> S^2.
pub fn monopole_charge(
    field: &HiggsBoundaryField,
    grid: &SphereGrid2,
    tol: f64,
) -> Result<IntegerSnapResult> {
    let pi = std::f64::consts::PI;
    let steps = [pi / (8.0 * grid.n_theta() as f64), 2.0 * pi / (8.0 * grid.n_phi() as f64)];
    let raw = pullback_integral_s2(grid, |theta, phi| {
        let (v, partials) = field.value_and_partials(theta, phi, steps);
        if norm3(v) <= ZERO_HIGGS {
            return Err(TopoError::ZeroHiggs {
                location: format!("(theta, phi) = ({theta:.6}, {phi:.6})"),
            });
        }
        Ok((v, partials))
    })?;
    snap_integer(raw, tol)
}

/// An su(2)-valued gauge potential on R^4, one quaternion per coordinate
/// direction (vector parts only; the identity component stays zero).
#[derive(Clone)]
pub struct GaugeFieldR4 {
    a: Arc<dyn Fn([f64; 4]) -> [Quat; 4] + Send + Sync>,
}

impl GaugeFieldR4 {
    pub fn new(a: impl Fn([f64; 4]) -> [Quat; 4] + Send + Sync + 'static) -> Self {
        Self { a: Arc::new(a) }
    }

    pub fn zero() -> Self {
        Self::new(|_| [Quat::ZERO; 4])
    }

    pub fn eval(&self, x: [f64; 4]) -> [Quat; 4] {
        (self.a)(x)
    }

    /// A_mu = -(d_mu omega) omega^-1 for the radial extension of a
    /// boundary map; flat by construction.
    pub fn pure_gauge(map: &Su2Map) -> Result<Self> {
        let deriv = map
            .deriv
            .clone()
            .ok_or_else(|| TopoError::InvalidMap("pure gauge needs an analytic derivative".into()))?;
        let eval = map.eval.clone();
        Ok(Self::new(move |x: [f64; 4]| {
            let r2: f64 = x.iter().map(|c| c * c).sum();
            if r2 == 0.0 {
                return [Quat::ZERO; 4];
            }
            let r = r2.sqrt();
            let xh = [x[0] / r, x[1] / r, x[2] / r, x[3] / r];
            let inv = eval(xh).inverse().as_quat();
            let mut out = [Quat::ZERO; 4];
            for mu in 0..4 {
                // d_mu of the normalized argument
                let mut du = [0.0; 4];
                for nu in 0..4 {
                    du[nu] = (((mu == nu) as u8) as f64 - xh[mu] * xh[nu]) / r;
                }
                out[mu] = deriv(xh, du).mul(inv).scale(-1.0);
            }
            out
        }))
    }

    /// The standard regular one-instanton potential
    ///
    ///   A_mu(x) = r^2 / (r^2 + rho^2) * (-d_mu omega_1) omega_1^-1
    ///
    /// centered at `center` with size rho. The interior profile is the
    /// textbook regular-gauge choice rather than boundary data; its
    /// normalization is certified by the volume charge converging to the
    /// boundary winding of omega_1.
    pub fn bpst(rho: f64, center: [f64; 4]) -> Result<Self> {
        if !(rho.is_finite() && rho > 0.0) {
            return Err(TopoError::Geometry(format!("instanton size rho = {rho} must be positive")));
        }
        Ok(Self::new(move |x: [f64; 4]| {
            let d = [x[0] - center[0], x[1] - center[1], x[2] - center[2], x[3] - center[3]];
            let r2: f64 = d.iter().map(|c| c * c).sum();
            if r2 == 0.0 {
                return [Quat::ZERO; 4];
            }
            let r = r2.sqrt();
            let xh = [d[0] / r, d[1] / r, d[2] / r, d[3] / r];
            let q_conj = Quat::from_vec4(xh).conj();
            let pref = -r / (r2 + rho * rho);
            let basis = [
                Quat { v1: 1.0, v2: 0.0, v3: 0.0, v4: 0.0 },
                Quat { v1: 0.0, v2: 1.0, v3: 0.0, v4: 0.0 },
                Quat { v1: 0.0, v2: 0.0, v3: 1.0, v4: 0.0 },
                Quat::ONE,
            ];
            let mut out = [Quat::ZERO; 4];
            for mu in 0..4 {
                // (e_mu qbar - x^mu 1): pure vector since Re(e_mu qbar) = x^mu
                let mut b = basis[mu].mul(q_conj);
                b.v4 -= xh[mu];
                out[mu] = b.scale(pref);
            }
            out
        }))
    }
}

/// Second Chern number of the field over a ball, *not* snapped: the cutoff
/// makes it land near an integer only as the radius grows, and that
/// convergence is the observable.
///
///   Q(R) = -(1 / 8 pi^2) * integral over |x - center| <= R of tr[F ^ F]
///
/// with F_mu_nu = d_mu A_nu - d_nu A_mu + [A_mu, A_nu] from central
/// differences of step 1e-4 R / radial_count.
pub fn chern_number_ball(
    field: &GaugeFieldR4,
    center: [f64; 4],
    radius: f64,
    radial_count: usize,
    grid: &SphereGrid3,
) -> Result<f64> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(TopoError::Geometry(format!("ball radius {radius} must be positive")));
    }
    if radial_count < 4 {
        return Err(TopoError::InvalidGrid(format!(
            "radial count {radial_count} is too small; need >= 4"
        )));
    }
    let h = 1e-4 * radius / radial_count as f64;
    let radial = crate::quadrature::gauss_legendre_on(radial_count, 0.0, radius);

    let mut vals =
        Vec::with_capacity(radial.len() * grid.n_chi() * grid.n_theta() * grid.n_phi());
    let wp = grid.phi_weight();
    for (r, wr) in &radial {
        for (chi, wc) in grid.chi_nodes() {
            for (theta, wt) in grid.theta_nodes() {
                for j in 0..grid.n_phi() {
                    let phi = grid.phi_node(j);
                    let (u, _) = sphere3_point(*chi, *theta, phi);
                    let x = [
                        center[0] + r * u[0],
                        center[1] + r * u[1],
                        center[2] + r * u[2],
                        center[3] + r * u[3],
                    ];
                    let d = trace_f_wedge_f(field, x, h);
                    if !d.is_finite() {
                        return Err(TopoError::NumericalDomain {
                            value: d,
                            location: format!("x = ({:.4}, {:.4}, {:.4}, {:.4})", x[0], x[1], x[2], x[3]),
                        });
                    }
                    let measure = r * r * r * chi.sin().powi(2) * theta.sin();
                    vals.push(d * measure * wr * wc * wt * wp);
                }
            }
        }
    }
    let pi = std::f64::consts::PI;
    Ok(-pairwise_sum(&vals) / (8.0 * pi * pi))
}

/// Coefficient of the volume form in tr[F ^ F] at x, from the three
/// independent pairings of the six field-strength components.
fn trace_f_wedge_f(field: &GaugeFieldR4, x: [f64; 4], h: f64) -> f64 {
    let a0 = field.eval(x);
    let mut da = [[Quat::ZERO; 4]; 4]; // da[mu][nu] = d_mu A_nu
    for mu in 0..4 {
        let mut fwd = x;
        let mut bwd = x;
        fwd[mu] += h;
        bwd[mu] -= h;
        let (af, ab) = (field.eval(fwd), field.eval(bwd));
        for nu in 0..4 {
            da[mu][nu] = af[nu].sub(ab[nu]).scale(1.0 / (2.0 * h));
        }
    }
    let f = |mu: usize, nu: usize| -> Quat {
        da[mu][nu].sub(da[nu][mu]).add(a0[mu].commutator(a0[nu]))
    };
    let s = |a: Quat, b: Quat| a.mul(b).re_trace();
    // (1/4) eps^{mu nu lam sig} tr[F_mn F_ls]
    2.0 * (s(f(0, 1), f(2, 3)) - s(f(0, 2), f(1, 3)) + s(f(0, 3), f(1, 2)))
}
