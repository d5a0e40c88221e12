//! Tangent vector fields on closed surfaces: zero finding, local indices
//! and the index sum against the Euler characteristic.
//!
//! A surface is covered by explicit oriented charts. The sphere gets two
//! stereographic charts (projection from each pole, one axis flipped in
//! the second so the orientations agree on the overlap); the torus gets a
//! single doubly periodic chart. Fields live as chart components, indices
//! come from the winding of the components around small chart circles, and
//! the index is a chart-independent integer, which the tests check by
//! computing it in both sphere charts where a zero is visible twice.

use std::sync::Arc;

use crate::error::{Result, TopoError};
use crate::field_index::index_at_point_2d;
use crate::linalg::{cross3, dot3};

/// One oriented chart: a window in (u, v), the embedding into R^3, and the
/// chart components of the field.
pub struct ChartField {
    pub name: &'static str,
    /// [[u_min, u_max], [v_min, v_max]]
    pub window: [[f64; 2]; 2],
    /// both axes wrap with the window period
    pub periodic: bool,
    embed: Box<dyn Fn(f64, f64) -> [f64; 3] + Send + Sync>,
    components: Box<dyn Fn(f64, f64) -> [f64; 2] + Send + Sync>,
}

impl ChartField {
    pub fn embed(&self, u: f64, v: f64) -> [f64; 3] {
        (self.embed)(u, v)
    }

    pub fn components(&self, u: f64, v: f64) -> [f64; 2] {
        (self.components)(u, v)
    }

    fn span(&self) -> [f64; 2] {
        [
            self.window[0][1] - self.window[0][0],
            self.window[1][1] - self.window[1][0],
        ]
    }
}

/// A tangent field presented in an atlas, with the surface's Euler
/// characteristic riding along.
pub struct TangentField {
    pub surface: &'static str,
    charts: Vec<ChartField>,
    chi: i64,
}

impl std::fmt::Debug for TangentField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TangentField")
            .field("surface", &self.surface)
            .field("charts", &self.charts.len())
            .field("chi", &self.chi)
            .finish()
    }
}

const SPHERE_WINDOW: f64 = 1.5;

/// Stereographic chart from the given hemisphere; `flip` mirrors v so both
/// charts orient the sphere the same way.
fn stereographic_chart(
    name: &'static str,
    flip: bool,
    field: Arc<dyn Fn([f64; 3]) -> [f64; 3] + Send + Sync>,
) -> ChartField {
    let sign = if flip { -1.0 } else { 1.0 };
    let embed = move |u: f64, v: f64| -> [f64; 3] {
        let s = 1.0 + u * u + v * v;
        [2.0 * u / s, sign * 2.0 * v / s, sign * (u * u + v * v - 1.0) / s]
    };
    let jacobian = move |u: f64, v: f64| -> [[f64; 3]; 2] {
        let s = 1.0 + u * u + v * v;
        let s2 = s * s;
        [
            [2.0 * (s - 2.0 * u * u) / s2, sign * -4.0 * u * v / s2, sign * 4.0 * u / s2],
            [-4.0 * u * v / s2, sign * 2.0 * (s - 2.0 * v * v) / s2, sign * 4.0 * v / s2],
        ]
    };
    let components = move |u: f64, v: f64| -> [f64; 2] {
        let p = embed(u, v);
        let w = field(p);
        // tangential part, then chart components from the Gram system
        let wn = dot3(w, p);
        let wt = [w[0] - wn * p[0], w[1] - wn * p[1], w[2] - wn * p[2]];
        let j = jacobian(u, v);
        let (guu, guv, gvv) = (dot3(j[0], j[0]), dot3(j[0], j[1]), dot3(j[1], j[1]));
        let (bu, bv) = (dot3(j[0], wt), dot3(j[1], wt));
        let det = guu * gvv - guv * guv;
        [(gvv * bu - guv * bv) / det, (guu * bv - guv * bu) / det]
    };
    ChartField {
        name,
        window: [[-SPHERE_WINDOW, SPHERE_WINDOW]; 2],
        periodic: false,
        embed: Box::new(embed),
        components: Box::new(components),
    }
}

pub const TORUS_BIG_R: f64 = 2.0;
pub const TORUS_SMALL_R: f64 = 1.0;

fn torus_chart(
    components: impl Fn(f64, f64) -> [f64; 2] + Send + Sync + 'static,
) -> ChartField {
    let tau = 2.0 * std::f64::consts::PI;
    ChartField {
        name: "torus",
        window: [[0.0, tau], [0.0, tau]],
        periodic: true,
        embed: Box::new(|u: f64, v: f64| {
            let ring = TORUS_BIG_R + TORUS_SMALL_R * v.cos();
            [ring * u.cos(), ring * u.sin(), TORUS_SMALL_R * v.sin()]
        }),
        components: Box::new(components),
    }
}

impl TangentField {
    /// A field on the unit sphere from an ambient R^3 field, projected
    /// pointwise onto the tangent planes.
    pub fn sphere_from_ambient(
        field: impl Fn([f64; 3]) -> [f64; 3] + Send + Sync + 'static,
    ) -> Self {
        let field: Arc<dyn Fn([f64; 3]) -> [f64; 3] + Send + Sync> = Arc::new(field);
        TangentField {
            surface: "sphere",
            charts: vec![
                stereographic_chart("stereographic-south", false, field.clone()),
                stereographic_chart("stereographic-north", true, field),
            ],
            chi: 2,
        }
    }

    /// The tangential part of the constant field e_z: the gradient of the
    /// height function, up in the south, down in the north.
    pub fn sphere_gradient_z() -> Self {
        Self::sphere_from_ambient(|_| [0.0, 0.0, 1.0])
    }

    /// e_z x p, the rotation field about the z axis.
    pub fn sphere_rotation_z() -> Self {
        Self::sphere_from_ambient(|p| cross3([0.0, 0.0, 1.0], p))
    }

    /// A field on the standard torus (R = 2, r = 1) from chart components
    /// on the doubly periodic (u, v) square.
    pub fn torus_from_chart(
        components: impl Fn(f64, f64) -> [f64; 2] + Send + Sync + 'static,
    ) -> Self {
        TangentField { surface: "torus", charts: vec![torus_chart(components)], chi: 0 }
    }

    /// Constant drift along the rings; never zero.
    pub fn torus_constant() -> Self {
        Self::torus_from_chart(|_, _| [1.0, 0.0])
    }

    /// Metric gradient of the height-like function x = (R + r cos v) cos u;
    /// two extrema on the outer ring, two saddles on the inner one.
    pub fn torus_height_gradient() -> Self {
        Self::torus_from_chart(|u: f64, v: f64| {
            [
                -u.sin() / (TORUS_BIG_R + TORUS_SMALL_R * v.cos()),
                -v.sin() * u.cos() / TORUS_SMALL_R,
            ]
        })
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn charts(&self) -> &[ChartField] {
        &self.charts
    }
}

/// A located zero of a tangent field.
#[derive(Debug, Clone, Copy)]
pub struct SurfaceZero {
    pub chart: usize,
    pub uv: [f64; 2],
    pub ambient: [f64; 3],
}

const SCAN_CELLS: usize = 256;
const REFINE_TOL: f64 = 1e-12;
const NEWTON_STEPS: usize = 50;
const CHART_DEDUPE: f64 = 1e-6;
const AMBIENT_DEDUPE: f64 = 1e-8;

/// All zeros of the field: a sign-change scan over each chart window
/// refined by a damped Newton iteration, deduplicated across charts by
/// ambient position.
pub fn find_zeros(field: &TangentField) -> Result<Vec<SurfaceZero>> {
    let mut zeros: Vec<SurfaceZero> = Vec::new();
    for (ci, chart) in field.charts.iter().enumerate() {
        for seed in scan_cells(chart) {
            let uv = fold_into_window(chart, refine(chart, seed)?);
            if !inside_window(chart, uv) {
                continue; // another chart owns it
            }
            let ambient = chart.embed(uv[0], uv[1]);
            let duplicate = zeros.iter().any(|z| {
                (z.chart == ci && chart_distance(chart, z.uv, uv) < CHART_DEDUPE)
                    || ambient_distance(z.ambient, ambient) < AMBIENT_DEDUPE
            });
            if !duplicate {
                zeros.push(SurfaceZero { chart: ci, uv, ambient });
            }
        }
    }
    Ok(zeros)
}

/// Cell centers whose corners show a sign change in both components.
fn scan_cells(chart: &ChartField) -> Vec<[f64; 2]> {
    let n = SCAN_CELLS;
    let lines = if chart.periodic { n } else { n + 1 };
    let [su, sv] = chart.span();
    let (du, dv) = (su / n as f64, sv / n as f64);
    let node = |i: usize, j: usize| {
        let (i, j) = if chart.periodic { (i % n, j % n) } else { (i, j) };
        (chart.window[0][0] + i as f64 * du, chart.window[1][0] + j as f64 * dv)
    };
    let mut values = vec![[0.0_f64; 2]; lines * lines];
    for i in 0..lines {
        for j in 0..lines {
            let (u, v) = node(i, j);
            values[i * lines + j] = chart.components(u, v);
        }
    }
    let mut seeds = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let corner = |di: usize, dj: usize| {
                let (ii, jj) = if chart.periodic {
                    ((i + di) % n, (j + dj) % n)
                } else {
                    (i + di, j + dj)
                };
                values[ii * lines + jj]
            };
            let quad = [corner(0, 0), corner(1, 0), corner(0, 1), corner(1, 1)];
            let changes = |k: usize| {
                let min = quad.iter().map(|q| q[k]).fold(f64::INFINITY, f64::min);
                let max = quad.iter().map(|q| q[k]).fold(f64::NEG_INFINITY, f64::max);
                min <= 0.0 && max >= 0.0
            };
            if changes(0) && changes(1) {
                let (u0, v0) = node(i, j);
                seeds.push([u0 + 0.5 * du, v0 + 0.5 * dv]);
            }
        }
    }
    seeds
}

/// Damped Newton from a seed, central-difference Jacobian.
fn refine(chart: &ChartField, seed: [f64; 2]) -> Result<[f64; 2]> {
    let [su, sv] = chart.span();
    let h = [1e-6 * su, 1e-6 * sv];
    let mut x = seed;
    let mut r = chart.components(x[0], x[1]);
    let mut res = (r[0] * r[0] + r[1] * r[1]).sqrt();
    for _ in 0..NEWTON_STEPS {
        if res < REFINE_TOL {
            return Ok(x);
        }
        let j = [
            [
                (chart.components(x[0] + h[0], x[1])[0] - chart.components(x[0] - h[0], x[1])[0]) / (2.0 * h[0]),
                (chart.components(x[0], x[1] + h[1])[0] - chart.components(x[0], x[1] - h[1])[0]) / (2.0 * h[1]),
            ],
            [
                (chart.components(x[0] + h[0], x[1])[1] - chart.components(x[0] - h[0], x[1])[1]) / (2.0 * h[0]),
                (chart.components(x[0], x[1] + h[1])[1] - chart.components(x[0], x[1] - h[1])[1]) / (2.0 * h[1]),
            ],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-300 || !det.is_finite() {
            return Err(TopoError::ZeroRefinement {
                u: x[0],
                v: x[1],
                reason: format!("singular Jacobian (det {det:.3e})"),
            });
        }
        let full = [
            -(j[1][1] * r[0] - j[0][1] * r[1]) / det,
            -(j[0][0] * r[1] - j[1][0] * r[0]) / det,
        ];
        // backtrack until the residual actually drops
        let mut lambda = 1.0;
        loop {
            let trial = [x[0] + lambda * full[0], x[1] + lambda * full[1]];
            let rt = chart.components(trial[0], trial[1]);
            let res_t = (rt[0] * rt[0] + rt[1] * rt[1]).sqrt();
            if res_t < res {
                x = trial;
                r = rt;
                res = res_t;
                break;
            }
            lambda *= 0.5;
            if lambda < 1e-6 {
                return Err(TopoError::ZeroRefinement {
                    u: x[0],
                    v: x[1],
                    reason: format!("stalled at residual {res:.3e}"),
                });
            }
        }
    }
    if res < REFINE_TOL {
        Ok(x)
    } else {
        Err(TopoError::ZeroRefinement {
            u: x[0],
            v: x[1],
            reason: format!("no convergence after {NEWTON_STEPS} steps (residual {res:.3e})"),
        })
    }
}

fn fold_into_window(chart: &ChartField, uv: [f64; 2]) -> [f64; 2] {
    if !chart.periodic {
        return uv;
    }
    let [su, sv] = chart.span();
    [
        (uv[0] - chart.window[0][0]).rem_euclid(su) + chart.window[0][0],
        (uv[1] - chart.window[1][0]).rem_euclid(sv) + chart.window[1][0],
    ]
}

fn inside_window(chart: &ChartField, uv: [f64; 2]) -> bool {
    chart.periodic
        || (uv[0] >= chart.window[0][0]
            && uv[0] <= chart.window[0][1]
            && uv[1] >= chart.window[1][0]
            && uv[1] <= chart.window[1][1])
}

fn chart_distance(chart: &ChartField, a: [f64; 2], b: [f64; 2]) -> f64 {
    let mut d = [a[0] - b[0], a[1] - b[1]];
    if chart.periodic {
        let [su, sv] = chart.span();
        d[0] = d[0].abs().min(su - d[0].abs());
        d[1] = d[1].abs().min(sv - d[1].abs());
    }
    (d[0] * d[0] + d[1] * d[1]).sqrt()
}

fn ambient_distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

const INDEX_SAMPLES: usize = 256;
const MAX_INDEX_RADIUS: f64 = 0.5;

/// Index of the field at one of its zeros: the winding of the chart
/// components around a chart circle. With no radius given, half the
/// distance to the nearest other zero is used (capped at 0.5 and kept
/// inside the window); a circle that strictly encloses a second zero is
/// refused.
pub fn zero_index(
    field: &TangentField,
    zeros: &[SurfaceZero],
    which: usize,
    radius: Option<f64>,
    tol: f64,
) -> Result<crate::quadrature::IntegerSnapResult> {
    let zero = zeros.get(which).ok_or_else(|| {
        TopoError::Geometry(format!("zero #{which} out of range ({} zeros)", zeros.len()))
    })?;
    let chart = &field.charts[zero.chart];

    // neighbours as seen in this zero's chart
    let neighbours: Vec<[f64; 2]> = zeros
        .iter()
        .enumerate()
        .filter(|&(i, z)| i != which && z.chart == zero.chart)
        .map(|(_, z)| z.uv)
        .collect();
    let nearest = neighbours
        .iter()
        .map(|n| chart_distance(chart, *n, zero.uv))
        .fold(f64::INFINITY, f64::min);

    let radius = match radius {
        Some(r) => {
            if !(r.is_finite() && r > 0.0) {
                return Err(TopoError::Geometry(format!("encircling radius {r} must be positive")));
            }
            r
        }
        None => {
            let mut r = (0.5 * nearest).min(MAX_INDEX_RADIUS);
            if !chart.periodic {
                let edge = (zero.uv[0] - chart.window[0][0])
                    .min(chart.window[0][1] - zero.uv[0])
                    .min(zero.uv[1] - chart.window[1][0])
                    .min(chart.window[1][1] - zero.uv[1]);
                r = r.min(0.9 * edge);
            }
            if !(r > 0.0) {
                return Err(TopoError::Geometry(
                    "cannot pick an encircling radius; pass one explicitly".into(),
                ));
            }
            r
        }
    };
    if nearest <= radius {
        return Err(TopoError::Geometry(format!(
            "another zero lies within the encircling radius {radius} (distance {nearest:.6})"
        )));
    }

    index_at_point_2d(
        |u, v| chart.components(u, v)[0],
        |u, v| chart.components(u, v)[1],
        zero.uv,
        radius,
        INDEX_SAMPLES,
        tol,
    )
}

#[derive(Debug, Clone)]
pub struct ZeroReport {
    pub chart: &'static str,
    pub uv: [f64; 2],
    pub ambient: [f64; 3],
    pub index: i64,
}

#[derive(Debug, Clone)]
pub struct PoincareHopfReport {
    pub zeros: Vec<ZeroReport>,
    pub index_sum: i64,
    pub chi: i64,
}

impl PoincareHopfReport {
    pub fn matches(&self) -> bool {
        self.index_sum == self.chi
    }
}

/// Locate every zero, compute every index, and compare the sum with the
/// Euler characteristic.
pub fn poincare_hopf_report(field: &TangentField, tol: f64) -> Result<PoincareHopfReport> {
    let zeros = find_zeros(field)?;
    let mut reports = Vec::with_capacity(zeros.len());
    let mut index_sum = 0;
    for which in 0..zeros.len() {
        let index = zero_index(field, &zeros, which, None, tol)?.snapped;
        index_sum += index;
        let z = zeros[which];
        reports.push(ZeroReport {
            chart: field.charts[z.chart].name,
            uv: z.uv,
            ambient: z.ambient,
            index,
        });
    }
    Ok(PoincareHopfReport { zeros: reports, index_sum, chi: field.chi() })
}
