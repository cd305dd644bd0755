//! The preferred velocity field `dx^μ/ds = ω χ g^{μν} 𝒜_ν` and its
//! fixed-step RK4 integral curves.

use nalgebra::{Matrix4, Vector4};
use serde::{Deserialize, Serialize};

use crate::symtensor::{MetricTensor, NumericEnv, RatFun};

use super::metric5::{assemble_metric, FiveMetric};
use super::GeomError;

pub const STEP_LIMIT: f64 = 1e12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicState {
    pub x: [f64; 5],
    pub s: f64,
}

/// How the fifth velocity component was fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `G_{ab}u^a u^b = −1` solved for `u⁴`, larger root.
    UnitNorm,
    /// No real solution; `u⁴ = 1`.
    Fallback,
}

/// Numerically instantiated velocity field.
#[derive(Clone, Debug)]
pub struct VelocityField {
    g4: Vec<RatFun>,
    a: Vec<RatFun>,
    chi: RatFun,
    omega: RatFun,
    metric5: MetricTensor,
    env: NumericEnv,
}

pub fn preferred_geodesic_field(fm: &FiveMetric, env: NumericEnv) -> Result<VelocityField, GeomError> {
    let mut g4 = Vec::with_capacity(16);
    for row in &fm.g4 {
        for e in row {
            g4.push(e.to_ratfun()?);
        }
    }
    Ok(VelocityField {
        g4,
        a: fm.a.iter().map(|e| e.to_ratfun()).collect::<Result<_, _>>()?,
        chi: fm.chi.to_ratfun()?,
        omega: fm.omega.to_ratfun()?,
        metric5: assemble_metric(fm)?,
        env,
    })
}

impl VelocityField {
    fn scalar(&self, r: &RatFun, x: &[f64; 5], what: &str) -> Result<f64, GeomError> {
        let v = r.eval(&self.env, x)?.re;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(domain(x, what))
        }
    }

    pub fn velocity(&self, x: &[f64; 5]) -> Result<([f64; 5], Normalization), GeomError> {
        let mut g = Matrix4::zeros();
        for i in 0..4 {
            for j in 0..4 {
                g[(i, j)] = self.scalar(&self.g4[i * 4 + j], x, "observer metric")?;
            }
        }
        let ginv = g.try_inverse().ok_or_else(|| domain(x, "observer metric is singular"))?;
        let mut a = Vector4::zeros();
        for i in 0..4 {
            a[i] = self.scalar(&self.a[i], x, "potential")?;
        }
        let k = self.scalar(&self.omega, x, "omega")? * self.scalar(&self.chi, x, "chi")?;
        let u4d = ginv * a * k;

        let big = self.metric5.eval(&self.env, x)?;
        let alpha = big[(4, 4)];
        let beta: f64 = (0..4).map(|m| big[(m, 4)] * u4d[m]).sum();
        let gamma: f64 = (0..4).flat_map(|m| (0..4).map(move |n| (m, n))).map(|(m, n)| big[(m, n)] * u4d[m] * u4d[n]).sum();
        // α u² + 2β u + (γ + 1) = 0
        let disc = beta * beta - alpha * (gamma + 1.0);
        let (u4, mode) = if alpha != 0.0 && disc >= 0.0 {
            let r1 = (-beta + disc.sqrt()) / alpha;
            let r2 = (-beta - disc.sqrt()) / alpha;
            (r1.max(r2), Normalization::UnitNorm)
        } else {
            (1.0, Normalization::Fallback)
        };
        let u = [u4d[0], u4d[1], u4d[2], u4d[3], u4];
        if u.iter().all(|c| c.is_finite()) {
            Ok((u, mode))
        } else {
            Err(domain(x, "velocity"))
        }
    }
}

fn domain(x: &[f64; 5], reason: &str) -> GeomError {
    GeomError::EvaluationDomain { point: x.to_vec(), reason: reason.to_string() }
}

fn axpy(x: &[f64; 5], h: f64, k: &[f64; 5]) -> [f64; 5] {
    std::array::from_fn(|i| x[i] + h * k[i])
}

/// Classical fixed-step RK4; returns `steps + 1` states including the start.
pub fn integrate_geodesic(field: &VelocityField, start: GeodesicState, ds: f64, steps: usize) -> Result<Vec<GeodesicState>, GeomError> {
    if !(ds > 0.0) || steps == 0 {
        return Err(GeomError::InvalidStep);
    }
    let f = |x: &[f64; 5]| field.velocity(x).map(|(u, _)| u);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(start);
    let mut x = start.x;
    for step in 1..=steps {
        let k1 = f(&x)?;
        let k2 = f(&axpy(&x, ds / 2.0, &k1))?;
        let k3 = f(&axpy(&x, ds / 2.0, &k2))?;
        let k4 = f(&axpy(&x, ds, &k3))?;
        x = std::array::from_fn(|i| x[i] + ds / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
        if x.iter().any(|c| !c.is_finite()) {
            return Err(domain(&x, "state"));
        }
        if x.iter().any(|c| c.abs() > STEP_LIMIT) {
            return Err(GeomError::StepLimit { step });
        }
        out.push(GeodesicState { x, s: start.s + step as f64 * ds });
    }
    Ok(out)
}

/// Richardson order estimate `log₂(|x_h − x_{h/2}| / |x_{h/2} − x_{h/4}|)`
/// from the endpoints at `s = s_end`.
pub fn convergence_order(field: &VelocityField, start: GeodesicState, s_end: f64, ds: f64) -> Result<f64, GeomError> {
    let end = |h: f64| -> Result<[f64; 5], GeomError> {
        let steps = ((s_end - start.s) / h).round() as usize;
        Ok(integrate_geodesic(field, start, h, steps)?.last().expect("nonempty").x)
    };
    let (a, b, c) = (end(ds)?, end(ds / 2.0)?, end(ds / 4.0)?);
    let dist = |p: &[f64; 5], q: &[f64; 5]| p.iter().zip(q).map(|(u, v)| (u - v).powi(2)).sum::<f64>().sqrt();
    Ok((dist(&a, &b) / dist(&b, &c)).log2())
}

/// A trajectory with tangents, interpolated by cubic Hermite segments,
/// projected onto the first `dims` coordinates.
#[derive(Clone, Debug)]
pub struct PathImage {
    points: Vec<Vec<f64>>,
    /// Tangents scaled by the segment step.
    tangents: Vec<Vec<f64>>,
}

impl PathImage {
    pub fn new(field: &VelocityField, states: &[GeodesicState], dims: usize) -> Result<Self, GeomError> {
        let mut points = Vec::with_capacity(states.len());
        let mut tangents = Vec::with_capacity(states.len());
        let h = if states.len() > 1 { states[1].s - states[0].s } else { 0.0 };
        for st in states {
            let (u, _) = field.velocity(&st.x)?;
            points.push(st.x[..dims].to_vec());
            tangents.push(u[..dims].iter().map(|c| c * h).collect());
        }
        Ok(Self { points, tangents })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn hermite(&self, seg: usize, t: f64) -> Vec<f64> {
        let (p0, p1) = (&self.points[seg], &self.points[seg + 1]);
        let (m0, m1) = (&self.tangents[seg], &self.tangents[seg + 1]);
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        (0..p0.len()).map(|i| h00 * p0[i] + h10 * m0[i] + h01 * p1[i] + h11 * m1[i]).collect()
    }

    /// Distance from `p` to the interpolated curve.
    pub fn distance_to(&self, p: &[f64]) -> f64 {
        let d2 = |q: &[f64]| p.iter().zip(q).map(|(a, b)| (a - b).powi(2)).sum::<f64>();
        if self.points.len() == 1 {
            return d2(&self.points[0]).sqrt();
        }
        let nearest = (0..self.points.len())
            .min_by(|&i, &j| d2(&self.points[i]).total_cmp(&d2(&self.points[j])))
            .expect("nonempty");
        let lo = nearest.saturating_sub(2);
        let hi = (nearest + 2).min(self.points.len() - 2);
        let mut best = d2(&self.points[nearest]);
        for seg in lo..=hi {
            // golden-section search on the segment parameter
            let (mut a, mut b) = (0.0f64, 1.0f64);
            let r = 0.5 * (5f64.sqrt() - 1.0);
            for _ in 0..80 {
                let c = b - r * (b - a);
                let d = a + r * (b - a);
                if d2(&self.hermite(seg, c)) < d2(&self.hermite(seg, d)) {
                    b = d;
                } else {
                    a = c;
                }
            }
            best = best.min(d2(&self.hermite(seg, 0.5 * (a + b))));
        }
        best.sqrt()
    }

    /// Symmetric Hausdorff distance between the two images, measured from
    /// each vertex to the other interpolated curve.
    pub fn hausdorff(&self, other: &PathImage) -> f64 {
        let one = self.points.iter().map(|p| other.distance_to(p)).fold(0.0, f64::max);
        let two = other.points.iter().map(|p| self.distance_to(p)).fold(0.0, f64::max);
        one.max(two)
    }
}
