//! Finite-difference curvature, used to cross-check the symbolic engine.
//!
//! Only numeric metric values are taken from the symbolic side; all
//! derivatives are central differences with step [`FD_STEP`].

use nalgebra::DMatrix;
use serde::Serialize;

use super::curvature::CurvatureBundle;
use super::expr::FieldValues;
use super::metric::MetricTensor;
use super::SymError;

pub const FD_STEP: f64 = 1e-4;
pub const FD_REL_TOL: f64 = 1e-6;

/// `|a − b| / max(|b|, 1)`: relative error with a unit floor, so values near
/// zero are compared absolutely.
pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

#[derive(Debug, Clone)]
pub struct NumericCurvature {
    pub ricci: DMatrix<f64>,
    pub scalar: f64,
}

/// Ricci tensor and scalar of `g` at `x` from differenced metric values.
pub fn numeric_curvature(g: &MetricTensor, env: &dyn FieldValues, x: &[f64], h: f64) -> Result<NumericCurvature, SymError> {
    let n = g.dim();
    let at = |shift: &[(usize, f64)]| {
        let mut y = x.to_vec();
        for &(i, s) in shift {
            y[i] += s;
        }
        g.eval(env, &y)
    };
    let g0 = at(&[])?;
    let ginv = g0.clone().try_inverse().ok_or(SymError::SingularMetric)?;
    let mut dg = Vec::with_capacity(n);
    for k in 0..n {
        dg.push((at(&[(k, h)])? - at(&[(k, -h)])?) / (2.0 * h));
    }
    // ddg[k·n + l] = ∂_k ∂_l g
    let mut ddg = vec![DMatrix::zeros(n, n); n * n];
    for k in 0..n {
        ddg[k * n + k] = (at(&[(k, h)])? - &g0 * 2.0 + at(&[(k, -h)])?) / (h * h);
        for l in k + 1..n {
            let v = (at(&[(k, h), (l, h)])? - at(&[(k, h), (l, -h)])? - at(&[(k, -h), (l, h)])? + at(&[(k, -h), (l, -h)])?) / (4.0 * h * h);
            ddg[k * n + l] = v.clone();
            ddg[l * n + k] = v;
        }
    }
    let dginv: Vec<DMatrix<f64>> = dg.iter().map(|d| -(&ginv * d * &ginv)).collect();

    let lower = |d: &[DMatrix<f64>], e: usize, b: usize, c: usize| d[c][(e, b)] + d[b][(e, c)] - d[e][(b, c)];
    let second: Vec<Vec<DMatrix<f64>>> = (0..n).map(|k| ddg[k * n..(k + 1) * n].to_vec()).collect();
    let mut gamma = vec![0.0; n * n * n];
    let mut dgamma = vec![0.0; n * n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                gamma[(a * n + b) * n + c] = 0.5 * (0..n).map(|e| ginv[(a, e)] * lower(&dg, e, b, c)).sum::<f64>();
                for k in 0..n {
                    dgamma[((k * n + a) * n + b) * n + c] = 0.5
                        * (0..n)
                            .map(|e| dginv[k][(a, e)] * lower(&dg, e, b, c) + ginv[(a, e)] * lower(&second[k], e, b, c))
                            .sum::<f64>();
                }
            }
        }
    }
    let gm = |a: usize, b: usize, c: usize| gamma[(a * n + b) * n + c];
    let dgm = |k: usize, a: usize, b: usize, c: usize| dgamma[((k * n + a) * n + b) * n + c];
    let riemann = |a: usize, b: usize, c: usize, d: usize| {
        dgm(c, a, d, b) - dgm(d, a, c, b) + (0..n).map(|e| gm(a, c, e) * gm(e, d, b) - gm(a, d, e) * gm(e, c, b)).sum::<f64>()
    };
    let ricci = DMatrix::from_fn(n, n, |b, d| (0..n).map(|a| riemann(a, b, a, d)).sum());
    let scalar = (0..n).flat_map(|b| (0..n).map(move |d| (b, d))).map(|(b, d)| ginv[(b, d)] * ricci[(b, d)]).sum();
    Ok(NumericCurvature { ricci, scalar })
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct FdComparison {
    pub points: usize,
    pub step: f64,
    pub tolerance: f64,
    pub max_scalar_rel_err: f64,
    pub max_ricci_rel_err: f64,
}

impl FdComparison {
    pub fn passes(&self) -> bool {
        self.max_scalar_rel_err < self.tolerance && self.max_ricci_rel_err < self.tolerance
    }
}

/// Symbolic Ricci and scalar evaluated at each point versus [`numeric_curvature`].
pub fn compare_with_fd(
    g: &MetricTensor,
    bundle: &CurvatureBundle,
    env: &dyn FieldValues,
    points: &[Vec<f64>],
) -> Result<FdComparison, SymError> {
    let n = g.dim();
    let mut out = FdComparison { points: points.len(), step: FD_STEP, tolerance: FD_REL_TOL, max_scalar_rel_err: 0.0, max_ricci_rel_err: 0.0 };
    for x in points {
        let num = numeric_curvature(g, env, x, FD_STEP)?;
        let s = bundle.scalar_raw().eval(env, x)?.re;
        out.max_scalar_rel_err = out.max_scalar_rel_err.max(rel_err(num.scalar, s));
        for b in 0..n {
            for d in 0..n {
                let r = bundle.ricci_raw(b, d).eval(env, x)?.re;
                out.max_ricci_rel_err = out.max_ricci_rel_err.max(rel_err(num.ricci[(b, d)], r));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symtensor::expr::{NoFields, SymExpr};

    #[test]
    fn sphere_scalar_numerically() {
        let s = SymExpr::coord(0).sin();
        let g = MetricTensor::diagonal(&[SymExpr::one(), &s * &s]).unwrap();
        let k = numeric_curvature(&g, &NoFields, &[0.7, 0.1], FD_STEP).unwrap();
        assert!((k.scalar - 2.0).abs() < 1e-6, "{}", k.scalar);
    }

    #[test]
    fn rel_err_has_unit_floor() {
        assert_eq!(rel_err(1e-7, 0.0), 1e-7);
        assert!((rel_err(101.0, 100.0) - 0.01).abs() < 1e-15);
    }
}
