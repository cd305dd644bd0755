//! Symmetric metric tensors with symbolic components.

use nalgebra::DMatrix;

use super::expr::{FieldValues, SymExpr};
use super::ratfun::RatFun;
use super::SymError;

#[derive(Clone, PartialEq, Debug)]
pub struct MetricTensor {
    dim: usize,
    /// Row-major normalized components.
    components: Vec<RatFun>,
}

impl MetricTensor {
    /// Builds a metric from a full component grid; rejects asymmetric input.
    pub fn new(rows: &[Vec<SymExpr>]) -> Result<Self, SymError> {
        let dim = rows.len();
        check_dim(dim)?;
        let mut components = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(SymError::BadDimension(row.len()));
            }
            for e in row {
                components.push(e.to_ratfun()?);
            }
        }
        Self::from_ratfuns(dim, components)
    }

    pub fn from_ratfuns(dim: usize, components: Vec<RatFun>) -> Result<Self, SymError> {
        check_dim(dim)?;
        if components.len() != dim * dim {
            return Err(SymError::BadDimension(components.len()));
        }
        for a in 0..dim {
            for b in a + 1..dim {
                if components[a * dim + b] != components[b * dim + a] {
                    return Err(SymError::NotSymmetric(a, b));
                }
            }
        }
        Ok(Self { dim, components })
    }

    pub fn diagonal(entries: &[SymExpr]) -> Result<Self, SymError> {
        let dim = entries.len();
        let rows: Vec<Vec<SymExpr>> = (0..dim)
            .map(|a| (0..dim).map(|b| if a == b { entries[a].clone() } else { SymExpr::zero() }).collect())
            .collect();
        Self::new(&rows)
    }

    /// `diag(s₀, s₁, …)` with constant signs.
    pub fn flat(signs: &[i64]) -> Result<Self, SymError> {
        Self::diagonal(&signs.iter().map(|&s| SymExpr::int(s)).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize) -> &RatFun {
        &self.components[a * self.dim + b]
    }

    pub fn component(&self, a: usize, b: usize) -> SymExpr {
        SymExpr::from_ratfun(self.get(a, b))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|a| (0..self.dim).all(|b| a == b || self.get(a, b).is_zero()))
    }

    /// Structural symmetry of the stored components.
    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|a| (a + 1..self.dim).all(|b| self.get(a, b) == self.get(b, a)))
    }

    /// The metric multiplied by a scalar factor.
    pub fn scaled(&self, factor: &RatFun) -> MetricTensor {
        MetricTensor { dim: self.dim, components: self.components.iter().map(|c| c.mul(factor)).collect() }
    }

    /// Row-major inverse `g^{ab}` by exact Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Vec<RatFun>, SymError> {
        let n = self.dim;
        if self.is_diagonal() {
            let mut inv = vec![RatFun::zero(); n * n];
            for a in 0..n {
                inv[a * n + a] = self.get(a, a).inv().map_err(|_| SymError::SingularMetric)?;
            }
            return Ok(inv);
        }
        let mut m = self.components.clone();
        let mut inv: Vec<RatFun> = (0..n * n).map(|k| if k / n == k % n { RatFun::one() } else { RatFun::zero() }).collect();
        for col in 0..n {
            // prefer the smallest nonzero pivot to limit expression growth
            let pivot = (col..n)
                .filter(|&r| !m[r * n + col].is_zero())
                .min_by_key(|&r| m[r * n + col].size())
                .ok_or(SymError::SingularMetric)?;
            if pivot != col {
                for k in 0..n {
                    m.swap(pivot * n + k, col * n + k);
                    inv.swap(pivot * n + k, col * n + k);
                }
            }
            let p_inv = m[col * n + col].inv().map_err(|_| SymError::SingularMetric)?;
            for k in 0..n {
                m[col * n + k] = m[col * n + k].mul(&p_inv);
                inv[col * n + k] = inv[col * n + k].mul(&p_inv);
            }
            for r in 0..n {
                if r == col || m[r * n + col].is_zero() {
                    continue;
                }
                let f = m[r * n + col].clone();
                for k in 0..n {
                    m[r * n + k] = m[r * n + k].sub(&f.mul(&m[col * n + k]));
                    inv[r * n + k] = inv[r * n + k].sub(&f.mul(&inv[col * n + k]));
                }
            }
        }
        Ok(inv)
    }

    /// Numeric value (real parts) at `x`.
    pub fn eval(&self, env: &dyn FieldValues, x: &[f64]) -> Result<DMatrix<f64>, SymError> {
        let n = self.dim;
        let mut out = DMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                out[(a, b)] = self.get(a, b).eval(env, x)?.re;
            }
        }
        Ok(out)
    }
}

fn check_dim(dim: usize) -> Result<(), SymError> {
    if (2..=super::MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(SymError::BadDimension(dim))
    }
}

/// `Σ_c A^{ac} g_{cb} − δ^a_b` for every `a, b`, normalized; all zero for a correct inverse.
pub fn inverse_defects(g: &MetricTensor, inv: &[RatFun]) -> Vec<RatFun> {
    let n = g.dim();
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut acc = if a == b { RatFun::int(-1) } else { RatFun::zero() };
            for c in 0..n {
                acc = acc.add(&inv[a * n + c].mul(g.get(c, b)));
            }
            out.push(acc);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symtensor::atom::FieldSym;

    #[test]
    fn asymmetric_rejected() {
        let x = SymExpr::coord(0);
        let rows = vec![vec![SymExpr::one(), x.clone()], vec![SymExpr::zero(), SymExpr::one()]];
        assert_eq!(MetricTensor::new(&rows), Err(SymError::NotSymmetric(0, 1)));
    }

    #[test]
    fn singular_rejected() {
        let rows = vec![vec![SymExpr::one(), SymExpr::one()], vec![SymExpr::one(), SymExpr::one()]];
        let g = MetricTensor::new(&rows).unwrap();
        assert_eq!(g.inverse(), Err(SymError::SingularMetric));
        assert_eq!(MetricTensor::flat(&[1, 0]).unwrap().inverse(), Err(SymError::SingularMetric));
    }

    #[test]
    fn general_inverse_is_exact() {
        // [[1, x], [x, 1 + y²]] and a 3D metric with an opaque field
        let (x, y) = (SymExpr::coord(0), SymExpr::coord(1));
        let g = MetricTensor::new(&[
            vec![SymExpr::one(), x.clone()],
            vec![x.clone(), SymExpr::one() + &y * &y],
        ])
        .unwrap();
        assert!(inverse_defects(&g, &g.inverse().unwrap()).iter().all(RatFun::is_zero));

        let a = SymExpr::field(FieldSym::new("a", 3));
        let g3 = MetricTensor::new(&[
            vec![SymExpr::one() - &a * &a, a.clone(), SymExpr::zero()],
            vec![a.clone(), SymExpr::int(-1), SymExpr::zero()],
            vec![SymExpr::zero(), SymExpr::zero(), SymExpr::int(-1)],
        ])
        .unwrap();
        assert!(inverse_defects(&g3, &g3.inverse().unwrap()).iter().all(RatFun::is_zero));
    }

    #[test]
    fn bad_dimension() {
        assert_eq!(MetricTensor::flat(&[1]), Err(SymError::BadDimension(1)));
    }
}
