//! Christoffel symbols, Riemann and Ricci tensors, scalar curvature.
//!
//! Conventions: `Γ^a_{bc} = ½ g^{ad}(∂_c g_{db} + ∂_b g_{dc} − ∂_d g_{bc})`,
//! `R^a_{bcd} = ∂_c Γ^a_{db} − ∂_d Γ^a_{cb} + Γ^a_{ce}Γ^e_{db} − Γ^a_{de}Γ^e_{cb}`,
//! `R_{bd} = R^a_{bad}` and `R = g^{bd} R_{bd}`; the unit 2-sphere has `R = 2`.

use super::expr::SymExpr;
use super::metric::MetricTensor;
use super::ratfun::RatFun;
use super::SymError;
use crate::clifford::ExactComplex;

#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    dim: usize,
    /// `Γ^a_{bc}` at index `(a·n + b)·n + c`.
    components: Vec<RatFun>,
}

impl Connection {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> &RatFun {
        &self.components[(a * self.dim + b) * self.dim + c]
    }

    pub fn component(&self, a: usize, b: usize, c: usize) -> SymExpr {
        SymExpr::from_ratfun(self.get(a, b, c))
    }

    /// Structural symmetry in the lower pair.
    pub fn is_lower_symmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|a| (0..n).all(|b| (b + 1..n).all(|c| self.get(a, b, c) == self.get(a, c, b))))
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RatFun::is_zero)
    }
}

pub fn christoffel(g: &MetricTensor) -> Result<Connection, SymError> {
    let inv = g.inverse()?;
    Ok(christoffel_with_inverse(g, &inv))
}

fn christoffel_with_inverse(g: &MetricTensor, inv: &[RatFun]) -> Connection {
    let n = g.dim();
    // dg[(k·n + a)·n + b] = ∂_k g_{ab}
    let mut dg = Vec::with_capacity(n * n * n);
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                dg.push(if b < a { RatFun::zero() } else { g.get(a, b).diff(k) });
            }
        }
    }
    let d = |k: usize, a: usize, b: usize| {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        &dg[(k * n + a) * n + b]
    };
    let half = ExactComplex::from_ratio(1, 2);
    let mut components = vec![RatFun::zero(); n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in b..n {
                let mut acc = RatFun::zero();
                for e in 0..n {
                    let ginv = &inv[a * n + e];
                    if ginv.is_zero() {
                        continue;
                    }
                    let bracket = d(c, e, b).add(d(b, e, c)).sub(d(e, b, c));
                    if !bracket.is_zero() {
                        acc = acc.add(&ginv.mul(&bracket));
                    }
                }
                let v = acc.scale(&half);
                components[(a * n + c) * n + b] = v.clone();
                components[(a * n + b) * n + c] = v;
            }
        }
    }
    Connection { dim: n, components }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureBundle {
    dim: usize,
    connection: Connection,
    /// `R^a_{bcd}` at index `((a·n + b)·n + c)·n + d`.
    riemann: Vec<RatFun>,
    /// `R_{bd}` row-major.
    ricci: Vec<RatFun>,
    scalar: RatFun,
}

impl CurvatureBundle {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn connection(&self) -> &Connection {
        &self.connection
    }

    pub fn riemann_raw(&self, a: usize, b: usize, c: usize, d: usize) -> &RatFun {
        let n = self.dim;
        &self.riemann[((a * n + b) * n + c) * n + d]
    }

    pub fn riemann(&self, a: usize, b: usize, c: usize, d: usize) -> SymExpr {
        SymExpr::from_ratfun(self.riemann_raw(a, b, c, d))
    }

    pub fn ricci_raw(&self, b: usize, d: usize) -> &RatFun {
        &self.ricci[b * self.dim + d]
    }

    pub fn ricci(&self, b: usize, d: usize) -> SymExpr {
        SymExpr::from_ratfun(self.ricci_raw(b, d))
    }

    pub fn scalar_raw(&self) -> &RatFun {
        &self.scalar
    }

    pub fn scalar(&self) -> SymExpr {
        SymExpr::from_ratfun(&self.scalar)
    }

    pub fn is_flat(&self) -> bool {
        self.riemann.iter().all(RatFun::is_zero)
    }

    /// `R_{bd} − R_{db}` for `b < d`, normalized.
    pub fn ricci_asymmetry(&self) -> Vec<RatFun> {
        let n = self.dim;
        let mut out = Vec::new();
        for b in 0..n {
            for d in b + 1..n {
                out.push(self.ricci_raw(b, d).sub(self.ricci_raw(d, b)));
            }
        }
        out
    }

    /// `R^a_{bcd} + R^a_{cdb} + R^a_{dbc}` for every `a` and `b < c < d`.
    pub fn bianchi_defects(&self) -> Vec<RatFun> {
        let n = self.dim;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let s = self
                            .riemann_raw(a, b, c, d)
                            .add(self.riemann_raw(a, c, d, b))
                            .add(self.riemann_raw(a, d, b, c));
                        out.push(s);
                    }
                }
            }
        }
        out
    }

    pub fn ricci_is_symmetric(&self) -> bool {
        self.ricci_asymmetry().iter().all(RatFun::is_zero)
    }

    pub fn first_bianchi_holds(&self) -> bool {
        self.bianchi_defects().iter().all(RatFun::is_zero)
    }
}

pub fn curvature(g: &MetricTensor) -> Result<CurvatureBundle, SymError> {
    let inv = g.inverse()?;
    let gamma = christoffel_with_inverse(g, &inv);
    let n = g.dim();
    // dgamma[((e·n + a)·n + b)·n + c] = ∂_e Γ^a_{bc}, lower pair symmetric
    let mut dgamma = vec![RatFun::zero(); n * n * n * n];
    for e in 0..n {
        for a in 0..n {
            for b in 0..n {
                for c in b..n {
                    let v = gamma.get(a, b, c).diff(e);
                    dgamma[((e * n + a) * n + c) * n + b] = v.clone();
                    dgamma[((e * n + a) * n + b) * n + c] = v;
                }
            }
        }
    }
    let dg = |e: usize, a: usize, b: usize, c: usize| &dgamma[((e * n + a) * n + b) * n + c];

    let mut riemann = vec![RatFun::zero(); n * n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in c + 1..n {
                    let mut r = dg(c, a, d, b).sub(dg(d, a, c, b));
                    for e in 0..n {
                        let (p, q) = (gamma.get(a, c, e), gamma.get(e, d, b));
                        if !p.is_zero() && !q.is_zero() {
                            r = r.add(&p.mul(q));
                        }
                        let (p, q) = (gamma.get(a, d, e), gamma.get(e, c, b));
                        if !p.is_zero() && !q.is_zero() {
                            r = r.sub(&p.mul(q));
                        }
                    }
                    riemann[((a * n + b) * n + d) * n + c] = r.neg();
                    riemann[((a * n + b) * n + c) * n + d] = r;
                }
            }
        }
    }

    let mut ricci = vec![RatFun::zero(); n * n];
    for b in 0..n {
        for d in 0..n {
            let mut acc = RatFun::zero();
            for a in 0..n {
                acc = acc.add(&riemann[((a * n + b) * n + a) * n + d]);
            }
            ricci[b * n + d] = acc;
        }
    }

    let mut scalar = RatFun::zero();
    for b in 0..n {
        for d in 0..n {
            let gi = &inv[b * n + d];
            if !gi.is_zero() {
                scalar = scalar.add(&gi.mul(&ricci[b * n + d]));
            }
        }
    }

    Ok(CurvatureBundle { dim: n, connection: gamma, riemann, ricci, scalar })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symtensor::atom::FieldSym;
    use num_rational::Rational64;

    fn r() -> SymExpr {
        SymExpr::coord(0)
    }

    #[test]
    fn flat_is_flat() {
        let g = MetricTensor::flat(&[1, -1, -1, -1]).unwrap();
        assert!(christoffel(&g).unwrap().is_zero());
        let k = curvature(&g).unwrap();
        assert!(k.is_flat() && k.scalar_raw().is_zero());
    }

    #[test]
    fn polar_connection_by_hand() {
        // Γ^r_{θθ} = −r, Γ^θ_{rθ} = 1/r, all others zero
        let g = MetricTensor::diagonal(&[SymExpr::one(), r() * r()]).unwrap();
        let gamma = christoffel(&g).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let expected = match (a, b, c) {
                        (0, 1, 1) => -r(),
                        (1, 0, 1) | (1, 1, 0) => r().inv(),
                        _ => SymExpr::zero(),
                    };
                    assert!(gamma.component(a, b, c).equals(&expected).unwrap(), "Γ^{a}_{b}{c}");
                }
            }
        }
        assert!(curvature(&g).unwrap().scalar_raw().is_zero());
    }

    #[test]
    fn unit_sphere_scalar_is_two() {
        let s = r().sin();
        let g = MetricTensor::diagonal(&[SymExpr::one(), &s * &s]).unwrap();
        let k = curvature(&g).unwrap();
        assert_eq!(k.scalar_raw().as_constant(), Some(ExactComplex::from_int(2)));
        assert!(k.ricci_is_symmetric() && k.first_bianchi_holds());
    }

    #[test]
    fn conformally_flat_connection_matches_closed_form() {
        // g = ω·η: Γ^a_{bc} = ½ω⁻¹(δ^a_b ∂_cω + δ^a_c ∂_bω − η^{ad}η_{bc}∂_dω)
        let eta = [1i64, -1, -1, -1, -1];
        let w = FieldSym::new("omega", 5).positive();
        let omega = SymExpr::field(w.clone());
        let g = MetricTensor::diagonal(&eta.iter().map(|&s| SymExpr::int(s) * omega.clone()).collect::<Vec<_>>()).unwrap();
        let gamma = christoffel(&g).unwrap();
        assert!(gamma.is_lower_symmetric());
        let dw = |i: usize| SymExpr::field(w.derivative(i).unwrap());
        let half_inv = SymExpr::rational(1, 2) * omega.pow(Rational64::from_integer(-1));
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    let mut terms = Vec::new();
                    if a == b {
                        terms.push(dw(c));
                    }
                    if a == c {
                        terms.push(dw(b));
                    }
                    if b == c {
                        terms.push(SymExpr::int(-eta[a] * eta[b]) * dw(a));
                    }
                    let expected = half_inv.clone() * SymExpr::sum(terms);
                    assert!(gamma.component(a, b, c).equals(&expected).unwrap());
                }
            }
        }
    }
}
