//! Conformal rescalings of flat space, the conformal Ricci split and the
//! d'Alembertian.

use num_rational::Rational64;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::atom::{Atom, FieldSym, Monomial, MAX_DIM};
use super::curvature::curvature;
use super::expr::SymExpr;
use super::fd::{numeric_curvature, rel_err, FD_REL_TOL, FD_STEP};
use super::metric::MetricTensor;
use super::ratfun::RatFun;
use super::sample::{NumericEnv, SampleField};
use super::sexpr::to_sexpr;
use super::SymError;
use crate::clifford::ExactComplex;

/// Seed used by [`conformal_scalar_identity`] for its numeric cross-check.
pub const DEFAULT_FD_SEED: u64 = 0xc0f0_4a11;
pub const FD_POINTS: usize = 5;

/// `diag(+1, −1, …, −1)` of length `n`.
pub fn mostly_minus(n: usize) -> Vec<i64> {
    (0..n).map(|i| if i == 0 { 1 } else { -1 }).collect()
}

pub fn dalembertian_rat(e: &RatFun, signature: &[i64]) -> RatFun {
    let mut acc = RatFun::zero();
    for (i, &s) in signature.iter().enumerate() {
        if s == 0 {
            continue;
        }
        let d2 = e.diff(i).diff(i);
        acc = acc.add(&d2.scale(&ExactComplex::from_int(s)));
    }
    acc
}

/// `Σ_i s_i ∂_i² e`, normalized.
pub fn dalembertian(e: &SymExpr, dim: usize, signature: &[i64]) -> Result<SymExpr, SymError> {
    if signature.len() != dim || dim > MAX_DIM {
        return Err(SymError::BadDimension(signature.len()));
    }
    Ok(SymExpr::from_ratfun(&dalembertian_rat(&e.to_ratfun()?, signature)))
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct FdScalarCheck {
    pub seed: u64,
    pub points: usize,
    pub step: f64,
    pub tolerance: f64,
    /// Differenced curvature versus `−c_n Ψ^{−(n+2)/(n−2)} □Ψ` with the engine's `c_n`.
    pub max_rel_err_closed_form: f64,
    /// Differenced curvature versus the symbolic scalar evaluated numerically.
    pub max_rel_err_symbolic: f64,
}

impl FdScalarCheck {
    pub fn passes(&self) -> bool {
        self.max_rel_err_closed_form < self.tolerance && self.max_rel_err_symbolic < self.tolerance
    }
}

/// Outcome of checking `Θ(Ψ^{4/(n−2)} η) = −c_n Ψ^{−(n+2)/(n−2)} □_η Ψ`.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct IdentityReport {
    pub n: usize,
    /// Exponent `4/(n−2)` of `Ψ` in the conformal factor.
    pub conformal_exponent: String,
    /// `c_n` as read off the `∂₀²Ψ` coefficient.
    pub c_n: String,
    pub c_n_value: f64,
    /// Normal form of `Θ + c_n Ψ^{−(n+2)/(n−2)} □Ψ`.
    pub residual: String,
    pub residual_is_zero: bool,
    /// Curvature vanishes for a constant `Ψ`.
    pub constant_field_flat: bool,
    /// `(Ψ^{4/(n−2)})^{(n−2)/4}` normalizes back to `Ψ`.
    pub root_recovers_field: bool,
    /// `Θ = 0` iff `□Ψ = 0`: residual zero and `c_n ≠ 0`.
    pub wave_equation_equivalent: bool,
    pub fd: FdScalarCheck,
}

impl IdentityReport {
    pub fn passes(&self) -> bool {
        self.residual_is_zero && self.constant_field_flat && self.root_recovers_field && self.wave_equation_equivalent && self.fd.passes()
    }
}

pub fn conformal_scalar_identity(n: usize) -> Result<IdentityReport, SymError> {
    conformal_scalar_identity_seeded(n, DEFAULT_FD_SEED)
}

pub fn conformal_scalar_identity_seeded(n: usize, seed: u64) -> Result<IdentityReport, SymError> {
    if !(3..=MAX_DIM).contains(&n) {
        return Err(SymError::BadDimension(n));
    }
    let eta = mostly_minus(n);
    let nn = n as i64;
    let p = Rational64::new(4, nn - 2);
    let q = Rational64::new(nn + 2, nn - 2);

    let psi_sym = FieldSym::new("psi", n).positive();
    let psi = RatFun::atom(Atom::Field(psi_sym.clone()));
    let g = conformally_flat(&psi.pow(p)?, &eta)?;
    let theta = curvature(&g)?.scalar_raw().clone();
    let box_psi = dalembertian_rat(&psi, &eta);

    let weighted = theta.mul(&psi.pow(q)?);
    let mut d00 = [0u8; MAX_DIM];
    d00[0] = 2;
    let d00 = Monomial::atom(Atom::Field(psi_sym.with_deriv(d00)));
    let coef = if weighted.is_polynomial() { weighted.num.coefficient(&d00) } else { ExactComplex::zero() };
    let c_n = -&(&coef * &ExactComplex::from_int(eta[0]));

    let residual = theta.add(&psi.pow(-q)?.mul(&box_psi).scale(&c_n));
    let constant_field_flat = curvature(&conformally_flat(&RatFun::int(8).pow(p)?, &eta)?)?.scalar_raw().is_zero();
    let root_recovers_field = psi.pow(p)?.pow(Rational64::one() / p)? == psi;

    let fd = fd_scalar_check(&g, &theta, &psi_sym, &eta, &c_n, q, seed)?;
    Ok(IdentityReport {
        n,
        conformal_exponent: p.to_string(),
        c_n: c_n.to_string(),
        c_n_value: c_n.to_c64().re,
        residual: to_sexpr(&SymExpr::from_ratfun(&residual)),
        residual_is_zero: residual.is_zero(),
        constant_field_flat,
        root_recovers_field,
        wave_equation_equivalent: residual.is_zero() && !c_n.is_zero(),
        fd,
    })
}

fn conformally_flat(factor: &RatFun, eta: &[i64]) -> Result<MetricTensor, SymError> {
    let n = eta.len();
    let mut comps = vec![RatFun::zero(); n * n];
    for (i, &s) in eta.iter().enumerate() {
        comps[i * n + i] = factor.scale(&ExactComplex::from_int(s));
    }
    MetricTensor::from_ratfuns(n, comps)
}

fn fd_scalar_check(
    g: &MetricTensor,
    theta: &RatFun,
    psi: &FieldSym,
    eta: &[i64],
    c_n: &ExactComplex,
    q: Rational64,
    seed: u64,
) -> Result<FdScalarCheck, SymError> {
    let n = eta.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = SampleField::random_for(psi, 3.0, &mut rng);
    let env = NumericEnv::new().with(&psi.name, sample.clone());
    let c = c_n.to_c64().re;
    let qf = *q.numer() as f64 / *q.denom() as f64;
    let mut out = FdScalarCheck {
        seed,
        points: FD_POINTS,
        step: FD_STEP,
        tolerance: FD_REL_TOL,
        max_rel_err_closed_form: 0.0,
        max_rel_err_symbolic: 0.0,
    };
    for _ in 0..FD_POINTS {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-0.5..0.5)).collect();
        let numeric = numeric_curvature(g, &env, &x, FD_STEP)?.scalar;
        let value = sample.value(&[0; MAX_DIM], &x);
        let box_value: f64 = eta
            .iter()
            .enumerate()
            .map(|(i, &s)| {
                let mut d = [0u8; MAX_DIM];
                d[i] = 2;
                s as f64 * sample.value(&d, &x)
            })
            .sum();
        let closed = -c * value.powf(-qf) * box_value;
        let symbolic = theta.eval(&env, &x)?.re;
        out.max_rel_err_closed_form = out.max_rel_err_closed_form.max(rel_err(numeric, closed));
        out.max_rel_err_symbolic = out.max_rel_err_symbolic.max(rel_err(numeric, symbolic));
    }
    Ok(out)
}

/// `Ricci(ω·g) = ricci_base + t_omega`, with `ricci_base = Ricci(g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RicciSplit {
    pub dim: usize,
    pub ricci_base: Vec<RatFun>,
    pub t_omega: Vec<RatFun>,
    pub ricci_scaled: Vec<RatFun>,
}

impl RicciSplit {
    pub fn base(&self, a: usize, b: usize) -> SymExpr {
        SymExpr::from_ratfun(&self.ricci_base[a * self.dim + b])
    }

    pub fn t(&self, a: usize, b: usize) -> SymExpr {
        SymExpr::from_ratfun(&self.t_omega[a * self.dim + b])
    }

    /// `ricci_base + t_omega − Ricci(ω·g)` per component.
    pub fn recomposition_defects(&self) -> Vec<RatFun> {
        self.ricci_base
            .iter()
            .zip(&self.t_omega)
            .zip(&self.ricci_scaled)
            .map(|((b, t), s)| b.add(t).sub(s))
            .collect()
    }

    /// The flat-background condition `Ricci(ω·g) = 0` as `Ricci(g) = −T(ω)`.
    pub fn t_is_zero(&self) -> bool {
        self.t_omega.iter().all(RatFun::is_zero)
    }
}

pub fn conformal_ricci_split(g: &MetricTensor, omega: &SymExpr) -> Result<RicciSplit, SymError> {
    let n = g.dim();
    let base = curvature(g)?;
    let scaled = curvature(&g.scaled(&omega.to_ratfun()?))?;
    let mut ricci_base = Vec::with_capacity(n * n);
    let mut t_omega = Vec::with_capacity(n * n);
    let mut ricci_scaled = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let r0 = base.ricci_raw(a, b).clone();
            let r1 = scaled.ricci_raw(a, b).clone();
            t_omega.push(r1.sub(&r0));
            ricci_base.push(r0);
            ricci_scaled.push(r1);
        }
    }
    Ok(RicciSplit { dim: n, ricci_base, t_omega, ricci_scaled })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dalembertian_of_constant_and_harmonic() {
        let sig = mostly_minus(5);
        assert!(dalembertian(&SymExpr::int(7), 5, &sig).unwrap().is_zero().unwrap());
        let xy = SymExpr::coord(1) * SymExpr::coord(2);
        assert!(dalembertian(&xy, 5, &sig).unwrap().is_zero().unwrap());
        assert!(dalembertian(&xy, 4, &sig).is_err());
    }

    #[test]
    fn plane_wave_on_shell() {
        // k = (5, 3, 0, 0), m = 4: k·k = m²
        let arg = SymExpr::i() * (SymExpr::int(5) * SymExpr::coord(0) - SymExpr::int(3) * SymExpr::coord(1) + SymExpr::int(4) * SymExpr::coord(4));
        let wave = arg.exp();
        let sig = mostly_minus(5);
        assert!(dalembertian(&wave, 5, &sig).unwrap().is_zero().unwrap());
    }

    #[test]
    fn five_dimensional_identity() {
        let r = conformal_scalar_identity(5).unwrap();
        assert!(r.residual_is_zero, "{}", r.residual);
        assert_eq!(r.c_n, "16/3");
        assert_eq!(r.conformal_exponent, "4/3");
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn other_dimensions_match_closed_form_constant() {
        // c_n = 4(n − 1)/(n − 2)
        for (n, expected) in [(3, "8"), (4, "6"), (6, "5")] {
            let r = conformal_scalar_identity(n).unwrap();
            assert!(r.passes(), "{r:?}");
            assert_eq!(r.c_n, expected);
        }
    }

    #[test]
    fn unit_factor_gives_no_split() {
        let g = MetricTensor::flat(&mostly_minus(3)).unwrap();
        let s = conformal_ricci_split(&g, &SymExpr::one()).unwrap();
        assert!(s.t_is_zero());
    }
}
