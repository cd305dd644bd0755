//! Immutable scalar expression trees and their canonical normalization.

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Zero};

use super::atom::{Atom, FieldSym, Monomial};
use super::poly::{rational_to_exact, Poly};
use super::ratfun::RatFun;
use super::SymError;
use crate::clifford::ExactComplex;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Node {
    Const(ExactComplex),
    Coord(u8),
    Field(FieldSym),
    Sum(Vec<SymExpr>),
    Product(Vec<SymExpr>),
    Power(SymExpr, Rational64),
    Neg(SymExpr),
    Inv(SymExpr),
    Sin(SymExpr),
    Cos(SymExpr),
    Exp(SymExpr),
}

/// Shared, immutable expression node.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymExpr(Arc<Node>);

impl SymExpr {
    pub fn new(node: Node) -> Self {
        Self(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn constant(c: ExactComplex) -> Self {
        Self::new(Node::Const(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(ExactComplex::from_int(n))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Self::constant(ExactComplex::from_ratio(num, den))
    }

    /// The exact binary value of a finite float.
    pub fn from_f64(x: f64) -> Option<Self> {
        ExactComplex::from_f64(x).map(Self::constant)
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn i() -> Self {
        Self::constant(ExactComplex::i())
    }

    pub fn coord(i: usize) -> Self {
        assert!(i < super::atom::MAX_DIM, "coordinate index {i} out of range");
        Self::new(Node::Coord(i as u8))
    }

    pub fn field(f: FieldSym) -> Self {
        Self::new(Node::Field(f))
    }

    pub fn sum(terms: Vec<SymExpr>) -> Self {
        Self::new(Node::Sum(terms))
    }

    pub fn product(factors: Vec<SymExpr>) -> Self {
        Self::new(Node::Product(factors))
    }

    pub fn pow(&self, p: Rational64) -> Self {
        Self::new(Node::Power(self.clone(), p))
    }

    pub fn powi(&self, n: i64) -> Self {
        self.pow(Rational64::from_integer(n))
    }

    pub fn inv(&self) -> Self {
        Self::new(Node::Inv(self.clone()))
    }

    pub fn sin(&self) -> Self {
        Self::new(Node::Sin(self.clone()))
    }

    pub fn cos(&self) -> Self {
        Self::new(Node::Cos(self.clone()))
    }

    pub fn exp(&self) -> Self {
        Self::new(Node::Exp(self.clone()))
    }

    /// Canonical rational-function form.
    pub fn to_ratfun(&self) -> Result<RatFun, SymError> {
        Ok(match self.node() {
            Node::Const(c) => RatFun::constant(c.clone()),
            Node::Coord(i) => RatFun::atom(Atom::Coord(*i)),
            Node::Field(f) => RatFun::atom(Atom::Field(f.clone())),
            Node::Sum(ts) => {
                let mut acc = RatFun::zero();
                for t in ts {
                    acc = acc.add(&t.to_ratfun()?);
                }
                acc
            }
            Node::Product(fs) => {
                let mut acc = RatFun::one();
                for f in fs {
                    acc = acc.mul(&f.to_ratfun()?);
                    if acc.is_zero() {
                        break;
                    }
                }
                acc
            }
            Node::Power(b, p) => b.to_ratfun()?.pow(*p)?,
            Node::Neg(e) => e.to_ratfun()?.neg(),
            Node::Inv(e) => e.to_ratfun()?.inv()?,
            Node::Sin(a) | Node::Cos(a) | Node::Exp(a) => {
                let form = a
                    .to_ratfun()?
                    .as_linear_form()
                    .ok_or_else(|| SymError::NonLinearArgument(super::sexpr::to_sexpr(a)))?;
                match self.node() {
                    Node::Sin(_) => RatFun::atom(Atom::Sin(form)),
                    Node::Cos(_) => RatFun::atom(Atom::Cos(form)),
                    _ => RatFun::from_poly(Poly::term(Monomial::exp(form), ExactComplex::one())),
                }
            }
        })
    }

    pub fn from_ratfun(r: &RatFun) -> SymExpr {
        let num = poly_to_expr(&r.num);
        if r.den.is_empty() {
            return num;
        }
        let mut factors = vec![num];
        for (p, k) in &r.den {
            factors.push(poly_to_expr(p).powi(-(*k as i64)));
        }
        SymExpr::product(factors)
    }

    /// Canonical tree; idempotent.
    pub fn normalize(&self) -> Result<SymExpr, SymError> {
        Ok(Self::from_ratfun(&self.to_ratfun()?))
    }

    pub fn is_zero(&self) -> Result<bool, SymError> {
        Ok(self.to_ratfun()?.is_zero())
    }

    /// Mathematical equality, decided through the canonical form.
    pub fn equals(&self, other: &SymExpr) -> Result<bool, SymError> {
        Ok(self.to_ratfun()?.sub(&other.to_ratfun()?).is_zero())
    }

    /// `∂/∂x^coord`, normalized.
    pub fn diff(&self, coord: usize) -> Result<SymExpr, SymError> {
        Ok(Self::from_ratfun(&self.to_ratfun()?.diff(coord)))
    }

    /// Numeric value at `x`, with fields supplied by `env`.
    pub fn eval(&self, env: &dyn FieldValues, x: &[f64]) -> Result<Complex64, SymError> {
        Ok(match self.node() {
            Node::Const(c) => c.to_c64(),
            Node::Coord(i) => Complex64::new(*x.get(*i as usize).ok_or(SymError::CoordinateOutOfRange(*i as usize))?, 0.0),
            Node::Field(f) => Complex64::new(env.field(f, x).ok_or_else(|| SymError::UnknownField(f.name.to_string()))?, 0.0),
            Node::Sum(ts) => {
                let mut acc = Complex64::zero();
                for t in ts {
                    acc += t.eval(env, x)?;
                }
                acc
            }
            Node::Product(fs) => {
                let mut acc = Complex64::one();
                for f in fs {
                    acc *= f.eval(env, x)?;
                }
                acc
            }
            Node::Power(b, p) => {
                let v = b.eval(env, x)?;
                if p.is_integer() {
                    v.powi(*p.numer() as i32)
                } else if v.im == 0.0 && v.re > 0.0 {
                    Complex64::new(v.re.powf(*p.numer() as f64 / *p.denom() as f64), 0.0)
                } else {
                    return Err(SymError::FractionalPower(format!("numeric base {v}")));
                }
            }
            Node::Neg(e) => -e.eval(env, x)?,
            Node::Inv(e) => Complex64::one() / e.eval(env, x)?,
            Node::Sin(a) => a.eval(env, x)?.sin(),
            Node::Cos(a) => a.eval(env, x)?.cos(),
            Node::Exp(a) => a.eval(env, x)?.exp(),
        })
    }

    /// Replaces coordinate-free numeric evaluation for constants.
    pub fn as_constant(&self) -> Result<Option<ExactComplex>, SymError> {
        Ok(self.to_ratfun()?.as_constant())
    }
}

fn monomial_to_expr(m: &Monomial, c: &ExactComplex) -> SymExpr {
    let mut factors = Vec::new();
    if !c.is_one() || m.is_one() {
        factors.push(SymExpr::constant(c.clone()));
    }
    for (a, e) in &m.factors {
        let base = match a {
            Atom::Coord(i) => SymExpr::coord(*i as usize),
            Atom::Field(f) => SymExpr::field(f.clone()),
            Atom::Sin(l) => linform_to_expr(l).sin(),
            Atom::Cos(l) => linform_to_expr(l).cos(),
        };
        factors.push(if e.is_one() { base } else { base.pow(*e) });
    }
    if let Some(l) = &m.exp {
        factors.push(linform_to_expr(l).exp());
    }
    if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        SymExpr::product(factors)
    }
}

fn linform_to_expr(l: &super::atom::LinForm) -> SymExpr {
    let mut p = Poly::constant(l.constant.clone());
    for (i, c) in &l.coeffs {
        p.add_term(Monomial::atom(Atom::Coord(*i)), c.clone());
    }
    poly_to_expr(&p)
}

fn poly_to_expr(p: &Poly) -> SymExpr {
    let mut terms: Vec<SymExpr> = p.terms().map(|(m, c)| monomial_to_expr(m, c)).collect();
    match terms.len() {
        0 => SymExpr::zero(),
        1 => terms.pop().unwrap(),
        _ => SymExpr::sum(terms),
    }
}

/// Numeric values of opaque fields (and their derivatives).
pub trait FieldValues {
    fn field(&self, f: &FieldSym, x: &[f64]) -> Option<f64>;
}

/// Environment without fields.
pub struct NoFields;

impl FieldValues for NoFields {
    fn field(&self, _: &FieldSym, _: &[f64]) -> Option<f64> {
        None
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&SymExpr> for &SymExpr {
            type Output = SymExpr;
            fn $m(self, rhs: &SymExpr) -> SymExpr {
                let f: fn(&SymExpr, &SymExpr) -> SymExpr = $body;
                f(self, rhs)
            }
        }
        impl $tr<SymExpr> for SymExpr {
            type Output = SymExpr;
            fn $m(self, rhs: SymExpr) -> SymExpr {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| SymExpr::sum(vec![a.clone(), b.clone()]));
binop!(Sub, sub, |a, b| SymExpr::sum(vec![a.clone(), -b]));
binop!(Mul, mul, |a, b| SymExpr::product(vec![a.clone(), b.clone()]));
binop!(Div, div, |a, b| SymExpr::product(vec![a.clone(), b.inv()]));

impl Neg for &SymExpr {
    type Output = SymExpr;
    fn neg(self) -> SymExpr {
        SymExpr::new(Node::Neg(self.clone()))
    }
}

impl Neg for SymExpr {
    type Output = SymExpr;
    fn neg(self) -> SymExpr {
        -&self
    }
}

impl std::fmt::Debug for SymExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", super::sexpr::to_sexpr(self))
    }
}

impl std::fmt::Display for SymExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", super::sexpr::to_sexpr(self))
    }
}

pub fn rational_const(r: Rational64) -> SymExpr {
    SymExpr::constant(rational_to_exact(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn psi() -> SymExpr {
        SymExpr::field(FieldSym::new("psi", 3).positive())
    }

    #[test]
    fn normalize_is_idempotent_on_mixed_expression() {
        let x = SymExpr::coord(0);
        let e = (&x + &SymExpr::one()).inv() * psi().pow(Rational64::new(4, 3)) + x.sin() * x.sin();
        let n1 = e.normalize().unwrap();
        assert_eq!(n1.normalize().unwrap(), n1);
    }

    #[test]
    fn partials_commute() {
        let e = psi().pow(Rational64::new(4, 3)) * SymExpr::coord(1) / (SymExpr::coord(2) + SymExpr::int(3));
        let a = e.diff(0).unwrap().diff(2).unwrap();
        let b = e.diff(2).unwrap().diff(0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exponential_with_imaginary_argument() {
        let arg = SymExpr::i() * (SymExpr::int(3) * SymExpr::coord(0));
        let w = arg.exp();
        // ∂²_0 e^{3ix} = −9 e^{3ix}
        let d2 = w.diff(0).unwrap().diff(0).unwrap();
        assert!(d2.equals(&(SymExpr::int(-9) * w.clone())).unwrap());
        let prod = (w.clone() * (-&arg).exp()).normalize().unwrap();
        assert_eq!(prod, SymExpr::one());
    }

    #[test]
    fn nonlinear_exp_argument_rejected() {
        let x = SymExpr::coord(0);
        assert!(matches!((&x * &x).exp().normalize(), Err(SymError::NonLinearArgument(_))));
    }

    #[test]
    fn eval_matches_normalized_eval() {
        let x = SymExpr::coord(0);
        let e = (&x + &SymExpr::one()).inv() * x.cos() * x.cos() + x.sin().powi(2);
        let n = e.normalize().unwrap();
        let p = [0.37, 0.0, 0.0];
        let a = e.eval(&NoFields, &p).unwrap();
        let b = n.eval(&NoFields, &p).unwrap();
        assert!((a - b).norm() < 1e-14);
    }
}
