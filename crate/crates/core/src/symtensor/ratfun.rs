//! Canonical rational functions: a Laurent-polynomial numerator over a
//! product of non-monomial factors.
//!
//! Each denominator factor is scaled so its leading term is exactly `1`;
//! monomial content is moved into the numerator. The value is zero iff the
//! numerator is empty, so zero-testing never needs a GCD.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive};

use num_complex::Complex64;

use super::atom::{Atom, LinForm, Monomial};
use super::expr::FieldValues;
use super::poly::Poly;
use super::SymError;
use crate::clifford::ExactComplex;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RatFun {
    pub num: Poly,
    /// Sorted, distinct factors with positive multiplicities.
    pub den: Vec<(Poly, u32)>,
}

impl RatFun {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(num: Poly) -> Self {
        Self { num, den: Vec::new() }
    }

    pub fn constant(c: ExactComplex) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Self::constant(ExactComplex::from_int(n))
    }

    pub fn atom(a: Atom) -> Self {
        Self::from_poly(Poly::term(Monomial::atom(a), ExactComplex::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    pub fn as_constant(&self) -> Option<ExactComplex> {
        if self.is_zero() {
            return Some(ExactComplex::zero());
        }
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    fn den_product(factors: &[(Poly, u32)]) -> Poly {
        factors.iter().fold(Poly::one(), |acc, (p, k)| acc.mul(&p.pow(*k)))
    }

    pub fn add(&self, other: &RatFun) -> RatFun {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFun { num: self.num.add(&other.num), den: self.den.clone() }.cancel();
        }
        let lcm = merge_den(&self.den, &other.den, |a, b| a.max(b));
        let lift = |r: &RatFun| {
            let missing = subtract_den(&lcm, &r.den);
            r.num.mul(&Self::den_product(&missing))
        };
        RatFun { num: lift(self).add(&lift(other)), den: lcm }.cancel()
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFun) -> RatFun {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &ExactComplex) -> RatFun {
        if k.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFun) -> RatFun {
        if self.is_zero() || other.is_zero() {
            return RatFun::zero();
        }
        let num = self.num.mul(&other.num);
        if self.den.is_empty() && other.den.is_empty() {
            return RatFun::from_poly(num);
        }
        RatFun { num, den: merge_den(&self.den, &other.den, |a, b| a + b) }.cancel()
    }

    pub fn inv(&self) -> Result<RatFun, SymError> {
        if self.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        let carried = Self::den_product(&self.den);
        let (lead_m, lead_c) = {
            let (m, c) = self.num.leading().expect("nonzero numerator");
            (m.clone(), c.clone())
        };
        let unit_inv = lead_m.inv();
        let coeff_inv = lead_c.inv().expect("nonzero coefficient");
        let factor = self.num.mul_monomial(&unit_inv, &coeff_inv);
        let num = carried.mul_monomial(&unit_inv, &coeff_inv);
        if factor.is_one() {
            return Ok(RatFun::from_poly(num));
        }
        Ok(RatFun { num, den: vec![(factor, 1)] }.cancel())
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun, SymError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn powi(&self, n: i64) -> Result<RatFun, SymError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFun::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Rational power. Fractional exponents need a single-term value whose
    /// atoms are positive fields and whose coefficient is an exact power.
    pub fn pow(&self, p: Rational64) -> Result<RatFun, SymError> {
        if p.is_integer() {
            return self.powi(*p.numer());
        }
        let fail = || SymError::FractionalPower(format!("{:?}", self.num));
        if !self.den.is_empty() {
            return Err(fail());
        }
        let (m, c) = self.num.as_single_term().ok_or_else(fail)?;
        let root = rational_root(c, p).ok_or_else(fail)?;
        let mp = m.pow(p);
        if mp.inadmissible_fraction().is_some() {
            return Err(fail());
        }
        Ok(RatFun::from_poly(Poly::term(mp, root)))
    }

    pub fn diff(&self, coord: usize) -> RatFun {
        let mut out = RatFun { num: self.num.diff(coord), den: self.den.clone() };
        for (i, (f, k)) in self.den.iter().enumerate() {
            let df = f.diff(coord);
            if df.is_zero() {
                continue;
            }
            let num = self.num.mul(&df).scale(&ExactComplex::from_int(-(*k as i64)));
            let mut den = self.den.clone();
            den[i].1 += 1;
            out = out.add(&RatFun { num, den });
        }
        out.cancel()
    }

    /// Divides out denominator factors that divide the numerator exactly.
    fn cancel(mut self) -> RatFun {
        if self.num.is_zero() {
            return RatFun::zero();
        }
        let mut i = 0;
        while i < self.den.len() {
            match self.num.div_exact(&self.den[i].0) {
                Some(q) => {
                    self.num = q;
                    self.den[i].1 -= 1;
                    if self.den[i].1 == 0 {
                        self.den.remove(i);
                    }
                }
                None => i += 1,
            }
        }
        self
    }

    /// The value as a linear form in the coordinates, if it is one.
    pub fn as_linear_form(&self) -> Option<LinForm> {
        if !self.den.is_empty() {
            return None;
        }
        let mut form = LinForm::default();
        for (m, c) in self.num.terms() {
            if m.exp.is_some() {
                return None;
            }
            match m.factors.as_slice() {
                [] => form.constant = c.clone(),
                [(Atom::Coord(i), e)] if e.is_one() => form.coeffs.push((*i, c.clone())),
                _ => return None,
            }
        }
        form.coeffs.sort_by_key(|(i, _)| *i);
        Some(form)
    }

    /// Numeric value at `x`, with fields supplied by `env`.
    pub fn eval(&self, env: &dyn FieldValues, x: &[f64]) -> Result<Complex64, SymError> {
        let mut v = eval_poly(&self.num, env, x)?;
        for (p, k) in &self.den {
            v /= eval_poly(p, env, x)?.powi(*k as i32);
        }
        Ok(v)
    }

    /// Number of numerator terms plus denominator terms; a size measure.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.iter().map(|(p, _)| p.len()).sum::<usize>()
    }
}

impl std::fmt::Debug for RatFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.num)?;
        for (p, k) in &self.den {
            write!(f, " / ({p:?})^{k}")?;
        }
        Ok(())
    }
}

pub fn eval_poly(p: &Poly, env: &dyn FieldValues, x: &[f64]) -> Result<Complex64, SymError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, c) in p.terms() {
        acc += c.to_c64() * eval_monomial(m, env, x)?;
    }
    Ok(acc)
}

fn eval_monomial(m: &Monomial, env: &dyn FieldValues, x: &[f64]) -> Result<Complex64, SymError> {
    let coord = |i: u8| x.get(i as usize).copied().ok_or(SymError::CoordinateOutOfRange(i as usize));
    let mut v = Complex64::new(1.0, 0.0);
    for (a, e) in &m.factors {
        let base = match a {
            Atom::Coord(i) => Complex64::new(coord(*i)?, 0.0),
            Atom::Field(f) => Complex64::new(env.field(f, x).ok_or_else(|| SymError::UnknownField(f.name.to_string()))?, 0.0),
            Atom::Sin(l) => l.eval(x).sin(),
            Atom::Cos(l) => l.eval(x).cos(),
        };
        v *= if e.is_integer() {
            base.powi(e.to_integer() as i32)
        } else {
            Complex64::new(base.re.powf(*e.numer() as f64 / *e.denom() as f64), 0.0)
        };
    }
    if let Some(l) = &m.exp {
        v *= l.eval(x).exp();
    }
    Ok(v)
}

fn merge_den(a: &[(Poly, u32)], b: &[(Poly, u32)], op: impl Fn(u32, u32) -> u32) -> Vec<(Poly, u32)> {
    let mut out: Vec<(Poly, u32)> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((pa, ka)), Some((pb, kb))) if pa == pb => {
                out.push((pa.clone(), op(*ka, *kb)));
                i += 1;
                j += 1;
            }
            (Some((pa, ka)), Some((pb, _))) if pa < pb => {
                out.push((pa.clone(), op(*ka, 0)));
                i += 1;
            }
            (Some((pa, ka)), None) => {
                out.push((pa.clone(), op(*ka, 0)));
                i += 1;
            }
            (_, Some((pb, kb))) => {
                out.push((pb.clone(), op(0, *kb)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out.retain(|(_, k)| *k > 0);
    out
}

fn subtract_den(big: &[(Poly, u32)], small: &[(Poly, u32)]) -> Vec<(Poly, u32)> {
    big.iter()
        .map(|(p, k)| {
            let s = small.iter().find(|(q, _)| q == p).map(|(_, k)| *k).unwrap_or(0);
            (p.clone(), k - s)
        })
        .filter(|(_, k)| *k > 0)
        .collect()
}

fn exact_int_root(n: &BigInt, q: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(q);
    (r.pow(q) == *n).then_some(r)
}

/// `c^p` for a positive rational `c`, when the result is rational.
fn rational_root(c: &ExactComplex, p: Rational64) -> Option<ExactComplex> {
    if !c.is_real() || !c.re.is_positive() {
        return None;
    }
    let q = p.denom().to_u32()?;
    let num = exact_int_root(c.re.numer(), q)?;
    let den = exact_int_root(c.re.denom(), q)?;
    let root = ExactComplex::real(BigRational::new(num, den));
    root.powi(p.numer().to_i32()?)
}
