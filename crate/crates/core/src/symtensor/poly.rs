//! Laurent polynomials over the Gaussian rationals.
//!
//! Invariant: no monomial carries `cos(a)^k` with integer `k ≥ 2`; such powers
//! are rewritten through `cos² = 1 − sin²`, which makes the representation
//! unique modulo that relation.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::One;

use super::atom::{Atom, Monomial};
use crate::clifford::ExactComplex;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, ExactComplex>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactComplex) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn one() -> Self {
        Self::constant(ExactComplex::one())
    }

    pub fn term(m: Monomial, c: ExactComplex) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactComplex)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactComplex {
        self.terms.get(m).cloned().unwrap_or_else(ExactComplex::zero)
    }

    /// Largest term under the monomial order.
    pub fn leading(&self) -> Option<(&Monomial, &ExactComplex)> {
        self.terms.iter().next_back()
    }

    pub fn lowest(&self) -> Option<(&Monomial, &ExactComplex)> {
        self.terms.iter().next()
    }

    /// The value when the polynomial is a constant.
    pub fn as_constant(&self) -> Option<ExactComplex> {
        match self.terms.len() {
            0 => Some(ExactComplex::zero()),
            1 => self.terms.iter().next().filter(|(m, _)| m.is_one()).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn as_single_term(&self) -> Option<(&Monomial, &ExactComplex)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: ExactComplex) {
        if c.is_zero() {
            return;
        }
        if let Some(idx) = reducible_cos(&m) {
            // cos^k = cos^{k−2} − cos^{k−2}·sin²
            let (atom, e) = m.factors[idx].clone();
            let lowered = m.with_exponent(idx, e - Rational64::from_integer(2));
            let Atom::Cos(arg) = atom else { unreachable!() };
            let sin2 = Monomial::atom(Atom::Sin(arg)).pow(Rational64::from_integer(2));
            self.add_term(lowered.clone(), c.clone());
            self.add_term(lowered.mul(&sin2), -c);
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &ExactComplex) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, k: &ExactComplex) -> Poly {
        let mut out = Poly::zero();
        for (tm, tc) in &self.terms {
            out.add_term(tm.mul(m), tc * k);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂/∂x^coord`.
    pub fn diff(&self, coord: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (idx, (atom, e)) in m.factors.iter().enumerate() {
                let Some((k, datom)) = atom.derivative(coord) else { continue };
                let rest = m.with_exponent(idx, e - Rational64::one());
                let rest = match datom {
                    Some(a) => rest.mul(&Monomial::atom(a)),
                    None => rest,
                };
                let factor = &(c * &k) * &rational_to_exact(*e);
                out.add_term(rest, factor);
            }
            if let Some(l) = &m.exp {
                let k = l.coeff(coord);
                if !k.is_zero() {
                    out.add_term(m.clone(), c * &k);
                }
            }
        }
        out
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    ///
    /// Expects `d` with leading term `1·1`. Gives up (returning `None`)
    /// once the remainder's leading term drops below the bound any exact
    /// quotient must respect, or after a step cap.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lead_m, lead_c) = d.leading()?;
        if !lead_m.is_one() || !lead_c.is_one() {
            return None;
        }
        if d.len() == 1 {
            return Some(self.clone());
        }
        let (low_self, _) = self.lowest()?;
        let (low_d, _) = d.lowest()?;
        let floor = low_self.mul(&low_d.inv());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        let cap = 8 + 4 * self.len() * d.len();
        for _ in 0..cap {
            let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) else {
                return Some(quot);
            };
            if m < floor {
                return None;
            }
            rem = rem.sub(&d.mul_monomial(&m, &c));
            quot.add_term(m, c);
        }
        None
    }

    /// Atoms appearing anywhere, in order.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut v: Vec<Atom> = self.terms.keys().flat_map(|m| m.factors.iter().map(|(a, _)| a.clone())).collect();
        v.sort();
        v.dedup();
        v
    }
}

fn reducible_cos(m: &Monomial) -> Option<usize> {
    m.factors
        .iter()
        .position(|(a, e)| matches!(a, Atom::Cos(_)) && e.is_integer() && *e >= Rational64::from_integer(2))
}

pub fn rational_to_exact(r: Rational64) -> ExactComplex {
    ExactComplex::real(num_rational::BigRational::new((*r.numer()).into(), (*r.denom()).into()))
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})·{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
