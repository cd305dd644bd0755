//! Symbols and monomials of the canonical form.
//!
//! Monomials are ordered lexicographically by exponent vector (missing
//! exponents count as zero). That order is compatible with multiplication,
//! which the factor canonicalization in [`super::ratfun`] relies on.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::clifford::ExactComplex;

pub const MAX_DIM: usize = 8;

/// An opaque scalar field, optionally differentiated.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSym {
    pub name: Arc<str>,
    /// Number of partial derivatives taken along each coordinate.
    pub deriv: [u8; MAX_DIM],
    /// Bit `i` set when the field depends on coordinate `i`.
    pub deps: u8,
    /// Declared strictly positive; only such fields take fractional powers.
    pub positive: bool,
}

impl FieldSym {
    /// Field depending on coordinates `0..dim`.
    pub fn new(name: &str, dim: usize) -> Self {
        let deps = if dim >= 8 { u8::MAX } else { (1u8 << dim) - 1 };
        Self { name: name.into(), deriv: [0; MAX_DIM], deps, positive: false }
    }

    pub fn positive(mut self) -> Self {
        self.positive = true;
        self
    }

    pub fn depending_on(mut self, coords: &[usize]) -> Self {
        self.deps = coords.iter().fold(0u8, |acc, &c| acc | (1 << c));
        self
    }

    pub fn depends_on(&self, coord: usize) -> bool {
        coord < MAX_DIM && self.deps & (1 << coord) != 0
    }

    pub fn is_underived(&self) -> bool {
        self.deriv.iter().all(|&d| d == 0)
    }

    /// The same field with the derivative index cleared.
    pub fn base(&self) -> Self {
        Self { deriv: [0; MAX_DIM], ..self.clone() }
    }

    pub fn derivative(&self, coord: usize) -> Option<Self> {
        if !self.depends_on(coord) {
            return None;
        }
        let mut d = self.clone();
        d.deriv[coord] += 1;
        // derivatives carry no sign information
        d.positive = false;
        Some(d)
    }

    pub fn with_deriv(&self, deriv: [u8; MAX_DIM]) -> Self {
        let mut d = self.clone();
        d.deriv = deriv;
        if deriv.iter().any(|&k| k > 0) {
            d.positive = false;
        }
        d
    }
}

impl fmt::Debug for FieldSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if !self.is_underived() {
            write!(f, "_")?;
            for (i, &k) in self.deriv.iter().enumerate() {
                for _ in 0..k {
                    write!(f, "{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// `constant + Σ coeffs[i]·x^i` with exact coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LinForm {
    /// Sorted by coordinate, zero coefficients removed.
    pub coeffs: Vec<(u8, ExactComplex)>,
    pub constant: ExactComplex,
}

impl LinForm {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    pub fn coeff(&self, coord: usize) -> ExactComplex {
        self.coeffs
            .iter()
            .find(|(c, _)| *c as usize == coord)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(ExactComplex::zero)
    }

    pub fn add(&self, other: &LinForm) -> LinForm {
        self.combine(other, |a, b| a + b)
    }

    pub fn neg(&self) -> LinForm {
        LinForm {
            coeffs: self.coeffs.iter().map(|(c, v)| (*c, -v)).collect(),
            constant: -&self.constant,
        }
    }

    pub fn scale(&self, k: &ExactComplex) -> LinForm {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(c, v)| (*c, v * k))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        LinForm { coeffs, constant: &self.constant * k }
    }

    fn combine(&self, other: &LinForm, op: impl Fn(&ExactComplex, &ExactComplex) -> ExactComplex) -> LinForm {
        let mut coeffs = Vec::new();
        let (mut i, mut j) = (0, 0);
        let zero = ExactComplex::zero();
        while i < self.coeffs.len() || j < other.coeffs.len() {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(j);
            let (c, v) = match (a, b) {
                (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                    i += 1;
                    j += 1;
                    (*ca, op(va, vb))
                }
                (Some((ca, va)), Some((cb, _))) if ca < cb => {
                    i += 1;
                    (*ca, op(va, &zero))
                }
                (Some((ca, va)), None) => {
                    i += 1;
                    (*ca, op(va, &zero))
                }
                (_, Some((cb, vb))) => {
                    j += 1;
                    (*cb, op(&zero, vb))
                }
                (None, None) => unreachable!(),
            };
            if !v.is_zero() {
                coeffs.push((c, v));
            }
        }
        LinForm { coeffs, constant: op(&self.constant, &other.constant) }
    }

    pub fn eval(&self, x: &[f64]) -> num_complex::Complex64 {
        let mut acc = self.constant.to_c64();
        for (c, v) in &self.coeffs {
            acc += v.to_c64() * x.get(*c as usize).copied().unwrap_or(0.0);
        }
        acc
    }
}

/// Ordered-group comparison: coefficient vectors lexicographically, then the constant.
impl Ord for LinForm {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.combine(other, |a, b| a - b);
        if let Some((_, v)) = diff.coeffs.first() {
            return v.cmp(&ExactComplex::zero());
        }
        diff.constant.cmp(&ExactComplex::zero())
    }
}

impl PartialOrd for LinForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Coord(u8),
    Field(FieldSym),
    Sin(LinForm),
    Cos(LinForm),
}

impl Atom {
    /// `∂atom/∂x^coord` as `coefficient · atom'`, or `None` if it vanishes.
    /// A `None` atom with a coefficient means the derivative is that constant.
    pub fn derivative(&self, coord: usize) -> Option<(ExactComplex, Option<Atom>)> {
        match self {
            Atom::Coord(c) => (*c as usize == coord).then(|| (ExactComplex::one(), None)),
            Atom::Field(f) => f.derivative(coord).map(|d| (ExactComplex::one(), Some(Atom::Field(d)))),
            Atom::Sin(l) => {
                let k = l.coeff(coord);
                (!k.is_zero()).then(|| (k, Some(Atom::Cos(l.clone()))))
            }
            Atom::Cos(l) => {
                let k = l.coeff(coord);
                (!k.is_zero()).then(|| (-k, Some(Atom::Sin(l.clone()))))
            }
        }
    }

    /// Whether fractional exponents are allowed.
    pub fn admits_fractional_power(&self) -> bool {
        matches!(self, Atom::Field(f) if f.positive)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Coord(c) => write!(f, "x{c}"),
            Atom::Field(s) => write!(f, "{s:?}"),
            Atom::Sin(l) => write!(f, "sin({l:?})"),
            Atom::Cos(l) => write!(f, "cos({l:?})"),
        }
    }
}

/// Product of atoms raised to rational powers, times an optional `exp(linear)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    /// Sorted by atom, zero exponents removed.
    pub factors: Vec<(Atom, Rational64)>,
    pub exp: Option<LinForm>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn atom(a: Atom) -> Self {
        Self { factors: vec![(a, Rational64::one())], exp: None }
    }

    pub fn exp(l: LinForm) -> Self {
        Self { factors: Vec::new(), exp: (!l.is_zero()).then_some(l) }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.exp.is_none()
    }

    pub fn exponent(&self, a: &Atom) -> Rational64 {
        self.factors
            .binary_search_by(|(x, _)| x.cmp(a))
            .map(|i| self.factors[i].1)
            .unwrap_or_else(|_| Rational64::zero())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, ea) = &self.factors[i];
            let (b, eb) = &other.factors[j];
            match a.cmp(b) {
                Ordering::Less => {
                    factors.push((a.clone(), *ea));
                    i += 1;
                }
                Ordering::Greater => {
                    factors.push((b.clone(), *eb));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = ea + eb;
                    if !e.is_zero() {
                        factors.push((a.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&self.factors[i..]);
        factors.extend_from_slice(&other.factors[j..]);
        let exp = match (&self.exp, &other.exp) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (Some(a), Some(b)) => Some(a.add(b)).filter(|l| !l.is_zero()),
        };
        Monomial { factors, exp }
    }

    /// Raises every exponent by `p`; the caller checks admissibility.
    pub fn pow(&self, p: Rational64) -> Monomial {
        if p.is_zero() {
            return Monomial::one();
        }
        Monomial {
            factors: self.factors.iter().map(|(a, e)| (a.clone(), e * p)).collect(),
            exp: self.exp.as_ref().map(|l| l.scale(&ExactComplex::new(num_rational::BigRational::new((*p.numer()).into(), (*p.denom()).into()), Zero::zero()))),
        }
    }

    pub fn inv(&self) -> Monomial {
        Monomial {
            factors: self.factors.iter().map(|(a, e)| (a.clone(), -e)).collect(),
            exp: self.exp.as_ref().map(LinForm::neg),
        }
    }

    /// First atom whose exponent is fractional but not allowed to be.
    pub fn inadmissible_fraction(&self) -> Option<&Atom> {
        self.factors
            .iter()
            .find(|(a, e)| !e.is_integer() && !a.admits_fractional_power())
            .map(|(a, _)| a)
    }

    pub fn without(&self, idx: usize) -> Monomial {
        let mut m = self.clone();
        m.factors.remove(idx);
        m
    }

    /// Replaces the exponent of factor `idx`.
    pub fn with_exponent(&self, idx: usize, e: Rational64) -> Monomial {
        let mut m = self.clone();
        if e.is_zero() {
            m.factors.remove(idx);
        } else {
            m.factors[idx].1 = e;
        }
        m
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.factors.iter().any(|(_, e)| e.is_negative())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        let zero = Rational64::zero();
        loop {
            let a = self.factors.get(i);
            let b = other.factors.get(j);
            let ord = match (a, b) {
                (None, None) => break,
                (Some((x, ex)), Some((y, ey))) => match x.cmp(y) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        ex.cmp(ey)
                    }
                    Ordering::Less => {
                        i += 1;
                        ex.cmp(&zero)
                    }
                    Ordering::Greater => {
                        j += 1;
                        zero.cmp(ey)
                    }
                },
                (Some((_, ex)), None) => {
                    i += 1;
                    ex.cmp(&zero)
                }
                (None, Some((_, ey))) => {
                    j += 1;
                    zero.cmp(ey)
                }
            };
            if ord != Ordering::Equal {
                return ord;
            }
        }
        let zero_form = LinForm::default();
        let ea = self.exp.as_ref().unwrap_or(&zero_form);
        let eb = other.exp.as_ref().unwrap_or(&zero_form);
        ea.cmp(eb)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|(a, e)| if e.is_one() { format!("{a:?}") } else { format!("{a:?}^{e}") })
            .collect();
        if let Some(l) = &self.exp {
            parts.push(format!("exp({l:?})"));
        }
        write!(f, "{}", parts.join("·"))
    }
}
