//! Numeric stand-ins for opaque fields: `offset + P(x)·exp(−w|x − c|²)`.
//!
//! Derivatives of any order are exact (up to rounding) because the family
//! `Q(x)·exp(−w|x − c|²)` with polynomial `Q` is closed under `∂`.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use super::atom::{FieldSym, MAX_DIM};
use super::expr::FieldValues;

/// Sparse multivariate polynomial with `f64` coefficients.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NumPoly {
    terms: BTreeMap<[u8; MAX_DIM], f64>,
}

impl NumPoly {
    pub fn constant(c: f64) -> Self {
        let mut p = Self::default();
        p.add_term([0; MAX_DIM], c);
        p
    }

    pub fn add_term(&mut self, exps: [u8; MAX_DIM], c: f64) {
        if c != 0.0 {
            *self.terms.entry(exps).or_insert(0.0) += c;
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .fold(*c, |acc, (i, &k)| acc * x.get(i).copied().unwrap_or(0.0).powi(k as i32))
            })
            .sum()
    }

    pub fn diff(&self, i: usize) -> NumPoly {
        let mut out = NumPoly::default();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut d = *e;
                d[i] -= 1;
                out.add_term(d, c * e[i] as f64);
            }
        }
        out
    }

    /// `self · (a + b·x^i)`.
    fn mul_affine(&self, i: usize, a: f64, b: f64) -> NumPoly {
        let mut out = NumPoly::default();
        for (e, c) in &self.terms {
            out.add_term(*e, c * a);
            let mut up = *e;
            up[i] += 1;
            out.add_term(up, c * b);
        }
        out
    }

    fn add(&self, other: &NumPoly) -> NumPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, *c);
        }
        out
    }
}

/// `offset + P(x)·exp(−w Σ_{i∈coords} (x^i − c^i)²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleField {
    pub offset: f64,
    pub poly: NumPoly,
    pub width: f64,
    pub center: [f64; MAX_DIM],
    /// Coordinates the field depends on.
    pub coords: Vec<usize>,
}

impl SampleField {
    pub fn constant(c: f64) -> Self {
        Self { offset: c, poly: NumPoly::default(), width: 0.0, center: [0.0; MAX_DIM], coords: Vec::new() }
    }

    /// Random field of the documented family over `coords`. On `[−1, 1]^n`
    /// the prefactor satisfies `|P| < 2.5`, so `offset ≥ 3` keeps it positive.
    pub fn random<R: Rng>(coords: &[usize], offset: f64, rng: &mut R) -> Self {
        let mut poly = NumPoly::constant(1.0);
        let scale = 0.3 / coords.len().max(1) as f64;
        for &i in coords {
            let mut e = [0; MAX_DIM];
            e[i] = 1;
            poly.add_term(e, rng.gen_range(-scale..scale));
            for &j in coords.iter().filter(|&&j| j >= i) {
                let mut e2 = e;
                e2[j] += 1;
                poly.add_term(e2, rng.gen_range(-scale..scale));
            }
        }
        let mut center = [0.0; MAX_DIM];
        for &i in coords {
            center[i] = rng.gen_range(-0.5..0.5);
        }
        Self { offset, poly, width: rng.gen_range(0.2..0.5), center, coords: coords.to_vec() }
    }

    /// A field for the symbol `f`, using exactly its declared dependencies.
    pub fn random_for<R: Rng>(f: &FieldSym, offset: f64, rng: &mut R) -> Self {
        let coords: Vec<usize> = (0..MAX_DIM).filter(|&i| f.depends_on(i)).collect();
        Self::random(&coords, offset, rng)
    }

    fn gaussian(&self, x: &[f64]) -> f64 {
        let r2: f64 = self.coords.iter().map(|&i| (x.get(i).copied().unwrap_or(0.0) - self.center[i]).powi(2)).sum();
        (-self.width * r2).exp()
    }

    /// Polynomial prefactor of `∂^deriv (P·G)`.
    fn derived_poly(&self, deriv: &[u8; MAX_DIM]) -> NumPoly {
        let mut q = self.poly.clone();
        for (i, &k) in deriv.iter().enumerate() {
            for _ in 0..k {
                if !self.coords.contains(&i) {
                    return NumPoly::default();
                }
                // ∂_i(Q·G) = (∂_i Q − 2w(x^i − c^i)Q)·G
                let shifted = q.mul_affine(i, 2.0 * self.width * self.center[i], -2.0 * self.width);
                q = q.diff(i).add(&shifted);
            }
        }
        q
    }

    pub fn value(&self, deriv: &[u8; MAX_DIM], x: &[f64]) -> f64 {
        let underived = deriv.iter().all(|&k| k == 0);
        let base = if underived { self.offset } else { 0.0 };
        base + self.derived_poly(deriv).eval(x) * self.gaussian(x)
    }
}

/// Field values keyed by name.
#[derive(Debug, Clone, Default)]
pub struct NumericEnv {
    fields: HashMap<String, SampleField>,
}

impl NumericEnv {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, f: SampleField) -> Self {
        self.fields.insert(name.to_string(), f);
        self
    }

    pub fn insert(&mut self, name: &str, f: SampleField) {
        self.fields.insert(name.to_string(), f);
    }

    pub fn get(&self, name: &str) -> Option<&SampleField> {
        self.fields.get(name)
    }
}

impl FieldValues for NumericEnv {
    fn field(&self, f: &FieldSym, x: &[f64]) -> Option<f64> {
        self.fields.get(&*f.name).map(|s| s.value(&f.deriv, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field() -> SampleField {
        SampleField::random(&[0, 1, 2], 3.0, &mut ChaCha8Rng::seed_from_u64(7))
    }

    fn fd(f: &SampleField, deriv: [u8; MAX_DIM], i: usize, x: &[f64]) -> f64 {
        let h = 1e-5;
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[i] += h;
        xm[i] -= h;
        (f.value(&deriv, &xp) - f.value(&deriv, &xm)) / (2.0 * h)
    }

    #[test]
    fn first_and_second_derivatives_match_differences() {
        let f = field();
        let x = [0.2, -0.3, 0.1];
        for i in 0..3 {
            let mut d = [0; MAX_DIM];
            d[i] = 1;
            assert!((f.value(&d, &x) - fd(&f, [0; MAX_DIM], i, &x)).abs() < 1e-8);
            for j in 0..3 {
                let mut dd = d;
                dd[j] += 1;
                assert!((f.value(&dd, &x) - fd(&f, d, j, &x)).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn independent_coordinate_has_zero_derivative() {
        let f = field();
        let mut d = [0; MAX_DIM];
        d[4] = 1;
        assert_eq!(f.value(&d, &[0.1; 5]), 0.0);
    }

    #[test]
    fn positive_on_unit_box() {
        let f = SampleField::random(&[0, 1, 2, 3, 4], 3.0, &mut ChaCha8Rng::seed_from_u64(1));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let x: Vec<f64> = (0..5).map(|_| rng.gen_range(-1.0..1.0)).collect();
            assert!(f.value(&[0; MAX_DIM], &x) > 0.5);
        }
    }
}
