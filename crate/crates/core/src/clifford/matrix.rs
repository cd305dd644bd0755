//! 4×4 matrices over the Gaussian rationals, plus a `√2`-scaled wrapper so
//! that `(1 ± γ)/√2` stays exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::scalar::ExactComplex;

pub const N: usize = 4;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixC {
    entries: [[ExactComplex; N]; N],
}

impl MatrixC {
    pub fn zero() -> Self {
        Self {
            entries: std::array::from_fn(|_| std::array::from_fn(|_| ExactComplex::zero())),
        }
    }

    pub fn identity() -> Self {
        Self::scalar(ExactComplex::one())
    }

    pub fn scalar(s: ExactComplex) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.entries[i][i] = s.clone();
        }
        m
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> ExactComplex) -> Self {
        Self {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    /// Builds from integer real and imaginary parts, row major.
    pub fn from_gaussian_ints(re: [[i64; N]; N], im: [[i64; N]; N]) -> Self {
        Self::from_fn(|i, j| {
            ExactComplex::new(
                BigRational::from_integer(BigInt::from(re[i][j])),
                BigRational::from_integer(BigInt::from(im[i][j])),
            )
        })
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactComplex {
        &self.entries[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactComplex) {
        self.entries[i][j] = v;
    }

    pub fn scale(&self, s: &ExactComplex) -> Self {
        Self::from_fn(|i, j| &self.entries[i][j] * s)
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(|i, j| self.entries[j][i].conj())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(ExactComplex::is_zero)
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.conj_transpose()
    }

    pub fn trace(&self) -> ExactComplex {
        let mut t = ExactComplex::zero();
        for i in 0..N {
            t += &self.entries[i][i];
        }
        t
    }

    /// Exact sup-norm over real and imaginary parts of all entries.
    pub fn max_abs(&self) -> BigRational {
        self.entries
            .iter()
            .flatten()
            .map(ExactComplex::max_abs_part)
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
    }

    /// Splits `M = s·1 + R` with `s = tr(M)/4`.
    pub fn scalar_part(&self) -> (ExactComplex, MatrixC) {
        let s = self.trace().scale(&BigRational::new(1.into(), 4.into()));
        let residual = self - &Self::scalar(s.clone());
        (s, residual)
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.clone();
        let mut inv = Self::identity();
        for col in 0..N {
            let pivot = (col..N).find(|&r| !a.entries[r][col].is_zero())?;
            a.entries.swap(col, pivot);
            inv.entries.swap(col, pivot);
            let p = a.entries[col][col].inv()?;
            for j in 0..N {
                a.entries[col][j] = &a.entries[col][j] * &p;
                inv.entries[col][j] = &inv.entries[col][j] * &p;
            }
            for r in 0..N {
                if r == col || a.entries[r][col].is_zero() {
                    continue;
                }
                let f = a.entries[r][col].clone();
                for j in 0..N {
                    let da = &a.entries[col][j] * &f;
                    a.entries[r][j] -= &da;
                    let di = &inv.entries[col][j] * &f;
                    inv.entries[r][j] -= &di;
                }
            }
        }
        Some(inv)
    }

    pub fn to_c64(&self) -> [[Complex64; N]; N] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i][j].to_c64()))
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

impl fmt::Debug for MatrixC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<'a> Add<&'a MatrixC> for &'a MatrixC {
    type Output = MatrixC;
    fn add(self, rhs: &MatrixC) -> MatrixC {
        MatrixC::from_fn(|i, j| &self.entries[i][j] + &rhs.entries[i][j])
    }
}

impl<'a> Sub<&'a MatrixC> for &'a MatrixC {
    type Output = MatrixC;
    fn sub(self, rhs: &MatrixC) -> MatrixC {
        MatrixC::from_fn(|i, j| &self.entries[i][j] - &rhs.entries[i][j])
    }
}

impl<'a> Mul<&'a MatrixC> for &'a MatrixC {
    type Output = MatrixC;
    fn mul(self, rhs: &MatrixC) -> MatrixC {
        MatrixC::from_fn(|i, j| {
            let mut acc = ExactComplex::zero();
            for k in 0..N {
                let (a, b) = (&self.entries[i][k], &rhs.entries[k][j]);
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
    }
}

impl Neg for &MatrixC {
    type Output = MatrixC;
    fn neg(self) -> MatrixC {
        MatrixC::from_fn(|i, j| -&self.entries[i][j])
    }
}

/// `matrix · (√2)^sqrt2_power`, kept with `sqrt2_power ∈ {0, 1}` after
/// folding even powers into the rational entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScaledMatrix {
    pub matrix: MatrixC,
    pub sqrt2_power: i32,
}

impl ScaledMatrix {
    pub fn new(matrix: MatrixC, sqrt2_power: i32) -> Self {
        let half = sqrt2_power.div_euclid(2);
        let rem = sqrt2_power.rem_euclid(2);
        let factor = ExactComplex::from_int(2).powi(half).expect("2 is invertible");
        Self {
            matrix: matrix.scale(&factor),
            sqrt2_power: rem,
        }
    }

    pub fn exact(matrix: MatrixC) -> Self {
        Self::new(matrix, 0)
    }

    /// The value as a plain matrix, when no `√2` survives.
    pub fn as_rational(&self) -> Option<&MatrixC> {
        (self.sqrt2_power == 0).then_some(&self.matrix)
    }

    pub fn to_c64(&self) -> [[Complex64; N]; N] {
        let f = std::f64::consts::SQRT_2.powi(self.sqrt2_power);
        let m = self.matrix.to_c64();
        std::array::from_fn(|i| std::array::from_fn(|j| m[i][j] * f))
    }
}

impl<'a> Mul<&'a ScaledMatrix> for &'a ScaledMatrix {
    type Output = ScaledMatrix;
    fn mul(self, rhs: &ScaledMatrix) -> ScaledMatrix {
        ScaledMatrix::new(&self.matrix * &rhs.matrix, self.sqrt2_power + rhs.sqrt2_power)
    }
}
