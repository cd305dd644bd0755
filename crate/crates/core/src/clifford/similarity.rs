//! The similarity transform `S = (1 + γ⁴)/√2` and the identities it is
//! expected to satisfy.

use num_rational::BigRational;

use super::gamma::GammaSet;
use super::matrix::{MatrixC, ScaledMatrix};
use super::scalar::ExactComplex;
use super::CliffordError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Similarity {
    pub s: ScaledMatrix,
    pub s_inv: ScaledMatrix,
}

impl Similarity {
    /// `S·M·S⁻¹`, exact.
    pub fn conjugate(&self, m: &MatrixC) -> ScaledMatrix {
        &(&self.s * &ScaledMatrix::exact(m.clone())) * &self.s_inv
    }
}

pub fn similarity_transform(gs: &GammaSet) -> Result<Similarity, CliffordError> {
    let one = MatrixC::identity();
    let g4 = gs.gamma(4);
    if &(g4 * g4) != &MatrixC::scalar(-ExactComplex::one()) {
        return Err(CliffordError::NotInvertible { convention: gs.convention.id() });
    }
    Ok(Similarity {
        s: ScaledMatrix::new(&one + g4, -1),
        s_inv: ScaledMatrix::new(&one - g4, -1),
    })
}

/// Exact residuals of the three similarity identities for one gamma set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityFindings {
    /// `max |S·S⁻¹ − 1|` and `max |S⁻¹·S − 1|`.
    pub inverse_residual: BigRational,
    /// `max |Sγ⁴S⁻¹ − γ⁴|`.
    pub gamma4_residual: BigRational,
    /// `max_μ |Sγ⁴γ^μS⁻¹ − γ^μ|`.
    pub mixed_residual: BigRational,
    /// Whether `Sγ⁴γ^μS⁻¹ = −γ^μ` holds exactly for every μ.
    pub mixed_is_negated: bool,
}

pub fn similarity_findings(gs: &GammaSet, sim: &Similarity) -> SimilarityFindings {
    let one = MatrixC::identity();
    let residual = |got: &ScaledMatrix, want: &MatrixC| -> BigRational {
        match got.as_rational() {
            Some(m) => (m - want).max_abs(),
            // An irrational multiple can only equal a rational matrix when both vanish.
            None => {
                if got.matrix.is_zero() && want.is_zero() {
                    BigRational::from_integer(0.into())
                } else {
                    (&got.matrix - want).max_abs().max(got.matrix.max_abs())
                }
            }
        }
    };
    let inverse_residual = residual(&(&sim.s * &sim.s_inv), &one).max(residual(&(&sim.s_inv * &sim.s), &one));
    let g4 = gs.gamma(4);
    let gamma4_residual = residual(&sim.conjugate(g4), g4);
    let mut mixed_residual = BigRational::from_integer(0.into());
    let mut mixed_is_negated = true;
    for mu in 0..4 {
        let gm = gs.gamma(mu);
        let got = sim.conjugate(&(g4 * gm));
        mixed_residual = mixed_residual.max(residual(&got, gm));
        mixed_is_negated &= got.as_rational() == Some(&-gm);
    }
    SimilarityFindings { inverse_residual, gamma4_residual, mixed_residual, mixed_is_negated }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::convention::{ConventionSet, Phase};
    use crate::clifford::gamma::standard_gamma_set;
    use num_traits::Zero;

    #[test]
    fn inverse_is_exact() {
        let gs = standard_gamma_set(ConventionSet::standard()).unwrap();
        let sim = similarity_transform(&gs).unwrap();
        let p = &sim.s * &sim.s_inv;
        assert_eq!(p.as_rational(), Some(&MatrixC::identity()));
        let q = &sim.s_inv * &sim.s;
        assert_eq!(q.as_rational(), Some(&MatrixC::identity()));
    }

    #[test]
    fn commutes_with_gamma4() {
        let gs = standard_gamma_set(ConventionSet::standard()).unwrap();
        let sim = similarity_transform(&gs).unwrap();
        assert_eq!(sim.conjugate(gs.gamma(4)).as_rational(), Some(gs.gamma(4)));
    }

    #[test]
    fn mixed_identity_comes_out_negated() {
        // (1+γ⁴)γ⁴γ^μ(1−γ⁴)/2 = −γ^μ when (γ⁴)² = −1.
        for phase in [Phase::PlusI, Phase::MinusI] {
            let mut c = ConventionSet::standard();
            c.gamma5_phase = phase;
            let gs = standard_gamma_set(c).unwrap();
            let f = similarity_findings(&gs, &similarity_transform(&gs).unwrap());
            assert!(f.inverse_residual.is_zero());
            assert!(f.gamma4_residual.is_zero());
            assert!(f.mixed_is_negated);
            // |−γ^μ − γ^μ| = 2 max|γ^μ| = 2
            assert_eq!(f.mixed_residual, BigRational::from_integer(2.into()));
        }
    }

    #[test]
    fn real_phase_is_not_invertible() {
        let mut c = ConventionSet::standard();
        c.gamma5_phase = Phase::PlusOne;
        c.signature[4] = crate::clifford::convention::Sign::Plus;
        let gs = standard_gamma_set(c).unwrap();
        assert!(matches!(similarity_transform(&gs), Err(CliffordError::NotInvertible { .. })));
    }
}
