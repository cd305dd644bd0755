//! The five-gamma system in the standard Dirac basis and its particle
//! deformation by a vector potential.

use super::convention::{ConventionSet, Sign, MOSTLY_MINUS, MOSTLY_PLUS};
use super::matrix::MatrixC;
use super::scalar::ExactComplex;
use super::CliffordError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSet {
    pub gammas: [MatrixC; 5],
    pub convention: ConventionSet,
    /// Diagonal of the flat metric `γ̇^{mn}`.
    pub flat_metric: [i64; 5],
}

impl GammaSet {
    pub fn gamma(&self, m: usize) -> &MatrixC {
        &self.gammas[m]
    }

    /// `σ^{mn} = [γ^m, γ^n]`.
    pub fn sigma(&self, m: usize, n: usize) -> MatrixC {
        self.gammas[m].commutator(&self.gammas[n])
    }
}

/// Mostly-minus Dirac matrices γ⁰…γ³.
fn dirac_basis() -> [MatrixC; 4] {
    let z = [[0; 4]; 4];
    let g0 = MatrixC::from_gaussian_ints(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
        z,
    );
    let g1 = MatrixC::from_gaussian_ints(
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]],
        z,
    );
    let g2 = MatrixC::from_gaussian_ints(
        z,
        [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
    );
    let g3 = MatrixC::from_gaussian_ints(
        [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]],
        z,
    );
    [g0, g1, g2, g3]
}

/// `iγ⁰γ¹γ²γ³` in the Dirac basis.
pub fn chirality() -> MatrixC {
    let [g0, g1, g2, g3] = dirac_basis();
    (&(&(&g0 * &g1) * &g2) * &g3).scale(&ExactComplex::i())
}

/// Builds γ⁰…γ⁴ for a convention and verifies the flat anticommutator.
pub fn standard_gamma_set(convention: ConventionSet) -> Result<GammaSet, CliffordError> {
    let four = &convention.signature[..4];
    let spacetime = if four == &MOSTLY_MINUS[..4] {
        dirac_basis()
    } else if four == &MOSTLY_PLUS[..4] {
        dirac_basis().map(|g| g.scale(&ExactComplex::i()))
    } else {
        return Err(CliffordError::ConventionInconsistent {
            convention: convention.id(),
            reason: "4D signature is not Lorentzian".into(),
        });
    };
    let [g0, g1, g2, g3] = spacetime;
    let g4 = chirality().scale(&convention.gamma5_phase.value());
    let set = GammaSet {
        gammas: [g0, g1, g2, g3, g4],
        convention,
        flat_metric: convention.metric_diag(),
    };
    let table = anticommutator_table(&set);
    for m in 0..5 {
        for n in 0..5 {
            let want = if m == n { set.flat_metric[m] } else { 0 };
            let e = &table[m][n];
            if !e.residual.is_zero() || e.scalar != ExactComplex::from_int(want) {
                return Err(CliffordError::ConventionInconsistent {
                    convention: convention.id(),
                    reason: format!("½{{γ^{m}, γ^{n}}} = {}·1 + R, expected {want}·1", e.scalar),
                });
            }
        }
    }
    Ok(set)
}

/// `½{γ^m, γ^n}` split into a multiple of the identity and a residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnticommutatorEntry {
    pub scalar: ExactComplex,
    pub residual: MatrixC,
}

impl AnticommutatorEntry {
    pub fn is_scalar(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn anticommutator_table(gs: &GammaSet) -> Vec<Vec<AnticommutatorEntry>> {
    let half = ExactComplex::from_ratio(1, 2);
    (0..5)
        .map(|m| {
            (0..5)
                .map(|n| {
                    let (scalar, residual) = gs.gammas[m].anticommutator(&gs.gammas[n]).scale(&half).scalar_part();
                    AnticommutatorEntry { scalar, residual }
                })
                .collect()
        })
        .collect()
}

/// Covariant potential components `A_μ`; the fifth component is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorPotential5 {
    lower: [ExactComplex; 4],
}

impl VectorPotential5 {
    pub fn new(lower: [ExactComplex; 4]) -> Self {
        Self { lower }
    }

    pub fn zero() -> Self {
        Self::new(std::array::from_fn(|_| ExactComplex::zero()))
    }

    pub fn from_components(a: [ExactComplex; 5]) -> Result<Self, CliffordError> {
        if !a[4].is_zero() {
            return Err(CliffordError::FifthPotentialComponent);
        }
        let [a0, a1, a2, a3, _] = a;
        Ok(Self::new([a0, a1, a2, a3]))
    }

    pub fn components(&self) -> [ExactComplex; 5] {
        std::array::from_fn(|i| if i < 4 { self.lower[i].clone() } else { ExactComplex::zero() })
    }

    pub fn lower(&self, mu: usize) -> &ExactComplex {
        &self.lower[mu]
    }

    /// `A^ν = ġ^{νμ} A_μ` for a diagonal flat metric.
    pub fn raised(&self, metric: &[i64; 5]) -> [ExactComplex; 4] {
        std::array::from_fn(|nu| self.lower[nu].scale(&ExactComplex::from_int(metric[nu]).re))
    }

    /// `A^τ A^ρ ġ_{τρ}`.
    pub fn square(&self, metric: &[i64; 5]) -> ExactComplex {
        let up = self.raised(metric);
        let mut s = ExactComplex::zero();
        for mu in 0..4 {
            s += &(&up[mu] * &self.lower[mu]);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.lower.iter().all(ExactComplex::is_zero)
    }
}

/// Comparison of the particle anticommutator table with the block form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParticleBlockReport {
    /// Spacetime block still equals the flat metric.
    pub spacetime_block_ok: bool,
    /// Measured scalars of `½{γ⁴, γ^ν}`; `None` where the result is not a multiple of 1.
    pub off_diagonal: [Option<ExactComplex>; 4],
    /// `A^ν`, the off-diagonal block as printed.
    pub expected_printed: [ExactComplex; 4],
    pub off_diagonal_matches_printed: bool,
    /// `sign · A^ν`, what expanding the fifth generator gives.
    pub off_diagonal_matches_expansion: bool,
    /// `+1`/`−1` when the measured block is `±A^ν`; `None` for zero potential or a mismatch.
    pub off_diagonal_sign: Option<i64>,
    pub fifth_block: AnticommutatorEntry,
    /// `A·A − 1`.
    pub fifth_block_expected: ExactComplex,
    pub fifth_block_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParticleGammaSet {
    pub set: GammaSet,
    pub potential: VectorPotential5,
    pub report: ParticleBlockReport,
}

/// `γ^μ = γ̇^μ`, `γ⁴ = γ̇⁴ + s·A_μγ̇^μ` with `s` the convention's potential sign.
pub fn particle_gamma_set(gs: &GammaSet, potential: &VectorPotential5) -> ParticleGammaSet {
    let sign = ExactComplex::from_int(gs.convention.vector_potential_sign.value());
    let mut g4 = gs.gammas[4].clone();
    for mu in 0..4 {
        let a = potential.lower(mu);
        if !a.is_zero() {
            g4 = &g4 + &gs.gammas[mu].scale(&(&sign * a));
        }
    }
    let mut set = gs.clone();
    set.gammas[4] = g4;

    let metric = gs.flat_metric;
    let table = anticommutator_table(&set);
    let spacetime_block_ok = (0..4).all(|m| {
        (0..4).all(|n| {
            let want = if m == n { metric[m] } else { 0 };
            table[m][n].is_scalar() && table[m][n].scalar == ExactComplex::from_int(want)
        })
    });
    let raised = potential.raised(&metric);
    let off_diagonal: [Option<ExactComplex>; 4] =
        std::array::from_fn(|nu| table[4][nu].is_scalar().then(|| table[4][nu].scalar.clone()));
    let matches = |k: i64| {
        off_diagonal
            .iter()
            .zip(&raised)
            .all(|(got, up)| got.as_ref() == Some(&up.scale(&ExactComplex::from_int(k).re)))
    };
    let off_diagonal_matches_printed = matches(1);
    let off_diagonal_matches_expansion = matches(gs.convention.vector_potential_sign.value());
    let off_diagonal_sign = if potential.is_zero() {
        None
    } else if matches(1) {
        Some(1)
    } else if matches(-1) {
        Some(-1)
    } else {
        None
    };
    let fifth_block_expected = &potential.square(&metric) - &ExactComplex::one();
    let fifth_block = table[4][4].clone();
    let fifth_block_ok = fifth_block.is_scalar() && fifth_block.scalar == fifth_block_expected;
    let report = ParticleBlockReport {
        spacetime_block_ok,
        off_diagonal,
        expected_printed: raised,
        off_diagonal_matches_printed,
        off_diagonal_matches_expansion,
        off_diagonal_sign,
        fifth_block,
        fifth_block_expected,
        fifth_block_ok,
    };
    ParticleGammaSet { set, potential: potential.clone(), report }
}

/// Sign of the fifth flat-metric entry required by the five-gamma form.
pub const FIFTH_FLAT_SIGN: Sign = Sign::Minus;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::convention::{Phase, Sign};
    use crate::clifford::scalar::ratio;

    fn std_set() -> GammaSet {
        standard_gamma_set(ConventionSet::standard()).unwrap()
    }

    #[test]
    fn fifth_generator_squares_to_minus_one() {
        let t = anticommutator_table(&std_set());
        assert_eq!(t[4][4].scalar, ExactComplex::from_int(-1));
        assert_eq!(t[0][0].scalar, ExactComplex::from_int(1));
        assert!(t[0][1].scalar.is_zero() && t[0][1].is_scalar());
    }

    #[test]
    fn table_is_flat_metric() {
        let t = anticommutator_table(&std_set());
        let diag = [1, -1, -1, -1, -1];
        for m in 0..5 {
            for n in 0..5 {
                assert!(t[m][n].is_scalar());
                let want = if m == n { diag[m] } else { 0 };
                assert_eq!(t[m][n].scalar, ExactComplex::from_int(want), "({m},{n})");
            }
        }
    }

    #[test]
    fn chirality_is_offdiagonal_identity_block() {
        let g5 = chirality();
        let want = MatrixC::from_gaussian_ints(
            [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
            [[0; 4]; 4],
        );
        assert_eq!(g5, want);
    }

    #[test]
    fn real_phase_cannot_give_minus_one() {
        let c = ConventionSet::new(crate::clifford::convention::MOSTLY_MINUS, Phase::PlusOne, Sign::Minus, Sign::Minus);
        assert!(matches!(standard_gamma_set(c), Err(CliffordError::ConventionInconsistent { .. })));
    }

    #[test]
    fn non_lorentzian_signature_rejected() {
        let sig = [Sign::Plus, Sign::Plus, Sign::Minus, Sign::Minus, Sign::Minus];
        let c = ConventionSet::new(sig, Phase::PlusI, Sign::Minus, Sign::Minus);
        assert!(standard_gamma_set(c).is_err());
    }

    #[test]
    fn sigma_is_antisymmetric() {
        let gs = std_set();
        for m in 0..5 {
            assert!(gs.sigma(m, m).is_zero());
            for n in 0..5 {
                assert_eq!(gs.sigma(m, n), -&gs.sigma(n, m));
            }
        }
    }

    #[test]
    fn zero_potential_is_identity_map() {
        let gs = std_set();
        let p = particle_gamma_set(&gs, &VectorPotential5::zero());
        assert_eq!(p.set, gs);
        assert_eq!(anticommutator_table(&p.set), anticommutator_table(&gs));
    }

    #[test]
    fn timelike_potential_blocks() {
        // A = (a,0,0,0), s = −1: ½{γ⁴,γ⁰} = −a·ġ⁰⁰, ½{γ⁴,γ⁴} = a²ġ⁰⁰ − 1.
        let gs = std_set();
        let a = ExactComplex::real(ratio(3, 7));
        let pot = VectorPotential5::new([a.clone(), ExactComplex::zero(), ExactComplex::zero(), ExactComplex::zero()]);
        let p = particle_gamma_set(&gs, &pot);
        assert_eq!(p.report.off_diagonal[0], Some(-a.clone()));
        assert_eq!(p.report.off_diagonal_sign, Some(-1));
        assert!(!p.report.off_diagonal_matches_printed);
        assert!(p.report.off_diagonal_matches_expansion);
        assert!(p.report.fifth_block_ok);
        assert_eq!(p.report.fifth_block.scalar, &(&a * &a) - &ExactComplex::one());
    }

    #[test]
    fn flipped_potential_sign_matches_printed_block() {
        let mut c = ConventionSet::standard();
        c.vector_potential_sign = Sign::Plus;
        let gs = standard_gamma_set(c).unwrap();
        let pot = VectorPotential5::new([
            ExactComplex::from_ratio(1, 2),
            ExactComplex::from_ratio(-1, 3),
            ExactComplex::zero(),
            ExactComplex::from_ratio(1, 5),
        ]);
        let p = particle_gamma_set(&gs, &pot);
        assert!(p.report.off_diagonal_matches_printed);
        assert_eq!(p.report.off_diagonal_sign, Some(1));
        assert!(p.report.fifth_block_ok);
        assert!(p.report.spacetime_block_ok);
        // A·A = 1/4 − 1/9 − 1/25
        assert_eq!(p.report.fifth_block_expected, &ExactComplex::real(ratio(1, 4) - ratio(1, 9) - ratio(1, 25)) - &ExactComplex::one());
    }

    #[test]
    fn fifth_component_must_vanish() {
        let mut a: [ExactComplex; 5] = std::array::from_fn(|_| ExactComplex::zero());
        a[4] = ExactComplex::one();
        assert!(VectorPotential5::from_components(a).is_err());
    }
}
