use crate::symtensor::{MetricTensor, SymExpr};

use super::GeomError;

/// Observer block, potential and the three conformal factors.
#[derive(Clone, Debug, PartialEq)]
pub struct FiveMetric {
    pub g4: [[SymExpr; 4]; 4],
    /// Covariant components `𝒜_μ`.
    pub a: [SymExpr; 4],
    pub lambda: SymExpr,
    pub chi: SymExpr,
    pub omega: SymExpr,
}

impl FiveMetric {
    /// `λ = χ = ω = 1`.
    pub fn standard(g4: [[SymExpr; 4]; 4], a: [SymExpr; 4]) -> Self {
        Self { g4, a, lambda: SymExpr::one(), chi: SymExpr::one(), omega: SymExpr::one() }
    }

    /// Flat observer block `diag(1, −1, −1, −1)` with the given potential.
    pub fn flat(a: [SymExpr; 4]) -> Self {
        Self::standard(minkowski(), a)
    }

    pub fn with_factors(mut self, lambda: SymExpr, chi: SymExpr, omega: SymExpr) -> Self {
        self.lambda = lambda;
        self.chi = chi;
        self.omega = omega;
        self
    }
}

pub fn minkowski() -> [[SymExpr; 4]; 4] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| match (i == j, i) {
            (false, _) => SymExpr::zero(),
            (true, 0) => SymExpr::one(),
            (true, _) => SymExpr::int(-1),
        })
    })
}

/// `ω·[[λg_{μν} − χ²𝒜_μ𝒜_ν, χ𝒜_μ], [χ𝒜_ν, −1]]`.
pub fn assemble_metric(fm: &FiveMetric) -> Result<MetricTensor, GeomError> {
    let chi_a: Vec<SymExpr> = fm.a.iter().map(|a| &fm.chi * a).collect();
    let mut rows = vec![vec![SymExpr::zero(); 5]; 5];
    for mu in 0..4 {
        for nu in 0..4 {
            rows[mu][nu] = &fm.omega * &(&(&fm.lambda * &fm.g4[mu][nu]) - &(&chi_a[mu] * &chi_a[nu]));
        }
        rows[mu][4] = &fm.omega * &chi_a[mu];
        rows[4][mu] = &fm.omega * &chi_a[mu];
    }
    rows[4][4] = -fm.omega.clone();
    Ok(MetricTensor::new(&rows)?)
}
