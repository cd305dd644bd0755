//! Invariance of the probability count under a constant conformal rescaling.

use serde::{Deserialize, Serialize};

use super::GeomError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountScenario {
    /// `|ψ|²`.
    pub psi_sq: f64,
    /// `(δx, δy, δz, δt)`.
    pub deltas: [f64; 4],
    pub lambda_scale: f64,
}

impl CountScenario {
    pub fn validate(&self) -> Result<(), GeomError> {
        let all = [self.psi_sq, self.lambda_scale, self.deltas[0], self.deltas[1], self.deltas[2], self.deltas[3]];
        if all.iter().all(|v| v.is_finite() && *v > 0.0) {
            Ok(())
        } else {
            Err(GeomError::InvalidScenario(format!("{self:?}")))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CountResult {
    pub n: f64,
    pub n_prime: f64,
    pub psi_prime_sq: f64,
    /// Marks after rescaling: each `δ` times `√λ`.
    pub primed_deltas: [f64; 4],
}

impl CountResult {
    pub fn relative_change(&self) -> f64 {
        (self.n_prime / self.n - 1.0).abs()
    }
}

fn count(psi_sq: f64, d: &[f64; 4]) -> f64 {
    psi_sq * d[0] * d[1] * d[2] / d[3]
}

/// `N = |ψ|² δxδyδz/δt`; marks scale by `√λ` and `|ψ′|² = |ψ|²/λ`.
pub fn conformal_count_invariance(cs: &CountScenario) -> Result<CountResult, GeomError> {
    cs.validate()?;
    let root = cs.lambda_scale.sqrt();
    let primed_deltas = cs.deltas.map(|d| d * root);
    let psi_prime_sq = cs.psi_sq / cs.lambda_scale;
    Ok(CountResult {
        n: count(cs.psi_sq, &cs.deltas),
        n_prime: count(psi_prime_sq, &primed_deltas),
        psi_prime_sq,
        primed_deltas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_scale_is_identity() {
        let r = conformal_count_invariance(&CountScenario { psi_sq: 0.3, deltas: [1.0, 2.0, 0.5, 4.0], lambda_scale: 1.0 }).unwrap();
        assert_eq!(r.psi_prime_sq, 0.3);
        assert_eq!(r.n, r.n_prime);
    }

    #[test]
    fn scale_four_doubles_marks() {
        let r = conformal_count_invariance(&CountScenario { psi_sq: 1.0, deltas: [1.0; 4], lambda_scale: 4.0 }).unwrap();
        assert_eq!(r.primed_deltas, [2.0; 4]);
        assert_eq!(r.psi_prime_sq, 0.25);
        assert_eq!((r.n, r.n_prime), (1.0, 1.0));
    }

    #[test]
    fn non_positive_entries_rejected() {
        let bad = CountScenario { psi_sq: 1.0, deltas: [1.0, 0.0, 1.0, 1.0], lambda_scale: 2.0 };
        assert!(matches!(conformal_count_invariance(&bad), Err(GeomError::InvalidScenario(_))));
    }
}
