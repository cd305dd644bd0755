use penta_core::clifford::search::{ids, identity_checks, probe_potential, tags};
use penta_core::clifford::{convention_search, particle_gamma_set, GammaSet};
use serde_json::json;

use crate::report::{Check, Status};

/// Identities whose outcome is a sign finding rather than a pass/fail claim.
const MEASURED: [&str; 3] = [ids::OFFDIAG_PRINTED, ids::GENERATOR_SIGN, ids::S_MIXED];

pub fn run(gs: &GammaSet) -> Vec<Check> {
    let mut out: Vec<Check> = identity_checks(&gs.convention)
        .into_iter()
        .map(|r| {
            let status = if MEASURED.contains(&r.identity_id.as_str()) {
                Status::Measured
            } else {
                Status::from_bool(r.pass)
            };
            let details = json!({ "holds": r.pass, "note": r.note });
            Check::new(format!("clifford.{}", r.identity_id), &r.paper_eq, status, r.residual, details)
        })
        .collect();

    let particle = particle_gamma_set(gs, &probe_potential());
    let sign = particle.report.off_diagonal_sign;
    out.push(Check::measured(
        "clifford.particle_offdiagonal_sign",
        tags::PARTICLE_METRIC,
        sign.map_or("none".to_string(), |s| s.to_string()),
        json!({
            "convention": gs.convention.id(),
            "matches_printed_form": particle.report.off_diagonal_matches_printed,
            "matches_expansion": particle.report.off_diagonal_matches_expansion,
        }),
    ));

    let search = convention_search();
    let satisfying = |id: &str| search.satisfying(&[id]).iter().map(|s| s.id.clone()).collect::<Vec<_>>();
    let best = search.best().expect("search space is non-empty");
    let flat_ok = !satisfying(ids::FLAT).is_empty();
    out.push(Check::new(
        "clifford.convention_search",
        tags::PARTICLE_METRIC,
        Status::from_bool(search.ranking.len() == 32 && flat_ok),
        best.score.to_string(),
        json!({
            "searched": search.ranking.len(),
            "best": best.id,
            "best_score": best.score,
            "conflicts": search.conflicts,
            "flat_anticommutator": satisfying(ids::FLAT),
            "dirac_reduction": satisfying(ids::REDUCTION),
            "particle_offdiagonal_printed_sign": satisfying(ids::OFFDIAG_PRINTED),
            "particle_generator_printed_sign": satisfying(ids::GENERATOR_SIGN),
        }),
    ));
    out
}
