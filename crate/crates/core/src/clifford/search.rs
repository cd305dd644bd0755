//! Exhaustive scoring of the convention space against every Clifford identity.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::convention::{ConventionSet, Sign};
use super::gamma::{anticommutator_table, particle_gamma_set, standard_gamma_set, GammaSet, VectorPotential5, FIFTH_FLAT_SIGN};
use super::reduction::dirac_reduction_check;
use super::scalar::{residual_string, ExactComplex};
use super::similarity::{similarity_findings, similarity_transform};

/// Relation tags carried by every identity record.
pub mod tags {
    pub const ANTICOMMUTATOR: &str = "five-gamma-anticommutator";
    pub const PARTICLE_METRIC: &str = "particle-metric-blocks";
    pub const SIMILARITY: &str = "similarity-transform";
    pub const REDUCTION: &str = "dirac-five-reduction";
}

/// One JSON-reportable identity check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityRecord {
    pub identity_id: String,
    pub paper_eq: String,
    pub convention: String,
    /// `"0"` for an exact zero, otherwise a decimal rendering.
    pub residual: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityRecord {
    fn new(id: &str, tag: &str, c: &ConventionSet, residual: String, pass: bool) -> Self {
        Self {
            identity_id: id.to_string(),
            paper_eq: tag.to_string(),
            convention: c.id(),
            residual,
            pass,
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

pub mod ids {
    pub const FLAT: &str = "flat_anticommutator";
    pub const SIGMA: &str = "sigma_antisymmetry";
    pub const FIFTH_BLOCK: &str = "particle_fifth_block";
    pub const OFFDIAG_PRINTED: &str = "particle_offdiagonal_printed_sign";
    pub const GENERATOR_SIGN: &str = "particle_generator_printed_sign";
    pub const S_INVERSE: &str = "similarity_inverse";
    pub const S_GAMMA4: &str = "similarity_commutes_gamma4";
    pub const S_MIXED: &str = "similarity_gamma4_gamma_mu";
    pub const REDUCTION: &str = "dirac_reduction";
}

/// Potential used for the particle-metric checks: `A_μ = (1/2, −1/3, 0, 1/5)`.
pub fn probe_potential() -> VectorPotential5 {
    VectorPotential5::new([
        ExactComplex::from_ratio(1, 2),
        ExactComplex::from_ratio(-1, 3),
        ExactComplex::zero(),
        ExactComplex::from_ratio(1, 5),
    ])
}

/// `(k, m)` pairs: rest frame, two boosts, and a massless wave.
pub const REDUCTION_MOMENTA: [([f64; 4], f64); 4] = [
    ([1.0, 0.0, 0.0, 0.0], 1.0),
    ([1.25, 0.75, 0.0, 0.0], 1.0),
    ([13.0 / 12.0, 0.0, 0.0, 5.0 / 12.0], 1.0),
    ([1.0, 0.0, 0.0, 1.0], 0.0),
];

/// Runs every identity for a single convention.
pub fn identity_checks(c: &ConventionSet) -> Vec<IdentityRecord> {
    let all = [
        (ids::FLAT, tags::ANTICOMMUTATOR),
        (ids::SIGMA, tags::ANTICOMMUTATOR),
        (ids::FIFTH_BLOCK, tags::PARTICLE_METRIC),
        (ids::OFFDIAG_PRINTED, tags::PARTICLE_METRIC),
        (ids::GENERATOR_SIGN, tags::PARTICLE_METRIC),
        (ids::S_INVERSE, tags::SIMILARITY),
        (ids::S_GAMMA4, tags::SIMILARITY),
        (ids::S_MIXED, tags::SIMILARITY),
        (ids::REDUCTION, tags::REDUCTION),
    ];
    let gs = match standard_gamma_set(*c) {
        Ok(gs) => gs,
        Err(e) => {
            return all
                .iter()
                .map(|(id, tag)| IdentityRecord::new(id, tag, c, "inf".into(), false).with_note(e.to_string()))
                .collect();
        }
    };
    let mut out = Vec::with_capacity(all.len());
    out.push(flat_record(&gs));
    out.push(sigma_record(&gs));
    out.extend(particle_records(&gs));
    out.extend(similarity_records(&gs));
    out.push(reduction_record(&gs));
    out
}

fn flat_record(gs: &GammaSet) -> IdentityRecord {
    let c = &gs.convention;
    let table = anticommutator_table(gs);
    // Required form: diag(g^{μν}, −1) with a Lorentzian g^{μν}.
    let mut residual = BigRational::zero();
    for m in 0..5 {
        for n in 0..5 {
            let want = if m != n {
                0
            } else if m == 4 {
                FIFTH_FLAT_SIGN.value()
            } else {
                gs.flat_metric[m]
            };
            let e = &table[m][n];
            let diff = (&e.scalar - &ExactComplex::from_int(want)).max_abs_part();
            residual = residual.max(diff).max(e.residual.max_abs());
        }
    }
    let pass = residual.is_zero();
    let rec = IdentityRecord::new(ids::FLAT, tags::ANTICOMMUTATOR, c, residual_string(&residual), pass);
    if pass {
        rec
    } else {
        rec.with_note("fifth diagonal entry is not −1")
    }
}

fn sigma_record(gs: &GammaSet) -> IdentityRecord {
    let mut residual = BigRational::zero();
    for m in 0..5 {
        residual = residual.max(gs.sigma(m, m).max_abs());
        for n in (m + 1)..5 {
            residual = residual.max((&gs.sigma(m, n) + &gs.sigma(n, m)).max_abs());
        }
    }
    let pass = residual.is_zero();
    IdentityRecord::new(ids::SIGMA, tags::ANTICOMMUTATOR, &gs.convention, residual_string(&residual), pass)
}

fn particle_records(gs: &GammaSet) -> Vec<IdentityRecord> {
    let c = &gs.convention;
    let p = particle_gamma_set(gs, &probe_potential());
    let r = &p.report;
    let fifth_residual = (&r.fifth_block.scalar - &r.fifth_block_expected)
        .max_abs_part()
        .max(r.fifth_block.residual.max_abs());
    let fifth = IdentityRecord::new(
        ids::FIFTH_BLOCK,
        tags::PARTICLE_METRIC,
        c,
        residual_string(&fifth_residual),
        r.fifth_block_ok && r.spacetime_block_ok,
    );
    let mut off_residual = BigRational::zero();
    for (got, want) in r.off_diagonal.iter().zip(&r.expected_printed) {
        off_residual = off_residual.max(match got {
            Some(g) => (g - want).max_abs_part(),
            None => BigRational::from_integer(1.into()),
        });
    }
    let sign_note = match r.off_diagonal_sign {
        Some(1) => "off-diagonal block is +A^ν".to_string(),
        Some(_) => "off-diagonal block is −A^ν".to_string(),
        None => "off-diagonal block is not ±A^ν·1".to_string(),
    };
    let off = IdentityRecord::new(
        ids::OFFDIAG_PRINTED,
        tags::PARTICLE_METRIC,
        c,
        residual_string(&off_residual),
        r.off_diagonal_matches_printed,
    )
    .with_note(sign_note);
    let generator_ok = c.vector_potential_sign == Sign::Minus && r.off_diagonal_matches_expansion;
    let gen_residual = if generator_ok { BigRational::zero() } else { BigRational::from_integer(2.into()) };
    let gen = IdentityRecord::new(ids::GENERATOR_SIGN, tags::PARTICLE_METRIC, c, residual_string(&gen_residual), generator_ok)
        .with_note("fifth generator written as γ̇⁴ − A_μγ̇^μ");
    vec![fifth, off, gen]
}

fn similarity_records(gs: &GammaSet) -> Vec<IdentityRecord> {
    let c = &gs.convention;
    match similarity_transform(gs) {
        Err(e) => [ids::S_INVERSE, ids::S_GAMMA4, ids::S_MIXED]
            .iter()
            .map(|id| IdentityRecord::new(id, tags::SIMILARITY, c, "inf".into(), false).with_note(e.to_string()))
            .collect(),
        Ok(sim) => {
            let f = similarity_findings(gs, &sim);
            let mixed = IdentityRecord::new(
                ids::S_MIXED,
                tags::SIMILARITY,
                c,
                residual_string(&f.mixed_residual),
                f.mixed_residual.is_zero(),
            );
            let mixed = if f.mixed_is_negated {
                mixed.with_note("Sγ⁴γ^μS⁻¹ = −γ^μ exactly")
            } else {
                mixed
            };
            vec![
                IdentityRecord::new(ids::S_INVERSE, tags::SIMILARITY, c, residual_string(&f.inverse_residual), f.inverse_residual.is_zero()),
                IdentityRecord::new(ids::S_GAMMA4, tags::SIMILARITY, c, residual_string(&f.gamma4_residual), f.gamma4_residual.is_zero()),
                mixed,
            ]
        }
    }
}

fn reduction_record(gs: &GammaSet) -> IdentityRecord {
    let c = &gs.convention;
    let mut worst: f64 = 0.0;
    for (k, m) in REDUCTION_MOMENTA {
        match dirac_reduction_check(gs, k, m) {
            Ok(r) => worst = worst.max(r.max_residual),
            Err(e) => {
                return IdentityRecord::new(ids::REDUCTION, tags::REDUCTION, c, "inf".into(), false)
                    .with_note(format!("k = {k:?}, m = {m}: {e}"));
            }
        }
    }
    let residual = if worst == 0.0 { "0".to_string() } else { format!("{worst:.6e}") };
    IdentityRecord::new(ids::REDUCTION, tags::REDUCTION, c, residual, worst < super::reduction::REDUCTION_TOL)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConventionScore {
    pub convention: ConventionSet,
    pub id: String,
    pub score: usize,
    pub records: Vec<IdentityRecord>,
}

impl ConventionScore {
    pub fn passed(&self, identity: &str) -> bool {
        self.records.iter().any(|r| r.identity_id == identity && r.pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    /// Ordered by score (descending), then by convention.
    pub ranking: Vec<ConventionScore>,
    /// Pairs of identities no single convention satisfies together.
    pub conflicts: Vec<String>,
}

impl SearchReport {
    pub fn best(&self) -> Option<&ConventionScore> {
        self.ranking.first()
    }

    pub fn scores(&self) -> Vec<(ConventionSet, usize)> {
        self.ranking.iter().map(|s| (s.convention, s.score)).collect()
    }

    pub fn satisfying(&self, identities: &[&str]) -> Vec<&ConventionScore> {
        self.ranking.iter().filter(|s| identities.iter().all(|id| s.passed(id))).collect()
    }
}

pub fn convention_search() -> SearchReport {
    convention_search_over(&ConventionSet::full_space())
}

/// Scores an arbitrary list of conventions; output order depends only on
/// the set, not the input order.
pub fn convention_search_over(space: &[ConventionSet]) -> SearchReport {
    let mut ranking: Vec<ConventionScore> = space
        .iter()
        .map(|c| {
            let records = identity_checks(c);
            let score = records.iter().filter(|r| r.pass).count();
            ConventionScore { convention: *c, id: c.id(), score, records }
        })
        .collect();
    ranking.sort_by(|a, b| b.score.cmp(&a.score).then_with(|| a.convention.cmp(&b.convention)));
    ranking.dedup_by(|a, b| a.convention == b.convention);

    let mut conflicts = Vec::new();
    let pairs = [
        (ids::OFFDIAG_PRINTED, ids::GENERATOR_SIGN),
        (ids::FLAT, ids::REDUCTION),
        (ids::S_MIXED, ids::S_INVERSE),
    ];
    for (a, b) in pairs {
        let some_a = ranking.iter().any(|s| s.passed(a));
        let some_b = ranking.iter().any(|s| s.passed(b));
        let both = ranking.iter().any(|s| s.passed(a) && s.passed(b));
        if some_a && some_b && !both {
            conflicts.push(format!("{a} and {b} hold under different conventions, never together"));
        } else if !some_a && some_b {
            conflicts.push(format!("{a} fails under every convention searched"));
        }
    }
    SearchReport { ranking, conflicts }
}
