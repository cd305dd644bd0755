use penta_core::symtensor::conformal::{conformal_ricci_split, conformal_scalar_identity_seeded, mostly_minus};
use penta_core::symtensor::curvature::curvature;
use penta_core::symtensor::fd::compare_with_fd;
use penta_core::symtensor::metric::inverse_defects;
use penta_core::symtensor::suite::suite_metrics;
use penta_core::symtensor::{FieldSym, MetricTensor, RatFun, SymExpr};
use serde_json::json;

use super::tags;
use crate::report::{Check, Status};

const FD_POINTS: usize = 5;

pub fn run(seed: u64) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 3..=6 {
        out.push(match conformal_scalar_identity_seeded(n, seed) {
            Ok(r) => Check::new(
                format!("conformal.scalar_identity_n{n}"),
                tags::CONFORMAL_SCALAR,
                Status::from_bool(r.passes()),
                r.residual.clone(),
                serde_json::to_value(&r).expect("serializable"),
            ),
            Err(e) => error_check(format!("conformal.scalar_identity_n{n}"), tags::CONFORMAL_SCALAR, e),
        });
    }
    out.extend(curvature_checks(seed));
    out.push(ricci_split_check());
    out
}

fn error_check(id: String, tag: &str, e: impl std::fmt::Display) -> Check {
    Check::new(id, tag, Status::Fail, "inf", json!({ "error": e.to_string() }))
}

fn curvature_checks(seed: u64) -> Vec<Check> {
    let metrics = match suite_metrics(seed) {
        Ok(m) => m,
        Err(e) => return vec![error_check("curvature.suite".into(), tags::CURVATURE, e)],
    };
    let mut out = Vec::new();
    for m in metrics {
        let id = format!("curvature.{}", m.name);
        let k = match curvature(&m.metric) {
            Ok(k) => k,
            Err(e) => {
                out.push(error_check(id, tags::CURVATURE, e));
                continue;
            }
        };
        // Exact scalar targets for the three textbook metrics.
        let scalar = k.scalar();
        let expected = match m.name {
            "flat4" | "polar2" => Some(SymExpr::zero()),
            "sphere2" => Some(SymExpr::int(2)),
            _ => None,
        };
        if let Some(want) = expected {
            let ok = scalar.equals(&want).unwrap_or(false) && (m.name != "flat4" || k.is_flat());
            out.push(Check::new(
                format!("{id}.scalar"),
                tags::CURVATURE,
                Status::from_bool(ok),
                if ok { "0".to_string() } else { penta_core::symtensor::to_sexpr(&(&scalar - &want)) },
                json!({ "scalar": penta_core::symtensor::to_sexpr(&scalar) }),
            ));
        }
        let inverse_ok = m.metric.inverse().map(|inv| inverse_defects(&m.metric, &inv).iter().all(RatFun::is_zero)).unwrap_or(false);
        let structural = inverse_ok && k.ricci_is_symmetric() && k.first_bianchi_holds() && k.connection().is_lower_symmetric();
        out.push(Check::new(
            format!("{id}.structure"),
            tags::CURVATURE,
            Status::from_bool(structural),
            if structural { "0" } else { "nonzero" },
            json!({
                "inverse": inverse_ok,
                "ricci_symmetric": k.ricci_is_symmetric(),
                "first_bianchi": k.first_bianchi_holds(),
                "connection_lower_symmetric": k.connection().is_lower_symmetric(),
            }),
        ));
        out.push(match compare_with_fd(&m.metric, &k, &m.env, &m.sample_points(FD_POINTS, seed)) {
            Ok(c) => Check::new(
                format!("{id}.finite_difference"),
                tags::CURVATURE,
                Status::from_bool(c.passes()),
                crate::report::fmt_residual(c.max_scalar_rel_err.max(c.max_ricci_rel_err)),
                serde_json::to_value(&c).expect("serializable"),
            ),
            Err(e) => error_check(format!("{id}.finite_difference"), tags::CURVATURE, e),
        });
    }
    out
}

/// `R[ω·η] = R[η] + T(ω)` recomposes exactly for a generic positive ω on
/// the five-dimensional flat metric.
fn ricci_split_check() -> Check {
    let id = "conformal.ricci_split_recomposition".to_string();
    let omega = SymExpr::field(FieldSym::new("omega", 0).depending_on(&[0, 1, 2, 3, 4]).positive());
    let result = MetricTensor::flat(&mostly_minus(5)).and_then(|g| conformal_ricci_split(&g, &omega));
    match result {
        Ok(split) => {
            let defects = split.recomposition_defects().iter().filter(|d| !d.is_zero()).count();
            Check::new(
                id,
                tags::RICCI_SPLIT,
                Status::from_bool(defects == 0 && !split.t_is_zero()),
                if defects == 0 { "0".to_string() } else { format!("{defects} nonzero components") },
                json!({ "dim": split.dim, "t_is_zero": split.t_is_zero() }),
            )
        }
        Err(e) => error_check(id, tags::RICCI_SPLIT, e),
    }
}
