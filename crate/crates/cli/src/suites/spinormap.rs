use penta_core::clifford::GammaSet;
use penta_core::spinormap::{
    dalembert_factorization_probe_with, map_jacobian, pullback_metric_with, reality_scan, spinor_to_x,
    stereographic_double_angle, stereographic_sweep, vanishing_coordinates, ProbeStatus, Reading, SolutionId, SpinorPoint,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::tags;
use crate::report::{Check, Status};

pub const PHASE_TOL: f64 = 1e-14;
pub const HOMOGENEITY_TOL: f64 = 1e-12;
pub const JACOBIAN_FD_STEP: f64 = 1e-6;
pub const JACOBIAN_TOL: f64 = 1e-8;
pub const KERNEL_TOL: f64 = 1e-10;
pub const STEREO_TOL: f64 = 1e-9;
pub const SAMPLE_POINTS: usize = 100;
pub const SCAN_SAMPLES: usize = 1000;

const READINGS: [Reading; 2] = [Reading::Plain, Reading::Adjoint];

fn reading_name(r: Reading) -> &'static str {
    match r {
        Reading::Plain => "plain",
        Reading::Adjoint => "adjoint",
    }
}

pub fn run(gs: &GammaSet, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5917);
    let points: Vec<SpinorPoint> = (0..SAMPLE_POINTS).map(|_| SpinorPoint::random(&mut rng)).collect();
    let mut out = vec![
        phase_invariance(gs, &points, &mut rng),
        homogeneity(gs, &points, &mut rng),
        jacobian_fd(gs, &points),
        pullback(gs, &points),
    ];
    for reading in READINGS {
        let scan = reality_scan(gs, reading, SCAN_SAMPLES, seed);
        let name = reading_name(reading);
        out.push(Check::new(
            format!("spinormap.reality_scan_{name}"),
            tags::SPINOR_MAP,
            Status::from_bool(scan.consistent()),
            format!("{:?}", scan.real_coordinates()),
            serde_json::to_value(&scan).expect("serializable"),
        ));
    }
    for reading in READINGS {
        for id in SolutionId::ALL {
            let r = dalembert_factorization_probe_with(gs, id, reading);
            let status = match r.status {
                ProbeStatus::Confirmed => "CONFIRMED",
                ProbeStatus::Unconfirmed => "UNCONFIRMED",
            };
            out.push(Check::measured(
                format!("spinormap.factorization_probe_{}_{id}", reading_name(reading)),
                tags::FACTORIZATION,
                format!("{status} max={:.6e}", r.max_second),
                serde_json::to_value(&r).expect("serializable"),
            ));
        }
    }
    out.push(stereo());
    out
}

fn phase_invariance(gs: &GammaSet, points: &[SpinorPoint], rng: &mut ChaCha8Rng) -> Check {
    let mut worst = 0.0f64;
    for p in points {
        let phi = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let (a, b) = (spinor_to_x(gs, p), spinor_to_x(gs, &p.rotate_phase(phi)));
        worst = (0..5).map(|m| (a.x[m] - b.x[m]).norm()).fold(worst, f64::max);
    }
    Check::below("spinormap.phase_invariance", tags::SPINOR_MAP, worst, PHASE_TOL, json!({ "points": points.len() }))
}

fn homogeneity(gs: &GammaSet, points: &[SpinorPoint], rng: &mut ChaCha8Rng) -> Check {
    let mut worst = 0.0f64;
    for p in points {
        let c = rng.gen_range(-3.0..3.0);
        let (a, b) = (spinor_to_x(gs, p), spinor_to_x(gs, &p.scale(c)));
        worst = (0..5).map(|m| (b.x[m] - a.x[m] * (c * c)).norm()).fold(worst, f64::max);
    }
    Check::below("spinormap.homogeneity", tags::SPINOR_MAP, worst, HOMOGENEITY_TOL, json!({ "points": points.len(), "scale_range": [-3.0, 3.0] }))
}

/// Central differences of `x_real`; relative error with a unit floor.
pub fn jacobian_fd_error(gs: &GammaSet, p: &SpinorPoint) -> f64 {
    let h = JACOBIAN_FD_STEP;
    let jac = map_jacobian(gs, p);
    let v = p.as_real8();
    let mut worst = 0.0f64;
    for k in 0..8 {
        let (mut up, mut dn) = (v, v);
        up[k] += h;
        dn[k] -= h;
        let (xu, xd) = (spinor_to_x(gs, &SpinorPoint::from_real8(&up)), spinor_to_x(gs, &SpinorPoint::from_real8(&dn)));
        for m in 0..5 {
            let fd = (xu.x_real[m] - xd.x_real[m]) / (2.0 * h);
            worst = worst.max((fd - jac.j[m][k]).abs() / jac.j[m][k].abs().max(1.0));
        }
    }
    worst
}

fn jacobian_fd(gs: &GammaSet, points: &[SpinorPoint]) -> Check {
    let worst = points.iter().map(|p| jacobian_fd_error(gs, p)).fold(0.0, f64::max);
    Check::below("spinormap.jacobian_fd", tags::SPINOR_MAP, worst, JACOBIAN_TOL, json!({ "points": points.len(), "step": JACOBIAN_FD_STEP }))
}

fn flat_metric(gs: &GammaSet) -> [[f64; 5]; 5] {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { gs.flat_metric[i] as f64 } else { 0.0 }))
}

/// Rank bound, symmetry and the phase kernel under both readings; the
/// residual is the plain-reading maximum rank.
fn pullback(gs: &GammaSet, points: &[SpinorPoint]) -> Check {
    let g5 = flat_metric(gs);
    let mut ok = true;
    let mut details = serde_json::Map::new();
    let mut plain_rank = 0;
    for reading in READINGS {
        let (mut max_rank, mut min_rank, mut kernel) = (0usize, usize::MAX, 0.0f64);
        let mut symmetric = true;
        for p in points {
            let pb = pullback_metric_with(gs, p, &g5, reading);
            max_rank = max_rank.max(pb.rank);
            min_rank = min_rank.min(pb.rank);
            symmetric &= pb.is_symmetric(1e-12);
            kernel = pb.apply(&p.phase_direction()).iter().fold(kernel, |a, v| a.max(v.abs()));
        }
        ok &= max_rank <= 5 && symmetric && kernel < KERNEL_TOL;
        if reading == Reading::Plain {
            plain_rank = max_rank;
        }
        details.insert(
            reading_name(reading).to_string(),
            json!({
                "max_rank": max_rank,
                "min_rank": min_rank,
                "symmetric": symmetric,
                "phase_kernel_residual": kernel,
                "vanishing_coordinates": vanishing_coordinates(gs, reading),
            }),
        );
    }
    details.insert("points".into(), json!(points.len()));
    Check::new("spinormap.pullback_rank", tags::PULLBACK, Status::from_bool(ok), plain_rank.to_string(), details.into())
}

fn stereo() -> Check {
    let rows = stereographic_sweep();
    let worst = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    let at45 = stereographic_double_angle(45.0).map(|(t, _)| t).ok();
    Check::below("spinormap.stereographic_sweep", tags::STEREO, worst, STEREO_TOL, json!({ "rows": rows.len(), "theta_at_45": at45 }))
}
