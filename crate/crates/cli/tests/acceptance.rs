//! Acceptance criteria, one printed line each. Run with
//! `cargo test -p penta-cli --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use penta_cli::suites::fivegeom::order_field_potential;
use penta_cli::{run_suite, RunConfig, Suite};
use penta_core::clifford::search::{ids, probe_potential, REDUCTION_MOMENTA};
use penta_core::clifford::{
    anticommutator_table, convention_search, dirac_reduction_check, particle_gamma_set, standard_gamma_set, ConventionSet,
    ExactComplex,
};
use penta_core::fivegeom::geodesic::{convergence_order, PathImage};
use penta_core::fivegeom::{
    conformal_count_invariance, integrate_geodesic, klein_gordon_check, preferred_geodesic_field, CountScenario, FiveMetric,
    GeodesicState,
};
use penta_core::spinormap::{map_jacobian, pullback_metric, spinor_to_x, stereographic_double_angle, SpinorPoint};
use penta_core::symtensor::conformal::conformal_scalar_identity;
use penta_core::symtensor::curvature::curvature;
use penta_core::symtensor::suite::suite_metrics;
use penta_core::symtensor::{MetricTensor, NumericEnv, SymExpr};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    summary: String,
}

fn outcome(pass: bool, summary: impl Into<String>) -> Outcome {
    Outcome { pass, summary: summary.into() }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn c01_anticommutator() -> Outcome {
    let (res, dt) = timed(|| {
        let gs = standard_gamma_set(ConventionSet::standard()).ok()?;
        let table = anticommutator_table(&gs);
        let mut exact = true;
        for m in 0..5 {
            for n in 0..5 {
                let want = if m == n { gs.flat_metric[m] } else { 0 };
                exact &= table[m][n].is_scalar() && table[m][n].scalar == ExactComplex::from_int(want);
            }
        }
        Some((exact, gs.convention.id()))
    });
    match res {
        Some((exact, id)) => outcome(exact && dt < Duration::from_secs(1), format!("table exact={exact} residual=0 under {id}, {dt:?} (< 1 s)")),
        None => outcome(false, "standard gamma set failed to build"),
    }
}

fn c02_particle_blocks() -> Outcome {
    let gs = standard_gamma_set(ConventionSet::standard()).expect("standard set");
    let p = particle_gamma_set(&gs, &probe_potential());
    let (search, dt) = timed(convention_search);
    let signs: Vec<String> = search
        .ranking
        .iter()
        .filter_map(|s| standard_gamma_set(s.convention).ok())
        .map(|g| format!("{}:{:?}", g.convention.id(), particle_gamma_set(&g, &probe_potential()).report.off_diagonal_sign))
        .collect();
    let conflict_named = search.conflicts.iter().any(|c| c.contains(ids::OFFDIAG_PRINTED));
    let pass = p.report.fifth_block_ok
        && p.report.off_diagonal_sign.is_some()
        && search.ranking.len() == 32
        && dt < Duration::from_secs(10)
        && conflict_named;
    outcome(
        pass,
        format!(
            "fifth block exact={}, off-diagonal sign {:?} (standard), {} conventions searched in {dt:?} (< 10 s), sign conflict named={conflict_named}, {} signs recorded",
            p.report.fifth_block_ok,
            p.report.off_diagonal_sign,
            search.ranking.len(),
            signs.len()
        ),
    )
}

fn c03_reduction() -> Outcome {
    let search = convention_search();
    let best = search.best().expect("non-empty");
    let gs = match standard_gamma_set(best.convention) {
        Ok(g) => g,
        Err(e) => return outcome(false, format!("best convention {} invalid: {e}", best.id)),
    };
    let mut worst = 0.0f64;
    let mut count = 0;
    for (k, m) in REDUCTION_MOMENTA {
        match dirac_reduction_check(&gs, k, m) {
            Ok(r) => {
                worst = worst.max(r.max_residual);
                count += 1;
            }
            Err(e) => return outcome(false, format!("k={k:?} m={m}: {e}")),
        }
    }
    let rest = REDUCTION_MOMENTA.iter().any(|(k, m)| k[1..] == [0.0; 3] && *m > 0.0);
    outcome(count >= 3 && rest && worst < 1e-10, format!("{count} momenta incl. rest frame under {}: max residual {worst:.3e} (< 1e-10)", best.id))
}

fn c04_conformal_scalar() -> Outcome {
    let (r, dt) = timed(|| conformal_scalar_identity(5));
    match r {
        Ok(r) => {
            let c5 = r.c_n == "16/3";
            let pass = r.residual_is_zero && r.fd.points == 5 && r.fd.tolerance == 1e-6 && r.fd.passes() && c5 && dt < Duration::from_secs(30);
            outcome(
                pass,
                format!(
                    "residual {} , c5={} , FD rel err {:.2e}/{:.2e} at {} points (< 1e-6), {dt:?} (< 30 s)",
                    r.residual, r.c_n, r.fd.max_rel_err_closed_form, r.fd.max_rel_err_symbolic, r.fd.points
                ),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn c05_curvature() -> Outcome {
    let flat = curvature(&MetricTensor::flat(&[1, -1, -1, -1, -1]).unwrap()).unwrap();
    let mut notes = vec![format!("flat5 zero={}", flat.is_flat())];
    let mut pass = flat.is_flat();
    for m in suite_metrics(1).unwrap() {
        let k = curvature(&m.metric).unwrap();
        let structural = k.first_bianchi_holds() && k.ricci_is_symmetric();
        pass &= structural;
        let scalar = k.scalar();
        match m.name {
            "polar2" => {
                let ok = scalar.is_zero().unwrap();
                pass &= ok;
                notes.push(format!("polar2 R=0 {ok}"));
            }
            "sphere2" => {
                let ok = scalar.equals(&SymExpr::int(2)).unwrap();
                pass &= ok;
                notes.push(format!("sphere2 R=2 {ok}"));
            }
            _ => {}
        }
        if !structural {
            notes.push(format!("{} bianchi/symmetry FAILED", m.name));
        }
    }
    notes.push("Bianchi and Ricci symmetry exact on all suite metrics".into());
    outcome(pass, notes.join(", "))
}

fn c06_klein_gordon() -> Outcome {
    let on = [([1.5, 0.0, 0.0, 0.0], 1.5), ([1.25, 0.75, 0.0, 0.0], 1.0), ([1.0, 0.0, 0.0, 1.0], 0.0)];
    let off = [([2.0, 0.0, 0.0, 0.0], 1.0), ([0.5, 0.25, -0.5, 1.0], 0.75)];
    let worst_on = on.iter().map(|(k, m)| klein_gordon_check(*k, *m).unwrap().residual).fold(0.0, f64::max);
    let worst_off = off
        .iter()
        .map(|(k, m)| {
            let kk = k[0] * k[0] - k[1] * k[1] - k[2] * k[2] - k[3] * k[3];
            (klein_gordon_check(*k, *m).unwrap().residual - (m * m - kk).abs()).abs()
        })
        .fold(0.0, f64::max);
    outcome(worst_on < 1e-12 && worst_off < 1e-10, format!("on-shell max {worst_on:.2e} (< 1e-12), off-shell |res − |m²−k²|| max {worst_off:.2e} (< 1e-10)"))
}

fn c07_count() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let cs = CountScenario {
            psi_sq: rng.gen_range(0.01..5.0),
            deltas: std::array::from_fn(|_| rng.gen_range(0.1..3.0)),
            lambda_scale: rng.gen_range(0.1..10.0),
        };
        worst = worst.max(conformal_count_invariance(&cs).unwrap().relative_change());
    }
    outcome(worst < 1e-12, format!("100 λ in [0.1, 10]: max |N′/N − 1| = {worst:.2e} (< 1e-12)"))
}

fn c08_geodesics() -> Outcome {
    let x = SymExpr::coord;
    // constant potential closed form
    let lower = [0.5, 0.25, -1.0 / 3.0, 0.2];
    let a = [SymExpr::rational(1, 2), SymExpr::rational(1, 4), SymExpr::rational(-1, 3), SymExpr::rational(1, 5)];
    let f = preferred_geodesic_field(&FiveMetric::flat(a), NumericEnv::new()).unwrap();
    let start = GeodesicState { x: [0.1, -0.2, 0.3, 0.4, 0.0], s: 0.0 };
    let path = integrate_geodesic(&f, start, 0.01, 100).unwrap();
    let up = [lower[0], -lower[1], -lower[2], -lower[3]];
    let a2: f64 = (0..4).map(|m| up[m] * lower[m]).sum();
    let u = [up[0], up[1], up[2], up[3], a2 + (1.0 + a2).sqrt()];
    let closed = path.iter().flat_map(|st| (0..5).map(move |i| (st.x[i] - start.x[i] - st.s * u[i]).abs())).fold(0.0, f64::max);

    let fo = preferred_geodesic_field(&FiveMetric::flat(order_field_potential()), NumericEnv::new()).unwrap();
    let order = convergence_order(&fo, GeodesicState { x: [0.0, 1.0, 0.0, 0.0, 0.0], s: 0.0 }, 1.0, 0.1).unwrap();

    let pot = [SymExpr::one() + SymExpr::rational(1, 4) * x(1), SymExpr::rational(1, 5) * x(0), SymExpr::zero(), SymExpr::rational(1, 10) * x(2)];
    let w = SymExpr::one() + SymExpr::rational(1, 10) * x(0) * x(0);
    let fb = preferred_geodesic_field(&FiveMetric::flat(pot.clone()).with_factors(SymExpr::one(), SymExpr::one(), w.clone()), NumericEnv::new()).unwrap();
    let fs = preferred_geodesic_field(&FiveMetric::flat(pot).with_factors(SymExpr::one(), SymExpr::one(), SymExpr::rational(5, 2) * w), NumericEnv::new()).unwrap();
    let s0 = GeodesicState { x: [0.1, -0.2, 0.3, 0.0, 0.0], s: 0.0 };
    let pb = integrate_geodesic(&fb, s0, 1e-3, 1000).unwrap();
    let ps = integrate_geodesic(&fs, s0, 1e-3, 400).unwrap();
    let h = PathImage::new(&fb, &pb, 4).unwrap().hausdorff(&PathImage::new(&fs, &ps, 4).unwrap());
    outcome(
        closed < 1e-10 && order >= 3.9 && h < 1e-8,
        format!("closed-form err {closed:.2e} (< 1e-10), order {order:.3} (≥ 3.9), Hausdorff {h:.2e} (< 1e-8)"),
    )
}

fn c09_spinor_map() -> Outcome {
    let gs = standard_gamma_set(ConventionSet::standard()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let eta: [[f64; 5]; 5] = std::array::from_fn(|i| std::array::from_fn(|j| if i != j { 0.0 } else { gs.flat_metric[i] as f64 }));
    let (mut phase, mut homog, mut jac_err, mut max_rank) = (0.0f64, 0.0f64, 0.0f64, 0usize);
    let h = 1e-6;
    for _ in 0..100 {
        let p = SpinorPoint::random(&mut rng);
        let img = spinor_to_x(&gs, &p);
        let rot = spinor_to_x(&gs, &p.rotate_phase(rng.gen_range(-3.2..3.2)));
        let c: f64 = rng.gen_range(-3.0..3.0);
        let sc = spinor_to_x(&gs, &p.scale(c));
        for m in 0..5 {
            phase = phase.max((img.x[m] - rot.x[m]).norm());
            homog = homog.max((sc.x[m] - img.x[m] * (c * c)).norm());
        }
        let j = map_jacobian(&gs, &p);
        let v = p.as_real8();
        for k in 0..8 {
            let (mut a, mut b) = (v, v);
            a[k] += h;
            b[k] -= h;
            let (xa, xb) = (spinor_to_x(&gs, &SpinorPoint::from_real8(&a)), spinor_to_x(&gs, &SpinorPoint::from_real8(&b)));
            for m in 0..5 {
                let fd = (xa.x_real[m] - xb.x_real[m]) / (2.0 * h);
                jac_err = jac_err.max((fd - j.j[m][k]).abs() / j.j[m][k].abs().max(1.0));
            }
        }
        max_rank = max_rank.max(pullback_metric(&gs, &p, &eta).rank);
    }
    outcome(
        phase < 1e-14 && homog < 1e-12 && jac_err < 1e-8 && max_rank <= 5,
        format!("phase {phase:.2e} (< 1e-14), homogeneity {homog:.2e} (< 1e-12), Jacobian FD rel {jac_err:.2e} (< 1e-8) at 100 points, max pullback rank {max_rank} (≤ 5)"),
    )
}

fn c10_stereo() -> Outcome {
    let worst = (1..180).map(|d| stereographic_double_angle(d as f64).unwrap().1).fold(0.0, f64::max);
    outcome(worst < 1e-9, format!("179-point 1° sweep: max |θ − 2φ| = {worst:.2e} (< 1e-9)"))
}

fn strip_timestamp(json: &str) -> String {
    json.lines().filter(|l| !l.trim_start().starts_with("\"timestamp\"")).collect::<Vec<_>>().join("\n")
}

fn c11_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::new(Suite::All, dir.path());
    cfg.seed = 11;
    let a = run_suite(&cfg).unwrap().to_json();
    let b = run_suite(&cfg).unwrap().to_json();
    let same = strip_timestamp(&a) == strip_timestamp(&b);
    outcome(same, format!("two `verify all` runs with seed 11: byte-identical modulo timestamp = {same} ({} bytes)", a.len()))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("anticommutator table exact", c01_anticommutator),
        ("particle metric blocks and convention search", c02_particle_blocks),
        ("Dirac reduction plane waves", c03_reduction),
        ("conformal scalar identity n=5", c04_conformal_scalar),
        ("curvature engine", c05_curvature),
        ("Klein-Gordon plane waves", c06_klein_gordon),
        ("conformal count invariance", c07_count),
        ("geodesic integrator", c08_geodesics),
        ("spinor map", c09_spinor_map),
        ("stereographic double angle", c10_stereo),
        ("determinism", c11_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!("{} [{:02}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.summary);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
