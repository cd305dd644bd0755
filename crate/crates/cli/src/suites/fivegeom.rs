use penta_core::fivegeom::geodesic::{convergence_order, PathImage};
use penta_core::fivegeom::{
    assemble_metric, conformal_count_invariance, integrate_geodesic, klein_gordon_check, minkowski, preferred_geodesic_field,
    CountScenario, FiveMetric, GeodesicState, GeomError,
};
use penta_core::symtensor::{FieldSym, NumericEnv, SampleField, SymExpr};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::tags;
use crate::report::{Check, Status};

pub const CLOSED_FORM_TOL: f64 = 1e-10;
pub const MIN_ORDER: f64 = 3.9;
pub const HAUSDORFF_TOL: f64 = 1e-8;
pub const KG_ON_SHELL_TOL: f64 = 1e-12;
pub const KG_OFF_SHELL_TOL: f64 = 1e-10;
pub const COUNT_TOL: f64 = 1e-12;

/// On-shell `(k, m)` pairs: rest frame, two boosts and a massless wave.
pub const ON_SHELL: [([f64; 4], f64); 4] = [
    ([1.5, 0.0, 0.0, 0.0], 1.5),
    ([1.25, 0.75, 0.0, 0.0], 1.0),
    ([13.0 / 12.0, 0.0, 0.0, 5.0 / 12.0], 1.0),
    ([1.0, 0.0, 0.0, 1.0], 0.0),
];

pub const OFF_SHELL: [([f64; 4], f64); 3] =
    [([2.0, 0.0, 0.0, 0.0], 1.0), ([0.5, 0.25, -0.5, 1.0], 0.75), ([0.0, 0.0, 0.0, 0.0], 1.25)];

fn x(i: usize) -> SymExpr {
    SymExpr::coord(i)
}

fn checked(id: &str, tag: &str, r: Result<Check, GeomError>) -> Check {
    r.unwrap_or_else(|e| Check::new(id, tag, Status::Fail, "inf", json!({ "error": e.to_string() })))
}

pub fn run(seed: u64) -> Vec<Check> {
    let mut out = vec![
        checked("fivegeom.standard_form", tags::FIVE_METRIC, standard_form()),
        checked("fivegeom.determinant_with_factors", tags::FIVE_METRIC_FACTORS, determinant(seed)),
        checked("geodesic.constant_potential_closed_form", tags::GEODESICS, constant_potential()),
        checked("geodesic.rk4_order", tags::GEODESICS, rk4_order()),
        checked("geodesic.path_image_rescaling", tags::GEODESICS, path_image()),
        checked("geodesic.field_free", tags::FIELD_FREE, field_free()),
    ];
    out.extend(klein_gordon());
    out.push(checked("count.invariance", tags::COUNT, count(seed)));
    out
}

/// Unit factors reproduce `[[η − 𝒜𝒜, 𝒜], [𝒜, −1]]` symbolically.
fn standard_form() -> Result<Check, GeomError> {
    let a: [SymExpr; 4] = std::array::from_fn(|i| SymExpr::field(FieldSym::new(&format!("a{i}"), 5)));
    let g = assemble_metric(&FiveMetric::flat(a.clone()))?;
    let eta = minkowski();
    let mut mismatches = 0;
    for mu in 0..4 {
        for nu in 0..4 {
            if !g.component(mu, nu).equals(&(&eta[mu][nu] - &(&a[mu] * &a[nu])))? {
                mismatches += 1;
            }
        }
        if !g.component(mu, 4).equals(&a[mu])? {
            mismatches += 1;
        }
    }
    if !g.component(4, 4).equals(&SymExpr::int(-1))? {
        mismatches += 1;
    }
    let ok = mismatches == 0 && g.is_symmetric();
    Ok(Check::new("fivegeom.standard_form", tags::FIVE_METRIC, Status::from_bool(ok), if ok { "0".into() } else { format!("{mismatches} components") }, json!({})))
}

/// `det G = ω⁵λ⁴` for a flat observer block, independent of `χ` and `𝒜`.
fn determinant(seed: u64) -> Result<Check, GeomError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xde7);
    let mut env = NumericEnv::new();
    let mut a = Vec::new();
    for i in 0..4 {
        let f = FieldSym::new(&format!("a{i}"), 5);
        env.insert(&f.name, SampleField::random_for(&f, 0.0, &mut rng));
        a.push(SymExpr::rational(1, 10) * SymExpr::field(f));
    }
    let w = FieldSym::new("omega", 5).positive();
    env.insert("omega", SampleField::random_for(&w, 3.0, &mut rng));
    let lambda = 1.5f64;
    let fm = FiveMetric::flat(std::array::from_fn(|i| a[i].clone())).with_factors(
        SymExpr::rational(3, 2),
        SymExpr::rational(1, 2),
        SymExpr::field(w),
    );
    let g = assemble_metric(&fm)?;
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let p: Vec<f64> = (0..5).map(|_| rng.gen_range(-0.5..0.5)).collect();
        let m = g.eval(&env, &p)?;
        let omega = env.get("omega").expect("inserted").value(&[0; 8], &p);
        let expected = omega.powi(5) * lambda.powi(4);
        worst = worst.max((m.determinant() - expected).abs() / expected.abs());
    }
    Ok(Check::below("fivegeom.determinant_with_factors", tags::FIVE_METRIC_FACTORS, worst, 1e-9, json!({ "points": 10 })))
}

/// Constant `𝒜` on flat space: `u^μ = η^{μν}𝒜_ν`, `u⁴ = a + √(1 + a)` with `a = 𝒜·𝒜`.
fn constant_potential() -> Result<Check, GeomError> {
    let lower = [0.5, 0.25, -1.0 / 3.0, 0.2];
    let a = [SymExpr::rational(1, 2), SymExpr::rational(1, 4), SymExpr::rational(-1, 3), SymExpr::rational(1, 5)];
    let field = preferred_geodesic_field(&FiveMetric::flat(a), NumericEnv::new())?;
    let start = GeodesicState { x: [0.1, -0.2, 0.3, 0.4, 0.0], s: 0.0 };
    let (ds, steps) = (0.01, 100);
    let path = integrate_geodesic(&field, start, ds, steps)?;
    let eta = [1.0, -1.0, -1.0, -1.0];
    let up: [f64; 4] = std::array::from_fn(|m| eta[m] * lower[m]);
    let a2: f64 = (0..4).map(|m| up[m] * lower[m]).sum();
    let u = [up[0], up[1], up[2], up[3], a2 + (1.0 + a2).sqrt()];
    let worst = path
        .iter()
        .flat_map(|st| (0..5).map(move |i| (st.x[i] - (start.x[i] + st.s * u[i])).abs()))
        .fold(0.0, f64::max);
    Ok(Check::below("geodesic.constant_potential_closed_form", tags::GEODESICS, worst, CLOSED_FORM_TOL, json!({ "ds": ds, "steps": steps, "velocity": u })))
}

/// `𝒜 = (1 + x₀²/4, x₀x₁/2, 0, x₁/10)`, for which `x⁰(s) = 2 tan(s/2)` from the origin.
pub fn order_field_potential() -> [SymExpr; 4] {
    [
        SymExpr::one() + SymExpr::rational(1, 4) * x(0) * x(0),
        SymExpr::rational(1, 2) * x(0) * x(1),
        SymExpr::zero(),
        SymExpr::rational(1, 10) * x(1),
    ]
}

fn rk4_order() -> Result<Check, GeomError> {
    let f = preferred_geodesic_field(&FiveMetric::flat(order_field_potential()), NumericEnv::new())?;
    let start = GeodesicState { x: [0.0, 1.0, 0.0, 0.0, 0.0], s: 0.0 };
    let order = convergence_order(&f, start, 1.0, 0.1)?;
    let path = integrate_geodesic(&f, start, 1e-3, 1000)?;
    let tan_err = (path[1000].x[0] - 2.0 * 0.5f64.tan()).abs();
    Ok(Check::new(
        "geodesic.rk4_order",
        tags::GEODESICS,
        Status::from_bool(order >= MIN_ORDER && tan_err < CLOSED_FORM_TOL),
        format!("{order:.6}"),
        json!({ "order": order, "minimum": MIN_ORDER, "s_end": 1.0, "ds": [0.1, 0.05, 0.025], "tan_closed_form_error": tan_err }),
    ))
}

/// A constant factor `c` in `ω` speeds the flow by `c` without moving its image.
fn path_image() -> Result<Check, GeomError> {
    let a = [SymExpr::one() + SymExpr::rational(1, 4) * x(1), SymExpr::rational(1, 5) * x(0), SymExpr::zero(), SymExpr::rational(1, 10) * x(2)];
    let omega0 = SymExpr::one() + SymExpr::rational(1, 10) * x(0) * x(0);
    let base = FiveMetric::flat(a.clone()).with_factors(SymExpr::one(), SymExpr::one(), omega0.clone());
    let scaled = FiveMetric::flat(a).with_factors(SymExpr::one(), SymExpr::one(), SymExpr::rational(5, 2) * omega0);
    let fb = preferred_geodesic_field(&base, NumericEnv::new())?;
    let fs = preferred_geodesic_field(&scaled, NumericEnv::new())?;
    let start = GeodesicState { x: [0.1, -0.2, 0.3, 0.0, 0.0], s: 0.0 };
    let pb = integrate_geodesic(&fb, start, 1e-3, 1000)?;
    let ps = integrate_geodesic(&fs, start, 1e-3, 400)?;
    let h = PathImage::new(&fb, &pb, 4)?.hausdorff(&PathImage::new(&fs, &ps, 4)?);
    Ok(Check::below("geodesic.path_image_rescaling", tags::GEODESICS, h, HAUSDORFF_TOL, json!({ "scale": 2.5, "projection_dims": 4 })))
}

/// `𝒜 = 0` leaves the space-time coordinates fixed.
fn field_free() -> Result<Check, GeomError> {
    let f = preferred_geodesic_field(&FiveMetric::flat(std::array::from_fn(|_| SymExpr::zero())), NumericEnv::new())?;
    let start = GeodesicState { x: [0.3, 0.1, -0.4, 0.2, 0.0], s: 0.0 };
    let path = integrate_geodesic(&f, start, 0.05, 40)?;
    let drift = path.iter().flat_map(|st| (0..4).map(move |i| (st.x[i] - start.x[i]).abs())).fold(0.0, f64::max);
    Ok(Check::below("geodesic.field_free", tags::FIELD_FREE, drift, 1e-15, json!({ "fifth_coordinate_end": path.last().map(|s| s.x[4]) })))
}

fn klein_gordon() -> Vec<Check> {
    let on: Result<Check, GeomError> = (|| {
        let mut worst = 0.0f64;
        for (k, m) in ON_SHELL {
            worst = worst.max(klein_gordon_check(k, m)?.residual);
        }
        Ok(Check::below("klein_gordon.on_shell", tags::KLEIN_GORDON, worst, KG_ON_SHELL_TOL, json!({ "momenta": ON_SHELL.len() })))
    })();
    let off: Result<Check, GeomError> = (|| {
        let mut worst = 0.0f64;
        let mut rows = Vec::new();
        for (k, m) in OFF_SHELL {
            let r = klein_gordon_check(k, m)?;
            worst = worst.max((r.residual - r.dispersion_defect).abs());
            rows.push(json!({ "k": k, "m": m, "residual": r.residual, "dispersion_defect": r.dispersion_defect }));
        }
        Ok(Check::below("klein_gordon.off_shell", tags::KLEIN_GORDON, worst, KG_OFF_SHELL_TOL, json!(rows)))
    })();
    vec![checked("klein_gordon.on_shell", tags::KLEIN_GORDON, on), checked("klein_gordon.off_shell", tags::KLEIN_GORDON, off)]
}

fn count(seed: u64) -> Result<Check, GeomError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let cs = CountScenario {
            psi_sq: rng.gen_range(0.01..5.0),
            deltas: std::array::from_fn(|_| rng.gen_range(0.1..3.0)),
            lambda_scale: rng.gen_range(0.1..10.0),
        };
        worst = worst.max(conformal_count_invariance(&cs)?.relative_change());
    }
    Ok(Check::below("count.invariance", tags::COUNT, worst, COUNT_TOL, json!({ "samples": 100, "lambda_range": [0.1, 10.0] })))
}
