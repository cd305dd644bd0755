use penta_core::fivegeom::geodesic::{convergence_order, PathImage};
use penta_core::fivegeom::{
    assemble_metric, conformal_count_invariance, integrate_geodesic, klein_gordon_check, preferred_geodesic_field, CountScenario,
    FiveMetric, GeodesicState,
};
use penta_core::symtensor::{FieldSym, NumericEnv, SampleField, SymExpr};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn x(i: usize) -> SymExpr {
    SymExpr::coord(i)
}

fn polynomial_potential() -> [SymExpr; 4] {
    [
        SymExpr::one() + SymExpr::rational(1, 4) * x(0) * x(0),
        SymExpr::rational(1, 2) * x(0) * x(1),
        SymExpr::zero(),
        SymExpr::rational(1, 10) * x(1),
    ]
}

#[test]
fn rk4_order_on_polynomial_potential() {
    let f = preferred_geodesic_field(&FiveMetric::flat(polynomial_potential()), NumericEnv::new()).unwrap();
    let start = GeodesicState { x: [0.0, 1.0, 0.0, 0.0, 0.0], s: 0.0 };
    let order = convergence_order(&f, start, 1.0, 0.1).unwrap();
    println!("order {order}");
    assert!(order >= 3.9, "{order}");
    // x⁰ = 2 tan(s/2)
    let path = integrate_geodesic(&f, start, 1e-3, 1000).unwrap();
    assert!((path[1000].x[0] - 2.0 * 0.5f64.tan()).abs() < 1e-10);
}

#[test]
fn path_image_invariant_under_constant_omega_rescaling() {
    let a = [SymExpr::one() + SymExpr::rational(1, 4) * x(1), SymExpr::rational(1, 5) * x(0), SymExpr::zero(), SymExpr::rational(1, 10) * x(2)];
    let omega0 = SymExpr::one() + SymExpr::rational(1, 10) * x(0) * x(0);
    let c = SymExpr::rational(5, 2);
    let base = FiveMetric::flat(a.clone()).with_factors(SymExpr::one(), SymExpr::one(), omega0.clone());
    let scaled = FiveMetric::flat(a).with_factors(SymExpr::one(), SymExpr::one(), c * omega0);
    let fb = preferred_geodesic_field(&base, NumericEnv::new()).unwrap();
    let fs = preferred_geodesic_field(&scaled, NumericEnv::new()).unwrap();
    let start = GeodesicState { x: [0.1, -0.2, 0.3, 0.0, 0.0], s: 0.0 };
    let pb = integrate_geodesic(&fb, start, 1e-3, 1000).unwrap();
    // same arc at 2.5× speed: 400 steps of the same size
    let ps = integrate_geodesic(&fs, start, 1e-3, 400).unwrap();
    let (ib, is) = (PathImage::new(&fb, &pb, 4).unwrap(), PathImage::new(&fs, &ps, 4).unwrap());
    let h = ib.hausdorff(&is);
    println!("hausdorff {h:e}");
    assert!(h < 1e-8, "{h}");
    // the velocity itself scales by the constant
    let (ub, _) = fb.velocity(&start.x).unwrap();
    let (us, _) = fs.velocity(&start.x).unwrap();
    for i in 0..4 {
        assert!((us[i] - 2.5 * ub[i]).abs() < 1e-14);
    }
}

#[test]
fn assembled_metric_invertible_for_small_potential() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut env = NumericEnv::new();
    let mut a: Vec<SymExpr> = Vec::new();
    for i in 0..4 {
        let f = FieldSym::new(&format!("a{i}"), 5);
        env.insert(&f.name, SampleField::random_for(&f, 0.0, &mut rng));
        a.push(SymExpr::rational(1, 10) * SymExpr::field(f));
    }
    let w = FieldSym::new("omega", 5).positive();
    env.insert("omega", SampleField::random_for(&w, 3.0, &mut rng));
    let fm = FiveMetric::flat([a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone()]).with_factors(
        SymExpr::rational(3, 2),
        SymExpr::rational(1, 2),
        SymExpr::field(w),
    );
    let g = assemble_metric(&fm).unwrap();
    assert!(g.is_symmetric());
    for _ in 0..10 {
        let p: Vec<f64> = (0..5).map(|_| rng.gen_range(-0.5..0.5)).collect();
        let m = g.eval(&env, &p).unwrap();
        let omega = env.get("omega").unwrap().value(&[0; 8], &p);
        // det = −ω⁵λ⁴ det η = ω⁵λ⁴
        let expected = omega.powi(5) * 1.5f64.powi(4);
        assert!((m.determinant() - expected).abs() < 1e-9 * expected);
    }
}

#[test]
fn count_invariance_over_random_scales() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let cs = CountScenario {
            psi_sq: rng.gen_range(0.01..5.0),
            deltas: std::array::from_fn(|_| rng.gen_range(0.1..3.0)),
            lambda_scale: rng.gen_range(0.1..10.0),
        };
        let r = conformal_count_invariance(&cs).unwrap();
        assert!(r.relative_change() < 1e-12);
        assert!((r.psi_prime_sq * cs.lambda_scale - cs.psi_sq).abs() < 1e-12 * cs.psi_sq);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn klein_gordon_residual_is_the_dispersion_defect(k in proptest::array::uniform4(-2.0f64..2.0), m in 0.0f64..2.0) {
        let r = klein_gordon_check(k, m).unwrap();
        prop_assert!((r.residual - r.dispersion_defect * r.psi_max).abs() < 1e-10);
    }
}
