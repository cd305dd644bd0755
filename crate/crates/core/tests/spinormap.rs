use penta_core::clifford::{standard_gamma_set, ConventionSet, GammaSet};
use penta_core::spinormap::{
    dalembert_factorization_probe, map_jacobian, pullback_metric, reality_scan, spinor_to_x, Reading, SolutionId,
    SpinorPoint,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gs() -> GammaSet {
    standard_gamma_set(ConventionSet::standard()).unwrap()
}

fn eta5() -> [[f64; 5]; 5] {
    std::array::from_fn(|i| std::array::from_fn(|j| if i != j { 0.0 } else if i == 0 { 1.0 } else { -1.0 }))
}

fn spinor() -> impl Strategy<Value = SpinorPoint> {
    (prop::array::uniform4(-2.0..2.0f64), prop::array::uniform4(-2.0..2.0f64))
        .prop_map(|(xi_re, xi_im)| SpinorPoint { xi_re, xi_im })
}

proptest! {
    #[test]
    fn global_phase_leaves_image_unchanged(p in spinor(), phi in -10.0..10.0f64) {
        let g = gs();
        let (a, b) = (spinor_to_x(&g, &p), spinor_to_x(&g, &p.rotate_phase(phi)));
        for m in 0..5 {
            prop_assert!((a.x[m] - b.x[m]).norm() < 1e-14, "m={} {:?} {:?}", m, a.x[m], b.x[m]);
        }
    }

    #[test]
    fn image_is_quadratic(p in spinor(), c in -3.0..3.0f64) {
        let g = gs();
        let (a, b) = (spinor_to_x(&g, &p), spinor_to_x(&g, &p.scale(c)));
        for m in 0..5 {
            prop_assert!((b.x[m] - a.x[m] * (c * c)).norm() < 1e-12);
        }
    }

    #[test]
    fn jacobian_is_linear(p in spinor()) {
        let g = gs();
        let (a, b) = (map_jacobian(&g, &p), map_jacobian(&g, &p.scale(2.0)));
        for m in 0..5 {
            for k in 0..8 {
                prop_assert!((b.j[m][k] - 2.0 * a.j[m][k]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn jacobian_matches_central_differences_at_100_points() {
    let g = gs();
    let h = 1e-6;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0021);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let p = SpinorPoint::random(&mut rng);
        let jac = map_jacobian(&g, &p);
        let v = p.as_real8();
        for k in 0..8 {
            let (mut up, mut dn) = (v, v);
            up[k] += h;
            dn[k] -= h;
            let (xu, xd) =
                (spinor_to_x(&g, &SpinorPoint::from_real8(&up)), spinor_to_x(&g, &SpinorPoint::from_real8(&dn)));
            for m in 0..5 {
                let fd = (xu.x_real[m] - xd.x_real[m]) / (2.0 * h);
                worst = worst.max((fd - jac.j[m][k]).abs() / jac.j[m][k].abs().max(1.0));
            }
        }
    }
    assert!(worst < 1e-8, "worst relative error {worst:e}");
}

#[test]
fn pullback_rank_bounded_and_phase_in_kernel() {
    let g = gs();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0022);
    for _ in 0..100 {
        let p = SpinorPoint::random(&mut rng);
        let pb = pullback_metric(&g, &p, &eta5());
        assert!(pb.rank <= 5, "rank {}", pb.rank);
        assert!(pb.is_symmetric(1e-14));
        assert!(pb.apply(&p.phase_direction()).iter().all(|v| v.abs() < 1e-10));
    }
    let zero = pullback_metric(&g, &SpinorPoint::ZERO, &eta5());
    assert_eq!(zero.rank, 0);
    assert!(zero.matrix.iter().flatten().all(|&v| v == 0.0));
}

#[test]
fn reality_follows_hermiticity_in_every_convention() {
    let valid: Vec<GammaSet> = ConventionSet::full_space().into_iter().filter_map(|c| standard_gamma_set(c).ok()).collect();
    assert!(!valid.is_empty());
    for g in valid {
        let conv = g.convention;
        for reading in [Reading::Plain, Reading::Adjoint] {
            let scan = reality_scan(&g, reading, 1000, 7);
            assert!(scan.consistent(), "{} {reading:?}", conv.id());
        }
    }
}

#[test]
fn probe_reports_are_deterministic() {
    let g = gs();
    for id in SolutionId::ALL {
        assert_eq!(dalembert_factorization_probe(&g, id), dalembert_factorization_probe(&g, id));
    }
}
