//! Fixed set of test metrics with numeric stand-ins for their fields.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::atom::FieldSym;
use super::expr::SymExpr;
use super::metric::MetricTensor;
use super::sample::{NumericEnv, SampleField};
use super::SymError;

pub struct SuiteMetric {
    pub name: &'static str,
    pub metric: MetricTensor,
    pub env: NumericEnv,
    /// Sample points are drawn from `[lo, hi]^n`.
    pub lo: f64,
    pub hi: f64,
}

impl SuiteMetric {
    pub fn sample_points(&self, count: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| (0..self.metric.dim()).map(|_| rng.gen_range(self.lo..self.hi)).collect()).collect()
    }
}

fn field(name: &str, coords: &[usize], positive: bool) -> (SymExpr, FieldSym) {
    let mut f = FieldSym::new(name, 0).depending_on(coords);
    f.positive = positive;
    (SymExpr::field(f.clone()), f)
}

/// Flat, polar, unit sphere, two conformally flat metrics and a
/// three-dimensional potential-coupled block metric.
pub fn suite_metrics(seed: u64) -> Result<Vec<SuiteMetric>, SymError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = SymExpr::coord;
    let mut out = Vec::new();

    out.push(SuiteMetric { name: "flat4", metric: MetricTensor::flat(&[1, -1, -1, -1])?, env: NumericEnv::new(), lo: -1.0, hi: 1.0 });

    let r = x(0);
    out.push(SuiteMetric {
        name: "polar2",
        metric: MetricTensor::diagonal(&[SymExpr::one(), &r * &r])?,
        env: NumericEnv::new(),
        lo: 0.3,
        hi: 1.5,
    });

    let s = x(0).sin();
    out.push(SuiteMetric {
        name: "sphere2",
        metric: MetricTensor::diagonal(&[SymExpr::one(), &s * &s])?,
        env: NumericEnv::new(),
        lo: 0.3,
        hi: 1.3,
    });

    let (psi, psi_sym) = field("psi", &[0, 1, 2, 3, 4], true);
    let w = psi.pow(num_rational::Rational64::new(4, 3));
    let eta5 = [1, -1, -1, -1, -1];
    out.push(SuiteMetric {
        name: "conformal5",
        metric: MetricTensor::diagonal(&eta5.iter().map(|&e| SymExpr::int(e) * w.clone()).collect::<Vec<_>>())?,
        env: NumericEnv::new().with("psi", SampleField::random_for(&psi_sym, 3.0, &mut rng)),
        lo: -0.5,
        hi: 0.5,
    });

    let (omega, omega_sym) = field("omega", &[0, 1, 2, 3], true);
    out.push(SuiteMetric {
        name: "conformal4",
        metric: MetricTensor::diagonal(&[1, -1, -1, -1].iter().map(|&e| SymExpr::int(e) * omega.clone()).collect::<Vec<_>>())?,
        env: NumericEnv::new().with("omega", SampleField::random_for(&omega_sym, 3.0, &mut rng)),
        lo: -0.5,
        hi: 0.5,
    });

    let (a0, a0_sym) = field("a0", &[0, 1], false);
    let (a1, a1_sym) = field("a1", &[0, 1], false);
    let one = SymExpr::one();
    out.push(SuiteMetric {
        name: "potential3",
        metric: MetricTensor::new(&[
            vec![&one - &(&a0 * &a0), -(&a0 * &a1), a0.clone()],
            vec![-(&a0 * &a1), -(&one + &(&a1 * &a1)), a1.clone()],
            vec![a0.clone(), a1.clone(), SymExpr::int(-1)],
        ])?,
        env: NumericEnv::new()
            .with("a0", SampleField::random_for(&a0_sym, 0.0, &mut rng))
            .with("a1", SampleField::random_for(&a1_sym, 0.0, &mut rng)),
        lo: -0.5,
        hi: 0.5,
    });
    Ok(out)
}
