use penta_core::symtensor::curvature::curvature;
use penta_core::symtensor::fd::compare_with_fd;
use penta_core::symtensor::metric::inverse_defects;
use penta_core::symtensor::suite::suite_metrics;
use penta_core::symtensor::RatFun;

#[test]
fn every_suite_metric_passes_structural_and_numeric_checks() {
    for m in suite_metrics(11).unwrap() {
        let t = std::time::Instant::now();
        let inv = m.metric.inverse().unwrap();
        assert!(inverse_defects(&m.metric, &inv).iter().all(RatFun::is_zero), "{}: inverse", m.name);
        let k = curvature(&m.metric).unwrap();
        assert!(k.ricci_is_symmetric(), "{}: ricci symmetry", m.name);
        assert!(k.first_bianchi_holds(), "{}: bianchi", m.name);
        assert!(k.connection().is_lower_symmetric(), "{}", m.name);
        let cmp = compare_with_fd(&m.metric, &k, &m.env, &m.sample_points(5, 3)).unwrap();
        println!("{} {:?} {:?}", m.name, t.elapsed(), cmp);
        assert!(cmp.passes(), "{}: {cmp:?}", m.name);
    }
}
