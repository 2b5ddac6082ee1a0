use vfive::bench::{derive_seed, haar_targets, median, run_bench, BenchMode, BenchSpec};
use vfive::trace_distance;

#[test]
fn single_target_rows_are_reproducible() {
    for mode in [BenchMode::Ra, BenchMode::Ds, BenchMode::ExactRoundtrip] {
        let spec = BenchSpec {
            count: 1,
            eps_list: vec![1e-3],
            seed: 17,
            mode,
        };
        let a = run_bench(&spec);
        assert_eq!(a, run_bench(&spec));
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].method, mode.name());
        assert_eq!(a[0].failures, 0);
    }
}

#[test]
fn rows_are_sorted_by_precision() {
    let rows = run_bench(&BenchSpec {
        count: 4,
        eps_list: vec![1e-3, 1e-4, 5e-3],
        seed: 2,
        mode: BenchMode::Ds,
    });
    let eps: Vec<f64> = rows.iter().map(|r| r.eps).collect();
    assert_eq!(eps, vec![1e-4, 1e-3, 5e-3]);
    assert!(rows.iter().all(|r| r.mean_dist < r.eps && r.worst_vc as f64 >= r.median_vc));
}

#[test]
fn failures_are_counted() {
    // ε = 0.5 is outside both searches' domains: every target fails.
    for mode in [BenchMode::Ra, BenchMode::Ds] {
        let rows = run_bench(&BenchSpec {
            count: 3,
            eps_list: vec![0.5],
            seed: 1,
            mode,
        });
        assert_eq!(rows[0].failures, 3);
        assert!(rows[0].median_vc.is_nan());
    }
}

#[test]
fn haar_sampling_is_isotropic_enough() {
    // E[α²] = 1/4 for a uniform point on the 3-sphere; after the α ≥ 0 fold,
    // E[|α|] = 4/(3π).
    let ts = haar_targets(4000, 99);
    let n = ts.len() as f64;
    let m2 = ts.iter().map(|t| t.alpha() * t.alpha()).sum::<f64>() / n;
    let m1 = ts.iter().map(|t| t.alpha()).sum::<f64>() / n;
    assert!((m2 - 0.25).abs() < 0.02);
    assert!((m1 - 4.0 / (3.0 * std::f64::consts::PI)).abs() < 0.02);
    assert!(ts.iter().all(|t| t.alpha() >= 0.0));
    assert!(trace_distance(&ts[0], &ts[1]) > 0.0);
}

#[test]
fn helpers() {
    assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
    assert_eq!(median(&[4]), 4.0);
    assert!(median(&[]).is_nan());
}
