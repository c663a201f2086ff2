use super::*;

#[test]
fn generation_is_deterministic() {
    let mut a = Rng::new(99);
    let mut b = Rng::new(99);
    let kv_a = generate_knots(&mut a, 3, 10);
    let kv_b = generate_knots(&mut b, 3, 10);
    assert_eq!(kv_a, kv_b);
    let curves_a = generate_curves(&mut a, &kv_a, 2, 3);
    let curves_b = generate_curves(&mut b, &kv_b, 2, 3);
    assert_eq!(curves_a, curves_b);
}

#[test]
fn generated_knots_have_the_experiment_shape() {
    let mut rng = Rng::new(5);
    for m in [1usize, 3, 11] {
        let kv = generate_knots(&mut rng, m, 20);
        assert!(kv.validate().is_ok());
        assert_eq!(kv.is_clamped(), (true, true));
        assert_eq!(kv.knot(0), 0.0);
        for j in 0..20isize {
            let len = kv.knot(j + 1) - kv.knot(j);
            assert!((1.0 / 50.0..1.0).contains(&len), "span {j} length {len}");
        }
    }
}

#[test]
fn twenty_spans_give_1001_sample_parameters() {
    let mut rng = Rng::new(5);
    let kv = generate_knots(&mut rng, 3, 20);
    let params = sample_params(&kv, 50);
    assert_eq!(params.len(), 1001);
    assert_eq!(*params.last().unwrap(), kv.knot(20));
    let (lo, hi) = kv.domain();
    assert!(params.iter().all(|&u| (lo..=hi).contains(&u)));
}

#[test]
fn common_digits_behaves() {
    assert_eq!(common_digits(1.25, 1.25, 16.0), 16.0);
    let d = common_digits(1.0, 1.0 + 1e-8, 16.0);
    assert!((d - 8.0).abs() < 0.1, "{d}");
    assert_eq!(common_digits(1.0, 2.0, 16.0), common_digits(1.0, 2.0, 16.0).clamp(0.0, 16.0));
    // Extreme disagreement clamps at zero.
    assert_eq!(common_digits(1.0, -1.0e9, 16.0), 0.0);
}

#[test]
fn log_log_slope_recovers_exact_power_laws() {
    let xs = [3.0, 5.0, 7.0, 9.0, 11.0];
    let quad: Vec<f64> = xs.iter().map(|x| 4.0 * x * x).collect();
    assert!((log_log_slope(&xs, &quad) - 2.0).abs() < 1e-12);
    let lin: Vec<f64> = xs.iter().map(|x| 0.5 * x).collect();
    assert!((log_log_slope(&xs, &lin) - 1.0).abs() < 1e-12);
}

#[test]
fn ops_report_matches_its_budget_on_a_small_cell() {
    let cfg = ExperimentConfig {
        n: 10,
        m: 5,
        curves: 2,
        samples_per_span: 10,
        ..ExperimentConfig::default()
    };
    let report = count_ops_report(&cfg).unwrap();
    assert_eq!(report.points, 101);
    report.verify().unwrap();
    assert_eq!(report.build.pows, 10);
    // Division budget shrinks from quadratic to linear in the degree.
    assert!(report.eval.divs < report.eval_splines_divs);
    assert!(report.eval_splines_divs < report.de_boor_cox_divs);
}

#[test]
fn ops_reports_are_deterministic_for_a_seed() {
    let cfg = ExperimentConfig {
        n: 6,
        m: 4,
        curves: 3,
        samples_per_span: 5,
        seed: 1234,
        ..ExperimentConfig::default()
    };
    let a = count_ops_report(&cfg).unwrap();
    let b = count_ops_report(&cfg).unwrap();
    assert_eq!(a.measured, b.measured);
    assert_eq!(a.de_boor_cox_divs, b.de_boor_cox_divs);
    assert_eq!(a.eval_splines_divs, b.eval_splines_divs);
}

#[test]
fn basis_runner_reports_both_methods() {
    let cfg = ExperimentConfig {
        mode: BenchMode::Basis,
        n: 4,
        m: 2,
        samples_per_span: 20,
        count_ops: true,
        ..ExperimentConfig::default()
    };
    let report = run_basis_benchmark(&cfg).unwrap();
    assert_eq!(report.points, 81);
    assert_eq!(report.methods.len(), 2);
    assert_eq!(report.methods[0].method, METHOD_EVAL_SPLINES);
    assert_eq!(report.methods[1].method, METHOD_NEW);
    assert!(report.methods.iter().all(|m| m.seconds > 0.0));
    assert!(report.methods.iter().all(|m| m.ops.is_some()));
    assert!(report.methods[1].mean_common_digits.unwrap() > 12.0);
}

#[test]
fn surface_runner_works_in_single_precision() {
    let cfg = ExperimentConfig {
        mode: BenchMode::Surface,
        n: 3,
        m: 2,
        dim: 1,
        samples_per_span: 20,
        f32_mode: true,
        count_ops: true,
        seed: 77,
        ..ExperimentConfig::default()
    };
    let report = run_surface_benchmark(&cfg).unwrap();
    assert_eq!(report.points, 61 * 61);
    assert!(report.methods.iter().all(|m| m.ops.is_some()));
    let digits = report.methods[1].mean_common_digits.unwrap();
    assert!(digits >= 6.0, "f32 surface digits {digits}");
}

#[test]
fn config_validation_rejects_zeroes() {
    let cfg = ExperimentConfig {
        n: 0,
        ..ExperimentConfig::default()
    };
    assert!(matches!(cfg.validate(), Err(BenchError::Config(_))));
}

#[test]
fn digit_stat_tracks_mean_and_min() {
    let mut stat = DigitStat::default();
    stat.record(10.0);
    stat.record(14.0);
    assert_eq!(stat.mean(), 12.0);
    assert_eq!(stat.min(), 10.0);
}
