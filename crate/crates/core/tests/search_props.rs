use kummer_sum::search::{modified_step_forward, search, search_with, step_forward};
use kummer_sum::series::{catalog_lookup, geometric};
use kummer_sum::summation::partial_sum;
use kummer_sum::{SearchConfig, SearchMode, SearchReport, SeriesDef, Termination};

fn start(series: &SeriesDef, n: u64) -> kummer_sum::SumState {
    partial_sum(series, n).unwrap()
}

fn check_record_invariants(series: &SeriesDef, report: &SearchReport) {
    let mut previous_index = report.start_index;
    let mut previous_sum = report.start_sum;
    for (k, record) in report.records.iter().enumerate() {
        assert_eq!(record.step_number, k as u64 + 1);
        assert!(record.reached_index > previous_index);
        assert!(record.partial_sum > previous_sum);
        let rise = record.partial_sum - previous_sum;
        // each crossing overshoots the target by less than the last term added
        let overshoot = series.term(record.reached_index).unwrap();
        assert!(rise >= record.epsilon_in_force - 1e-15, "step {}", record.step_number);
        assert!(rise < record.epsilon_in_force + overshoot + 1e-15, "step {}", record.step_number);
        previous_index = record.reached_index;
        previous_sum = record.partial_sum;
    }
    let (lo, hi) = report.sum_interval();
    assert_eq!(lo, report.final_state.value());
    assert!(((hi - lo) - report.final_epsilon).abs() <= 2.0 * f64::EPSILON * hi);
}

#[test]
fn telescope_accepts_immediately_in_both_modes() {
    let series = catalog_lookup("telescope").unwrap();
    let config = SearchConfig::plain(0.2).with_cap(1_000_000);
    let config = SearchConfig { horizon: 100_000, ..config };
    for mode in [SearchMode::Plain, SearchMode::Modified] {
        let report = search(&series, start(&series, 9), &SearchConfig { mode, ..config }).unwrap();
        assert_eq!(report.termination, Termination::AcceptedHypothesis);
        assert!(report.records.is_empty());
        let (lo, hi) = report.sum_interval();
        assert!((lo - 0.9).abs() < 1e-15 && (hi - 1.1).abs() < 1e-15);
        assert!(lo <= 1.0 && 1.0 <= hi);
        assert_eq!(report.refinements, 0);
    }
}

/// True sums: telescope 1, geom(1/2) 2, invsq π²/6.
fn oracle_cases() -> Vec<(SeriesDef, u64, f64, f64)> {
    vec![
        (catalog_lookup("telescope").unwrap(), 1, 0.01, 1.0),
        (catalog_lookup("telescope").unwrap(), 5, 0.003, 1.0),
        (geometric(0.5).unwrap(), 0, 1e-4, 2.0),
        (geometric(0.5).unwrap(), 3, 0.3, 2.0),
        (catalog_lookup("invsq").unwrap(), 1, 0.05, std::f64::consts::PI.powi(2) / 6.0),
        (catalog_lookup("invsq").unwrap(), 10, 0.001, std::f64::consts::PI.powi(2) / 6.0),
    ]
}

#[test]
fn accepted_intervals_contain_true_sums() {
    for (series, n, epsilon, truth) in oracle_cases() {
        for mode in [SearchMode::Plain, SearchMode::Modified] {
            let config = SearchConfig {
                mode,
                horizon: 1_000_000,
                total_budget: 100_000_000,
                ..SearchConfig::plain(epsilon)
            };
            let report = search(&series, start(&series, n), &config).unwrap();
            assert_eq!(report.termination, Termination::AcceptedHypothesis, "{} {mode:?}", series.name());
            let (lo, hi) = report.sum_interval();
            assert!(lo <= truth && truth <= hi, "{} {mode:?}: [{lo}, {hi}] vs {truth}", series.name());
            check_record_invariants(&series, &report);
        }
    }
}

#[test]
fn modes_agree_until_first_long_rejection() {
    let series = catalog_lookup("logA").unwrap();
    let base = SearchConfig::plain(0.01).with_cap(6_000_000);
    let plain = step_forward(&series, start(&series, 100_000), &base).unwrap();
    let modified = modified_step_forward(&series, start(&series, 100_000), &base).unwrap();
    check_record_invariants(&series, &plain);
    check_record_invariants(&series, &modified);
    let split = plain
        .records
        .iter()
        .position(|r| r.iterations_in_step >= base.interrupt_after)
        .expect("plain run has a long rejection");
    assert_eq!(plain.records[..split], modified.records[..split]);
    assert_eq!(modified.refinements, 1);
    // after refinement the same N is re-tested with ε/K
    assert_eq!(modified.records[split].epsilon_in_force, 0.01 / 10.0);
    assert!(modified.records[split..].iter().all(|r| r.epsilon_in_force == 0.001));
}

#[test]
fn early_steps_match_published_step_forward_rows() {
    let series = catalog_lookup("logA").unwrap();
    let report = step_forward(&series, start(&series, 100_000), &SearchConfig::plain(0.01).with_cap(500_000)).unwrap();
    let rows: Vec<(u64, u64)> = report.records.iter().map(|r| (r.iterations_in_step, r.reached_index)).collect();
    assert_eq!(rows[..3], [(1, 133_854), (1, 186_526), (1, 274_211)]);
    assert!((report.records[0].partial_sum - 4.841_695).abs() < 1e-6);
}

#[test]
fn searches_are_deterministic() {
    let series = catalog_lookup("logB").unwrap();
    let config = SearchConfig::modified(1e-4).with_cap(5_000_000);
    let a = search(&series, start(&series, 1_000_000), &config).unwrap();
    let b = search(&series, start(&series, 1_000_000), &config).unwrap();
    assert_eq!(a.records, b.records);
    assert_eq!(a.termination, b.termination);
    assert_eq!(a.final_state.value().to_bits(), b.final_state.value().to_bits());
    assert_eq!(a.final_epsilon.to_bits(), b.final_epsilon.to_bits());
}

#[test]
fn cap_and_budget_terminations() {
    let series = catalog_lookup("logA").unwrap();
    // the cap falls inside a long ζ scan: the sum is carried to the cap
    let report = step_forward(&series, start(&series, 100_000), &SearchConfig::plain(0.01).with_cap(2_000_000)).unwrap();
    assert_eq!(report.termination, Termination::CapReached);
    assert_eq!(report.final_state.index(), 2_000_000);

    // a threshold crossing that needs more terms than the budget allows
    let config = SearchConfig {
        total_budget: 150_000,
        ..SearchConfig::plain(0.02)
    };
    let report = step_forward(&series, start(&series, 100_000), &config).unwrap();
    assert_eq!(report.termination, Termination::BudgetExhausted);
    assert_eq!(report.final_state.index(), 150_000);
    assert!(report.records.is_empty());
}

#[test]
fn step_callback_sees_records_in_order() {
    let series = catalog_lookup("logA").unwrap();
    let mut seen = Vec::new();
    let report = search_with(
        &series,
        start(&series, 100_000),
        &SearchConfig::plain(0.01).with_cap(1_000_000),
        |r| seen.push(*r),
    )
    .unwrap();
    assert_eq!(seen, report.records);
}

#[test]
fn invalid_configs_are_rejected() {
    let series = catalog_lookup("telescope").unwrap();
    let bad = [
        SearchConfig::plain(0.0),
        SearchConfig { interrupt_after: 1, ..SearchConfig::modified(0.1) },
        SearchConfig { refine_divisor: 1.0, ..SearchConfig::modified(0.1) },
        SearchConfig { refine_depth: 0, ..SearchConfig::modified(0.1) },
        SearchConfig::plain(0.1).with_cap(0),
    ];
    for config in bad {
        assert!(search(&series, start(&series, 9), &config).is_err(), "{config:?}");
    }
}
