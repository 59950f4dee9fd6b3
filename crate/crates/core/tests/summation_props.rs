use kummer_sum::series::{catalog_lookup, geometric};
use kummer_sum::summation::{partial_sum, partial_sum_with_budget, sum_range, Neumaier};
use kummer_sum::{Error, SumState};

#[test]
fn partial_sums_increase_strictly() {
    let series = catalog_lookup("logA").unwrap();
    let mut previous = 0.0;
    for n in [1, 2, 10, 1000, 5000, 10_000, 20_000] {
        let s = partial_sum(&series, n).unwrap().value();
        assert!(s > previous, "S_{n} = {s} <= {previous}");
        previous = s;
    }
}

#[test]
fn resumed_sum_is_bitwise_equal_to_one_shot() {
    let series = catalog_lookup("logA").unwrap();
    let one_shot = partial_sum(&series, 1_000_000).unwrap();

    let mut resumed = partial_sum(&series, 123_457).unwrap();
    let exact_target = one_shot.value();
    // threshold at the one-shot value stops exactly there
    let reached = resumed.extend_to_threshold(exact_target, u64::MAX).unwrap();
    assert_eq!(reached, 1_000_000);
    assert_eq!(resumed.value().to_bits(), one_shot.value().to_bits());
    assert_eq!(resumed.compensation().to_bits(), one_shot.compensation().to_bits());
    assert_eq!(resumed.terms_added(), one_shot.terms_added());

    let mut stepped = SumState::new(series.clone());
    for stop in [10, 999, 50_000, 1_000_000] {
        stepped.advance_to(stop).unwrap();
    }
    assert_eq!(stepped.value().to_bits(), one_shot.value().to_bits());
}

#[test]
fn terms_added_tracks_index() {
    let series = catalog_lookup("boasC").unwrap();
    let state = partial_sum(&series, 1000).unwrap();
    assert_eq!(state.terms_added(), 1000 - 2 + 1);
    assert_eq!(state.last_index(), Some(1000));
}

#[test]
fn telescoping_sums_are_exact_to_ten_million() {
    let series = catalog_lookup("telescope").unwrap();
    let mut state = SumState::new(series);
    for n in [1u64, 9, 99, 12_345, 1_000_000, 10_000_000] {
        state.advance_to(n).unwrap();
        let exact = 1.0 - 1.0 / (n as f64 + 1.0);
        assert!((state.value() - exact).abs() < 1e-12, "N={n}: {}", state.value());
    }
}

#[test]
fn threshold_hit_exactly_stops_at_that_index() {
    let series = catalog_lookup("telescope").unwrap();
    let mut state = partial_sum(&series, 9).unwrap();
    assert!((state.value() - 0.9).abs() < 1e-15);
    let m = state.extend_to_threshold(0.95, 1000).unwrap();
    // S_19 = 0.95 in exact arithmetic; rounding may put it on either side
    let s19 = partial_sum(&series, 19).unwrap().value();
    let expected = if s19 >= 0.95 { 19 } else { 20 };
    assert_eq!(m, expected);
    assert!(state.value() >= 0.95);
}

#[test]
fn budget_exhaustion_keeps_progress() {
    let series = catalog_lookup("invsq").unwrap();
    let mut state = partial_sum(&series, 10).unwrap();
    let err = state.extend_to_threshold(2.0, 500).unwrap_err();
    match err {
        Error::BudgetExhausted { reached, value } => {
            assert_eq!(reached, 510);
            assert_eq!(value, state.value());
        }
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(state.index(), 510);
    assert!(matches!(
        partial_sum_with_budget(&series, 1000, 999),
        Err(Error::IterationBudgetExceeded { terms: 1000, budget: 999, .. })
    ));
}

#[test]
fn sum_range_examples() {
    let invsq = catalog_lookup("invsq").unwrap();
    assert_eq!(sum_range(&invsq, 1, 1).unwrap(), 1.0);
    // ψ′(11) − R_{5·10^6}, with R_{5·10^6} ≈ 1/(5·10^6 + 1/2)
    let brute = sum_range(&invsq, 11, 5_000_000).unwrap();
    assert!((brute - 0.0951661).abs() < 2e-7, "{brute}");
    let closed = brute + 1.0 / (5_000_000.0 + 0.5);
    assert!((closed - 0.095_166_335_681_685_9).abs() < 1e-13, "{closed}");

    let geom = geometric(0.5).unwrap();
    assert_eq!(sum_range(&geom, 0, 52).unwrap(), 2.0 - 2f64.powi(-52));
}

/// At 10^8 terms of logA the compensated sum agrees with itself under a
/// different blocking, while naive accumulation has visibly drifted.
#[test]
fn compensation_is_stable_at_one_hundred_million_terms() {
    let series = catalog_lookup("logA").unwrap();
    const N: u64 = 100_000_000;
    const BLOCK: u64 = 1_000_000;
    let compensated = partial_sum(&series, N).unwrap().value();

    let mut naive = 0.0;
    let mut outer = Neumaier::new();
    let mut n = 1;
    while n <= N {
        let mut block = Neumaier::new();
        let end = (n + BLOCK - 1).min(N);
        for k in n..=end {
            let a = series.term(k).unwrap();
            block.add(a);
            naive += a;
        }
        outer.add(block.value());
        n = end + 1;
    }
    let blocked = outer.value();
    let drift = (compensated - naive).abs();
    eprintln!("logA S_1e8: compensated {compensated:.15} naive {naive:.15} |diff| {drift:e}");
    assert!((compensated - blocked).abs() < 1e-9, "{compensated} vs {blocked}");
    assert!(drift > (compensated - blocked).abs());
}
