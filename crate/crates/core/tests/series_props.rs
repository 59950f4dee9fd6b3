use kummer_sum::series::{catalog_lookup, check_ratio_monotone, geometric, ProbeVerdict, RATIO_SCAN_LIMIT};
use kummer_sum::{Error, RatioMonotone, SeriesDef};

const CATALOG: [&str; 6] = ["logA", "logB", "boasC", "loglogD", "invsq", "telescope"];

fn lookup(name: &str) -> SeriesDef {
    catalog_lookup(name).unwrap()
}

#[test]
fn catalog_terms_positive_and_finite_over_first_hundred_thousand() {
    let mut all: Vec<SeriesDef> = CATALOG.iter().map(|name| lookup(name)).collect();
    all.push(geometric(0.5).unwrap());
    all.push(geometric(0.999).unwrap());
    for series in &all {
        let n0 = series.n0();
        // geom(1/2) underflows long before 10^5; its range is where it is representable
        let hi = if series.name() == "geom(0.5)" { n0 + 1000 } else { n0 + 100_000 };
        for n in n0..=hi {
            let a = series.term(n).unwrap();
            assert!(a > 0.0 && a.is_finite(), "{} at {n}: {a}", series.name());
        }
    }
}

#[test]
fn flagged_catalog_ratios_increase_up_to_scan_limit() {
    for name in CATALOG {
        let series = lookup(name);
        assert_eq!(series.ratio_monotone(), RatioMonotone::VerifiedIncreasing, "{name}");
        let probe = check_ratio_monotone(&series, series.n0(), RATIO_SCAN_LIMIT).unwrap();
        assert_eq!(probe.verdict, ProbeVerdict::Increasing, "{name}");
    }
}

#[test]
fn verification_sets_flag_from_scan() {
    let mut series = SeriesDef::from_expression("1/n^2", 1).unwrap();
    assert_eq!(series.ratio_monotone(), RatioMonotone::Unknown);
    series.verify_ratio_monotone(10_000).unwrap();
    // a short scan is not enough to vouch for the flag
    assert_eq!(series.ratio_monotone(), RatioMonotone::Unknown);
    series.verify_ratio_monotone(RATIO_SCAN_LIMIT).unwrap();
    assert_eq!(series.ratio_monotone(), RatioMonotone::VerifiedIncreasing);

    let mut flat = SeriesDef::from_expression("2^(-n)", 0).unwrap();
    let probe = flat.verify_ratio_monotone(100).unwrap();
    assert_eq!(probe.verdict, ProbeVerdict::ViolationAt(0));
    assert_eq!(flat.ratio_monotone(), RatioMonotone::VerifiedNot);
}

#[test]
fn dyadic_geometric_ratio_is_exact() {
    for r in [0.5, 0.25, 0.125, 0.0625] {
        let series = geometric(r).unwrap();
        for n in 0..200 {
            assert_eq!(series.ratio(n).unwrap(), r, "r={r} n={n}");
        }
    }
}

#[test]
fn unknown_and_malformed_names() {
    assert!(matches!(catalog_lookup("nosuch"), Err(Error::UnknownSeries(_))));
    assert!(matches!(catalog_lookup("geom(1.5)"), Err(Error::InvalidArgument(_))));
    assert!(matches!(catalog_lookup("geom(x)"), Err(Error::InvalidArgument(_))));
    assert_eq!(catalog_lookup("geom(0.5)").unwrap().n0(), 0);
}

#[test]
fn index_before_start_and_non_positive_terms() {
    assert!(matches!(lookup("boasC").term(1), Err(Error::IndexBeforeStart { n: 1, n0: 2 })));
    let series = SeriesDef::from_expression("1/n - 1/5", 1).unwrap();
    assert!(series.term(4).is_ok());
    assert!(matches!(series.term(5), Err(Error::NonPositiveTerm { n: 5, .. })));
    let series = SeriesDef::from_expression("log(n)", 1).unwrap();
    assert!(matches!(series.term(1), Err(Error::NonPositiveTerm { n: 1, .. })));
}

/// Adaptive Simpson on `[a, b]` with tolerance `tol`.
fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    recurse(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 50)
}

#[test]
fn tail_integrals_agree_with_quadrature() {
    for name in ["logA", "boasC", "loglogD", "invsq"] {
        let series = lookup(name);
        for n in [10.0_f64, 100.0, 1000.0] {
            let closed = series.tail_integral(n).unwrap();
            let cutoff = 1e6 * n;
            // substitute x = e^t so the integrand decays gently in t
            let g = |t: f64| {
                let x = t.exp();
                series.continuous(x) * x
            };
            let body = adaptive_simpson(&g, n.ln(), cutoff.ln(), 1e-13 * closed);
            let quadrature = body + series.tail_integral(cutoff).unwrap();
            let rel = (closed - quadrature).abs() / closed;
            assert!(rel < 1e-6, "{name} at {n}: closed {closed} quadrature {quadrature} rel {rel:e}");
        }
    }
}

#[test]
fn tail_integrals_positive_and_decreasing() {
    for name in ["logA", "boasC", "loglogD", "invsq"] {
        let series = lookup(name);
        let mut previous = f64::INFINITY;
        let mut x = series.n0().max(3) as f64;
        while x < 1e12 {
            let value = series.tail_integral(x).unwrap();
            assert!(value > 0.0 && value < previous, "{name} at {x}");
            previous = value;
            x *= 1.7;
        }
    }
}

#[test]
fn derivatives_match_central_differences() {
    for name in ["logA", "boasC", "loglogD", "invsq"] {
        let series = lookup(name);
        for x in [5.5_f64, 50.5, 1000.5] {
            let h = 1e-4 * x;
            let numeric = (series.continuous(x + h) - series.continuous(x - h)) / (2.0 * h);
            let analytic = series.derivative(x).unwrap();
            assert!(analytic < 0.0, "{name} at {x}");
            assert!(((numeric - analytic) / analytic).abs() < 1e-6, "{name} at {x}: {numeric} vs {analytic}");
        }
    }
}

#[test]
fn continuous_extension_decreasing_on_used_range_for_log_a() {
    // the extension log(x+1) x^{-3/2} must decrease wherever brackets use it
    let series = lookup("logA");
    let mut x = 1.0;
    while x < 1e9 {
        assert!(series.derivative(x).unwrap() < 0.0, "f' >= 0 at {x}");
        x *= 1.1;
    }
}
