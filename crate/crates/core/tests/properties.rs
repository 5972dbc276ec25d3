mod common;

use collin_core::collinearity::{adjustment_factors, avif_all, diagnose, vif_all, DEFAULT_THRESHOLD};
use collin_core::inference::{decide, decision_table, SignificanceOption, Thresholds};
use collin_core::io::{FitSummary, Provenance, ReportDocument};
use collin_core::selection::{select, Direction};
use collin_core::simulation::rng::SplitMix64;
use collin_core::{fit_ols, fit_subset, Dataset, Rule};
use common::*;
use proptest::prelude::*;

fn dataset(seed: u64, n: usize, p: usize) -> Dataset {
    random_dataset(&mut SplitMix64::new(seed), n, p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adding_a_column_never_raises_scr(seed in any::<u64>(), n in 20usize..80, p in 2usize..10) {
        let d = dataset(seed, n, p);
        let all: Vec<usize> = (0..p).collect();
        let small = fit_subset(&d, &all[..p - 1]).unwrap();
        let big = fit_subset(&d, &all).unwrap();
        prop_assert!(big.scr <= small.scr * (1.0 + 1e-12));
        prop_assert!(big.r2 + 1e-12 >= small.r2);
    }

    #[test]
    fn r2_is_a_proportion(seed in any::<u64>(), n in 15usize..60, p in 1usize..8) {
        let d = dataset(seed, n, p);
        let fit = fit_ols(&d).unwrap();
        prop_assert!((0.0..=1.0).contains(&fit.r2));
        let y = d.response();
        let m = y.iter().sum::<f64>() / n as f64;
        let tss: f64 = y.iter().map(|v| (v - m).powi(2)).sum();
        prop_assert!((fit.r2 - (1.0 - fit.scr / tss)).abs() < 1e-10);
        let adj = 1.0 - (n as f64 - 1.0) / (n - fit.k) as f64 * (1.0 - fit.r2);
        prop_assert!((fit.adj_r2 - adj).abs() < 1e-12);
    }

    #[test]
    fn column_order_does_not_matter(seed in any::<u64>(), n in 20usize..60, p in 2usize..8, shift in 1usize..7) {
        let d = dataset(seed, n, p);
        let perm: Vec<usize> = (0..p).map(|j| (j + shift) % p).collect();
        let q = d.select(&perm).unwrap();
        let f1 = fit_ols(&d).unwrap();
        let f2 = fit_ols(&q).unwrap();
        prop_assert!((f1.scr - f2.scr).abs() <= 1e-9 * f1.scr);
        let v1 = vif_all(&d).unwrap();
        let v2 = vif_all(&q).unwrap();
        for (pos, &orig) in perm.iter().enumerate() {
            prop_assert!((f1.coefficients[orig + 1] - f2.coefficients[pos + 1]).abs() <= 1e-8 * f1.coefficients[orig + 1].abs().max(1.0));
            prop_assert!((v1[orig] - v2[pos]).abs() <= 1e-9 * v1[orig]);
        }
    }

    #[test]
    fn avif_is_weighted_vif(seed in any::<u64>(), n in 15usize..80, p in 1usize..10) {
        let d = dataset(seed, n, p);
        let a = adjustment_factors(n, p + 1).unwrap().a;
        let vif = vif_all(&d).unwrap();
        let avif = avif_all(&d).unwrap();
        for (v, w) in vif.values().zip(avif.values()) {
            prop_assert_eq!(*w, a * v);
            if p >= 2 {
                prop_assert!(w < v);
            } else {
                prop_assert_eq!((*v, *w), (1.0, 1.0));
            }
        }
    }

    #[test]
    fn vif_and_t_ignore_location_and_scale(seed in any::<u64>(), n in 20usize..60, p in 2usize..7,
                                          scale in 0.01f64..100.0, shift in -1e3f64..1e3) {
        let d = dataset(seed, n, p);
        let cols: Vec<Vec<f64>> = (0..p)
            .map(|j| d.column(j).iter().map(|x| scale * (j as f64 + 1.0) * x + shift).collect())
            .collect();
        let e = Dataset::new(d.response().to_vec(), cols, d.names().to_vec()).unwrap();
        for (a, b) in vif_all(&d).unwrap().values().zip(vif_all(&e).unwrap().values()) {
            prop_assert!((a - b).abs() <= 1e-8 * a);
        }
        let t1 = fit_ols(&d).unwrap().coef_tests;
        let t2 = fit_ols(&e).unwrap().coef_tests;
        for (a, b) in t1.iter().zip(&t2).skip(1) {
            prop_assert!((a.t_exp - b.t_exp).abs() <= 1e-7 * a.t_exp.max(1.0));
        }
    }

    #[test]
    fn scaled_statistic_and_scaled_threshold_agree(t in 0.0f64..8.0, n in 5usize..300, kk in 0usize..100, alpha in 0.001f64..0.3) {
        let k = 2 + kk % (n - 3);
        let th = Thresholds::new(n, k, alpha).unwrap();
        prop_assume!((t - th.at_crit).abs() > 1e-9);
        prop_assert_eq!(th.b * t > th.t_crit, t > th.at_crit);
        let r = decide(t, n, k, alpha).unwrap();
        prop_assert_eq!(r.reject_adjusted, t > th.at_crit);
        prop_assert_eq!(r.reject_classic, t > th.t_crit);
    }

    #[test]
    fn options_partition_outcomes(t in 0.0f64..8.0, n in 5usize..300, kk in 0usize..100) {
        let k = 2 + kk % (n - 3);
        let r = decide(t, n, k, 0.05).unwrap();
        // the adjusted threshold never exceeds the classic one
        prop_assert!(!r.reject_classic || r.reject_adjusted);
        let expected = match (r.reject_classic, r.reject_adjusted) {
            (true, true) => SignificanceOption::A,
            (false, false) => SignificanceOption::B,
            (false, true) => SignificanceOption::C,
            (true, false) => unreachable!(),
        };
        prop_assert_eq!(r.option, expected);
    }

    #[test]
    fn selection_is_deterministic(seed in any::<u64>(), n in 25usize..60, p in 2usize..8) {
        let d = dataset(seed, n, p);
        for rule in [Rule::Classic, Rule::Adjusted] {
            for dir in [Direction::Backward, Direction::Forward] {
                let t1 = select(&d, dir, rule, 0.05).unwrap();
                let t2 = select(&d, dir, rule, 0.05).unwrap();
                prop_assert_eq!(&t1, &t2);
                if dir == Direction::Backward {
                    let dec = decision_table(&t1.final_fit, 0.05).unwrap();
                    for r in dec.iter().skip(1) {
                        prop_assert!(rule.rejects(r));
                    }
                }
            }
        }
    }

    #[test]
    fn report_round_trips(seed in any::<u64>(), n in 20usize..50, p in 1usize..6) {
        let d = dataset(seed, n, p);
        let fit = fit_ols(&d).unwrap();
        let trace = select(&d, Direction::Backward, Rule::Adjusted, 0.05).unwrap();
        let doc = ReportDocument {
            fit: FitSummary::from(&fit),
            collinearity: diagnose(&d, DEFAULT_THRESHOLD).unwrap(),
            decisions: decision_table(&fit, 0.05).unwrap(),
            selection: Some(trace),
            comparison: None,
            notes: vec!["x".into()],
            provenance: Provenance::new(Some(seed), "test"),
        };
        let json = doc.to_json().unwrap();
        let back = ReportDocument::from_json(&json).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_json().unwrap(), json);
    }
}

#[test]
fn weight_is_monotone_over_the_grid() {
    for n in (15..=200).step_by(5) {
        let mut prev = 1.0;
        assert_eq!(adjustment_factors(n, 2).unwrap().a, 1.0);
        for k in 3..=15 {
            let f = adjustment_factors(n, k).unwrap();
            assert!(f.a < prev && f.a > 0.0);
            assert!(f.a < adjustment_factors(n + 5, k).unwrap().a);
            assert!((f.sqrt_a * f.b - 1.0).abs() < 1e-15);
            prev = f.a;
        }
    }
}

#[test]
fn json_keys_are_sorted() {
    let d = dataset(3, 30, 3);
    let fit = fit_ols(&d).unwrap();
    let doc = ReportDocument {
        fit: FitSummary::from(&fit),
        collinearity: diagnose(&d, 10.0).unwrap(),
        decisions: decision_table(&fit, 0.05).unwrap(),
        selection: None,
        comparison: None,
        notes: vec![],
        provenance: Provenance::new(None, "s"),
    };
    let json = doc.to_json().unwrap();
    let top: Vec<&str> = json
        .lines()
        .filter(|l| l.starts_with("  \"") && !l.starts_with("   "))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = top.clone();
    sorted.sort();
    assert_eq!(top, sorted);
    assert_eq!(top.len(), 7);
}
