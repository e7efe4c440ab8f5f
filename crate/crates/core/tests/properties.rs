mod common;

use proptest::collection::btree_set;
use proptest::prelude::*;

use common::ols;
use hypergrowth::ingest::parse_canonical_csv;
use hypergrowth::regimes::Verdict;
use hypergrowth::report::json::{emit_json_report, read_fit_report, FitEntry};
use hypergrowth::report::plot::{plot_series, Overlay, PlotOptions, Scale};
use hypergrowth::report::tables::to_canonical_csv;
use hypergrowth::special::f_sf;
use hypergrowth::{
    chow_test, eval_hyperbola, fit_hyperbola, fit_line, flag_deviations, hyperbola_from_line, ratio_trajectory,
    reciprocal, scan_breakpoints, HyperbolicModel, TimeSeries,
};

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(f64::MIN_POSITIVE)
}

/// Distinct sorted integer years.
fn years(min_len: usize, max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    btree_set(-500i32..2500, min_len..=max_len).prop_map(|s| s.into_iter().map(f64::from).collect())
}

/// SplitMix64 output mapped to [0, 1).
fn unit_hash(seed: u64, i: usize) -> f64 {
    let mut z = seed.wrapping_add((i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64
}

/// Line data with deterministic pseudo-noise of relative size `noise`.
fn noisy(years: &[f64], a: f64, k: f64, noise: f64, seed: u64) -> Vec<(f64, f64)> {
    years
        .iter()
        .enumerate()
        .map(|(i, &t)| (t, (a - k * t) * (1.0 + noise * (unit_hash(seed, i) - 0.5))))
        .collect()
}

proptest! {
    #[test]
    fn reciprocal_is_an_involution(ys in years(1, 30), vals in proptest::collection::vec(1e-6f64..1e9, 30)) {
        let s = TimeSeries::new("x", "u", ys.iter().zip(&vals).map(|(&t, &v)| (t, v)).collect()).unwrap();
        let back = reciprocal(&reciprocal(&s).unwrap()).unwrap();
        for (p, q) in s.points().iter().zip(back.points()) {
            prop_assert_eq!(p.0, q.0);
            prop_assert!(rel(q.1, p.1) <= 1e-15);
        }
        prop_assert_eq!(back.unit(), "1/(1/(u))");
    }

    #[test]
    fn exact_lines_are_recovered(ys in years(2, 40), a in 0.1f64..100.0, frac in -0.99f64..0.99) {
        let t_max = ys.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        let k = frac * a / t_max;
        let s = TimeSeries::new("l", "u", ys.iter().map(|&t| (t, a - k * t)).collect()).unwrap();
        let fit = fit_line(&s, None).unwrap();
        prop_assert!(rel(fit.a, a) <= 1e-9, "a {} vs {}", fit.a, a);
        prop_assert!((fit.k - k).abs() <= 1e-9 * a / t_max, "k {} vs {}", fit.k, k);
    }

    #[test]
    fn residuals_sum_to_zero(ys in years(3, 40), a in 1.0f64..50.0, seed in any::<u64>()) {
        let k = 0.5 * a / 2500.0;
        let s = TimeSeries::new("r", "u", noisy(&ys, a, k, 0.2, seed)).unwrap();
        let fit = fit_line(&s, None).unwrap();
        let mean_abs = s.values().map(f64::abs).sum::<f64>() / s.len() as f64;
        let total: f64 = fit.residuals.iter().map(|r| r.residual).sum();
        prop_assert!(total.abs() <= 1e-9 * mean_abs);
        prop_assert!(fit.rss >= 0.0 && (0.0..=1.0).contains(&fit.r2));
        let (oa, ok, _) = ols(s.points());
        prop_assert!((fit.a - oa).abs() <= 1e-9 * oa.abs() + 1e-12 && (fit.k - ok).abs() <= 1e-9 * (oa / 2500.0));
    }

    #[test]
    fn pipeline_reproduces_hyperbola(ys in years(2, 30), a in 1.0f64..50.0, frac in 0.0f64..0.9) {
        let t_max = ys.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        let k = frac * a / t_max;
        let s = TimeSeries::new("h", "u", ys.iter().map(|&t| (t, 1.0 / (a - k * t))).collect()).unwrap();
        let (model, _) = fit_hyperbola(&s, None).unwrap();
        let model2 = hyperbola_from_line(&fit_line(&reciprocal(&s).unwrap(), None).unwrap()).unwrap();
        prop_assert_eq!(model, model2);
        for &(t, v) in s.points() {
            prop_assert!(rel(eval_hyperbola(&model, t).unwrap(), v) <= 1e-9);
        }
    }

    #[test]
    fn hyperbola_increases_before_singularity(
        a in 0.1f64..100.0, k in 1e-4f64..1.0, q in 0.1f64..4.0,
        u1 in -1.0f64..0.98, gap in 1e-6f64..1.0,
    ) {
        let m = HyperbolicModel::new(a, k, q).unwrap();
        let ts = m.t_s().unwrap();
        let u2 = (u1 + gap).min(0.99);
        prop_assume!(u2 > u1);
        let (v1, v2) = (eval_hyperbola(&m, ts * u1).unwrap(), eval_hyperbola(&m, ts * u2).unwrap());
        prop_assert!(v1 > 0.0 && v1 < v2, "{} !< {}", v1, v2);
    }

    #[test]
    fn ratio_of_model_with_itself_is_one(a in 0.1f64..100.0, k in 0.0f64..0.01, q in 0.5f64..3.0) {
        let m = HyperbolicModel::new(a, k, q).unwrap();
        let limit = m.t_s().map_or(1000.0, |t| t - 1.0);
        let grid: Vec<f64> = (0..50).map(|i| limit - 20.0 * i as f64).rev().collect();
        let r = ratio_trajectory(&m, &m, &grid).unwrap();
        prop_assert!(r.values.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn rss_and_chow_are_shift_invariant(n in 8usize..30, seed in any::<u64>(), shift in -3000.0f64..3000.0) {
        let ys: Vec<f64> = (0..n).map(|i| 1000.0 + 7.0 * i as f64).collect();
        let s = TimeSeries::new("s", "u", noisy(&ys, 30.0, 0.01, 0.05, seed)).unwrap();
        let shifted = s.map_years(|t| t + shift).unwrap();
        let (f1, f2) = (fit_line(&s, None).unwrap(), fit_line(&shifted, None).unwrap());
        prop_assert!(rel(f2.rss, f1.rss) <= 1e-9);
        let mid = ys[n / 2] + 0.5;
        let c1 = chow_test(&s, mid).unwrap().chow.unwrap();
        let c2 = chow_test(&shifted, mid + shift).unwrap().chow.unwrap();
        prop_assert!(rel(c2.f, c1.f) <= 1e-9, "{} vs {}", c2.f, c1.f);
        prop_assert!((0.0..=1.0).contains(&c1.p_value));
    }

    #[test]
    fn p_value_decreases_in_f(f in 0.0f64..50.0, step in 1e-3f64..10.0, d2 in 1usize..200) {
        let d2 = d2 as f64;
        prop_assert!(f_sf(f + step, 2.0, d2) < f_sf(f, 2.0, d2) || f_sf(f, 2.0, d2) == 0.0);
    }

    #[test]
    fn more_segments_never_raise_best_rss(n in 9usize..26, seed in any::<u64>()) {
        let ys: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let s = TimeSeries::new("s", "u", noisy(&ys, 10.0, 0.1, 0.3, seed)).unwrap();
        let best = |m| {
            scan_breakpoints(&s, m, 3).unwrap().segmentations.iter().map(|g| g.rss).fold(f64::INFINITY, f64::min)
        };
        let (r1, r2, r3) = (best(1), best(2), best(3));
        let tol = 1e-12 * r1;
        prop_assert!(r2 <= r1 + tol && r3 <= r2 + tol, "{} {} {}", r1, r2, r3);

        let report = scan_breakpoints(&s, 3, 3).unwrap();
        prop_assert_eq!(report.verdict.is_one_stage(), report.best_segmentation().segment_count() == 1);
        for seg in &report.segmentations {
            for (fit, range) in seg.segments.iter().zip(&seg.ranges) {
                let scale = s.points()[range.clone()].iter().map(|p| p.1.abs()).sum::<f64>() / range.len() as f64;
                let sum: f64 = fit.residuals.iter().map(|r| r.residual).sum();
                prop_assert!(sum.abs() <= 1e-9 * scale);
            }
        }
    }

    #[test]
    fn mirrored_series_has_mirrored_breaks(n in 12usize..24, cut in 0.3f64..0.7, k2 in 0.03f64..0.1, seed in any::<u64>()) {
        let ys: Vec<f64> = (0..n).map(|i| 10.0 * i as f64).collect();
        let b = ((n as f64 * cut) as usize).clamp(3, n - 4);
        let points: Vec<(f64, f64)> = noisy(&ys, 1.0, 0.0, 1e-4, seed)
            .into_iter()
            .enumerate()
            .map(|(i, (t, e))| {
                let tb = ys[b];
                let y = if i <= b { 30.0 - 0.01 * t } else { 30.0 - 0.01 * tb - k2 * (t - tb) };
                (t, y + (e - 1.0))
            })
            .collect();
        let s = TimeSeries::new("s", "u", points.clone()).unwrap();
        let mirror = TimeSeries::from_unsorted("m", "u", points.iter().map(|&(t, y)| (-t, y)).collect()).unwrap();
        let (r, m) = (scan_breakpoints(&s, 2, 3).unwrap(), scan_breakpoints(&mirror, 2, 3).unwrap());
        let Verdict::MultiStage(fwd) = r.verdict else { return Err(TestCaseError::fail("no break found")) };
        let Verdict::MultiStage(back) = m.verdict else { return Err(TestCaseError::fail("no mirrored break")) };
        // The boundary point joins the left segment, so the mirror reports the
        // year after the original boundary.
        let expected: Vec<f64> = fwd.iter().rev().map(|y| -(y + 10.0)).collect();
        prop_assert_eq!(back, expected);
    }

    #[test]
    fn deviation_flags_follow_threshold(n in 4usize..30, seed in any::<u64>(), z in 0.0f64..4.0) {
        let ys: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let s = TimeSeries::new("s", "u", noisy(&ys, 10.0, 0.1, 0.2, seed)).unwrap();
        let fit = fit_line(&s, Some(ys[n - 2])).unwrap();
        prop_assume!(fit.n > 2);
        let report = flag_deviations(&s, &fit, z).unwrap();
        prop_assert_eq!(report.flags.len(), n);
        for f in &report.flags {
            prop_assert_eq!(f.flagged, f.z.abs() > report.threshold);
        }
    }

    #[test]
    fn log_axis_values_are_positive(
        a in 0.5f64..20.0, k in -0.01f64..0.05, q in 0.5f64..3.0, reciprocal_mode in any::<bool>(),
    ) {
        let ys: Vec<f64> = (0..10).map(|i| 100.0 * i as f64).collect();
        let s = TimeSeries::new("s", "u", ys.iter().map(|&t| (t, 1.0 + t / 100.0)).collect()).unwrap();
        let m = HyperbolicModel::new(a, k, q).unwrap();
        let overlays = vec![Overlay::from_model("m", m), Overlay::Line { name: "l".into(), a, k }];
        let opts = PlotOptions { scale: Scale::Log10, reciprocal: reciprocal_mode, ..PlotOptions::default() };
        let doc = plot_series(&[s], &overlays, &opts).unwrap();
        for layer in &doc.layers {
            prop_assert!(layer.points.iter().all(|p| p.1 > 0.0 && p.1.is_finite()), "{}", layer.name);
        }
        prop_assert!(doc.y_axis.min > 0.0);
    }

    #[test]
    fn json_round_trips_fit_parameters(ys in years(3, 20), a in 1.0f64..50.0, frac in 0.0f64..0.9, seed in any::<u64>()) {
        let t_max = ys.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        let k = frac * a / t_max;
        let s = TimeSeries::new("w", "u", noisy(&ys, a, k, 1e-3, seed).into_iter().map(|(t, y)| (t, 1.0 / y)).collect()).unwrap();
        let (model, fit) = fit_hyperbola(&s, None).unwrap();
        let entry = FitEntry { series: &s, model: &model, fit: &fit, candidates: None, deviations: None, monotonicity: None };
        let text = emit_json_report(serde_json::Map::new(), &[entry], &[]);
        let back = read_fit_report(&text).unwrap();
        prop_assert_eq!(back[0].model, model);
        prop_assert_eq!(&back[0].years, &ys);
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(value["fits"][0]["rss"].as_f64().unwrap(), fit.rss);
        prop_assert_eq!(value["fits"][0]["r2"].as_f64().unwrap(), fit.r2);
        prop_assert_eq!(hypergrowth::report::json::canonical_json(&value), text);
    }

    #[test]
    fn canonical_csv_round_trips(ys in years(1, 30), vals in proptest::collection::vec(1e-300f64..1e300, 30)) {
        let s = TimeSeries::new("c", "u", ys.iter().zip(&vals).map(|(&t, &v)| (t, v)).collect()).unwrap();
        let back: TimeSeries<f64> = parse_canonical_csv(&to_canonical_csv(&s)).unwrap();
        prop_assert_eq!(back.points(), s.points());
        prop_assert_eq!(to_canonical_csv(&back), to_canonical_csv(&s));
    }
}
