use repgap_core::asymptotics::{
    bound, exact_truncated_ss_gap, figure_points, intro_n_values, log10_right_cell,
    log10_truncated_ss_gap, BoundSide, FigureId, Quantity, SANDWICH_TOLERANCE,
};
use repgap_core::combinat::binomial;
use repgap_core::numeric::log10_big;
use repgap_core::Family;

#[test]
fn lower_below_upper() {
    for family in Family::ALL {
        for quantity in Quantity::ALL {
            let (Ok(lo), Ok(up)) = (
                bound(family, quantity, BoundSide::Lower),
                bound(family, quantity, BoundSide::Upper),
            ) else {
                continue;
            };
            if !lo.known || !up.known {
                continue;
            }
            for n in 2..=2000 {
                let n = n as f64;
                assert!(lo.eval_log10(n).unwrap() <= up.eval_log10(n).unwrap(), "{family} {quantity} n={n}");
            }
        }
    }
}

#[test]
fn sandwich_at_large_n() {
    let pins = [
        (Family::RTl, [28.337, 148.349, 298.729]),
        (Family::RpRo, [27.296, 147.397, 297.750]),
    ];
    for (family, expect) in pins {
        let lo = bound(family, Quantity::Gap, BoundSide::Lower).unwrap();
        let up = bound(family, Quantity::Gap, BoundSide::Upper).unwrap();
        for (n, want) in [100usize, 500, 1000].into_iter().zip(expect) {
            let v = log10_truncated_ss_gap(family, n).unwrap();
            assert!((v - want).abs() < 1e-3, "{family} n={n}: {v}");
            let l = lo.eval_log10(n as f64).unwrap();
            let u = up.eval_log10(n as f64).unwrap();
            assert!(l - SANDWICH_TOLERANCE <= v && v <= u + SANDWICH_TOLERANCE, "{family} n={n}: {l} {v} {u}");
        }
    }
}

#[test]
fn exact_gaps_at_window_edges() {
    // independent evaluation: the smallest window binomial
    for n in [100usize, 500] {
        let exact = exact_truncated_ss_gap(Family::RpRo, n).unwrap();
        let h = (0..=n as i64)
            .filter(|&h| {
                let d = (2 * h - n as i64).abs();
                d * d <= 8 * n as i64
            })
            .min()
            .unwrap();
        assert_eq!(exact, binomial(n as i64, h));
        assert!((log10_big(&exact) - log10_truncated_ss_gap(Family::RpRo, n).unwrap()).abs() < 1e-9);
    }
    let exact = exact_truncated_ss_gap(Family::RTl, 100).unwrap();
    // window 88..114 in even k; the ends give C(99, 56) and C(99, 43)
    assert_eq!(exact, binomial(99, 43));
}

#[test]
fn separation_rate() {
    let tl = bound(Family::Tl, Quantity::Gap, BoundSide::Lower).unwrap();
    let rtl = bound(Family::RTl, Quantity::Gap, BoundSide::Upper).unwrap();
    let sep = |n: f64| tl.eval_log10(n).unwrap() - rtl.eval_log10(n).unwrap();
    let ns = intro_n_values();
    for &n in &ns {
        assert!(sep(n as f64) > 0.0, "n={n}");
    }
    let slope = (sep(1000.0) - sep(500.0)) / 500.0;
    assert!((slope - 2f64.log10()).abs() < 0.01, "{slope}");
    let w = ns.windows(2).map(|p| sep(p[1] as f64) - sep(p[0] as f64));
    for d in w {
        assert!(d > 0.0);
    }
}

#[test]
fn rook_ratio_bound_decreases() {
    let e = bound(Family::RpRo, Quantity::Ratio, BoundSide::Upper).unwrap();
    let mut prev = f64::INFINITY;
    for n in 1..=1000 {
        let v = e.eval_log10(n as f64).unwrap();
        assert!(v < prev);
        prev = v;
    }
}

#[test]
fn rtl_dimension_curve_peaks_next_to_n_plus_one() {
    let n = 100;
    let curve: Vec<(usize, f64)> = (2..=2 * n)
        .step_by(2)
        .map(|k| (k, log10_right_cell(Family::RTl, n, k, k / 2)))
        .collect();
    let max = curve.iter().map(|p| p.1).fold(f64::MIN, f64::max);
    let peaks: Vec<usize> = curve.iter().filter(|p| (p.1 - max).abs() < 1e-9).map(|p| p.0).collect();
    assert_eq!(peaks, vec![n, n + 2]);
    let up_to_peak = curve.iter().take_while(|p| p.0 <= n);
    assert!(up_to_peak.clone().zip(up_to_peak.skip(1)).all(|(a, b)| a.1 < b.1));
    let after = curve.iter().skip_while(|p| p.0 < n + 2);
    assert!(after.clone().zip(after.skip(1)).all(|(a, b)| a.1 > b.1));
}

#[test]
fn figures_are_complete() {
    for id in FigureId::ALL {
        let ns = match id {
            FigureId::IntroGap => intro_n_values(),
            _ => vec![id.default_n()],
        };
        let pts = figure_points(id, &ns).unwrap();
        assert!(!pts.is_empty(), "{id}");
        assert!(pts.iter().all(|p| p.log10_value.is_finite()), "{id}");
    }
    let gap = figure_points(FigureId::IntroGap, &intro_n_values()).unwrap();
    let series: std::collections::BTreeSet<&str> = gap.iter().map(|p| p.series.as_str()).collect();
    for s in ["tl_lower", "tl_upper", "mo_upper", "pro_lower", "rtl_exact", "rmo_exact", "rpro_exact", "rmo_upper"] {
        assert!(series.contains(s), "{s}");
    }
    assert!(!series.contains("mo_lower"));
}
