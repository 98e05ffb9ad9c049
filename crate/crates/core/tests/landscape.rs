use homodim::landscape::{
    build_landscape, count_landscape_maxima, count_maxima, local_maxima, smooth,
    PersistenceLandscape, SmoothingParams, TentFunction,
};
use homodim::persistence::{DiagramPoint, PersistenceDiagram};
use proptest::prelude::*;

fn diagram_of(k: usize, points: &[(f64, Option<f64>)]) -> PersistenceDiagram {
    PersistenceDiagram::new(k, points.iter().map(|&(b, d)| DiagramPoint::new(b, d)).collect()).unwrap()
}

fn diagram_strategy() -> impl Strategy<Value = PersistenceDiagram> {
    prop::collection::vec((0.0..8.0f64, 0.01..4.0f64, prop::bool::weighted(0.1)), 0..25).prop_map(
        |raw| {
            let pts: Vec<(f64, Option<f64>)> = raw
                .into_iter()
                .map(|(b, len, essential)| (b, if essential { None } else { Some(b + len) }))
                .collect();
            diagram_of(1, &pts)
        },
    )
}

/// Plain scan for strict interior maxima; only valid without plateaus.
fn strict_maxima(v: &[f64]) -> usize {
    (1..v.len().saturating_sub(1))
        .filter(|&i| v[i] > v[i - 1] && v[i] > v[i + 1])
        .count()
}

proptest! {
    #[test]
    fn layers_are_ordered_and_exact(dg in diagram_strategy(), resolution in 2..300usize) {
        let cap = 12.0;
        let pl = build_landscape(&dg, resolution, cap).unwrap();
        let tents: Vec<TentFunction> = dg
            .points
            .iter()
            .map(|p| TentFunction::new(p.birth, p.death.unwrap_or(cap)).unwrap())
            .collect();
        for (i, &x) in pl.grid.iter().enumerate() {
            let mut values: Vec<f64> = tents.iter().map(|t| t.eval(x)).collect();
            values.sort_by(|a, b| b.total_cmp(a));
            for (m, layer) in pl.layers.iter().enumerate() {
                prop_assert_eq!(layer[i], values.get(m).copied().unwrap_or(0.0));
                if m > 0 {
                    prop_assert!(pl.layers[m - 1][i] >= layer[i]);
                }
                prop_assert!(layer[i] >= 0.0);
            }
        }
    }

    #[test]
    fn layers_are_one_lipschitz(dg in diagram_strategy(), resolution in 2..300usize) {
        let pl = build_landscape(&dg, resolution, 12.0).unwrap();
        for layer in &pl.layers {
            for i in 1..pl.grid.len() {
                let dx = pl.grid[i] - pl.grid[i - 1];
                prop_assert!((layer[i] - layer[i - 1]).abs() <= dx + 1e-12);
            }
        }
    }

    #[test]
    fn refinement_converges_to_peak(b in 0.0..5.0f64, len in 0.5..5.0f64) {
        let dg = diagram_of(1, &[(b, Some(b + len))]);
        let cap = 10.0;
        let mut prev_err = f64::INFINITY;
        for resolution in [11, 101, 1001, 10001] {
            let pl = build_landscape(&dg, resolution, cap).unwrap();
            let top = pl.layers.first().map_or(0.0, |l| l.iter().copied().fold(0.0, f64::max));
            let err = len / 2.0 - top;
            prop_assert!(err >= -1e-12);
            prop_assert!(err <= cap / (resolution - 1) as f64 + 1e-12);
            prop_assert!(err <= prev_err + 1e-12);
            prev_err = err;
        }
    }

    #[test]
    fn smoothing_preserves_mass_and_bounds(dg in diagram_strategy(), sigma in 0.0..6.0f64) {
        let pl = build_landscape(&dg, 400, 12.0).unwrap();
        let sm = smooth(&pl, &SmoothingParams { sigma }).unwrap();
        prop_assert_eq!(sm.layers.len(), pl.layers.len());
        for (raw, s) in pl.layers.iter().zip(&sm.layers) {
            let hi = raw.iter().copied().fold(0.0, f64::max);
            for &v in s {
                prop_assert!(v >= -1e-12 && v <= hi + 1e-12);
            }
        }
    }

    #[test]
    fn maxima_agree_with_strict_scan_without_plateaus(values in prop::collection::vec(-1.0e3..1.0e3f64, 0..200)) {
        prop_assume!(values.windows(2).all(|w| w[0] != w[1]));
        prop_assert_eq!(local_maxima(&values, f64::NEG_INFINITY).len(), strict_maxima(&values));
    }

    #[test]
    fn disjoint_tents_give_one_maximum_each(m in 1..40usize) {
        // tent j on [4j + 1, 4j + 3]; cap leaves room on the right
        let pts: Vec<(f64, Option<f64>)> = (0..m)
            .map(|j| (4.0 * j as f64 + 1.0, Some(4.0 * j as f64 + 3.0)))
            .collect();
        let dg = diagram_of(2, &pts);
        let cap = 4.0 * m as f64 + 1.0;
        let pl = build_landscape(&dg, 1000, cap).unwrap();
        prop_assert_eq!(pl.layers.len(), 1);
        let sm = smooth(&pl, &SmoothingParams::default()).unwrap();
        prop_assert_eq!(count_landscape_maxima(&sm, 0.0), m);
        prop_assert_eq!(count_maxima(&[sm], 0.0).get(2), m);
    }
}

#[test]
fn single_tent_exact_values() {
    let pl = build_landscape(&diagram_of(0, &[(0.0, Some(2.0))]), 5, 2.0).unwrap();
    assert_eq!(pl.layers, vec![vec![0.0, 0.5, 1.0, 0.5, 0.0]]);
}

#[test]
fn overlapping_tents() {
    // Peaks at 2 and 3 with overlap on [1.5, 3.5]: layer 1 has two peaks,
    // layer 2 one.
    let dg = diagram_of(1, &[(0.5, Some(3.5)), (1.5, Some(4.5))]);
    let pl = build_landscape(&dg, 1000, 5.0).unwrap();
    let sm = smooth(&pl, &SmoothingParams::default()).unwrap();
    let per_layer: Vec<usize> = sm.layers.iter().map(|l| strict_maxima(l)).collect();
    assert_eq!(per_layer, vec![2, 1]);
    assert_eq!(count_landscape_maxima(&sm, 0.0), 3);
}

#[test]
fn smoothing_keeps_symmetric_peak_in_place() {
    let pl = build_landscape(&diagram_of(1, &[(2.0, Some(6.0))]), 1001, 10.0).unwrap();
    let sm = smooth(&pl, &SmoothingParams::default()).unwrap();
    let argmax = |v: &[f64]| {
        v.iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap()
    };
    assert_eq!(argmax(&pl.layers[0]), 400);
    assert_eq!(argmax(&sm.layers[0]), 400);
    assert!(sm.layers[0][400] < pl.layers[0][400]);
    assert_eq!(local_maxima(&sm.layers[0], 0.0), vec![400]);
}

#[test]
fn min_height_filters_low_peaks() {
    let dg = diagram_of(1, &[(0.0, Some(4.0)), (6.0, Some(6.4))]);
    let pl = smooth(&build_landscape(&dg, 1000, 8.0).unwrap(), &SmoothingParams::default()).unwrap();
    assert_eq!(count_landscape_maxima(&pl, 0.0), 2);
    assert_eq!(count_landscape_maxima(&pl, 0.5), 1);
}

#[test]
fn landscape_json_round_trip() {
    let pl = build_landscape(&diagram_of(3, &[(0.1, Some(0.9)), (0.2, None)]), 17, 1.5).unwrap();
    let text = pl.to_json();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["cap", "grid", "k", "layers"]);
    assert_eq!(PersistenceLandscape::from_json(&text).unwrap(), pl);
}
