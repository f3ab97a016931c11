// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;

use wirelength::evaluation::modified_approx_models;
use wirelength::oracles::{lavg_by_quadrature, occupancy_monte_carlo, QuadratureSettings};
use wirelength::{
    evaluate, exact_lavg, interconnect_expectation, load_benchmarks, socket_pair_count,
    threshold_report, wire_density, BenchmarkRecord, ChipConfiguration, LengthUnit, ModelId,
    ModelSpec, RentParameters,
};

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Exponents kept clear of the 0.5 pole.
fn exponent() -> impl Strategy<Value = f64> {
    prop_oneof![0.3f64..0.49, 0.51f64..0.95]
}

fn record() -> impl Strategy<Value = BenchmarkRecord> {
    (
        "[a-z][a-z0-9_]{0,8}",
        2u64..100_000,
        0.05f64..0.95,
        proptest::option::of(0.5f64..10.0),
    )
        .prop_map(|(name, n_gates, rent_p, actual_lavg)| BenchmarkRecord {
            name,
            n_gates,
            rent_p,
            actual_lavg,
        })
}

fn all_models() -> Vec<ModelSpec> {
    let mut specs: Vec<ModelSpec> = ModelId::ALL
        .iter()
        .map(|&m| ModelSpec::new(m, 0.75))
        .collect();
    specs.extend(modified_approx_models());
    specs
}

proptest! {
    #[test]
    fn pair_count_is_non_negative(n in 4.0f64..1e6, t in 0.0f64..=1.0) {
        let l = 1.0 + t * (2.0 * n.sqrt() - 1.0);
        prop_assert!(socket_pair_count(l, n).unwrap() >= 0.0);
    }

    #[test]
    fn density_is_non_negative(n in 10.0f64..1e5, pg in 0.1f64..=1.0, p in exponent(), t in 0.0f64..=1.0) {
        let chip = ChipConfiguration::new(n, pg).unwrap();
        let rent = RentParameters::new(4.0, p, 3.0).unwrap();
        let l = 1.0 + t * (2.0 * chip.side() - 1.0);
        prop_assert!(wire_density(l, &chip, &rent).unwrap() >= 0.0);
    }

    #[test]
    fn density_linear_in_k_and_alpha(
        n in 10.0f64..1e5, pg in 0.1f64..=1.0, p in exponent(), t in 0.0f64..1.0,
        k in 0.5f64..10.0, scale in 0.1f64..10.0, fanout in 0.5f64..8.0,
    ) {
        let chip = ChipConfiguration::new(n, pg).unwrap();
        let l = 1.0 + t * (2.0 * chip.side() - 1.0);
        let base = RentParameters::new(k, p, fanout).unwrap();
        let scaled = RentParameters::new(k * scale, p, fanout).unwrap();
        let other_fanout = RentParameters::new(k, p, fanout * scale).unwrap();

        let d0 = wire_density(l, &chip, &base).unwrap();
        let d1 = wire_density(l, &chip, &scaled).unwrap();
        prop_assert!(d0 == 0.0 || rel(d1, scale * d0) < 1e-12);
        let d2 = wire_density(l, &chip, &other_fanout).unwrap();
        let alpha_ratio = other_fanout.alpha() / base.alpha();
        prop_assert!(d0 == 0.0 || rel(d2, alpha_ratio * d0) < 1e-12);

        let e0 = interconnect_expectation(l, &chip, &base).unwrap();
        let e1 = interconnect_expectation(l, &chip, &scaled).unwrap();
        prop_assert!(e0 == 0.0 || rel(e1, scale * e0) < 1e-12);
    }

    #[test]
    fn load_round_trips(records in proptest::collection::vec(record(), 0..20)) {
        let mut text = String::from("name,n_gates,rent_p,actual_lavg\n");
        for r in &records {
            let actual = r.actual_lavg.map(|a| a.to_string()).unwrap_or_default();
            text.push_str(&format!("{},{},{},{}\n", r.name, r.n_gates, r.rent_p, actual));
        }
        prop_assert_eq!(load_benchmarks(text.as_bytes()).unwrap(), records);
    }

    #[test]
    fn reported_mae_matches_rows(records in proptest::collection::vec(record(), 1..15)) {
        let specs = all_models();
        let report = evaluate(&records, &specs, LengthUnit::GatePitches);
        for spec in &specs {
            let errs: Vec<f64> = report.rows_for(spec).filter_map(|r| r.percent_error).collect();
            match report.mae(spec) {
                Some(mae) => {
                    let recomputed = errs.iter().sum::<f64>() / errs.len() as f64;
                    prop_assert!((mae - recomputed).abs() < 1e-9);
                }
                None => prop_assert!(errs.is_empty()),
            }
        }
    }

    #[test]
    fn evaluation_is_order_independent(
        records in proptest::collection::vec(record(), 1..15),
        seed in any::<u64>(),
    ) {
        let specs = all_models();
        let mut shuffled = records.clone();
        // deterministic permutation from the seed
        let n = shuffled.len();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (state >> 33) as usize % (i + 1));
        }
        let a = evaluate(&records, &specs, LengthUnit::GatePitches);
        let b = evaluate(&shuffled, &specs, LengthUnit::GatePitches);
        for spec in &specs {
            match (a.mae(spec), b.mae(spec)) {
                (Some(x), Some(y)) => prop_assert!((x - y).abs() < 1e-9),
                (x, y) => prop_assert_eq!(x, y),
            }
        }
    }

    #[test]
    fn raising_threshold_never_adds_rows(
        records in proptest::collection::vec(record(), 0..15),
        lo in 0.51f64..0.98, delta in 0.0f64..0.2,
    ) {
        let hi = (lo + delta).min(0.99);
        let specs = modified_approx_models();
        let a = threshold_report(&records, lo, &specs, LengthUnit::GatePitches).unwrap();
        let b = threshold_report(&records, hi, &specs, LengthUnit::GatePitches).unwrap();
        prop_assert!(b.included.rows.len() <= a.included.rows.len());
        for row in &b.included.rows {
            prop_assert!(a.included.rows.iter().any(|r| r.record == row.record));
        }
    }

    #[test]
    fn occupancy_is_reproducible(pg in 0.0f64..=1.0, l in 1.0f64..12.0, seed in any::<u64>()) {
        let a = occupancy_monte_carlo(pg, l, 500, seed).unwrap();
        let b = occupancy_monte_carlo(pg, l, 500, seed).unwrap();
        prop_assert_eq!(a, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_form_matches_quadrature(n in 10.0f64..2e5, pg in 0.2f64..=1.0, p in exponent()) {
        let chip = ChipConfiguration::new(n, pg).unwrap();
        let rent = RentParameters::new(4.0, p, 3.0).unwrap();
        let quad = lavg_by_quadrature(&chip, &rent, &QuadratureSettings::default()).unwrap();
        let closed = exact_lavg(&chip, p, LengthUnit::SocketLengths).unwrap().value;
        prop_assert!(rel(quad, closed) < 1e-6, "{} vs {}", quad, closed);
    }
}

#[test]
fn approximate_model_converges_to_exact() {
    let p = 0.75;
    let gaps: Vec<f64> = [1e3, 1e4, 1e5, 1e6]
        .iter()
        .map(|&n| {
            let chip = ChipConfiguration::fully_occupied(n).unwrap();
            let exact = exact_lavg(&chip, p, LengthUnit::GatePitches).unwrap().value;
            let approx =
                wirelength::estimate(ModelId::DavisApprox, &chip, p, LengthUnit::GatePitches)
                    .unwrap()
                    .value;
            rel(approx, exact)
        })
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}
