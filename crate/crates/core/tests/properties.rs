mod common;

use majbound::entropy::{pair_entropy_check, lattice_metric, relative_entropy, renyi, shannon};
use majbound::lorenz::lorenz_curve;
use majbound::majorization::{join, join_many, majorizes, meet};
use majbound::problem::parse_vector;
use majbound::quantum::{
    direct_sum_distribution, haar_unitary, random_pure_state_with, random_state_with_spectrum_with,
    stream_rng, Complex64, ComplexMatrix, Measurement,
};
use majbound::{format, least_upper_bound, presets, DistVector};
use proptest::prelude::*;
use rand::Rng;

use common::random_dist;

fn dist(n: usize) -> impl Strategy<Value = DistVector> {
    any::<u64>().prop_map(move |seed| random_dist(&mut stream_rng(seed, 0), n))
}

fn pair() -> impl Strategy<Value = (DistVector, DistVector)> {
    (2usize..=7).prop_flat_map(|n| (dist(n), dist(n)))
}

/// Upper concave hull of `(0, 0), (1, y₁), …`, evaluated at `1..=len`.
fn concave_majorant(ys: &[f64]) -> Vec<f64> {
    let pts: Vec<(f64, f64)> = std::iter::once((0.0, 0.0))
        .chain(ys.iter().enumerate().map(|(k, &y)| ((k + 1) as f64, y)))
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // Drop b when it lies on or under the chord a–p.
            if (b.1 - a.1) * (p.0 - a.0) <= (p.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    (1..=ys.len())
        .map(|k| {
            let x = k as f64;
            let w = hull.windows(2).find(|w| w[1].0 >= x).unwrap();
            let t = (x - w[0].0) / (w[1].0 - w[0].0);
            w[0].1 + t * (w[1].1 - w[0].1)
        })
        .collect()
}

/// Random projective measurements from Haar bases.
fn random_measurements(dim: usize, count: usize, seed: u64) -> Vec<Measurement> {
    let mut rng = stream_rng(seed, 1);
    (0..count)
        .map(|_| Measurement::projective(&haar_unitary(dim, &mut rng)).unwrap())
        .collect()
}

/// Trine POVM on a qubit: `(2/3)|ψₖ⟩⟨ψₖ|`, `ψₖ` at Bloch angles `2πk/3`.
fn trine() -> Measurement {
    let effects = (0..3)
        .map(|k| {
            let half = std::f64::consts::PI * k as f64 / 3.0;
            let v = [Complex64::new(half.cos(), 0.0), Complex64::new(half.sin(), 0.0)];
            ComplexMatrix::outer(&v).scale(2.0 / 3.0)
        })
        .collect();
    Measurement::povm(effects).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn entropies_are_schur_concave((a, c) in pair(), alpha in 0.1f64..5.0) {
        // meet(a, c) ≺ a, so it cannot have less entropy.
        let b = meet(&a, &c).unwrap();
        prop_assert!(shannon(a.components()).unwrap() <= shannon(b.components()).unwrap() + 1e-9);
        prop_assert!(renyi(a.components(), alpha).unwrap() <= renyi(b.components(), alpha).unwrap() + 1e-9);
    }

    #[test]
    fn lorenz_dominance_matches_majorization((a, b) in pair()) {
        let (la, lb) = (lorenz_curve(&a), lorenz_curve(&b));
        prop_assert_eq!(la.dominates(&lb, 1e-12).unwrap(), majorizes(&a, &b, 1e-12).unwrap());
        prop_assert!(la.is_concave(1e-12));
    }

    #[test]
    fn lattice_metric_axioms(n in 2usize..=6, seeds in any::<[u64; 3]>()) {
        let [a, b, c] = seeds.map(|s| random_dist(&mut stream_rng(s, 0), n));
        let d = |x: &DistVector, y: &DistVector| lattice_metric(x, y).unwrap();
        prop_assert_eq!(d(&a, &a), 0.0);
        prop_assert!((d(&a, &b) - d(&b, &a)).abs() < 1e-12);
        prop_assert!(d(&a, &b) >= 0.0);
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c) + 1e-9);
    }

    #[test]
    fn lattice_metric_vanishes_only_on_equal_vectors((a, b) in pair()) {
        if lattice_metric(&a, &b).unwrap() < 1e-12 {
            prop_assert!(a.approx_eq(&b, 1e-5));
        }
    }

    #[test]
    fn pair_entropy_inequality_below_a_common_bound((a, b) in pair()) {
        let s = join(&a, &b).unwrap();
        prop_assert!(pair_entropy_check(&a, &b, &s).unwrap());
        prop_assert!(relative_entropy(&s, &a).unwrap() >= -1e-12);
    }

    #[test]
    fn bound_covers_random_pure_states(dim in 2usize..=3, count in 2usize..=3, seed in any::<u64>()) {
        prop_assume!(dim.pow(count as u32) <= 27);
        let ms = random_measurements(dim, count, seed);
        let result = least_upper_bound(&ms, &presets::pure_spectrum(dim)).unwrap();
        let mut rng = stream_rng(seed, 2);
        for _ in 0..50 {
            let st = random_pure_state_with(dim, &mut rng).unwrap();
            let chi = direct_sum_distribution(&ms, &st).unwrap();
            prop_assert!(majorizes(&result.s, &chi, 1e-8).unwrap());
        }
        // Least concave majorant of the Ω profile.
        let omega = result.omega_profile();
        let want = concave_majorant(&omega[1..]);
        let got = result.s.profile();
        prop_assert!(common::max_abs_diff(got.as_slice(), &want) < 1e-9);
        prop_assert!(majorizes(&result.rpz, &result.s, 1e-9).unwrap());
    }

    #[test]
    fn bound_covers_mixed_states(l1 in 0.5f64..1.0, theta in 0.05f64..=std::f64::consts::FRAC_PI_2, seed in any::<u64>()) {
        let spectrum = DistVector::new(vec![l1, 1.0 - l1]).unwrap();
        let ms = presets::qubit_xz(theta).measurements;
        let result = least_upper_bound(&ms, &spectrum).unwrap();
        let (l2, c, s2) = (1.0 - l1, (theta / 2.0).cos(), (theta / 4.0).sin().powi(2));
        let closed = [l1, l1 * c + 2.0 * l2 * s2, 2.0 * l1 * s2 + l2 * c, l2];
        prop_assert!(common::max_abs_diff(result.s.components(), &closed) < 1e-9,
            "{:?} vs {:?}", result.s.components(), closed);
        let mut rng = stream_rng(seed, 0);
        for _ in 0..50 {
            let st = random_state_with_spectrum_with(&spectrum, &mut rng).unwrap();
            let chi = direct_sum_distribution(&ms, &st).unwrap();
            prop_assert!(majorizes(&result.s, &chi, 1e-8).unwrap());
        }
    }

    #[test]
    fn partial_joins_of_level_bounds_stay_below(seed in any::<u64>()) {
        let ms = random_measurements(2, 3, seed);
        let result = least_upper_bound(&ms, &presets::pure_spectrum(2)).unwrap();
        let mut rng = stream_rng(seed, 3);
        let picked: Vec<&DistVector> = result
            .records
            .iter()
            .filter(|_| rng.random_bool(0.5))
            .map(|r| &r.s_n)
            .collect();
        if !picked.is_empty() {
            prop_assert!(majorizes(&result.s, &join_many(picked).unwrap(), 1e-9).unwrap());
        }
        let all = join_many(result.records.iter().map(|r| &r.s_n)).unwrap();
        prop_assert!(all.approx_eq(&result.s, 1e-9));
    }
}

#[test]
fn trine_with_z_matches_bloch_grid() {
    let ms = vec![trine(), presets::z_basis()];
    assert_eq!(ms[0].outcome_count(), 3);
    let result = least_upper_bound(&ms, &presets::pure_spectrum(2)).unwrap();
    assert_eq!(result.s.len(), 5);
    // Ω_n from a dense scan of real and complex pure qubit states.
    let steps = 400;
    let mut best = [0.0f64; 4];
    for i in 0..=steps {
        for j in 0..steps {
            let theta = std::f64::consts::PI * i as f64 / steps as f64;
            let phi = 2.0 * std::f64::consts::PI * j as f64 / steps as f64;
            let psi = [
                Complex64::new((theta / 2.0).cos(), 0.0),
                Complex64::from_polar((theta / 2.0).sin(), phi),
            ];
            let st = majbound::quantum::QuantumState::pure(&psi).unwrap();
            let chi = direct_sum_distribution(&ms, &st).unwrap();
            assert!(majorizes(&result.s, &chi, 1e-9).unwrap());
            for (k, b) in best.iter_mut().enumerate() {
                *b = b.max(chi.partial_sum(k + 1));
            }
        }
    }
    for (r, b) in result.records.iter().zip(best) {
        assert!(r.omega >= b - 1e-12, "n={} omega {} < grid {}", r.n, r.omega, b);
        assert!(r.omega - b < 1e-4, "n={} omega {} grid {}", r.n, r.omega, b);
    }
}

#[test]
fn bound_json_reads_back() {
    for p in [presets::qubit_xz(1.0), presets::three_pauli(), presets::qutrit_coles()] {
        let result = least_upper_bound(&p.measurements, &p.spectrum).unwrap();
        let text = serde_json::to_string(&format::round_json(result.to_json())).unwrap();
        let back = parse_vector(&text).unwrap();
        assert!(back.approx_eq(&result.s, 1e-11));
    }
}
