use proptest::prelude::*;
use rug::{Integer, Rational};

use spectral_curves::charpoly::charpoly_division_free;
use spectral_curves::game::GameMessage;
use spectral_curves::graph::is_subset_sum_distinct;
use spectral_curves::matrix::{laplacian, level_node, weighted_laplacian};
use spectral_curves::oracles::{buslov_polynomial, cofactor_spectral_polynomial};
use spectral_curves::reconstruct::reconstruct_from_polynomial;
use spectral_curves::spectra::{simulate_spectrum, SpectrumSample};
use spectral_curves::{
    canonical_form, is_isomorphic, spectral_polynomial, DiffusionPair, Graph, SpectralPolynomial,
};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let m = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), m).prop_map(move |mask| {
            let pairs = Graph::complete(n).edges().to_vec();
            let edges = pairs.into_iter().zip(mask).filter(|p| p.1).map(|p| p.0);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn connected_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    graph_strategy(max_n).prop_filter("connected", Graph::is_connected)
}

/// A graph with distinct labels drawn from `1..=40`.
fn pair_strategy(max_n: usize) -> impl Strategy<Value = DiffusionPair> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let m = g.num_edges();
        proptest::sample::subsequence((1u64..=40).collect::<Vec<_>>(), m)
            .prop_shuffle()
            .prop_map(move |labels| DiffusionPair::from_graph(&g, &labels).unwrap())
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn forest_expansion_matches(dp in pair_strategy(6)) {
        let p = spectral_polynomial(&dp);
        prop_assert_eq!(&buslov_polynomial(&dp).unwrap(), &p);
        prop_assert_eq!(&cofactor_spectral_polynomial(&dp), &p);
    }

    #[test]
    fn coefficient_signs_alternate(dp in pair_strategy(6)) {
        let p = spectral_polynomial(&dp);
        let n = p.n();
        for (i, a) in p.coeffs().iter().enumerate() {
            for (_, c) in a.terms() {
                let signed = if (n - i).is_multiple_of(2) { c.clone() } else { Integer::from(-c) };
                prop_assert!(signed > 0);
            }
        }
    }

    #[test]
    fn second_coefficient_is_minus_trace(dp in pair_strategy(6)) {
        let p = spectral_polynomial(&dp);
        let n = p.n();
        let y = Rational::from((3, 2));
        let trace = weighted_laplacian(&dp, &y).trace();
        prop_assert_eq!(p.evaluate_y(&y).coeff(n - 1), -trace);
    }

    #[test]
    fn evaluation_matches_weighted_laplacian(dp in pair_strategy(5), q in 2u64..12, r in -2i64..=1) {
        let y = level_node(q, r);
        let direct = charpoly_division_free(&weighted_laplacian(&dp, &y));
        prop_assert_eq!(spectral_polynomial(&dp).evaluate_y(&y), direct);
    }

    #[test]
    fn unit_labels_give_laplacian_charpoly(g in graph_strategy(6)) {
        let ones: Vec<(usize, usize, i64)> = g.edges().iter().map(|&(u, v)| (u, v, 1)).collect();
        let dp = DiffusionPair::new_allow_repeated_labels(g.n(), &ones).unwrap();
        let p = spectral_polynomial(&dp);
        prop_assert_eq!(p.evaluate_y(&Rational::from(1)), charpoly_division_free(&laplacian(&g)));
    }

    #[test]
    fn polynomial_invariant_under_relabelling(dp in pair_strategy(6), perm in permutation(6)) {
        let n = dp.n();
        let perm: Vec<usize> = perm.into_iter().filter(|&v| v <= n).collect();
        let moved: Vec<(usize, usize, i64)> = dp
            .weighted_edges()
            .map(|(u, v, a)| (perm[u - 1], perm[v - 1], a as i64))
            .collect();
        let other = DiffusionPair::new(n, &moved).unwrap();
        prop_assert_eq!(spectral_polynomial(&dp), spectral_polynomial(&other));
    }

    #[test]
    fn canonical_form_is_invariant(g in graph_strategy(7), perm in permutation(7)) {
        let perm: Vec<usize> = perm.into_iter().filter(|&v| v <= g.n()).collect();
        let h = g.permuted(&perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn reconstruction_round_trip(g in connected_strategy(6)) {
        let dp = DiffusionPair::with_powers_of_two(&g).unwrap();
        let back = reconstruct_from_polynomial(&spectral_polynomial(&dp)).unwrap();
        prop_assert!(is_isomorphic(back.graph(), &g));
        prop_assert_eq!(back.labels().iter().sum::<u64>(), dp.label_sum());
    }

    #[test]
    fn polynomial_text_round_trip(dp in pair_strategy(5)) {
        let p = spectral_polynomial(&dp);
        let text = p.to_text();
        let back = SpectralPolynomial::from_text(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn pair_text_round_trip(dp in pair_strategy(6)) {
        let text = dp.to_text();
        let back = DiffusionPair::from_text(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn powers_of_two_are_subset_sum_distinct(m in 0usize..12) {
        let labels: Vec<u64> = (0..m).map(|i| 1 << i).collect();
        prop_assert!(is_subset_sum_distinct(&labels));
    }

    #[test]
    fn message_round_trip(q in 2u64..100_000, n in 1usize..9, labels in proptest::collection::vec(1u64..1000, 0..8)) {
        let msgs = [
            GameMessage::ChoosePrime { q },
            GameMessage::ChooseDelta { labels: Some(labels), scheme: None },
            GameMessage::Submit { n, edges: vec![(1, n)] },
            GameMessage::Error { message: format!("bad {q}") },
        ];
        for m in msgs {
            prop_assert_eq!(GameMessage::from_line(&m.to_line()).unwrap(), m);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn spectrum_text_round_trip(g in connected_strategy(4), q in prop::sample::select(vec![3u64, 5, 7, 101])) {
        let dp = DiffusionPair::with_powers_of_two(&g).unwrap();
        let s = simulate_spectrum(&dp, q, -1, 1, 96).unwrap();
        let text = s.to_text();
        let back = SpectrumSample::from_text(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!((back.components(), back.width()), (1, 3));
    }

    #[test]
    fn level_sums_match_traces(g in connected_strategy(4), q in 2u64..20) {
        let dp = DiffusionPair::with_powers_of_two(&g).unwrap();
        let s = simulate_spectrum(&dp, q, 0, 1, 128).unwrap();
        let mut total = rug::Float::new(s.values[0].prec());
        for v in &s.values {
            total += v;
        }
        let exact = weighted_laplacian(&dp, &level_node(q, 0)).trace()
            + weighted_laplacian(&dp, &level_node(q, 1)).trace();
        let err = rug::Float::with_val(256, &total - &exact).abs();
        let scale = rug::Float::with_val(256, &exact).abs() + 1u32;
        prop_assert!(err < scale >> 100u32);
    }
}
