mod common;

use proptest::prelude::*;
use tomolink::connectivity::{
    bridges, bridges_bruteforce, check_conditions, condition_two_characterization, cutvertices,
    cutvertices_bruteforce, is_three_vertex_connected_bruteforce, Method,
};
use tomolink::construction::{
    check_prop4a, classify_link, find_cycle_pair, grow_induced_cycle, is_chordless, is_face,
    refine_to_face, verify_certificate, SearchLimits, SearchOrder,
};
use tomolink::document::{
    format_rational, parse_network, parse_rational, serialize_network, validate_document,
};
use tomolink::linalg::{int, Rational};
use tomolink::measurement::{identify, lemma1_transform, MeasurementMatrix, DEFAULT_PATH_CAP};
use tomolink::report::{to_text, IdentifyDocument, RoundTripDocument};
use tomolink::simulation::{
    assign_weights, measure_paths, random_network, round_trip, LinkWeights,
};
use tomolink::Network;

use common::*;

prop_compose! {
    fn network(lo: usize, hi: usize)(n in lo..=hi)
        (n in Just(n), extra in 0..=(n * (n - 1) / 2 - n), seed in any::<u64>())
        -> Network {
        random_network(n, extra, seed).unwrap()
    }
}

fn valid(net: &Network) -> bool {
    check_conditions(net, Method::Characterization)
        .unwrap()
        .both_pass()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn characterization_matches_pair_deletion(net in network(4, 10)) {
        let fast = condition_two_characterization(&net).pass;
        prop_assert_eq!(fast, is_three_vertex_connected_bruteforce(&net, true).unwrap());
        prop_assert_eq!(fast, three_connected_augmented(&net));
    }

    #[test]
    fn witness_really_violates(net in network(4, 9)) {
        if let Some((a, b)) = condition_two_characterization(&net).witness {
            let comps = net.delete_nodes(&[a, b].into_iter().collect());
            prop_assert!(comps.len() > 1);
            prop_assert!(comps.iter().any(|c| !c.iter().any(|&u| net.is_monitor(u))));
        }
    }

    #[test]
    fn lowlink_matches_deletion(net in network(4, 10)) {
        prop_assert_eq!(bridges(net.graph()), bridges_bruteforce(net.graph()));
        prop_assert_eq!(cutvertices(net.graph()), cutvertices_bruteforce(net.graph()));
    }

    #[test]
    fn documents_round_trip(net in network(4, 10)) {
        let text = serialize_network(&net);
        let back = parse_network(&text).unwrap();
        prop_assert_eq!(serialize_network(&back), text);
        prop_assert_eq!(back, net);
    }

    #[test]
    fn rationals_round_trip(p in -10_000i64..10_000, q in 1i64..500) {
        let r = Rational::new(p.into(), q.into());
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn incidence_rows_have_one_exterior_link_per_monitor(net in network(4, 8)) {
        let m = MeasurementMatrix::for_network(&net, DEFAULT_PATH_CAP).unwrap();
        let d = &m.decomposition;
        for row in &m.rows {
            let first: i64 = to_ints(&[row[..d.k1()].to_vec()])[0].iter().sum();
            let second: i64 = to_ints(&[row[d.k1()..d.k1() + d.k2()].to_vec()])[0].iter().sum();
            prop_assert_eq!((first, second), (1, 1));
        }
    }

    #[test]
    fn transform_preserves_rank(net in network(4, 8)) {
        prop_assume!(interior_connected(&net));
        let m = MeasurementMatrix::for_network(&net, DEFAULT_PATH_CAP).unwrap();
        let t = lemma1_transform(&m, &net).unwrap();
        prop_assert_eq!(rank_oracle(&to_ints(&t.values())), rank_oracle(&to_ints(&m.rows)));
        prop_assert!(t.provenance_consistent(&m));
    }

    #[test]
    fn identifiability_routes_agree(net in network(4, 8)) {
        let m = MeasurementMatrix::for_network(&net, DEFAULT_PATH_CAP).unwrap();
        let rows = to_ints(&m.rows);
        let fast = m.identifiable_columns();
        prop_assert_eq!(m.rank(), rank_oracle(&rows));
        for (c, (l, _)) in m.columns.iter().enumerate() {
            prop_assert_eq!(fast[c], m.link_identifiable(*l).unwrap());
            prop_assert_eq!(fast[c], unit_in_row_space(&rows, c));
        }
    }

    #[test]
    fn measurements_are_linear(net in network(4, 8), seed in any::<u64>()) {
        let m = MeasurementMatrix::for_network(&net, DEFAULT_PATH_CAP).unwrap();
        let w = assign_weights(&net, seed);
        let doubled = LinkWeights(w.0.iter().map(|(l, x)| (*l, x * int(2))).collect());
        let once = measure_paths(&net, &w, &m.paths).unwrap();
        let twice = measure_paths(&net, &doubled, &m.paths).unwrap();
        prop_assert!(once.iter().zip(&twice).all(|(a, b)| a * int(2) == *b));
    }

    #[test]
    fn round_trips_are_exact_and_deterministic(net in network(4, 8), seed in any::<u64>()) {
        let r = round_trip(&net, seed).unwrap();
        prop_assert!(r.exact_match);
        let a = to_text(&RoundTripDocument::new(&net, &r));
        let b = to_text(&RoundTripDocument::new(&net, &round_trip(&net, seed).unwrap()));
        prop_assert_eq!(&a, &b);
        prop_assert!(validate_document(&a).is_ok());
        let report = identify(&net, DEFAULT_PATH_CAP, None).unwrap();
        prop_assert!(validate_document(&to_text(&IdentifyDocument::new(&net, &report))).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certificates_exist_and_verify(net in network(5, 8)) {
        prop_assume!(valid(&net));
        let limits = SearchLimits::default();
        for l in net.links().into_iter().filter(|&l| net.is_interior_link(l)) {
            let cert = find_cycle_pair(&net, l, &limits, SearchOrder::Canonical).unwrap();
            prop_assert!(verify_certificate(&net, &cert).unwrap().all());
        }
    }

    #[test]
    fn refinement_reaches_a_face(net in network(5, 8)) {
        prop_assume!(valid(&net));
        let limits = SearchLimits::default();
        for l in net.links().into_iter().filter(|&l| net.is_interior_link(l)) {
            let c = grow_induced_cycle(&net, l).unwrap();
            prop_assert!(is_chordless(net.graph(), &c) && c.contains_link(l));
            let face = refine_to_face(&net, &c, l, &limits).unwrap();
            prop_assert!(is_face(&net, &face) && face.contains_link(l));
        }
    }

    #[test]
    fn classification_ignores_search_order(net in network(5, 7)) {
        prop_assume!(valid(&net));
        let limits = SearchLimits::default();
        for l in net.links().into_iter().filter(|&l| net.is_interior_link(l)) {
            let a = classify_link(&net, l, &limits, SearchOrder::Canonical).unwrap();
            let b = classify_link(&net, l, &limits, SearchOrder::Reversed).unwrap();
            prop_assert_eq!(a.verdict, b.verdict);
        }
    }

    #[test]
    fn faces_carry_at_most_one_border_link(net in network(5, 7)) {
        prop_assume!(valid(&net));
        for f in check_prop4a(&net, &SearchLimits::default()).unwrap() {
            prop_assert!(f.border_links <= 1);
            prop_assert!(f.border_links <= f.interior_links);
        }
    }
}
