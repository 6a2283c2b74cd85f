mod common;

use std::cmp::Ordering;

use bacodes::discrepancy::{
    compare_lattice, delta, delta_hat, delta_hat_exact, min_discrepancy, min_hamming_distance,
    min_symmetric_discrepancy_exact,
};
use bacodes::{BitVector, ChannelParams, Code, LatticeValue};
use common::*;
use proptest::prelude::*;

fn channel() -> impl Strategy<Value = (f64, f64)> {
    (0.01f64..0.45).prop_flat_map(|p| (Just(p), p..0.49))
}

fn word_pair(max_len: usize) -> impl Strategy<Value = (BitVector, BitVector)> {
    (2..=max_len).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<bool>(), n),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(|(a, b)| (BitVector::from_bits(a).unwrap(), BitVector::from_bits(b).unwrap()))
    })
}

fn code_strategy(max_len: usize, max_size: usize) -> impl Strategy<Value = Code> {
    (2..=max_len).prop_flat_map(move |n| {
        prop::collection::hash_set(0u64..(1 << n), 2..=max_size.min(1 << n)).prop_map(move |set| {
            let words = set.into_iter().map(|u| BitVector::from_index(u, n).unwrap()).collect();
            Code::new(words).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn pair_counts_match_positional_walk((y, x) in word_pair(200)) {
        let c = y.pair_counts(&x).unwrap();
        prop_assert_eq!((c.d00, c.d01, c.d10, c.d11), naive_counts(&y, &x));
        prop_assert_eq!(y.hamming_distance(&x).unwrap(), naive_hamming(&y, &x));
        prop_assert_eq!(y.weight(), naive_weight(&y));
    }

    #[test]
    fn delta_matches_definition((p, q) in channel(), (y, x) in word_pair(130)) {
        let ch = ChannelParams::strict(p, q).unwrap();
        let g = gamma_of(p, q);
        let tol = 1e-9 * (1.0 + y.len() as f64 * g);
        prop_assert!((delta(&ch, &y, &x).unwrap().value(ch.gamma()) - naive_delta(g, &y, &x)).abs() < tol);
        prop_assert!((delta_hat(&ch, &y, &x).unwrap() - naive_delta_hat(g, &y, &x)).abs() < tol);
    }

    #[test]
    fn delta_hat_is_symmetric((y, x) in word_pair(130)) {
        prop_assert_eq!(delta_hat_exact(&y, &x).unwrap(), delta_hat_exact(&x, &y).unwrap());
    }

    #[test]
    fn swap_identities((p, q) in channel(), (y, x) in word_pair(64)) {
        let ch = ChannelParams::strict(p, q).unwrap();
        let k = y.weight() as i64 - x.weight() as i64;
        let yx = delta(&ch, &y, &x).unwrap().lattice();
        let xy = delta(&ch, &x, &y).unwrap().lattice();
        prop_assert_eq!(compare_lattice(&ch, yx, xy + LatticeValue::gamma_minus_one(k)), Ordering::Equal);
        let dh = y.hamming_distance(&x).unwrap() as i64;
        prop_assert_eq!(compare_lattice(&ch, yx + xy, LatticeValue::new(dh, dh)), Ordering::Equal);
    }

    #[test]
    fn code_chain((p, q) in channel(), code in code_strategy(9, 10)) {
        let ch = ChannelParams::strict(p, q).unwrap();
        let dh = min_symmetric_discrepancy_exact(&ch, &code).unwrap();
        let d = min_discrepancy(&ch, &code).unwrap().lattice();
        let h = min_hamming_distance(&code) as i64;
        prop_assert_ne!(compare_lattice(&ch, dh, LatticeValue::new(h, 0)), Ordering::Greater);
        prop_assert_ne!(compare_lattice(&ch, LatticeValue::new(h, 0), d), Ordering::Greater);
        prop_assert_ne!(compare_lattice(&ch, d * 2, LatticeValue::new(h, h)), Ordering::Greater);
        prop_assert_ne!(compare_lattice(&ch, dh, d), Ordering::Greater);
    }

    #[test]
    fn minimum_discrepancy_is_a_brute_force_minimum((p, q) in channel(), code in code_strategy(7, 8)) {
        let ch = ChannelParams::strict(p, q).unwrap();
        let g = gamma_of(p, q);
        let mut best = f64::INFINITY;
        let mut best_hat = f64::INFINITY;
        for (i, a) in code.words().iter().enumerate() {
            for (j, b) in code.words().iter().enumerate() {
                if i != j {
                    best = best.min(naive_delta(g, a, b));
                    best_hat = best_hat.min(naive_delta_hat(g, a, b));
                }
            }
        }
        prop_assert!((min_discrepancy(&ch, &code).unwrap().value(ch.gamma()) - best).abs() < 1e-9);
        prop_assert!((min_symmetric_discrepancy_exact(&ch, &code).unwrap().value(ch.gamma()) - best_hat).abs() < 1e-9);
    }
}

#[test]
fn comparator_agrees_with_floats_away_from_ties() {
    // Exhaustive over small lattice points for several channels.
    for (p, q) in [(0.1, 0.2), (0.1, 0.4), (0.05, 0.3), (0.2, 0.2)] {
        let ch = ChannelParams::strict(p, q).unwrap();
        let g = gamma_of(p, q);
        for a in -6..=6 {
            for b in -6..=6 {
                let v = LatticeValue::new(a, b);
                let f = a as f64 + g * b as f64;
                let expected = if f.abs() < 1e-9 {
                    Ordering::Equal
                } else if f < 0.0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
                assert_eq!(compare_lattice(&ch, v, LatticeValue::ZERO), expected, "{v} at gamma {g}");
            }
        }
    }
}

#[test]
fn asymmetric_pair_values() {
    let ch = ChannelParams::strict(0.1, 0.4).unwrap();
    let code = Code::parse_words(&["100", "011"]).unwrap();
    assert!((min_discrepancy(&ch, &code).unwrap().value(ch.gamma()) - 4.21).abs() < 0.005);
    let x: BitVector = "111".parse().unwrap();
    let y: BitVector = "100".parse().unwrap();
    assert_eq!(delta(&ch, &y, &x).unwrap().lattice(), LatticeValue::new(2, 0));
    assert_eq!(delta(&ch, &x, &y).unwrap().lattice(), LatticeValue::new(0, 2));
}
