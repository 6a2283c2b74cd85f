mod common;

use bacodes::decoder::{decode, decode_all, decode_ml, GuaranteedRegions};
use bacodes::{ChannelParams, DecodeResult, DecoderKind, Error};
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn as_index(r: DecodeResult) -> Option<usize> {
    match r {
        DecodeResult::Codeword(k) => Some(k),
        DecodeResult::Failure => None,
    }
}

#[test]
fn ml_decoder_matches_naive_likelihoods() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..150 {
        let n = rng.random_range(2..=8);
        let m = rng.random_range(2..=10.min(1 << n));
        let code = random_code(&mut rng, n, m);
        let (p, q) = random_channel(&mut rng);
        let ch = ChannelParams::strict(p, q).unwrap();
        let batch = decode_all(DecoderKind::MaximumLikelihood, &ch, &code).unwrap();
        for (y, got) in all_words(n).iter().zip(&batch) {
            assert_eq!(as_index(*got), naive_ml_decode(p, q, &code, y), "y = {y}");
            assert_eq!(decode_ml(&ch, &code, y).unwrap(), *got);
        }
    }
}

#[test]
fn discrepancy_decoder_is_maximum_likelihood() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..150 {
        let n = rng.random_range(2..=8);
        let m = rng.random_range(2..=10.min(1 << n));
        let code = random_code(&mut rng, n, m);
        let (p, q) = random_channel(&mut rng);
        let ch = ChannelParams::strict(p, q).unwrap();
        let ml = decode_all(DecoderKind::MaximumLikelihood, &ch, &code).unwrap();
        let disc = decode_all(DecoderKind::MinimumDiscrepancy, &ch, &code).unwrap();
        assert_eq!(ml, disc, "(p, q) = ({p}, {q}), C = {:?}", code.words());
    }
}

#[test]
fn hamming_decoder_is_maximum_likelihood_when_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..50 {
        let n = rng.random_range(2..=7);
        let m = rng.random_range(2..=8.min(1 << n));
        let code = random_code(&mut rng, n, m);
        let p = rng.random_range(0.01..0.49);
        let ch = ChannelParams::strict(p, p).unwrap();
        let ml = decode_all(DecoderKind::MaximumLikelihood, &ch, &code).unwrap();
        let ham = decode_all(DecoderKind::MinimumHamming, &ch, &code).unwrap();
        assert_eq!(ml, ham);
    }
}

#[test]
fn guaranteed_regions_decode_and_are_disjoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..120 {
        let n = rng.random_range(2..=6);
        let m = rng.random_range(2..=8.min(1 << n));
        let code = random_code(&mut rng, n, m);
        let (p, q) = random_channel(&mut rng);
        let ch = ChannelParams::strict(p, q).unwrap();
        let regions = GuaranteedRegions::new(&ch, &code).unwrap();
        for y in all_words(n) {
            let decoded = naive_ml_decode(p, q, &code, &y);
            let mut hits = [0, 0];
            for (k, x) in code.words().iter().enumerate() {
                let r1 = regions.region_1(x, &y).unwrap();
                let r2 = regions.region_2(x, &y).unwrap();
                if r1 || r2 {
                    assert_eq!(decoded, Some(k), "y = {y}, x = {x}");
                }
                hits[0] += usize::from(r1);
                hits[1] += usize::from(r2);
            }
            assert!(hits[0] <= 1 && hits[1] <= 1, "y = {y} lies in two regions");
        }
    }
}

#[test]
fn regions_reject_non_codewords() {
    let ch = ChannelParams::strict(0.1, 0.4).unwrap();
    let code = bacodes::Code::parse_words(&["000", "111"]).unwrap();
    let regions = GuaranteedRegions::new(&ch, &code).unwrap();
    let x = "010".parse().unwrap();
    let y = "000".parse().unwrap();
    assert_eq!(regions.region_1(&x, &y), Err(Error::NotACodeword));
}

#[test]
fn length_mismatch_is_an_error() {
    let ch = ChannelParams::strict(0.1, 0.4).unwrap();
    let code = bacodes::Code::parse_words(&["000", "111"]).unwrap();
    let y = "0000".parse().unwrap();
    for kind in [DecoderKind::MaximumLikelihood, DecoderKind::MinimumDiscrepancy, DecoderKind::MinimumHamming] {
        assert!(matches!(decode(kind, &ch, &code, &y), Err(Error::LengthMismatch { .. })));
    }
}
