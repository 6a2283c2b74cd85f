//! Maximum-likelihood, minimum-discrepancy and minimum-Hamming decoders.
//!
//! Every decoder returns the unique optimal codeword or [`DecodeResult::Failure`]; a
//! tie is never broken arbitrarily. For the maximum-likelihood decoder two
//! probabilities within a relative distance of [`ML_RELATIVE_TOLERANCE`] count as tied.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::bits::{check_same, BitVector};
use crate::channel::{factored_prob, transition_prob, ChannelParams};
use crate::code::Code;
use crate::discrepancy::{
    compare_disc, compare_lattice, delta, min_discrepancy, min_symmetric_discrepancy_exact,
    DiscrepancyValue, LatticeValue,
};
use crate::error::{Error, Result};

pub const ML_RELATIVE_TOLERANCE: f64 = 1e-12;

/// Largest `n` accepted by [`decode_all`].
pub const MAX_BATCH_N: usize = 30;

/// Outcome of decoding: the index of the decoded codeword, or the failure marker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecodeResult {
    Codeword(usize),
    Failure,
}

impl DecodeResult {
    pub fn codeword<'a>(&self, code: &'a Code) -> Option<&'a BitVector> {
        match *self {
            DecodeResult::Codeword(i) => Some(code.word(i)),
            DecodeResult::Failure => None,
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, DecodeResult::Failure)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecoderKind {
    MaximumLikelihood,
    MinimumDiscrepancy,
    MinimumHamming,
}

/// Returns the index of the unique best candidate, where `better(a, b)` orders scores
/// with `Less` meaning `a` is strictly better and `Equal` meaning a tie.
fn unique_best<T: Copy>(scores: &[T], better: impl Fn(T, T) -> Ordering) -> DecodeResult {
    let mut best = 0;
    for i in 1..scores.len() {
        if better(scores[i], scores[best]) == Ordering::Less {
            best = i;
        }
    }
    let tied = scores
        .iter()
        .enumerate()
        .any(|(i, &s)| i != best && better(s, scores[best]) != Ordering::Greater);
    if tied {
        DecodeResult::Failure
    } else {
        DecodeResult::Codeword(best)
    }
}

fn check_word(code: &Code, y: &BitVector) -> Result<()> {
    check_same(code.word(0), y)
}

fn compare_probabilities(a: f64, b: f64) -> Ordering {
    // Larger probability is better.
    let scale = a.abs().max(b.abs());
    if scale == 0.0 || (a - b).abs() <= ML_RELATIVE_TOLERANCE * scale {
        Ordering::Equal
    } else if a > b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// `D_C(y)`: the unique codeword maximizing `P^n(y | x)`.
pub fn decode_ml(ch: &ChannelParams, code: &Code, y: &BitVector) -> Result<DecodeResult> {
    check_word(code, y)?;
    let probs = code
        .words()
        .iter()
        .map(|x| transition_prob(ch, y, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(unique_best(&probs, compare_probabilities))
}

/// `D^δ_C(y)`: the unique codeword minimizing `δ(y, x)`.
pub fn decode_min_discrepancy(
    ch: &ChannelParams,
    code: &Code,
    y: &BitVector,
) -> Result<DecodeResult> {
    check_word(code, y)?;
    let ds = code
        .words()
        .iter()
        .map(|x| delta(ch, y, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(unique_best(&ds, |a, b| compare_disc(ch, a, b)))
}

/// `D^H_C(y)`: the unique nearest codeword in Hamming distance.
pub fn decode_min_hamming(code: &Code, y: &BitVector) -> Result<DecodeResult> {
    check_word(code, y)?;
    let ds = code
        .words()
        .iter()
        .map(|x| y.hamming_distance(x))
        .collect::<Result<Vec<_>>>()?;
    Ok(unique_best(&ds, |a: u32, b: u32| a.cmp(&b)))
}

pub fn decode(
    kind: DecoderKind,
    ch: &ChannelParams,
    code: &Code,
    y: &BitVector,
) -> Result<DecodeResult> {
    match kind {
        DecoderKind::MaximumLikelihood => decode_ml(ch, code, y),
        DecoderKind::MinimumDiscrepancy => decode_min_discrepancy(ch, code, y),
        DecoderKind::MinimumHamming => decode_min_hamming(code, y),
    }
}

/// Decodes every word of `F_2^n`, returning results in index order.
///
/// Codewords are packed once; the word space is split across worker threads.
pub fn decode_all(kind: DecoderKind, ch: &ChannelParams, code: &Code) -> Result<Vec<DecodeResult>> {
    let n = code.n();
    if n > MAX_BATCH_N {
        return Err(Error::CapExceeded {
            what: "batch decoding",
            n,
            cap: MAX_BATCH_N,
        });
    }
    if kind == DecoderKind::MinimumDiscrepancy {
        ch.require_strict()?;
    }
    let packed: Vec<u64> = code
        .words()
        .iter()
        .map(|w| w.index().expect("n <= MAX_BATCH_N"))
        .collect();
    let total = 1u64 << n;
    Ok((0..total)
        .into_par_iter()
        .map(|y| decode_packed(kind, ch, &packed, n, y))
        .collect())
}

/// Decodes the word with index `y` against packed codewords.
pub(crate) fn decode_packed(
    kind: DecoderKind,
    ch: &ChannelParams,
    packed: &[u64],
    n: usize,
    y: u64,
) -> DecodeResult {
    let w = y.count_ones() as i32;
    match kind {
        DecoderKind::MaximumLikelihood => {
            let probs: Vec<f64> = packed
                .iter()
                .map(|&x| {
                    let d01 = (!y & x).count_ones() as i32;
                    let d10 = (y & !x).count_ones() as i32;
                    factored_prob(ch, d01, d10, w, n as i32)
                })
                .collect();
            unique_best(&probs, compare_probabilities)
        }
        DecoderKind::MinimumDiscrepancy => {
            let ds: Vec<DiscrepancyValue> = packed
                .iter()
                .map(|&x| DiscrepancyValue::new((!y & x).count_ones(), (y & !x).count_ones()))
                .collect();
            unique_best(&ds, |a, b| compare_disc(ch, a, b))
        }
        DecoderKind::MinimumHamming => {
            let ds: Vec<u32> = packed.iter().map(|&x| (x ^ y).count_ones()).collect();
            unique_best(&ds, |a: u32, b: u32| a.cmp(&b))
        }
    }
}

/// The two sufficient conditions for `D_C(y) = x`, with the code minima precomputed.
#[derive(Clone, Debug)]
pub struct GuaranteedRegions<'a> {
    ch: ChannelParams,
    code: &'a Code,
    min_delta: DiscrepancyValue,
    min_delta_hat: LatticeValue,
}

impl<'a> GuaranteedRegions<'a> {
    pub fn new(ch: &ChannelParams, code: &'a Code) -> Result<Self> {
        Ok(Self {
            ch: *ch,
            code,
            min_delta: min_discrepancy(ch, code)?,
            min_delta_hat: min_symmetric_discrepancy_exact(ch, code)?,
        })
    }

    pub fn min_delta(&self) -> DiscrepancyValue {
        self.min_delta
    }

    pub fn min_delta_hat(&self) -> LatticeValue {
        self.min_delta_hat
    }

    fn prepare(&self, x: &BitVector, y: &BitVector) -> Result<LatticeValue> {
        check_same(x, y)?;
        check_word(self.code, y)?;
        if !self.code.contains(x) {
            return Err(Error::NotACodeword);
        }
        Ok(delta(&self.ch, y, x)?.lattice())
    }

    /// `δ(y, x) < (δ(C) + (ω(y) − ω(x))(γ − 1)) / 2`.
    pub fn region_1(&self, x: &BitVector, y: &BitVector) -> Result<bool> {
        let left = self.prepare(x, y)? * 2;
        let shift = y.weight() as i64 - x.weight() as i64;
        let right = self.min_delta.lattice() + LatticeValue::gamma_minus_one(shift);
        Ok(compare_lattice(&self.ch, left, right) == Ordering::Less)
    }

    /// `δ(y, x) < (δ̂(C) + ω(y)(γ − 1)) / 2`.
    pub fn region_2(&self, x: &BitVector, y: &BitVector) -> Result<bool> {
        let left = self.prepare(x, y)? * 2;
        let right = self.min_delta_hat + LatticeValue::gamma_minus_one(y.weight() as i64);
        Ok(compare_lattice(&self.ch, left, right) == Ordering::Less)
    }
}

/// Whether `y` satisfies the first sufficient condition for decoding to `x`.
pub fn guaranteed_region_1(
    ch: &ChannelParams,
    code: &Code,
    x: &BitVector,
    y: &BitVector,
) -> Result<bool> {
    GuaranteedRegions::new(ch, code)?.region_1(x, y)
}

/// Whether `y` satisfies the second sufficient condition for decoding to `x`.
pub fn guaranteed_region_2(
    ch: &ChannelParams,
    code: &Code,
    x: &BitVector,
    y: &BitVector,
) -> Result<bool> {
    GuaranteedRegions::new(ch, code)?.region_2(x, y)
}
