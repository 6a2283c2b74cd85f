//! Counting words by weight and discrepancy.
//!
//! For a fixed word `x` of weight `j`, a word `y` of weight `i` with `d11(y, x) = a`
//! has `δ(y, x) = (j − a) + γ(i − a)`. The number of such `y` is
//! `C(j, a)·C(n − j, i − a)`, which is `λ(i, j, s)` for `s = (j − a, i − a)`.

use std::cmp::Ordering;

use crate::channel::ChannelParams;
use crate::discrepancy::{compare_lattice, DiscrepancyValue, LatticeValue, TIE_EPSILON};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn as_natural(v: f64) -> Option<u64> {
    let r = v.round();
    if r >= 0.0 && (v - r).abs() <= TIE_EPSILON {
        Some(r as u64)
    } else {
        None
    }
}

/// The generalized binomial: `C(a, b)` when both arguments are natural numbers (within
/// [`TIE_EPSILON`]), `0` otherwise.
pub fn gen_binom(a: f64, b: f64) -> u128 {
    match (as_natural(a), as_natural(b)) {
        (Some(a), Some(b)) => binomial(a, b),
        _ => 0,
    }
}

/// The values of `𝒮 = {a + γb}` strictly below a threshold `h`, with coefficients in
/// `[0, n]`.
///
/// The threshold is carried doubled, as the exact pair `2h = h_unit + γ·h_gamma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SValueSet {
    pub doubled_threshold: LatticeValue,
    pub members: Vec<DiscrepancyValue>,
}

impl SValueSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &DiscrepancyValue) -> bool {
        self.members.contains(s)
    }
}

/// Whether `s < h` where `doubled_threshold = 2h`.
pub fn below_threshold(
    ch: &ChannelParams,
    s: DiscrepancyValue,
    doubled_threshold: LatticeValue,
) -> bool {
    compare_lattice(ch, s.lattice() * 2, doubled_threshold) == Ordering::Less
}

/// `𝒮(h)` for `2h = h_unit + γ·h_gamma`, sorted by value.
///
/// With `γ = 1` distinct pairs of equal value are collapsed to a single representative
/// (the one with the smallest `c10`).
pub fn enumerate_s(ch: &ChannelParams, n: u32, h_unit: i64, h_gamma: i64) -> SValueSet {
    let doubled_threshold = LatticeValue::new(h_unit, h_gamma);
    let mut members = Vec::new();
    for c10 in 0..=n {
        for c01 in 0..=n {
            let s = DiscrepancyValue::new(c01, c10);
            if below_threshold(ch, s, doubled_threshold) {
                members.push(s);
            }
        }
    }
    if ch.is_symmetric() {
        members.sort_by_key(|s| (s.c01 + s.c10, s.c10));
        members.dedup_by_key(|s| s.c01 + s.c10);
    } else {
        members.sort_by(|a, b| {
            a.value(ch.gamma())
                .total_cmp(&b.value(ch.gamma()))
                .then(a.cmp(b))
        });
    }
    SValueSet {
        doubled_threshold,
        members,
    }
}

/// `λ(i, j, s)` for the exact pair `s = (c01, c10)`: the number of words of weight `i`
/// at discrepancy `s` from a fixed word of weight `j`.
pub fn lambda(n: u32, i: u32, j: u32, s: DiscrepancyValue) -> u128 {
    if i > n || j > n || s.c01 > j || s.c10 > n - j {
        return 0;
    }
    let a = j - s.c01;
    if a + s.c10 != i {
        return 0;
    }
    binomial(j as u64, a as u64) * binomial((n - j) as u64, s.c10 as u64)
}

/// `λ(i, j, s)` summed over every pair whose value ties `s` under the tie policy.
///
/// For irrational `γ` this is [`lambda`]; for `γ = 1` it aggregates all pairs with the
/// same sum.
pub fn lambda_by_value(ch: &ChannelParams, n: u32, i: u32, j: u32, s: DiscrepancyValue) -> u128 {
    let mut total = 0;
    for c01 in 0..=j.min(n) {
        for c10 in 0..=(n - j.min(n)) {
            let t = DiscrepancyValue::new(c01, c10);
            if compare_lattice(ch, t.lattice(), s.lattice()) == Ordering::Equal {
                total += lambda(n, i, j, t);
            }
        }
    }
    total
}

/// `λ` through its closed form with fractional binomial arguments,
/// `⌊j, (iγ − s + j)/(γ + 1)⌋ · ⌊n − j, (s − j + i)/(γ + 1)⌋`, evaluated in floating
/// point for a real `s`.
pub fn lambda_fractional(ch: &ChannelParams, n: u32, i: u32, j: u32, s: f64) -> u128 {
    let g = ch.gamma();
    let (n, i, j) = (n as f64, i as f64, j as f64);
    gen_binom(j, (i * g - s + j) / (g + 1.0)) * gen_binom(n - j, (s - j + i) / (g + 1.0))
}

/// Pairs `s` with nonzero `λ(i, j, s)` and `s < h` (`2h` given), along with `λ(i, j, s)`.
///
/// Because `(i, j, s)` determines `d11`, summing over these pairs equals summing
/// `λ(i, j, s)` over `s ∈ 𝒮(h)`, for any `γ`.
pub fn sphere_terms(
    ch: &ChannelParams,
    n: u32,
    i: u32,
    j: u32,
    doubled_threshold: LatticeValue,
) -> impl Iterator<Item = (DiscrepancyValue, u128)> + '_ {
    sphere_terms_where(n, i, j, move |s| below_threshold(ch, s, doubled_threshold))
}

/// Like [`sphere_terms`], with membership in `𝒮(h)` decided by `below`.
pub fn sphere_terms_where<F>(
    n: u32,
    i: u32,
    j: u32,
    below: F,
) -> impl Iterator<Item = (DiscrepancyValue, u128)>
where
    F: Fn(DiscrepancyValue) -> bool,
{
    let lo = i.saturating_sub(n - j);
    let hi = i.min(j);
    (lo..=hi).filter_map(move |a| {
        let s = DiscrepancyValue::new(j - a, i - a);
        if below(s) {
            Some((s, binomial(j as u64, a as u64) * binomial((n - j) as u64, (i - a) as u64)))
        } else {
            None
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_binomial() {
        assert_eq!(gen_binom(5.0, 2.0), 10);
        assert_eq!(gen_binom(5.0, 2.3), 0);
        assert_eq!(gen_binom(4.0, 6.0), 0);
        assert_eq!(gen_binom(-1.0, 0.0), 0);
        assert_eq!(gen_binom(6.0 + 1e-12, 3.0 - 1e-12), 20);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(10, 3), 120);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
        assert_eq!(binomial(3, 4), 0);
    }

    #[test]
    fn s_set_below_two_and_a_half() {
        let ch = ChannelParams::strict(0.1, 0.4).unwrap();
        // 2h = 5 means h = 2.5.
        let set = enumerate_s(&ch, 4, 5, 0);
        assert_eq!(
            set.members,
            vec![
                DiscrepancyValue::new(0, 0),
                DiscrepancyValue::new(1, 0),
                DiscrepancyValue::new(2, 0),
                DiscrepancyValue::new(0, 1),
            ]
        );
    }

    #[test]
    fn s_set_empty_for_nonpositive_threshold() {
        let ch = ChannelParams::strict(0.1, 0.4).unwrap();
        assert!(enumerate_s(&ch, 5, 0, 0).is_empty());
        assert!(enumerate_s(&ch, 5, 2, -1).is_empty());
    }

    #[test]
    fn s_set_collapses_for_symmetric_channel() {
        let ch = ChannelParams::strict(0.2, 0.2).unwrap();
        let set = enumerate_s(&ch, 3, 7, 0);
        let sums: Vec<u32> = set.members.iter().map(|s| s.c01 + s.c10).collect();
        assert_eq!(sums, vec![0, 1, 2, 3]);
    }

    #[test]
    fn lambda_at_zero_discrepancy() {
        for i in 0..=5 {
            for j in 0..=5 {
                let expected = u128::from(i == j);
                assert_eq!(lambda(5, i, j, DiscrepancyValue::ZERO), expected);
            }
        }
    }

    #[test]
    fn fractional_form_agrees_on_a_sample() {
        let ch = ChannelParams::strict(0.1, 0.3).unwrap();
        let s = DiscrepancyValue::new(2, 1);
        assert_eq!(lambda(6, 2, 3, s), 3 * 3);
        assert_eq!(lambda_fractional(&ch, 6, 2, 3, s.value(ch.gamma())), 9);
    }
}
