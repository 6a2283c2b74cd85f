//! The discrepancy `δ(y, x) = d01(y, x) + γ·d10(y, x)` and the symmetric discrepancy
//! `δ̂(y, x) = δ(y, x) − ω(y)(γ − 1)`.
//!
//! Both are carried exactly as integer pairs `unit + γ·gamma` and only turned into
//! floating point values at comparison and output boundaries.
//!
//! # Tie policy
//!
//! Two values are equal when their integer pairs coincide, or when `γ = 1` and the
//! pair sums coincide. Otherwise they are compared numerically and values closer than
//! [`TIE_EPSILON`] are reported as equal. For rational `γ` genuinely different pairs can
//! collide; the tolerance makes such collisions show up as ties rather than as an
//! arbitrary order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::bits::BitVector;
use crate::channel::ChannelParams;
use crate::code::Code;
use crate::error::Result;

/// Numeric tie tolerance used by every discrepancy comparison.
pub const TIE_EPSILON: f64 = 1e-9;

/// An element `unit + γ·gamma` of the lattice `Z + γZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct LatticeValue {
    pub unit: i64,
    pub gamma: i64,
}

impl LatticeValue {
    pub const ZERO: Self = Self { unit: 0, gamma: 0 };

    pub const fn new(unit: i64, gamma: i64) -> Self {
        Self { unit, gamma }
    }

    /// `k(γ − 1)`.
    pub const fn gamma_minus_one(k: i64) -> Self {
        Self { unit: -k, gamma: k }
    }

    pub fn value(&self, gamma: f64) -> f64 {
        if self.gamma == 0 {
            self.unit as f64
        } else {
            self.unit as f64 + gamma * self.gamma as f64
        }
    }

    /// Sign of `unit + γ·gamma` under the tie policy.
    pub fn sign(&self, ch: &ChannelParams) -> Ordering {
        let (a, b) = (self.unit, self.gamma);
        if b == 0 {
            return a.cmp(&0);
        }
        if a == 0 {
            return b.cmp(&0);
        }
        if ch.is_symmetric() {
            return (a + b).cmp(&0);
        }
        if (a > 0) == (b > 0) {
            return a.cmp(&0);
        }
        let v = self.value(ch.gamma());
        if v.abs() < TIE_EPSILON {
            Ordering::Equal
        } else if v < 0.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl Add for LatticeValue {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.unit + o.unit, self.gamma + o.gamma)
    }
}

impl Sub for LatticeValue {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.unit - o.unit, self.gamma - o.gamma)
    }
}

impl Neg for LatticeValue {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.unit, -self.gamma)
    }
}

impl Mul<i64> for LatticeValue {
    type Output = Self;
    fn mul(self, k: i64) -> Self {
        Self::new(self.unit * k, self.gamma * k)
    }
}

impl fmt::Display for LatticeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gamma < 0 {
            write!(f, "{}-{}*g", self.unit, -self.gamma)
        } else {
            write!(f, "{}+{}*g", self.unit, self.gamma)
        }
    }
}

/// A value of `δ`: `c01 + γ·c10` with nonnegative integer coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct DiscrepancyValue {
    pub c01: u32,
    pub c10: u32,
}

impl DiscrepancyValue {
    pub const ZERO: Self = Self { c01: 0, c10: 0 };

    pub const fn new(c01: u32, c10: u32) -> Self {
        Self { c01, c10 }
    }

    pub fn value(&self, gamma: f64) -> f64 {
        self.lattice().value(gamma)
    }

    pub fn lattice(&self) -> LatticeValue {
        LatticeValue::new(self.c01 as i64, self.c10 as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.c01 == 0 && self.c10 == 0
    }
}

impl From<DiscrepancyValue> for LatticeValue {
    fn from(d: DiscrepancyValue) -> Self {
        d.lattice()
    }
}

impl fmt::Display for DiscrepancyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.lattice().fmt(f)
    }
}

/// Total order on lattice values under the tie policy.
pub fn compare_lattice(ch: &ChannelParams, a: LatticeValue, b: LatticeValue) -> Ordering {
    if a == b {
        return Ordering::Equal;
    }
    (a - b).sign(ch)
}

/// Total order on discrepancy values under the tie policy.
pub fn compare_disc(ch: &ChannelParams, a: DiscrepancyValue, b: DiscrepancyValue) -> Ordering {
    compare_lattice(ch, a.lattice(), b.lattice())
}

/// `δ(y, x)`.
pub fn delta(ch: &ChannelParams, y: &BitVector, x: &BitVector) -> Result<DiscrepancyValue> {
    ch.require_strict()?;
    let c = y.pair_counts(x)?;
    Ok(DiscrepancyValue::new(c.d01, c.d10))
}

/// `δ̂(y, x)` as the exact pair `(d^H + d11) + γ·(−d11)`, i.e. `d^H − (γ − 1)·d11`.
pub fn delta_hat_exact(y: &BitVector, x: &BitVector) -> Result<LatticeValue> {
    let c = y.pair_counts(x)?;
    let d11 = c.d11 as i64;
    Ok(LatticeValue::new(c.hamming_distance() as i64 + d11, -d11))
}

/// `δ̂(y, x)` as a real number. May be negative.
pub fn delta_hat(ch: &ChannelParams, y: &BitVector, x: &BitVector) -> Result<f64> {
    ch.require_strict()?;
    Ok(delta_hat_exact(y, x)?.value(ch.gamma()))
}

pub fn hamming_distance(y: &BitVector, x: &BitVector) -> Result<u32> {
    y.hamming_distance(x)
}

pub fn hamming_weight(x: &BitVector) -> u32 {
    x.weight()
}

/// `d^H(C)`.
pub fn min_hamming_distance(code: &Code) -> u32 {
    code.distinct_pairs()
        .map(|(a, b)| a.hamming_distance(b).expect("codewords share a length"))
        .min()
        .expect("a code has at least two words")
}

/// `δ(C)`: the minimum of `δ(x, x')` over ordered pairs of distinct codewords.
pub fn min_discrepancy(ch: &ChannelParams, code: &Code) -> Result<DiscrepancyValue> {
    ch.require_strict()?;
    let mut best: Option<DiscrepancyValue> = None;
    for (a, b) in code.distinct_pairs() {
        for (y, x) in [(a, b), (b, a)] {
            let d = delta(ch, y, x)?;
            best = match best {
                Some(cur) if compare_disc(ch, d, cur) != Ordering::Less => Some(cur),
                _ => Some(d),
            };
        }
    }
    Ok(best.expect("a code has at least two words"))
}

/// `δ̂(C)` as an exact pair.
pub fn min_symmetric_discrepancy_exact(ch: &ChannelParams, code: &Code) -> Result<LatticeValue> {
    ch.require_strict()?;
    let mut best: Option<LatticeValue> = None;
    for (a, b) in code.distinct_pairs() {
        let d = delta_hat_exact(a, b)?;
        best = match best {
            Some(cur) if compare_lattice(ch, d, cur) != Ordering::Less => Some(cur),
            _ => Some(d),
        };
    }
    Ok(best.expect("a code has at least two words"))
}

/// `δ̂(C)`. May be negative.
pub fn min_symmetric_discrepancy(ch: &ChannelParams, code: &Code) -> Result<f64> {
    Ok(min_symmetric_discrepancy_exact(ch, code)?.value(ch.gamma()))
}
