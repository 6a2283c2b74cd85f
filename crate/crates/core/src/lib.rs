//! Discrepancy-based coding for the binary asymmetric channel.
//!
//! The channel flips `0 → 1` with probability `p` and `1 → 0` with probability `q`,
//! `0 < p <= q < 1/2`. With `γ = ln(p/(1−q)) / ln(q/(1−p))` the discrepancy
//! `δ(y, x) = d01(y, x) + γ·d10(y, x)` orders codewords exactly as the likelihood
//! `P(y | x)` does, so minimum-discrepancy decoding is maximum-likelihood decoding.
//!
//! The crate provides:
//!
//! - [`channel`]: channel parameters, `γ` and transition probabilities
//! - [`discrepancy`]: `δ`, `δ̂` and the exact lattice arithmetic behind them
//! - [`decoder`]: maximum-likelihood, minimum-discrepancy and minimum-distance decoders
//! - [`counting`] and [`pud`]: the probability of unsuccessful decoding and its bounds
//! - [`bounds`] and [`graphs`]: code-size bounds and exhaustive search

pub mod bits;
pub mod bounds;
pub mod channel;
pub mod code;
pub mod counting;
pub mod decoder;
pub mod discrepancy;
pub mod error;
pub mod graphs;
pub mod pud;
pub mod threshold;

pub use bits::BitVector;
pub use channel::{ChannelMode, ChannelParams};
pub use code::Code;
pub use decoder::{DecodeResult, DecoderKind};
pub use discrepancy::{DiscrepancyValue, LatticeValue};
pub use error::{Error, Result};
pub use graphs::{DiscrepancyGraph, GraphKind};
pub use threshold::Threshold;
