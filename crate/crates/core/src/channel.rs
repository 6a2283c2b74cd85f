//! The binary asymmetric channel: a `0` is received as `1` with probability `p`, a `1`
//! as `0` with probability `q >= p`, independently on every component.

use crate::bits::{check_same, BitVector};
use crate::error::{Error, Result};

/// Word lengths above this accumulate transition probabilities in log space.
pub const LOG_SPACE_THRESHOLD: usize = 64;

/// How strictly the channel parameters are validated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelMode {
    /// `0 < p <= q < 1/2`. Required by every discrepancy computation.
    Strict,
    /// `0 <= p <= q < 1/2`. Only transition probabilities are meaningful; with `p = 0`
    /// (the Z-channel) `gamma` is `+inf`.
    Permissive,
}

/// Parameters `(p, q)` of a binary asymmetric channel together with
/// `gamma = log_{q/(1-p)} (p/(1-q))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelParams {
    p: f64,
    q: f64,
    gamma: f64,
    ln_ratio_01: f64,
    ln_ratio_10: f64,
    mode: ChannelMode,
}

impl ChannelParams {
    pub fn new(p: f64, q: f64, mode: ChannelMode) -> Result<Self> {
        if !p.is_finite() || !q.is_finite() {
            return Err(Error::InvalidChannel(format!("p = {p}, q = {q} must be finite")));
        }
        if p < 0.0 {
            return Err(Error::InvalidChannel(format!("p = {p} is negative")));
        }
        if p > q {
            return Err(Error::InvalidChannel(format!("p = {p} exceeds q = {q}")));
        }
        if q >= 0.5 {
            return Err(Error::InvalidChannel(format!("q = {q} is not below 1/2")));
        }
        if p == 0.0 && mode == ChannelMode::Strict {
            return Err(Error::InvalidChannel(
                "p = 0 (Z-channel) is only allowed in permissive mode".into(),
            ));
        }
        // ln(q/(1-p)) and ln(p/(1-q)), with ln_1p for the (1 - x) factors.
        let ln_ratio_01 = q.ln() - (-p).ln_1p();
        let ln_ratio_10 = if p == 0.0 {
            f64::NEG_INFINITY
        } else {
            p.ln() - (-q).ln_1p()
        };
        let gamma = if p == 0.0 {
            f64::INFINITY
        } else if p == q {
            1.0
        } else {
            ln_ratio_10 / ln_ratio_01
        };
        Ok(Self {
            p,
            q,
            gamma,
            ln_ratio_01,
            ln_ratio_10,
            mode,
        })
    }

    pub fn strict(p: f64, q: f64) -> Result<Self> {
        Self::new(p, q, ChannelMode::Strict)
    }

    pub fn permissive(p: f64, q: f64) -> Result<Self> {
        Self::new(p, q, ChannelMode::Permissive)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mode(&self) -> ChannelMode {
        self.mode
    }

    /// `p == q`: the binary symmetric channel, where `gamma == 1` exactly.
    pub fn is_symmetric(&self) -> bool {
        self.p == self.q
    }

    /// `q / (1 - p)`, the factor contributed by each `d01` disagreement.
    pub fn ratio_01(&self) -> f64 {
        self.q / (1.0 - self.p)
    }

    /// `p / (1 - q)`, the factor contributed by each `d10` disagreement.
    pub fn ratio_10(&self) -> f64 {
        self.p / (1.0 - self.q)
    }

    /// `(ln(q/(1-p)), ln(p/(1-q)))`; `gamma` is their quotient (second over first).
    pub fn log_ratios(&self) -> (f64, f64) {
        (self.ln_ratio_01, self.ln_ratio_10)
    }

    pub(crate) fn require_strict(&self) -> Result<()> {
        match self.mode {
            ChannelMode::Strict => Ok(()),
            ChannelMode::Permissive => Err(Error::RequiresStrictChannel),
        }
    }

    /// Single-use probability of receiving `received` when `sent` was transmitted.
    pub fn bit_prob(&self, received: bool, sent: bool) -> f64 {
        match (received, sent) {
            (false, false) => 1.0 - self.p,
            (true, false) => self.p,
            (false, true) => self.q,
            (true, true) => 1.0 - self.q,
        }
    }
}

/// `P^n(y | x)` as the product of per-component probabilities.
pub fn transition_prob(ch: &ChannelParams, y: &BitVector, x: &BitVector) -> Result<f64> {
    check_same(y, x)?;
    if y.len() > LOG_SPACE_THRESHOLD {
        let log: f64 = y
            .iter()
            .zip(x.iter())
            .map(|(yi, xi)| ch.bit_prob(yi, xi).ln())
            .sum();
        return Ok(log.exp());
    }
    Ok(y.iter()
        .zip(x.iter())
        .map(|(yi, xi)| ch.bit_prob(yi, xi))
        .product())
}

/// `P^n(y | x) = (q/(1-p))^d01 (p/(1-q))^d10 (1-q)^ω(y) (1-p)^(n-ω(y))`, with `0^0 = 1`.
pub fn transition_prob_factored(ch: &ChannelParams, y: &BitVector, x: &BitVector) -> Result<f64> {
    let c = y.pair_counts(x)?;
    let n = y.len() as i32;
    let w = y.weight() as i32;
    Ok(factored_prob(ch, c.d01 as i32, c.d10 as i32, w, n))
}

/// The factored probability from counts alone.
pub(crate) fn factored_prob(ch: &ChannelParams, d01: i32, d10: i32, weight_y: i32, n: i32) -> f64 {
    if n as usize > LOG_SPACE_THRESHOLD {
        if d10 > 0 && ch.p == 0.0 {
            return 0.0;
        }
        let mut log = d01 as f64 * ch.ln_ratio_01
            + weight_y as f64 * (-ch.q).ln_1p()
            + (n - weight_y) as f64 * (-ch.p).ln_1p();
        if d10 > 0 {
            log += d10 as f64 * ch.ln_ratio_10;
        }
        return log.exp();
    }
    // powi(0) is 1 even for a zero base, which is the 0^0 = 1 convention.
    ch.ratio_01().powi(d01)
        * ch.ratio_10().powi(d10)
        * (1.0 - ch.q).powi(weight_y)
        * (1.0 - ch.p).powi(n - weight_y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::all_words;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn gamma_values() {
        assert!(close(ChannelParams::strict(0.1, 0.4).unwrap().gamma(), 2.21, 0.005));
        assert!(close(ChannelParams::strict(0.1, 0.2).unwrap().gamma(), 1.38, 0.005));
        assert!(close(ChannelParams::strict(0.1, 0.25).unwrap().gamma(), 1.57, 0.005));
        assert_eq!(ChannelParams::strict(0.3, 0.3).unwrap().gamma(), 1.0);
    }

    #[test]
    fn gamma_matches_plain_formula() {
        let ch = ChannelParams::strict(0.1, 0.4).unwrap();
        let plain = (0.1f64 / 0.6).ln() / (0.4f64 / 0.9).ln();
        assert!(close(ch.gamma(), plain, 1e-14));
        let (l01, l10) = ch.log_ratios();
        assert_eq!(ch.gamma(), l10 / l01);
    }

    #[test]
    fn rejections() {
        assert!(ChannelParams::strict(0.3, 0.2).is_err());
        assert!(ChannelParams::strict(0.1, 0.5).is_err());
        assert!(ChannelParams::strict(-0.1, 0.2).is_err());
        assert!(ChannelParams::strict(0.0, 0.2).is_err());
        assert!(ChannelParams::strict(f64::NAN, 0.2).is_err());
        let z = ChannelParams::permissive(0.0, 0.2).unwrap();
        assert!(z.gamma().is_infinite());
        assert_eq!(z.mode(), ChannelMode::Permissive);
    }

    #[test]
    fn ratio_ordering() {
        for &(p, q) in &[(0.1, 0.4), (0.01, 0.02), (0.2, 0.49), (0.3, 0.3)] {
            let ch = ChannelParams::strict(p, q).unwrap();
            assert!(ch.ratio_10() <= ch.ratio_01());
            assert!(ch.ratio_01() < 1.0);
            assert_eq!(ch.ratio_10() == ch.ratio_01(), p == q);
            assert!(ch.gamma() >= 1.0);
        }
    }

    #[test]
    fn identity_transmission() {
        let ch = ChannelParams::strict(0.1, 0.4).unwrap();
        let x: BitVector = "000".parse().unwrap();
        assert!(close(transition_prob(&ch, &x, &x).unwrap(), 0.729, 1e-15));
        let ones: BitVector = "11".parse().unwrap();
        assert!(close(
            transition_prob_factored(&ch, &ones, &ones).unwrap(),
            0.36,
            1e-15
        ));
    }

    #[test]
    fn z_channel_never_raises_a_zero() {
        let ch = ChannelParams::permissive(0.0, 0.3).unwrap();
        let y: BitVector = "110".parse().unwrap();
        let x: BitVector = "010".parse().unwrap();
        assert_eq!(transition_prob_factored(&ch, &y, &x).unwrap(), 0.0);
        assert_eq!(transition_prob(&ch, &y, &x).unwrap(), 0.0);
        assert!(close(transition_prob_factored(&ch, &x, &y).unwrap(), 0.3 * 0.7, 1e-15));
    }

    #[test]
    fn probabilities_normalize() {
        let ch = ChannelParams::strict(0.07, 0.31).unwrap();
        for x in all_words(6).unwrap() {
            let total: f64 = all_words(6)
                .unwrap()
                .map(|y| transition_prob(&ch, &y, &x).unwrap())
                .sum();
            assert!(close(total, 1.0, 1e-10));
        }
    }

    #[test]
    fn log_space_agrees_with_factored_for_long_words() {
        let ch = ChannelParams::strict(0.05, 0.2).unwrap();
        let y = BitVector::from_bits((0..80).map(|i| i % 7 == 0)).unwrap();
        let x = BitVector::from_bits((0..80).map(|i| i % 4 == 1)).unwrap();
        let a = transition_prob(&ch, &y, &x).unwrap();
        let b = transition_prob_factored(&ch, &y, &x).unwrap();
        assert!(a > 0.0);
        assert!(((a - b) / a).abs() < 1e-12);
    }

    #[test]
    fn length_mismatch() {
        let ch = ChannelParams::strict(0.1, 0.2).unwrap();
        let a: BitVector = "01".parse().unwrap();
        let b: BitVector = "011".parse().unwrap();
        assert!(matches!(
            transition_prob(&ch, &a, &b),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(transition_prob_factored(&ch, &a, &b).is_err());
    }
}
