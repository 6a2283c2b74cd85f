//! Probability of unsuccessful decoding (PUD).
//!
//! `PUD(C) = (1/|C|) Σ_x Σ_{y : D_C(y) ≠ x} P^n(y | x)`, where a decoder failure counts
//! as unsuccessful. Besides the exact value this module evaluates the two analytic upper
//! bounds built from `δ(C)` and `δ̂(C)`:
//!
//! ```text
//! PUD(C) <= 1 − (1/|C|) Σ_j W_j Σ_i (1−q)^i (1−p)^(n−i) Σ_{s ∈ 𝒮(h)} (q/(1−p))^s λ(i, j, s)
//! ```
//!
//! with `h = (δ(C) + (γ−1)(i−j))/2` for the first and `h = (δ̂(C) + i(γ−1))/2` for the
//! second. The power `(q/(1−p))^s` of `s = c01 + γ·c10` is `(q/(1−p))^c01 (p/(1−q))^c10`.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bits::all_words;
use crate::channel::{transition_prob, transition_prob_factored, ChannelParams};
use crate::code::Code;
use crate::counting::sphere_terms;
use crate::decoder::{decode_packed, DecodeResult, DecoderKind};
use crate::discrepancy::{min_discrepancy, min_symmetric_discrepancy_exact, LatticeValue};
use crate::error::{Error, Result};

/// Default largest `n` for exhaustive PUD evaluation.
pub const DEFAULT_EXACT_CAP: usize = 22;

/// How `P^n(y | x)` is evaluated inside the exact PUD sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ProbabilityRoute {
    /// Product of per-component probabilities.
    Direct,
    /// Factored form in terms of `d01`, `d10` and `ω(y)`.
    #[default]
    Factored,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactOptions {
    pub cap: usize,
    pub decoder: DecoderKind,
    pub route: ProbabilityRoute,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_EXACT_CAP,
            decoder: DecoderKind::MaximumLikelihood,
            route: ProbabilityRoute::Factored,
        }
    }
}

/// Exact PUD with maximum-likelihood decoding.
pub fn pud_exact(ch: &ChannelParams, code: &Code) -> Result<f64> {
    pud_exact_with(ch, code, &ExactOptions::default())
}

const CHUNK: u64 = 1 << 12;

pub fn pud_exact_with(ch: &ChannelParams, code: &Code, opts: &ExactOptions) -> Result<f64> {
    let n = code.n();
    if n > opts.cap {
        return Err(Error::CapExceeded {
            what: "exact PUD (use Monte-Carlo estimation instead)",
            n,
            cap: opts.cap,
        });
    }
    if opts.decoder == DecoderKind::MinimumDiscrepancy {
        ch.require_strict()?;
    }
    let packed: Vec<u64> = code
        .words()
        .iter()
        .map(|w| w.index().expect("n is below the exact cap"))
        .collect();
    let total = 1u64 << n;
    let chunks = total.div_ceil(CHUNK);
    // Partial sums per fixed chunk, added in index order, so the result does not
    // depend on thread scheduling.
    let partial: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = 0.0;
            for y in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let decoded = decode_packed(opts.decoder, ch, &packed, n, y);
                for (k, &x) in packed.iter().enumerate() {
                    if decoded == DecodeResult::Codeword(k) {
                        continue;
                    }
                    acc += packed_prob(ch, opts.route, y, x, n);
                }
            }
            acc
        })
        .collect();
    let sum: f64 = partial.iter().sum();
    Ok((sum / code.len() as f64).clamp(0.0, 1.0))
}

fn packed_prob(ch: &ChannelParams, route: ProbabilityRoute, y: u64, x: u64, n: usize) -> f64 {
    match route {
        ProbabilityRoute::Factored => crate::channel::factored_prob(
            ch,
            (!y & x).count_ones() as i32,
            (y & !x).count_ones() as i32,
            y.count_ones() as i32,
            n as i32,
        ),
        ProbabilityRoute::Direct => (0..n)
            .map(|i| ch.bit_prob((y >> i) & 1 == 1, (x >> i) & 1 == 1))
            .product(),
    }
}

/// Exact PUD by plain enumeration over [`crate::bits::BitVector`]s and the public
/// transition probability functions. Slow; intended for cross-checks.
pub fn pud_exact_reference(
    ch: &ChannelParams,
    code: &Code,
    route: ProbabilityRoute,
) -> Result<f64> {
    let mut sum = 0.0;
    for y in all_words(code.n())? {
        let decoded = crate::decoder::decode_ml(ch, code, &y)?;
        for (k, x) in code.words().iter().enumerate() {
            if decoded == DecodeResult::Codeword(k) {
                continue;
            }
            sum += match route {
                ProbabilityRoute::Direct => transition_prob(ch, &y, x)?,
                ProbabilityRoute::Factored => transition_prob_factored(ch, &y, x)?,
            };
        }
    }
    Ok(sum / code.len() as f64)
}

/// Value of one of the analytic PUD bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundEvaluation {
    pub value: f64,
    /// Number of (received weight `i`, codeword weight `j`) classes with `W_j > 0`
    /// whose threshold set `𝒮(h)` is empty.
    pub empty_classes: usize,
    /// Total number of classes with `W_j > 0`.
    pub classes: usize,
}

impl BoundEvaluation {
    /// The bound carries no information (every class is empty, so it equals 1).
    pub fn is_vacuous(&self) -> bool {
        self.empty_classes == self.classes
    }
}

fn weight_class_bound(
    ch: &ChannelParams,
    code: &Code,
    doubled_threshold: impl Fn(u32, u32) -> LatticeValue,
) -> BoundEvaluation {
    let n = code.n() as u32;
    let (r01, r10) = (ch.ratio_01(), ch.ratio_10());
    let mut captured = 0.0;
    let mut empty_classes = 0;
    let mut classes = 0;
    for (j, &wj) in code.weight_distribution().iter().enumerate() {
        if wj == 0 {
            continue;
        }
        let j = j as u32;
        for i in 0..=n {
            classes += 1;
            let base = (1.0 - ch.q()).powi(i as i32) * (1.0 - ch.p()).powi((n - i) as i32);
            let mut inner = 0.0;
            let mut any = false;
            for (s, count) in sphere_terms(ch, n, i, j, doubled_threshold(i, j)) {
                any = true;
                inner += r01.powi(s.c01 as i32) * r10.powi(s.c10 as i32) * count as f64;
            }
            if !any {
                empty_classes += 1;
            }
            captured += wj as f64 * base * inner;
        }
    }
    BoundEvaluation {
        value: (1.0 - captured / code.len() as f64).clamp(0.0, 1.0),
        empty_classes,
        classes,
    }
}

/// First bound, from `δ(C)`.
pub fn pud_bound_delta_eval(ch: &ChannelParams, code: &Code) -> Result<BoundEvaluation> {
    let dc = min_discrepancy(ch, code)?.lattice();
    Ok(weight_class_bound(ch, code, |i, j| {
        dc + LatticeValue::gamma_minus_one(i as i64 - j as i64)
    }))
}

/// Second bound, from `δ̂(C)`.
pub fn pud_bound_deltahat_eval(ch: &ChannelParams, code: &Code) -> Result<BoundEvaluation> {
    let dh = min_symmetric_discrepancy_exact(ch, code)?;
    Ok(weight_class_bound(ch, code, |i, _| {
        dh + LatticeValue::gamma_minus_one(i as i64)
    }))
}

pub fn pud_bound_delta(ch: &ChannelParams, code: &Code) -> Result<f64> {
    Ok(pud_bound_delta_eval(ch, code)?.value)
}

pub fn pud_bound_deltahat(ch: &ChannelParams, code: &Code) -> Result<f64> {
    Ok(pud_bound_deltahat_eval(ch, code)?.value)
}

/// A seeded Monte-Carlo estimate of the PUD.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

/// Random number generator for one trial: keyed by `(seed, trial)` so that estimates
/// do not depend on how trials are spread across threads.
fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Estimates the PUD by sending uniformly chosen codewords through the channel and
/// decoding with the maximum-likelihood decoder.
pub fn pud_monte_carlo(ch: &ChannelParams, code: &Code, trials: u64, seed: u64) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::InvalidRange("at least one trial is required".into()));
    }
    let n = code.n();
    let m = code.len();
    let failures: u64 = if n <= 64 {
        let packed: Vec<u64> = code.words().iter().map(|w| w.index().unwrap()).collect();
        (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(seed, t);
                let k = rng.random_range(0..m);
                let x = packed[k];
                let mut y = 0u64;
                for i in 0..n {
                    let sent = (x >> i) & 1 == 1;
                    let flip = rng.random::<f64>() < if sent { ch.q() } else { ch.p() };
                    if sent != flip {
                        y |= 1 << i;
                    }
                }
                let decoded = decode_packed(DecoderKind::MaximumLikelihood, ch, &packed, n, y);
                u64::from(decoded != DecodeResult::Codeword(k))
            })
            .sum()
    } else {
        (0..trials)
            .into_par_iter()
            .map(|t| -> Result<u64> {
                let mut rng = trial_rng(seed, t);
                let k = rng.random_range(0..m);
                let x = code.word(k);
                let mut y = x.clone();
                for i in 0..n {
                    let sent = x.get(i);
                    let flip = rng.random::<f64>() < if sent { ch.q() } else { ch.p() };
                    y.set(i, sent != flip);
                }
                let decoded = crate::decoder::decode_ml(ch, code, &y)?;
                Ok(u64::from(decoded != DecodeResult::Codeword(k)))
            })
            .sum::<Result<u64>>()?
    };
    let estimate = failures as f64 / trials as f64;
    Ok(McEstimate {
        estimate,
        stderr: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
        trials,
        seed,
    })
}

/// Exact value (when within the cap), both bounds, and optionally a Monte-Carlo estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PudReport {
    pub exact: Option<f64>,
    pub bound_delta: BoundEvaluation,
    pub bound_deltahat: BoundEvaluation,
    pub monte_carlo: Option<McEstimate>,
}

pub fn pud_report(
    ch: &ChannelParams,
    code: &Code,
    exact_cap: usize,
    monte_carlo: Option<(u64, u64)>,
) -> Result<PudReport> {
    let exact = if code.n() <= exact_cap {
        Some(pud_exact_with(
            ch,
            code,
            &ExactOptions {
                cap: exact_cap,
                ..ExactOptions::default()
            },
        )?)
    } else {
        None
    };
    let monte_carlo = match monte_carlo {
        Some((trials, seed)) => Some(pud_monte_carlo(ch, code, trials, seed)?),
        None => None,
    };
    Ok(PudReport {
        exact,
        bound_delta: pud_bound_delta_eval(ch, code)?,
        bound_deltahat: pud_bound_deltahat_eval(ch, code)?,
        monte_carlo,
    })
}

/// One grid point of a sweep over `q` with fixed `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub q: f64,
    pub bound_delta: f64,
    pub bound_deltahat: f64,
    pub exact: Option<f64>,
}

/// Evaluates both bounds (and the exact PUD when `n <= exact_cap`) for
/// `q = q_from + k·q_step`, `k = 0, 1, ...` while `q <= q_to` (inclusive).
pub fn pud_sweep(
    p: f64,
    code: &Code,
    q_from: f64,
    q_to: f64,
    q_step: f64,
    exact_cap: usize,
) -> Result<Vec<SweepRow>> {
    if q_step.is_nan() || q_step <= 0.0 {
        return Err(Error::InvalidRange(format!("step {q_step} must be positive")));
    }
    if !(p <= q_from && q_from <= q_to && q_to < 0.5) {
        return Err(Error::InvalidRange(format!(
            "need p <= q_from <= q_to < 1/2, got p = {p}, q in [{q_from}, {q_to}]"
        )));
    }
    let steps = ((q_to - q_from) / q_step + 1e-9).floor() as u64;
    (0..=steps)
        .into_par_iter()
        .map(|k| {
            let q = q_from + k as f64 * q_step;
            let ch = ChannelParams::strict(p, q)?;
            let exact = if code.n() <= exact_cap {
                Some(pud_exact_with(
                    &ch,
                    code,
                    &ExactOptions {
                        cap: exact_cap,
                        ..ExactOptions::default()
                    },
                )?)
            } else {
                None
            };
            Ok(SweepRow {
                q,
                bound_delta: pud_bound_delta(&ch, code)?,
                bound_deltahat: pud_bound_deltahat(&ch, code)?,
                exact,
            })
        })
        .collect()
}

/// Formats `x` with six significant digits, in fixed notation when the decimal
/// exponent is in `[-5, 6)` and scientific notation otherwise.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let exp: i32 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("scientific formatting has an exponent");
    if (-5..6).contains(&exp) {
        format!("{:.*}", (5 - exp) as usize, x)
    } else {
        sci
    }
}

/// Writes a sweep as CSV with header `q,bound_delta,bound_deltahat,exact`, six
/// significant digits and LF line endings. The exact column is empty when absent.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    out.write_all(b"q,bound_delta,bound_deltahat,exact\n")?;
    for r in rows {
        let exact = r.exact.map(format_sig6).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{}",
            format_sig6(r.q),
            format_sig6(r.bound_delta),
            format_sig6(r.bound_deltahat),
            exact
        )?;
    }
    Ok(())
}
