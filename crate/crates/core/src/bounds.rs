//! Bounds on the size of codes with a given minimum discrepancy.
//!
//! Write `d = ⌈2δ(C)/(γ+1)⌉`. Then
//!
//! ```text
//! Singleton:  |C| <= 2^(n − d + 1)
//! Hamming:    |C| <= 2^n / Σ_{i<=t} C(n, i),  t the largest integer with t < δ(C)/(γ+1)
//! Plotkin:    |C| <= ⌊2d / (2d − n)⌋           when 2d > n
//! ```
//!
//! In the other direction every code satisfies
//! `|C| >= ⌈((γ+1)T(C) − δ̂(C) − n(γ−1)) / (2n − δ̂(C))⌉`.
//!
//! The weight distribution `W_0, ..., W_n` of a code with `δ(C) >= Δ` satisfies, for
//! every received weight `i`,
//! `Σ_j Σ_{s ∈ 𝒮((Δ + (γ−1)(i−j))/2)} λ(i, j, s) W_j <= C(n, i)`,
//! and similarly with `(Δ + (γ−1)i)/2` for `δ̂(C) >= Δ`. Maximising `Σ W_j` over
//! those constraints bounds `|C|`.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt::Write as _;

use crate::bits::BitVector;
use crate::channel::ChannelParams;
use crate::code::Code;
use crate::counting::{binomial, below_threshold, sphere_terms_where};
use crate::discrepancy::{
    compare_lattice, delta, min_discrepancy, min_hamming_distance,
    min_symmetric_discrepancy_exact, LatticeValue, TIE_EPSILON,
};
use crate::error::{Error, Result};
use crate::graphs::{build_graph, GraphKind};
use crate::threshold::Threshold;

/// Default largest `n` for exhaustive code-size computation.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 8;

/// Largest `n` for which a constraint system is built (coefficients fit in `u64`).
pub const MAX_CONSTRAINT_N: usize = 62;

/// Smallest integer `k` with `k·(γ+1) >= 2δ`, i.e. `⌈2δ/(γ+1)⌉`.
pub fn ceil_doubled_over_gamma_plus_one(ch: &ChannelParams, delta: LatticeValue) -> i64 {
    // k(γ+1) − 2δ = (k − 2a) + γ(k − 2b) >= 0
    let estimate = (2.0 * delta.value(ch.gamma()) / (ch.gamma() + 1.0)).floor() as i64;
    let mut k = estimate - 2;
    while (LatticeValue::new(k, k) - delta * 2).sign(ch) == Ordering::Less {
        k += 1;
    }
    k
}

/// Largest integer `t` with `t·(γ+1) < δ`.
pub fn largest_below_over_gamma_plus_one(ch: &ChannelParams, delta: LatticeValue) -> i64 {
    let estimate = (delta.value(ch.gamma()) / (ch.gamma() + 1.0)).ceil() as i64;
    let mut t = estimate + 2;
    while (LatticeValue::new(t, t) - delta).sign(ch) != Ordering::Less {
        t -= 1;
    }
    t
}

/// `2^e` for `e >= 0`, `0` for negative `e` (no code of size at least 1 fits).
fn pow2(e: i64) -> u128 {
    if e < 0 {
        0
    } else {
        1u128 << e
    }
}

/// `2^(n − ⌈2δ(C)/(γ+1)⌉ + 1)`.
pub fn singleton_bound(ch: &ChannelParams, n: usize, delta_c: impl Into<LatticeValue>) -> u128 {
    let d = ceil_doubled_over_gamma_plus_one(ch, delta_c.into());
    pow2(n as i64 - d + 1)
}

/// `⌊2^n / Σ_{i<=t} C(n, i)⌋` with `t` the largest integer below `δ(C)/(γ+1)`.
/// When `t < 0` the sum is empty and the bound is `2^n`.
pub fn hamming_bound(ch: &ChannelParams, n: usize, delta_c: impl Into<LatticeValue>) -> u128 {
    let t = largest_below_over_gamma_plus_one(ch, delta_c.into());
    if t < 0 {
        return pow2(n as i64);
    }
    let t = (t as usize).min(n);
    let ball: u128 = (0..=t).map(|i| binomial(n as u64, i as u64)).sum();
    pow2(n as i64) / ball
}

/// `⌊2d / (2d − n)⌋` for `d = ⌈2δ(C)/(γ+1)⌉`, provided `2d > n`.
pub fn plotkin_upper_bound(
    ch: &ChannelParams,
    n: usize,
    delta_c: impl Into<LatticeValue>,
) -> Result<u128> {
    let d = ceil_doubled_over_gamma_plus_one(ch, delta_c.into());
    let n_i = n as i64;
    if 2 * d <= n_i {
        return Err(Error::PlotkinInapplicable { d, n });
    }
    Ok((2 * d / (2 * d - n_i)) as u128)
}

/// Which minimum the constraint system describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintKind {
    /// `δ(C) >= Δ`.
    Delta,
    /// `δ̂(C) >= Δ`.
    DeltaHat,
}

/// `rows[i] · W <= rhs[i]`, `W >= 0` integral; maximise `Σ W_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub n: usize,
    pub rows: Vec<Vec<u64>>,
    pub rhs: Vec<u64>,
}

impl ConstraintSystem {
    pub fn variables(&self) -> usize {
        self.n + 1
    }

    /// Whether `w` satisfies every row.
    pub fn is_satisfied_by(&self, w: &[u64]) -> bool {
        self.rows.iter().zip(&self.rhs).all(|(row, &b)| {
            row.iter()
                .zip(w)
                .map(|(&a, &x)| a as u128 * x as u128)
                .sum::<u128>()
                <= b as u128
        })
    }

    /// Plain-text LP format: the objective, one inequality per line, then `int`.
    pub fn to_lp_text(&self) -> String {
        let vars: Vec<String> = (0..self.variables()).map(|j| format!("w{j}")).collect();
        let mut out = format!("max: {};\n", vars.join("+"));
        for (row, b) in self.rows.iter().zip(&self.rhs) {
            let terms: Vec<String> = row
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(j, &a)| if a == 1 { format!("w{j}") } else { format!("{a} w{j}") })
                .collect();
            if terms.is_empty() {
                writeln!(out, "0 w0 <= {b};").unwrap();
            } else {
                writeln!(out, "{} <= {b};", terms.join(" + ")).unwrap();
            }
        }
        writeln!(out, "int {};", vars.join(",")).unwrap();
        out
    }
}

/// The weight-distribution constraints for codes of length `n` meeting `target`.
pub fn build_constraints(
    ch: &ChannelParams,
    n: usize,
    target: Threshold,
    kind: ConstraintKind,
) -> Result<ConstraintSystem> {
    ch.require_strict()?;
    if n > MAX_CONSTRAINT_N {
        return Err(Error::CapExceeded {
            what: "constraint system",
            n,
            cap: MAX_CONSTRAINT_N,
        });
    }
    let n32 = n as u32;
    let shift = |i: u32, j: u32| -> i64 {
        match kind {
            ConstraintKind::Delta => i as i64 - j as i64,
            ConstraintKind::DeltaHat => i as i64,
        }
    };
    let mut rows = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for i in 0..=n32 {
        let row: Vec<u64> = (0..=n32)
            .map(|j| {
                let k = shift(i, j);
                let total: u128 = match target {
                    Threshold::Lattice(t) => {
                        let doubled = t + LatticeValue::gamma_minus_one(k);
                        sphere_terms_where(n32, i, j, |s| below_threshold(ch, s, doubled))
                            .map(|(_, l)| l)
                            .sum()
                    }
                    Threshold::Real(t) => {
                        let doubled = t + (ch.gamma() - 1.0) * k as f64;
                        sphere_terms_where(n32, i, j, |s| {
                            doubled - 2.0 * s.value(ch.gamma()) > TIE_EPSILON
                        })
                        .map(|(_, l)| l)
                        .sum()
                    }
                };
                total as u64
            })
            .collect();
        rows.push(row);
        rhs.push(binomial(n as u64, i as u64) as u64);
    }
    Ok(ConstraintSystem { n, rows, rhs })
}

/// Optimum of an integer program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpSolution {
    pub optimum: u64,
    pub weights: Vec<u64>,
}

/// Maximises `Σ W_j` subject to the system, by depth-first branch and bound.
///
/// Variables are fixed in index order, largest value first. A branch is cut when the
/// current total plus the per-variable upper bounds of the remaining variables cannot
/// beat the incumbent.
pub fn ilp_maximize(sys: &ConstraintSystem) -> Result<IlpSolution> {
    let vars = sys.variables();
    let free: Vec<usize> = (0..vars)
        .filter(|&j| sys.rows.iter().all(|r| r.get(j).copied().unwrap_or(0) == 0))
        .collect();
    if !free.is_empty() {
        return Err(Error::Unbounded { variables: free });
    }
    let cap_for = |j: usize, slack: &[u64]| -> u64 {
        sys.rows
            .iter()
            .zip(slack)
            .filter(|(r, _)| r[j] > 0)
            .map(|(r, &s)| s / r[j])
            .min()
            .expect("every variable appears in some row")
    };
    let upper: Vec<u64> = (0..vars).map(|j| cap_for(j, &sys.rhs)).collect();
    // suffix[j] = Σ_{m >= j} upper[m]
    let mut suffix = vec![0u64; vars + 1];
    for j in (0..vars).rev() {
        suffix[j] = suffix[j + 1] + upper[j];
    }

    struct Search<'a> {
        sys: &'a ConstraintSystem,
        suffix: Vec<u64>,
        best: Option<IlpSolution>,
        current: Vec<u64>,
    }

    impl Search<'_> {
        fn visit(&mut self, j: usize, total: u64, slack: &mut [u64], cap_for: &dyn Fn(usize, &[u64]) -> u64) {
            if let Some(b) = &self.best {
                if total + self.suffix[j] <= b.optimum {
                    return;
                }
            }
            if j == self.current.len() {
                self.best = Some(IlpSolution {
                    optimum: total,
                    weights: self.current.clone(),
                });
                return;
            }
            let hi = cap_for(j, slack);
            for x in (0..=hi).rev() {
                for (r, s) in self.sys.rows.iter().zip(slack.iter_mut()) {
                    *s -= r[j] * x;
                }
                self.current[j] = x;
                self.visit(j + 1, total + x, slack, cap_for);
                for (r, s) in self.sys.rows.iter().zip(slack.iter_mut()) {
                    *s += r[j] * x;
                }
            }
            self.current[j] = 0;
        }
    }

    let mut search = Search {
        sys,
        suffix,
        best: None,
        current: vec![0; vars],
    };
    let mut slack = sys.rhs.clone();
    search.visit(0, 0, &mut slack, &cap_for);
    Ok(search.best.expect("the zero vector is feasible"))
}

/// `⌈((γ+1)T(C) − δ̂(C) − n(γ−1)) / (2n − δ̂(C))⌉`, computed exactly.
pub fn plotkin_lower_bound(ch: &ChannelParams, code: &Code) -> Result<i64> {
    let dh = min_symmetric_discrepancy_exact(ch, code)?;
    let n = code.n() as i64;
    let t = code.total_weight() as i64;
    let num = LatticeValue::new(t - dh.unit + n, t - dh.gamma - n);
    let den = LatticeValue::new(2 * n - dh.unit, -dh.gamma);
    let g = ch.gamma();
    let mut k = (num.value(g) / den.value(g)).floor() as i64 - 2;
    while (num - den * k).sign(ch) == Ordering::Greater {
        k += 1;
    }
    Ok(k)
}

/// A largest code meeting a threshold, from exhaustive search.
#[derive(Clone, Debug, PartialEq)]
pub struct AValue {
    pub value: u64,
    /// `None` when no two-word code qualifies and the value is the convention `1`.
    pub witness: Option<Code>,
}

/// `A(n, Δ)`, `Â(n, Δ)` or `A^H(n, Δ)` by maximum clique search on the graph of the
/// given kind. The maximum over no qualifying code is `1`.
pub fn compute_a(
    ch: &ChannelParams,
    n: usize,
    threshold: Threshold,
    kind: GraphKind,
    cap: usize,
) -> Result<AValue> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "exhaustive code search",
            n,
            cap,
        });
    }
    let g = build_graph(ch, n, threshold, kind, cap)?;
    let (size, vertices) = g.max_clique();
    if size < 2 {
        return Ok(AValue {
            value: 1,
            witness: None,
        });
    }
    let words = vertices
        .iter()
        .map(|&u| BitVector::from_index(u as u64, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(AValue {
        value: size as u64,
        witness: Some(Code::new(words)?),
    })
}

/// Structural checks on a code together with the identities they imply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecialCodeReport {
    pub is_linear: bool,
    pub is_constant_weight: bool,
    /// For a linear code: whether `δ(C) = d^H(C)`.
    pub linear_identity: Option<bool>,
    /// For a constant-weight code: whether `δ(x, y) = ((γ+1)/2)·d^H(x, y)` for all pairs.
    pub constant_weight_identity: Option<bool>,
}

pub fn is_linear(code: &Code) -> bool {
    let set: HashSet<&BitVector> = code.words().iter().collect();
    let has_zero = code.words().iter().any(|w| w.weight() == 0);
    has_zero
        && code
            .distinct_pairs()
            .all(|(a, b)| set.contains(&a.xor(b).expect("codewords share a length")))
}

pub fn is_constant_weight(code: &Code) -> bool {
    code.weight_distribution().iter().filter(|&&w| w > 0).count() == 1
}

pub fn check_special_code(ch: &ChannelParams, code: &Code) -> Result<SpecialCodeReport> {
    let linear = is_linear(code);
    let constant = is_constant_weight(code);
    let linear_identity = if linear {
        let dc = min_discrepancy(ch, code)?.lattice();
        let dh = LatticeValue::new(min_hamming_distance(code) as i64, 0);
        Some(compare_lattice(ch, dc, dh) == Ordering::Equal)
    } else {
        None
    };
    let constant_weight_identity = if constant {
        let mut ok = true;
        for (a, b) in code.distinct_pairs() {
            let dh = a.hamming_distance(b)? as i64;
            for (y, x) in [(a, b), (b, a)] {
                let twice = delta(ch, y, x)?.lattice() * 2;
                ok &= compare_lattice(ch, twice, LatticeValue::new(dh, dh)) == Ordering::Equal;
            }
        }
        Some(ok)
    } else {
        None
    };
    Ok(SpecialCodeReport {
        is_linear: linear,
        is_constant_weight: constant,
        linear_identity,
        constant_weight_identity,
    })
}
