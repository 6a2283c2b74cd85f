//! Binary codes and the plain-text code file format.
//!
//! A code file holds one codeword per line as a contiguous bitstring (`01011`). Blank
//! lines and lines starting with `#` are ignored. All words must share a length and
//! there must be at least two distinct words.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::bits::BitVector;
use crate::error::{Error, Result};

/// A set of at least two distinct words of a common length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    words: Vec<BitVector>,
    n: usize,
    weight_distribution: Vec<u64>,
}

impl Code {
    pub fn new(words: Vec<BitVector>) -> Result<Self> {
        if words.len() < 2 {
            return Err(Error::InvalidCode(format!(
                "a code needs at least two words, got {}",
                words.len()
            )));
        }
        let n = words[0].len();
        if let Some(bad) = words.iter().find(|w| w.len() != n) {
            return Err(Error::LengthMismatch {
                left: n,
                right: bad.len(),
            });
        }
        let mut seen = HashSet::with_capacity(words.len());
        for w in &words {
            if !seen.insert(w) {
                return Err(Error::InvalidCode(format!("duplicate codeword {w}")));
            }
        }
        let mut weight_distribution = vec![0u64; n + 1];
        for w in &words {
            weight_distribution[w.weight() as usize] += 1;
        }
        Ok(Self {
            words,
            n,
            weight_distribution,
        })
    }

    pub fn parse_words<S: AsRef<str>>(words: &[S]) -> Result<Self> {
        let words = words
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<BitVector>>>()?;
        Self::new(words)
    }

    /// Word length `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of codewords `|C|`.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[BitVector] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &BitVector {
        &self.words[i]
    }

    pub fn index_of(&self, x: &BitVector) -> Option<usize> {
        self.words.iter().position(|w| w == x)
    }

    pub fn contains(&self, x: &BitVector) -> bool {
        self.index_of(x).is_some()
    }

    /// `(W_0, ..., W_n)`.
    pub fn weight_distribution(&self) -> &[u64] {
        &self.weight_distribution
    }

    /// `T(C) = Σ_j j·W_j`, the total number of ones across the codewords.
    pub fn total_weight(&self) -> u64 {
        self.weight_distribution
            .iter()
            .enumerate()
            .map(|(j, &w)| j as u64 * w)
            .sum()
    }

    /// Unordered pairs of distinct codewords.
    pub fn distinct_pairs(&self) -> impl Iterator<Item = (&BitVector, &BitVector)> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(move |(i, a)| self.words[i + 1..].iter().map(move |b| (a, b)))
    }
}

impl FromStr for Code {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut words = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let w: BitVector = line
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            words.push(w);
        }
        Self::new(words)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.words {
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}
