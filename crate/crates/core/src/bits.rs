//! Fixed-length binary words.
//!
//! Component `i` of a word (written `x_i`, zero based) is stored at bit `i`, so the
//! integer index of a word of length at most 64 is `x_0 + 2 x_1 + 4 x_2 + ...`. Words
//! are printed left to right starting at `x_0`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Smallest admissible word length.
pub const MIN_LENGTH: usize = 2;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Storage {
    Word(u64),
    Wide(Box<[u64]>),
}

/// A binary word of fixed length `n >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    storage: Storage,
}

/// The four position counts `d_ab(y, x) = |{i : y_i = a, x_i = b}|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct PairCounts {
    pub d00: u32,
    pub d01: u32,
    pub d10: u32,
    pub d11: u32,
}

impl PairCounts {
    pub fn len(&self) -> u32 {
        self.d00 + self.d01 + self.d10 + self.d11
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn hamming_distance(&self) -> u32 {
        self.d01 + self.d10
    }
}

fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

fn tail_mask(len: usize) -> u64 {
    match len % 64 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

impl BitVector {
    /// All-zero word of length `len`.
    pub fn zeros(len: usize) -> Result<Self> {
        check_len(len)?;
        let storage = if len <= 64 {
            Storage::Word(0)
        } else {
            Storage::Wide(vec![0u64; words_for(len)].into_boxed_slice())
        };
        Ok(Self { len, storage })
    }

    /// All-one word of length `len`.
    pub fn ones(len: usize) -> Result<Self> {
        let mut v = Self::zeros(len)?;
        for i in 0..len {
            v.set(i, true);
        }
        Ok(v)
    }

    pub fn from_bits<I>(bits: I) -> Result<Self>
    where
        I: IntoIterator<Item = bool>,
    {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len())?;
        for (i, b) in bits.into_iter().enumerate() {
            v.set(i, b);
        }
        Ok(v)
    }

    /// Builds a word from 0/1 entries, e.g. `&[1, 0, 1]`.
    pub fn from_slice(bits: &[u8]) -> Result<Self> {
        if let Some(bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidWord(format!("entry {bad} is not a bit")));
        }
        Self::from_bits(bits.iter().map(|&b| b == 1))
    }

    /// The word whose index is `index`, i.e. `x_i` is bit `i` of `index`.
    pub fn from_index(index: u64, len: usize) -> Result<Self> {
        check_len(len)?;
        if len > 64 {
            return Err(Error::InvalidWord(format!(
                "index construction needs n <= 64, got {len}"
            )));
        }
        if len < 64 && index >> len != 0 {
            return Err(Error::InvalidWord(format!(
                "index {index} does not fit in {len} bits"
            )));
        }
        Ok(Self {
            len,
            storage: Storage::Word(index),
        })
    }

    /// Index `x_0 + 2 x_1 + ...`, available for `n <= 64`.
    pub fn index(&self) -> Option<u64> {
        match self.storage {
            Storage::Word(w) => Some(w),
            Storage::Wide(_) => None,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        match &self.storage {
            Storage::Word(w) => (w >> i) & 1 == 1,
            Storage::Wide(ws) => (ws[i / 64] >> (i % 64)) & 1 == 1,
        }
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let (word, off) = match &mut self.storage {
            Storage::Word(w) => (w, i),
            Storage::Wide(ws) => (&mut ws[i / 64], i % 64),
        };
        if bit {
            *word |= 1 << off;
        } else {
            *word &= !(1 << off);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Hamming weight `ω(x)`.
    pub fn weight(&self) -> u32 {
        match &self.storage {
            Storage::Word(w) => w.count_ones(),
            Storage::Wide(ws) => ws.iter().map(|w| w.count_ones()).sum(),
        }
    }

    /// Componentwise XOR.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        check_same(self, other)?;
        let storage = match (&self.storage, &other.storage) {
            (Storage::Word(a), Storage::Word(b)) => Storage::Word(a ^ b),
            (Storage::Wide(a), Storage::Wide(b)) => {
                Storage::Wide(a.iter().zip(b.iter()).map(|(x, y)| x ^ y).collect())
            }
            _ => unreachable!("equal lengths share a representation"),
        };
        Ok(Self {
            len: self.len,
            storage,
        })
    }

    /// Counts `d_ab(self, other)`: `self` plays the role of `y`, `other` of `x`.
    pub fn pair_counts(&self, other: &Self) -> Result<PairCounts> {
        check_same(self, other)?;
        let n = self.len as u32;
        let (d11, d10, d01) = match (&self.storage, &other.storage) {
            (Storage::Word(y), Storage::Word(x)) => {
                ((y & x).count_ones(), (y & !x).count_ones(), (!y & x).count_ones())
            }
            (Storage::Wide(ys), Storage::Wide(xs)) => {
                let last = ys.len() - 1;
                let mut acc = (0, 0, 0);
                for (k, (y, x)) in ys.iter().zip(xs.iter()).enumerate() {
                    let mask = if k == last { tail_mask(self.len) } else { u64::MAX };
                    acc.0 += (y & x & mask).count_ones();
                    acc.1 += (y & !x & mask).count_ones();
                    acc.2 += (!y & x & mask).count_ones();
                }
                acc
            }
            _ => unreachable!("equal lengths share a representation"),
        };
        Ok(PairCounts {
            d00: n - d11 - d10 - d01,
            d01,
            d10,
            d11,
        })
    }

    /// Hamming distance `d^H(self, other)`.
    pub fn hamming_distance(&self, other: &Self) -> Result<u32> {
        Ok(self.pair_counts(other)?.hamming_distance())
    }
}

fn check_len(len: usize) -> Result<()> {
    if len < MIN_LENGTH {
        return Err(Error::InvalidWord(format!(
            "length must be at least {MIN_LENGTH}, got {len}"
        )));
    }
    Ok(())
}

pub(crate) fn check_same(a: &BitVector, b: &BitVector) -> Result<()> {
    if a.len != b.len {
        return Err(Error::LengthMismatch {
            left: a.len,
            right: b.len,
        });
    }
    Ok(())
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    /// Parses a contiguous bitstring such as `01011` (leftmost character is `x_0`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidWord(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(bits)
    }
}

/// Iterates over all `2^n` words of length `n` in index order.
pub fn all_words(n: usize) -> Result<impl Iterator<Item = BitVector>> {
    check_len(n)?;
    if n >= 64 {
        return Err(Error::InvalidWord(format!("cannot enumerate 2^{n} words")));
    }
    Ok((0..1u64 << n).map(move |u| BitVector {
        len: n,
        storage: Storage::Word(u),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_counts_direct() {
        let y: BitVector = "100".parse().unwrap();
        let x: BitVector = "111".parse().unwrap();
        let c = y.pair_counts(&x).unwrap();
        assert_eq!((c.d00, c.d01, c.d10, c.d11), (0, 2, 0, 1));
    }

    #[test]
    fn identical_words_have_no_disagreements() {
        let x: BitVector = "0110101".parse().unwrap();
        let c = x.pair_counts(&x).unwrap();
        assert_eq!((c.d01, c.d10), (0, 0));
    }

    #[test]
    fn index_convention_is_little_endian() {
        // x = (x0, x1, x2, x3) = (1, 1, 0, 1) -> 1 + 2 + 8
        let x: BitVector = "1101".parse().unwrap();
        assert_eq!(x.index(), Some(11));
        assert_eq!(BitVector::from_index(11, 4).unwrap(), x);
        assert!(BitVector::from_index(16, 4).is_err());
    }

    #[test]
    fn rejects_short_and_malformed_words() {
        assert!("1".parse::<BitVector>().is_err());
        assert!("10a".parse::<BitVector>().is_err());
        assert!(BitVector::from_slice(&[0, 2]).is_err());
    }

    #[test]
    fn length_mismatch() {
        let a: BitVector = "010".parse().unwrap();
        let b: BitVector = "0101".parse().unwrap();
        assert_eq!(
            a.pair_counts(&b),
            Err(Error::LengthMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn wide_words_match_positional_scan() {
        let n = 150;
        let y = BitVector::from_bits((0..n).map(|i| i % 3 == 0)).unwrap();
        let x = BitVector::from_bits((0..n).map(|i| i % 5 < 2)).unwrap();
        let c = y.pair_counts(&x).unwrap();
        let mut naive = PairCounts::default();
        for i in 0..n {
            match (y.get(i), x.get(i)) {
                (false, false) => naive.d00 += 1,
                (false, true) => naive.d01 += 1,
                (true, false) => naive.d10 += 1,
                (true, true) => naive.d11 += 1,
            }
        }
        assert_eq!(c, naive);
        assert_eq!(y.weight(), (0..n).filter(|i| i % 3 == 0).count() as u32);
        assert_eq!(y.to_string().parse::<BitVector>().unwrap(), y);
        assert_eq!(y.index(), None);
    }

    #[test]
    fn all_words_enumerates_in_index_order() {
        let words: Vec<_> = all_words(3).unwrap().collect();
        assert_eq!(words.len(), 8);
        assert_eq!(words[6].to_string(), "011");
    }
}
