//! Bit-packed periodic binary sequences.
//!
//! One period of `n` bits is stored little-endian in `u64` words: term `i`
//! lives in bit `i % 64` of word `i / 64`. Bits past `n` in the last word are
//! always zero.
//!
//! # Shift convention
//!
//! `left_shift(a, τ)` is `t ↦ a((t + τ) mod n)`: the sequence is read starting
//! at position `τ`. Under this convention the per-shift autocorrelation of the
//! interleaved construction matches its closed form, and the sequence
//! polynomial of `L^τ(a)` is `x^(n-τ)·S_a(x) mod (xⁿ + 1)`.
//!
//! The text form writes term 0 first, e.g. `"1011100001"`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("period must be at least 1")]
    EmptyPeriod,
    #[error("index {index} out of range for period {period}")]
    IndexOutOfRange { index: usize, period: usize },
    #[error("period mismatch: {left} vs {right}")]
    PeriodMismatch { left: usize, right: usize },
    #[error("invalid character {0:?} in 0/1 string")]
    InvalidChar(char),
}

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// Reads `WORD` bits of `words` starting at bit `start`; bits past the end read as 0.
#[inline]
pub(crate) fn read_word(words: &[u64], start: usize) -> u64 {
    let w = start / WORD;
    let off = start % WORD;
    let lo = words.get(w).copied().unwrap_or(0);
    if off == 0 {
        lo
    } else {
        let hi = words.get(w + 1).copied().unwrap_or(0);
        (lo >> off) | (hi << (WORD - off))
    }
}

/// One period of a binary sequence, indexed modulo the period.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PeriodicSequence {
    period: usize,
    words: Vec<u64>,
}

impl PeriodicSequence {
    pub fn zeros(period: usize) -> Result<Self, SeqError> {
        if period == 0 {
            return Err(SeqError::EmptyPeriod);
        }
        Ok(Self {
            period,
            words: vec![0; words_for(period)],
        })
    }

    pub fn from_bits<I>(bits: I) -> Result<Self, SeqError>
    where
        I: IntoIterator<Item = bool>,
    {
        let mut words = Vec::new();
        let mut period = 0;
        for b in bits {
            if period % WORD == 0 {
                words.push(0);
            }
            if b {
                words[period / WORD] |= 1 << (period % WORD);
            }
            period += 1;
        }
        if period == 0 {
            return Err(SeqError::EmptyPeriod);
        }
        Ok(Self { period, words })
    }

    /// Sequence whose ones sit exactly on `set` (the characteristic set).
    pub fn from_characteristic_set<I>(period: usize, set: I) -> Result<Self, SeqError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut s = Self::zeros(period)?;
        for index in set {
            if index >= period {
                return Err(SeqError::IndexOutOfRange { index, period });
            }
            s.words[index / WORD] |= 1 << (index % WORD);
        }
        Ok(s)
    }

    pub(crate) fn from_words(period: usize, mut words: Vec<u64>) -> Self {
        debug_assert!(period > 0);
        words.resize(words_for(period), 0);
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(period);
        }
        Self { period, words }
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Term at `t mod period`.
    #[inline]
    pub fn get(&self, t: usize) -> bool {
        let i = t % self.period;
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positions of the ones, increasing.
    pub fn support(&self) -> Vec<usize> {
        (0..self.period).filter(|&i| self.get(i)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.period).map(move |i| self.get(i))
    }

    /// `t ↦ a((t + τ) mod n)`. Negative shifts are reduced mod `n`.
    pub fn left_shift(&self, tau: i64) -> Self {
        let n = self.period;
        let tau = tau.rem_euclid(n as i64) as usize;
        if tau == 0 {
            return self.clone();
        }
        let doubled = self.doubled_words();
        let words = (0..self.words.len())
            .map(|w| read_word(&doubled, tau + w * WORD))
            .collect();
        Self::from_words(n, words)
    }

    /// Two periods back to back, so any length-`n` window is contiguous.
    pub(crate) fn doubled_words(&self) -> Vec<u64> {
        let n = self.period;
        let mut out = vec![0u64; words_for(2 * n) + 1];
        out[..self.words.len()].copy_from_slice(&self.words);
        // splice the second copy in at bit offset n
        let off = n % WORD;
        let base = n / WORD;
        for (k, &w) in self.words.iter().enumerate() {
            out[base + k] |= w << off;
            if off != 0 {
                out[base + k + 1] |= w >> (WORD - off);
            }
        }
        out
    }

    pub fn complement(&self) -> Self {
        let words = self.words.iter().map(|w| !w).collect();
        Self::from_words(self.period, words)
    }

    /// `I(a, b)`: even terms from `a`, odd terms from `b`.
    pub fn interleave(a: &Self, b: &Self) -> Result<Self, SeqError> {
        if a.period != b.period {
            return Err(SeqError::PeriodMismatch {
                left: a.period,
                right: b.period,
            });
        }
        Self::from_bits((0..a.period).flat_map(|i| [a.get(i), b.get(i)]))
    }

    /// Inverse of [`PeriodicSequence::interleave`] for even periods.
    pub fn deinterleave(&self) -> Result<(Self, Self), SeqError> {
        if !self.period.is_multiple_of(2) {
            return Err(SeqError::PeriodMismatch {
                left: self.period,
                right: 2 * (self.period / 2),
            });
        }
        let half = self.period / 2;
        let a = Self::from_bits((0..half).map(|i| self.get(2 * i)))?;
        let b = Self::from_bits((0..half).map(|i| self.get(2 * i + 1)))?;
        Ok((a, b))
    }

    pub fn set_position(&self, t: usize, bit: bool) -> Result<Self, SeqError> {
        if t >= self.period {
            return Err(SeqError::IndexOutOfRange {
                index: t,
                period: self.period,
            });
        }
        let mut out = self.clone();
        let mask = 1u64 << (t % WORD);
        if bit {
            out.words[t / WORD] |= mask;
        } else {
            out.words[t / WORD] &= !mask;
        }
        Ok(out)
    }

    /// Ones and zeros per period differ by at most one.
    pub fn is_balanced(&self) -> bool {
        let w = self.weight();
        let n = self.period;
        if n.is_multiple_of(2) {
            w == n / 2
        } else {
            w == (n - 1) / 2 || w == n.div_ceil(2)
        }
    }
}

impl fmt::Display for PeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for PeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PeriodicSequence({self})")
    }
}

impl FromStr for PeriodicSequence {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(SeqError::InvalidChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_bits(bits)
    }
}
