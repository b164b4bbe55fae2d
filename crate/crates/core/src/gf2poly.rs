//! Polynomials over GF(2), packed by degree, and linear complexity.
//!
//! Over GF(2) the polynomials `xⁿ - 1` and `xⁿ + 1` are the same; this module
//! writes `xⁿ + 1` throughout.
//!
//! Linear complexity is computed two ways: from `gcd(xⁿ + 1, S(x))` on one
//! period, and by Berlekamp-Massey on a stream of at least `2n` terms. The two
//! share nothing beyond the sequence storage.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::bitseq::{read_word, words_for, PeriodicSequence};

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// A polynomial over GF(2). Bit `k` of the packed words is the coefficient
/// of `x^k`; the word vector never ends in a zero word, so the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryPolynomial {
    words: Vec<u64>,
}

fn xor_shifted(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    if src.is_empty() {
        return;
    }
    let ws = shift / WORD;
    let bs = shift % WORD;
    let need = ws + src.len() + 1;
    if dst.len() < need {
        dst.resize(need, 0);
    }
    if bs == 0 {
        for (k, &w) in src.iter().enumerate() {
            dst[ws + k] ^= w;
        }
    } else {
        for (k, &w) in src.iter().enumerate() {
            dst[ws + k] ^= w << bs;
            dst[ws + k + 1] ^= w >> (WORD - bs);
        }
    }
}

fn degree_of(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .rposition(|&w| w != 0)
        .map(|i| i * WORD + (WORD - 1 - words[i].leading_zeros() as usize))
}

impl BinaryPolynomial {
    fn from_raw(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Self { words }
    }

    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0u64; k / WORD + 1];
        words[k / WORD] = 1 << (k % WORD);
        Self { words }
    }

    /// Sum of `x^k` over `exps`; repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut words = Vec::new();
        for k in exps {
            if words.len() <= k / WORD {
                words.resize(k / WORD + 1, 0);
            }
            words[k / WORD] ^= 1 << (k % WORD);
        }
        Self::from_raw(words)
    }

    /// `xⁿ + 1`.
    pub fn x_n_plus_one(n: usize) -> Self {
        Self::from_exponents([0, n])
    }

    /// `1 + x + … + x^(n-1)`, i.e. `(xⁿ + 1)/(x + 1)`.
    pub fn all_ones(n: usize) -> Self {
        let mut words = vec![u64::MAX; words_for(n)];
        if !n.is_multiple_of(WORD) {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (n % WORD)) - 1;
            }
        }
        Self::from_raw(words)
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        degree_of(&self.words)
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.words
            .get(k / WORD)
            .is_some_and(|w| (w >> (k % WORD)) & 1 == 1)
    }

    /// Exponents with nonzero coefficient, increasing.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(i * WORD + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (d, s) in words.iter_mut().zip(&short.words) {
            *d ^= s;
        }
        Self::from_raw(words)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (dense, sparse) = if self.exponents().len() >= other.exponents().len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Vec::new();
        for k in sparse.exponents() {
            xor_shifted(&mut acc, &dense.words, k);
        }
        Self::from_raw(acc)
    }

    pub fn mul_x_pow(&self, k: usize) -> Self {
        let mut acc = Vec::new();
        xor_shifted(&mut acc, &self.words, k);
        Self::from_raw(acc)
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        let db = divisor
            .degree()
            .ok_or(PolyError::DivisionByZeroPolynomial)?;
        let mut rem = self.words.clone();
        let mut quot = Vec::new();
        while let Some(dr) = degree_of(&rem) {
            if dr < db {
                break;
            }
            let shift = dr - db;
            xor_shifted(&mut rem, &divisor.words, shift);
            if quot.len() <= shift / WORD {
                quot.resize(shift / WORD + 1, 0);
            }
            quot[shift / WORD] |= 1 << (shift % WORD);
        }
        Ok((Self::from_raw(quot), Self::from_raw(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.div_rem(divisor).map(|(_, r)| r)
    }

    /// Monic gcd; `gcd(0, b) = b`, `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a
    }

    /// Reduction modulo `xⁿ + 1` by folding exponents mod `n`.
    pub fn reduce_cyclic(&self, n: usize) -> Self {
        Self::from_exponents(self.exponents().into_iter().map(|k| k % n))
    }

    /// `P(x) ↦ P(x²)`.
    pub fn substitute_square(&self) -> Self {
        Self::from_exponents(self.exponents().into_iter().map(|k| 2 * k))
    }

    /// Big-endian hex of the coefficient integer (`x^5 + x + 1` is `23`).
    pub fn to_hex(&self) -> String {
        let Some(top) = self.words.len().checked_sub(1) else {
            return "0".to_string();
        };
        let mut out = format!("{:x}", self.words[top]);
        for w in self.words[..top].iter().rev() {
            out.push_str(&format!("{w:016x}"));
        }
        out
    }

    pub fn from_hex(s: &str) -> Result<Self, PolyError> {
        let s = s.trim();
        let s = s.strip_prefix("0x").unwrap_or(s);
        if s.is_empty() {
            return Err(PolyError::Parse("empty hex string".into()));
        }
        let digits: Vec<u8> = s
            .chars()
            .rev()
            .map(|c| {
                c.to_digit(16)
                    .map(|d| d as u8)
                    .ok_or_else(|| PolyError::Parse(format!("bad hex digit {c:?}")))
            })
            .collect::<Result<_, _>>()?;
        let mut words = vec![0u64; digits.len().div_ceil(16)];
        for (i, d) in digits.into_iter().enumerate() {
            words[i / 16] |= (d as u64) << (4 * (i % 16));
        }
        Ok(Self::from_raw(words))
    }
}

impl fmt::Display for BinaryPolynomial {
    /// Monomials in decreasing degree: `x^5 + x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "x".to_string(),
                k => format!("x^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryPolynomial({self})")
    }
}

impl FromStr for BinaryPolynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut exps = Vec::new();
        for term in s.split('+').map(str::trim) {
            let k = match term {
                "1" => 0,
                "x" => 1,
                t => t
                    .strip_prefix("x^")
                    .and_then(|e| e.parse::<usize>().ok())
                    .ok_or_else(|| PolyError::Parse(format!("bad term {t:?}")))?,
            };
            exps.push(k);
        }
        Ok(Self::from_exponents(exps))
    }
}

impl Serialize for BinaryPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// `S(x) = Σ s(i)·x^i` over one period.
pub fn sequence_polynomial(s: &PeriodicSequence) -> BinaryPolynomial {
    BinaryPolynomial::from_raw(s.words().to_vec())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearComplexityResult {
    pub lc: usize,
    pub minimal_polynomial: BinaryPolynomial,
    pub gcd_with_xn_minus_1: BinaryPolynomial,
}

/// `LC = n - deg gcd(xⁿ + 1, S(x))`, minimal polynomial `(xⁿ + 1)/gcd`.
pub fn linear_complexity(s: &PeriodicSequence) -> LinearComplexityResult {
    let n = s.period();
    let modulus = BinaryPolynomial::x_n_plus_one(n);
    let g = modulus.gcd(&sequence_polynomial(s));
    let (minimal, r) = modulus
        .div_rem(&g)
        .expect("gcd of a nonzero polynomial is nonzero");
    debug_assert!(r.is_zero());
    let deg = g.degree().expect("gcd is nonzero");
    LinearComplexityResult {
        lc: n - deg,
        minimal_polynomial: minimal,
        gcd_with_xn_minus_1: g,
    }
}

/// Shortest LFSR length for a finite GF(2) stream.
pub fn berlekamp_massey_stream(bits: &[bool]) -> usize {
    let total = bits.len();
    if total == 0 {
        return 0;
    }
    // stream stored reversed so each discrepancy is a word-wise AND with the
    // connection polynomial: s(n-i) = rev[total-1-n+i]
    let mut rev = vec![0u64; words_for(total)];
    for (k, &b) in bits.iter().rev().enumerate() {
        if b {
            rev[k / WORD] |= 1 << (k % WORD);
        }
    }
    let cap = words_for(total + 1) + 1;
    let mut conn = vec![0u64; cap];
    let mut prev = vec![0u64; cap];
    conn[0] = 1;
    prev[0] = 1;
    let mut len = 0usize;
    let mut gap = 1usize;
    for step in 0..total {
        let base = total - 1 - step;
        let parity = conn[..=len / WORD]
            .iter()
            .enumerate()
            .fold(0u32, |acc, (w, &c)| {
                acc ^ (c & read_word(&rev, base + w * WORD)).count_ones()
            });
        if parity & 1 == 0 {
            gap += 1;
            continue;
        }
        if 2 * len <= step {
            let saved = conn.clone();
            xor_shifted_fixed(&mut conn, &prev, gap);
            len = step + 1 - len;
            prev = saved;
            gap = 1;
        } else {
            xor_shifted_fixed(&mut conn, &prev, gap);
            gap += 1;
        }
    }
    len
}

// xor `src << shift` into `dst`, dropping anything past `dst`'s length
fn xor_shifted_fixed(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / WORD;
    let bs = shift % WORD;
    for (k, &w) in src.iter().enumerate() {
        if w == 0 {
            continue;
        }
        if let Some(d) = dst.get_mut(ws + k) {
            *d ^= w << bs;
        }
        if bs != 0 {
            if let Some(d) = dst.get_mut(ws + k + 1) {
                *d ^= w >> (WORD - bs);
            }
        }
    }
}

/// Berlekamp-Massey on the first `terms` terms of the periodic stream.
/// `terms ≥ 2·period` guarantees the result is the linear complexity.
pub fn berlekamp_massey(s: &PeriodicSequence, terms: usize) -> usize {
    let bits: Vec<bool> = (0..terms).map(|t| s.get(t)).collect();
    berlekamp_massey_stream(&bits)
}

/// Which exponent relates `S_{L^τ(a)}` to `S_a` under this crate's shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftConvention {
    /// `S_{L^τ(a)}(x) ≡ x^(n-τ)·S_a(x) mod (xⁿ + 1)`.
    NMinusTau,
    /// `S_{L^τ(a)}(x) ≡ x^τ·S_a(x) mod (xⁿ + 1)`.
    Tau,
    Neither,
}

/// Probes the shift/polynomial relation on fixed asymmetric sequences.
pub fn check_shift_convention() -> ShiftConvention {
    let probes = ["1101000", "1000000000011", "0111001010000110"];
    let mut n_minus_tau = true;
    let mut tau_only = true;
    for p in probes {
        let a: PeriodicSequence = p.parse().expect("probe literal");
        let n = a.period();
        let sa = sequence_polynomial(&a);
        for tau in 1..n {
            let sb = sequence_polynomial(&a.left_shift(tau as i64));
            n_minus_tau &= sa.mul_x_pow(n - tau).reduce_cyclic(n) == sb;
            tau_only &= sa.mul_x_pow(tau).reduce_cyclic(n) == sb;
        }
    }
    match (n_minus_tau, tau_only) {
        (true, _) => ShiftConvention::NMinusTau,
        (false, true) => ShiftConvention::Tau,
        _ => ShiftConvention::Neither,
    }
}
