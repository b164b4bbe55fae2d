//! Order-4 cyclotomic classes modulo a prime `N = 4f + 1` with `f = y²` odd.
//!
//! For a primitive root `β`, the class `D_j` is `{ β^(4k+j) mod N : 0 ≤ k < f }`.
//! The four classes partition the nonzero residues. Because `f` is odd, `-1`
//! always lands in `D₂` and `2` (a quadratic non-residue, since `N ≡ 5 mod 8`)
//! lands in `D₁` or `D₃` depending on the chosen root.

use serde::Serialize;
use thiserror::Error;

/// Largest modulus accepted. Residues stay in machine words and correlation is
/// quadratic in the period, so anything beyond this is out of reach anyway.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("N = {0} is below the smallest admissible modulus 5")]
    TooSmall(u64),
    #[error("N = {0} exceeds the supported bound 2^31")]
    TooLarge(u64),
    #[error("N = {0} is not prime")]
    NotPrime(u64),
    #[error("N = {0} is not congruent to 1 mod 4")]
    NotCongruent1Mod4(u64),
    #[error("f = (N-1)/4 = {f} is not a perfect square (N = {n})")]
    FNotPerfectSquare { n: u64, f: u64 },
    #[error("f = (N-1)/4 = {f} is a square but even (N = {n})")]
    FEven { n: u64, f: u64 },
    #[error("{beta} is not a primitive root modulo {n}")]
    NotPrimitiveRoot { n: u64, beta: u64 },
    #[error("residue {0} is zero modulo N and has no class")]
    ZeroResidue(u64),
}

/// An admissible modulus `N = 4f + 1`, `f = y_abs²`, `f` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParameterSet {
    pub n: u64,
    pub f: u64,
    pub y_abs: u64,
}

impl ParameterSet {
    /// Period of the base sequences, as an index type.
    pub fn period(&self) -> usize {
        self.n as usize
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn isqrt(v: u64) -> u64 {
    let mut r = (v as f64).sqrt() as u64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

fn distinct_prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Checks the conditions in order and reports the first one that fails.
pub fn validate_parameters(n: u64) -> Result<ParameterSet, ParamError> {
    if n < 5 {
        return Err(ParamError::TooSmall(n));
    }
    if n > MAX_MODULUS {
        return Err(ParamError::TooLarge(n));
    }
    if !is_prime(n) {
        return Err(ParamError::NotPrime(n));
    }
    if n % 4 != 1 {
        return Err(ParamError::NotCongruent1Mod4(n));
    }
    let f = (n - 1) / 4;
    let y_abs = isqrt(f);
    if y_abs * y_abs != f {
        return Err(ParamError::FNotPerfectSquare { n, f });
    }
    if f.is_multiple_of(2) {
        return Err(ParamError::FEven { n, f });
    }
    Ok(ParameterSet { n, f, y_abs })
}

/// True iff `g` has multiplicative order `n - 1` modulo the prime `n`.
pub fn is_primitive_root(g: u64, n: u64) -> bool {
    if n < 2 || g.is_multiple_of(n) {
        return false;
    }
    let order = n - 1;
    distinct_prime_factors(order)
        .into_iter()
        .all(|q| pow_mod(g, order / q, n) != 1)
}

/// Least `g ≥ 2` of order `n - 1`. `n` must be prime.
pub fn smallest_primitive_root(n: u64) -> u64 {
    if n == 2 {
        return 1;
    }
    (2..n)
        .find(|&g| is_primitive_root(g, n))
        .expect("every prime has a primitive root")
}

/// Admissible moduli up to `max_n`, found by walking odd `y` and testing
/// `4y² + 1` for primality.
pub fn scan_family(max_n: u64) -> Vec<ParameterSet> {
    let mut out = Vec::new();
    let mut y = 1u64;
    loop {
        let n = 4 * y * y + 1;
        if n > max_n || n > MAX_MODULUS {
            break;
        }
        if is_prime(n) {
            out.push(ParameterSet {
                n,
                f: y * y,
                y_abs: y,
            });
        }
        y += 2;
    }
    out
}

/// Class index in `0..4`.
pub type ClassIndex = u8;

/// The partition of `Z_N \ {0}` into `D₀..D₃` for a fixed primitive root.
///
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicSystem {
    params: ParameterSet,
    beta: u64,
    // index 0 holds a sentinel; residue 0 has no class
    class_table: Vec<ClassIndex>,
}

const NO_CLASS: ClassIndex = u8::MAX;

impl CyclotomicSystem {
    pub fn build(params: ParameterSet, beta: u64) -> Result<Self, ParamError> {
        let n = params.n;
        if !is_primitive_root(beta, n) {
            return Err(ParamError::NotPrimitiveRoot { n, beta });
        }
        let mut class_table = vec![NO_CLASS; n as usize];
        let mut power = 1u64;
        for k in 0..(n - 1) {
            class_table[power as usize] = (k % 4) as ClassIndex;
            power = mul_mod(power, beta, n);
        }
        Ok(Self {
            params,
            beta,
            class_table,
        })
    }

    /// Validates `n` and builds the classes with the smallest primitive root.
    pub fn for_modulus(n: u64) -> Result<Self, ParamError> {
        let params = validate_parameters(n)?;
        Self::build(params, smallest_primitive_root(n))
    }

    /// Like [`CyclotomicSystem::for_modulus`] but with an explicit root when given.
    pub fn with_beta(n: u64, beta: Option<u64>) -> Result<Self, ParamError> {
        let params = validate_parameters(n)?;
        Self::build(params, beta.unwrap_or_else(|| smallest_primitive_root(n)))
    }

    /// Smallest primitive root that places `2` in the requested class.
    /// Returns `None` when no root does (always the case for classes 0 and 2).
    pub fn with_two_in_class(n: u64, class: ClassIndex) -> Result<Option<Self>, ParamError> {
        let params = validate_parameters(n)?;
        for g in 2..n {
            if !is_primitive_root(g, n) {
                continue;
            }
            let sys = Self::build(params, g)?;
            if sys.class_table[2] == class {
                return Ok(Some(sys));
            }
        }
        Ok(None)
    }

    pub fn params(&self) -> ParameterSet {
        self.params
    }

    pub fn n(&self) -> u64 {
        self.params.n
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    pub fn class_of(&self, j: u64) -> Result<ClassIndex, ParamError> {
        let r = j % self.params.n;
        if r == 0 {
            return Err(ParamError::ZeroResidue(j));
        }
        Ok(self.class_table[r as usize])
    }

    /// Class of a residue already known to be nonzero mod N; `None` for zero.
    pub fn class_of_residue(&self, r: usize) -> Option<ClassIndex> {
        match self.class_table.get(r % self.class_table.len()) {
            Some(&NO_CLASS) | None => None,
            Some(&c) => Some(c),
        }
    }

    /// Members of `D_class` in increasing order.
    pub fn class_members(&self, class: ClassIndex) -> Vec<usize> {
        self.class_table
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == class)
            .map(|(r, _)| r)
            .collect()
    }

    /// Union of two classes, sorted.
    pub fn union_of(&self, a: ClassIndex, b: ClassIndex) -> Vec<usize> {
        self.class_table
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == a || c == b)
            .map(|(r, _)| r)
            .collect()
    }
}
