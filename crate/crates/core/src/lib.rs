//! Binary sequences of period `2N` with optimal autocorrelation, built by
//! interleaving two characteristic sequences of order-4 cyclotomic classes.
//!
//! - [`cyclotomy`]: admissible moduli `N = 4y² + 1` and the classes `D₀..D₃`.
//! - [`bitseq`]: packed periodic sequences, shift, complement, interleave.
//! - [`correlation`]: exact periodic auto/cross-correlation spectra.
//! - [`gf2poly`]: GF(2) polynomials, linear complexity by gcd and by
//!   Berlekamp-Massey.
//! - [`construction`]: the two interleaved sequences and their closed forms.
//! - [`report`]: per-instance verification records.

pub mod bitseq;
pub mod construction;
pub mod correlation;
pub mod cyclotomy;
pub mod gf2poly;
pub mod report;

pub use bitseq::{PeriodicSequence, SeqError};
pub use construction::{construct, CaseTuple, ConstructError, ConstructionInstance, Variant};
pub use correlation::{
    autocorrelation_spectrum, cross_correlation, CorrelationSpectrum, Histogram,
};
pub use cyclotomy::{CyclotomicSystem, ParamError, ParameterSet};
pub use gf2poly::{linear_complexity, BinaryPolynomial, LinearComplexityResult};
pub use report::{analyze, AnalysisReport};
