//! Exact periodic correlation.
//!
//! `R_{u,v}(τ) = Σ_{i<n} (-1)^{u(i) + v(i+τ)}`, evaluated as
//! `n - 2·popcount(u ⊕ L^τ v)` on packed words. Everything is integer
//! arithmetic; shifts are normalized into `[0, n)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitseq::{read_word, PeriodicSequence, SeqError};

/// Value → multiplicity. Ordered so serialized output is stable.
pub type Histogram = BTreeMap<i64, usize>;

// below this many shifts the rayon split costs more than it saves
const PARALLEL_SHIFTS: usize = 1024;

pub fn histogram_of(values: &[i64]) -> Histogram {
    let mut h = Histogram::new();
    for &v in values {
        *h.entry(v).or_default() += 1;
    }
    h
}

/// Correlation values at every shift, plus their histogram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrelationSpectrum {
    pub period: usize,
    pub values: Vec<i64>,
    pub histogram: Histogram,
}

impl CorrelationSpectrum {
    fn from_values(values: Vec<i64>) -> Self {
        let histogram = histogram_of(&values);
        Self {
            period: values.len(),
            values,
            histogram,
        }
    }

    pub fn value(&self, tau: i64) -> i64 {
        self.values[tau.rem_euclid(self.period as i64) as usize]
    }

    /// Values at `0 < τ < n`.
    pub fn out_of_phase(&self) -> &[i64] {
        &self.values[1..]
    }

    /// `tau,value` header then one row per shift.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("tau,value\n");
        for (tau, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{tau},{v}\n"));
        }
        out
    }

    pub fn histogram_json(&self) -> String {
        serde_json::to_string(&self.histogram).expect("histogram serializes")
    }
}

#[inline]
fn mismatches_at(u: &PeriodicSequence, v_doubled: &[u64], tau: usize) -> usize {
    let words = u.words();
    let last = words.len() - 1;
    let tail = match u.period() % 64 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    };
    words
        .iter()
        .enumerate()
        .map(|(w, &uw)| {
            let mut x = uw ^ read_word(v_doubled, tau + 64 * w);
            if w == last {
                x &= tail;
            }
            x.count_ones() as usize
        })
        .sum()
}

fn check_periods(u: &PeriodicSequence, v: &PeriodicSequence) -> Result<(), SeqError> {
    if u.period() != v.period() {
        return Err(SeqError::PeriodMismatch {
            left: u.period(),
            right: v.period(),
        });
    }
    Ok(())
}

pub fn cross_correlation(
    u: &PeriodicSequence,
    v: &PeriodicSequence,
    tau: i64,
) -> Result<i64, SeqError> {
    check_periods(u, v)?;
    let n = u.period();
    let tau = tau.rem_euclid(n as i64) as usize;
    let d = mismatches_at(u, &v.doubled_words(), tau);
    Ok(n as i64 - 2 * d as i64)
}

pub fn cross_correlation_spectrum(
    u: &PeriodicSequence,
    v: &PeriodicSequence,
) -> Result<CorrelationSpectrum, SeqError> {
    check_periods(u, v)?;
    let n = u.period();
    let vd = v.doubled_words();
    let at = |tau: usize| n as i64 - 2 * mismatches_at(u, &vd, tau) as i64;
    let values: Vec<i64> = if n >= PARALLEL_SHIFTS {
        (0..n).into_par_iter().map(at).collect()
    } else {
        (0..n).map(at).collect()
    };
    Ok(CorrelationSpectrum::from_values(values))
}

pub fn autocorrelation_spectrum(s: &PeriodicSequence) -> CorrelationSpectrum {
    cross_correlation_spectrum(s, s).expect("a sequence has its own period")
}

/// Checks the even/odd split of the autocorrelation of `I(a, b)`:
/// `R(2k) = R_a(k) + R_b(k)` and `R(2k+1) = R_{a,b}(k) + R_{b,a}(k+1)`.
pub fn interleaved_decomposition_check(
    a: &PeriodicSequence,
    b: &PeriodicSequence,
) -> Result<bool, SeqError> {
    let s = PeriodicSequence::interleave(a, b)?;
    let rs = autocorrelation_spectrum(&s);
    let ra = autocorrelation_spectrum(a);
    let rb = autocorrelation_spectrum(b);
    let rab = cross_correlation_spectrum(a, b)?;
    let rba = cross_correlation_spectrum(b, a)?;
    let ok = (0..s.period() as i64).all(|tau| {
        let k = tau / 2;
        let expected = if tau % 2 == 0 {
            ra.value(k) + rb.value(k)
        } else {
            rab.value(k) + rba.value(k + 1)
        };
        rs.value(tau) == expected
    });
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> PeriodicSequence {
        s.parse().unwrap()
    }

    // term-by-term definition, kept separate from the packed kernel
    fn naive(u: &PeriodicSequence, v: &PeriodicSequence, tau: usize) -> i64 {
        (0..u.period())
            .map(|i| if u.get(i) ^ v.get(i + tau) { -1 } else { 1 })
            .sum()
    }

    #[test]
    fn cross_correlation_examples() {
        let u = seq("01100");
        let v = seq("00101");
        assert_eq!(cross_correlation(&u, &v, 4), Ok(-3));
        assert_eq!(cross_correlation(&u, &u, 0), Ok(5));
        assert_eq!(cross_correlation(&u, &v, 1), Ok(1));
        assert_eq!(cross_correlation(&u, &v, -1), Ok(-3));
        assert!(cross_correlation(&u, &seq("0101"), 0).is_err());
    }

    #[test]
    fn spectrum_examples() {
        let sp = autocorrelation_spectrum(&seq("1011100001"));
        assert_eq!(sp.values, vec![10, 2, -2, -2, -2, -2, -2, -2, -2, 2]);
        assert_eq!(sp.histogram, Histogram::from([(10, 1), (2, 2), (-2, 7)]));

        let z = autocorrelation_spectrum(&seq("00000"));
        assert!(z.values.iter().all(|&v| v == 5));

        let s = autocorrelation_spectrum(&seq("0011100001"));
        assert_eq!(s.histogram, Histogram::from([(10, 1), (2, 3), (-2, 6)]));
    }

    #[test]
    fn csv_and_json_forms() {
        let sp = autocorrelation_spectrum(&seq("0110"));
        assert_eq!(sp.to_csv(), "tau,value\n0,4\n1,0\n2,-4\n3,0\n");
        assert_eq!(sp.histogram_json(), r#"{"-4":1,"0":2,"4":1}"#);
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(
            interleaved_decomposition_check(&seq("11100"), &seq("01001")),
            Ok(true)
        );
        assert_eq!(
            interleaved_decomposition_check(&seq("00000"), &seq("00000")),
            Ok(true)
        );
        assert!(interleaved_decomposition_check(&seq("1"), &seq("10")).is_err());
    }

    #[test]
    fn large_period_uses_same_values() {
        let n = 1500;
        let s =
            PeriodicSequence::from_bits((0..n).map(|i: usize| (i * i + 3 * i) % 7 < 3)).unwrap();
        let sp = autocorrelation_spectrum(&s);
        for tau in [0usize, 1, 63, 64, 700, 1499] {
            assert_eq!(sp.values[tau], naive(&s, &s, tau));
        }
    }

    fn arb_pair(max: usize) -> impl Strategy<Value = (PeriodicSequence, PeriodicSequence)> {
        (1..=max).prop_flat_map(|n| {
            (
                prop::collection::vec(any::<bool>(), n),
                prop::collection::vec(any::<bool>(), n),
            )
                .prop_map(|(a, b)| {
                    (
                        PeriodicSequence::from_bits(a).unwrap(),
                        PeriodicSequence::from_bits(b).unwrap(),
                    )
                })
        })
    }

    proptest! {
        #[test]
        fn packed_matches_naive((u, v) in arb_pair(150)) {
            let sp = cross_correlation_spectrum(&u, &v).unwrap();
            for tau in 0..u.period() {
                prop_assert_eq!(sp.values[tau], naive(&u, &v, tau));
            }
            prop_assert_eq!(sp.histogram.values().sum::<usize>(), u.period());
        }

        #[test]
        fn autocorrelation_is_symmetric_with_parity((u, _v) in arb_pair(150)) {
            let sp = autocorrelation_spectrum(&u);
            let n = u.period() as i64;
            prop_assert_eq!(sp.values[0], n);
            for tau in 0..n {
                prop_assert_eq!(sp.value(tau), sp.value(n - tau));
                prop_assert_eq!((sp.value(tau) - n).rem_euclid(2), 0);
            }
        }
    }
}
