//! The period-2N interleaved construction and its closed-form predictions.
//!
//! For a case tuple `(i, j, l)`, `u` has characteristic set `D_i ∪ D_j` and
//! `v` has `D_j ∪ D_l` (both zero at position 0). Then
//!
//! ```text
//! s  = I(u,  L^((N+1)/2) v)          weight N - 1
//! s' = I(u', L^((N+1)/2) v)          u' = u with u'(0) = 1, weight N
//! ```

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::bitseq::PeriodicSequence;
use crate::correlation::{autocorrelation_spectrum, cross_correlation_spectrum, Histogram};
use crate::cyclotomy::{ClassIndex, CyclotomicSystem, ParamError};
use crate::gf2poly::{linear_complexity, sequence_polynomial, BinaryPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("case ({0},{1},{2}) is not one of (0,1,2), (2,1,0), (1,2,3), (3,2,1)")]
    InadmissibleCase(u8, u8, u8),
    #[error("cannot parse case tuple {0:?}; expected i,j,l")]
    BadCaseSyntax(String),
    #[error("unknown variant {0:?}; expected s or sprime")]
    BadVariant(String),
    #[error("2 lies in class D{0}; expected D1 or D3")]
    UnexpectedClassOfTwo(ClassIndex),
    #[error(transparent)]
    Param(#[from] ParamError),
}

/// One of the four admissible `(i, j, l)` triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaseTuple {
    i: ClassIndex,
    j: ClassIndex,
    l: ClassIndex,
}

impl CaseTuple {
    pub const ALL: [CaseTuple; 4] = [
        CaseTuple { i: 0, j: 1, l: 2 },
        CaseTuple { i: 2, j: 1, l: 0 },
        CaseTuple { i: 1, j: 2, l: 3 },
        CaseTuple { i: 3, j: 2, l: 1 },
    ];

    pub fn new(i: ClassIndex, j: ClassIndex, l: ClassIndex) -> Result<Self, ConstructError> {
        let c = CaseTuple { i, j, l };
        if Self::ALL.contains(&c) {
            Ok(c)
        } else {
            Err(ConstructError::InadmissibleCase(i, j, l))
        }
    }

    pub fn indices(&self) -> (ClassIndex, ClassIndex, ClassIndex) {
        (self.i, self.j, self.l)
    }

    /// Classes of `(τ+N)/2` on which an odd shift gives `+2`.
    fn plus_two_classes(&self) -> [ClassIndex; 2] {
        if self.j == 1 {
            [1, 3]
        } else {
            [0, 2]
        }
    }
}

impl fmt::Display for CaseTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.i, self.j, self.l)
    }
}

impl FromStr for CaseTuple {
    type Err = ConstructError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ConstructError::BadCaseSyntax(s.to_string());
        let parts: Vec<ClassIndex> = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|p| p.trim().parse::<ClassIndex>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match parts[..] {
            [i, j, l] => Self::new(i, j, l),
            _ => Err(bad()),
        }
    }
}

impl Serialize for CaseTuple {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.i, self.j, self.l].serialize(serializer)
    }
}

/// `S` interleaves `u`; `SPrime` interleaves `u'` (term 0 forced to 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    S,
    SPrime,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::S, Variant::SPrime];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::S => "s",
            Variant::SPrime => "sprime",
        })
    }
}

impl FromStr for Variant {
    type Err = ConstructError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "s" => Ok(Variant::S),
            "sprime" | "s'" | "s_prime" => Ok(Variant::SPrime),
            other => Err(ConstructError::BadVariant(other.to_string())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConstructionInstance {
    pub sys: CyclotomicSystem,
    pub case: CaseTuple,
    pub variant: Variant,
    pub sequence: PeriodicSequence,
    pub base_u: PeriodicSequence,
    pub base_v: PeriodicSequence,
}

impl ConstructionInstance {
    /// `u` or `u'`, whichever the variant interleaves.
    pub fn even_part(&self) -> PeriodicSequence {
        match self.variant {
            Variant::S => self.base_u.clone(),
            Variant::SPrime => self.base_u.set_position(0, true).expect("period ≥ 5"),
        }
    }
}

/// `(u, v)` with characteristic sets `D_i ∪ D_j` and `D_j ∪ D_l`.
pub fn base_pair(sys: &CyclotomicSystem, case: CaseTuple) -> (PeriodicSequence, PeriodicSequence) {
    let n = sys.params().period();
    let (i, j, l) = case.indices();
    let u = PeriodicSequence::from_characteristic_set(n, sys.union_of(i, j))
        .expect("class members are below N");
    let v = PeriodicSequence::from_characteristic_set(n, sys.union_of(j, l))
        .expect("class members are below N");
    (u, v)
}

/// The shift applied to `v` before interleaving.
pub fn v_shift(n: u64) -> i64 {
    n.div_ceil(2) as i64
}

pub fn construct(
    sys: &CyclotomicSystem,
    case: CaseTuple,
    variant: Variant,
) -> ConstructionInstance {
    let (u, v) = base_pair(sys, case);
    let even = match variant {
        Variant::S => u.clone(),
        Variant::SPrime => u.set_position(0, true).expect("period ≥ 5"),
    };
    let odd = v.left_shift(v_shift(sys.n()));
    let sequence = PeriodicSequence::interleave(&even, &odd).expect("equal periods");
    ConstructionInstance {
        sys: sys.clone(),
        case,
        variant,
        sequence,
        base_u: u,
        base_v: v,
    }
}

/// Closed-form autocorrelation of the construction at shift `tau` (mod 2N).
///
/// `2N` at 0, `-2` at even shifts, and at odd `τ ≠ N` the sign follows the
/// class of `(τ+N)/2`: `+2` on `D₁ ∪ D₃` for cases with `j = 1`, `+2` on
/// `D₀ ∪ D₂` for cases with `j = 2`. At `τ = N` the value is `-2` for `s'`
/// and `+2` for `s`, which is the only shift where the two variants differ.
pub fn expected_autocorrelation(
    sys: &CyclotomicSystem,
    case: CaseTuple,
    variant: Variant,
    tau: i64,
) -> i64 {
    let n = sys.n() as i64;
    let tau = tau.rem_euclid(2 * n);
    if tau == 0 {
        return 2 * n;
    }
    if tau == n {
        return match variant {
            Variant::SPrime => -2,
            Variant::S => 2,
        };
    }
    if tau % 2 == 0 {
        return -2;
    }
    let r = (((tau + n) / 2) % n) as usize;
    let class = sys
        .class_of_residue(r)
        .expect("(τ+N)/2 is nonzero mod N for odd τ ≠ N");
    if case.plus_two_classes().contains(&class) {
        2
    } else {
        -2
    }
}

/// The distribution printed for the construction, kept for side-by-side
/// comparison with measured spectra.
pub fn predicted_distribution_theorem1(n: u64, variant: Variant) -> Histogram {
    let n = n as i64;
    let (minus, plus) = match variant {
        Variant::SPrime => ((7 * n - 3) / 4, (n - 1) / 4),
        Variant::S => ((7 * n - 7) / 4, (n + 3) / 4),
    };
    nonzero_histogram([(2 * n, 1), (-2, minus), (2, plus)])
}

/// Distribution obtained by counting the closed-form rows: odd `τ ≠ N`
/// sends `(τ+N)/2` through every nonzero residue once, so `+2` appears on
/// half of them.
pub fn counted_distribution_eq8(n: u64, variant: Variant) -> Histogram {
    let n = n as i64;
    let (minus, plus) = match variant {
        Variant::SPrime => ((3 * n - 1) / 2, (n - 1) / 2),
        Variant::S => ((3 * n - 3) / 2, (n + 1) / 2),
    };
    nonzero_histogram([(2 * n, 1), (-2, minus), (2, plus)])
}

fn nonzero_histogram<const K: usize>(entries: [(i64, i64); K]) -> Histogram {
    entries
        .into_iter()
        .filter(|&(_, c)| c > 0)
        .map(|(v, c)| (v, c as usize))
        .collect()
}

/// `2N - 4` for `s'`, `2N - 5` for `s`.
pub fn lc_lower_bound(variant: Variant, n: u64) -> usize {
    let n = n as usize;
    match variant {
        Variant::SPrime => 2 * n - 4,
        Variant::S => 2 * n - 5,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Corollary1Report {
    pub u_prime_lc: usize,
    pub v_lc: usize,
    pub v_gcd: BinaryPolynomial,
    /// `m_{u'} = x^N + 1`.
    pub u_prime_ok: bool,
    /// `m_v = (x^N + 1)/(x + 1)` with `gcd = x + 1`.
    pub v_ok: bool,
}

impl Corollary1Report {
    pub fn holds(&self) -> bool {
        self.u_prime_ok && self.v_ok
    }
}

/// Minimal polynomials of `u'` and `v` for the case `(0,1,2)` base pair.
pub fn corollary1_check(sys: &CyclotomicSystem) -> Corollary1Report {
    let n = sys.params().period();
    let (u, v) = base_pair(sys, CaseTuple::ALL[0]);
    let u_prime = u.set_position(0, true).expect("period ≥ 5");
    let lu = linear_complexity(&u_prime);
    let lv = linear_complexity(&v);
    let x_plus_one = BinaryPolynomial::x_n_plus_one(1);
    Corollary1Report {
        u_prime_lc: lu.lc,
        v_lc: lv.lc,
        u_prime_ok: lu.minimal_polynomial == BinaryPolynomial::x_n_plus_one(n),
        v_ok: lv.minimal_polynomial == BinaryPolynomial::all_ones(n)
            && lv.gcd_with_xn_minus_1 == x_plus_one,
        v_gcd: lv.gcd_with_xn_minus_1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Corollary2Report {
    pub class_of_two: ClassIndex,
    pub holds: bool,
}

/// With the `(0,1,2)` base pair: if `2 ∈ D₁`, `S_v(x²) + S_{u'}(x)`, and if
/// `2 ∈ D₃`, `S_{u'}(x²) + S_v(x)`, must reduce to `1 + x + … + x^(N-1)`
/// modulo `x^N + 1`. Evaluated at a nonzero `N`th root of unity that sum
/// vanishes, which is the equality `S_v(x²) = S_{u'}(x)` (resp. swapped).
pub fn corollary2_congruence_check(
    sys: &CyclotomicSystem,
) -> Result<Corollary2Report, ConstructError> {
    let n = sys.params().period();
    let (u, v) = base_pair(sys, CaseTuple::ALL[0]);
    let su = sequence_polynomial(&u.set_position(0, true).expect("period ≥ 5"));
    let sv = sequence_polynomial(&v);
    let class_of_two = sys.class_of(2)?;
    let sum = match class_of_two {
        1 => sv.substitute_square().add(&su),
        3 => su.substitute_square().add(&sv),
        other => return Err(ConstructError::UnexpectedClassOfTwo(other)),
    };
    let holds = sum.reduce_cyclic(n) == BinaryPolynomial::all_ones(n);
    Ok(Corollary2Report {
        class_of_two,
        holds,
    })
}

/// Correlation structure of the `(0,1,2)` base pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma5Report {
    /// `R_u` on `D₀ ∪ D₂`, if constant there.
    pub value_on_d0_d2: Option<i64>,
    /// `R_u` on `D₁ ∪ D₃`, if constant there.
    pub value_on_d1_d3: Option<i64>,
    /// The `y` (with `|y| = y_abs`) for which `R_u = -1 - 2y` on `D₀ ∪ D₂`
    /// and `-1 + 2y` on `D₁ ∪ D₃`; `None` if no such `y` exists.
    pub signed_y: Option<i64>,
    /// `R_u(τ) + R_v(τ) = -2` for all `τ ≠ 0`.
    pub auto_sum_holds: bool,
    /// `R_{u,v} = -3` exactly on `D₂`, `+1` elsewhere.
    pub cross_holds: bool,
    /// Number of shifts with `R_{u,v} = -3`.
    pub cross_minus_three_count: usize,
    /// `R_{v,u} = -3` exactly on `D₀`, `+1` elsewhere.
    pub reversed_cross_holds: bool,
    /// `R_{u'}(τ) = R_u(τ)` for all `τ ≠ 0`.
    pub modification_invariant: bool,
}

impl Lemma5Report {
    pub fn holds(&self) -> bool {
        self.signed_y.is_some()
            && self.auto_sum_holds
            && self.cross_holds
            && self.reversed_cross_holds
            && self.modification_invariant
    }
}

fn constant_on(values: &[i64], residues: &[usize]) -> Option<i64> {
    let first = values[*residues.first()?];
    residues
        .iter()
        .all(|&r| values[r] == first)
        .then_some(first)
}

fn matches_on_class(
    values: &[i64],
    sys: &CyclotomicSystem,
    class: ClassIndex,
    hit: i64,
    miss: i64,
) -> bool {
    values.iter().enumerate().all(|(tau, &v)| {
        let expected = if sys.class_of_residue(tau) == Some(class) {
            hit
        } else {
            miss
        };
        v == expected
    })
}

pub fn lemma5_profile(sys: &CyclotomicSystem) -> Lemma5Report {
    let (u, v) = base_pair(sys, CaseTuple::ALL[0]);
    let ru = autocorrelation_spectrum(&u);
    let rv = autocorrelation_spectrum(&v);
    let ruv = cross_correlation_spectrum(&u, &v).expect("equal periods");
    let rvu = cross_correlation_spectrum(&v, &u).expect("equal periods");
    let ru_prime = autocorrelation_spectrum(&u.set_position(0, true).expect("period ≥ 5"));

    let q = sys.union_of(0, 2);
    let p = sys.union_of(1, 3);
    let value_on_d0_d2 = constant_on(&ru.values, &q);
    let value_on_d1_d3 = constant_on(&ru.values, &p);
    let y_abs = sys.params().y_abs as i64;
    let signed_y = match (value_on_d0_d2, value_on_d1_d3) {
        (Some(a), Some(b)) => [y_abs, -y_abs]
            .into_iter()
            .find(|&y| a == -1 - 2 * y && b == -1 + 2 * y),
        _ => None,
    };
    Lemma5Report {
        value_on_d0_d2,
        value_on_d1_d3,
        signed_y,
        auto_sum_holds: (1..ru.period).all(|t| ru.values[t] + rv.values[t] == -2),
        cross_holds: matches_on_class(&ruv.values, sys, 2, -3, 1),
        cross_minus_three_count: ruv.values.iter().filter(|&&x| x == -3).count(),
        reversed_cross_holds: matches_on_class(&rvu.values, sys, 0, -3, 1),
        modification_invariant: (1..ru.period).all(|t| ru.values[t] == ru_prime.values[t]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::histogram_of;

    fn seq(s: &str) -> PeriodicSequence {
        s.parse().unwrap()
    }

    fn sys5() -> CyclotomicSystem {
        CyclotomicSystem::for_modulus(5).unwrap()
    }

    #[test]
    fn case_tuple_validation() {
        assert!(CaseTuple::new(0, 1, 2).is_ok());
        assert_eq!(
            CaseTuple::new(0, 1, 3),
            Err(ConstructError::InadmissibleCase(0, 1, 3))
        );
        assert_eq!("2,1,0".parse::<CaseTuple>().unwrap(), CaseTuple::ALL[1]);
        assert_eq!("(3, 2, 1)".parse::<CaseTuple>().unwrap(), CaseTuple::ALL[3]);
        assert!(matches!(
            "1,2".parse::<CaseTuple>(),
            Err(ConstructError::BadCaseSyntax(_))
        ));
        assert!(matches!(
            "0,2,1".parse::<CaseTuple>(),
            Err(ConstructError::InadmissibleCase(0, 2, 1))
        ));
        assert_eq!("SPRIME".parse::<Variant>().unwrap(), Variant::SPrime);
        assert!("t".parse::<Variant>().is_err());
    }

    #[test]
    fn base_pair_examples() {
        let sys = sys5();
        assert_eq!(
            base_pair(&sys, CaseTuple::ALL[0]),
            (seq("01100"), seq("00101"))
        );
        assert_eq!(
            base_pair(&sys, CaseTuple::ALL[2]),
            (seq("00101"), seq("00011"))
        );
        for n in [5, 37, 101] {
            let sys = CyclotomicSystem::for_modulus(n).unwrap();
            for case in CaseTuple::ALL {
                let (u, v) = base_pair(&sys, case);
                assert_eq!(u.weight() as u64, (n - 1) / 2);
                assert_eq!(v.weight() as u64, (n - 1) / 2);
                assert!(!u.get(0) && !v.get(0));
            }
        }
    }

    #[test]
    fn construct_examples() {
        let sys = sys5();
        let sp = construct(&sys, CaseTuple::ALL[0], Variant::SPrime);
        assert_eq!(sp.sequence, seq("1011100001"));
        assert!(sp.sequence.is_balanced());
        let s = construct(&sys, CaseTuple::ALL[0], Variant::S);
        assert_eq!(s.sequence, seq("0011100001"));
        assert_eq!(s.sequence.weight(), 4);
        assert_eq!(sp.even_part(), seq("11100"));
    }

    #[test]
    fn expected_autocorrelation_examples() {
        let sys = sys5();
        let c = CaseTuple::ALL[0];
        assert_eq!(expected_autocorrelation(&sys, c, Variant::SPrime, 1), 2);
        assert_eq!(expected_autocorrelation(&sys, c, Variant::SPrime, 5), -2);
        assert_eq!(expected_autocorrelation(&sys, c, Variant::SPrime, 4), -2);
        assert_eq!(expected_autocorrelation(&sys, c, Variant::SPrime, 0), 10);
        assert_eq!(expected_autocorrelation(&sys, c, Variant::S, 5), 2);
        assert_eq!(expected_autocorrelation(&sys, c, Variant::SPrime, 11), 2);
    }

    #[test]
    fn closed_form_matches_brute_force_at_five() {
        let sys = sys5();
        for case in CaseTuple::ALL {
            for variant in Variant::ALL {
                let inst = construct(&sys, case, variant);
                let sp = autocorrelation_spectrum(&inst.sequence);
                for tau in 0..10 {
                    assert_eq!(
                        sp.values[tau],
                        expected_autocorrelation(&sys, case, variant, tau as i64),
                        "case {case} {variant} tau {tau}"
                    );
                }
            }
        }
    }

    #[test]
    fn distributions_at_five() {
        assert_eq!(
            predicted_distribution_theorem1(5, Variant::SPrime),
            Histogram::from([(10, 1), (-2, 8), (2, 1)])
        );
        assert_eq!(
            predicted_distribution_theorem1(5, Variant::S),
            Histogram::from([(10, 1), (-2, 7), (2, 2)])
        );
        let counted = counted_distribution_eq8(5, Variant::SPrime);
        assert_eq!(counted, Histogram::from([(10, 1), (2, 2), (-2, 7)]));
        let measured = histogram_of(&autocorrelation_spectrum(&seq("1011100001")).values);
        assert_eq!(measured, counted);
        assert_ne!(
            measured,
            predicted_distribution_theorem1(5, Variant::SPrime)
        );
    }

    #[test]
    fn counted_distribution_shape() {
        for n in [5u64, 37, 101, 197, 677] {
            for variant in Variant::ALL {
                let h = counted_distribution_eq8(n, variant);
                assert_eq!(h.values().sum::<usize>() as u64, 2 * n);
                // R(τ) = R(2N-τ) pairs every odd τ ≠ N; τ = N is self-paired
                let plus_from_pairs = h[&2] - usize::from(variant == Variant::S);
                assert_eq!(plus_from_pairs % 2, 0);
            }
        }
    }

    #[test]
    fn lc_bound_examples() {
        assert_eq!(lc_lower_bound(Variant::SPrime, 5), 6);
        assert_eq!(lc_lower_bound(Variant::S, 5), 5);
        assert_eq!(lc_lower_bound(Variant::SPrime, 37), 70);
    }

    #[test]
    fn corollary_checks_at_five() {
        let sys = sys5();
        let c1 = corollary1_check(&sys);
        assert!(c1.holds());
        assert_eq!((c1.u_prime_lc, c1.v_lc), (5, 4));

        let c2 = corollary2_congruence_check(&sys).unwrap();
        assert_eq!(
            c2,
            Corollary2Report {
                class_of_two: 1,
                holds: true
            }
        );

        let alt = CyclotomicSystem::with_beta(5, Some(3)).unwrap();
        let c2 = corollary2_congruence_check(&alt).unwrap();
        assert_eq!(
            c2,
            Corollary2Report {
                class_of_two: 3,
                holds: true
            }
        );
    }

    #[test]
    fn corollary2_by_hand_at_five() {
        // S_v(x²) = x⁴ + x⁸ ≡ x⁴ + x³, S_u' = 1 + x + x²
        let sv = sequence_polynomial(&seq("00101"))
            .substitute_square()
            .reduce_cyclic(5);
        assert_eq!(sv, "x^4 + x^3".parse().unwrap());
        let su = sequence_polynomial(&seq("11100"));
        assert_eq!(sv.add(&su), BinaryPolynomial::all_ones(5));
    }

    #[test]
    fn lemma5_at_five() {
        let r = lemma5_profile(&sys5());
        assert_eq!(r.value_on_d0_d2, Some(1));
        assert_eq!(r.value_on_d1_d3, Some(-3));
        assert_eq!(r.signed_y, Some(-1));
        assert_eq!(r.cross_minus_three_count, 1);
        assert!(r.holds());

        // the other root swaps D1 and D3, which flips the observed sign
        let alt = lemma5_profile(&CyclotomicSystem::with_beta(5, Some(3)).unwrap());
        assert_eq!(alt.signed_y, Some(1));
        assert!(alt.holds());
    }
}
