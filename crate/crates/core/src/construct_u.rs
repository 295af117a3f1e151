//! Period-`4N` sequences from a Construction A/B pair:
//!
//! `u = I(s', L^{1/4+eta}(s') + 1, L^{1/2}(s) + 1, L^{3/4+eta}(s) + 1)`
//!
//! A fraction `x/y` in a shift exponent is the integer `x * y^{-1} mod N`,
//! which needs `N` odd.
//!
//! [`UPredictor`] evaluates the closed-form autocorrelation of `u` from the
//! measured spectrum of `s` and the column balances, in either of two balance
//! regimes. Nothing here assumes `s` is ideal.

use serde::{Deserialize, Serialize};

use crate::arith::mod_inverse;
use crate::correlation::autocorrelation_spectrum;
use crate::error::{Error, Result};
use crate::interleave::{self, InterleavedSpec};
use crate::sequence::BinarySequence;

/// `num * den^{-1} mod n`, in `0..n`.
pub fn modular_fraction(num: i64, den: i64, n: u64) -> Result<u64> {
    let inv = mod_inverse(den, n).ok_or(Error::NotInvertible { den, modulus: n })?;
    let num = num.rem_euclid(n as i64) as i128;
    Ok((num * inv as i128).rem_euclid(n as i128) as u64)
}

/// Shift amounts of the period-`4N` construction for an odd inner period `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UParameters {
    pub n: usize,
    /// `eta mod N`.
    pub eta: usize,
    /// `4^{-1} mod N`.
    pub quarter: usize,
    /// `2^{-1} mod N`.
    pub half: usize,
    /// `3 * 4^{-1} mod N`.
    pub three_quarter: usize,
}

impl UParameters {
    pub fn new(n: usize, eta: i64) -> Result<Self> {
        if n % 2 == 0 {
            return Err(Error::EvenPeriod(n));
        }
        let m = n as u64;
        Ok(Self {
            n,
            eta: eta.rem_euclid(n as i64) as usize,
            quarter: modular_fraction(1, 4, m)? as usize,
            half: modular_fraction(1, 2, m)? as usize,
            three_quarter: modular_fraction(3, 4, m)? as usize,
        })
    }

    /// `(x + sign * eta + mu1) mod N`.
    fn offset(&self, x: usize, sign: i64, mu1: usize) -> usize {
        (x as i64 + sign * self.eta as i64 + mu1 as i64).rem_euclid(self.n as i64) as usize
    }
}

/// Builds `u` of period `4N` from `s` (Construction A) and `s'` (Construction B).
pub fn build_u(s: &BinarySequence, s_prime: &BinarySequence, eta: i64) -> Result<BinarySequence> {
    s.ensure_same_period(s_prime)?;
    let p = UParameters::new(s.period(), eta)?;
    let columns = vec![
        s_prime.clone(),
        s_prime
            .shift_left((p.quarter + p.eta) as i64)
            .add_constant(true),
        s.shift_left(p.half as i64).add_constant(true),
        s.shift_left((p.three_quarter + p.eta) as i64)
            .add_constant(true),
    ];
    Ok(interleave::build(&InterleavedSpec::new(columns)?))
}

/// `u` for the Construction A/B pair over `spec`'s columns `1..T`.
pub fn build_u_from_spec(spec: &InterleavedSpec, eta: i64) -> Result<BinarySequence> {
    let (s, s_prime) = construction_pair(spec)?;
    build_u(&s, &s_prime, eta)
}

/// `(s, s')` built with Constructions A and B from columns `1..T` of `spec`.
pub fn construction_pair(spec: &InterleavedSpec) -> Result<(BinarySequence, BinarySequence)> {
    let rest = spec.nonconstant_part();
    Ok((
        interleave::build(&interleave::construction_a(rest)?),
        interleave::build(&interleave::construction_b(rest)?),
    ))
}

/// Which balance hypothesis the closed form is evaluated under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "regime")]
pub enum Regime {
    /// `d(a_x) = c1` for `x = 1..T-1`.
    ConstantBalance { c1: i64 },
    /// `d(a_x) + d(a_{T-x}) = 0` for `x = 1..T-1`.
    AntisymmetricBalance,
}

impl Regime {
    /// Constant regime with `c1` read off column 1.
    pub fn constant_from(spec: &InterleavedSpec) -> Self {
        Regime::ConstantBalance {
            c1: spec.column(1).balance(),
        }
    }

    /// First column `x` in `1..T` where the hypothesis fails.
    pub fn violation(&self, spec: &InterleavedSpec) -> Option<(usize, String)> {
        let d = spec.balances();
        let t = spec.t();
        match *self {
            Regime::ConstantBalance { c1 } => (1..t)
                .find(|&x| d[x] != c1)
                .map(|x| (x, format!("d(a_{x}) = {} but c1 = {c1}", d[x]))),
            Regime::AntisymmetricBalance => (1..t).find(|&x| d[x] + d[t - x] != 0).map(|x| {
                (
                    x,
                    format!(
                        "d(a_{x}) + d(a_{}) = {} + {} != 0",
                        t - x,
                        d[x],
                        d[t - x]
                    ),
                )
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisCheck {
    /// Reject specs that do not satisfy the regime.
    Strict,
    /// Predict anyway; mismatches show up in verification.
    Override,
}

/// Balance index used in the `mu2 = 1` row of the antisymmetric regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mu1Index {
    /// `(1/4 - eta + mu1) mod T`.
    TauOneMinus,
    /// `(3/4 - eta + mu1) mod T`.
    TauTwoMinus,
}

/// Balance index used in the `mu2 = 3` row of the antisymmetric regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mu3Index {
    /// `(3/4 + eta + mu1) mod T`.
    TauTwoPlus,
    /// `(3/4 - eta + mu1) mod T`.
    TauTwoMinus,
}

/// Index choices for the two balance-dependent rows of the antisymmetric
/// regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexReading {
    pub mu1: Mu1Index,
    pub mu3: Mu3Index,
}

impl IndexReading {
    /// Indices that follow from expanding the correlation sums.
    pub const DERIVED: Self = Self {
        mu1: Mu1Index::TauOneMinus,
        mu3: Mu3Index::TauTwoPlus,
    };
    /// Indices exactly as the published table prints them.
    pub const PRINTED: Self = Self {
        mu1: Mu1Index::TauTwoMinus,
        mu3: Mu3Index::TauTwoMinus,
    };
}

impl Default for IndexReading {
    fn default() -> Self {
        Self::DERIVED
    }
}

/// Residues of `mu1` shifted by the construction offsets, all reduced mod `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReducedOffsets {
    /// `mu1 mod T`.
    pub tau2: usize,
    /// `(1/4 + eta + mu1) mod T`.
    pub tau1_plus: usize,
    /// `(1/4 - eta + mu1) mod T`.
    pub tau1_minus: usize,
    /// `(3/4 + eta + mu1) mod T`.
    pub tau2_plus: usize,
    /// `(3/4 - eta + mu1) mod T`.
    pub tau2_minus: usize,
}

/// Closed-form autocorrelation of `u` for one spec and `eta`.
#[derive(Debug, Clone)]
pub struct UPredictor {
    params: UParameters,
    t: usize,
    balances: Vec<i64>,
    rs: Vec<i64>,
    regime: Regime,
    reading: IndexReading,
}

impl UPredictor {
    /// `spec`'s column 0 is ignored; `s` is Construction A over columns `1..T`.
    /// The period `KT` must be odd.
    pub fn new(
        spec: &InterleavedSpec,
        eta: i64,
        regime: Regime,
        check: HypothesisCheck,
    ) -> Result<Self> {
        let spec_a = interleave::construction_a(spec.nonconstant_part())?;
        if check == HypothesisCheck::Strict {
            if let Some((column, detail)) = regime.violation(&spec_a) {
                return Err(Error::HypothesisViolated { column, detail });
            }
        }
        let params = UParameters::new(spec_a.period(), eta)?;
        let s = interleave::build(&spec_a);
        Ok(Self {
            params,
            t: spec_a.t(),
            balances: spec_a.balances(),
            rs: autocorrelation_spectrum(&s).values,
            regime,
            reading: IndexReading::DERIVED,
        })
    }

    pub fn with_reading(mut self, reading: IndexReading) -> Self {
        self.reading = reading;
        self
    }

    pub fn params(&self) -> &UParameters {
        &self.params
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Period of `u`.
    pub fn period(&self) -> usize {
        4 * self.params.n
    }

    /// `mu = 4 mu1 + mu2` with `mu` reduced mod `4N`.
    pub fn split(&self, mu: i64) -> (usize, usize) {
        let mu = mu.rem_euclid(self.period() as i64) as usize;
        (mu / 4, mu % 4)
    }

    pub fn offsets(&self, mu1: usize) -> ReducedOffsets {
        let p = &self.params;
        let t = self.t;
        ReducedOffsets {
            tau2: mu1 % t,
            tau1_plus: p.offset(p.quarter, 1, mu1) % t,
            tau1_minus: p.offset(p.quarter, -1, mu1) % t,
            tau2_plus: p.offset(p.three_quarter, 1, mu1) % t,
            tau2_minus: p.offset(p.three_quarter, -1, mu1) % t,
        }
    }

    /// Predicted `R_u(mu)`.
    pub fn predict(&self, mu: i64) -> i64 {
        let (mu1, mu2) = self.split(mu);
        let n = self.params.n as i64;
        if mu1 == 0 && mu2 == 0 {
            return 4 * n;
        }
        let o = self.offsets(mu1);
        let d = &self.balances;
        let rs = self.rs[mu1];
        match (self.regime, mu2) {
            (_, 2) => 0,
            (Regime::ConstantBalance { c1 }, 0) => {
                if o.tau2 == 0 {
                    4 * rs
                } else {
                    4 * rs + 8 * c1
                }
            }
            (Regime::ConstantBalance { c1 }, 1) => {
                if o.tau1_plus == 0 {
                    0
                } else {
                    -4 * c1
                }
            }
            (Regime::ConstantBalance { c1 }, _) => {
                if o.tau2_minus == 0 {
                    0
                } else {
                    -4 * c1
                }
            }
            (Regime::AntisymmetricBalance, 0) => 4 * rs,
            (Regime::AntisymmetricBalance, 1) => {
                if o.tau1_minus == 0 {
                    return 0;
                }
                let idx = match self.reading.mu1 {
                    Mu1Index::TauOneMinus => o.tau1_minus,
                    Mu1Index::TauTwoMinus => o.tau2_minus,
                };
                4 * d[idx]
            }
            (Regime::AntisymmetricBalance, _) => {
                if o.tau2_plus == 0 {
                    return 0;
                }
                let idx = match self.reading.mu3 {
                    Mu3Index::TauTwoPlus => o.tau2_plus,
                    Mu3Index::TauTwoMinus => o.tau2_minus,
                };
                -4 * d[idx]
            }
        }
    }

    /// Predicted values for every `mu` in `0..4N`.
    pub fn predict_all(&self) -> Vec<i64> {
        (0..self.period() as i64).map(|mu| self.predict(mu)).collect()
    }

    /// `R_u(mu)` from the four per-residue sums before any balance hypothesis
    /// is applied. Valid for every spec.
    pub fn predict_unrestricted(&self, mu: i64) -> i64 {
        let (mu1, mu2) = self.split(mu);
        let t = self.t;
        let d = &self.balances;
        // d(a_x) + d(a_{T-x}) and d(a_x) - d(a_{T-x}) for x != 0
        let pair_sum = |x: usize| if x == 0 { 0 } else { d[x] + d[t - x] };
        let pair_diff = |x: usize| if x == 0 { 0 } else { d[x] - d[t - x] };
        let o = self.offsets(mu1);
        match mu2 {
            0 => 4 * self.rs[mu1] + 4 * pair_sum(o.tau2),
            1 => -2 * pair_sum(o.tau1_plus) + 2 * pair_diff(o.tau1_minus),
            2 => 0,
            _ => -2 * pair_sum(o.tau2_minus) - 2 * pair_diff(o.tau2_plus),
        }
    }
}

/// One-shot `R_u(mu)` prediction; builds a fresh [`UPredictor`].
pub fn predict_r_u(mu: i64, spec: &InterleavedSpec, eta: i64, regime: Regime) -> Result<i64> {
    Ok(UPredictor::new(spec, eta, regime, HypothesisCheck::Strict)?.predict(mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::{autocorrelation_spectrum, classify_sequence, oracle, Verdict};
    use crate::generators::{legendre, m_sequence_array, LegendreKind};
    use proptest::prelude::*;

    fn mseq15() -> InterleavedSpec {
        m_sequence_array(4, None).unwrap()
    }

    fn k1_embedding(s: &BinarySequence) -> InterleavedSpec {
        InterleavedSpec::new(
            (0..s.period())
                .map(|t| BinarySequence::from_bits(&[s.bit(t as i64)]).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn fractions() {
        assert_eq!(modular_fraction(1, 4, 15).unwrap(), 4);
        assert_eq!(modular_fraction(1, 2, 15).unwrap(), 8);
        assert_eq!(modular_fraction(3, 4, 7).unwrap(), 6);
        assert_eq!(modular_fraction(-1, 4, 7).unwrap(), 5);
        assert_eq!(
            modular_fraction(1, 4, 12),
            Err(Error::NotInvertible { den: 4, modulus: 12 })
        );
    }

    #[test]
    fn parameters() {
        for n in (1..200usize).step_by(2) {
            let p = UParameters::new(n, -3).unwrap();
            assert_eq!((4 * p.quarter) % n, 1 % n);
            assert_eq!((2 * p.half) % n, 1 % n);
            assert_eq!(p.three_quarter, (3 * p.quarter) % n);
            assert_eq!(p.eta, (-3i64).rem_euclid(n as i64) as usize);
        }
        assert_eq!(UParameters::new(12, 0), Err(Error::EvenPeriod(12)));
    }

    #[test]
    fn legendre_seven_gives_optimal_period_28() {
        let s = legendre(7, LegendreKind::Second).unwrap();
        let s_prime = legendre(7, LegendreKind::First).unwrap();
        let u = build_u(&s, &s_prime, 0).unwrap();
        assert_eq!(u.period(), 28);
        assert!(autocorrelation_spectrum(&u)
            .out_of_phase()
            .iter()
            .all(|v| [0, -4, 4].contains(v)));
        assert_eq!(classify_sequence(&u).verdict, Verdict::Optimal);
    }

    #[test]
    fn mseq_gives_optimal_period_60() {
        let spec = mseq15();
        let u = build_u_from_spec(&spec, 0).unwrap();
        assert_eq!(u.period(), 60);
        assert_eq!(classify_sequence(&u).verdict, Verdict::Optimal);
        let (_, s_prime) = construction_pair(&spec).unwrap();
        assert_eq!(interleave::to_array(&u, 15, 4).unwrap().column(0), &s_prime);
    }

    #[test]
    fn build_u_rejects_bad_periods() {
        let a: BinarySequence = "0110".parse().unwrap();
        assert_eq!(build_u(&a, &a, 0), Err(Error::EvenPeriod(4)));
        let b: BinarySequence = "011".parse().unwrap();
        assert!(matches!(build_u(&a, &b, 0), Err(Error::PeriodMismatch { .. })));
    }

    #[test]
    fn predictor_examples() {
        let spec = mseq15();
        let regime = Regime::constant_from(&spec);
        assert_eq!(regime, Regime::ConstantBalance { c1: 1 });
        let u = build_u_from_spec(&spec, 0).unwrap();
        assert_eq!(predict_r_u(0, &spec, 0, regime).unwrap(), 60);
        for mu1 in 0..15 {
            assert_eq!(predict_r_u(4 * mu1 + 2, &spec, 0, regime).unwrap(), 0);
        }
        // mu = 4: mu1 = 1, tau2 = 1; mu = 20: mu1 = 5, tau2 = 0
        assert_eq!(predict_r_u(4, &spec, 0, regime).unwrap(), 4);
        assert_eq!(predict_r_u(20, &spec, 0, regime).unwrap(), -4);
        for mu in [4, 20] {
            assert_eq!(
                predict_r_u(mu, &spec, 0, regime).unwrap(),
                oracle::cross_correlation(&u, &u, mu).unwrap()
            );
        }
    }

    #[test]
    fn strict_hypothesis_reports_column() {
        let spec = InterleavedSpec::new(
            ["000", "011", "111", "011", "011"].iter().map(|c| c.parse().unwrap()).collect(),
        )
        .unwrap();
        let err = UPredictor::new(&spec, 0, Regime::ConstantBalance { c1: 1 }, HypothesisCheck::Strict)
            .unwrap_err();
        assert!(matches!(err, Error::HypothesisViolated { column: 2, .. }), "{err:?}");
        let err = UPredictor::new(&spec, 0, Regime::AntisymmetricBalance, HypothesisCheck::Strict)
            .unwrap_err();
        assert!(matches!(err, Error::HypothesisViolated { column: 1, .. }), "{err:?}");
        assert!(UPredictor::new(&spec, 0, Regime::AntisymmetricBalance, HypothesisCheck::Override).is_ok());
    }

    #[test]
    fn derived_reading_matches_oracle_on_legendre() {
        for p in [7u64, 11, 19, 23] {
            let s = legendre(p, LegendreKind::Second).unwrap();
            let spec = k1_embedding(&s);
            for eta in 0..p as i64 {
                let pred =
                    UPredictor::new(&spec, eta, Regime::AntisymmetricBalance, HypothesisCheck::Strict)
                        .unwrap();
                let u = build_u_from_spec(&spec, eta).unwrap();
                assert_eq!(pred.predict_all(), oracle::autocorrelation_spectrum(&u).values, "p={p} eta={eta}");
            }
        }
    }

    fn arb_odd_spec() -> impl Strategy<Value = InterleavedSpec> {
        (0usize..4, 1usize..6)
            .prop_flat_map(|(k, t)| {
                let (k, t) = (2 * k + 1, 2 * t + 1);
                prop::collection::vec(prop::collection::vec(any::<bool>(), k), t)
            })
            .prop_map(|cols| {
                InterleavedSpec::new(
                    cols.into_iter().map(|c| BinarySequence::from_bools(c).unwrap()).collect(),
                )
                .unwrap()
            })
    }

    proptest! {
        #[test]
        fn unrestricted_formula_matches_oracle(spec in arb_odd_spec(), eta in -20i64..20) {
            let pred = UPredictor::new(&spec, eta, Regime::AntisymmetricBalance, HypothesisCheck::Override).unwrap();
            let u = build_u_from_spec(&spec, eta).unwrap();
            let observed = oracle::autocorrelation_spectrum(&u).values;
            for mu in 0..u.period() {
                let expected = if mu == 0 { u.period() as i64 } else { pred.predict_unrestricted(mu as i64) };
                prop_assert_eq!(expected, observed[mu], "mu={}", mu);
            }
        }
    }
}
