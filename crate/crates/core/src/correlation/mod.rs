//! Periodic auto- and cross-correlation, the support-counting identity, and
//! the four-way optimality classification by `N mod 4`.
//!
//! Two independent routes compute the same numbers: [`oracle`] evaluates the
//! defining sum literally, [`kernel`] works on packed words. The free functions
//! in this module go through the kernel.

pub mod kernel;
pub mod oracle;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::BinarySequence;

use kernel::Correlator;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumKind {
    Auto,
    Cross,
}

/// Correlation values `R(tau)` for `tau = 0..N-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrelationSpectrum {
    pub period: usize,
    pub kind: SpectrumKind,
    pub values: Vec<i64>,
}

impl CorrelationSpectrum {
    pub fn new(kind: SpectrumKind, values: Vec<i64>) -> Self {
        Self {
            period: values.len(),
            kind,
            values,
        }
    }

    /// Values at `tau = 1..N-1`.
    pub fn out_of_phase(&self) -> &[i64] {
        &self.values[1..]
    }

    /// Distinct out-of-phase values.
    pub fn out_of_phase_set(&self) -> BTreeSet<i64> {
        self.out_of_phase().iter().copied().collect()
    }

    /// Distinct values over every lag, `tau = 0` included.
    pub fn value_set(&self) -> BTreeSet<i64> {
        self.values.iter().copied().collect()
    }

    /// Number of distinct values, `tau = 0` included.
    pub fn levels(&self) -> usize {
        self.value_set().len()
    }

    /// JSON document with the classification attached for autocorrelation spectra.
    pub fn to_document(&self) -> SpectrumDocument {
        let classification = match self.kind {
            SpectrumKind::Auto => classify(self).ok(),
            SpectrumKind::Cross => None,
        };
        SpectrumDocument {
            period: self.period,
            kind: self.kind,
            values: self.values.clone(),
            classification,
        }
    }
}

/// Serialized form of a spectrum. Field order is the wire order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub period: usize,
    pub kind: SpectrumKind,
    pub values: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub classification: Option<OptimalityClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Ideal,
    Optimal,
    NotOptimal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalityClass {
    /// `N mod 4`.
    pub residue: u8,
    #[serde(skip)]
    pub allowed_out_of_phase: Vec<i64>,
    pub verdict: Verdict,
}

impl OptimalityClass {
    /// Ideal counts as optimal: for `N = 3 mod 4` the two coincide.
    pub fn is_optimal(&self) -> bool {
        matches!(self.verdict, Verdict::Ideal | Verdict::Optimal)
    }

    pub fn is_ideal(&self) -> bool {
        self.verdict == Verdict::Ideal
    }
}

/// Smallest admissible out-of-phase autocorrelation values for a period.
pub fn allowed_out_of_phase(period: usize) -> Vec<i64> {
    match period % 4 {
        0 => vec![-4, 0, 4],
        1 => vec![-3, 1],
        2 => vec![-2, 2],
        _ => vec![-1],
    }
}

/// `R_{a,b}(tau)`; `tau` may be any integer.
pub fn cross_correlation(a: &BinarySequence, b: &BinarySequence, tau: i64) -> Result<i64> {
    a.ensure_same_period(b)?;
    let tau = tau.rem_euclid(a.period() as i64) as usize;
    Ok(Correlator::new(a, b).at(tau))
}

pub fn autocorrelation(a: &BinarySequence, tau: i64) -> i64 {
    cross_correlation(a, a, tau).expect("same sequence")
}

pub fn autocorrelation_spectrum(a: &BinarySequence) -> CorrelationSpectrum {
    CorrelationSpectrum::new(SpectrumKind::Auto, Correlator::new(a, a).spectrum())
}

pub fn cross_correlation_spectrum(
    a: &BinarySequence,
    b: &BinarySequence,
) -> Result<CorrelationSpectrum> {
    a.ensure_same_period(b)?;
    Ok(CorrelationSpectrum::new(
        SpectrumKind::Cross,
        Correlator::new(a, b).spectrum(),
    ))
}

/// `R_a(tau) = N - 4(|C_a| - |(tau + C_a) ∩ C_a|)`, counted on the support.
pub fn autocorrelation_via_support(a: &BinarySequence, tau: i64) -> i64 {
    let n = a.period() as i64;
    let support = a.support();
    let overlap = support
        .iter()
        .filter(|&&c| support.contains(&((c as i64 + tau).rem_euclid(n) as usize)))
        .count() as i64;
    n - 4 * (support.len() as i64 - overlap)
}

/// Optimality verdict for an autocorrelation spectrum.
///
/// Only out-of-phase lags take part. For `N = 0 mod 4` any subset of
/// `{0, -4, 4}` counts as optimal.
pub fn classify(spectrum: &CorrelationSpectrum) -> Result<OptimalityClass> {
    if spectrum.kind != SpectrumKind::Auto {
        return Err(Error::InvalidInput(
            "optimality is only defined for autocorrelation spectra".into(),
        ));
    }
    let n = spectrum.period;
    let allowed = allowed_out_of_phase(n);
    let within = spectrum
        .out_of_phase()
        .iter()
        .all(|v| allowed.contains(v));
    let verdict = match (within, n % 4) {
        (false, _) => Verdict::NotOptimal,
        (true, 3) => Verdict::Ideal,
        (true, _) => Verdict::Optimal,
    };
    Ok(OptimalityClass {
        residue: (n % 4) as u8,
        allowed_out_of_phase: allowed,
        verdict,
    })
}

/// Shorthand for `classify(&autocorrelation_spectrum(a))`.
pub fn classify_sequence(a: &BinarySequence) -> OptimalityClass {
    classify(&autocorrelation_spectrum(a)).expect("auto spectrum")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    Neither,
}

/// Symmetric: `s(t) = s(N-t)`; antisymmetric: `s(t) + s(N-t) = 1`; both for
/// `t = 1..N-1`, with `t = 0` exempt. Period 1 is reported as symmetric.
pub fn symmetry_type(s: &BinarySequence) -> Symmetry {
    let n = s.period();
    let pairs = || (1..n).map(|t| (s.get(t), s.get(n - t)));
    if pairs().all(|(x, y)| x == y) {
        Symmetry::Symmetric
    } else if pairs().all(|(x, y)| x != y) {
        Symmetry::Antisymmetric
    } else {
        Symmetry::Neither
    }
}
