//! Definition-level correlation: the literal sum over `t`, with no packing.
//!
//! Slow on purpose. Everything faster in the crate is tested against it.

use crate::error::Result;
use crate::sequence::BinarySequence;

use super::{CorrelationSpectrum, SpectrumKind};

/// `sum_t (-1)^{a(t) + b(t + tau)}`, indices mod `N`.
pub fn cross_correlation(a: &BinarySequence, b: &BinarySequence, tau: i64) -> Result<i64> {
    a.ensure_same_period(b)?;
    let (a, b) = (a.to_bits(), b.to_bits());
    Ok(sum_at(&a, &b, tau))
}

fn sum_at(a: &[u8], b: &[u8], tau: i64) -> i64 {
    let n = a.len() as i64;
    (0..n)
        .map(|t| {
            let e = a[t as usize] + b[(t + tau).rem_euclid(n) as usize];
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .sum()
}

pub fn autocorrelation_spectrum(a: &BinarySequence) -> CorrelationSpectrum {
    let bits = a.to_bits();
    let values = (0..bits.len() as i64)
        .map(|tau| sum_at(&bits, &bits, tau))
        .collect();
    CorrelationSpectrum::new(SpectrumKind::Auto, values)
}

pub fn cross_correlation_spectrum(
    a: &BinarySequence,
    b: &BinarySequence,
) -> Result<CorrelationSpectrum> {
    a.ensure_same_period(b)?;
    let (a, b) = (a.to_bits(), b.to_bits());
    let values = (0..a.len() as i64).map(|tau| sum_at(&a, &b, tau)).collect();
    Ok(CorrelationSpectrum::new(SpectrumKind::Cross, values))
}
