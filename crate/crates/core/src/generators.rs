//! Concrete sequence families: Legendre sequences of both kinds,
//! m-sequences, and the twin-prime sequence with its modified form.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, mod_inverse};
use crate::error::{Error, Result};
use crate::interleave::{self, InterleavedSpec};
use crate::sequence::BinarySequence;

fn require_odd_prime(p: u64) -> Result<()> {
    if p % 2 == 1 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

/// `{x^2 mod p : 1 <= x <= p-1}`.
pub fn quadratic_residues(p: u64) -> Result<BTreeSet<u64>> {
    require_odd_prime(p)?;
    Ok((1..p).map(|x| x * x % p).collect())
}

/// Value of a Legendre sequence at `t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LegendreKind {
    /// `l(0) = 1`.
    First,
    /// `l'(0) = 0`.
    Second,
}

/// Legendre sequence of period `p`: 0 on quadratic residues, 1 on
/// non-residues, and `t = 0` fixed by `kind`.
pub fn legendre(p: u64, kind: LegendreKind) -> Result<BinarySequence> {
    let qr = quadratic_residues(p)?;
    Ok(BinarySequence::from_fn(p as usize, |t| match t {
        0 => kind == LegendreKind::First,
        t => !qr.contains(&(t as u64)),
    }))
}

/// Primitive polynomials over GF(2), one per degree, as bit masks with bit
/// `i` holding the coefficient of `x^i` (leading and constant terms included).
pub const PRIMITIVE_POLYNOMIALS: [(u32, u64); 16] = [
    (1, 0x3),
    (2, 0x7),
    (3, 0xB),
    (4, 0x13),
    (5, 0x25),
    (6, 0x43),
    (7, 0x83),
    (8, 0x11D),
    (9, 0x211),
    (10, 0x409),
    (11, 0x805),
    (12, 0x1053),
    (13, 0x201B),
    (14, 0x4443),
    (15, 0x8003),
    (16, 0x1100B),
];

pub fn default_primitive_polynomial(degree: u32) -> Option<u64> {
    PRIMITIVE_POLYNOMIALS
        .iter()
        .find(|(d, _)| *d == degree)
        .map(|&(_, p)| p)
}

/// Runs the recurrence `s(t+n) = sum_{i<n} c_i s(t+i)` from the state
/// `s(0..n) = 0...01` and returns the number of steps until the state repeats.
fn recurrence_period(degree: u32, poly: u64) -> u64 {
    let n = degree;
    let mask = (1u64 << n) - 1;
    let taps = poly & mask;
    // state bit i holds s(t+i)
    let start = 1u64 << (n - 1);
    let mut state = start;
    let limit = 1u64 << n;
    for step in 1..=limit {
        let feedback = (state & taps).count_ones() as u64 & 1;
        state = (state >> 1) | (feedback << (n - 1));
        if state == start {
            return step;
        }
    }
    0
}

/// Maximal-length sequence of period `2^n - 1`.
///
/// `poly` is the full polynomial mask (e.g. `0x13` for `x^4 + x + 1`); `None`
/// picks the built-in polynomial for the degree. The output starts from the
/// state `0...01`. Primitivity is checked by measuring the period.
pub fn m_sequence(degree: u32, poly: Option<u64>) -> Result<BinarySequence> {
    if !(1..=16).contains(&degree) {
        return Err(Error::InvalidInput(format!(
            "m-sequence degree must be in 1..=16, got {degree}"
        )));
    }
    let poly = poly.unwrap_or_else(|| default_primitive_polynomial(degree).expect("table"));
    let expected = (1u64 << degree) - 1;
    if poly >> degree != 1 || poly & 1 == 0 {
        return Err(Error::NotPrimitive {
            degree,
            poly,
            period: 0,
            expected,
        });
    }
    let period = recurrence_period(degree, poly);
    if period != expected {
        return Err(Error::NotPrimitive {
            degree,
            poly,
            period,
            expected,
        });
    }
    let n = degree as usize;
    let len = expected as usize;
    let mut bits = vec![false; len];
    bits[n - 1] = true;
    for t in 0..len - n {
        let mut v = false;
        for i in 0..n {
            if (poly >> i) & 1 == 1 {
                v ^= bits[t + i];
            }
        }
        bits[t + n] = v;
    }
    BinarySequence::from_bools(bits)
}

/// For even `degree`, the `(2^{n/2} - 1) x (2^{n/2} + 1)` array of the
/// m-sequence, rotated so that the all-zero column sits at index 0.
pub fn m_sequence_array(degree: u32, poly: Option<u64>) -> Result<InterleavedSpec> {
    if degree % 2 != 0 || degree < 2 {
        return Err(Error::InvalidInput(format!(
            "the interleaved array form needs an even degree, got {degree}"
        )));
    }
    let m = m_sequence(degree, poly)?;
    let k = (1usize << (degree / 2)) - 1;
    let t = (1usize << (degree / 2)) + 1;
    let array = interleave::to_array(&m, k, t)?;
    let zero = array
        .columns()
        .iter()
        .position(BinarySequence::is_zero)
        .ok_or_else(|| Error::InvalidInput("m-sequence array has no all-zero column".into()))?;
    interleave::to_array(&m.shift_left(zero as i64), k, t)
}

/// Parameters of the twin-prime sequence for the pair `(p, p + 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinPrimeSpec {
    pub p: u64,
    /// `e[i-1] = i * (p+2)^{-1} mod p` for `i = 1..=p+1`.
    pub e: Vec<u64>,
    /// `b[i-1] = 1` iff `i` is a quadratic residue mod `p + 2`.
    pub b: Vec<bool>,
    /// `l'` (second kind) for residues mod `p + 2`, `l` otherwise.
    pub column_kinds: Vec<LegendreKind>,
}

impl TwinPrimeSpec {
    pub fn new(p: u64) -> Result<Self> {
        let q = p + 2;
        if !(p % 2 == 1 && is_prime(p) && is_prime(q)) {
            return Err(Error::NotTwinPrime { p, q });
        }
        let qr_q = quadratic_residues(q)?;
        let inv = mod_inverse(q as i64, p).expect("gcd(p, p+2) = 1 for odd p");
        let indices = 1..=p + 1;
        Ok(Self {
            p,
            e: indices.clone().map(|i| i * inv % p).collect(),
            b: indices.clone().map(|i| qr_q.contains(&i)).collect(),
            column_kinds: indices
                .map(|i| {
                    if qr_q.contains(&i) {
                        LegendreKind::Second
                    } else {
                        LegendreKind::First
                    }
                })
                .collect(),
        })
    }

    /// Columns `i = 1..=p+1`: `L^{e_i}(a_i) + b(i)`.
    pub fn columns(&self) -> Result<Vec<BinarySequence>> {
        let first = legendre(self.p, LegendreKind::First)?;
        let second = legendre(self.p, LegendreKind::Second)?;
        Ok(self
            .column_kinds
            .iter()
            .zip(&self.e)
            .zip(&self.b)
            .map(|((kind, &e), &b)| {
                let base = match kind {
                    LegendreKind::First => &first,
                    LegendreKind::Second => &second,
                };
                base.shift_left(e as i64).add_constant(b)
            })
            .collect())
    }

    /// Array with column 0 set to `0_p`, or `1_p` for the modified sequence.
    pub fn array(&self, modified: bool) -> Result<InterleavedSpec> {
        let columns = self.columns()?;
        if modified {
            interleave::construction_b(&columns)
        } else {
            interleave::construction_a(&columns)
        }
    }
}

/// Twin-prime sequence of period `p(p+2)`; `modified` puts `1_p` in column 0.
pub fn twin_prime(p: u64, modified: bool) -> Result<BinarySequence> {
    Ok(interleave::build(&TwinPrimeSpec::new(p)?.array(modified)?))
}
