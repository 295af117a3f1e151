//! Interleaved sequences: a period-`KT` sequence read row by row out of a
//! `K x T` array whose columns are period-`K` sequences.
//!
//! `u(kT + i) = columns[i](k)` for `0 <= k < K`, `0 <= i < T`.

use std::fmt;

use crate::error::{Error, Result};
use crate::sequence::BinarySequence;

/// `(K, T)` array description of an interleaved sequence.
///
/// Columns need not be shifts of one another; see [`InterleavedSpec::is_classical`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InterleavedSpec {
    k: usize,
    columns: Vec<BinarySequence>,
}

impl InterleavedSpec {
    /// Requires at least two columns, all of the same period.
    pub fn new(columns: Vec<BinarySequence>) -> Result<Self> {
        if columns.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "an interleaved array needs T >= 2 columns, got {}",
                columns.len()
            )));
        }
        let k = columns[0].period();
        if let Some(bad) = columns.iter().find(|c| c.period() != k) {
            return Err(Error::PeriodMismatch {
                expected: k,
                found: bad.period(),
            });
        }
        Ok(Self { k, columns })
    }

    /// Column period `K`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of columns `T`.
    pub fn t(&self) -> usize {
        self.columns.len()
    }

    /// Period of the interleaved sequence, `K * T`.
    pub fn period(&self) -> usize {
        self.k * self.columns.len()
    }

    pub fn columns(&self) -> &[BinarySequence] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &BinarySequence {
        &self.columns[i]
    }

    /// Balance difference of every column, indexed like the columns.
    pub fn balances(&self) -> Vec<i64> {
        self.columns.iter().map(BinarySequence::balance).collect()
    }

    /// The same array with column 0 replaced.
    pub fn with_column0(&self, column0: BinarySequence) -> Result<Self> {
        let mut columns = self.columns.clone();
        columns[0] = column0;
        Self::new(columns)
    }

    /// Columns `1..T`.
    pub fn nonconstant_part(&self) -> &[BinarySequence] {
        &self.columns[1..]
    }

    /// True if every column that is not all-zero is a cyclic shift of one base
    /// sequence.
    pub fn is_classical(&self) -> bool {
        let mut nonzero = self.columns.iter().filter(|c| !c.is_zero());
        match nonzero.next() {
            None => true,
            Some(base) => nonzero.all(|c| c.is_rotation_of(base)),
        }
    }

    /// Parses the spec file format: a `K T` header line, then `T` column lines,
    /// each a `K`-character bit string or `ZERO` / `ONE`. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (header_no, header) = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "missing \"K T\" header".into(),
        })?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        let parse_dim = |idx: usize, name: &str| -> Result<usize> {
            dims.get(idx)
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse {
                    line: header_no,
                    column: 1,
                    message: format!("header must be \"K T\"; could not read {name}"),
                })
        };
        if dims.len() != 2 {
            return Err(Error::Parse {
                line: header_no,
                column: 1,
                message: "header must be \"K T\"".into(),
            });
        }
        let (k, t) = (parse_dim(0, "K")?, parse_dim(1, "T")?);
        if k < 1 || t < 2 {
            return Err(Error::Parse {
                line: header_no,
                column: 1,
                message: format!("need K >= 1 and T >= 2, got K={k} T={t}"),
            });
        }
        let mut columns = Vec::with_capacity(t);
        for (line_no, line) in lines {
            if columns.len() == t {
                return Err(Error::Parse {
                    line: line_no,
                    column: 1,
                    message: format!("more than T={t} column lines"),
                });
            }
            let column = match line {
                "ZERO" => BinarySequence::zeros(k),
                "ONE" => BinarySequence::ones(k),
                bits => {
                    let column = crate::sequence::parse_bit_line(bits, line_no)?;
                    if column.period() != k {
                        return Err(Error::Parse {
                            line: line_no,
                            column: 1,
                            message: format!(
                                "column has length {}, expected K={k}",
                                column.period()
                            ),
                        });
                    }
                    column
                }
            };
            columns.push(column);
        }
        if columns.len() != t {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                column: 1,
                message: format!("expected T={t} column lines, found {}", columns.len()),
            });
        }
        Self::new(columns)
    }
}

impl fmt::Display for InterleavedSpec {
    /// Writes the spec file format, using `ZERO` / `ONE` for constant columns.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.k, self.t())?;
        for c in &self.columns {
            if c.is_zero() {
                writeln!(f, "ZERO")?;
            } else if c.weight() == c.period() {
                writeln!(f, "ONE")?;
            } else {
                writeln!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

/// Row-major readout of the array.
pub fn build(spec: &InterleavedSpec) -> BinarySequence {
    let t = spec.t();
    BinarySequence::from_fn(spec.period(), |pos| spec.columns[pos % t].get(pos / t))
}

/// Splits `u` into its `K x T` array; inverse of [`build`].
pub fn to_array(u: &BinarySequence, k: usize, t: usize) -> Result<InterleavedSpec> {
    if k == 0 || t < 2 {
        return Err(Error::InvalidInput(format!(
            "need K >= 1 and T >= 2, got K={k} T={t}"
        )));
    }
    if k * t != u.period() {
        return Err(Error::PeriodMismatch {
            expected: k * t,
            found: u.period(),
        });
    }
    let columns = (0..t)
        .map(|i| BinarySequence::from_fn(k, |row| u.get(row * t + i)))
        .collect();
    InterleavedSpec::new(columns)
}

/// `tau = quotient * T + remainder` with `0 <= remainder < T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftDecomposition {
    pub quotient: i64,
    pub remainder: usize,
}

/// Euclidean division of a shift by the column count.
///
/// # Panics
/// Panics if `t == 0`.
pub fn shift_decompose(tau: i64, t: usize) -> ShiftDecomposition {
    assert!(t >= 1, "column count must be positive");
    let t = t as i64;
    ShiftDecomposition {
        quotient: tau.div_euclid(t),
        remainder: tau.rem_euclid(t) as usize,
    }
}

/// Array form of `L^tau(build(spec))`, column by column.
///
/// With `tau = tau1*T + tau2` (after reducing mod `KT`), column `i` of the
/// result is `L^{tau1}(a_{i + tau2})` while `i + tau2 < T`, and
/// `L^{tau1 + 1}(a_{i + tau2 - T})` after the wrap.
pub fn shifted_array(spec: &InterleavedSpec, tau: i64) -> InterleavedSpec {
    let t = spec.t();
    let tau = tau.rem_euclid(spec.period() as i64);
    let ShiftDecomposition {
        quotient,
        remainder,
    } = shift_decompose(tau, t);
    let columns = (0..t)
        .map(|i| {
            let j = i + remainder;
            if j < t {
                spec.columns[j].shift_left(quotient)
            } else {
                spec.columns[j - t].shift_left(quotient + 1)
            }
        })
        .collect();
    InterleavedSpec {
        k: spec.k,
        columns,
    }
}

fn with_constant_column(constant: BinarySequence, rest: &[BinarySequence]) -> Result<InterleavedSpec> {
    let mut columns = Vec::with_capacity(rest.len() + 1);
    columns.push(constant);
    columns.extend_from_slice(rest);
    InterleavedSpec::new(columns)
}

fn column_period(rest: &[BinarySequence]) -> Result<usize> {
    rest.first()
        .map(BinarySequence::period)
        .ok_or_else(|| Error::InvalidInput("need at least one column a_1".into()))
}

/// `I(0_K, a_1, ..., a_{T-1})`.
pub fn construction_a(rest: &[BinarySequence]) -> Result<InterleavedSpec> {
    with_constant_column(BinarySequence::zeros(column_period(rest)?), rest)
}

/// `I(1_K, a_1, ..., a_{T-1})`.
pub fn construction_b(rest: &[BinarySequence]) -> Result<InterleavedSpec> {
    with_constant_column(BinarySequence::ones(column_period(rest)?), rest)
}
