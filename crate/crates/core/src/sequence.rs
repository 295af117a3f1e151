//! Cyclic binary sequences.
//!
//! A [`BinarySequence`] is one period of a periodic {0,1} sequence. Bits are
//! packed 64 to a word (bit `t` lives in word `t / 64` at position `t % 64`)
//! so the correlation kernel can work with population counts; every accessor
//! is defined in terms of the plain bit view and never exposes padding.
//!
//! Sign convention used throughout the crate: bit 0 maps to +1, bit 1 to -1.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub(crate) const WORD_BITS: usize = 64;

/// One period of a cyclic binary sequence. Immutable; transforms return new values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinarySequence {
    len: usize,
    // Invariant: bits at positions >= len in the last word are zero.
    words: Vec<u64>,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

impl BinarySequence {
    /// Builds a sequence from plain 0/1 values.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::InvalidInput(format!(
                "bit {} at position {} is not 0 or 1",
                bits[pos], pos
            )));
        }
        Self::from_bools(bits.iter().map(|&b| b == 1))
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Result<Self> {
        let mut words = Vec::new();
        let mut len = 0;
        for bit in bits {
            if len % WORD_BITS == 0 {
                words.push(0);
            }
            if bit {
                words[len / WORD_BITS] |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        if len == 0 {
            return Err(Error::InvalidInput("a sequence needs period >= 1".into()));
        }
        Ok(Self { len, words })
    }

    /// Builds a period-`len` sequence with `bit(t) = f(t)`.
    ///
    /// # Panics
    /// Panics if `len == 0`.
    pub fn from_fn<F: FnMut(usize) -> bool>(len: usize, f: F) -> Self {
        assert!(len > 0, "a sequence needs period >= 1");
        Self::from_bools((0..len).map(f)).expect("nonempty")
    }

    /// The all-zero sequence `0_len`. Panics if `len == 0`.
    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "a sequence needs period >= 1");
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// The all-one sequence `1_len`. Panics if `len == 0`.
    pub fn ones(len: usize) -> Self {
        Self::zeros(len).complement()
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        debug_assert!(len > 0);
        words.truncate(word_count(len));
        words.resize(word_count(len), 0);
        let mut s = Self { len, words };
        s.clear_padding();
        s
    }

    fn clear_padding(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// The period `N`.
    pub fn period(&self) -> usize {
        self.len
    }

    /// Packed storage, 64 bits per word, padding bits zero.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Bit at index `t` taken cyclically, so any integer is accepted.
    pub fn bit(&self, t: i64) -> u8 {
        let idx = t.rem_euclid(self.len as i64) as usize;
        self.get(idx) as u8
    }

    /// Bit at `idx` with `idx < period`.
    pub fn get(&self, idx: usize) -> bool {
        assert!(idx < self.len, "index {idx} out of range for period {}", self.len);
        (self.words[idx / WORD_BITS] >> (idx % WORD_BITS)) & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(move |t| self.get(t) as u8)
    }

    /// Plain (one byte per bit) view of the sequence.
    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().collect()
    }

    /// `(-1)^{s(t)}` for each `t`.
    pub fn signs(&self) -> Vec<i64> {
        self.iter().map(|b| 1 - 2 * b as i64).collect()
    }

    /// Number of ones, `|C_s|`.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The support `C_s = {t : s(t) = 1}`.
    pub fn support(&self) -> BTreeSet<usize> {
        (0..self.len).filter(|&t| self.get(t)).collect()
    }

    /// Balance difference `d(s) = 2|C_s| - N`.
    pub fn balance(&self) -> i64 {
        2 * self.weight() as i64 - self.len as i64
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_constant(&self) -> bool {
        let w = self.weight();
        w == 0 || w == self.len
    }

    /// Left cyclic shift `L^tau(s)`: `result(t) = s(t + tau mod N)`.
    ///
    /// Negative and over-period shifts are reduced modulo `N`.
    pub fn shift_left(&self, tau: i64) -> Self {
        let r = tau.rem_euclid(self.len as i64) as usize;
        if r == 0 {
            return self.clone();
        }
        let ext = CyclicWindow::new(self);
        let words = (0..self.words.len())
            .map(|w| ext.window(r + w * WORD_BITS))
            .collect();
        Self::from_words(self.len, words)
    }

    /// Bitwise complement, `result(t) = 1 - s(t)`.
    pub fn complement(&self) -> Self {
        let words = self.words.iter().map(|w| !w).collect();
        Self::from_words(self.len, words)
    }

    /// `s + c` over GF(2): complement when `c` is set, identity otherwise.
    pub fn add_constant(&self, c: bool) -> Self {
        if c {
            self.complement()
        } else {
            self.clone()
        }
    }

    /// Pointwise XOR of two sequences of the same period.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.ensure_same_period(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Self::from_words(self.len, words))
    }

    pub(crate) fn ensure_same_period(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::PeriodMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }

    /// Lexicographically least rotation, comparing bit strings from `t = 0`.
    pub fn canonical_rotation(&self) -> Self {
        (0..self.len as i64)
            .map(|r| self.shift_left(r))
            .min_by(|a, b| a.to_bits().cmp(&b.to_bits()))
            .expect("period >= 1")
    }

    /// True if `other` is some cyclic shift of `self`.
    pub fn is_rotation_of(&self, other: &Self) -> bool {
        self.len == other.len && (0..self.len as i64).any(|r| &self.shift_left(r) == other)
    }

    /// Parses the text format: optional `#` comment lines followed by a single
    /// line of ASCII `0`/`1` characters.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut found: Option<(usize, &str)> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end();
            if line.trim_start().starts_with('#') || line.trim().is_empty() {
                continue;
            }
            if found.is_some() {
                return Err(Error::Parse {
                    line: i + 1,
                    column: 1,
                    message: "unexpected second sequence line".into(),
                });
            }
            found = Some((i + 1, line));
        }
        let (line_no, line) = found.ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "no sequence line found".into(),
        })?;
        parse_bit_line(line, line_no)
    }
}

pub(crate) fn parse_bit_line(line: &str, line_no: usize) -> Result<BinarySequence> {
    let mut bits = Vec::with_capacity(line.len());
    for (col, ch) in line.chars().enumerate() {
        match ch {
            '0' => bits.push(false),
            '1' => bits.push(true),
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    column: col + 1,
                    message: format!("unexpected character {other:?}, expected '0' or '1'"),
                })
            }
        }
    }
    BinarySequence::from_bools(bits).map_err(|_| Error::Parse {
        line: line_no,
        column: 1,
        message: "empty sequence".into(),
    })
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySequence(\"{self}\")")
    }
}

impl FromStr for BinarySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_bit_line(s.trim(), 1)
    }
}

/// The sequence repeated enough times that any 64-bit window starting inside
/// the first period can be read without wrap-around logic.
pub(crate) struct CyclicWindow {
    words: Vec<u64>,
}

impl CyclicWindow {
    pub(crate) fn new(s: &BinarySequence) -> Self {
        let n = s.period();
        let total_bits = n + WORD_BITS;
        let copies = total_bits.div_ceil(n) + 1;
        let mut words = vec![0u64; word_count(copies * n) + 1];
        let mut pos = 0;
        for _ in 0..copies {
            // Append one period word-by-word.
            let mut remaining = n;
            for &w in s.words() {
                let take = remaining.min(WORD_BITS);
                let w = if take == WORD_BITS { w } else { w & ((1u64 << take) - 1) };
                let (i, o) = (pos / WORD_BITS, pos % WORD_BITS);
                words[i] |= w << o;
                if o != 0 {
                    words[i + 1] |= w >> (WORD_BITS - o);
                }
                pos += take;
                remaining -= take;
            }
        }
        Self { words }
    }

    /// 64 bits starting at cyclic position `start` (requires `start < 2N`).
    #[inline]
    pub(crate) fn window(&self, start: usize) -> u64 {
        let (i, o) = (start / WORD_BITS, start % WORD_BITS);
        if o == 0 {
            self.words[i]
        } else {
            (self.words[i] >> o) | (self.words[i + 1] << (WORD_BITS - o))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> BinarySequence {
        s.parse().unwrap()
    }

    #[test]
    fn shift_left_examples() {
        let s = seq("0001011");
        assert_eq!(s.shift_left(0), s);
        assert_eq!(s.shift_left(2), seq("0101100"));
        assert_eq!(s.shift_left(7), s);
        assert_eq!(s.shift_left(-5), seq("0101100"));
        assert_eq!(s.shift_left(16), seq("0101100"));
    }

    #[test]
    fn shift_left_long_sequence_matches_bitwise_definition() {
        let s = BinarySequence::from_fn(200, |t| (t * t + 3 * t) % 7 < 3);
        for tau in [1i64, 63, 64, 65, 127, 128, 199, 200, -1, 1000] {
            let shifted = s.shift_left(tau);
            for t in 0..200 {
                assert_eq!(shifted.bit(t), s.bit(t + tau), "tau={tau} t={t}");
            }
        }
    }

    #[test]
    fn complement_examples() {
        assert_eq!(seq("000").complement(), seq("111"));
        assert_eq!(seq("0001011").complement(), seq("1110100"));
        assert_eq!(seq("0001011").complement().balance(), 1);
    }

    #[test]
    fn support_examples() {
        assert_eq!(seq("0001011").support(), BTreeSet::from([3, 5, 6]));
        assert!(seq("000").support().is_empty());
        assert_eq!(seq("111").support(), BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn balance_examples() {
        assert_eq!(BinarySequence::zeros(3).balance(), -3);
        assert_eq!(seq("0001011").balance(), -1);
        assert_eq!(seq("1001011").balance(), 1);
    }

    #[test]
    fn add_constant_examples() {
        assert_eq!(seq("011").add_constant(true), seq("100"));
        assert_eq!(seq("011").add_constant(false), seq("011"));
        let s = seq("0110100111");
        assert_eq!(s.add_constant(true).add_constant(true), s);
    }

    #[test]
    fn ones_respects_padding() {
        let s = BinarySequence::ones(70);
        assert_eq!(s.weight(), 70);
        assert_eq!(s.words()[1], (1 << 6) - 1);
    }

    #[test]
    fn cyclic_indexing() {
        let s = seq("0001011");
        assert_eq!(s.bit(-1), 1);
        assert_eq!(s.bit(10), 1);
        assert_eq!(s.bit(7), 0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BinarySequence::from_bits(&[]).is_err());
        assert!(BinarySequence::from_bits(&[0, 2]).is_err());
        assert!("01a".parse::<BinarySequence>().is_err());
    }

    #[test]
    fn parse_text_with_comments() {
        let s = BinarySequence::parse_text("# legendre p=7\n# second kind\n0001011\n").unwrap();
        assert_eq!(s, seq("0001011"));
        let err = BinarySequence::parse_text("# c\n0101x1\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 5,
                message: "unexpected character 'x', expected '0' or '1'".into()
            }
        );
        assert!(BinarySequence::parse_text("# only comments\n").is_err());
        assert!(BinarySequence::parse_text("01\n10\n").is_err());
    }

    #[test]
    fn canonical_rotation_is_least() {
        assert_eq!(seq("1001011").canonical_rotation(), seq("0010111"));
        assert_eq!(seq("110").canonical_rotation(), seq("011"));
        assert!(seq("0001011").is_rotation_of(&seq("1011000")));
    }

    fn arb_seq() -> impl Strategy<Value = BinarySequence> {
        prop::collection::vec(any::<bool>(), 1..200).prop_map(|b| BinarySequence::from_bools(b).unwrap())
    }

    proptest! {
        #[test]
        fn shifts_compose(s in arb_seq(), a in -500i64..500, b in -500i64..500) {
            prop_assert_eq!(s.shift_left(a).shift_left(b), s.shift_left(a + b));
            prop_assert_eq!(s.shift_left(s.period() as i64), s.clone());
            prop_assert_eq!(s.shift_left(a).shift_left(-a), s);
        }

        #[test]
        fn complement_commutes_with_shift(s in arb_seq(), a in -500i64..500) {
            prop_assert_eq!(s.complement().shift_left(a), s.shift_left(a).complement());
            prop_assert_eq!(s.complement().complement(), s);
        }

        #[test]
        fn support_and_balance(s in arb_seq()) {
            let n = s.period();
            prop_assert_eq!(s.support().len() + s.complement().support().len(), n);
            prop_assert_eq!(s.balance(), 2 * s.weight() as i64 - n as i64);
            prop_assert_eq!(s.balance().rem_euclid(2), (n % 2) as i64);
        }

        #[test]
        fn text_round_trip(s in arb_seq()) {
            prop_assert_eq!(BinarySequence::parse_text(&format!("# c\n{s}\n")).unwrap(), s.clone());
            prop_assert_eq!(BinarySequence::from_bits(&s.to_bits()).unwrap(), s);
        }
    }
}
