use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite binary sequence; the empty sequence is the empty string `λ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinarySeq(Vec<u8>);

impl BinarySeq {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidArgument(format!("symbol {b} is not a bit")));
        }
        Ok(Self(bits))
    }

    /// The sequence whose `k`-th symbol is bit `k` of `index` (least significant first).
    pub fn from_index(index: u64, len: usize) -> Self {
        debug_assert!(len <= 64);
        Self((0..len).map(|k| ((index >> k) & 1) as u8).collect())
    }

    /// All `2^len` sequences of the given length, in `from_index` order.
    pub fn all(len: usize) -> impl Iterator<Item = BinarySeq> {
        assert!(len < 64, "cannot enumerate 2^{len} sequences");
        (0..1u64 << len).map(move |v| Self::from_index(v, len))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn push(&mut self, bit: u8) {
        debug_assert!(bit <= 1);
        self.0.push(bit);
    }

    pub fn extend_repeat(&mut self, bit: u8, count: usize) {
        debug_assert!(bit <= 1);
        self.0.extend(std::iter::repeat_n(bit, count));
    }

    pub fn truncate(&mut self, len: usize) {
        self.0.truncate(len);
    }

    /// Bitwise complement.
    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|b| b ^ 1).collect())
    }

    /// Run lengths in order, e.g. `0011101 -> [2, 3, 1, 1]`.
    pub fn run_lengths(&self) -> Vec<usize> {
        let mut runs = Vec::new();
        let mut iter = self.0.iter();
        let Some(mut prev) = iter.next() else {
            return runs;
        };
        let mut len = 1;
        for b in iter {
            if b == prev {
                len += 1;
            } else {
                runs.push(len);
                len = 1;
                prev = b;
            }
        }
        runs.push(len);
        runs
    }

    /// The sequence with every run collapsed to a single symbol.
    pub fn run_symbols(&self) -> Vec<u8> {
        let mut out: Vec<u8> = Vec::new();
        for &b in &self.0 {
            if out.last() != Some(&b) {
                out.push(b);
            }
        }
        out
    }
}

impl From<BinarySeq> for Vec<u8> {
    fn from(s: BinarySeq) -> Self {
        s.0
    }
}

impl FromStr for BinarySeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "λ" {
            return Ok(Self::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(s.to_string())),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Self)
    }
}

impl fmt::Display for BinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("λ");
        }
        for b in &self.0 {
            f.write_str(if *b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}
