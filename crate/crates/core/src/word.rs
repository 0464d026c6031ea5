//! Binary words of length up to 64: identifying vectors of subspaces and
//! codewords of skeleton codes.
//!
//! Coordinate 0 is the leftmost position and maps to the most significant
//! of the low n bits, so numeric order on the packed value coincides with
//! lexicographic order on the written string.

use std::fmt;

use crate::error::{Error, Result};

/// A length-n binary vector, n <= 64.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    n: usize,
    bits: u64,
}

impl BitWord {
    pub fn zero(n: usize) -> BitWord {
        assert!(n <= 64, "ambient length above 64 is out of scope");
        BitWord { n, bits: 0 }
    }

    pub fn new(n: usize, bits: u64) -> BitWord {
        assert!(n <= 64);
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        BitWord { n, bits: bits & mask }
    }

    /// Parse a string of '0'/'1' characters, leftmost first.
    pub fn parse(s: &str) -> Result<BitWord> {
        if s.len() > 64 {
            return Err(Error::Format(format!("word `{s}` longer than 64")));
        }
        let mut bits = 0u64;
        for c in s.chars() {
            bits <<= 1;
            match c {
                '0' => {}
                '1' => bits |= 1,
                _ => return Err(Error::Format(format!("bad character `{c}` in word `{s}`"))),
            }
        }
        Ok(BitWord { n: s.len(), bits })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        (self.bits >> (self.n - 1 - i)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.n);
        let mask = 1u64 << (self.n - 1 - i);
        if v {
            self.bits |= mask;
        } else {
            self.bits &= !mask;
        }
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn hamming(&self, other: &BitWord) -> usize {
        debug_assert_eq!(self.n, other.n);
        (self.bits ^ other.bits).count_ones() as usize
    }

    /// Positions of the ones, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.get(i)).collect()
    }

    /// All weight-k words of length n in descending lexicographic order,
    /// starting at 1^k 0^(n-k). There are C(n,k) of them.
    pub fn all_of_weight(n: usize, k: usize) -> Vec<BitWord> {
        assert!(k <= n && n <= 64);
        if k == 0 {
            return vec![BitWord::zero(n)];
        }
        if k == n {
            let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            return vec![BitWord { n, bits: limit }];
        }
        let mut out = Vec::new();
        // Gosper's hack walks same-popcount values ascending; reverse at the end.
        let mut v: u64 = (1u64 << k) - 1;
        let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        loop {
            out.push(BitWord { n, bits: v });
            if v == (limit & !(limit >> k)) {
                break; // highest value: k ones at the top
            }
            let c = v & v.wrapping_neg();
            let r = v + c;
            v = (((r ^ v) >> 2) / c) | r;
        }
        out.reverse();
        out
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}
