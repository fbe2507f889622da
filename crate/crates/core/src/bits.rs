//! Bit vectors over GF(2) with a ±1 view.
//!
//! A `BitVector` of length `N = 2^n` is the evaluation table of a Boolean
//! function on `F_2^n`. Point order is lexicographic with `x1` the most
//! significant bit, so the point with index `p` assigns
//! `x_j = (p >> (n - j)) & 1` for `j = 1..=n`. The ±1 view identifies a bit
//! `a` with the sign `(-1)^a`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// Packed vector over GF(2). Bit `i` lives in word `i / 64`, bit `i % 64`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    /// All-zero vector of the given length.
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0u64; len.div_ceil(64)],
        }
    }

    /// All-ones vector of the given length.
    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// Builds a vector from an iterator of bits, `true` meaning 1.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.iter().enumerate() {
            v.set(i, *b);
        }
        v
    }

    /// Parses a string of `0`/`1` characters, index 0 first.
    pub fn from_bit_str(s: &str) -> Self {
        Self::from_bits(s.chars().filter(|c| !c.is_whitespace()).map(|c| c == '1'))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    /// Sign view of coordinate `i`: bit 0 maps to +1, bit 1 to −1.
    #[inline]
    pub fn sign(&self, i: usize) -> f64 {
        if self.get(i) {
            -1.0
        } else {
            1.0
        }
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Coordinatewise XOR. Panics on length mismatch.
    pub fn xor(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len, "xor of unequal lengths");
        BitVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        }
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of unequal lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the GF(2) inner product `<self, other>`.
    pub fn dot_parity(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of unequal lengths");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Inner product of the ±1 views: `N - 2*wt(self ^ other)`.
    pub fn sign_inner_product(&self, other: &BitVector) -> i64 {
        let w = self.xor(other).weight() as i64;
        self.len as i64 - 2 * w
    }

    /// Lexicographic comparison with coordinate 0 most significant.
    pub fn lex_cmp(&self, other: &BitVector) -> Ordering {
        debug_assert_eq!(self.len, other.len);
        for i in 0..self.len {
            match (self.get(i), other.get(i)) {
                (false, true) => return Ordering::Less,
                (true, false) => return Ordering::Greater,
                _ => {}
            }
        }
        Ordering::Equal
    }

    /// Hex encoding, most significant bit of the first digit = coordinate 0.
    /// The length is padded up to a multiple of 4 bits.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4);
        let mut out = String::with_capacity(digits);
        for d in 0..digits {
            let mut nibble = 0u8;
            for k in 0..4 {
                let i = 4 * d + k;
                if i < self.len && self.get(i) {
                    nibble |= 1 << (3 - k);
                }
            }
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    /// Inverse of [`BitVector::to_hex`] for a vector of known length.
    pub fn from_hex(s: &str, len: usize) -> Result<Self, Error> {
        let digits = len.div_ceil(4);
        if s.len() != digits {
            return Err(Error::Parameter(format!(
                "hex string '{s}' has {} digits, expected {digits} for length {len}",
                s.len()
            )));
        }
        let mut v = Self::zeros(len);
        for (d, c) in s.chars().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::Parameter(format!("invalid hex digit '{c}'")))?
                as u8;
            for k in 0..4 {
                let i = 4 * d + k;
                let bit = (nibble >> (3 - k)) & 1 == 1;
                if i < len {
                    v.set(i, bit);
                } else if bit {
                    return Err(Error::Parameter(format!(
                        "hex string '{s}' sets padding bits beyond length {len}"
                    )));
                }
            }
        }
        Ok(v)
    }

    /// Raw packed words (little-endian bit order within each word).
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_hex())
    }
}

/// Iterator over the assignments of `n` Boolean variables at point `p`:
/// variable `j` (1-indexed) gets bit `(p >> (n-j)) & 1`.
#[inline]
pub fn point_bit(p: usize, n: usize, var: usize) -> bool {
    debug_assert!((1..=n).contains(&var));
    (p >> (n - var)) & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_and_xor() {
        let a = BitVector::from_bit_str("0011");
        let b = BitVector::from_bit_str("0101");
        assert_eq!(a.weight(), 2);
        assert_eq!(a.xor(&b), BitVector::from_bit_str("0110"));
        assert_eq!(a.sign_inner_product(&b), 0);
        assert_eq!(a.sign_inner_product(&a), 4);
    }

    #[test]
    fn hex_round_trip_msb_is_point_zero() {
        // 1000 -> bit at point 0 set -> hex "8"
        let v = BitVector::from_bit_str("1000");
        assert_eq!(v.to_hex(), "8");
        assert_eq!(BitVector::from_hex("8", 4).unwrap(), v);

        let w = BitVector::from_bit_str("00110101");
        assert_eq!(BitVector::from_hex(&w.to_hex(), 8).unwrap(), w);
    }

    #[test]
    fn hex_rejects_bad_input() {
        assert!(BitVector::from_hex("zz", 8).is_err());
        assert!(BitVector::from_hex("123", 8).is_err());
        // padding bit set beyond length 2
        assert!(BitVector::from_hex("1", 2).is_err());
    }

    #[test]
    fn lex_order_counts_coordinate_zero_most() {
        let a = BitVector::from_bit_str("0111");
        let b = BitVector::from_bit_str("1000");
        assert_eq!(a.lex_cmp(&b), Ordering::Less);
    }

    #[test]
    fn point_bit_convention() {
        // n=2: points 00,01,10,11; x1 is the high bit.
        let x1: Vec<bool> = (0..4).map(|p| point_bit(p, 2, 1)).collect();
        assert_eq!(x1, vec![false, false, true, true]);
        let x2: Vec<bool> = (0..4).map(|p| point_bit(p, 2, 2)).collect();
        assert_eq!(x2, vec![false, true, false, true]);
    }
}
