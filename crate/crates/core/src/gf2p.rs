//! Arithmetic in the binary fields GF(2^w) for 1 <= w <= 16.
//!
//! Elements are bit patterns of the coefficients of polynomials modulo a
//! fixed irreducible polynomial per width. Multiplication is carry-less
//! shift-and-add with reduction; no tables, since every use here is over
//! tiny fields.

/// Reduction polynomials (bit `w` is the leading term). Classic low-weight
/// irreducible polynomials, verified irreducible by the test below.
const REDUCTION_POLY: [u32; 17] = [
    0,       // w = 0 unused
    0b11,    // x + 1
    0b111,   // x^2 + x + 1
    0b1011,  // x^3 + x + 1
    0b10011, // x^4 + x + 1
    0b100101,
    0b1000011,
    0b10000011,
    0b100011011, // x^8 + x^4 + x^3 + x + 1
    0b1000010001,
    0b10000001001,
    0b100000000101,
    0b1000001010011,
    0b10000000011011,
    0b100010001000011,
    0b1000000000000011,
    0b10001000000001011, // x^16 + x^12 + x^3 + x + 1
];

/// The field GF(2^w).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gf2p {
    w: u32,
}

impl Gf2p {
    pub fn new(w: u32) -> Self {
        assert!((1..=16).contains(&w), "field width {w} out of range 1..=16");
        Gf2p { w }
    }

    /// Smallest field whose size is at least `n` (and at least 2).
    pub fn covering(n: usize) -> Self {
        let mut w = 1;
        while (1usize << w) < n {
            w += 1;
        }
        Gf2p::new(w)
    }

    pub fn width(&self) -> u32 {
        self.w
    }

    /// Number of field elements, 2^w.
    pub fn size(&self) -> usize {
        1 << self.w
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, mut a: u32, mut b: u32) -> u32 {
        debug_assert!(a < (1 << self.w) && b < (1 << self.w));
        let poly = REDUCTION_POLY[self.w as usize];
        let mut acc = 0u32;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.w != 0 {
                a ^= poly;
            }
        }
        acc
    }

    /// Evaluates `sum_j coeffs[j] * x^j` by Horner's rule.
    pub fn poly_eval(&self, coeffs: &[u32], x: u32) -> u32 {
        let mut acc = 0u32;
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Carry-less multiplication of plain polynomials over GF(2), no reduction.
    fn clmul(a: u64, b: u64) -> u64 {
        let mut acc = 0u64;
        for i in 0..64 {
            if (b >> i) & 1 == 1 {
                acc ^= a << i;
            }
        }
        acc
    }

    fn poly_deg(p: u64) -> i32 {
        63 - p.leading_zeros() as i32
    }

    /// Remainder of polynomial division over GF(2).
    fn poly_rem(mut a: u64, m: u64) -> u64 {
        let dm = poly_deg(m);
        while poly_deg(a) >= dm && a != 0 {
            a ^= m << (poly_deg(a) - dm);
        }
        a
    }

    #[test]
    fn reduction_polys_are_irreducible() {
        // Trial division by every polynomial of degree 1..=w/2.
        for w in 1..=16usize {
            let m = REDUCTION_POLY[w] as u64;
            assert_eq!(poly_deg(m), w as i32);
            for d in 1..=(w / 2).max(1) {
                if d >= w {
                    continue;
                }
                for f in (1u64 << d)..(1u64 << (d + 1)) {
                    assert!(
                        poly_rem(m, f) != 0 || f == m,
                        "GF(2^{w}) reduction poly has factor {f:#b}"
                    );
                }
            }
        }
    }

    #[test]
    fn mul_matches_clmul_reduction() {
        for w in [2u32, 3, 4, 8] {
            let f = Gf2p::new(w);
            let m = REDUCTION_POLY[w as usize] as u64;
            for a in 0..f.size() as u32 {
                for b in 0..f.size() as u32 {
                    let expect = poly_rem(clmul(a as u64, b as u64), m) as u32;
                    assert_eq!(f.mul(a, b), expect);
                }
            }
        }
    }

    #[test]
    fn no_zero_divisors_small_fields() {
        for w in 1..=8u32 {
            let f = Gf2p::new(w);
            for a in 1..f.size() as u32 {
                for b in 1..f.size() as u32 {
                    assert_ne!(f.mul(a, b), 0, "zero divisor in GF(2^{w}): {a} * {b}");
                }
            }
        }
    }

    #[test]
    fn horner_evaluation() {
        let f = Gf2p::new(3);
        // p(x) = 3 + 5x + x^2 over GF(8)
        let coeffs = [3, 5, 1];
        for x in 0..8u32 {
            let direct = f.add(f.add(3, f.mul(5, x)), f.mul(x, x));
            assert_eq!(f.poly_eval(&coeffs, x), direct);
        }
    }
}
