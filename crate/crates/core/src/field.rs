//! Arithmetic in GF(2^k) for 1 <= k <= 16.
//!
//! Elements are packed polynomials over GF(2): bit `i` is the coefficient of
//! `x^i`. Every field is built from a fixed Conway polynomial, so the bit
//! pattern of an element is the same across runs. Multiplication goes through
//! log/exp tables over the primitive element `x`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_K: u32 = 16;

/// Conway polynomials for p = 2, indexed by degree. Bit `i` is the coefficient of `x^i`.
pub const CONWAY_POLYNOMIALS: [u32; 17] = [
    0, 0b11,      // x + 1
    0b111,     // x^2 + x + 1
    0b1011,    // x^3 + x + 1
    0b1_0011,  // x^4 + x + 1
    0b10_0101, // x^5 + x^2 + 1
    0x5b,      // x^6 + x^4 + x^3 + x + 1
    0x83,      // x^7 + x + 1
    0x11d,     // x^8 + x^4 + x^3 + x^2 + 1
    0x211,     // x^9 + x^4 + 1
    0x46f,     // x^10 + x^6 + x^5 + x^3 + x^2 + x + 1
    0x805,     // x^11 + x^2 + 1
    0x10eb,    // x^12 + x^7 + x^6 + x^5 + x^3 + x + 1
    0x201b,    // x^13 + x^4 + x^3 + x + 1
    0x40a9,    // x^14 + x^7 + x^5 + x^3 + 1
    0x8035,    // x^15 + x^5 + x^4 + x^2 + 1
    0x1_002d,  // x^16 + x^5 + x^3 + x^2 + 1
];

/// An element of GF(2^k), stored as its polynomial bit pattern.
///
/// The element does not know its field; all arithmetic goes through [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn bits(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    exp: Vec<u16>,
    log: Vec<u16>,
}

/// The finite field GF(2^k).
///
/// Cloning is cheap: the multiplication tables are shared.
#[derive(Clone)]
pub struct Field {
    k: u32,
    modulus: u32,
    tables: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.k.hash(state);
        self.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.k, self.modulus)
    }
}

/// Degree of a nonzero GF(2) polynomial.
fn degree(p: u32) -> u32 {
    31 - p.leading_zeros()
}

/// Remainder of `a` modulo `m` in GF(2)[x].
fn poly_rem(mut a: u32, m: u32) -> u32 {
    let dm = degree(m);
    while a != 0 && degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

/// Trial division by every polynomial of degree `1..=deg/2`.
pub fn is_irreducible(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let d = degree(p);
    if d == 0 {
        return false;
    }
    for g in 2u32..(1u32 << (d / 2 + 1)) {
        if degree(g) > d / 2 {
            break;
        }
        if poly_rem(p, g) == 0 {
            return false;
        }
    }
    true
}

impl Field {
    /// GF(2^k) with the Conway polynomial of degree `k` as modulus.
    pub fn new(k: u32) -> Result<Field> {
        if !(1..=MAX_K).contains(&k) {
            return Err(Error::FieldExponent(k));
        }
        Field::with_modulus(k, CONWAY_POLYNOMIALS[k as usize])
    }

    /// GF(2^k) from an explicit modulus. The modulus must be irreducible of degree `k`.
    pub fn with_modulus(k: u32, modulus: u32) -> Result<Field> {
        if !(1..=MAX_K).contains(&k) {
            return Err(Error::FieldExponent(k));
        }
        if modulus < 2 || degree(modulus) != k || !is_irreducible(modulus) {
            return Err(Error::ReducibleModulus { k, modulus });
        }
        let q = 1u32 << k;
        let n = (q - 1) as usize;
        // find the least primitive element, then tabulate its powers
        let mut exp = vec![0u16; 2 * n];
        let mut log = vec![0u16; q as usize];
        let mul_slow = |a: u32, b: u32| -> u32 {
            let mut acc = 0u32;
            let mut a = a;
            let mut b = b;
            while b != 0 {
                if b & 1 == 1 {
                    acc ^= a;
                }
                b >>= 1;
                a <<= 1;
                if a & q != 0 {
                    a ^= modulus;
                }
            }
            acc
        };
        let mut gen = if q == 2 { 1 } else { 2 };
        loop {
            let mut x = 1u32;
            let mut period = 0usize;
            loop {
                x = mul_slow(x, gen);
                period += 1;
                if x == 1 {
                    break;
                }
            }
            if period == n {
                break;
            }
            gen += 1;
        }
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x as u16;
            exp[i + n] = x as u16;
            log[x as usize] = i as u16;
            x = mul_slow(x, gen);
        }
        Ok(Field { k, modulus, tables: Arc::new(Tables { exp, log }) })
    }

    /// Field of order `q`; `q` must be a power of two between 2 and 2^16.
    pub fn from_order(q: u32) -> Result<Field> {
        if q < 2 || !q.is_power_of_two() {
            return Err(Error::InvalidParameters("field order must be a power of two"));
        }
        Field::new(q.trailing_zeros())
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn q(&self) -> u32 {
        1 << self.k
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Checked conversion from a bit pattern.
    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value >= self.q() {
            return Err(Error::NotAnElement { value, k: self.k });
        }
        Ok(FieldElement(value as u16))
    }

    /// All elements in ascending bit-pattern order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q()).map(|v| FieldElement(v as u16))
    }

    /// Nonzero elements in ascending bit-pattern order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q()).map(|v| FieldElement(v as u16))
    }

    #[inline]
    pub fn contains(&self, a: FieldElement) -> bool {
        (a.0 as u32) < self.q()
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &self.tables;
        let s = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
        FieldElement(t.exp[s])
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let n = (self.q() - 1) as usize;
        let l = self.tables.log[a.0 as usize] as usize;
        Ok(FieldElement(self.tables.exp[(n - l) % n]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = (self.q() - 1) as u64;
        let l = self.tables.log[a.0 as usize] as u64;
        FieldElement(self.tables.exp[((l * (e % n)) % n) as usize])
    }

    /// The unique square root (Frobenius is bijective in characteristic 2).
    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        self.pow(a, (self.q() / 2) as u64)
    }

    /// Absolute trace to GF(2): `a + a^2 + a^4 + ... + a^(2^(k-1))`.
    pub fn trace(&self, a: FieldElement) -> u8 {
        let mut acc = FieldElement::ZERO;
        let mut x = a;
        for _ in 0..self.k {
            acc = self.add(acc, x);
            x = self.square(x);
        }
        debug_assert!(acc.0 <= 1);
        acc.0 as u8
    }

    /// Membership in the Artin-Schreier subgroup `N = { a^2 + a }`.
    ///
    /// `N` is the kernel of the absolute trace, so this is `Tr(b) == 0`.
    pub fn in_artin_schreier(&self, b: FieldElement) -> bool {
        self.trace(b) == 0
    }

    /// Solves `a^2 + a = b`, returning the smaller root, or `None` when `b` lies outside `N`.
    pub fn artin_schreier_root(&self, b: FieldElement) -> Option<FieldElement> {
        self.elements().find(|&a| self.add(self.square(a), a) == b)
    }
}
