//! Bit-packed matrix storage.
//!
//! Entries are laid out row-major as a little-endian bit stream, each entry
//! taking `entry_width(k)` bits: 2 bits (four per byte) for k <= 2, 4 bits for
//! k <= 4, 8 bits for k <= 8 and 16 bits otherwise. The byte form of that
//! stream is the canonical encoding used for hashing, set membership and face
//! labels. In memory the stream lives in `u64` words.

use alloc::vec;
use alloc::vec::Vec;

use super::Matrix;
use crate::field::{Field, FieldElement};

/// Bits per packed entry for GF(2^k).
pub fn entry_width(k: u32) -> u32 {
    match k {
        0..=2 => 2,
        3..=4 => 4,
        5..=8 => 8,
        _ => 16,
    }
}

// above this field size a row table costs more than it saves
const MAX_TABLE_Q: u32 = 4096;

#[inline]
fn get_bits(words: &[u64], off: usize, len: u32) -> u64 {
    let w = off / 64;
    let s = (off % 64) as u32;
    let mut v = words[w] >> s;
    if s + len > 64 {
        v |= words[w + 1] << (64 - s);
    }
    if len < 64 {
        v & ((1u64 << len) - 1)
    } else {
        v
    }
}

#[inline]
fn or_bits(words: &mut [u64], off: usize, len: u32, val: u64) {
    let w = off / 64;
    let s = (off % 64) as u32;
    words[w] |= val << s;
    if s + len > 64 {
        words[w + 1] |= val >> (64 - s);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedLayout {
    rows: usize,
    cols: usize,
    width: u32,
    words: usize,
}

impl PackedLayout {
    /// Layout for square `dim x dim` matrices over `field`.
    pub fn new(field: &Field, dim: usize) -> PackedLayout {
        PackedLayout::for_shape(field, dim, dim)
    }

    pub fn for_shape(field: &Field, rows: usize, cols: usize) -> PackedLayout {
        let width = entry_width(field.k());
        let bits = rows * cols * width as usize;
        PackedLayout { rows, cols, width, words: bits.div_ceil(64).max(1) }
    }

    /// Number of `u64` words per packed matrix.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Length of the canonical byte encoding.
    pub fn byte_len(&self) -> usize {
        (self.rows * self.cols * self.width as usize).div_ceil(8)
    }

    #[inline]
    fn row_bits(&self) -> u32 {
        self.cols as u32 * self.width
    }

    /// Whether a whole row fits in one word.
    pub fn fast_rows(&self) -> bool {
        self.row_bits() <= 64
    }

    #[inline]
    pub fn entry(&self, words: &[u64], r: usize, c: usize) -> FieldElement {
        let off = (r * self.cols + c) * self.width as usize;
        FieldElement(get_bits(words, off, self.width) as u16)
    }

    pub fn pack_into(&self, m: &Matrix, out: &mut [u64]) {
        debug_assert_eq!((m.rows(), m.cols()), (self.rows, self.cols));
        out.fill(0);
        for (i, e) in m.entries().iter().enumerate() {
            if e.0 != 0 {
                or_bits(out, i * self.width as usize, self.width, e.0 as u64);
            }
        }
    }

    pub fn pack(&self, m: &Matrix) -> Vec<u64> {
        let mut out = vec![0; self.words];
        self.pack_into(m, &mut out);
        out
    }

    pub fn unpack(&self, field: &Field, words: &[u64]) -> Matrix {
        let data = (0..self.rows * self.cols)
            .map(|i| FieldElement(get_bits(words, i * self.width as usize, self.width) as u16))
            .collect();
        Matrix::from_entries(field, self.rows, self.cols, data).expect("packed entries lie in the field")
    }

    /// Canonical byte encoding of packed words.
    pub fn bytes_of(&self, words: &[u64]) -> Vec<u8> {
        let mut out: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
        out.truncate(self.byte_len());
        out
    }

    pub fn encode(&self, m: &Matrix) -> Vec<u8> {
        self.bytes_of(&self.pack(m))
    }

    pub fn identity(&self, field: &Field) -> Vec<u64> {
        self.pack(&Matrix::identity(field, self.rows))
    }
}

/// Right multiplication of packed matrices by a fixed matrix `g`.
///
/// With rows that fit in a word and a small field, row `r` of `a·g` is the XOR of
/// precomputed packed rows `a[r][j]·g_j`, so a product costs `d²` table lookups.
#[derive(Clone, Debug)]
pub enum Multiplier {
    Table { q: usize, table: Vec<u64> },
    Generic(Matrix),
}

impl Multiplier {
    pub fn new(layout: &PackedLayout, g: &Matrix) -> Multiplier {
        let f = g.field();
        if !layout.fast_rows() || f.q() > MAX_TABLE_Q {
            return Multiplier::Generic(g.clone());
        }
        let q = f.q() as usize;
        let d = g.rows();
        let w = layout.width();
        let mut table = vec![0u64; d * q];
        for j in 0..d {
            for a in 0..q {
                let mut packed = 0u64;
                for c in 0..g.cols() {
                    let v = f.mul(FieldElement(a as u16), g.get(j, c));
                    packed |= (v.0 as u64) << (c as u32 * w);
                }
                table[j * q + a] = packed;
            }
        }
        Multiplier::Table { q, table }
    }

    /// `out = a·g`.
    #[inline]
    pub fn apply(&self, layout: &PackedLayout, a: &[u64], out: &mut [u64]) {
        match self {
            Multiplier::Table { q, table } => {
                out.fill(0);
                let w = layout.width();
                let mask = (1u64 << w) - 1;
                let rb = layout.row_bits();
                for r in 0..layout.rows {
                    let row = get_bits(a, r * rb as usize, rb);
                    let mut acc = 0u64;
                    for j in 0..layout.cols {
                        let e = ((row >> (j as u32 * w)) & mask) as usize;
                        acc ^= table[j * q + e];
                    }
                    if acc != 0 {
                        or_bits(out, r * rb as usize, rb, acc);
                    }
                }
            }
            Multiplier::Generic(g) => {
                let m = layout.unpack(g.field(), a);
                let p = m.matmul(g).expect("shapes agree");
                layout.pack_into(&p, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths() {
        assert_eq!(entry_width(1), 2);
        assert_eq!(entry_width(2), 2);
        assert_eq!(entry_width(3), 4);
        assert_eq!(entry_width(4), 4);
        assert_eq!(entry_width(8), 8);
        assert_eq!(entry_width(9), 16);
    }

    #[test]
    fn gf4_encoding_is_four_per_byte() {
        let f = Field::new(2).unwrap();
        let m = Matrix::from_bits(&f, &[&[1, 2], &[2, 3]]).unwrap();
        // entries 1, 2, 2, 3 in 2-bit slots, first entry in the low bits
        assert_eq!(m.canonical_bytes(), vec![0b11_10_10_01]);
        let l = PackedLayout::new(&f, 5);
        assert_eq!(l.byte_len(), 7);
        assert_eq!(l.words(), 1);
    }

    #[test]
    fn pack_unpack_across_word_boundaries() {
        for k in [2u32, 3, 5, 9] {
            let f = Field::new(k).unwrap();
            for d in [3usize, 5, 6, 7] {
                let l = PackedLayout::new(&f, d);
                let data = (0..d * d).map(|i| FieldElement(((i * 7919 + 13) as u32 % f.q()) as u16)).collect();
                let m = Matrix::from_entries(&f, d, d, data).unwrap();
                let words = l.pack(&m);
                assert_eq!(l.unpack(&f, &words), m);
                assert_eq!(l.entry(&words, d - 1, d - 2), m.get(d - 1, d - 2));
            }
        }
    }

    #[test]
    fn multiplier_matches_matmul() {
        for k in [1u32, 2, 3, 4, 13] {
            let f = Field::new(k).unwrap();
            for d in [2usize, 5, 6] {
                let l = PackedLayout::new(&f, d);
                let gen = |seed: usize| {
                    let data = (0..d * d)
                        .map(|i| FieldElement((((i + seed) * 2654435761usize) >> 5) as u32 as u16 % f.q() as u16))
                        .collect();
                    Matrix::from_entries(&f, d, d, data).unwrap()
                };
                let a = gen(1);
                let g = gen(7);
                let mul = Multiplier::new(&l, &g);
                let mut out = vec![0; l.words()];
                mul.apply(&l, &l.pack(&a), &mut out);
                assert_eq!(l.unpack(&f, &out), a.matmul(&g).unwrap(), "k={k} d={d}");
            }
        }
    }
}
