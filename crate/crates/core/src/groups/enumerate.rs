//! Breadth-first closure of matrix groups over packed elements.

use alloc::vec;
use alloc::vec::Vec;
use core::hash::Hasher;
use core::ops::Range;

use hashbrown::HashTable;
use rustc_hash::FxHasher;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Multiplier, PackedLayout};

/// Default bound on the number of elements an enumeration may produce.
pub const DEFAULT_CAP: usize = 20_000_000;

/// Frontier elements expanded per batch by [`Enumerator::run`].
pub const CHUNK: usize = 1 << 14;

fn hash_words(words: &[u64]) -> u64 {
    let mut h = FxHasher::default();
    for &w in words {
        h.write_u64(w);
    }
    h.finish()
}

/// Packed matrices stored contiguously, indexed by insertion order.
#[derive(Clone)]
struct ElementSet {
    layout: PackedLayout,
    arena: Vec<u64>,
    index: HashTable<u32>,
}

impl ElementSet {
    fn new(layout: PackedLayout) -> ElementSet {
        ElementSet { layout, arena: Vec::new(), index: HashTable::new() }
    }

    #[inline]
    fn len(&self) -> usize {
        self.arena.len() / self.layout.words()
    }

    #[inline]
    fn get(&self, i: usize) -> &[u64] {
        let w = self.layout.words();
        &self.arena[i * w..(i + 1) * w]
    }

    fn find(&self, words: &[u64]) -> Option<usize> {
        let w = self.layout.words();
        let arena = &self.arena;
        self.index
            .find(hash_words(words), |&i| &arena[i as usize * w..(i as usize + 1) * w] == words)
            .map(|&i| i as usize)
    }

    /// Inserts `words` if absent; returns whether it was new.
    fn insert(&mut self, words: &[u64]) -> bool {
        let w = self.layout.words();
        let h = hash_words(words);
        let arena = &self.arena;
        if self.index.find(h, |&i| &arena[i as usize * w..(i as usize + 1) * w] == words).is_some() {
            return false;
        }
        let id = self.len() as u32;
        self.arena.extend_from_slice(words);
        let arena = &self.arena;
        self.index.insert_unique(h, id, |&i| hash_words(&arena[i as usize * w..(i as usize + 1) * w]));
        true
    }
}

fn validate(field: &Field, dim: usize, gens: &[Matrix]) -> Result<()> {
    for g in gens {
        if g.field() != field {
            return Err(Error::FieldMismatch);
        }
        if g.rows() != dim || g.cols() != dim {
            return Err(Error::Dimension { expected: dim, found: g.rows().max(g.cols()) });
        }
        if g.rank() != dim {
            return Err(Error::Singular);
        }
    }
    Ok(())
}

/// Incremental closure state.
///
/// Each round, [`frontier`](Enumerator::frontier) holds the elements discovered in the
/// previous round. [`expand`](Enumerator::expand) is read-only and may run on disjoint
/// frontier ranges concurrently; feeding the candidate buffers to
/// [`absorb`](Enumerator::absorb) in range order makes the element order deterministic.
pub struct Enumerator {
    field: Field,
    gens: Vec<Matrix>,
    muls: Vec<Multiplier>,
    set: ElementSet,
    level: Range<usize>,
    cap: usize,
}

impl Enumerator {
    pub fn new(field: &Field, dim: usize, gens: &[Matrix], cap: usize) -> Result<Enumerator> {
        validate(field, dim, gens)?;
        let layout = PackedLayout::new(field, dim);
        let muls = gens.iter().map(|g| Multiplier::new(&layout, g)).collect();
        let mut set = ElementSet::new(layout);
        set.insert(&set.layout.identity(field));
        Ok(Enumerator { field: field.clone(), gens: gens.to_vec(), muls, set, level: 0..1, cap })
    }

    pub fn layout(&self) -> &PackedLayout {
        &self.set.layout
    }

    pub fn order(&self) -> usize {
        self.set.len()
    }

    /// Indices of the elements whose products have not been formed yet.
    pub fn frontier(&self) -> Range<usize> {
        self.level.clone()
    }

    pub fn is_done(&self) -> bool {
        self.level.is_empty()
    }

    /// Appends to `out` every product `x·g` with `x` in `range` and `g` a generator
    /// that is not already known. May contain duplicates.
    pub fn expand(&self, range: Range<usize>, out: &mut Vec<u64>) {
        let layout = &self.set.layout;
        let mut tmp = vec![0u64; layout.words()];
        for i in range {
            let x = self.set.get(i);
            for m in &self.muls {
                m.apply(layout, x, &mut tmp);
                if self.set.find(&tmp).is_none() {
                    out.extend_from_slice(&tmp);
                }
            }
        }
    }

    /// Inserts the new elements among `candidates`, in order.
    pub fn absorb(&mut self, candidates: &[u64]) -> Result<()> {
        for c in candidates.chunks_exact(self.set.layout.words()) {
            if self.set.insert(c) && self.set.len() > self.cap {
                return Err(Error::EnumerationCap(self.cap));
            }
        }
        Ok(())
    }

    /// Starts the next round with the elements absorbed since the last one.
    pub fn next_level(&mut self) {
        self.level = self.level.end..self.set.len();
    }

    /// Single-threaded closure.
    pub fn run(mut self) -> Result<EnumeratedGroup> {
        let mut buf = Vec::new();
        while !self.is_done() {
            let Range { start, end } = self.frontier();
            let mut s = start;
            while s < end {
                let e = (s + CHUNK).min(end);
                buf.clear();
                self.expand(s..e, &mut buf);
                self.absorb(&buf)?;
                s = e;
            }
            self.next_level();
        }
        Ok(self.finish())
    }

    pub fn finish(self) -> EnumeratedGroup {
        EnumeratedGroup { field: self.field, gens: self.gens, set: self.set }
    }
}

/// A finite matrix group held as a set of packed elements.
#[derive(Clone)]
pub struct EnumeratedGroup {
    field: Field,
    gens: Vec<Matrix>,
    set: ElementSet,
}

impl core::fmt::Debug for EnumeratedGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("EnumeratedGroup")
            .field("field", &self.field)
            .field("dim", &self.dim())
            .field("order", &self.order())
            .finish()
    }
}

/// Closure of `gens` under multiplication. Errors on an empty list; see
/// [`EnumeratedGroup::generated`] for possibly empty generator lists.
pub fn enumerate(gens: &[Matrix], cap: usize) -> Result<EnumeratedGroup> {
    let first = gens.first().ok_or(Error::NoGenerators)?;
    EnumeratedGroup::generated(first.field(), first.rows(), gens, cap)
}

impl EnumeratedGroup {
    /// `⟨gens⟩` inside GL(dim, field); the trivial group when `gens` is empty.
    pub fn generated(field: &Field, dim: usize, gens: &[Matrix], cap: usize) -> Result<EnumeratedGroup> {
        Enumerator::new(field, dim, gens, cap)?.run()
    }

    pub fn trivial(field: &Field, dim: usize) -> EnumeratedGroup {
        Enumerator::new(field, dim, &[], 1).expect("no generators to validate").finish()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.set.layout.rows()
    }

    pub fn layout(&self) -> &PackedLayout {
        &self.set.layout
    }

    /// Generators this group was built from; empty for intersections.
    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.set.len()
    }

    /// Packed words of the `i`-th element in discovery order; element 0 is the identity.
    pub fn element_words(&self, i: usize) -> &[u64] {
        self.set.get(i)
    }

    pub fn element(&self, i: usize) -> Matrix {
        self.set.layout.unpack(&self.field, self.set.get(i))
    }

    /// Discovery index of a packed element.
    pub fn index_of_words(&self, words: &[u64]) -> Option<usize> {
        self.set.find(words)
    }

    pub fn contains_words(&self, words: &[u64]) -> bool {
        self.set.find(words).is_some()
    }

    pub fn contains(&self, m: &Matrix) -> Result<bool> {
        self.check_compatible_matrix(m)?;
        Ok(self.contains_words(&self.set.layout.pack(m)))
    }

    pub fn iter_words(&self) -> impl Iterator<Item = &[u64]> + '_ {
        self.set.arena.chunks_exact(self.set.layout.words())
    }

    fn check_compatible_matrix(&self, m: &Matrix) -> Result<()> {
        if m.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if m.rows() != self.dim() || m.cols() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), found: m.rows() });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &EnumeratedGroup) -> Result<()> {
        if other.field != self.field {
            return Err(Error::FieldMismatch);
        }
        if other.dim() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    /// `|self ∩ other|` without materializing the intersection.
    pub fn intersection_order(&self, other: &EnumeratedGroup) -> Result<usize> {
        self.check_compatible(other)?;
        let (small, big) = if self.order() <= other.order() { (self, other) } else { (other, self) };
        Ok(small.iter_words().filter(|w| big.contains_words(w)).count())
    }

    pub fn intersect(&self, other: &EnumeratedGroup) -> Result<EnumeratedGroup> {
        self.check_compatible(other)?;
        let mut set = ElementSet::new(self.set.layout.clone());
        for w in self.iter_words().filter(|w| other.contains_words(w)) {
            set.insert(w);
        }
        Ok(EnumeratedGroup { field: self.field.clone(), gens: Vec::new(), set })
    }

    pub fn is_subset_of(&self, other: &EnumeratedGroup) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.order() <= other.order() && self.iter_words().all(|w| other.contains_words(w)))
    }

    /// Equality as element sets.
    pub fn same_elements(&self, other: &EnumeratedGroup) -> Result<bool> {
        Ok(self.order() == other.order() && self.is_subset_of(other)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;
    use crate::forms::build_phi;
    use crate::strings::build_string_generators;

    fn gf(k: u32) -> Field {
        Field::new(k).unwrap()
    }

    #[test]
    fn trivial_and_identity() {
        let f = gf(2);
        let g = enumerate(&[Matrix::identity(&f, 3)], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.contains(&Matrix::identity(&f, 3)).unwrap());
        assert_eq!(EnumeratedGroup::trivial(&f, 3).order(), 1);
        assert_eq!(enumerate(&[], 10).unwrap_err(), Error::NoGenerators);
    }

    #[test]
    fn dihedral_of_order_ten() {
        let f = gf(2);
        let s = build_string_generators(&build_phi(&f, &[FieldElement(2)]).unwrap()).unwrap();
        let g = enumerate(&s.gens, DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 10);
        for m in &s.gens {
            assert!(g.contains(m).unwrap());
        }
        assert_eq!(enumerate(&s.gens, 9).unwrap_err(), Error::EnumerationCap(9));
    }

    #[test]
    fn symmetric_group_over_gf2() {
        let f = gf(1);
        // d symmetries with consecutive products of order 3 generate S_{d+1}
        for (d, n) in [(2usize, 6usize), (3, 24), (4, 120), (5, 720)] {
            let s = build_string_generators(&build_phi(&f, &vec![FieldElement::ONE; d - 1]).unwrap()).unwrap();
            assert_eq!(enumerate(&s.gens, DEFAULT_CAP).unwrap().order(), n);
        }
    }

    #[test]
    fn singular_generator_rejected() {
        let f = gf(2);
        assert_eq!(enumerate(&[Matrix::zeros(&f, 2, 2)], 10).unwrap_err(), Error::Singular);
    }

    #[test]
    fn intersections() {
        let f = gf(2);
        let s = build_string_generators(&build_phi(&f, &[FieldElement(2), FieldElement(2)]).unwrap()).unwrap();
        let a = enumerate(&s.gens[..2], DEFAULT_CAP).unwrap();
        let b = enumerate(&s.gens[1..], DEFAULT_CAP).unwrap();
        assert!(a.intersect(&a).unwrap().same_elements(&a).unwrap());
        let ab = a.intersect(&b).unwrap();
        assert_eq!(ab.order(), a.intersection_order(&b).unwrap());
        assert!(ab.same_elements(&enumerate(&s.gens[1..2], 10).unwrap()).unwrap());
        let t = EnumeratedGroup::trivial(&f, 3);
        assert_eq!(t.intersect(&a).unwrap().order(), 1);
    }
}
