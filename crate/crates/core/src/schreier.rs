//! Group orders beyond the enumeration cap, via a stabilizer chain.
//!
//! The group acts on the row space by `v ↦ v·g`. The standard basis vectors form a
//! base, since a matrix fixing each of them is the identity. The chain is built by
//! the deterministic Schreier–Sims algorithm with matrix transversals.

use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};
use rustc_hash::FxBuildHasher;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{basis_vector, Matrix};

/// Largest `log₂(q^d)` accepted: points are encoded in 24 bits.
pub const MAX_POINT_BITS: u32 = 24;

struct Codec {
    field: Field,
    dim: usize,
}

impl Codec {
    fn encode(&self, v: &[FieldElement]) -> u32 {
        let k = self.field.k();
        v.iter().enumerate().fold(0, |acc, (i, x)| acc | (x.0 as u32) << (k * i as u32))
    }

    fn decode(&self, code: u32) -> Vec<FieldElement> {
        let k = self.field.k();
        let mask = (1u32 << k) - 1;
        (0..self.dim).map(|i| FieldElement((code >> (k * i as u32) & mask) as u16)).collect()
    }

    fn act(&self, code: u32, g: &Matrix) -> u32 {
        self.encode(&g.vec_mul(&self.decode(code)).expect("dimensions agree"))
    }
}

struct Level {
    point: u32,
    gens: Vec<Matrix>,
    orbit: Vec<u32>,
    pos: HashMap<u32, usize, FxBuildHasher>,
    /// `point · trans[i] = orbit[i]`.
    trans: Vec<Matrix>,
    trans_inv: Vec<Matrix>,
    checked: HashSet<(u32, u32), FxBuildHasher>,
}

impl Level {
    fn new(codec: &Codec, point: u32) -> Level {
        let id = Matrix::identity(&codec.field, codec.dim);
        let mut pos = HashMap::with_hasher(FxBuildHasher);
        pos.insert(point, 0);
        Level {
            point,
            gens: Vec::new(),
            orbit: alloc::vec![point],
            pos,
            trans: alloc::vec![id.clone()],
            trans_inv: alloc::vec![id],
            checked: HashSet::with_hasher(FxBuildHasher),
        }
    }

    /// Grows the orbit under the current generators, keeping existing transversal elements.
    fn extend_orbit(&mut self, codec: &Codec) -> Result<()> {
        let mut i = 0;
        while i < self.orbit.len() {
            for s in 0..self.gens.len() {
                let img = codec.act(self.orbit[i], &self.gens[s]);
                if !self.pos.contains_key(&img) {
                    let u = self.trans[i].matmul(&self.gens[s])?;
                    self.trans_inv.push(u.inverse()?);
                    self.trans.push(u);
                    self.pos.insert(img, self.orbit.len());
                    self.orbit.push(img);
                }
            }
            i += 1;
        }
        Ok(())
    }
}

/// A base and strong generating set for a matrix group.
pub struct StabilizerChain {
    codec: Codec,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(gens: &[Matrix]) -> Result<StabilizerChain> {
        let first = gens.first().ok_or(Error::NoGenerators)?;
        let field = first.field().clone();
        let dim = first.rows();
        let bits = field.k() * dim as u32;
        if bits > MAX_POINT_BITS {
            return Err(Error::PointSetTooLarge(bits));
        }
        for g in gens {
            if g.field() != &field {
                return Err(Error::FieldMismatch);
            }
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::Dimension { expected: dim, found: g.rows() });
            }
            if g.rank() != dim {
                return Err(Error::Singular);
            }
        }
        let codec = Codec { field, dim };
        let levels = (0..dim).map(|i| Level::new(&codec, codec.encode(&basis_vector(dim, i)))).collect();
        let mut chain = StabilizerChain { codec, levels };
        chain.build(gens)?;
        Ok(chain)
    }

    /// Strips `g` through levels `from..`: returns the residue and the level where it
    /// left the chain (`dim` if it passed every level).
    fn sift(&self, mut g: Matrix, from: usize) -> Result<(Matrix, usize)> {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = self.codec.act(level.point, &g);
            match level.pos.get(&beta) {
                None => return Ok((g, l)),
                Some(&i) => g = g.matmul(&level.trans_inv[i])?,
            }
        }
        Ok((g, self.levels.len()))
    }

    fn add_strong_generator(&mut self, h: &Matrix, levels: core::ops::RangeInclusive<usize>) -> Result<()> {
        for l in levels {
            let fixes = self.levels[..l].iter().all(|lv| self.codec.act(lv.point, h) == lv.point);
            if fixes && !self.levels[l].gens.contains(h) {
                self.levels[l].gens.push(h.clone());
                let codec = &self.codec;
                self.levels[l].extend_orbit(codec)?;
            }
        }
        Ok(())
    }

    fn build(&mut self, gens: &[Matrix]) -> Result<()> {
        let d = self.levels.len();
        for g in gens.iter().filter(|g| !g.is_identity()) {
            self.add_strong_generator(g, 0..=d - 1)?;
        }
        let mut i = d as isize - 1;
        while i >= 0 {
            let l = i as usize;
            match self.find_new_generator(l)? {
                Some((h, j)) => {
                    self.add_strong_generator(&h, l + 1..=j)?;
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        Ok(())
    }

    /// Sifts unchecked Schreier generators of level `l`; returns the first nontrivial residue.
    fn find_new_generator(&mut self, l: usize) -> Result<Option<(Matrix, usize)>> {
        let mut b = 0;
        while b < self.levels[l].orbit.len() {
            let mut s = 0;
            while s < self.levels[l].gens.len() {
                if self.levels[l].checked.insert((b as u32, s as u32)) {
                    let level = &self.levels[l];
                    let img = self.codec.act(level.orbit[b], &level.gens[s]);
                    let c = level.pos[&img];
                    let g = level.trans[b].matmul(&level.gens[s])?.matmul(&level.trans_inv[c])?;
                    if !g.is_identity() {
                        let (h, j) = self.sift(g, l + 1)?;
                        if !h.is_identity() {
                            return Ok(Some((h, j)));
                        }
                    }
                }
                s += 1;
            }
            b += 1;
        }
        Ok(None)
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Product of the basic orbit lengths.
    pub fn order(&self) -> Result<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
            .ok_or(Error::Overflow("group order exceeds 128 bits"))
    }

    pub fn contains(&self, g: &Matrix) -> Result<bool> {
        if g.field() != &self.codec.field {
            return Err(Error::FieldMismatch);
        }
        if g.rows() != self.codec.dim || g.cols() != self.codec.dim {
            return Err(Error::Dimension { expected: self.codec.dim, found: g.rows() });
        }
        let (h, _) = self.sift(g.clone(), 0)?;
        Ok(h.is_identity())
    }
}

/// `|⟨gens⟩|` from a stabilizer chain on the `q^d` row vectors.
pub fn order_via_stabilizer_chain(gens: &[Matrix]) -> Result<u128> {
    StabilizerChain::new(gens)?.order()
}
