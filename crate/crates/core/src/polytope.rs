//! Abstract regular polytopes as coset geometries of string C-groups.
//!
//! The rank-`i` faces are the cosets `g·G_i` of the parabolic subgroup
//! `G_i = ⟨ρ_j : j ≠ i⟩`; two faces of consecutive ranks are incident when their
//! cosets meet. A face is labelled by the least canonical encoding among its members.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::groups::{
    check_intersection_property_recursive_with, check_string_condition, ClosureEngine, EnumeratedGroup, Sequential,
};
use crate::linalg::{Matrix, Multiplier};

/// Default bound on the group order for [`build_polytope`].
pub const POLYTOPE_CAP: usize = 1_000_000;

/// Face pairs examined by [`PolytopeData::check_diamond`] when the caller does not say.
pub const DIAMOND_SAMPLE: usize = 10_000;

/// `G_i = ⟨ρ_j : j ≠ i⟩`.
pub fn parabolic(gens: &[Matrix], i: usize, cap: usize) -> Result<EnumeratedGroup> {
    let first = gens.first().ok_or(Error::NoGenerators)?;
    if i >= gens.len() {
        return Err(Error::InvalidParameters("parabolic index out of range"));
    }
    let sub: Vec<Matrix> = gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
    EnumeratedGroup::generated(first.field(), first.rows(), &sub, cap)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeData {
    pub rank: usize,
    pub dim: usize,
    pub q: u32,
    pub order: u64,
    pub f_vector: Vec<usize>,
    pub schlafli: Vec<usize>,
    /// Face labels per rank, ascending.
    pub faces: Vec<Vec<Vec<u8>>>,
    /// `incidences[i]` lists `(a, b)` with face `a` of rank `i` incident to face `b` of
    /// rank `i + 1`, as indices into `faces`, ascending.
    pub incidences: Vec<Vec<(u32, u32)>>,
    pub flag_count: u128,
}

fn cmp_le_bytes(a: &[u64], b: &[u64]) -> Ordering {
    // lexicographic order of the little-endian byte streams
    a.iter().map(|w| w.swap_bytes()).cmp(b.iter().map(|w| w.swap_bytes()))
}

/// Faces, incidences and derived invariants of the coset geometry of `gens`.
/// Fails with [`Error::NotStringCGroup`] unless the string condition and the
/// intersection property hold.
pub fn build_polytope(gens: &[Matrix], cap: usize) -> Result<PolytopeData> {
    build_polytope_with(gens, cap, &Sequential)
}

pub fn build_polytope_with(gens: &[Matrix], cap: usize, engine: &dyn ClosureEngine) -> Result<PolytopeData> {
    let first = gens.first().ok_or(Error::NoGenerators)?;
    if !check_string_condition(gens)? || !check_intersection_property_recursive_with(gens, cap, engine)? {
        return Err(Error::NotStringCGroup);
    }
    let g = engine.generate(first.field(), first.rows(), gens, cap)?;
    let n = gens.len();
    let order = g.order();
    let layout = g.layout();

    // right multiplication table by each generator
    let mut next = vec![0u32; order * n];
    let mut tmp = vec![0u64; layout.words()];
    for (j, gen) in gens.iter().enumerate() {
        let m = Multiplier::new(layout, gen);
        for e in 0..order {
            m.apply(layout, g.element_words(e), &mut tmp);
            next[e * n + j] = g.index_of_words(&tmp).expect("closed under generators") as u32;
        }
    }

    let mut faces = Vec::with_capacity(n);
    let mut face_of: Vec<Vec<u32>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut comp = vec![u32::MAX; order];
        let mut least: Vec<usize> = Vec::new();
        let mut stack = Vec::new();
        for s in 0..order {
            if comp[s] != u32::MAX {
                continue;
            }
            let id = least.len() as u32;
            let mut best = s;
            comp[s] = id;
            stack.push(s);
            while let Some(e) = stack.pop() {
                if cmp_le_bytes(g.element_words(e), g.element_words(best)) == Ordering::Less {
                    best = e;
                }
                for j in (0..n).filter(|&j| j != i) {
                    let t = next[e * n + j] as usize;
                    if comp[t] == u32::MAX {
                        comp[t] = id;
                        stack.push(t);
                    }
                }
            }
            least.push(best);
        }
        let mut ids: Vec<u32> = (0..least.len() as u32).collect();
        ids.sort_by(|&a, &b| cmp_le_bytes(g.element_words(least[a as usize]), g.element_words(least[b as usize])));
        let mut rank_of = vec![0u32; ids.len()];
        for (pos, &id) in ids.iter().enumerate() {
            rank_of[id as usize] = pos as u32;
        }
        faces.push(ids.iter().map(|&id| layout.bytes_of(g.element_words(least[id as usize]))).collect::<Vec<_>>());
        face_of.push(comp.iter().map(|&c| rank_of[c as usize]).collect());
    }

    let incidences = (0..n.saturating_sub(1))
        .map(|i| {
            let mut pairs: Vec<(u32, u32)> = (0..order).map(|e| (face_of[i][e], face_of[i + 1][e])).collect();
            pairs.sort_unstable();
            pairs.dedup();
            pairs
        })
        .collect();
    PolytopeData::from_parts(n, g.dim(), g.field().q(), order as u64, faces, incidences)
}

impl PolytopeData {
    /// Assembles a polytope from labelled faces and consecutive-rank incidences,
    /// deriving the f-vector, flag count and Schläfli symbol.
    pub fn from_parts(
        rank: usize,
        dim: usize,
        q: u32,
        order: u64,
        faces: Vec<Vec<Vec<u8>>>,
        incidences: Vec<Vec<(u32, u32)>>,
    ) -> Result<PolytopeData> {
        if rank == 0 || faces.len() != rank || incidences.len() != rank - 1 {
            return Err(Error::InvalidParameters("face or incidence lists do not match the rank"));
        }
        for (i, inc) in incidences.iter().enumerate() {
            if inc.iter().any(|&(a, b)| a as usize >= faces[i].len() || b as usize >= faces[i + 1].len()) {
                return Err(Error::InvalidParameters("incidence refers to a missing face"));
            }
        }
        let mut p = PolytopeData {
            rank,
            dim,
            q,
            order,
            f_vector: faces.iter().map(|f| f.len()).collect(),
            schlafli: Vec::new(),
            faces,
            incidences,
            flag_count: 0,
        };
        p.flag_count = p.count_flags()?;
        p.schlafli = (0..rank.saturating_sub(1)).map(|j| p.section_size(j)).collect::<Result<_>>()?;
        Ok(p)
    }

    /// `up[i][a]`: faces of rank `i + 1` incident to face `a` of rank `i`.
    fn up(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.rank - 1)
            .map(|i| {
                let mut adj = vec![Vec::new(); self.faces[i].len()];
                for &(a, b) in &self.incidences[i] {
                    adj[a as usize].push(b);
                }
                adj
            })
            .collect()
    }

    fn count_flags(&self) -> Result<u128> {
        let mut counts = vec![1u128; self.faces[0].len()];
        for i in 0..self.rank - 1 {
            let mut nextc = vec![0u128; self.faces[i + 1].len()];
            for &(a, b) in &self.incidences[i] {
                nextc[b as usize] = nextc[b as usize]
                    .checked_add(counts[a as usize])
                    .ok_or(Error::Overflow("flag count exceeds 128 bits"))?;
            }
            counts = nextc;
        }
        counts
            .iter()
            .try_fold(0u128, |acc, &c| acc.checked_add(c))
            .ok_or(Error::Overflow("flag count exceeds 128 bits"))
    }

    /// Number of rank-`j` faces in a rank-2 section `F_{j+2}/F_{j−1}`, which for a
    /// regular polytope is the `j`-th Schläfli entry.
    fn section_size(&self, j: usize) -> Result<usize> {
        let up = self.up();
        let missing = || Error::InvalidParameters("incidence structure has no flag through every rank");
        let (bottom, mut cur, mut r) = if j == 0 { (None, 0u32, 0usize) } else { (Some(0u32), 0u32, j - 1) };
        while r < (j + 2).min(self.rank - 1) {
            cur = *up[r][cur as usize].first().ok_or_else(missing)?;
            r += 1;
        }
        let top = if j + 2 < self.rank { Some(cur) } else { None };
        let count = (0..self.faces[j].len() as u32)
            .filter(|&g| bottom.is_none_or(|b| up[j - 1][b as usize].contains(&g)))
            .filter(|&g| top.is_none_or(|t| up[j][g as usize].iter().any(|&h| up[j + 1][h as usize].contains(&t))))
            .count();
        Ok(count)
    }

    /// Sampled diamond condition: whenever `F < H` with `rank H − rank F = 2`
    /// (including the improper least and greatest faces), exactly two faces lie
    /// strictly between. At most `sample` lower faces are examined per rank.
    pub fn check_diamond(&self, sample: usize) -> bool {
        let up = self.up();
        // with the least face below: each rank-1 face covers exactly two vertices
        if self.rank >= 2 {
            let mut below = vec![0usize; self.faces[1].len()];
            for &(_, b) in &self.incidences[0] {
                below[b as usize] += 1;
            }
            if below.iter().any(|&c| c != 2) {
                return false;
            }
        }
        // with the greatest face above: each rank-(n−2) face lies in exactly two facets
        if self.rank >= 2 {
            if up[self.rank - 2].iter().any(|a| a.len() != 2) {
                return false;
            }
        } else if self.faces[0].len() != 2 {
            return false;
        }
        for i in 1..self.rank.saturating_sub(1) {
            let lower = self.faces[i - 1].len();
            let step = lower.div_ceil(sample.max(1)).max(1);
            for f in (0..lower).step_by(step) {
                let mut between: BTreeMap<u32, usize> = BTreeMap::new();
                for &m in &up[i - 1][f] {
                    for &h in &up[i][m as usize] {
                        *between.entry(h).or_default() += 1;
                    }
                }
                if between.values().any(|&c| c != 2) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, FieldElement};
    use crate::forms::build_phi;
    use crate::strings::{build_string_generators, build_symplectic_string};

    #[test]
    fn pentagon() {
        let f = Field::new(2).unwrap();
        let s = build_string_generators(&build_phi(&f, &[FieldElement(2)]).unwrap()).unwrap();
        let p = build_polytope(&s.gens, POLYTOPE_CAP).unwrap();
        assert_eq!(p.f_vector, vec![5, 5]);
        assert_eq!(p.schlafli, vec![5]);
        assert_eq!(p.flag_count, 10);
        assert_eq!(p.incidences[0].len(), 10);
        assert!(p.check_diamond(DIAMOND_SAMPLE));
        assert!(p.faces.iter().all(|r| r.windows(2).all(|w| w[0] < w[1])));
    }

    #[test]
    fn symplectic_rank_three() {
        let f = Field::new(2).unwrap();
        let s = build_symplectic_string(&f, 3).unwrap();
        let orders: Vec<usize> = (0..3).map(|i| parabolic(&s.gens, i, 100).unwrap().order()).collect();
        assert_eq!(orders, vec![10, 4, 10]);
        let p = build_polytope(&s.gens, POLYTOPE_CAP).unwrap();
        assert_eq!(p.f_vector, vec![6, 15, 6]);
        assert_eq!(p.flag_count, 60);
        assert_eq!(p.schlafli, vec![5, 5]);
        assert!(p.check_diamond(DIAMOND_SAMPLE));
    }

    #[test]
    fn simplices_over_gf2() {
        let f = Field::new(1).unwrap();
        let tetra = build_string_generators(&build_phi(&f, &[FieldElement::ONE; 2]).unwrap()).unwrap();
        let p = build_polytope(&tetra.gens, POLYTOPE_CAP).unwrap();
        assert_eq!(p.f_vector, vec![4, 6, 4]);
        assert_eq!(p.schlafli, vec![3, 3]);
        let simplex4 = build_string_generators(&build_phi(&f, &[FieldElement::ONE; 3]).unwrap()).unwrap();
        let p = build_polytope(&simplex4.gens, POLYTOPE_CAP).unwrap();
        assert_eq!(p.f_vector, vec![5, 10, 10, 5]);
        assert_eq!(p.schlafli, vec![3, 3, 3]);
        assert_eq!(p.flag_count, 120);
        assert!(p.check_diamond(DIAMOND_SAMPLE));
    }

    #[test]
    fn rejects_non_string_groups() {
        let f = Field::new(2).unwrap();
        let s = build_string_generators(&build_phi(&f, &[FieldElement(2)]).unwrap()).unwrap();
        let r = s.gens[0].matmul(&s.gens[1]).unwrap().matmul(&s.gens[0]).unwrap();
        let gens = vec![s.gens[0].clone(), s.gens[1].clone(), r];
        assert_eq!(build_polytope(&gens, POLYTOPE_CAP).unwrap_err(), Error::NotStringCGroup);
    }

    #[test]
    fn from_parts_validates() {
        assert!(PolytopeData::from_parts(2, 2, 4, 10, vec![vec![vec![0]]], vec![]).is_err());
        let faces = vec![vec![vec![0u8]], vec![vec![0u8]]];
        assert!(PolytopeData::from_parts(2, 2, 4, 10, faces, vec![vec![(0, 1)]]).is_err());
    }
}
