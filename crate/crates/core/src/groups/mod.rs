//! Group-theoretic checks on generator strings: closure enumeration, the string
//! condition, the intersection property, classical orders and maximality.

mod classical;
mod enumerate;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{normalize_point, Matrix, Vector};

pub use classical::{classical_order, factorial, ClassicalKind};
pub use enumerate::{enumerate, EnumeratedGroup, Enumerator, CHUNK, DEFAULT_CAP};

/// Bound on `|g|` accepted by [`check_maximal`].
pub const MAXIMAL_CHECK_LIMIT: usize = 100_000;

/// Largest number of generators accepted by [`check_intersection_property_full`].
pub const FULL_CHECK_MAX_GENS: usize = 5;

/// Strategy for computing `⟨gens⟩`; lets callers substitute a parallel closure.
pub trait ClosureEngine {
    fn generate(&self, field: &Field, dim: usize, gens: &[Matrix], cap: usize) -> Result<EnumeratedGroup>;
}

/// Single-threaded breadth-first closure.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl ClosureEngine for Sequential {
    fn generate(&self, field: &Field, dim: usize, gens: &[Matrix], cap: usize) -> Result<EnumeratedGroup> {
        EnumeratedGroup::generated(field, dim, gens, cap)
    }
}

fn commute(a: &Matrix, b: &Matrix) -> Result<bool> {
    Ok(a.matmul(b)? == b.matmul(a)?)
}

/// Every generator is an involution, and `ρ_i ρ_j = ρ_j ρ_i` exactly when `|i − j| ≠ 1`.
pub fn check_string_condition(gens: &[Matrix]) -> Result<bool> {
    for (i, g) in gens.iter().enumerate() {
        if g.is_identity() || !g.matmul(g)?.is_identity() {
            return Err(Error::NotInvolution(i));
        }
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if commute(&gens[i], &gens[j])? != (j - i != 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn shape(gens: &[Matrix]) -> Result<(&Field, usize)> {
    let g = gens.first().ok_or(Error::NoGenerators)?;
    Ok((g.field(), g.rows()))
}

/// Checks `⟨ρ_I⟩ ∩ ⟨ρ_J⟩ = ⟨ρ_{I∩J}⟩` for every pair of index sets.
pub fn check_intersection_property_full(gens: &[Matrix], cap: usize) -> Result<bool> {
    check_intersection_property_full_with(gens, cap, &Sequential)
}

pub fn check_intersection_property_full_with(gens: &[Matrix], cap: usize, engine: &dyn ClosureEngine) -> Result<bool> {
    let n = gens.len();
    if n > FULL_CHECK_MAX_GENS {
        return Err(Error::InvalidParameters("the full intersection check takes at most 5 generators"));
    }
    if n == 0 {
        return Ok(true);
    }
    let (field, dim) = shape(gens)?;
    let subgroups = (0..1usize << n)
        .map(|mask| {
            let sub: Vec<Matrix> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| gens[i].clone()).collect();
            engine.generate(field, dim, &sub, cap)
        })
        .collect::<Result<Vec<_>>>()?;
    for a in 0..1usize << n {
        for b in a + 1..1usize << n {
            let meet = a & b;
            if meet == a || meet == b {
                continue;
            }
            if subgroups[a].intersection_order(&subgroups[b])? != subgroups[meet].order() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Subgroups generated by contiguous windows `gens[a..b]`, computed on demand.
struct Windows<'a> {
    gens: &'a [Matrix],
    engine: &'a dyn ClosureEngine,
    cap: usize,
    groups: BTreeMap<(usize, usize), EnumeratedGroup>,
    verdicts: BTreeMap<(usize, usize), bool>,
}

impl Windows<'_> {
    fn group(&mut self, a: usize, b: usize) -> Result<&EnumeratedGroup> {
        if !self.groups.contains_key(&(a, b)) {
            let (field, dim) = shape(self.gens)?;
            let g = self.engine.generate(field, dim, &self.gens[a..b], self.cap)?;
            self.groups.insert((a, b), g);
        }
        Ok(&self.groups[&(a, b)])
    }

    fn is_c_group(&mut self, a: usize, b: usize) -> Result<bool> {
        if b - a <= 1 {
            return Ok(true);
        }
        if let Some(&v) = self.verdicts.get(&(a, b)) {
            return Ok(v);
        }
        let ok = self.is_c_group(a, b - 1)? && self.is_c_group(a + 1, b)? && {
            let inner = self.group(a + 1, b - 1)?.order();
            self.group(a, b - 1)?;
            self.group(a + 1, b)?;
            self.groups[&(a, b - 1)].intersection_order(&self.groups[&(a + 1, b)])? == inner
        };
        self.verdicts.insert((a, b), ok);
        Ok(ok)
    }
}

/// Intersection property for a string group via the criterion: if both
/// `⟨ρ_1..ρ_{n−1}⟩` and `⟨ρ_2..ρ_n⟩` have it, it suffices that their intersection is
/// `⟨ρ_2..ρ_{n−1}⟩`. Applied recursively; only proper windows are enumerated, so
/// the whole group never needs to fit under `cap`.
pub fn check_intersection_property_recursive(gens: &[Matrix], cap: usize) -> Result<bool> {
    check_intersection_property_recursive_with(gens, cap, &Sequential)
}

pub fn check_intersection_property_recursive_with(
    gens: &[Matrix],
    cap: usize,
    engine: &dyn ClosureEngine,
) -> Result<bool> {
    if gens.len() <= 1 {
        return Ok(true);
    }
    let mut w = Windows { gens, engine, cap, groups: BTreeMap::new(), verdicts: BTreeMap::new() };
    w.is_c_group(0, gens.len())
}

/// Orders of the consecutive products `ρ_i ρ_{i+1}`.
pub fn schlafli(gens: &[Matrix], cap: u64) -> Result<Vec<u64>> {
    gens.windows(2).map(|w| w[0].matmul(&w[1])?.element_order(cap)).collect()
}

/// Whether no group lies strictly between `sub` and `g`: for every `x ∈ g ∖ sub`,
/// `⟨sub, x⟩ = g`. Elements of an already tested double coset `sub·x·sub` are skipped.
pub fn check_maximal(sub: &EnumeratedGroup, g: &EnumeratedGroup) -> Result<bool> {
    if g.order() > MAXIMAL_CHECK_LIMIT {
        return Err(Error::InvalidParameters("maximality is only checked for groups of order at most 100000"));
    }
    if !sub.is_subset_of(g)? {
        return Err(Error::NotSubgroup);
    }
    if sub.order() == g.order() {
        return Ok(false);
    }
    if sub.order() > 1 && sub.generators().is_empty() {
        return Err(Error::InvalidParameters("the subgroup carries no generators"));
    }
    let field = g.field();
    let dim = g.dim();
    let subs: Vec<Matrix> = (0..sub.order()).map(|i| sub.element(i)).collect();
    let mut done = vec![false; g.order()];
    for i in 0..g.order() {
        if done[i] || sub.contains_words(g.element_words(i)) {
            continue;
        }
        let x = g.element(i);
        let mut gens = sub.generators().to_vec();
        gens.push(x.clone());
        if EnumeratedGroup::generated(field, dim, &gens, g.order())?.order() != g.order() {
            return Ok(false);
        }
        for h1 in &subs {
            let hx = h1.matmul(&x)?;
            for h2 in &subs {
                let y = hx.matmul(h2)?;
                if let Some(j) = g.index_of_words(&g.layout().pack(&y)) {
                    done[j] = true;
                }
            }
        }
    }
    Ok(true)
}

/// Orbit of the projective point of `start` under `v ↦ v·g`, as normalized vectors in
/// discovery order.
pub fn projective_orbit(gens: &[Matrix], start: &[FieldElement]) -> Result<Vec<Vector>> {
    let (field, _) = shape(gens)?;
    let first = normalize_point(field, start);
    let mut orbit = vec![first.clone()];
    let mut seen = alloc::collections::BTreeSet::new();
    seen.insert(first);
    let mut i = 0;
    while i < orbit.len() {
        for g in gens {
            let p = normalize_point(field, &g.vec_mul(&orbit[i])?);
            if seen.insert(p.clone()) {
                orbit.push(p);
            }
        }
        i += 1;
    }
    Ok(orbit)
}
