//! One-call verification of a generator string.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::forms::QuadraticSpace;
use crate::groups::{
    check_intersection_property_full_with, check_intersection_property_recursive_with, check_string_condition,
    classical_order, factorial, schlafli, ClassicalKind, ClosureEngine, Sequential, DEFAULT_CAP,
};
use crate::linalg::Matrix;
use crate::schreier::{order_via_stabilizer_chain, MAX_POINT_BITS};
use crate::strings::{is_involution, preserves_bilinear, preserves_quadratic, GeneratorString, StringKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum IpMode {
    /// Every pair of generator subsets.
    Full,
    /// Prefix/suffix windows only.
    #[default]
    Recursive,
}

impl IpMode {
    pub fn name(self) -> &'static str {
        match self {
            IpMode::Full => "full",
            IpMode::Recursive => "recursive",
        }
    }
}

impl fmt::Display for IpMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OrderMethod {
    /// Stabilizer chain when the row space is small enough, enumeration otherwise.
    #[default]
    Auto,
    Enumeration,
    StabilizerChain,
}

impl OrderMethod {
    pub fn name(self) -> &'static str {
        match self {
            OrderMethod::Auto => "auto",
            OrderMethod::Enumeration => "enumeration",
            OrderMethod::StabilizerChain => "stabilizer_chain",
        }
    }
}

impl fmt::Display for OrderMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub mode: IpMode,
    pub cap: usize,
    pub order_method: OrderMethod,
    /// Bound for the orders of consecutive products.
    pub product_order_cap: u64,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions {
            mode: IpMode::Recursive,
            cap: DEFAULT_CAP,
            order_method: OrderMethod::Auto,
            product_order_cap: 1 << 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub kind: Option<StringKind>,
    pub q: u32,
    pub d: usize,
    pub rank: usize,
    pub involutions: bool,
    /// `None` when no form was supplied.
    pub isometries: Option<bool>,
    pub string_condition: bool,
    pub intersection_property: bool,
    pub ip_mode: IpMode,
    pub group_order: u128,
    /// The method actually used; never `Auto`.
    pub order_method: OrderMethod,
    /// Order of the group the construction is expected to generate, when known.
    pub expected_order: Option<u128>,
    pub schlafli: Vec<u64>,
}

impl VerificationReport {
    pub fn order_matches(&self) -> Option<bool> {
        self.expected_order.map(|e| e == self.group_order)
    }

    pub fn passed(&self) -> bool {
        self.involutions
            && self.isometries != Some(false)
            && self.string_condition
            && self.intersection_property
            && self.order_matches() != Some(false)
    }
}

/// Order of the group generated by a string of the given kind, when it is known.
pub fn expected_order(kind: StringKind, q: u32, d: usize) -> Result<Option<u128>> {
    let q64 = q as u64;
    let half = (d / 2) as u32;
    Ok(match kind {
        StringKind::OrthPlus => Some(classical_order(ClassicalKind::OrthPlus, half, q64)?),
        StringKind::OrthMinus => Some(classical_order(ClassicalKind::OrthMinus, half, q64)?),
        StringKind::SymplecticOddRank => Some(classical_order(ClassicalKind::Sp, half, q64)?),
        StringKind::Sp4Rank4 => Some(classical_order(ClassicalKind::Sp, 2, q64)?),
        StringKind::Symmetric => Some(factorial(d as u32 + 1)?),
        StringKind::OddSingularRadical => None,
    })
}

/// Checks involutions, isometries (against `space` where given; `quadratic[i]` says
/// whether generator `i` must preserve the quadratic form or only its polar form),
/// the string condition, the intersection property and the group order.
pub fn verify_generators(
    gens: &[Matrix],
    space: Option<&QuadraticSpace>,
    quadratic: Option<&[bool]>,
    kind: Option<StringKind>,
    opts: &VerifyOptions,
    engine: &dyn ClosureEngine,
) -> Result<VerificationReport> {
    let first = gens.first().ok_or(Error::NoGenerators)?;
    let field = first.field();
    let d = first.rows();
    let involutions = gens.iter().all(|g| g.is_square() && g.rows() == d && !g.is_identity() && is_involution(g));
    let isometries = match space {
        None => None,
        Some(s) => {
            let mut ok = true;
            for (i, g) in gens.iter().enumerate() {
                let quad = quadratic.and_then(|q| q.get(i).copied()).unwrap_or(true);
                ok &= if quad { preserves_quadratic(s, g)? } else { preserves_bilinear(s, g)? };
            }
            Some(ok)
        }
    };
    let string_condition = involutions && check_string_condition(gens)?;
    let intersection_property = string_condition
        && match opts.mode {
            IpMode::Full => check_intersection_property_full_with(gens, opts.cap, engine)?,
            IpMode::Recursive => check_intersection_property_recursive_with(gens, opts.cap, engine)?,
        };
    let method = match opts.order_method {
        OrderMethod::Auto if field.k() * d as u32 <= MAX_POINT_BITS => OrderMethod::StabilizerChain,
        OrderMethod::Auto => OrderMethod::Enumeration,
        m => m,
    };
    let group_order = match method {
        OrderMethod::StabilizerChain => order_via_stabilizer_chain(gens)?,
        _ => engine.generate(field, d, gens, opts.cap)?.order() as u128,
    };
    Ok(VerificationReport {
        kind,
        q: field.q(),
        d,
        rank: gens.len(),
        involutions,
        isometries,
        string_condition,
        intersection_property,
        ip_mode: opts.mode,
        group_order,
        order_method: method,
        expected_order: kind.map(|k| expected_order(k, field.q(), d)).transpose()?.flatten(),
        schlafli: schlafli(gens, opts.product_order_cap)?,
    })
}

pub fn verify(gs: &GeneratorString, opts: &VerifyOptions) -> Result<VerificationReport> {
    verify_with(gs, opts, &Sequential)
}

pub fn verify_with(
    gs: &GeneratorString,
    opts: &VerifyOptions,
    engine: &dyn ClosureEngine,
) -> Result<VerificationReport> {
    let quad = gs.quadratic_isometry_required();
    verify_generators(&gs.gens, Some(&gs.space), Some(&quad), Some(gs.kind), opts, engine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, FieldElement};
    use crate::forms::WittType;
    use crate::strings::{build_orthogonal_string, build_sp4_rank4, build_symmetric_demo, build_symplectic_string};
    use alloc::vec;

    #[test]
    fn constructions_pass() {
        let f = Field::new(2).unwrap();
        let opts = VerifyOptions::default();
        for gs in [
            build_orthogonal_string(&f, 4, WittType::Minus).unwrap(),
            build_orthogonal_string(&f, 4, WittType::Plus).unwrap(),
            build_symplectic_string(&f, 3).unwrap(),
            build_sp4_rank4(&f).unwrap(),
        ] {
            let r = verify(&gs, &opts).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.order_method, OrderMethod::StabilizerChain);
        }
        let demo = build_symmetric_demo(&Field::new(1).unwrap(), 4).unwrap();
        let r = verify(&demo, &VerifyOptions { mode: IpMode::Full, order_method: OrderMethod::Enumeration, ..opts })
            .unwrap();
        assert!(r.passed());
        assert_eq!(r.group_order, 120);
        assert_eq!(r.schlafli, vec![3, 3, 3]);
    }

    #[test]
    fn tampered_generator_fails() {
        let f = Field::new(2).unwrap();
        let mut gs = build_symplectic_string(&f, 3).unwrap();
        let x = gs.gens[1].get(2, 1);
        gs.gens[1].set(2, 1, f.add(x, FieldElement::ONE));
        let r = verify(&gs, &VerifyOptions::default()).unwrap();
        assert_eq!(r.isometries, Some(false));
        assert!(!r.passed());
    }
}
