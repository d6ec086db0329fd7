//! Generator strings built from symmetries.
//!
//! For a nonsingular vector `x` the symmetry `σ_x : v ↦ v + ((v, x)/φ(x)) x`
//! is an involutory isometry. The strings here are the symmetries of the
//! standard basis of a space `Φ(α₁, …, α_{d−1})` with every scalar taken from
//! the admissible set `A`, plus the explicit rank-4 generators of Sp(4, q).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::forms::{build_phi, radical_singular_closed_form, type_pattern, QuadraticSpace, WittType};
use crate::linalg::{basis_vector, span_points, Matrix, Vector};

/// What group a generator string is expected to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StringKind {
    /// O⁺(d, q), d even.
    OrthPlus,
    /// O⁻(d, q), d even.
    OrthMinus,
    /// Sp(d − 1, q) acting on a d-space with nonsingular radical, d odd.
    SymplecticOddRank,
    /// Odd dimension with a singular radical; the isometry group is not symplectic.
    OddSingularRadical,
    /// The four rank-4 generators of Sp(4, q).
    Sp4Rank4,
    /// q = 2: the symmetries of a d-space generate the symmetric group S_{d+1}.
    Symmetric,
}

impl StringKind {
    pub fn name(self) -> &'static str {
        match self {
            StringKind::OrthPlus => "OrthPlus",
            StringKind::OrthMinus => "OrthMinus",
            StringKind::SymplecticOddRank => "SymplecticOddRank",
            StringKind::OddSingularRadical => "OddSingularRadical",
            StringKind::Sp4Rank4 => "Sp4Rank4",
            StringKind::Symmetric => "Symmetric",
        }
    }

    pub fn from_name(name: &str) -> Option<StringKind> {
        [
            StringKind::OrthPlus,
            StringKind::OrthMinus,
            StringKind::SymplecticOddRank,
            StringKind::OddSingularRadical,
            StringKind::Sp4Rank4,
            StringKind::Symmetric,
        ]
        .into_iter()
        .find(|k| k.name() == name)
    }
}

impl fmt::Display for StringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Scalars that drove a construction: λ, μ for prescribed type, α for Sp(4, q).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StringMeta {
    pub lambda: Option<FieldElement>,
    pub mu: Option<FieldElement>,
    pub alpha: Option<FieldElement>,
}

#[derive(Clone, Debug)]
pub struct GeneratorString {
    pub space: QuadraticSpace,
    pub gens: Vec<Matrix>,
    pub scalars: Vec<FieldElement>,
    pub kind: StringKind,
    pub meta: StringMeta,
}

impl GeneratorString {
    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Which generators must preserve the quadratic form (all of them except
    /// the transvection `τ` of the Sp(4, q) string, which only preserves the polar form).
    pub fn quadratic_isometry_required(&self) -> Vec<bool> {
        match self.kind {
            StringKind::Sp4Rank4 => vec![true, true, true, false],
            _ => vec![true; self.gens.len()],
        }
    }
}

/// The matrix of `σ_x` in the standard basis.
pub fn symmetry(space: &QuadraticSpace, x: &[FieldElement]) -> Result<Matrix> {
    let f = space.field();
    let px = space.eval_phi(x)?;
    if px.is_zero() {
        return Err(Error::SingularVector);
    }
    let c = f.inv(px)?;
    // (v_i, x) is the i-th entry of x·B since B is symmetric
    let bx = space.bil().vec_mul(x)?;
    let d = space.dim();
    let mut m = Matrix::identity(f, d);
    for i in 0..d {
        let coeff = f.mul(c, bx[i]);
        if coeff.is_zero() {
            continue;
        }
        for j in 0..d {
            let t = f.add(m.get(i, j), f.mul(coeff, x[j]));
            m.set(i, j, t);
        }
    }
    Ok(m)
}

/// One symmetry for each nonsingular point of `span(basis)`.
pub fn symmetries_of_span(space: &QuadraticSpace, basis: &[Vector]) -> Result<Vec<Matrix>> {
    let mut out = Vec::new();
    for p in span_points(space.field(), basis)? {
        if space.is_nonsingular(&p)? {
            out.push(symmetry(space, &p)?);
        }
    }
    Ok(out)
}

pub fn is_involution(g: &Matrix) -> bool {
    g.is_square() && g.matmul(g).map(|s| s.is_identity()).unwrap_or(false)
}

/// `(u g, v g) = (u, v)` for all u, v, checked on the standard basis.
pub fn preserves_bilinear(space: &QuadraticSpace, g: &Matrix) -> Result<bool> {
    let d = space.dim();
    if g.rows() != d || g.cols() != d {
        return Err(Error::Dimension { expected: d, found: g.rows() });
    }
    for i in 0..d {
        for j in i + 1..d {
            if space.eval_bil(g.row(i), g.row(j))? != space.bil().get(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `φ(v g) = φ(v)` for all v. Exact: φ is determined by its values on a basis
/// together with its polar form.
pub fn preserves_quadratic(space: &QuadraticSpace, g: &Matrix) -> Result<bool> {
    if !preserves_bilinear(space, g)? {
        return Ok(false);
    }
    for i in 0..space.dim() {
        if space.eval_phi(g.row(i))? != space.phi().get(i, i) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A₀ = { β ≠ 0 : β⁻¹ ∉ N }`, ascending.
pub fn scalar_set_a0(field: &Field) -> Vec<FieldElement> {
    field.nonzero_elements().filter(|&b| !field.in_artin_schreier(field.inv(b).expect("nonzero"))).collect()
}

/// `H_β = [[1, β], [β, 1 + β²]]`, the product of consecutive symmetries on their support.
pub fn h_matrix(field: &Field, beta: FieldElement) -> Matrix {
    let one = FieldElement::ONE;
    let data = vec![one, beta, beta, field.add(one, field.square(beta))];
    Matrix::from_entries(field, 2, 2, data).expect("entries lie in the field")
}

/// `A = { β ∈ A₀ : H_β has order q + 1 }`, ascending.
pub fn scalar_set_a(field: &Field) -> Vec<FieldElement> {
    let target = field.q() as u64 + 1;
    scalar_set_a0(field)
        .into_iter()
        .filter(|&b| h_matrix(field, b).element_order(target).ok() == Some(target))
        .collect()
}

/// The symmetries of the standard basis vectors of a space built from scalars in `A`.
pub fn build_string_generators(space: &QuadraticSpace) -> Result<GeneratorString> {
    let field = space.field();
    let scalars = space.scalars().ok_or(Error::NoScalars)?.to_vec();
    let admissible = scalar_set_a(field);
    if let Some(bad) = scalars.iter().find(|s| !admissible.contains(s)) {
        return Err(Error::ScalarOutsideA(bad.0));
    }
    let d = space.dim();
    let gens = (0..d).map(|i| symmetry(space, &basis_vector(d, i))).collect::<Result<Vec<_>>>()?;
    let kind = if field.q() == 2 {
        StringKind::Symmetric
    } else if d.is_multiple_of(2) {
        match space.witt_type()? {
            WittType::Plus => StringKind::OrthPlus,
            WittType::Minus => StringKind::OrthMinus,
        }
    } else if space.radical_is_singular()? {
        StringKind::OddSingularRadical
    } else {
        StringKind::SymplecticOddRank
    };
    Ok(GeneratorString { space: space.clone(), gens, scalars, kind, meta: StringMeta::default() })
}

fn require_q4(field: &Field) -> Result<()> {
    if field.q() < 4 {
        return Err(Error::FieldTooSmall(field.q()));
    }
    Ok(())
}

/// Scalars `(λ, μ, …, μ, λ)` with `λ, μ ∈ A` giving a form of type `eps` in
/// dimension `d = 2m`; the lexicographically least `(λ, μ)` whose computed Arf
/// invariant matches.
pub fn choose_scalars_for_type(field: &Field, d: usize, eps: WittType) -> Result<Vec<FieldElement>> {
    require_q4(field)?;
    if d < 2 || !d.is_multiple_of(2) {
        return Err(Error::Parity("even"));
    }
    let m = d / 2;
    let a = scalar_set_a(field);
    // with d = 2 only λ appears
    let mus: &[FieldElement] = if m == 1 { &a[..a.len().min(1)] } else { &a };
    for &lambda in &a {
        for &mu in mus {
            let s = type_pattern(m, lambda, mu);
            if build_phi(field, &s)?.witt_type()? == eps {
                return Ok(s);
            }
        }
    }
    Err(Error::NoAdmissibleScalars("no (λ, μ) in A gives the requested type"))
}

/// All scalars `min A` except the last, which is the least member of `A` making the
/// radical nonsingular.
pub fn choose_scalars_symplectic(field: &Field, d: usize) -> Result<Vec<FieldElement>> {
    require_q4(field)?;
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::Parity("odd"));
    }
    let a = scalar_set_a(field);
    let first = *a.first().ok_or(Error::NoAdmissibleScalars("A is empty"))?;
    let mut s = vec![first; d - 1];
    for &last in &a {
        s[d - 2] = last;
        if !radical_singular_closed_form(field, &s)? {
            return Ok(s);
        }
    }
    Err(Error::NoAdmissibleScalars("every choice in A leaves the radical singular"))
}

/// Rank-d string for O^eps(d, q), d even.
pub fn build_orthogonal_string(field: &Field, d: usize, eps: WittType) -> Result<GeneratorString> {
    let s = choose_scalars_for_type(field, d, eps)?;
    let mut g = build_string_generators(&build_phi(field, &s)?)?;
    g.meta.lambda = Some(s[0]);
    g.meta.mu = Some(*s.get(1).unwrap_or(&s[0]));
    Ok(g)
}

/// Rank-d string for Sp(d − 1, q), d odd.
pub fn build_symplectic_string(field: &Field, d: usize) -> Result<GeneratorString> {
    let s = choose_scalars_symplectic(field, d)?;
    build_string_generators(&build_phi(field, &s)?)
}

/// The q = 2 string with every scalar 1, generating S_{d+1}.
pub fn build_symmetric_demo(field: &Field, d: usize) -> Result<GeneratorString> {
    if field.q() != 2 {
        return Err(Error::InvalidParameters("the symmetric-group string needs q = 2"));
    }
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    build_string_generators(&build_phi(field, &vec![FieldElement::ONE; d - 1])?)
}

/// Least nonzero `α` with `[[0, 1], [1, α²]]` of order `q + 1`.
pub fn sp4_alpha(field: &Field) -> Result<FieldElement> {
    let target = field.q() as u64 + 1;
    field
        .nonzero_elements()
        .find(|&a| {
            let m = Matrix::from_entries(
                field,
                2,
                2,
                vec![FieldElement::ZERO, FieldElement::ONE, FieldElement::ONE, field.square(a)],
            )
            .expect("entries lie in the field");
            m.element_order(target).ok() == Some(target)
        })
        .ok_or(Error::NoAdmissibleScalars("no α gives an element of order q + 1"))
}

/// The generators `σ_u, ρ, σ_w, τ` of Sp(4, q) relative to the ordered basis `u, e, b, w`.
///
/// The quadratic form on that basis has `φ(u) = φ(b) = φ(w) = α⁻¹`, `φ(e) = 0`,
/// `(u, e) = (e, w) = 1`, `(b, w) = α⁻¹` and all other pairings zero; these values are
/// forced by requiring `σ_u`, `σ_w` to be the symmetries of `u`, `w` and `ρ` the
/// pseudo-transvection `v ↦ v + α[(v,b)e + (v,e)b] + α²φ(b)(v,e)e`.
/// It is the only form preserved by `σ_u, ρ, σ_w` up to scalars and has plus type, so
/// `⟨σ_u, ρ, σ_w⟩ = O⁺(4, q)`; adding `τ` gives Sp(4, q).
pub fn build_sp4_rank4(field: &Field) -> Result<GeneratorString> {
    require_q4(field)?;
    let a = sp4_alpha(field)?;
    let ai = field.inv(a)?;
    let one = FieldElement::ONE;
    let z = FieldElement::ZERO;
    let m = |rows: [[FieldElement; 4]; 4]| {
        Matrix::from_entries(field, 4, 4, rows.concat()).expect("entries lie in the field")
    };
    let sigma_u = m([[one, z, z, z], [a, one, z, z], [z, z, one, z], [z, z, z, one]]);
    let rho = m([[one, a, a, z], [z, one, z, z], [z, z, one, z], [z, field.add(one, a), a, one]]);
    let sigma_w = m([[one, z, z, z], [z, one, z, a], [z, z, one, one], [z, z, z, one]]);
    let tau = m([[one, z, z, z], [z, one, z, z], [z, z, one, z], [z, z, a, one]]);
    let phi = m([[ai, one, z, z], [z, z, z, one], [z, z, ai, ai], [z, z, z, ai]]);
    let space = QuadraticSpace::from_form_matrix(phi)?;
    Ok(GeneratorString {
        space,
        gens: vec![sigma_u, rho, sigma_w, tau],
        scalars: Vec::new(),
        kind: StringKind::Sp4Rank4,
        meta: StringMeta { alpha: Some(a), ..StringMeta::default() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_scale;

    fn gf(k: u32) -> Field {
        Field::new(k).unwrap()
    }

    fn e(b: u16) -> FieldElement {
        FieldElement(b)
    }

    #[test]
    fn symmetry_of_first_basis_vector() {
        let f = gf(2);
        for a in 1..4u16 {
            let s = build_phi(&f, &[e(a)]).unwrap();
            let g = symmetry(&s, &basis_vector(2, 0)).unwrap();
            assert_eq!(g, Matrix::from_bits(&f, &[&[1, 0], &[a, 1]]).unwrap());
        }
    }

    #[test]
    fn symmetry_depends_only_on_the_point() {
        let f = gf(3);
        let s = build_phi(&f, &[e(3), e(5), e(6)]).unwrap();
        let x = (0..8u16).map(|t| vec![e(1), e(2), e(t), e(7)]).find(|x| s.is_nonsingular(x).unwrap()).unwrap();
        let g = symmetry(&s, &x).unwrap();
        for c in f.nonzero_elements() {
            assert_eq!(symmetry(&s, &vec_scale(&f, c, &x)).unwrap(), g);
        }
        assert!(is_involution(&g));
        assert!(preserves_quadratic(&s, &g).unwrap());
    }

    #[test]
    fn singular_vector_rejected() {
        let f = gf(2);
        let s = build_phi(&f, &[e(2), e(2)]).unwrap();
        assert_eq!(symmetry(&s, &[e(1), e(0), e(1)]), Err(Error::SingularVector));
    }

    #[test]
    fn scalar_sets() {
        assert_eq!(scalar_set_a0(&gf(2)), vec![e(2), e(3)]);
        assert_eq!(scalar_set_a(&gf(2)), vec![e(2), e(3)]);
        for k in [2, 3, 4] {
            let f = gf(k);
            assert_eq!(scalar_set_a0(&f).len() as u32, f.q() / 2);
            let a = scalar_set_a(&f);
            assert!(!a.is_empty());
            for b in a {
                assert_eq!(h_matrix(&f, b).element_order(1000).unwrap(), f.q() as u64 + 1);
            }
        }
        // over GF(2), N = {0} so 1 is admissible and H_1 has order 3
        assert_eq!(scalar_set_a0(&gf(1)), vec![e(1)]);
        assert_eq!(scalar_set_a(&gf(1)), vec![e(1)]);
    }

    #[test]
    fn h_omega() {
        let f = gf(2);
        assert_eq!(h_matrix(&f, e(2)), Matrix::from_bits(&f, &[&[1, 2], &[2, 2]]).unwrap());
    }

    #[test]
    fn string_generators_d3() {
        let f = gf(2);
        let g = build_string_generators(&build_phi(&f, &[e(2), e(2)]).unwrap()).unwrap();
        assert_eq!(g.gens[1], Matrix::from_bits(&f, &[&[1, 2, 0], &[0, 1, 0], &[0, 2, 1]]).unwrap());
        assert_eq!(g.kind, StringKind::OddSingularRadical);
        for m in &g.gens {
            assert!(is_involution(m));
        }
        for i in 0..2 {
            assert_eq!(g.gens[i].matmul(&g.gens[i + 1]).unwrap().element_order(100).unwrap(), 5);
        }
    }

    #[test]
    fn string_generators_reject_scalars_outside_a() {
        let f = gf(2);
        let s = build_phi(&f, &[e(1), e(2)]).unwrap();
        assert_eq!(build_string_generators(&s).unwrap_err(), Error::ScalarOutsideA(1));
    }

    #[test]
    fn type_selection_gf4() {
        let f = gf(2);
        assert_eq!(choose_scalars_for_type(&f, 4, WittType::Minus).unwrap(), vec![e(2), e(2), e(2)]);
        assert_eq!(choose_scalars_for_type(&f, 4, WittType::Plus).unwrap(), vec![e(2), e(3), e(2)]);
        assert_eq!(choose_scalars_for_type(&f, 2, WittType::Minus).unwrap(), vec![e(2)]);
        assert!(matches!(choose_scalars_for_type(&f, 2, WittType::Plus), Err(Error::NoAdmissibleScalars(_))));
        assert_eq!(choose_scalars_for_type(&f, 5, WittType::Plus), Err(Error::Parity("even")));
        assert_eq!(choose_scalars_for_type(&gf(1), 4, WittType::Plus), Err(Error::FieldTooSmall(2)));
    }

    #[test]
    fn type_selection_hits_requested_type() {
        for k in 2..=5 {
            let f = gf(k);
            for d in [4usize, 6, 8] {
                for eps in [WittType::Plus, WittType::Minus] {
                    let g = build_orthogonal_string(&f, d, eps).unwrap();
                    assert_eq!(g.space.witt_type().unwrap(), eps);
                    let want = if eps == WittType::Plus { StringKind::OrthPlus } else { StringKind::OrthMinus };
                    assert_eq!(g.kind, want);
                }
            }
        }
    }

    #[test]
    fn symplectic_selection() {
        let f = gf(2);
        assert_eq!(choose_scalars_symplectic(&f, 3).unwrap(), vec![e(2), e(3)]);
        for k in 2..=4 {
            let f = gf(k);
            for d in [3usize, 5, 7] {
                let g = build_symplectic_string(&f, d).unwrap();
                assert_eq!(g.space.radical().len(), 1);
                assert!(!g.space.radical_is_singular().unwrap());
                assert_eq!(g.kind, StringKind::SymplecticOddRank);
            }
        }
        assert_eq!(choose_scalars_symplectic(&f, 4), Err(Error::Parity("odd")));
    }

    #[test]
    fn sp4_generators() {
        let f = gf(2);
        let g = build_sp4_rank4(&f).unwrap();
        assert_eq!(g.meta.alpha, Some(e(2)));
        assert_eq!(
            g.gens[3],
            Matrix::from_bits(&f, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 2, 1]]).unwrap()
        );
        for m in &g.gens {
            assert!(is_involution(m));
            assert!(preserves_bilinear(&g.space, m).unwrap());
        }
        for m in &g.gens[..3] {
            assert!(preserves_quadratic(&g.space, m).unwrap());
        }
        assert!(!preserves_quadratic(&g.space, &g.gens[3]).unwrap());
        assert_eq!(g.gens[0].matmul(&g.gens[1]).unwrap().element_order(100).unwrap(), 10);
        assert_eq!(g.gens[1].matmul(&g.gens[2]).unwrap().element_order(100).unwrap(), 10);
        // σ_u and σ_w are the symmetries of u and w
        assert_eq!(symmetry(&g.space, &basis_vector(4, 0)).unwrap(), g.gens[0]);
        assert_eq!(symmetry(&g.space, &basis_vector(4, 3)).unwrap(), g.gens[2]);
        assert!(g.space.is_nondegenerate());
        assert_eq!(g.space.witt_type().unwrap(), WittType::Plus);
        assert_eq!(build_sp4_rank4(&gf(1)).unwrap_err(), Error::FieldTooSmall(2));
    }
}
