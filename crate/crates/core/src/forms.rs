//! Quadratic forms in characteristic 2 and their polar bilinear forms.
//!
//! A form is stored as an upper-triangular matrix `Φ` with `φ(v) = v Φ vᵗ`;
//! the polar form has matrix `B = Φ + Φᵗ`, which is alternating.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{basis_vector, span_points, span_rank, vec_add, vec_scale, Matrix, Vector};

/// Lines sorted by their number of singular points: 0, 1, 2 or q + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LineClass {
    Asingular,
    Singular,
    Hyperbolic,
    TotallySingular,
}

/// Isometry type of a nondegenerate even-dimensional orthogonal space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WittType {
    Plus,
    Minus,
}

impl WittType {
    pub fn sign(self) -> char {
        match self {
            WittType::Plus => '+',
            WittType::Minus => '-',
        }
    }
}

impl fmt::Display for WittType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticSpace {
    phi: Matrix,
    bil: Matrix,
    scalars: Option<Vec<FieldElement>>,
}

/// The form `Φ(α₁, …, α_{d−1})`: unit diagonal, the scalars on the superdiagonal.
pub fn build_phi(field: &Field, scalars: &[FieldElement]) -> Result<QuadraticSpace> {
    QuadraticSpace::from_scalars(field, scalars)
}

impl QuadraticSpace {
    pub fn from_scalars(field: &Field, scalars: &[FieldElement]) -> Result<QuadraticSpace> {
        let d = scalars.len() + 1;
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        if let Some(i) = scalars.iter().position(|a| a.is_zero()) {
            return Err(Error::ZeroScalar(i));
        }
        if let Some(bad) = scalars.iter().find(|a| !field.contains(**a)) {
            return Err(Error::NotAnElement { value: bad.0 as u32, k: field.k() });
        }
        let mut phi = Matrix::identity(field, d);
        for (i, &a) in scalars.iter().enumerate() {
            phi.set(i, i + 1, a);
        }
        let mut space = QuadraticSpace::from_form_matrix(phi)?;
        space.scalars = Some(scalars.to_vec());
        Ok(space)
    }

    /// A space from an arbitrary upper-triangular form matrix.
    pub fn from_form_matrix(phi: Matrix) -> Result<QuadraticSpace> {
        if !phi.is_square() {
            return Err(Error::NotSquare { rows: phi.rows(), cols: phi.cols() });
        }
        if phi.rows() < 2 {
            return Err(Error::DimensionTooSmall(phi.rows()));
        }
        if !phi.is_upper_triangular() {
            return Err(Error::NotUpperTriangular);
        }
        let bil = phi.add(&phi.transpose())?;
        Ok(QuadraticSpace { phi, bil, scalars: None })
    }

    #[inline]
    pub fn field(&self) -> &Field {
        self.phi.field()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.phi.rows()
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn bil(&self) -> &Matrix {
        &self.bil
    }

    /// The superdiagonal scalars when the space came from [`build_phi`].
    pub fn scalars(&self) -> Option<&[FieldElement]> {
        self.scalars.as_deref()
    }

    fn check_len(&self, v: &[FieldElement]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), found: v.len() });
        }
        Ok(())
    }

    pub fn eval_phi(&self, v: &[FieldElement]) -> Result<FieldElement> {
        self.check_len(v)?;
        let f = self.field();
        let mut acc = FieldElement::ZERO;
        for i in 0..v.len() {
            if v[i].is_zero() {
                continue;
            }
            for j in i..v.len() {
                let c = self.phi.get(i, j);
                if !c.is_zero() && !v[j].is_zero() {
                    acc = f.add(acc, f.mul(c, f.mul(v[i], v[j])));
                }
            }
        }
        Ok(acc)
    }

    pub fn eval_bil(&self, u: &[FieldElement], v: &[FieldElement]) -> Result<FieldElement> {
        self.check_len(u)?;
        self.check_len(v)?;
        let f = self.field();
        let bv = self.bil.vec_mul(u)?;
        Ok(bv.iter().zip(v).fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
    }

    pub fn is_nonsingular(&self, v: &[FieldElement]) -> Result<bool> {
        Ok(!self.eval_phi(v)?.is_zero())
    }

    /// Basis of `V^⊥`, the left nullspace of the polar form.
    pub fn radical(&self) -> Vec<Vector> {
        self.bil.nullspace()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().is_empty()
    }

    /// Whether the one-dimensional radical of an odd-dimensional space is a singular point.
    pub fn radical_is_singular(&self) -> Result<bool> {
        if self.dim().is_multiple_of(2) {
            return Err(Error::Parity("odd"));
        }
        if let Some(scalars) = &self.scalars {
            return radical_singular_closed_form(self.field(), scalars);
        }
        match self.radical().as_slice() {
            [z] => Ok(self.eval_phi(z)?.is_zero()),
            _ => Err(Error::Degenerate),
        }
    }

    /// Counts the singular points among the q + 1 points of `⟨u, w⟩`.
    pub fn classify_line(&self, u: &[FieldElement], w: &[FieldElement]) -> Result<LineClass> {
        self.check_len(u)?;
        self.check_len(w)?;
        let points = span_points(self.field(), &[u.to_vec(), w.to_vec()])?;
        let mut singular = 0;
        for p in &points {
            if self.eval_phi(p)?.is_zero() {
                singular += 1;
            }
        }
        match singular {
            0 => Ok(LineClass::Asingular),
            1 => Ok(LineClass::Singular),
            2 => Ok(LineClass::Hyperbolic),
            n if n == points.len() => Ok(LineClass::TotallySingular),
            n => Err(Error::ImpossiblePointCount(n)),
        }
    }

    fn require_even_nondegenerate(&self) -> Result<()> {
        if !self.dim().is_multiple_of(2) {
            return Err(Error::Parity("even"));
        }
        if !self.is_nondegenerate() {
            return Err(Error::Degenerate);
        }
        Ok(())
    }

    /// A hyperbolic basis `(e_i, f_i)` of the polar form: `(e_i, f_j) = δ_ij`,
    /// `(e_i, e_j) = (f_i, f_j) = 0`.
    ///
    /// Spaces built from scalars use the closed form of the symplectic
    /// Gram-Schmidt sweep on the tridiagonal polar matrix; other spaces fall back to
    /// [`Self::hyperbolic_basis_greedy`].
    pub fn hyperbolic_basis(&self) -> Result<Vec<(Vector, Vector)>> {
        self.require_even_nondegenerate()?;
        match &self.scalars {
            Some(s) => hyperbolic_closed_form(self.field(), s),
            None => self.hyperbolic_basis_greedy(),
        }
    }

    /// Greedy hyperbolic-pair extraction for any nondegenerate alternating form.
    pub fn hyperbolic_basis_greedy(&self) -> Result<Vec<(Vector, Vector)>> {
        self.require_even_nondegenerate()?;
        let f = self.field();
        let mut rest: Vec<Vector> = (0..self.dim()).map(|i| basis_vector(self.dim(), i)).collect();
        let mut pairs = Vec::new();
        while !rest.is_empty() {
            let e = rest.remove(0);
            let mut partner = None;
            for (i, w) in rest.iter().enumerate() {
                let b = self.eval_bil(&e, w)?;
                if !b.is_zero() {
                    partner = Some((i, b));
                    break;
                }
            }
            let (i, b) = partner.ok_or(Error::Degenerate)?;
            let fv = vec_scale(f, f.inv(b)?, &rest.remove(i));
            // project the remaining vectors onto ⟨e, f⟩^⊥
            for w in rest.iter_mut() {
                let we = self.eval_bil(w, &e)?;
                let wf = self.eval_bil(w, &fv)?;
                let shifted = vec_add(f, &vec_scale(f, wf, &e), &vec_scale(f, we, &fv));
                *w = vec_add(f, w, &shifted);
            }
            pairs.push((e, fv));
        }
        Ok(pairs)
    }

    /// `Σ φ(e_i)φ(f_i)` over the given hyperbolic basis, reduced modulo `N`.
    pub fn arf_with_basis(&self, basis: &[(Vector, Vector)]) -> Result<u8> {
        let f = self.field();
        let mut acc = FieldElement::ZERO;
        for (e, fv) in basis {
            acc = f.add(acc, f.mul(self.eval_phi(e)?, self.eval_phi(fv)?));
        }
        Ok(u8::from(!f.in_artin_schreier(acc)))
    }

    /// The Arf invariant as a bit: 0 when the sum lies in `N`.
    pub fn arf(&self) -> Result<u8> {
        let basis = self.hyperbolic_basis()?;
        self.arf_with_basis(&basis)
    }

    /// Plus type (Witt index m) exactly when the Arf invariant vanishes.
    pub fn witt_type(&self) -> Result<WittType> {
        Ok(if self.arf()? == 0 { WittType::Plus } else { WittType::Minus })
    }
}

/// `β_s = ∏_{i ≤ s} α_{2i−1}/α_{2i}` for `s = 1..=m`.
fn radical_betas(field: &Field, scalars: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let d = scalars.len() + 1;
    if d.is_multiple_of(2) {
        return Err(Error::Parity("odd"));
    }
    let m = d / 2;
    let mut betas = Vec::with_capacity(m);
    let mut beta = FieldElement::ONE;
    for s in 0..m {
        beta = field.mul(beta, field.div(scalars[2 * s], scalars[2 * s + 1])?);
        betas.push(beta);
    }
    Ok(betas)
}

/// The radical vector `z = (1, 0, β₁, 0, …, 0, β_m)` of `Φ(α₁, …, α_{2m})`.
pub fn radical_closed_form(field: &Field, scalars: &[FieldElement]) -> Result<Vector> {
    let betas = radical_betas(field, scalars)?;
    let mut z = alloc::vec![FieldElement::ZERO; scalars.len() + 1];
    z[0] = FieldElement::ONE;
    for (s, b) in betas.into_iter().enumerate() {
        z[2 * s + 2] = b;
    }
    Ok(z)
}

/// `1 + β₁² + … + β_m² = 0`.
pub fn radical_singular_closed_form(field: &Field, scalars: &[FieldElement]) -> Result<bool> {
    let betas = radical_betas(field, scalars)?;
    let sum = betas.iter().fold(FieldElement::ONE, |acc, &b| field.add(acc, field.square(b)));
    Ok(sum.is_zero())
}

/// `e_1 = v_1`, `e_i = v_{2i−1} + Σ_{j<i} (∏_{ℓ≤j} α_{2i−2ℓ}/α_{2i−2ℓ−1}) v_{2i−2j−1}`,
/// `f_i = v_{2i}/α_{2i−1}`.
fn hyperbolic_closed_form(field: &Field, scalars: &[FieldElement]) -> Result<Vec<(Vector, Vector)>> {
    let d = scalars.len() + 1;
    // 1-based α and v, as in the formula
    let alpha = |s: usize| scalars[s - 1];
    let v = |t: usize| basis_vector(d, t - 1);
    let m = d / 2;
    let mut pairs = Vec::with_capacity(m);
    for i in 1..=m {
        let mut e = v(2 * i - 1);
        let mut coeff = FieldElement::ONE;
        for j in 1..i {
            let l = j;
            coeff = field.mul(coeff, field.div(alpha(2 * i - 2 * l), alpha(2 * i - 2 * l - 1))?);
            e = vec_add(field, &e, &vec_scale(field, coeff, &v(2 * i - 2 * j - 1)));
        }
        let fv = vec_scale(field, field.inv(alpha(2 * i - 1))?, &v(2 * i));
        pairs.push((e, fv));
    }
    Ok(pairs)
}

/// Closed-form Arf invariant for the scalar pattern `(λ, μ, …, μ, λ)` in dimension 2m:
/// `C(m−1, 2)·μ⁻¹ + μ/λ²` modulo `N`.
///
/// Kept as a cross-check only; type selection always evaluates the concrete form.
pub fn prescribed_arf(field: &Field, m: usize, lambda: FieldElement, mu: FieldElement) -> Result<u8> {
    if m < 1 {
        return Err(Error::InvalidParameters("m must be positive"));
    }
    let mut acc = field.div(mu, field.square(lambda))?;
    if m >= 3 && ((m - 1) * (m - 2) / 2) % 2 == 1 {
        acc = field.add(acc, field.inv(mu)?);
    }
    Ok(u8::from(!field.in_artin_schreier(acc)))
}

/// The scalar pattern `(λ, μ, …, μ, λ)` of length `2m − 1`.
pub fn type_pattern(m: usize, lambda: FieldElement, mu: FieldElement) -> Vec<FieldElement> {
    let n = 2 * m - 1;
    (0..n).map(|i| if i == 0 || i == n - 1 { lambda } else { mu }).collect()
}

/// Checks that `(e_i, f_i)` pairs satisfy the hyperbolic pairing identities exactly.
pub fn is_hyperbolic_basis(space: &QuadraticSpace, basis: &[(Vector, Vector)]) -> Result<bool> {
    let f = space.field();
    let all: Vec<Vector> = basis.iter().flat_map(|(e, fv)| [e.clone(), fv.clone()]).collect();
    if all.len() != space.dim() || span_rank(f, &all) != space.dim() {
        return Ok(false);
    }
    for (i, (ei, fi)) in basis.iter().enumerate() {
        for (j, (ej, fj)) in basis.iter().enumerate() {
            let want = if i == j { FieldElement::ONE } else { FieldElement::ZERO };
            if space.eval_bil(ei, fj)? != want
                || space.eval_bil(ei, ej)? != FieldElement::ZERO
                || space.eval_bil(fi, fj)? != FieldElement::ZERO
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn gf4() -> Field {
        Field::new(2).unwrap()
    }

    fn e(b: u16) -> FieldElement {
        FieldElement(b)
    }

    fn space(f: &Field, s: &[u16]) -> QuadraticSpace {
        build_phi(f, &s.iter().map(|&b| e(b)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn build_phi_examples() {
        let f = gf4();
        let s = space(&f, &[2]);
        assert_eq!(*s.phi(), Matrix::from_bits(&f, &[&[1, 2], &[0, 1]]).unwrap());
        let s = space(&f, &[2, 2]);
        assert_eq!(*s.phi(), Matrix::from_bits(&f, &[&[1, 2, 0], &[0, 1, 2], &[0, 0, 1]]).unwrap());
        assert!(s.bil().is_symmetric());
        assert!((0..3).all(|i| s.bil().get(i, i).is_zero()));
        assert_eq!(build_phi(&f, &[e(2), e(0)]), Err(Error::ZeroScalar(1)));
        assert_eq!(build_phi(&f, &[]), Err(Error::DimensionTooSmall(1)));
    }

    #[test]
    fn from_form_matrix_requires_upper_triangular() {
        let f = gf4();
        let lower = Matrix::from_bits(&f, &[&[1, 0], &[1, 1]]).unwrap();
        assert_eq!(QuadraticSpace::from_form_matrix(lower), Err(Error::NotUpperTriangular));
    }

    #[test]
    fn evaluation_examples() {
        let f = gf4();
        let s = space(&f, &[2, 3, 2]);
        for i in 0..4 {
            assert_eq!(s.eval_phi(&basis_vector(4, i)).unwrap(), FieldElement::ONE);
        }
        for i in 0..3 {
            let want = s.scalars().unwrap()[i];
            assert_eq!(s.eval_bil(&basis_vector(4, i), &basis_vector(4, i + 1)).unwrap(), want);
        }
        let s3 = space(&f, &[2, 2]);
        assert_eq!(s3.eval_phi(&[e(1), e(0), e(1)]).unwrap(), FieldElement::ZERO);
        assert!(matches!(s3.eval_phi(&[e(1)]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn polarization_identity_exhaustive_gf4_d3() {
        let f = gf4();
        let s = space(&f, &[2, 3]);
        let all: Vec<Vector> = (0..64u16).map(|c| vec![e(c & 3), e((c >> 2) & 3), e(c >> 4)]).collect();
        for u in &all {
            for v in &all {
                let lhs = s.eval_bil(u, v).unwrap();
                let rhs = f.add(
                    s.eval_phi(&vec_add(&f, u, v)).unwrap(),
                    f.add(s.eval_phi(u).unwrap(), s.eval_phi(v).unwrap()),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn radical_examples() {
        let f = gf4();
        assert!(space(&f, &[2, 3, 2]).radical().is_empty());
        let s = space(&f, &[2, 3]);
        let r = s.radical();
        assert_eq!(r.len(), 1);
        assert_eq!(crate::linalg::normalize_point(&f, &r[0]), vec![e(1), e(0), e(3)]);
        assert_eq!(radical_closed_form(&f, &[e(2), e(2)]).unwrap(), vec![e(1), e(0), e(1)]);
        assert_eq!(radical_closed_form(&f, &[e(2), e(3)]).unwrap(), vec![e(1), e(0), e(3)]);
        assert_eq!(radical_closed_form(&f, &[e(2), e(3), e(2)]), Err(Error::Parity("odd")));
        let z5 = radical_closed_form(&f, &[e(2); 4]).unwrap();
        assert!(z5[1].is_zero() && z5[3].is_zero() && z5[0] == FieldElement::ONE);
        assert_eq!(space(&f, &[2; 4]).radical().len(), 1);
    }

    #[test]
    fn radical_singularity_examples() {
        let f = gf4();
        assert!(space(&f, &[2, 2]).radical_is_singular().unwrap());
        assert!(!space(&f, &[2, 3]).radical_is_singular().unwrap());
        assert_eq!(space(&f, &[2, 3, 2]).radical_is_singular(), Err(Error::Parity("odd")));
        // d = 5, all ω: β₁ = β₂ = 1, so 1 + 1 + 1 ≠ 0
        let s5 = space(&f, &[2; 4]);
        let z = radical_closed_form(&f, s5.scalars().unwrap()).unwrap();
        assert_eq!(s5.radical_is_singular().unwrap(), s5.eval_phi(&z).unwrap().is_zero());
        assert!(!s5.radical_is_singular().unwrap());
        // the generic route on an unscaled copy agrees
        let generic = QuadraticSpace::from_form_matrix(s5.phi().clone()).unwrap();
        assert_eq!(generic.radical_is_singular().unwrap(), s5.radical_is_singular().unwrap());
    }

    #[test]
    fn line_classes() {
        let f = gf4();
        let s = space(&f, &[2]);
        assert_eq!(s.classify_line(&basis_vector(2, 0), &basis_vector(2, 1)).unwrap(), LineClass::Asingular);
        let s = space(&f, &[1]);
        assert_eq!(s.classify_line(&basis_vector(2, 0), &basis_vector(2, 1)).unwrap(), LineClass::Hyperbolic);
        let s = space(&f, &[2]);
        assert_eq!(s.classify_line(&basis_vector(2, 0), &basis_vector(2, 0)), Err(Error::DependentVectors));
    }

    #[test]
    fn totally_singular_line_in_plus_space() {
        let f = gf4();
        let s = space(&f, &[2, 3, 2]);
        assert_eq!(s.witt_type().unwrap(), WittType::Plus);
        // search every pair of singular vectors for a totally singular line
        let singular: Vec<Vector> = (1..256u16)
            .map(|c| vec![e(c & 3), e((c >> 2) & 3), e((c >> 4) & 3), e(c >> 6)])
            .filter(|v| s.eval_phi(v).unwrap().is_zero())
            .collect();
        let found = singular.iter().enumerate().any(|(i, u)| {
            singular[i + 1..].iter().any(|w| {
                span_rank(&f, &[u.clone(), w.clone()]) == 2
                    && s.classify_line(u, w).unwrap() == LineClass::TotallySingular
            })
        });
        assert!(found);
    }

    #[test]
    fn hyperbolic_basis_examples() {
        let f = gf4();
        let s = space(&f, &[2]);
        let b = s.hyperbolic_basis().unwrap();
        assert_eq!(b[0].0, vec![e(1), e(0)]);
        assert_eq!(b[0].1, vec![e(0), f.inv(e(2)).unwrap()]);
        let s = space(&f, &[2, 3, 2]);
        let b = s.hyperbolic_basis().unwrap();
        // e₂ = v₃ + (α₂/α₁)v₁
        let c = f.div(e(3), e(2)).unwrap();
        assert_eq!(b[1].0, vec![c, e(0), e(1), e(0)]);
        assert!(is_hyperbolic_basis(&s, &b).unwrap());
        assert_eq!(space(&f, &[2, 2]).hyperbolic_basis(), Err(Error::Parity("even")));
    }

    #[test]
    fn arf_examples() {
        let f = gf4();
        assert_eq!(space(&f, &[2]).arf().unwrap(), 1);
        assert_eq!(space(&f, &[1]).arf().unwrap(), 0);
        assert_eq!(space(&f, &[2, 3, 2]).arf().unwrap(), 0);
        assert_eq!(space(&f, &[2, 2, 2]).witt_type().unwrap(), WittType::Minus);
        assert_eq!(space(&f, &[2, 3, 2]).witt_type().unwrap(), WittType::Plus);
        assert_eq!(space(&f, &[2]).witt_type().unwrap(), WittType::Minus);
    }
}
