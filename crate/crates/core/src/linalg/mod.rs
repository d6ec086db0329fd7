//! Dense matrices and row vectors over GF(2^k).
//!
//! Vectors are rows: a matrix acts on the right, `v -> v·A`.

mod packed;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

pub use packed::{entry_width, Multiplier, PackedLayout};

/// A row vector.
pub type Vector = Vec<FieldElement>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(";")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    /// Row-major entries; every entry must lie in the field.
    pub fn from_entries(field: &Field, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension { expected: rows * cols, found: data.len() });
        }
        if let Some(bad) = data.iter().find(|e| !field.contains(**e)) {
            return Err(Error::NotAnElement { value: bad.0 as u32, k: field.k() });
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &Field, rows: &[Vector]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension { expected: cols, found: bad.len() });
        }
        Matrix::from_entries(field, rows.len(), cols, rows.concat())
    }

    /// Convenience constructor from raw bit patterns.
    pub fn from_bits(field: &Field, rows: &[&[u16]]) -> Result<Matrix> {
        let rows: Vec<Vector> = rows.iter().map(|r| r.iter().map(|&b| FieldElement(b)).collect()).collect();
        Matrix::from_rows(field, &rows)
    }

    pub fn row_vector(field: &Field, v: &[FieldElement]) -> Result<Matrix> {
        Matrix::from_entries(field, 1, v.len(), v.to_vec())
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| FieldElement(a.0 ^ b.0)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: FieldElement) -> Matrix {
        let data = self.data.iter().map(|&a| self.field.mul(a, c)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension { expected: self.cols, found: other.rows });
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(r, j);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(j, c)));
                }
            }
        }
        Ok(out)
    }

    /// `v·A` for a row vector `v`.
    pub fn vec_mul(&self, v: &[FieldElement]) -> Result<Vector> {
        if v.len() != self.rows {
            return Err(Error::Dimension { expected: self.rows, found: v.len() });
        }
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (j, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(a, self.get(j, c)));
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| self.get(r, c) == if r == c { FieldElement::ONE } else { FieldElement::ZERO })
            })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| (0..r.min(self.cols)).all(|c| self.get(r, c).is_zero()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        rref(&self.field, &mut rows).len()
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square()?;
        let n = self.rows;
        let f = &self.field;
        let mut aug: Vec<Vector> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { FieldElement::ONE } else { FieldElement::ZERO }));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !aug[r][col].is_zero()).ok_or(Error::Singular)?;
            aug.swap(col, pivot);
            let inv = f.inv(aug[col][col])?;
            for x in aug[col].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col];
                    for c in 0..2 * n {
                        let t = f.mul(factor, aug[col][c]);
                        aug[r][c] = f.add(aug[r][c], t);
                    }
                }
            }
        }
        let data = aug.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Ok(Matrix { field: f.clone(), rows: n, cols: n, data })
    }

    /// Basis of the right nullspace `{x : A·xᵗ = 0}`.
    pub fn right_nullspace(&self) -> Vec<Vector> {
        let f = &self.field;
        let mut rows = self.to_rows();
        let pivots = rref(f, &mut rows);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![FieldElement::ZERO; self.cols];
                v[fc] = FieldElement::ONE;
                for (i, &pc) in pivots.iter().enumerate() {
                    // char 2: moving the term across flips no sign
                    v[pc] = rows[i][fc];
                }
                v
            })
            .collect()
    }

    /// Basis of the left nullspace `{v : v·A = 0}`, matching the row-vector convention.
    pub fn nullspace(&self) -> Vec<Vector> {
        self.transpose().right_nullspace()
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        self.require_square()?;
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base)?;
            }
            base = base.matmul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Least `n >= 1` with `A^n = I`, by repeated multiplication up to `cap`.
    pub fn element_order(&self, cap: u64) -> Result<u64> {
        self.require_square()?;
        let mut x = self.clone();
        for n in 1..=cap {
            if x.is_identity() {
                return Ok(n);
            }
            x = x.matmul(self)?;
        }
        Err(Error::OrderCap(cap))
    }

    /// Row-major bit-packed encoding; see [`PackedLayout`].
    pub fn canonical_bytes(&self) -> Vec<u8> {
        PackedLayout::for_shape(&self.field, self.rows, self.cols).encode(self)
    }
}

/// Reduced row echelon form in place; returns the pivot columns in row order.
/// Zero rows are dropped.
pub fn rref(f: &Field, rows: &mut Vec<Vector>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][col]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col];
                for c in 0..ncols {
                    let t = f.mul(factor, rows[r][c]);
                    rows[i][c] = f.add(rows[i][c], t);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn vec_add(f: &Field, u: &[FieldElement], v: &[FieldElement]) -> Vector {
    u.iter().zip(v).map(|(&a, &b)| f.add(a, b)).collect()
}

pub fn vec_scale(f: &Field, c: FieldElement, v: &[FieldElement]) -> Vector {
    v.iter().map(|&a| f.mul(c, a)).collect()
}

pub fn is_zero_vector(v: &[FieldElement]) -> bool {
    v.iter().all(|a| a.is_zero())
}

/// Standard basis vector `e_i` of length `n`.
pub fn basis_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![FieldElement::ZERO; n];
    v[i] = FieldElement::ONE;
    v
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub fn normalize_point(f: &Field, v: &[FieldElement]) -> Vector {
    match v.iter().find(|a| !a.is_zero()) {
        Some(&lead) => vec_scale(f, f.inv(lead).expect("nonzero"), v),
        None => v.to_vec(),
    }
}

/// Rank of a list of vectors.
pub fn span_rank(f: &Field, vectors: &[Vector]) -> usize {
    let mut rows = vectors.to_vec();
    rref(f, &mut rows).len()
}

/// One normalized representative of every projective point of `span(basis)`.
///
/// The basis must be linearly independent; there are `(q^r - 1)/(q - 1)` points.
pub fn span_points(f: &Field, basis: &[Vector]) -> Result<Vec<Vector>> {
    let Some(first) = basis.first() else {
        return Ok(Vec::new());
    };
    if span_rank(f, basis) != basis.len() {
        return Err(Error::DependentVectors);
    }
    let n = first.len();
    let r = basis.len();
    let q = f.q() as u64;
    let mut points = Vec::new();
    // coefficient vectors whose leading nonzero coordinate is 1
    for lead in 0..r {
        let tail = r - lead - 1;
        let count = q.pow(tail as u32);
        for code in 0..count {
            let mut v = basis[lead].clone();
            let mut c = code;
            for j in lead + 1..r {
                let coeff = FieldElement((c % q) as u16);
                c /= q;
                if !coeff.is_zero() {
                    v = vec_add(f, &v, &vec_scale(f, coeff, &basis[j]));
                }
            }
            debug_assert_eq!(v.len(), n);
            points.push(normalize_point(f, &v));
        }
    }
    Ok(points)
}
