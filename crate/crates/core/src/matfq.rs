//! Dense matrices and vectors over `F_q`.

use std::ops::{Deref, Index};

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement};

/// A column vector over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VecFq(Vec<FieldElement>);

impl VecFq {
    pub fn new(entries: Vec<FieldElement>) -> Self {
        VecFq(entries)
    }

    pub fn zeros(n: usize) -> Self {
        VecFq(vec![FieldElement::ZERO; n])
    }

    /// The `i`-th standard basis vector of length `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = FieldElement::ONE;
        v
    }

    pub fn from_values(f: &FieldCtx, values: &[u32]) -> Result<Self> {
        values.iter().map(|&v| f.elem(v)).collect::<Result<Vec<_>>>().map(VecFq)
    }

    pub fn values(&self) -> Vec<u32> {
        self.0.iter().map(|e| e.value()).collect()
    }

    pub fn into_inner(self) -> Vec<FieldElement> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn check_field(&self, f: &FieldCtx) -> Result<()> {
        match self.0.iter().find(|&&e| !f.contains(e)) {
            Some(e) => Err(Error::ElementOutOfRange { value: e.value() as u64, q: f.q() }),
            None => Ok(()),
        }
    }

    fn same_len(&self, other: &VecFq) -> Result<()> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.len(), got: other.len() })
        }
    }

    pub fn add(&self, other: &VecFq, f: &FieldCtx) -> Result<VecFq> {
        self.same_len(other)?;
        Ok(VecFq(self.0.iter().zip(&other.0).map(|(&a, &b)| f.add(a, b)).collect()))
    }

    pub fn sub(&self, other: &VecFq, f: &FieldCtx) -> Result<VecFq> {
        self.same_len(other)?;
        Ok(VecFq(self.0.iter().zip(&other.0).map(|(&a, &b)| f.sub(a, b)).collect()))
    }

    pub fn neg(&self, f: &FieldCtx) -> VecFq {
        VecFq(self.0.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn scale(&self, k: FieldElement, f: &FieldCtx) -> VecFq {
        VecFq(self.0.iter().map(|&a| f.mul(a, k)).collect())
    }

    pub fn random<R: Rng + ?Sized>(f: &FieldCtx, n: usize, rng: &mut R) -> VecFq {
        VecFq((0..n).map(|_| f.random(rng)).collect())
    }
}

impl Deref for VecFq {
    type Target = [FieldElement];

    fn deref(&self) -> &[FieldElement] {
        &self.0
    }
}

impl From<Vec<FieldElement>> for VecFq {
    fn from(v: Vec<FieldElement>) -> Self {
        VecFq(v)
    }
}

/// A dense row-major matrix over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatFq {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Index<(usize, usize)> for MatFq {
    type Output = FieldElement;

    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: MatFq,
    pub pivots: Vec<usize>,
}

impl MatFq {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatFq { rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn diag(entries: &[FieldElement]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::RaggedMatrix);
        }
        Ok(MatFq { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix from encodings, validated against `f`.
    pub fn from_values(f: &FieldCtx, rows: &[Vec<u32>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|&v| f.elem(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn from_columns(cols: &[VecFq]) -> Result<Self> {
        let r = cols.first().map_or(0, |c| c.len());
        if cols.iter().any(|c| c.len() != r) {
            return Err(Error::RaggedMatrix);
        }
        let mut m = Self::zeros(r, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, &e) in col.iter().enumerate() {
                m.set(i, j, e);
            }
        }
        Ok(m)
    }

    pub fn values(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|e| e.value()).collect()).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> VecFq {
        VecFq((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn check_field(&self, f: &FieldCtx) -> Result<()> {
        match self.data.iter().find(|&&e| !f.contains(e)) {
            Some(e) => Err(Error::ElementOutOfRange { value: e.value() as u64, q: f.q() }),
            None => Ok(()),
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.rows, got: self.cols })
        }
    }

    fn same_shape(&self, other: &MatFq) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: other.rows });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.cols });
        }
        Ok(())
    }

    pub fn add(&self, other: &MatFq, f: &FieldCtx) -> Result<MatFq> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(MatFq { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &MatFq, f: &FieldCtx) -> Result<MatFq> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(MatFq { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, k: FieldElement, f: &FieldCtx) -> MatFq {
        MatFq { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, k)).collect() }
    }

    pub fn mul(&self, other: &MatFq, f: &FieldCtx) -> Result<MatFq> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = MatFq::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other[(k, j)]));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &VecFq, f: &FieldCtx) -> Result<VecFq> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok(VecFq(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.iter())
                        .fold(FieldElement::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
                })
                .collect(),
        ))
    }

    /// `self^k` by repeated squaring; `self^0 = I`.
    pub fn pow(&self, mut k: u64, f: &FieldCtx) -> Result<MatFq> {
        self.require_square()?;
        let mut acc = MatFq::identity(self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, f)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, f)?;
            }
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> MatFq {
        let mut t = MatFq::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self[(i, j)]);
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduced row-echelon form: leading entries 1, pivots ordered left to right.
    pub fn rref(&self, f: &FieldCtx) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = f.inv(m[(r, col)]).expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = f.mul(m[(r, j)], inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m[(i, col)];
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m[(i, j)], f.mul(factor, m[(r, j)]));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self, f: &FieldCtx) -> usize {
        self.rref(f).pivots.len()
    }

    /// Gauss-Jordan inverse.
    pub fn inv(&self, f: &FieldCtx) -> Result<MatFq> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = MatFq::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self[(i, j)]);
            }
            aug.set(i, n + i, FieldElement::ONE);
        }
        let red = aug.rref(f);
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut out = MatFq::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, red.matrix[(i, n + j)]);
            }
        }
        Ok(out)
    }

    pub fn is_invertible(&self, f: &FieldCtx) -> bool {
        self.is_square() && self.rank(f) == self.rows
    }

    /// Basis of the right null space, one vector per free column of the RREF:
    /// the free coordinate is 1, the other free coordinates 0.
    pub fn kernel_basis(&self, f: &FieldCtx) -> Vec<VecFq> {
        let Rref { matrix, pivots } = self.rref(f);
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = VecFq::zeros(self.cols);
                v.0[free] = FieldElement::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v.0[pc] = f.neg(matrix[(r, free)]);
                }
                v
            })
            .collect()
    }

    /// Monic characteristic polynomial `det(tI - A)`, coefficients low to high
    /// (length `n + 1`, last entry 1).
    ///
    /// Reduces to upper Hessenberg form by similarity, then expands along the
    /// subdiagonal.
    pub fn char_poly(&self, f: &FieldCtx) -> Result<Vec<FieldElement>> {
        self.require_square()?;
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| !h[(i, j)].is_zero()) else {
                continue;
            };
            if piv != j + 1 {
                h.swap_rows(piv, j + 1);
                for i in 0..n {
                    h.data.swap(i * n + piv, i * n + j + 1);
                }
            }
            let inv = f.inv(h[(j + 1, j)]).expect("pivot is nonzero");
            for k in j + 2..n {
                let u = f.mul(h[(k, j)], inv);
                if u.is_zero() {
                    continue;
                }
                // row_k -= u * row_{j+1}, then col_{j+1} += u * col_k
                for c in 0..n {
                    let v = f.sub(h[(k, c)], f.mul(u, h[(j + 1, c)]));
                    h.set(k, c, v);
                }
                for r in 0..n {
                    let v = f.add(h[(r, j + 1)], f.mul(u, h[(r, k)]));
                    h.set(r, j + 1, v);
                }
            }
        }

        // polys[k] = char poly of the leading k x k block.
        let mut polys: Vec<Vec<FieldElement>> = vec![vec![FieldElement::ONE]];
        for k in 0..n {
            // (t - h_kk) * p_k
            let prev = &polys[k];
            let mut next = vec![FieldElement::ZERO; k + 2];
            for (i, &a) in prev.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], a);
                next[i] = f.sub(next[i], f.mul(h[(k, k)], a));
            }
            let mut prod = FieldElement::ONE;
            for i in (0..k).rev() {
                prod = f.mul(prod, h[(i + 1, i)]);
                let coef = f.mul(prod, h[(i, k)]);
                if coef.is_zero() {
                    continue;
                }
                for (d, &a) in polys[i].iter().enumerate() {
                    next[d] = f.sub(next[d], f.mul(coef, a));
                }
            }
            polys.push(next);
        }
        Ok(polys.pop().unwrap())
    }

    /// Diagonalizes `self` over the base field: returns `(A, d)` with
    /// `self = A diag(d) A^{-1}`.
    ///
    /// Eigenvalues are the roots of the characteristic polynomial found by
    /// scanning the field, listed in ascending encoding (repeated per
    /// multiplicity); the matching columns of `A` are RREF kernel vectors.
    pub fn eigen_diagonalize(&self, f: &FieldCtx) -> Result<(MatFq, VecFq)> {
        let n = self.rows;
        let mut poly = self.char_poly(f)?;
        let mut roots: Vec<(FieldElement, usize)> = Vec::new();
        for x in f.elements() {
            let mut mult = 0;
            while poly.len() > 1 {
                let (quot, rem) = synthetic_division(&poly, x, f);
                if !rem.is_zero() {
                    break;
                }
                poly = quot;
                mult += 1;
            }
            if mult > 0 {
                roots.push((x, mult));
            }
        }
        let found: usize = roots.iter().map(|r| r.1).sum();
        if found < n {
            return Err(Error::EigenvalueOutsideField { found, n });
        }
        let mut cols = Vec::with_capacity(n);
        let mut eig = Vec::with_capacity(n);
        for (x, mult) in roots {
            let shifted = self.sub(&MatFq::identity(n).scale(x, f), f)?;
            let basis = shifted.kernel_basis(f);
            if basis.len() < mult {
                return Err(Error::NotDiagonalizable {
                    eigenvalue: x.value(),
                    geometric: basis.len(),
                    algebraic: mult,
                });
            }
            eig.extend(std::iter::repeat_n(x, basis.len()));
            cols.extend(basis);
        }
        Ok((MatFq::from_columns(&cols)?, VecFq(eig)))
    }

    /// Uniformly random invertible matrix (rejection sampling).
    pub fn random_invertible<R: Rng + ?Sized>(f: &FieldCtx, n: usize, rng: &mut R) -> MatFq {
        loop {
            let m = Self::random(f, n, n, rng);
            if m.is_invertible(f) {
                return m;
            }
        }
    }

    pub fn random<R: Rng + ?Sized>(f: &FieldCtx, rows: usize, cols: usize, rng: &mut R) -> MatFq {
        MatFq { rows, cols, data: (0..rows * cols).map(|_| f.random(rng)).collect() }
    }

    /// Permutation matrix with `P e_i = e_{perm[i]}`.
    pub fn permutation(perm: &[usize]) -> MatFq {
        let n = perm.len();
        let mut m = MatFq::zeros(n, n);
        for (i, &s) in perm.iter().enumerate() {
            m.set(s, i, FieldElement::ONE);
        }
        m
    }
}

/// Divides a polynomial (low to high) by `t - x`.
fn synthetic_division(
    poly: &[FieldElement],
    x: FieldElement,
    f: &FieldCtx,
) -> (Vec<FieldElement>, FieldElement) {
    let d = poly.len() - 1;
    let mut quot = vec![FieldElement::ZERO; d];
    let mut carry = FieldElement::ZERO;
    for i in (0..=d).rev() {
        let v = f.add(poly[i], f.mul(carry, x));
        if i == 0 {
            return (quot, v);
        }
        quot[i - 1] = v;
        carry = v;
    }
    unreachable!()
}

/// Evaluates a polynomial (coefficients low to high) at `x`.
pub fn poly_eval(poly: &[FieldElement], x: FieldElement, f: &FieldCtx) -> FieldElement {
    poly.iter().rev().fold(FieldElement::ZERO, |acc, &a| f.add(f.mul(acc, x), a))
}
