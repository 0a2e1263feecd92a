//! Exact linear algebra over the Gaussian rationals: fraction-free rank,
//! reduced row echelon form, nullspaces, solving, and hermitian signature.

use crate::rational::GaussRational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<GaussRational>, // row-major
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![GaussRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = GaussRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussRational>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &GaussRational {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut GaussRational {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[GaussRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        m
    }

    pub fn conj_transpose(&self) -> ExactMatrix {
        let mut m = self.transpose();
        for e in m.entries.iter_mut() {
            *e = e.conj();
        }
        m
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        let mut m = ExactMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.at(k, j);
                    *m.at_mut(i, j) += &prod;
                }
            }
        }
        m
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        m
    }

    pub fn scale(&self, k: &GaussRational) -> ExactMatrix {
        let mut m = self.clone();
        for a in m.entries.iter_mut() {
            *a = &*a * k;
        }
        m
    }

    pub fn neg(&self) -> ExactMatrix {
        self.scale(&-GaussRational::one())
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        self.add(&other.neg())
    }

    pub fn trace(&self) -> GaussRational {
        assert_eq!(self.rows, self.cols);
        let mut t = GaussRational::zero();
        for i in 0..self.rows {
            t += self.at(i, i);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn apply_row(&self, v: &[GaussRational]) -> Vec<GaussRational> {
        // row vector times matrix: (v·M)_j
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                let mut acc = GaussRational::zero();
                for (i, vi) in v.iter().enumerate() {
                    acc += &(vi * self.at(i, j));
                }
                acc
            })
            .collect()
    }

    /// Fraction-free Bareiss elimination; exact rank over ℚ(i).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (r, c) = (m.rows, m.cols);
        let mut rank = 0;
        let mut prev = GaussRational::one();
        let mut row = 0;
        for col in 0..c {
            if row >= r {
                break;
            }
            // pivot search
            let mut piv = None;
            for i in row..r {
                if !m.at(i, col).is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            if p != row {
                for j in 0..c {
                    let a = m.at(p, j).clone();
                    let b = m.at(row, j).clone();
                    *m.at_mut(p, j) = b;
                    *m.at_mut(row, j) = a;
                }
            }
            let pivot = m.at(row, col).clone();
            for i in (row + 1)..r {
                let head = m.at(i, col).clone();
                for j in 0..c {
                    let num = &(&pivot * m.at(i, j)) - &(&head * m.at(row, j));
                    *m.at_mut(i, j) = &num / &prev;
                }
            }
            prev = pivot;
            row += 1;
            rank += 1;
        }
        rank
    }

    pub fn det(&self) -> GaussRational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return GaussRational::one();
        }
        let mut m = self.clone();
        let mut prev = GaussRational::one();
        let mut sign = GaussRational::one();
        for col in 0..n {
            let mut piv = None;
            for i in col..n {
                if !m.at(i, col).is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else {
                return GaussRational::zero();
            };
            if p != col {
                sign = -sign;
                for j in 0..n {
                    let a = m.at(p, j).clone();
                    let b = m.at(col, j).clone();
                    *m.at_mut(p, j) = b;
                    *m.at_mut(col, j) = a;
                }
            }
            let pivot = m.at(col, col).clone();
            for i in (col + 1)..n {
                let head = m.at(i, col).clone();
                for j in 0..n {
                    let num = &(&pivot * m.at(i, j)) - &(&head * m.at(col, j));
                    *m.at_mut(i, j) = &num / &prev;
                }
            }
            prev = pivot;
        }
        &sign * m.at(n - 1, n - 1)
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let (r, c) = (m.rows, m.cols);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..c {
            if row >= r {
                break;
            }
            let mut piv = None;
            for i in row..r {
                if !m.at(i, col).is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            if p != row {
                for j in 0..c {
                    let a = m.at(p, j).clone();
                    let b = m.at(row, j).clone();
                    *m.at_mut(p, j) = b;
                    *m.at_mut(row, j) = a;
                }
            }
            let inv = m.at(row, col).inv().unwrap();
            for j in 0..c {
                *m.at_mut(row, j) = m.at(row, j) * &inv;
            }
            for i in 0..r {
                if i == row || m.at(i, col).is_zero() {
                    continue;
                }
                let factor = m.at(i, col).clone();
                for j in 0..c {
                    let sub = &factor * m.at(row, j);
                    *m.at_mut(i, j) -= &sub;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Basis of {x : A·x = 0} (column vectors, returned as Vec<Vec<_>>).
    pub fn nullspace(&self) -> Vec<Vec<GaussRational>> {
        let (rref, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![GaussRational::zero(); self.cols];
            v[free] = GaussRational::one();
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -rref.at(prow, free);
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of A·x = b, if consistent.
    pub fn solve(&self, b: &[GaussRational]) -> Option<Vec<GaussRational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = ExactMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let (rref, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![GaussRational::zero(); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = rref.at(prow, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = ExactMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = GaussRational::one();
        }
        let (rref, pivots) = aug.rref();
        if pivots != (0..n).collect::<Vec<_>>() {
            return None;
        }
        let mut inv = ExactMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                *inv.at_mut(i, j) = rref.at(i, n + j).clone();
            }
        }
        Some(inv)
    }

    /// Characteristic polynomial coefficients c_0..c_n of
    /// det(tI − A) = t^n + c_{n−1} t^{n−1} + … + c_0, by Faddeev–LeVerrier.
    pub fn char_poly(&self) -> Vec<GaussRational> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![GaussRational::zero(); n + 1];
        coeffs[n] = GaussRational::one();
        let mut m = ExactMatrix::identity(n);
        for k in 1..=n {
            m = self.mul(&m);
            let c = -&m.trace().scale(&BigRational::new(
                BigInt::from(1),
                BigInt::from(k as i64),
            ));
            coeffs[n - k] = c.clone();
            for i in 0..n {
                *m.at_mut(i, i) += &c;
            }
        }
        coeffs
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && *self == self.conj_transpose()
    }

    /// Signature (positives, negatives) of a hermitian matrix, by exact
    /// congruence diagonalization.
    pub fn hermitian_signature(&self) -> (usize, usize) {
        assert!(self.is_hermitian(), "signature needs a hermitian matrix");
        let n = self.rows;
        let mut m = self.clone();
        let (mut pos, mut neg) = (0usize, 0usize);
        let mut idx = 0;
        while idx < n {
            if m.at(idx, idx).is_zero() {
                // look for a nonzero diagonal further down to swap in
                let mut found = None;
                for i in (idx + 1)..n {
                    if !m.at(i, i).is_zero() {
                        found = Some(i);
                        break;
                    }
                }
                if let Some(i) = found {
                    m.congruence_swap(idx, i);
                } else {
                    // all-zero diagonal block: find off-diagonal entry
                    let mut off = None;
                    'outer: for i in idx..n {
                        for j in (i + 1)..n {
                            if !m.at(i, j).is_zero() {
                                off = Some((i, j));
                                break 'outer;
                            }
                        }
                    }
                    let Some((i, j)) = off else {
                        break; // remaining block is zero
                    };
                    // row/col_i += u·row/col_j with u chosen so the
                    // diagonal entry 2·Re(u·m_ij) is nonzero
                    let mij = m.at(i, j).clone();
                    let u = if !mij.re.is_zero() {
                        GaussRational::one()
                    } else {
                        GaussRational::i()
                    };
                    m.congruence_add(i, j, &u);
                    if i != idx {
                        m.congruence_swap(idx, i);
                    }
                }
                continue;
            }
            let d = m.at(idx, idx).clone();
            if d.re.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in (idx + 1)..n {
                let f = &(-m.at(i, idx)) / &d;
                m.congruence_add(i, idx, &f);
            }
            idx += 1;
        }
        (pos, neg)
    }

    fn congruence_swap(&mut self, a: usize, b: usize) {
        let n = self.cols;
        for j in 0..n {
            let x = self.at(a, j).clone();
            let y = self.at(b, j).clone();
            *self.at_mut(a, j) = y;
            *self.at_mut(b, j) = x;
        }
        for i in 0..n {
            let x = self.at(i, a).clone();
            let y = self.at(i, b).clone();
            *self.at_mut(i, a) = y;
            *self.at_mut(i, b) = x;
        }
    }

    /// row_a += u·row_b followed by col_a += ū·col_b (hermitian congruence).
    fn congruence_add(&mut self, a: usize, b: usize, u: &GaussRational) {
        let n = self.cols;
        for j in 0..n {
            let add = u * self.at(b, j);
            *self.at_mut(a, j) += &add;
        }
        let uc = u.conj();
        for i in 0..n {
            let add = &uc * self.at(i, b);
            *self.at_mut(i, a) += &add;
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Dimension of the ℝ-linear span of complex vectors inside ℂ^N ≅ ℝ^{2N}.
pub fn real_span_dim(vectors: &[Vec<GaussRational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let n = vectors[0].len();
    assert!(vectors.iter().all(|v| v.len() == n), "length mismatch");
    let rows: Vec<Vec<GaussRational>> = vectors
        .iter()
        .map(|v| {
            let mut row = Vec::with_capacity(2 * n);
            for c in v {
                row.push(GaussRational::new(c.re.clone(), BigRational::zero()));
            }
            for c in v {
                row.push(GaussRational::new(c.im.clone(), BigRational::zero()));
            }
            row
        })
        .collect();
    ExactMatrix::from_rows(rows).rank()
}

/// Rank of the ℂ-linear span of complex vectors.
pub fn complex_span_dim(vectors: &[Vec<GaussRational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    ExactMatrix::from_rows(vectors.to_vec()).rank()
}
