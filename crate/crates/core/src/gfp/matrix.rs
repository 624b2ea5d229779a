use std::fmt;

use serde::{Deserialize, Serialize};

use super::{add, axpy, check_modulus, inv, mul, neg, reduce, sub, Fp, FpPoly, Subspace};
use crate::error::{Error, Result};

/// Dense row-major matrix over GF(p).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FieldMatrix over GF({}) {}x{}", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl FieldMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod `p`.
    pub fn from_rows<R: AsRef<[i64]>>(p: u32, rows: &[R]) -> Result<Self> {
        check_modulus(p)?;
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&v| reduce(v, p)));
        }
        Ok(Self {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix from residue rows (entries already in `[0, p)`).
    pub(crate) fn from_residue_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Self {
            p,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub(crate) fn from_data(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self {
            p,
            rows,
            cols,
            data,
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
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

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn entry(&self, r: usize, c: usize) -> Fp {
        Fp::from_raw(self.get(r, c), self.p)
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Entries as signed representatives, row by row.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&v| v as i64).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// True when the matrix is a scalar multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let d = if self.rows == 0 { 0 } else { self.get(0, 0) };
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| self.get(i, j) == if i == j { d } else { 0 })
        })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, sub)
    }

    fn zip_with(&self, other: &Self, f: fn(u32, u32, u32) -> u32) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        assert_eq!(self.p, other.p, "modulus mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b, self.p))
            .collect();
        Self::from_data(self.p, self.rows, self.cols, data)
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p;
        let data = self.data.iter().map(|&a| mul(a, c % p, p)).collect();
        Self::from_data(p, self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        let data = self.data.iter().map(|&a| neg(a, p)).collect();
        Self::from_data(p, self.rows, self.cols, data)
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: u32, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        axpy(&mut self.data, c % self.p, &other.data, self.p);
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        assert_eq!(self.p, other.p, "modulus mismatch");
        let p = self.p as u64;
        let mut out = vec![0u32; self.rows * other.cols];
        let mut acc = vec![0u64; other.cols];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                let brow = other.row(k);
                for (s, &b) in acc.iter_mut().zip(brow) {
                    // residues < 2^15, so a*b < 2^30; reduce lazily
                    *s += a * b as u64;
                    if *s >= 1 << 62 {
                        *s %= p;
                    }
                }
            }
            for (o, s) in out[r * other.cols..(r + 1) * other.cols].iter_mut().zip(&acc) {
                *o = (s % p) as u32;
            }
        }
        Self::from_data(self.p, self.rows, other.cols, out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| {
                let s: u64 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    /// Commutator `self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut r = Self::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// The `rows × cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zero(self.p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r0 + i, c0 + j);
            }
        }
        out
    }

    pub fn trace(&self) -> u32 {
        (0..self.rows.min(self.cols)).fold(0, |t, i| add(t, self.get(i, i), self.p))
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    /// Reduced row-echelon form and rank.
    pub fn rref(&self) -> (Self, usize) {
        let (m, piv) = self.rref_with_pivots();
        (m, piv.len())
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let iv = inv(self.get(r, c), p);
            for j in c..cols {
                let v = self.get(r, j);
                self.data[r * cols + j] = mul(v, iv, p);
            }
            let pivot_row: Vec<u32> = self.row(r).to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f != 0 {
                    let row = &mut self.data[i * cols..(i + 1) * cols];
                    axpy(row, neg(f, p), &pivot_row, p);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Null space `{v : self·v = 0}` as a canonical subspace of GF(p)^cols.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref_with_pivots();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut vecs = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = neg(r.get(k, free), self.p);
            }
            vecs.push(v);
        }
        Subspace::span(self.p, self.cols, vecs)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zero(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = Self::zero(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = aug.get(i, n + j);
            }
        }
        Some(out)
    }

    /// Smallest `k` with `self^k = 0`, if the matrix is nilpotent.
    pub fn nilpotency_order(&self) -> Option<usize> {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Some(0);
        }
        let mut m = Self::identity(self.p, n);
        for k in 1..=n {
            m = m.mul(self);
            if m.is_zero() {
                return Some(k);
            }
        }
        None
    }

    /// Characteristic polynomial `det(x·I − self)`, via reduction to upper
    /// Hessenberg form.
    pub fn char_poly(&self) -> FpPoly {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let p = self.p;
        let n = self.rows;
        let mut h = self.clone();
        // Hessenberg reduction by similarity transforms.
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for j in 0..n {
                    h.data.swap(j * n + i, j * n + m);
                }
            }
            let t = inv(h.get(m, m - 1), p);
            for j in m + 1..n {
                let u = mul(h.get(j, m - 1), t, p);
                if u == 0 {
                    continue;
                }
                // row_j -= u * row_m
                for k in 0..n {
                    let v = sub(h.get(j, k), mul(u, h.get(m, k), p), p);
                    h.data[j * n + k] = v;
                }
                // col_m += u * col_j
                for k in 0..n {
                    let v = add(h.get(k, m), mul(u, h.get(k, j), p), p);
                    h.data[k * n + m] = v;
                }
            }
        }
        // Recurrence on leading principal minors.
        let mut polys: Vec<FpPoly> = vec![FpPoly::one(p)];
        for m in 0..n {
            let x_minus = FpPoly::from_residues(p, vec![neg(h.get(m, m), p), 1]);
            let mut pm = x_minus.mul(&polys[m]);
            let mut prod = 1u32;
            for i in (0..m).rev() {
                prod = mul(prod, h.get(i + 1, i), p);
                let c = mul(prod, h.get(i, m), p);
                if c != 0 {
                    pm = pm.sub(&polys[i].scale(c));
                }
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }

    /// Evaluates `f(self)` by Horner's rule.
    pub fn eval_poly(&self, f: &FpPoly) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Self::zero(self.p, n, n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                acc.data[i * n + i] = add(acc.data[i * n + i], c, self.p);
            }
        }
        acc
    }

    /// Flattens row-major into a vector of length `rows·cols`.
    pub fn flatten(&self) -> Vec<u32> {
        self.data.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[i64]]) -> FieldMatrix {
        FieldMatrix::from_rows(p, rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let id = FieldMatrix::identity(5, 3);
        assert_eq!(id.rref(), (id.clone(), 3));

        let a = m(5, &[&[1, 2], &[2, 4]]);
        assert_eq!(a.rref(), (m(5, &[&[1, 2], &[0, 0]]), 1));

        let z = FieldMatrix::zero(5, 2, 2);
        assert_eq!(z.rref(), (z.clone(), 0));
    }

    #[test]
    fn kernel_examples() {
        let a = m(3, &[&[1, 1], &[0, 0]]);
        let k = a.kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], vec![1, 2]);

        let inv = m(7, &[&[1, 2], &[3, 4]]);
        assert_eq!(inv.kernel().dim(), 0);

        let z = FieldMatrix::zero(5, 3, 3);
        assert_eq!(z.kernel(), Subspace::full(5, 3));
    }

    #[test]
    fn inverse_and_power() {
        let a = m(7, &[&[1, 2], &[3, 4]]);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai), FieldMatrix::identity(7, 2));
        assert!(m(7, &[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(a.pow(0), FieldMatrix::identity(7, 2));
        assert_eq!(a.pow(3), a.mul(&a).mul(&a));
    }

    #[test]
    fn char_poly_companion() {
        // companion matrix of x^3 - 1 over GF(3) has char poly x^3 - 1
        let c = m(3, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let f = c.char_poly();
        assert_eq!(f.coeffs(), &[2, 0, 0, 1]);
        assert!(c.eval_poly(&f).is_zero());
    }

    #[test]
    fn char_poly_cayley_hamilton_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for &p in &[2u32, 3, 5, 13] {
            for n in 1..7 {
                let rows: Vec<Vec<i64>> = (0..n)
                    .map(|_| (0..n).map(|_| rng.gen_range(0..p as i64)).collect())
                    .collect();
                let a = FieldMatrix::from_rows(p, &rows).unwrap();
                let f = a.char_poly();
                assert_eq!(f.degree(), Some(n));
                assert!(a.eval_poly(&f).is_zero());
                assert_eq!(f.coeffs()[n - 1], neg(a.trace(), p));
            }
        }
    }

    #[test]
    fn nilpotency() {
        let e = m(5, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(e.nilpotency_order(), Some(3));
        assert_eq!(FieldMatrix::identity(5, 2).nilpotency_order(), None);
        assert!(FieldMatrix::identity(5, 3).scale(2).is_scalar());
    }
}
