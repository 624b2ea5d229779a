use serde::{Deserialize, Serialize};

use super::{axpy, neg, FieldMatrix};
use crate::error::{Error, Result};

/// A subspace of GF(p)^n, held as the rows of its reduced row-echelon basis.
///
/// The RREF basis is unique, so structural equality is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    p: u32,
    ambient: usize,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        Self {
            p,
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Self { p, ambient, basis }
    }

    /// Span of arbitrary residue vectors of length `ambient`.
    pub fn span<I>(p: u32, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let rows: Vec<Vec<u32>> = vectors.into_iter().collect();
        if rows.is_empty() {
            return Self::zero(p, ambient);
        }
        let m = FieldMatrix::from_residue_rows(p, ambient, &rows);
        let (r, rank) = m.rref();
        Self {
            p,
            ambient,
            basis: (0..rank).map(|i| r.row(i).to_vec()).collect(),
        }
    }

    /// Span of integer vectors, reduced mod `p`.
    pub fn from_i64(p: u32, ambient: usize, vectors: &[Vec<i64>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
            rows.push(v.iter().map(|&x| super::reduce(x, p)).collect());
        }
        Ok(Self::span(p, ambient, rows))
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(p: u32, ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        Self::span(
            p,
            ambient,
            indices.into_iter().map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            }),
        )
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.iter().position(|&v| v != 0).expect("RREF row is nonzero"))
            .collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is not in the
    /// subspace. For an RREF basis the coordinates are the pivot entries.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.dim());
        for (row, piv) in self.basis.iter().zip(self.pivots()) {
            let c = rest[piv];
            coords.push(c);
            axpy(&mut rest, neg(c, self.p), row, self.p);
        }
        rest.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Linear combination of the basis with the given coordinates.
    pub fn combine(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.dim());
        let mut v = vec![0; self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            axpy(&mut v, *c, row, self.p);
        }
        v
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::span(
            self.p,
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.p, self.ambient));
        }
        // v = sum c_i a_i lies in `other` iff A_other v = 0.
        let ann = other.annihilator();
        if ann.rows() == 0 {
            return Ok(self.clone());
        }
        let basis_t = FieldMatrix::from_residue_rows(self.p, self.ambient, &self.basis).transpose();
        let system = ann.mul(&basis_t);
        let ker = system.kernel();
        Ok(Self::span(
            self.p,
            self.ambient,
            ker.basis.iter().map(|c| self.combine(c)),
        ))
    }

    /// Matrix `A` whose null space is exactly this subspace.
    pub fn annihilator(&self) -> FieldMatrix {
        if self.is_zero() {
            return FieldMatrix::identity(self.p, self.ambient);
        }
        let b = FieldMatrix::from_residue_rows(self.p, self.ambient, &self.basis);
        let k = b.kernel();
        FieldMatrix::from_residue_rows(self.p, self.ambient, &k.basis)
    }

    /// The basis as the rows of a matrix.
    pub fn to_matrix(&self) -> FieldMatrix {
        FieldMatrix::from_residue_rows(self.p, self.ambient, &self.basis)
    }

    /// Number of elements, `p^dim`, saturating.
    pub fn cardinality(&self) -> u128 {
        (self.p as u128).checked_pow(self.dim() as u32).unwrap_or(u128::MAX)
    }

    /// Iterates over every element of the subspace (there are `p^dim`).
    pub fn elements(&self) -> Elements<'_> {
        Elements {
            space: self,
            coords: vec![0; self.dim()],
            done: false,
        }
    }

    /// Image under a linear map given as a function on vectors.
    pub fn map<F: Fn(&[u32]) -> Vec<u32>>(&self, target_dim: usize, f: F) -> Self {
        Self::span(self.p, target_dim, self.basis.iter().map(|v| f(v)))
    }

    pub fn as_i64(&self) -> Vec<Vec<i64>> {
        self.basis
            .iter()
            .map(|r| r.iter().map(|&v| v as i64).collect())
            .collect()
    }
}

/// Odometer over all coordinate vectors of a subspace.
pub struct Elements<'a> {
    space: &'a Subspace,
    coords: Vec<u32>,
    done: bool,
}

impl Iterator for Elements<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.space.combine(&self.coords);
        let p = self.space.p;
        let mut i = 0;
        loop {
            if i == self.coords.len() {
                self.done = true;
                break;
            }
            self.coords[i] += 1;
            if self.coords[i] < p {
                break;
            }
            self.coords[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vec<u32> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subspace::span(5, 3, vec![e(3, 0)]);
        let b = Subspace::span(5, 3, vec![e(3, 1)]);
        assert_eq!(a.sum(&b).unwrap(), Subspace::coordinate(5, 3, [0, 1]));

        let x = Subspace::coordinate(5, 3, [0, 1]);
        let y = Subspace::coordinate(5, 3, [1, 2]);
        assert_eq!(x.intersection(&y).unwrap(), Subspace::coordinate(5, 3, [1]));
    }

    #[test]
    fn equality_ignores_basis_order() {
        let v1 = vec![1, 2, 0];
        let v2 = vec![0, 1, 4];
        let a = Subspace::span(5, 3, vec![v1.clone(), v2.clone()]);
        let b = Subspace::span(5, 3, vec![v2, v1]);
        assert_eq!(a, b);
    }

    #[test]
    fn mismatch_is_error() {
        let a = Subspace::zero(5, 3);
        let b = Subspace::zero(5, 4);
        assert!(a.sum(&b).is_err());
        assert!(a.intersection(&Subspace::zero(7, 3)).is_err());
    }

    #[test]
    fn elements_enumerates_everything() {
        let s = Subspace::coordinate(3, 4, [0, 2]);
        let all: Vec<_> = s.elements().collect();
        assert_eq!(all.len(), 9);
        assert!(all.iter().all(|v| s.contains(v)));
        assert_eq!(Subspace::zero(3, 2).elements().count(), 1);
    }

    #[test]
    fn coordinates_round_trip() {
        let s = Subspace::span(7, 4, vec![vec![1, 2, 3, 4], vec![0, 1, 5, 6]]);
        let v = s.combine(&[3, 5]);
        assert_eq!(s.coordinates(&v).unwrap(), vec![3, 5]);
        assert!(s.coordinates(&[0, 0, 0, 1]).is_none());
        let ann = s.annihilator();
        assert!(ann.mul_vec(&v).iter().all(|&x| x == 0));
    }
}
