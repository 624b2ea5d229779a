//! Composition series of matrix modules over GF(p) by the Holt–Rees meataxe.
//!
//! A module is a list of `d × d` generator matrices acting on column vectors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gfp::{FieldMatrix, Subspace};

/// Attempts per irreducibility decision before giving up.
const MAX_TRIES: usize = 400;

/// Submodule generated by `v`.
pub fn spin(gens: &[FieldMatrix], v: &[u32], p: u32) -> Subspace {
    let d = v.len();
    let mut s = Subspace::span(p, d, vec![v.to_vec()]);
    let mut queue = vec![v.to_vec()];
    while let Some(w) = queue.pop() {
        for g in gens {
            let gw = g.mul_vec(&w);
            if !s.contains(&gw) {
                s = s.sum(&Subspace::span(p, d, vec![gw.clone()])).expect("same ambient");
                queue.push(gw);
            }
        }
        if s.is_full() {
            break;
        }
    }
    s
}

fn random_algebra_element(gens: &[FieldMatrix], p: u32, d: usize, rng: &mut ChaCha8Rng) -> FieldMatrix {
    let mut a = FieldMatrix::identity(p, d).scale(rng.gen_range(0..p));
    if gens.is_empty() {
        return a;
    }
    for g in gens {
        a.add_scaled(rng.gen_range(0..p), g);
    }
    for len in 2..=3 {
        let mut w = FieldMatrix::identity(p, d);
        for _ in 0..len {
            w = w.mul(&gens[rng.gen_range(0..gens.len())]);
        }
        a.add_scaled(rng.gen_range(0..p), &w);
    }
    a
}

fn random_nonzero_in(s: &Subspace, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let p = s.modulus();
    loop {
        let c: Vec<u32> = (0..s.dim()).map(|_| rng.gen_range(0..p)).collect();
        if c.iter().any(|&x| x != 0) {
            return s.combine(&c);
        }
    }
}

/// A proper nonzero submodule, or `None` if the module is irreducible.
pub fn proper_submodule(gens: &[FieldMatrix], p: u32, d: usize, rng: &mut ChaCha8Rng) -> Result<Option<Subspace>> {
    if d <= 1 {
        return Ok(None);
    }
    let transposed: Vec<FieldMatrix> = gens.iter().map(FieldMatrix::transpose).collect();
    for _ in 0..MAX_TRIES {
        let a = random_algebra_element(gens, p, d, rng);
        for (f, _) in a.char_poly().factor()? {
            let deg = f.degree().expect("nonzero factor");
            let n = a.eval_poly(&f);
            let ker = n.kernel();
            if ker.is_zero() {
                continue;
            }
            let v = random_nonzero_in(&ker, rng);
            let s = spin(gens, &v, p);
            if !s.is_full() {
                return Ok(Some(s));
            }
            if ker.dim() != deg {
                continue;
            }
            let kt = n.transpose().kernel();
            let w = random_nonzero_in(&kt, rng);
            let st = spin(&transposed, &w, p);
            if !st.is_full() {
                // The annihilator of a proper submodule of the dual module.
                return Ok(Some(st.to_matrix().kernel()));
            }
            return Ok(None);
        }
    }
    Err(Error::Undetermined {
        what: "meataxe irreducibility test".into(),
        needed: MAX_TRIES as u128 + 1,
        budget: MAX_TRIES as u128,
    })
}

/// Basis adapted to a composition series: the first `sizes[0]` columns of
/// `basis` span an irreducible submodule, the next `sizes[1]` complete it to
/// the second term, and so on.
#[derive(Clone, Debug)]
pub struct CompositionSeries {
    pub sizes: Vec<usize>,
    pub basis: FieldMatrix,
    pub basis_inv: FieldMatrix,
}

impl CompositionSeries {
    /// The terms `0 = V_0 ⊂ V_1 ⊂ … ⊂ V_k = V`.
    pub fn terms(&self) -> Vec<Subspace> {
        let p = self.basis.modulus();
        let d = self.basis.rows();
        let cols = self.basis.transpose().row_vecs();
        let mut out = vec![Subspace::zero(p, d)];
        let mut upto = 0;
        for s in &self.sizes {
            upto += s;
            out.push(Subspace::span(p, d, cols[..upto].to_vec()));
        }
        out
    }

    /// Entries of the diagonal blocks of `basis⁻¹ · m · basis`, flattened.
    pub fn diagonal_blocks(&self, m: &FieldMatrix) -> Vec<u32> {
        let c = self.basis_inv.mul(m).mul(&self.basis);
        let mut out = Vec::new();
        let mut start = 0;
        for &s in &self.sizes {
            for i in start..start + s {
                for j in start..start + s {
                    out.push(c.get(i, j));
                }
            }
            start += s;
        }
        out
    }
}

pub fn composition_series(gens: &[FieldMatrix], p: u32, d: usize, seed: u64) -> Result<CompositionSeries> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (sizes, basis) = refine(gens, p, d, &mut rng)?;
    let basis_inv = basis.inverse().expect("adapted basis is invertible");
    Ok(CompositionSeries {
        sizes,
        basis,
        basis_inv,
    })
}

fn refine(gens: &[FieldMatrix], p: u32, d: usize, rng: &mut ChaCha8Rng) -> Result<(Vec<usize>, FieldMatrix)> {
    if d == 0 {
        return Ok((vec![], FieldMatrix::identity(p, 0)));
    }
    let Some(w) = proper_submodule(gens, p, d, rng)? else {
        return Ok((vec![d], FieldMatrix::identity(p, d)));
    };
    let k = w.dim();
    let pivots = w.pivots();
    let mut cols: Vec<Vec<u32>> = w.basis().to_vec();
    for i in (0..d).filter(|i| !pivots.contains(i)) {
        let mut e = vec![0u32; d];
        e[i] = 1;
        cols.push(e);
    }
    let pm = FieldMatrix::from_residue_rows(p, d, &cols).transpose();
    let pinv = pm.inverse().expect("basis plus complement is invertible");
    let conj: Vec<FieldMatrix> = gens.iter().map(|g| pinv.mul(g).mul(&pm)).collect();
    let sub: Vec<FieldMatrix> = conj.iter().map(|c| c.block(0, 0, k, k)).collect();
    let quo: Vec<FieldMatrix> = conj.iter().map(|c| c.block(k, k, d - k, d - k)).collect();
    let (sa, qa) = refine(&sub, p, k, rng)?;
    let (sb, qb) = refine(&quo, p, d - k, rng)?;
    let mut diag = FieldMatrix::zero(p, d, d);
    for i in 0..k {
        for j in 0..k {
            diag.set(i, j, qa.get(i, j));
        }
    }
    for i in 0..d - k {
        for j in 0..d - k {
            diag.set(k + i, k + j, qb.get(i, j));
        }
    }
    let mut sizes = sa;
    sizes.extend(sb);
    Ok((sizes, pm.mul(&diag)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[[i64; 3]]) -> FieldMatrix {
        FieldMatrix::from_rows(p, rows).unwrap()
    }

    #[test]
    fn upper_triangular_action_has_three_factors() {
        let e12 = m(5, &[[0, 1, 0], [0, 0, 0], [0, 0, 0]]);
        let e23 = m(5, &[[0, 0, 0], [0, 0, 1], [0, 0, 0]]);
        let cs = composition_series(&[e12.clone(), e23.clone()], 5, 3, 1).unwrap();
        assert_eq!(cs.sizes, vec![1, 1, 1]);
        for g in [&e12, &e23] {
            assert!(cs.diagonal_blocks(g).iter().all(|&x| x == 0));
        }
        let terms = cs.terms();
        assert_eq!(terms[1], Subspace::coordinate(5, 3, [0]));
    }

    #[test]
    fn natural_sl3_is_irreducible() {
        let e12 = m(5, &[[0, 1, 0], [0, 0, 0], [0, 0, 0]]);
        let e23 = m(5, &[[0, 0, 0], [0, 0, 1], [0, 0, 0]]);
        let e31 = m(5, &[[0, 0, 0], [0, 0, 0], [1, 0, 0]]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(proper_submodule(&[e12, e23, e31], 5, 3, &mut rng).unwrap().is_none());
    }

    #[test]
    fn irreducible_over_gf3_but_not_split() {
        // x² + 1 is irreducible mod 3: the rotation acts irreducibly.
        let r = FieldMatrix::from_rows(3, &[[0, -1], [1, 0]]).unwrap();
        let cs = composition_series(&[r], 3, 2, 0).unwrap();
        assert_eq!(cs.sizes, vec![2]);
    }

    #[test]
    fn trivial_module_splits_into_lines() {
        let z = FieldMatrix::zero(7, 4, 4);
        let cs = composition_series(&[z], 7, 4, 0).unwrap();
        assert_eq!(cs.sizes, vec![1, 1, 1, 1]);
    }

    #[test]
    fn series_terms_are_submodules() {
        let a = m(3, &[[1, 1, 0], [0, 1, 0], [0, 0, 2]]);
        let b = m(3, &[[0, 0, 1], [0, 0, 0], [0, 0, 0]]);
        let cs = composition_series(&[a.clone(), b.clone()], 3, 3, 9).unwrap();
        for t in cs.terms() {
            for g in [&a, &b] {
                assert!(t.basis().iter().all(|v| t.contains(&g.mul_vec(v))));
            }
        }
    }
}
