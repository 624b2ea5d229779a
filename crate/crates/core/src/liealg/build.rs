use super::{Family, Frame, LieAlgebra, Realization};
use crate::error::{Error, Result};
use crate::gfp::{check_modulus, is_prime, FieldMatrix};
use crate::rootdata::{CartanType, Kind};

fn elementary(p: u32, n: usize, i: usize, j: usize) -> FieldMatrix {
    let mut m = FieldMatrix::zero(p, n, n);
    m.set(i, j, 1);
    m
}

fn entry_label(i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("e{}{}", i + 1, j + 1)
    } else {
        format!("e{},{}", i + 1, j + 1)
    }
}

fn type_a_weight(n: usize, i: usize, j: usize) -> Vec<i64> {
    let mut w = vec![0i64; n];
    w[i] += 1;
    w[j] -= 1;
    w
}

impl LieAlgebra {
    /// One of the classical matrix algebras `gl_n`, `sl_n`, `pgl_n`,
    /// `sp_n` (n even) or `so_n`, with `n` the matrix size.
    ///
    /// Basis: torus elements first, then one root vector per root. For
    /// `pgl_n` the basis represents classes modulo scalar matrices.
    pub fn build(family: Family, n: usize, p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        check_modulus(p)?;
        let (labels, mats, weights, mod_scalars, cartan_type) = match family {
            Family::Gl | Family::Sl | Family::Pgl => type_a(family, n, p)?,
            Family::Sp | Family::So => orthogonal_symplectic(family, n, p)?,
        };
        let d = mats.len();
        let realization = Realization::new(p, n, mats, mod_scalars)?;
        let mut sc = vec![0u32; d * d * d];
        for i in 0..d {
            for j in 0..d {
                let m = realization.mats[i].commutator(&realization.mats[j]);
                let c = realization
                    .coords_of(&m)
                    .ok_or_else(|| Error::Unsupported(format!("{family}_{n} is not closed")))?;
                sc[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(&c);
            }
        }
        let mut alg = LieAlgebra::from_parts(p, labels, sc, Some(realization))?;
        alg.frame = Some(Frame {
            family,
            n,
            cartan_type,
            weights,
        });
        Ok(alg)
    }
}

type Parts = (Vec<String>, Vec<FieldMatrix>, Vec<Vec<i64>>, bool, CartanType);

fn type_a(family: Family, n: usize, p: u32) -> Result<Parts> {
    if n < 2 {
        return Err(Error::Unsupported(format!("{family}_{n}: need n ≥ 2")));
    }
    let cartan_type = CartanType::new(Kind::A, n - 1)?;
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    let mut weights = Vec::new();
    match family {
        Family::Gl => {
            for i in 0..n {
                labels.push(entry_label(i, i, n));
                mats.push(elementary(p, n, i, i));
                weights.push(vec![0; n]);
            }
        }
        Family::Sl => {
            for i in 0..n - 1 {
                labels.push(format!("h{}", i + 1));
                let mut m = elementary(p, n, i, i);
                m.set(i + 1, i + 1, p - 1);
                mats.push(m);
                weights.push(vec![0; n]);
            }
        }
        _ => {
            for i in 0..n - 1 {
                labels.push(entry_label(i, i, n));
                mats.push(elementary(p, n, i, i));
                weights.push(vec![0; n]);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                labels.push(entry_label(i, j, n));
                mats.push(elementary(p, n, i, j));
                weights.push(type_a_weight(n, i, j));
            }
        }
    }
    Ok((labels, mats, weights, family == Family::Pgl, cartan_type))
}

/// Weight of the standard basis vector `i` of the natural module, in `Z^m`.
fn natural_weight(n: usize, i: usize) -> Vec<i64> {
    let m = n / 2;
    let mut w = vec![0i64; m];
    if i < m {
        w[i] = 1;
    } else if i >= n - m {
        w[n - 1 - i] = -1;
    }
    w
}

fn orthogonal_symplectic(family: Family, n: usize, p: u32) -> Result<Parts> {
    if p == 2 {
        return Err(Error::Unsupported(format!("{family}_{n} in characteristic 2")));
    }
    let m = n / 2;
    let cartan_type = match family {
        Family::Sp => {
            if !n.is_multiple_of(2) || n < 4 {
                return Err(Error::Unsupported(format!("sp_{n}: need n even and ≥ 4")));
            }
            CartanType::new(Kind::C, m)?
        }
        _ => {
            if n < 5 {
                return Err(Error::Unsupported(format!("so_{n}: need n ≥ 5")));
            }
            if n % 2 == 1 {
                CartanType::new(Kind::B, m)?
            } else {
                CartanType::new(Kind::D, m)?
            }
        }
    };
    // Gram matrix of the form: antidiagonal, with signs (1..1, −1..−1) for
    // the symplectic form.
    let mut j = FieldMatrix::zero(p, n, n);
    for i in 0..n {
        let v = if family == Family::Sp && i >= m { p - 1 } else { 1 };
        j.set(i, n - 1 - i, v);
    }
    // X ↦ XᵀJ + JX as a linear map on flattened matrices.
    let nn = n * n;
    let mut system = FieldMatrix::zero(p, nn, nn);
    for a in 0..n {
        for b in 0..n {
            let e = elementary(p, n, a, b);
            let img = e.transpose().mul(&j).add(&j.mul(&e)).flatten();
            for (r, &v) in img.iter().enumerate() {
                system.set(r, a * n + b, v);
            }
        }
    }
    let ker = system.kernel();
    let expected = if family == Family::Sp {
        m * (2 * m + 1)
    } else {
        n * (n - 1) / 2
    };
    if ker.dim() != expected {
        return Err(Error::Unsupported(format!("{family}_{n} has unexpected dimension")));
    }
    let mut items: Vec<(bool, usize, String, FieldMatrix, Vec<i64>)> = Vec::new();
    for v in ker.basis() {
        let lead = v.iter().position(|&x| x != 0).expect("nonzero");
        let (a, b) = (lead / n, lead % n);
        let w: Vec<i64> = natural_weight(n, a)
            .iter()
            .zip(natural_weight(n, b))
            .map(|(x, y)| x - y)
            .collect();
        debug_assert!(v.iter().enumerate().filter(|(_, &x)| x != 0).all(|(k, _)| {
            let (c, d) = (k / n, k % n);
            natural_weight(n, c)
                .iter()
                .zip(natural_weight(n, d))
                .map(|(x, y)| x - y)
                .eq(w.iter().copied())
        }));
        let is_torus = w.iter().all(|&x| x == 0);
        let mat = FieldMatrix::from_data(p, n, n, v.clone());
        items.push((!is_torus, lead, entry_label(a, b, n), mat, w));
    }
    items.sort_by_key(|it| (it.0, it.1));
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    let mut weights = Vec::new();
    let mut h = 0;
    for (non_torus, _, label, mat, w) in items {
        if non_torus {
            labels.push(label);
        } else {
            h += 1;
            labels.push(format!("h{h}"));
        }
        mats.push(mat);
        weights.push(w);
    }
    Ok((labels, mats, weights, false, cartan_type))
}
