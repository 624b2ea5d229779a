use std::fmt;

use serde::{Deserialize, Serialize};

use super::{add, check_modulus, inv, mul, neg, reduce, sub, FieldMatrix};
use crate::error::{Error, Result};

/// Univariate polynomial over GF(p), lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpPoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FpPoly {
    pub fn new(p: u32, coeffs: &[i64]) -> Result<Self> {
        check_modulus(p)?;
        Ok(Self::from_residues(p, coeffs.iter().map(|&c| reduce(c, p)).collect()))
    }

    pub(crate) fn from_residues(p: u32, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        Self { p, coeffs: vec![] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_residues(p, vec![1])
    }

    /// The monomial `x`.
    pub fn x(p: u32) -> Self {
        Self::from_residues(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv(self.leading(), self.p))
    }

    pub fn scale(&self, c: u32) -> Self {
        Self::from_residues(self.p, self.coeffs.iter().map(|&a| mul(a, c, self.p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                add(
                    *self.coeffs.get(i).unwrap_or(&0),
                    *other.coeffs.get(i).unwrap_or(&0),
                    self.p,
                )
            })
            .collect();
        Self::from_residues(self.p, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                sub(
                    *self.coeffs.get(i).unwrap_or(&0),
                    *other.coeffs.get(i).unwrap_or(&0),
                    self.p,
                )
            })
            .collect();
        Self::from_residues(self.p, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut c = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = add(c[i + j], mul(a, b, self.p), self.p);
            }
        }
        Self::from_residues(self.p, c)
    }

    /// Euclidean division, `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let li = inv(d.leading(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u32; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul(r[k + dd], li, p);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[k + j] = sub(r[k + j], mul(c, b, p), p);
            }
        }
        r.truncate(dd);
        (Self::from_residues(p, q), Self::from_residues(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul(a, (i as u32) % p, p))
            .collect();
        Self::from_residues(p, c)
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add(mul(acc, x, self.p), c, self.p))
    }

    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        r
    }

    /// Roots in GF(p), by exhaustive evaluation.
    pub fn roots(&self) -> Vec<u32> {
        (0..self.p).filter(|&x| self.eval(x) == 0).collect()
    }

    /// `g` with `g(x)^p = self` when every exponent is a multiple of `p`.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        let c = self.coeffs.iter().step_by(p).copied().collect();
        Self::from_residues(self.p, c)
    }

    /// Square-free decomposition of a monic polynomial: pairs `(g, m)` with
    /// `self = Π g^m`, each `g` square-free and pairwise coprime.
    fn square_free(&self) -> Vec<(Self, usize)> {
        let p = self.p as usize;
        let mut out = Vec::new();
        let d = self.derivative();
        if d.is_zero() {
            if self.degree() == Some(0) {
                return out;
            }
            for (g, m) in self.pth_root().square_free() {
                out.push((g, m * p));
            }
            return out;
        }
        let mut c = self.gcd(&d);
        let mut w = self.div_rem(&c).0;
        let mut i = 1;
        while w.degree() != Some(0) {
            let y = w.gcd(&c);
            let fac = w.div_rem(&y).0;
            if fac.degree().unwrap_or(0) > 0 {
                out.push((fac.monic(), i));
            }
            w = y;
            c = c.div_rem(&w).0;
            i += 1;
        }
        if c.degree().unwrap_or(0) > 0 {
            for (g, m) in c.pth_root().square_free() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Berlekamp subalgebra basis of a monic square-free polynomial: kernel of
    /// `Q − I` where row `i` of `Q` is `x^{ip} mod f`.
    fn berlekamp_kernel(&self) -> Vec<Self> {
        let p = self.p;
        let n = self.degree().unwrap();
        let xp = Self::x(p).pow_mod(p as u64, self);
        let mut rows = Vec::with_capacity(n);
        let mut cur = Self::one(p);
        for _ in 0..n {
            let mut r = cur.coeffs.clone();
            r.resize(n, 0);
            rows.push(r);
            cur = cur.mul(&xp).rem(self);
        }
        let mut q = FieldMatrix::from_residue_rows(p, n, &rows);
        for i in 0..n {
            let v = sub(q.get(i, i), 1, p);
            q.set(i, i, v);
        }
        // v(x)^p = v(x) mod f  <=>  v · (Q − I) = 0 as a row vector
        q.transpose()
            .kernel()
            .basis()
            .iter()
            .map(|v| Self::from_residues(p, v.clone()))
            .collect()
    }

    fn split_square_free(&self) -> Vec<Self> {
        let kernel = self.berlekamp_kernel();
        let k = kernel.len();
        let mut factors = vec![self.clone()];
        if k <= 1 {
            return factors;
        }
        for v in kernel.iter().filter(|v| v.degree().unwrap_or(0) > 0) {
            let mut next = Vec::new();
            for f in factors {
                if f.degree() == Some(1) {
                    next.push(f);
                    continue;
                }
                let mut rest = f.clone();
                for s in 0..self.p {
                    if rest.degree() == Some(0) {
                        break;
                    }
                    let shifted = v.sub(&Self::from_residues(self.p, vec![s]));
                    let g = rest.gcd(&shifted);
                    if g.degree().unwrap_or(0) > 0 && g.degree() < rest.degree() {
                        next.push(g.clone());
                        rest = rest.div_rem(&g).0;
                    } else if g.degree() == rest.degree() {
                        break;
                    }
                }
                if rest.degree().unwrap_or(0) > 0 {
                    next.push(rest.monic());
                }
            }
            factors = next;
            if factors.len() == k {
                break;
            }
        }
        factors
    }

    /// Complete factorization into monic irreducibles with multiplicities.
    /// The leading coefficient is dropped; factors are sorted by degree, then
    /// coefficients.
    pub fn factor(&self) -> Result<Vec<(Self, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        let mut out: Vec<(Self, usize)> = Vec::new();
        for (g, m) in f.square_free() {
            for h in g.split_square_free() {
                match out.iter_mut().find(|(q, _)| *q == h) {
                    Some(e) => e.1 += m,
                    None => out.push((h, m)),
                }
            }
        }
        out.sort_by(|a, b| {
            a.0.coeffs
                .len()
                .cmp(&b.0.coeffs.len())
                .then_with(|| a.0.coeffs.cmp(&b.0.coeffs))
        });
        Ok(out)
    }

    /// Irreducibility by Berlekamp: square-free with a one-dimensional
    /// fixed algebra.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        let f = self.monic();
        if d == 1 {
            return true;
        }
        f.gcd(&f.derivative()).degree() == Some(0) && f.berlekamp_kernel().len() == 1
    }

    /// Negated constant term helper used when building linear factors.
    pub fn linear(p: u32, root: u32) -> Self {
        Self::from_residues(p, vec![neg(root % p, p), 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u32, c: &[i64]) -> FpPoly {
        FpPoly::new(p, c).unwrap()
    }

    fn product(fs: &[(FpPoly, usize)], p: u32) -> FpPoly {
        fs.iter().fold(FpPoly::one(p), |acc, (f, m)| {
            (0..*m).fold(acc, |a, _| a.mul(f))
        })
    }

    #[test]
    fn x2_plus_1_mod_5_splits() {
        // roots of x^2+1 over GF(5) found by exhaustive search: 2 and 3
        let f = poly(5, &[1, 0, 1]);
        assert_eq!(f.roots(), vec![2, 3]);
        let fs = f.factor().unwrap();
        assert_eq!(
            fs,
            vec![(FpPoly::linear(5, 3), 1), (FpPoly::linear(5, 2), 1)]
        );
    }

    #[test]
    fn x2_plus_1_mod_3_irreducible() {
        let f = poly(3, &[1, 0, 1]);
        assert!(f.roots().is_empty());
        assert_eq!(f.factor().unwrap(), vec![(f.clone(), 1)]);
        assert!(f.is_irreducible());
    }

    #[test]
    fn fermat_polynomial_is_all_linear_factors() {
        for p in [2u32, 3, 5, 7, 11, 13] {
            let mut c = vec![0i64; p as usize + 1];
            c[1] = -1;
            c[p as usize] = 1;
            let fs = poly(p, &c).factor().unwrap();
            assert_eq!(fs.len(), p as usize);
            assert!(fs.iter().all(|(f, m)| f.degree() == Some(1) && *m == 1));
        }
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(FpPoly::zero(5).factor(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        // (x+1)^3 (x^2+1)^2 over GF(3): x^3+1 = (x+1)^3 is inseparable
        let p = 3;
        let a = poly(p, &[1, 1]);
        let b = poly(p, &[1, 0, 1]);
        let f = a.mul(&a).mul(&a).mul(&b).mul(&b).scale(2);
        let fs = f.factor().unwrap();
        assert_eq!(fs, vec![(a, 3), (b, 2)]);
    }

    #[test]
    fn gcd_and_division() {
        let p = 7;
        let a = poly(p, &[1, 2, 1]); // (x+1)^2
        let b = poly(p, &[1, 1]);
        assert_eq!(a.gcd(&b), b);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, b);
        assert!(r.is_zero());
        assert_eq!(a.derivative(), poly(p, &[2, 2]));
    }

    proptest::proptest! {
        #[test]
        fn factor_product_reproduces_input(
            pi in 0usize..4,
            coeffs in proptest::collection::vec(0i64..13, 1..9),
        ) {
            let p = [2u32, 3, 5, 13][pi];
            let f = poly(p, &coeffs);
            proptest::prop_assume!(!f.is_zero());
            let fs = f.factor().unwrap();
            proptest::prop_assert_eq!(product(&fs, p), f.monic());
            for (g, _) in &fs {
                proptest::prop_assert!(g.is_monic());
                proptest::prop_assert!(g.degree() == Some(1) || g.roots().is_empty());
                proptest::prop_assert!(g.is_irreducible());
            }
        }
    }
}
