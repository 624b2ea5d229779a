//! Exhaustive search for the optimal cocharacter of a torus-stable p-nil
//! subalgebra, and the parabolic it defines.
//!
//! Cocharacters of the standard torus are integer vectors: sum-zero vectors
//! in `Z^n` for `gl_n`, `sl_n`, `pgl_n`, and vectors in `Z^m` for the
//! symplectic and orthogonal algebras (acting by `diag(λ, [0,] −rev λ)`).
//! The norm is the standard Euclidean one, which is Weyl-invariant.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::Subspace;
use crate::liealg::{Family, Frame, LieAlgebra};
use crate::morozov::{Check, CheckStatus, VerificationReport};
use crate::rootdata::{dot, Kind};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cocharacter {
    pub coords: Vec<i64>,
    pub norm_sq: i64,
}

impl Cocharacter {
    pub fn new(coords: Vec<i64>) -> Self {
        let norm_sq = dot(&coords, &coords);
        Self { coords, norm_sq }
    }

    /// The primitive vector on the same ray.
    pub fn indivisible(&self) -> Self {
        let g = self.coords.iter().fold(0i64, |a, &b| gcd(a, b.abs()));
        if g <= 1 {
            return self.clone();
        }
        Self::new(self.coords.iter().map(|c| c / g).collect())
    }

    pub fn is_indivisible(&self) -> bool {
        self.coords.iter().fold(0i64, |a, &b| gcd(a, b.abs())) == 1
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct KempfConfig {
    /// Norm bound `B`: the search covers `0 < ‖λ‖² ≤ B²`. Defaults to `2h`.
    pub bound: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalityCertificate {
    pub lambda: Cocharacter,
    pub alpha: i64,
    /// `α²/‖λ‖²` as a reduced fraction.
    pub ratio_num: i64,
    pub ratio_den: i64,
    pub search_bound: i64,
    pub enumerated_count: u64,
    /// Other indivisible maximizers, if the optimum is not unique.
    pub ties: Vec<Vec<i64>>,
}

impl OptimalityCertificate {
    pub fn ratio_sq(&self) -> Ratio<i64> {
        Ratio::new(self.ratio_num, self.ratio_den)
    }
}

fn frame(g: &LieAlgebra) -> Result<&Frame> {
    g.frame()
        .ok_or_else(|| Error::Unsupported("cocharacters need a built classical algebra".into()))
}

fn lattice_dim(f: &Frame) -> usize {
    f.weights.first().map_or(0, Vec::len)
}

fn sum_zero(f: &Frame) -> bool {
    f.cartan_type.kind == Kind::A
}

/// `⟨λ, weight⟩` for every basis vector.
pub fn weights(g: &LieAlgebra, lam: &Cocharacter) -> Result<Vec<i64>> {
    let f = frame(g)?;
    if lam.coords.len() != lattice_dim(f) {
        return Err(Error::DimensionMismatch {
            expected: lattice_dim(f),
            found: lam.coords.len(),
        });
    }
    Ok(f.weights.iter().map(|w| dot(w, &lam.coords)).collect())
}

/// Indices of basis vectors occurring in `u`, after checking that `u` is
/// spanned by its torus part and root vectors.
pub fn root_support(g: &LieAlgebra, u: &Subspace) -> Result<Vec<usize>> {
    let f = frame(g)?;
    let torus = f.torus_indices();
    let mut support: Vec<usize> = (0..g.dim())
        .filter(|&i| u.basis().iter().any(|v| v[i] != 0))
        .collect();
    support.sort_unstable();
    let roots: Vec<usize> = support.iter().copied().filter(|i| !torus.contains(i)).collect();
    let root_part = Subspace::coordinate(g.p(), g.dim(), roots.iter().copied());
    let torus_part = u.intersection(&f.torus(g.p()))?;
    if root_part.sum(&torus_part)? != *u {
        return Err(Error::Precondition(
            "subspace is not spanned by root vectors of the standard torus".into(),
        ));
    }
    Ok(support)
}

/// Minimum weight over the support of `u`, if all weights there are
/// positive; `None` when λ is inadmissible.
pub fn alpha(g: &LieAlgebra, lam: &Cocharacter, u: &Subspace) -> Result<Option<i64>> {
    let w = weights(g, lam)?;
    let support = root_support(g, u)?;
    Ok(alpha_from(&w, &support))
}

fn alpha_from(w: &[i64], support: &[usize]) -> Option<i64> {
    let m = support.iter().map(|&i| w[i]).min()?;
    (m > 0).then_some(m)
}

/// Default norm bound `2h`.
pub fn default_bound(g: &LieAlgebra) -> Result<i64> {
    Ok(2 * frame(g)?.root_datum().coxeter_number())
}

/// Enumerates all lattice vectors with `0 < ‖λ‖² ≤ bound²`.
fn lattice_points(dim: usize, sum_zero: bool, bound: i64, mut f: impl FnMut(&[i64])) {
    let max_sq = bound * bound;
    let mut v = vec![0i64; dim];
    fn rec(v: &mut Vec<i64>, i: usize, left: i64, sum_zero: bool, f: &mut dyn FnMut(&[i64])) {
        let dim = v.len();
        if sum_zero && i == dim - 1 {
            let last = -v[..i].iter().sum::<i64>();
            if last * last <= left {
                v[i] = last;
                if v.iter().any(|&x| x != 0) {
                    f(v);
                }
            }
            return;
        }
        if i == dim {
            if v.iter().any(|&x| x != 0) {
                f(v);
            }
            return;
        }
        let r = (left as f64).sqrt() as i64 + 1;
        for c in -r..=r {
            if c * c <= left {
                v[i] = c;
                rec(v, i + 1, left - c * c, sum_zero, f);
            }
        }
        v[i] = 0;
    }
    if dim == 0 {
        return;
    }
    rec(&mut v, 0, max_sq, sum_zero, &mut f);
}

/// Maximizes `α(λ)²/‖λ‖²` over indivisible λ in the search region.
pub fn optimize(g: &LieAlgebra, u: &Subspace, cfg: &KempfConfig) -> Result<OptimalityCertificate> {
    let f = frame(g)?;
    if u.is_zero() {
        return Err(Error::Precondition("optimization needs a nonzero subspace".into()));
    }
    let support = root_support(g, u)?;
    let bound = match cfg.bound {
        Some(b) if b > 0 => b,
        Some(b) => return Err(Error::InvalidInput(format!("bound must be positive, got {b}"))),
        None => default_bound(g)?,
    };
    let weights = f.weights.clone();
    let mut count = 0u64;
    let mut best: Option<(i64, Vec<i64>, i64)> = None;
    let mut ties: Vec<Vec<i64>> = Vec::new();
    lattice_points(lattice_dim(f), sum_zero(f), bound, |lam| {
        count += 1;
        if lam.iter().fold(0i64, |a, &b| gcd(a, b.abs())) != 1 {
            return;
        }
        let w: Vec<i64> = support.iter().map(|&i| dot(&weights[i], lam)).collect();
        let Some(a) = w.iter().copied().min().filter(|&m| m > 0) else {
            return;
        };
        let n = dot(lam, lam);
        match &best {
            None => best = Some((a, lam.to_vec(), n)),
            Some((ba, bl, bn)) => {
                let lhs = (a as i128) * (a as i128) * (*bn as i128);
                let rhs = (*ba as i128) * (*ba as i128) * (n as i128);
                if lhs > rhs {
                    best = Some((a, lam.to_vec(), n));
                    ties.clear();
                } else if lhs == rhs {
                    if lam > bl.as_slice() {
                        ties.push(bl.clone());
                        best = Some((a, lam.to_vec(), n));
                    } else {
                        ties.push(lam.to_vec());
                    }
                }
            }
        }
    });
    let (a, lam, n) = best.ok_or_else(|| {
        Error::Precondition(format!("no admissible cocharacter with norm at most {bound}"))
    })?;
    ties.sort();
    let r = Ratio::new(a * a, n);
    Ok(OptimalityCertificate {
        lambda: Cocharacter::new(lam),
        alpha: a,
        ratio_num: *r.numer(),
        ratio_den: *r.denom(),
        search_bound: bound,
        enumerated_count: count,
        ties,
    })
}

/// `(p_g(λ), u_g(λ), c_g(λ))`: the non-negative, positive and zero weight
/// parts.
pub fn parabolic_from_cochar(g: &LieAlgebra, lam: &Cocharacter) -> (Subspace, Subspace, Subspace) {
    let w = weights(g, lam).expect("built family and matching lattice");
    let idx = |pred: &dyn Fn(i64) -> bool| {
        Subspace::coordinate(g.p(), g.dim(), (0..g.dim()).filter(|&i| pred(w[i])))
    };
    (idx(&|x| x >= 0), idx(&|x| x > 0), idx(&|x| x == 0))
}

pub const CHECK_U_IN_UG: &str = "u_subset_u_g";
pub const CHECK_N_EQ_PG: &str = "normalizer_equals_p_g";
pub const CHECK_N_IN_PG: &str = "normalizer_subset_p_g";
pub const CHECK_U_EQ_UG: &str = "u_equals_u_g";

pub fn verify_obstruction(g: &LieAlgebra, u: &Subspace, cert: &OptimalityCertificate) -> VerificationReport {
    let (pg, ug, _) = parabolic_from_cochar(g, &cert.lambda);
    let n = g.normalizer(u);
    let mk = |name: &str, b: bool| Check {
        name: name.into(),
        status: CheckStatus::from_bool(b),
        detail: None,
    };
    VerificationReport {
        checks: vec![
            mk(CHECK_U_IN_UG, ug.contains_subspace(u)),
            mk(CHECK_N_EQ_PG, n == pg),
            mk(CHECK_N_IN_PG, pg.contains_subspace(&n)),
            mk(CHECK_U_EQ_UG, *u == ug),
        ],
    }
}

/// Embedding of a cocharacter as a diagonal matrix exponent vector of size
/// `n`, mainly for display.
pub fn diagonal_exponents(g: &LieAlgebra, lam: &Cocharacter) -> Result<Vec<i64>> {
    let f = frame(g)?;
    Ok(match f.family {
        Family::Gl | Family::Sl | Family::Pgl => lam.coords.clone(),
        Family::Sp | Family::So => {
            let mut d = lam.coords.clone();
            if f.n % 2 == 1 {
                d.push(0);
            }
            d.extend(lam.coords.iter().rev().map(|x| -x));
            d
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(n: usize, p: u32) -> LieAlgebra {
        LieAlgebra::build(Family::Sl, n, p).unwrap()
    }

    fn span_named(g: &LieAlgebra, names: &[&str]) -> Subspace {
        g.span(names.iter().map(|n| g.named(n).unwrap()))
    }

    #[test]
    fn weight_examples() {
        let g = sl(3, 5);
        let lam = Cocharacter::new(vec![1, 0, -1]);
        let w = weights(&g, &lam).unwrap();
        assert_eq!(w[g.labels().iter().position(|l| l == "e12").unwrap()], 1);
        assert_eq!(w[g.labels().iter().position(|l| l == "e13").unwrap()], 2);
        let zero = weights(&g, &Cocharacter::new(vec![0, 0, 0])).unwrap();
        assert!(zero.iter().all(|&x| x == 0));
    }

    #[test]
    fn alpha_examples() {
        let g = sl(3, 5);
        let lam = Cocharacter::new(vec![1, 0, -1]);
        let n = span_named(&g, &["e12", "e13", "e23"]);
        assert_eq!(alpha(&g, &lam, &n).unwrap(), Some(1));
        assert_eq!(alpha(&g, &lam, &span_named(&g, &["e13"])).unwrap(), Some(2));
        assert_eq!(alpha(&g, &lam, &span_named(&g, &["e21"])).unwrap(), None);
        let mixed = g.span([g.add(&g.named("e12").unwrap(), &g.named("e13").unwrap())]);
        assert!(alpha(&g, &lam, &mixed).is_err());
    }

    #[test]
    fn optimize_examples() {
        let g = sl(3, 5);
        let cfg = KempfConfig { bound: Some(6) };
        let c = optimize(&g, &span_named(&g, &["e12", "e13", "e23"]), &cfg).unwrap();
        assert_eq!(c.lambda.coords, vec![1, 0, -1]);
        assert_eq!(c.alpha, 1);
        assert!(c.ties.is_empty());
        let c = optimize(&g, &span_named(&g, &["e13"]), &cfg).unwrap();
        assert_eq!(c.lambda.coords, vec![1, 0, -1]);
        assert_eq!(c.alpha, 2);
        let c = optimize(&g, &span_named(&g, &["e13", "e23"]), &cfg).unwrap();
        assert_eq!(c.lambda.coords, vec![1, 1, -2]);
        assert_eq!(c.alpha, 3);
        let s2 = sl(2, 5);
        let c = optimize(&s2, &span_named(&s2, &["e12"]), &KempfConfig::default()).unwrap();
        assert_eq!(c.lambda.coords, vec![1, -1]);
        assert!(c.lambda.is_indivisible());
    }

    #[test]
    fn parabolic_from_cochar_examples() {
        let g = sl(3, 5);
        let fr = g.frame().unwrap();
        let (pg, ug, cg) = parabolic_from_cochar(&g, &Cocharacter::new(vec![1, 0, -1]));
        assert_eq!(pg, fr.borel(5));
        assert_eq!(ug, fr.positive_nilradical(5));
        assert_eq!(cg, fr.torus(5));
        let (pg, _, _) = parabolic_from_cochar(&g, &Cocharacter::new(vec![0, 0, 0]));
        assert!(pg.is_full());
        let (pg, _, cg) = parabolic_from_cochar(&g, &Cocharacter::new(vec![1, 1, -2]));
        assert_eq!(pg.dim(), 6);
        assert!(cg.contains(&g.named("e12").unwrap()) && cg.contains(&g.named("e21").unwrap()));
    }

    #[test]
    fn norm_is_weyl_invariant() {
        for (fam, n) in [(Family::Sl, 4), (Family::Sp, 6), (Family::So, 7), (Family::So, 8)] {
            let g = LieAlgebra::build(fam, n, 7).unwrap();
            let rd = g.frame().unwrap().root_datum();
            let dim = rd.ambient;
            let sz = sum_zero(g.frame().unwrap());
            lattice_points(dim, sz, 3, |lam| {
                for a in &rd.simple_roots {
                    let r = rd.reflect(a, lam);
                    assert_eq!(dot(&r, &r), dot(lam, lam));
                }
            });
        }
    }

    #[test]
    fn obstruction_on_borel_nilradical() {
        let g = sl(3, 5);
        let n = g.frame().unwrap().positive_nilradical(5);
        let c = optimize(&g, &n, &KempfConfig::default()).unwrap();
        assert!(verify_obstruction(&g, &n, &c).all_pass());
        let u = span_named(&g, &["e13"]);
        let c = optimize(&g, &u, &KempfConfig::default()).unwrap();
        let rep = verify_obstruction(&g, &u, &c);
        assert_eq!(rep.status(CHECK_U_IN_UG), Some(CheckStatus::Pass));
        assert_eq!(rep.status(CHECK_U_EQ_UG), Some(CheckStatus::Fail));
    }

    #[test]
    fn lattice_counts() {
        let mut k = 0;
        lattice_points(2, false, 1, |_| k += 1);
        assert_eq!(k, 4);
        let mut k = 0;
        lattice_points(3, true, 2, |v| {
            assert_eq!(v.iter().sum::<i64>(), 0);
            k += 1
        });
        assert_eq!(k, 6);
    }
}
