//! Deciding parabolicity of subalgebras of built classical algebras.
//!
//! A subalgebra containing a maximal torus `t` is parabolic when it equals
//! `t ⊕ ⊕_{α∈Φ'} g_α` with `Φ'` closed and `Φ' ∪ −Φ' = Φ`. When the
//! standard torus is not inside `q`, conjugation invariants are compared
//! with every standard parabolic, and in type A a Cartan subalgebra of `q`
//! is diagonalized to move `q` into standard position.

use std::collections::{BTreeSet, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::{FieldMatrix, Subspace};
use crate::liealg::{Family, Frame, LieAlgebra};
use crate::rootdata::{Kind, RootDatum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParabolicStatus {
    Parabolic,
    NotParabolic,
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureReason {
    NotSubalgebra,
    NotClosed,
    NotParabolicSubset,
    /// `q` is not spanned by the torus and root spaces it contains.
    NotRootGraded,
    /// Conjugation invariants match no standard parabolic.
    InvariantMismatch,
    NoTorusFound,
    ContainsNoBorel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicVerdict {
    pub status: ParabolicStatus,
    pub torus_used: Option<Subspace>,
    pub root_subset: Option<Vec<Vec<i64>>>,
    pub failure_reason: Option<FailureReason>,
}

impl ParabolicVerdict {
    fn new(status: ParabolicStatus, reason: Option<FailureReason>) -> Self {
        Self {
            status,
            torus_used: None,
            root_subset: None,
            failure_reason: reason,
        }
    }

    pub fn is_parabolic(&self) -> bool {
        self.status == ParabolicStatus::Parabolic
    }
}

fn frame(g: &LieAlgebra) -> Result<&Frame> {
    g.frame()
        .ok_or_else(|| Error::Unsupported("parabolic detection needs a built classical algebra".into()))
}

/// A Cartan subalgebra of the subalgebra `h`: the Fitting null component of
/// `ad x` on `h` for a random `x ∈ h`, accepted once it is nilpotent and
/// self-normalizing in `h`.
pub fn cartan_subalgebra(g: &LieAlgebra, h: &Subspace, seed: u64) -> Result<Subspace> {
    let a = g.subalgebra(h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tries = 64;
    for _ in 0..tries {
        let x = a.random_element(&mut rng);
        let m = a.ad(&x).pow(a.dim().max(1) as u64);
        let c = m.kernel();
        if a.is_nilpotent(&c) && a.normalizer(&c) == c {
            return Ok(g.embed_from(h, &c));
        }
    }
    Err(Error::Undetermined {
        what: "Cartan subalgebra search".into(),
        needed: tries + 1,
        budget: tries,
    })
}

/// Torus part of the standard Borel: the diagonal torus, except for `pgl_n`
/// where the image of the trace-zero diagonal matrices is used.
fn borel_torus(g: &LieAlgebra, f: &Frame) -> Subspace {
    let p = g.p();
    if f.family != Family::Pgl {
        return f.torus(p);
    }
    let r = g.realization().expect("built algebras are realized");
    let n = f.n;
    g.span((0..n - 1).map(|i| {
        let mut m = FieldMatrix::zero(p, n, n);
        m.set(i, i, 1);
        m.set(i + 1, i + 1, p - 1);
        r.coords_of(&m).expect("diagonal matrices are in pgl")
    }))
}

/// All positive systems `w(Φ⁺)`, `w` in the Weyl group.
fn positive_systems(rd: &RootDatum) -> Vec<Vec<Vec<i64>>> {
    let start: BTreeSet<Vec<i64>> = rd.positive_vectors().into_iter().collect();
    let mut seen: HashSet<BTreeSet<Vec<i64>>> = HashSet::new();
    let mut queue = vec![start.clone()];
    seen.insert(start);
    while let Some(s) = queue.pop() {
        for a in &rd.simple_roots {
            let t: BTreeSet<Vec<i64>> = s.iter().map(|r| rd.reflect(a, r)).collect();
            if seen.insert(t.clone()) {
                queue.push(t);
            }
        }
    }
    let mut out: Vec<Vec<Vec<i64>>> = seen.into_iter().map(|s| s.into_iter().collect()).collect();
    out.sort();
    out
}

/// The Borel subalgebras of the frame: the standard torus part plus the
/// root spaces of a Weyl translate of the positive system.
pub fn frame_borels(g: &LieAlgebra) -> Result<Vec<Subspace>> {
    let f = frame(g)?;
    let t = borel_torus(g, f);
    let rd = f.root_datum();
    Ok(positive_systems(&rd)
        .into_iter()
        .map(|pos| t.sum(&f.root_spaces(g.p(), &pos)).expect("same ambient"))
        .collect())
}

/// Whether `q` contains one of the frame's Borel subalgebras.
pub fn contains_borel(g: &LieAlgebra, q: &Subspace) -> Result<bool> {
    Ok(frame_borels(g)?.iter().any(|b| q.contains_subspace(b)))
}

/// Conjugation invariants of a subalgebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Signature {
    dim: usize,
    derived: Vec<usize>,
    lower: Vec<usize>,
    normalizer: usize,
    center: usize,
}

fn signature(g: &LieAlgebra, q: &Subspace) -> Signature {
    let center = {
        let c = g.centralizer(q).intersection(q).expect("same ambient");
        c.dim()
    };
    Signature {
        dim: q.dim(),
        derived: g.derived_series(q).iter().map(Subspace::dim).collect(),
        lower: g.lower_central_series(q).iter().map(Subspace::dim).collect(),
        normalizer: g.normalizer(q).dim(),
        center,
    }
}

/// The standard parabolic subalgebras `t ⊕ ⊕_{α∈Φ'} g_α`.
pub fn standard_parabolics(g: &LieAlgebra) -> Result<Vec<Subspace>> {
    let f = frame(g)?;
    Ok(f.root_datum()
        .parabolic_subsets()?
        .iter()
        .map(|ps| f.torus_plus(g.p(), &ps.roots))
        .collect())
}

/// Verdict for a subalgebra that contains the standard torus.
fn decide_with_standard_torus(g: &LieAlgebra, f: &Frame, q: &Subspace) -> ParabolicVerdict {
    let p = g.p();
    let torus = f.torus(p);
    let rd = f.root_datum();
    let phi: Vec<Vec<i64>> = rd
        .roots
        .iter()
        .filter(|r| f.root_index(r).is_some_and(|i| q.contains(&g.basis_element(i))))
        .cloned()
        .collect();
    let rebuilt = f.torus_plus(p, &phi);
    let mut v = ParabolicVerdict::new(ParabolicStatus::Parabolic, None);
    v.torus_used = Some(torus);
    v.root_subset = Some(phi.clone());
    if rebuilt != *q {
        v.status = ParabolicStatus::Undetermined;
        v.failure_reason = Some(FailureReason::NotRootGraded);
        return v;
    }
    if !rd.is_closed(&phi) {
        v.status = ParabolicStatus::NotParabolic;
        v.failure_reason = Some(FailureReason::NotClosed);
    } else if !rd.covers(&phi) {
        v.status = ParabolicStatus::NotParabolic;
        v.failure_reason = Some(FailureReason::NotParabolicSubset);
    }
    v
}

/// Simultaneous eigenbasis of commuting matrices, if they are split and
/// diagonalizable over GF(p).
fn common_eigenbasis(mats: &[FieldMatrix], n: usize, p: u32) -> Option<FieldMatrix> {
    let mut blocks = vec![Subspace::full(p, n)];
    for m in mats {
        let roots = m.char_poly().roots();
        let spaces: Vec<Subspace> = roots
            .iter()
            .map(|&l| m.sub(&FieldMatrix::identity(p, n).scale(l)).kernel())
            .collect();
        if spaces.iter().map(Subspace::dim).sum::<usize>() != n {
            return None;
        }
        let mut next = Vec::new();
        for b in &blocks {
            for s in &spaces {
                let i = b.intersection(s).ok()?;
                if !i.is_zero() {
                    next.push(i);
                }
            }
        }
        blocks = next;
    }
    let cols: Vec<Vec<u32>> = blocks.iter().flat_map(|b| b.basis().to_vec()).collect();
    if cols.len() != n {
        return None;
    }
    Some(FieldMatrix::from_residue_rows(p, n, &cols).transpose())
}

/// Type A only: conjugate a Cartan subalgebra of `q` to the diagonal and
/// decide in standard position.
fn decide_by_conjugation(g: &LieAlgebra, f: &Frame, q: &Subspace, seed: u64) -> Option<ParabolicVerdict> {
    if f.cartan_type.kind != Kind::A {
        return None;
    }
    let c = cartan_subalgebra(g, q, seed).ok()?;
    if c.dim() != f.torus_indices().len() {
        return None;
    }
    let r = g.realization()?;
    let mats: Vec<FieldMatrix> = c.basis().iter().map(|v| r.to_matrix(v)).collect();
    let pm = common_eigenbasis(&mats, r.n(), g.p())?;
    let pinv = pm.inverse()?;
    let conj: Option<Vec<Vec<u32>>> = q
        .basis()
        .iter()
        .map(|v| r.coords_of(&pinv.mul(&r.to_matrix(v)).mul(&pm)))
        .collect();
    let q2 = g.span(conj?);
    if !q2.contains_subspace(&f.torus(g.p())) {
        return None;
    }
    let mut v = decide_with_standard_torus(g, f, &q2);
    v.torus_used = Some(c);
    Some(v)
}

/// Decides whether the subalgebra `q` of a built algebra is parabolic.
pub fn detect_parabolic(g: &LieAlgebra, q: &Subspace, seed: u64) -> ParabolicVerdict {
    let Ok(f) = frame(g) else {
        return ParabolicVerdict::new(ParabolicStatus::Undetermined, Some(FailureReason::NoTorusFound));
    };
    if !g.is_subalgebra(q) {
        return ParabolicVerdict::new(ParabolicStatus::NotParabolic, Some(FailureReason::NotSubalgebra));
    }
    if q.contains_subspace(&f.torus(g.p())) {
        return decide_with_standard_torus(g, f, q);
    }
    let sig = signature(g, q);
    let standard = match standard_parabolics(g) {
        Ok(s) => s,
        Err(_) => {
            return ParabolicVerdict::new(ParabolicStatus::Undetermined, Some(FailureReason::NoTorusFound))
        }
    };
    if !standard.iter().any(|s| signature(g, s) == sig) {
        return ParabolicVerdict::new(ParabolicStatus::NotParabolic, Some(FailureReason::InvariantMismatch));
    }
    decide_by_conjugation(g, f, q, seed).unwrap_or_else(|| {
        ParabolicVerdict::new(ParabolicStatus::Undetermined, Some(FailureReason::NoTorusFound))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KillingStatus {
    /// `p^⊥` is a nilpotent subalgebra and `p` is parabolic.
    Certified,
    /// `p^⊥` is a subalgebra but not nilpotent: no conclusion.
    NotCertified,
    /// `p^⊥` is not a subalgebra.
    PreconditionFailure,
    /// `p^⊥` is a nilpotent subalgebra, yet a cross-check failed.
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KillingVerdict {
    pub status: KillingStatus,
    pub perp: Subspace,
    pub perp_is_subalgebra: bool,
    pub perp_is_nilpotent: bool,
    pub detect: Option<ParabolicVerdict>,
    pub normalizer_of_perp_matches: Option<bool>,
}

/// Killing-form test: if `p^⊥` is a nilpotent subalgebra then `p` should be
/// parabolic and equal to `N_g(p^⊥)`; both are verified.
pub fn killing_detector(g: &LieAlgebra, p_cand: &Subspace, seed: u64) -> Result<KillingVerdict> {
    let gram = g.killing_matrix();
    if gram.rank() != g.dim() {
        return Err(Error::DegenerateKilling);
    }
    let perp = g.orthogonal_with(&gram, p_cand);
    let is_sub = g.is_subalgebra(&perp);
    let is_nil = is_sub && g.is_nilpotent(&perp);
    let mut out = KillingVerdict {
        status: KillingStatus::PreconditionFailure,
        perp: perp.clone(),
        perp_is_subalgebra: is_sub,
        perp_is_nilpotent: is_nil,
        detect: None,
        normalizer_of_perp_matches: None,
    };
    if !is_sub {
        return Ok(out);
    }
    if !is_nil {
        out.status = KillingStatus::NotCertified;
        return Ok(out);
    }
    let v = detect_parabolic(g, p_cand, seed);
    let n_ok = g.normalizer(&perp) == *p_cand;
    out.status = if v.is_parabolic() && n_ok {
        KillingStatus::Certified
    } else {
        KillingStatus::Inconsistent
    };
    out.detect = Some(v);
    out.normalizer_of_perp_matches = Some(n_ok);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_dimensions() {
        for (fam, n, r) in [(Family::Sl, 2, 1), (Family::Sl, 3, 2), (Family::Gl, 3, 3)] {
            let g = LieAlgebra::build(fam, n, 5).unwrap();
            assert_eq!(cartan_subalgebra(&g, &g.full(), 1).unwrap().dim(), r);
        }
    }

    #[test]
    fn standard_examples() {
        let g = LieAlgebra::build(Family::Sl, 3, 5).unwrap();
        let v = detect_parabolic(&g, &g.full(), 0);
        assert!(v.is_parabolic());
        assert_eq!(v.root_subset.unwrap().len(), 6);
        let b = g.frame().unwrap().borel(5);
        let v = detect_parabolic(&g, &b, 0);
        assert!(v.is_parabolic());
        assert_eq!(v.root_subset.unwrap().len(), 3);
        assert!(contains_borel(&g, &b).unwrap());
        assert_eq!(frame_borels(&g).unwrap().len(), 6);
        let s2 = LieAlgebra::build(Family::Sl, 2, 5).unwrap();
        assert!(!contains_borel(&s2, &s2.span([s2.named("e12").unwrap()])).unwrap());
    }

    #[test]
    fn conjugated_borel_is_found() {
        let g = LieAlgebra::build(Family::Sl, 3, 7).unwrap();
        let r = g.realization().unwrap();
        let b = g.frame().unwrap().borel(7);
        let u = FieldMatrix::from_rows(7, &[[1, 2, 0], [0, 1, 0], [3, 1, 1]]).unwrap();
        let ui = u.inverse().unwrap();
        let moved = g.span(b.basis().iter().map(|v| r.coords_of(&u.mul(&r.to_matrix(v)).mul(&ui)).unwrap()));
        assert!(!moved.contains_subspace(&g.frame().unwrap().torus(7)));
        let v = detect_parabolic(&g, &moved, 3);
        assert!(v.is_parabolic(), "{v:?}");
    }

    #[test]
    fn non_parabolic_examples() {
        let g = LieAlgebra::build(Family::Sl, 3, 5).unwrap();
        let fr = g.frame().unwrap();
        let t = fr.torus(5);
        assert_eq!(detect_parabolic(&g, &t, 0).status, ParabolicStatus::NotParabolic);
        let n = fr.positive_nilradical(5);
        assert_eq!(detect_parabolic(&g, &n, 0).status, ParabolicStatus::NotParabolic);
    }

    #[test]
    fn killing_examples() {
        let g = LieAlgebra::build(Family::Sl, 2, 5).unwrap();
        let b = g.frame().unwrap().borel(5);
        let k = killing_detector(&g, &b, 0).unwrap();
        assert_eq!(k.status, KillingStatus::Certified);
        assert_eq!(k.perp, g.span([g.named("e12").unwrap()]));
        let k = killing_detector(&g, &g.full(), 0).unwrap();
        assert_eq!(k.status, KillingStatus::Certified);
        assert!(k.perp.is_zero());
        let h = g.span([g.named("h1").unwrap()]);
        let k = killing_detector(&g, &h, 0).unwrap();
        assert_eq!(k.status, KillingStatus::PreconditionFailure);
        let bad = LieAlgebra::build(Family::Sl, 3, 3).unwrap();
        assert!(killing_detector(&bad, &bad.full(), 0).is_err());
    }
}
