//! Solvable radical, nilradical and p-radical of subalgebras.
//!
//! Two methods share one contract. The structured method reads the radicals
//! off composition series (adjoint module for the nilradical, natural module
//! for the p-radical of a faithfully realized algebra). The enumeration
//! method scans every element of the solvable radical and is bounded by an
//! explicit budget; exceeding it yields [`Error::Undetermined`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::{FieldMatrix, Subspace};
use crate::liealg::LieAlgebra;
use crate::meataxe::composition_series;

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Structured when the algebra is faithfully realized, else enumeration.
    Auto,
    Structured,
    Enumeration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Enumeration,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RadicalConfig {
    pub budget: u128,
    pub strategy: Strategy,
    pub seed: u64,
}

impl Default for RadicalConfig {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            strategy: Strategy::Auto,
            seed: 0,
        }
    }
}

impl RadicalConfig {
    fn method_for(&self, h: &LieAlgebra) -> Method {
        match self.strategy {
            Strategy::Structured => Method::Structured,
            Strategy::Enumeration => Method::Enumeration,
            Strategy::Auto if h.is_faithful() => Method::Structured,
            Strategy::Auto => Method::Enumeration,
        }
    }
}

/// Radicals of a subalgebra `h`, all expressed in the ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalReport {
    pub rad: Subspace,
    pub nil: Subspace,
    pub rad_p: Subspace,
    /// Whether the p-nilpotent elements of `rad` form a subspace; only
    /// measured by the enumeration method.
    pub p_nilpotent_cone_is_subspace: Option<bool>,
    pub method_used: Method,
    pub budget: u128,
}

fn check_budget(s: &Subspace, budget: u128, what: &str) -> Result<()> {
    let needed = s.cardinality();
    if needed > budget {
        return Err(Error::Undetermined {
            what: what.to_string(),
            needed,
            budget,
        });
    }
    Ok(())
}

/// Nilradical of an algebra in its own coordinates: the common kernel of
/// its action on the composition factors of the adjoint module.
fn nil_structured(h: &LieAlgebra, seed: u64) -> Result<Subspace> {
    let d = h.dim();
    if d == 0 {
        return Ok(h.zero_space());
    }
    let ads: Vec<FieldMatrix> = (0..d).map(|i| h.ad(&h.basis_element(i))).collect();
    common_kernel_on_factors(h, &ads, d, seed)
}

/// `{x : every composition factor of the module is killed by x}` for the
/// module with generator matrices `reps` (one per basis element of `h`).
fn common_kernel_on_factors(h: &LieAlgebra, reps: &[FieldMatrix], n: usize, seed: u64) -> Result<Subspace> {
    let cs = composition_series(reps, h.p(), n, seed)?;
    let columns: Vec<Vec<u32>> = reps.iter().map(|r| cs.diagonal_blocks(r)).collect();
    if columns.first().is_none_or(Vec::is_empty) {
        return Ok(h.full());
    }
    let rows = columns[0].len();
    let mut m = FieldMatrix::zero(h.p(), rows, h.dim());
    for (j, col) in columns.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    Ok(m.kernel())
}

/// A minimal nonzero abelian ideal of `h` (own coordinates), if any.
///
/// Candidates are the center, else the last nonzero derived term of the
/// nilradical; the first term of a composition series of the candidate as
/// an `h`-module is then a minimal ideal.
fn minimal_abelian_ideal_own(h: &LieAlgebra, seed: u64) -> Result<Option<Subspace>> {
    let z = h.center();
    let a = if !z.is_zero() {
        z
    } else {
        let nil = nil_structured(h, seed)?;
        if nil.is_zero() {
            return Ok(None);
        }
        let series = h.derived_series(&nil);
        series
            .into_iter().rfind(|s| !s.is_zero())
            .expect("nil is nonzero")
    };
    // ad(h) acting on a, in a's coordinates
    let reps: Vec<FieldMatrix> = (0..h.dim())
        .map(|i| {
            let x = h.basis_element(i);
            let mut m = FieldMatrix::zero(h.p(), a.dim(), a.dim());
            for (j, v) in a.basis().iter().enumerate() {
                let c = a.coordinates(&h.bracket(&x, v)).expect("a is an ideal");
                for (k, &ck) in c.iter().enumerate() {
                    m.set(k, j, ck);
                }
            }
            m
        })
        .collect();
    let cs = composition_series(&reps, h.p(), a.dim(), seed)?;
    let first = cs.terms()[1].clone();
    Ok(Some(h.span(first.basis().iter().map(|c| a.combine(c)))))
}

/// Terminates because every quotient drops the dimension by at least one.
fn solvable_radical_own(h: &LieAlgebra, seed: u64) -> Result<Subspace> {
    let full = h.full();
    if h.is_solvable(&full) {
        return Ok(full);
    }
    let Some(a) = minimal_abelian_ideal_own(h, seed)? else {
        return Ok(h.zero_space());
    };
    let (q, map) = h.quotient(&a)?;
    let rq = solvable_radical_own(&q, seed)?;
    Ok(map.pull_back(&rq))
}

fn sub(g: &LieAlgebra, h: &Subspace) -> Result<LieAlgebra> {
    g.subalgebra(h)
}

/// Whether every element of `x` is p-nilpotent, by enumeration.
fn all_p_nilpotent(g: &LieAlgebra, s: &Subspace, budget: u128) -> Result<bool> {
    check_budget(s, budget, "p-nilpotency scan")?;
    for x in s.elements() {
        if !g.is_p_nilpotent(&x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A minimal nonzero abelian ideal of the subalgebra `h`, or `None`.
pub fn minimal_abelian_ideal(g: &LieAlgebra, h: &Subspace, seed: u64) -> Result<Option<Subspace>> {
    let a = sub(g, h)?;
    Ok(minimal_abelian_ideal_own(&a, seed)?.map(|s| g.embed_from(h, &s)))
}

/// The maximal solvable ideal of the subalgebra `h`.
pub fn solvable_radical(g: &LieAlgebra, h: &Subspace, seed: u64) -> Result<Subspace> {
    let a = sub(g, h)?;
    Ok(g.embed_from(h, &solvable_radical_own(&a, seed)?))
}

/// The maximal nilpotent ideal of the subalgebra `h`.
pub fn nilradical(g: &LieAlgebra, h: &Subspace, cfg: &RadicalConfig) -> Result<Subspace> {
    let a = sub(g, h)?;
    let own = match cfg.method_for(&a) {
        Method::Structured => nil_structured(&a, cfg.seed)?,
        Method::Enumeration => {
            let rad = solvable_radical_own(&a, cfg.seed)?;
            nil_enumerated(&a, &rad, cfg.budget)?
        }
    };
    Ok(g.embed_from(h, &own))
}

fn nil_enumerated(a: &LieAlgebra, rad: &Subspace, budget: u128) -> Result<Subspace> {
    check_budget(rad, budget, "nilradical enumeration")?;
    let cone: Vec<Vec<u32>> = rad
        .elements()
        .filter(|x| a.ad(x).nilpotency_order().is_some())
        .collect();
    let span = a.span(cone);
    let n = a.largest_ideal_inside(&a.full(), &span);
    if !a.is_nilpotent(&n) {
        return Err(Error::Precondition("enumerated nilradical is not nilpotent".into()));
    }
    Ok(n)
}

/// `(rad_p, cone_is_subspace)` by enumeration, in `a`'s own coordinates.
fn rad_p_enumerated(a: &LieAlgebra, rad: &Subspace, budget: u128) -> Result<(Subspace, bool)> {
    check_budget(rad, budget, "p-radical enumeration")?;
    let mut cone = Vec::new();
    for x in rad.elements() {
        if a.is_p_nilpotent(&x)? {
            cone.push(x);
        }
    }
    let span = a.span(cone.iter().cloned());
    let is_subspace = cone.len() as u128 == span.cardinality();
    let mut r = a.largest_ideal_inside(&a.full(), &span);
    loop {
        if all_p_nilpotent(a, &r, budget)? {
            return Ok((r, is_subspace));
        }
        let inside = a.span(cone.iter().filter(|x| r.contains(x)).cloned());
        let next = a.largest_ideal_inside(&a.full(), &inside);
        if next == r {
            return Err(Error::Precondition(
                "p-nilpotent elements do not close up to an ideal".into(),
            ));
        }
        r = next;
    }
}

/// The maximal p-nilpotent ideal of the subalgebra `h`.
pub fn p_radical(g: &LieAlgebra, h: &Subspace, cfg: &RadicalConfig) -> Result<Subspace> {
    Ok(radicals(g, h, cfg)?.rad_p)
}

/// All three radicals of the subalgebra `h` at once.
pub fn radicals(g: &LieAlgebra, h: &Subspace, cfg: &RadicalConfig) -> Result<RadicalReport> {
    let a = sub(g, h)?;
    let method = cfg.method_for(&a);
    let rad = solvable_radical_own(&a, cfg.seed)?;
    let (nil, rad_p, cone) = match method {
        Method::Structured => {
            let r = a.realization().ok_or(Error::Unrealized)?;
            if r.mod_scalars() {
                return Err(Error::Unsupported(
                    "structured p-radical needs a faithful realization".into(),
                ));
            }
            let nil = nil_structured(&a, cfg.seed)?;
            let rp = common_kernel_on_factors(&a, r.mats(), r.n(), cfg.seed)?;
            (nil, rp, None)
        }
        Method::Enumeration => {
            let nil = nil_enumerated(&a, &rad, cfg.budget)?;
            let (rp, cone) = rad_p_enumerated(&a, &rad, cfg.budget)?;
            (nil, rp, Some(cone))
        }
    };
    Ok(RadicalReport {
        rad: g.embed_from(h, &rad),
        nil: g.embed_from(h, &nil),
        rad_p: g.embed_from(h, &rad_p),
        p_nilpotent_cone_is_subspace: cone,
        method_used: method,
        budget: cfg.budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::Family;

    fn enum_cfg() -> RadicalConfig {
        RadicalConfig {
            strategy: Strategy::Enumeration,
            ..RadicalConfig::default()
        }
    }

    #[test]
    fn sl2_examples() {
        for p in [3, 5, 7] {
            let g = LieAlgebra::build(Family::Sl, 2, p).unwrap();
            let e = g.named("e12").unwrap();
            let b = g.frame().unwrap().borel(p);
            let line = g.span([e.clone()]);
            for cfg in [RadicalConfig::default(), enum_cfg()] {
                let r = radicals(&g, &b, &cfg).unwrap();
                assert_eq!(r.rad, b);
                assert_eq!(r.nil, line);
                assert_eq!(r.rad_p, line);
            }
            assert_eq!(minimal_abelian_ideal(&g, &b, 0).unwrap(), Some(line));
            if p >= 5 {
                assert!(solvable_radical(&g, &g.full(), 0).unwrap().is_zero());
                assert_eq!(minimal_abelian_ideal(&g, &g.full(), 0).unwrap(), None);
            }
        }
    }

    #[test]
    fn gl2_radical_is_scalars() {
        for p in [3, 5] {
            let g = LieAlgebra::build(Family::Gl, 2, p).unwrap();
            let r = radicals(&g, &g.full(), &RadicalConfig::default()).unwrap();
            assert_eq!(r.rad, g.center());
            assert_eq!(r.nil, g.center());
            assert!(r.rad_p.is_zero());
        }
    }

    #[test]
    fn sl3_p5_is_p_reductive() {
        let g = LieAlgebra::build(Family::Sl, 3, 5).unwrap();
        for cfg in [RadicalConfig::default(), enum_cfg()] {
            let r = radicals(&g, &g.full(), &cfg).unwrap();
            assert!(r.rad.is_zero() && r.nil.is_zero() && r.rad_p.is_zero());
        }
    }

    #[test]
    fn parabolics_of_sl3() {
        let g = LieAlgebra::build(Family::Sl, 3, 5).unwrap();
        let fr = g.frame().unwrap();
        let rd = fr.root_datum();
        for ps in rd.parabolic_subsets().unwrap() {
            let q = fr.torus_plus(5, &ps.roots);
            let u = fr.root_spaces(5, &ps.unipotent_roots());
            let s = radicals(&g, &q, &RadicalConfig::default()).unwrap();
            let e = radicals(&g, &q, &enum_cfg()).unwrap();
            assert_eq!(s.rad_p, u);
            assert_eq!(e.rad_p, u);
            assert_eq!(s.nil, e.nil);
            assert_eq!(s.rad, e.rad);
            assert_eq!(e.p_nilpotent_cone_is_subspace, Some(true));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = LieAlgebra::build(Family::Sl, 3, 5).unwrap();
        let b = g.frame().unwrap().borel(5);
        let cfg = RadicalConfig {
            budget: 10,
            ..enum_cfg()
        };
        let err = radicals(&g, &b, &cfg).unwrap_err();
        assert!(err.is_undetermined());
    }

    #[test]
    fn pgl3_enumeration() {
        let g = LieAlgebra::build(Family::Pgl, 3, 3).unwrap();
        let b = g.frame().unwrap().borel(3);
        let r = radicals(&g, &b, &RadicalConfig::default()).unwrap();
        assert_eq!(r.method_used, Method::Enumeration);
        assert_eq!(r.rad_p, g.frame().unwrap().positive_nilradical(3));
    }
}
