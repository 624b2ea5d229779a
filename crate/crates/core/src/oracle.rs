//! Brute-force reference computations used to cross-check the structured
//! algorithms. Everything here works from brackets and element enumeration
//! only, so it shares no code path with the meataxe or the radical peeling.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gfp::Subspace;
use crate::liealg::{Element, LieAlgebra};

fn budget_check(what: &str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        return Err(Error::Undetermined {
            what: what.into(),
            needed,
            budget,
        });
    }
    Ok(())
}

/// `{x ∈ g : [x, u] ⊆ u}` by testing every element of `g`.
pub fn normalizer_by_enumeration(g: &LieAlgebra, u: &Subspace, budget: u128) -> Result<Subspace> {
    let all = g.full();
    budget_check("normaliser enumeration", all.cardinality(), budget)?;
    let keep = all
        .elements()
        .filter(|x| u.basis().iter().all(|y| u.contains(&g.bracket(x, y))));
    Ok(g.span(keep))
}

fn brackets(g: &LieAlgebra, a: &Subspace, b: &Subspace) -> Subspace {
    g.span(
        a.basis()
            .iter()
            .flat_map(|x| b.basis().iter().map(move |y| (x, y)))
            .map(|(x, y)| g.bracket(x, y)),
    )
}

fn is_nilpotent(g: &LieAlgebra, s: &Subspace) -> bool {
    let mut c = s.clone();
    for _ in 0..=s.dim() {
        if c.is_zero() {
            return true;
        }
        c = brackets(g, s, &c);
    }
    c.is_zero()
}

fn is_solvable(g: &LieAlgebra, s: &Subspace) -> bool {
    let mut c = s.clone();
    for _ in 0..=s.dim() {
        if c.is_zero() {
            return true;
        }
        c = brackets(g, &c, &c);
    }
    c.is_zero()
}

fn is_p_nil(g: &LieAlgebra, s: &Subspace) -> Result<bool> {
    for x in s.elements() {
        if !g.is_p_nilpotent(&x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The ideal of `h` generated by `x`.
pub fn principal_ideal(g: &LieAlgebra, h: &Subspace, x: &[u32]) -> Subspace {
    let mut s = g.span([x.to_vec()]);
    loop {
        let next = s.sum(&brackets(g, h, &s)).expect("same ambient");
        if next == s {
            return s;
        }
        s = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRadicals {
    pub rad: Subspace,
    pub nil: Subspace,
    pub rad_p: Subspace,
}

#[derive(Clone, Copy)]
struct IdealFlags {
    solvable: bool,
    nilpotent: bool,
    p_nil: bool,
}

/// Radicals of `h` as unions of principal ideals: an element lies in the
/// maximal solvable (nilpotent, p-nil) ideal exactly when the ideal it
/// generates is solvable (nilpotent, p-nil). The cache is keyed by ideal and
/// may be shared across subalgebras of the same `g`.
pub struct RadicalOracle<'a> {
    g: &'a LieAlgebra,
    cache: HashMap<(Subspace, Subspace), IdealFlags>,
}

impl<'a> RadicalOracle<'a> {
    pub fn new(g: &'a LieAlgebra) -> Self {
        Self {
            g,
            cache: HashMap::new(),
        }
    }

    pub fn radicals(&mut self, h: &Subspace, budget: u128) -> Result<OracleRadicals> {
        let g = self.g;
        budget_check("principal ideal enumeration", h.cardinality(), budget)?;
        let mut rad = Vec::new();
        let mut nil = Vec::new();
        let mut rad_p = Vec::new();
        for x in projective_points(h) {
            let i = principal_ideal(g, h, &x);
            let key = (h.clone(), i);
            let flags = match self.cache.get(&key) {
                Some(f) => *f,
                None => {
                    let i = &key.1;
                    let f = IdealFlags {
                        solvable: is_solvable(g, i),
                        nilpotent: is_nilpotent(g, i),
                        p_nil: is_p_nil(g, i)?,
                    };
                    self.cache.insert(key.clone(), f);
                    f
                }
            };
            if flags.solvable {
                rad.push(x.clone());
            }
            if flags.nilpotent {
                nil.push(x.clone());
            }
            if flags.p_nil {
                rad_p.push(x);
            }
        }
        Ok(OracleRadicals {
            rad: g.span(rad),
            nil: g.span(nil),
            rad_p: g.span(rad_p),
        })
    }
}

/// One nonzero representative per line of `s`.
fn projective_points(s: &Subspace) -> impl Iterator<Item = Element> + '_ {
    s.elements().filter(|x| {
        // Leading nonzero coordinate equal to 1.
        x.iter().find(|&&c| c != 0).is_some_and(|&c| c == 1)
    })
}

/// Every subspace of `within`, in a fixed order (by dimension, then by the
/// echelon enumeration).
pub fn all_subspaces(within: &Subspace) -> Vec<Subspace> {
    let p = within.modulus();
    let k = within.dim();
    let ambient = within.ambient_dim();
    let mut out = Vec::new();
    for r in 0..=k {
        for pivots in combinations(k, r) {
            // Free positions: row i, column j > pivots[i] with j not a pivot.
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|i| ((pivots[i] + 1)..k).map(move |j| (i, j)))
                .filter(|(_, j)| !pivots.contains(j))
                .collect();
            let count = (p as u128).pow(free.len() as u32);
            for mut code in 0..count {
                let mut rows = vec![vec![0u32; k]; r];
                for (i, &c) in pivots.iter().enumerate() {
                    rows[i][c] = 1;
                }
                for &(i, j) in &free {
                    rows[i][j] = (code % p as u128) as u32;
                    code /= p as u128;
                }
                out.push(Subspace::span(p, ambient, rows.iter().map(|c| within.combine(c))));
            }
        }
    }
    out
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Every subalgebra of `g` contained in `within`.
pub fn all_subalgebras(g: &LieAlgebra, within: &Subspace) -> Vec<Subspace> {
    all_subspaces(within)
        .into_iter()
        .filter(|s| brackets(g, s, s).basis().iter().all(|v| s.contains(v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::Family;

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        // Subspaces of GF(3)^3: 1 + 13 + 13 + 1.
        let s = Subspace::full(3, 3);
        assert_eq!(all_subspaces(&s).len(), 28);
        let s = Subspace::full(2, 4);
        // 1 + 15 + 35 + 15 + 1.
        assert_eq!(all_subspaces(&s).len(), 67);
    }

    #[test]
    fn sl2_subalgebras() {
        let g = LieAlgebra::build(Family::Sl, 2, 3).unwrap();
        let subs = all_subalgebras(&g, &g.full());
        // Every line is a subalgebra; planes must be closed.
        assert!(subs.iter().filter(|s| s.dim() == 1).count() == 13);
        let mut o = RadicalOracle::new(&g);
        let r = o.radicals(&g.full(), 1 << 20).unwrap();
        assert!(r.rad.is_zero() && r.nil.is_zero() && r.rad_p.is_zero());
        let b = g.span([g.named("h1").unwrap(), g.named("e12").unwrap()]);
        let r = o.radicals(&b, 1 << 20).unwrap();
        assert_eq!(r.rad, b);
        assert_eq!(r.nil, g.span([g.named("e12").unwrap()]));
        assert_eq!(r.rad_p, r.nil);
    }

    #[test]
    fn normaliser_by_enumeration_matches() {
        let g = LieAlgebra::build(Family::Sl, 3, 3).unwrap();
        let u = g.span([g.named("e13").unwrap()]);
        assert_eq!(normalizer_by_enumeration(&g, &u, 1 << 20).unwrap(), g.normalizer(&u));
    }
}
