//! Slope arithmetic on Harder–Narasimhan data.
//!
//! Bundles are represented only by the `(rank, degree)` pairs of the
//! successive quotients `E_i/E_{i-1}`. Factor `zero_index` is `E_0/E_{-1}`,
//! so the factors before it are the quotients of `E_{-1}` and the ones after
//! it are the quotients of `g/E_0`.

use num_rational::Ratio;
use rand::Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Slope = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HNFiltration {
    pub factors: Vec<(u64, i64)>,
    pub zero_index: usize,
}

impl HNFiltration {
    pub fn new(factors: Vec<(u64, i64)>, zero_index: usize) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("filtration has no factors".into()));
        }
        if let Some(k) = factors.iter().position(|&(r, _)| r == 0) {
            return Err(Error::InvalidInput(format!("factor {k} has rank 0")));
        }
        if factors.iter().any(|&(r, _)| r > i64::MAX as u64 / 4) {
            return Err(Error::InvalidInput("rank too large".into()));
        }
        if zero_index >= factors.len() {
            return Err(Error::InvalidInput(format!(
                "zero_index {zero_index} out of range for {} factors",
                factors.len()
            )));
        }
        Ok(Self { factors, zero_index })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: HNFiltration = serde_json::from_str(s)?;
        Self::new(raw.factors, raw.zero_index)
    }

    pub fn rank(&self) -> u64 {
        self.factors.iter().map(|f| f.0).sum()
    }

    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn slopes(&self) -> Vec<Slope> {
        self.factors.iter().map(|&(r, d)| Ratio::new(d, r as i64)).collect()
    }

    /// Cumulative `(rank, degree)` of the terms; entry `k` is `E_{k - zero_index}`.
    pub fn cumulative(&self) -> Vec<(u64, i64)> {
        let mut acc = (0u64, 0i64);
        self.factors
            .iter()
            .map(|&(r, d)| {
                acc = (acc.0 + r, acc.1 + d);
                acc
            })
            .collect()
    }
}

pub fn slope(rank: u64, degree: i64) -> Result<Slope> {
    if rank == 0 {
        return Err(Error::InvalidInput("slope of a rank 0 bundle".into()));
    }
    Ok(Ratio::new(degree, rank as i64))
}

/// Smallest slope among the given quotients.
pub fn mu_min(factors: &[(u64, i64)]) -> Option<Slope> {
    factors.iter().map(|&(r, d)| Ratio::new(d, r as i64)).min()
}

pub fn mu_max(factors: &[(u64, i64)]) -> Option<Slope> {
    factors.iter().map(|&(r, d)| Ratio::new(d, r as i64)).max()
}

pub fn verify_hn(f: &HNFiltration) -> bool {
    f.slopes().windows(2).all(|w| w[0] > w[1])
}

fn ser_ratio<S: Serializer>(r: &Slope, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_opt_ratio<S: Serializer>(r: &Option<Slope>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualMismatch {
    /// `i` in `E_{-i}` versus `E_{i-1}`; `0` flags the index relation.
    pub index: usize,
    pub what: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualReport {
    /// Number of positive-slope terms below `E_0`.
    pub r: usize,
    /// Number of quotients from `E_0/E_{-1}` up to `g/E_{l-1}`.
    pub nonpositive_count: usize,
    pub mismatches: Vec<DualMismatch>,
}

impl DualReport {
    pub fn passes(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks the shape forced by a nondegenerate invariant form: `r + 1`
/// quotients from `E_0` on, and `E_{-i} ≅ E_{i-1}^⊥` at the level of ranks
/// and degrees.
pub fn dual_pattern(f: &HNFiltration) -> Result<DualReport> {
    if f.degree() != 0 {
        return Err(Error::InvalidInput(format!("total degree {} is not 0", f.degree())));
    }
    let r = f.zero_index;
    let nonpositive_count = f.factors.len() - r;
    let mut mismatches = Vec::new();
    if nonpositive_count != r + 1 {
        mismatches.push(DualMismatch {
            index: 0,
            what: format!("{nonpositive_count} quotients from E_0 on, expected {}", r + 1),
        });
    }
    let cum = f.cumulative();
    let dim = f.rank();
    for i in 1..=r {
        let lo = cum[r - i];
        let Some(&hi) = cum.get(r + i - 1) else {
            mismatches.push(DualMismatch {
                index: i,
                what: format!("E_{} missing", i - 1),
            });
            continue;
        };
        if lo.0 + hi.0 != dim {
            mismatches.push(DualMismatch {
                index: i,
                what: format!("rank(E_-{i}) = {} but dim - rank(E_{}) = {}", lo.0, i - 1, dim as i128 - hi.0 as i128),
            });
        }
        if lo.1 != hi.1 {
            mismatches.push(DualMismatch {
                index: i,
                what: format!("deg(E_-{i}) = {} but deg(E_{}) = {}", lo.1, i - 1, hi.1),
            });
        }
    }
    Ok(DualReport {
        r,
        nonpositive_count,
        mismatches,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E0Report {
    #[serde(serialize_with = "ser_opt_ratio")]
    pub mu_min_below: Option<Slope>,
    /// Slopes of the quotients of `E_{-1}` are all positive (vacuous if empty).
    pub below_positive: bool,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub mu_max_above: Option<Slope>,
    /// Slopes of the quotients of `g/E_0` are all negative (vacuous if empty).
    pub above_negative: bool,
    #[serde(serialize_with = "ser_ratio")]
    pub mu_e0: Slope,
    /// `E_0` is the first term whose quotient has slope `≤ 0`.
    pub zero_index_first_nonpositive: bool,
    /// The quotient at `E_0` has slope exactly `0`.
    pub zero_index_slope_zero: bool,
    /// `2·μ_min(E_0) = 0 > μ_max(g/E_0)`.
    pub chain_holds: bool,
    pub rank_matches_dim: bool,
    /// `p > 2·dim - 2`, which licenses additivity of minimal slopes under `⊗`.
    pub tensor_identity_licensed: bool,
}

impl E0Report {
    pub fn structural_pass(&self) -> bool {
        self.below_positive
            && self.above_negative
            && self.zero_index_first_nonpositive
            && self.zero_index_slope_zero
            && self.chain_holds
            && self.rank_matches_dim
    }

    pub fn passes(&self) -> bool {
        self.structural_pass() && self.tensor_identity_licensed
    }
}

pub fn e0_preconditions(f: &HNFiltration, p: u64, dim_g: u64) -> E0Report {
    let k = f.zero_index;
    let below = &f.factors[..k];
    let above = &f.factors[k + 1..];
    let mu_min_below = mu_min(below);
    let mu_max_above = mu_max(above);
    let zero = Slope::from_integer(0);
    let (r0, d0) = f.factors[k];
    let mu_e0 = Ratio::new(d0, r0 as i64);
    let above_negative = mu_max_above.is_none_or(|m| m < zero);
    E0Report {
        below_positive: mu_min_below.is_none_or(|m| m > zero),
        above_negative,
        zero_index_first_nonpositive: mu_e0 <= zero && below.iter().all(|&(r, d)| Ratio::new(d, r as i64) > zero),
        zero_index_slope_zero: mu_e0 == zero,
        chain_holds: mu_e0 * 2 == zero && above_negative,
        rank_matches_dim: f.rank() == dim_g,
        tensor_identity_licensed: p + 2 > 2 * dim_g,
        mu_min_below,
        mu_max_above,
        mu_e0,
    }
}

/// A filtration of the shape forced by a nondegenerate form: a random
/// strictly decreasing positive-slope prefix, a slope-zero middle quotient,
/// then the prefix reflected with negated degrees.
pub fn synthetic<R: Rng>(rng: &mut R, max_r: usize) -> HNFiltration {
    let r = rng.gen_range(0..=max_r);
    let mut prefix: Vec<(u64, i64)> = Vec::with_capacity(r);
    let mut last: Option<Slope> = None;
    while prefix.len() < r {
        let rank = rng.gen_range(1..=4u64);
        let deg = rng.gen_range(1..=12i64);
        let s = Ratio::new(deg, rank as i64);
        if last.is_none_or(|l| s < l) {
            prefix.push((rank, deg));
            last = Some(s);
        } else if last.is_some_and(|l| l <= Ratio::new(1, 4)) {
            // No room left below the last slope with these ranges; restart.
            prefix.clear();
            last = None;
        }
    }
    let mut factors = prefix.clone();
    factors.push((rng.gen_range(1..=4), 0));
    factors.extend(prefix.iter().rev().map(|&(rk, d)| (rk, -d)));
    HNFiltration {
        factors,
        zero_index: r,
    }
}

/// Every filtration obtained from `f` by changing one rank or one degree by
/// `delta` (ranks kept positive).
pub fn single_perturbations(f: &HNFiltration, delta: i64) -> Vec<HNFiltration> {
    let mut out = Vec::new();
    for k in 0..f.factors.len() {
        let (r, d) = f.factors[k];
        let nr = r as i64 + delta;
        if nr > 0 {
            let mut g = f.clone();
            g.factors[k].0 = nr as u64;
            out.push(g);
        }
        let mut g = f.clone();
        g.factors[k].1 = d + delta;
        out.push(g);
    }
    out
}

/// Joint verdict used for fuzzing: dual shape and the structural
/// preconditions at `E_0` for an algebra of dimension `dim_g`.
pub fn accepts(f: &HNFiltration, dim_g: u64) -> bool {
    verify_hn(f)
        && dual_pattern(f).is_ok_and(|r| r.passes())
        && e0_preconditions(f, u64::MAX / 4, dim_g).structural_pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn hn(factors: &[(u64, i64)], z: usize) -> HNFiltration {
        HNFiltration::new(factors.to_vec(), z).unwrap()
    }

    #[test]
    fn slopes() {
        assert_eq!(slope(2, 4).unwrap(), Ratio::from_integer(2));
        assert_eq!(slope(3, 0).unwrap(), Ratio::from_integer(0));
        assert!(slope(0, 1).is_err());
        assert_eq!(mu_max(&[(1, 1), (1, 0), (1, -1)]), Some(Ratio::from_integer(1)));
        assert_eq!(mu_min(&[(2, 1), (3, 1)]), Some(Ratio::new(1, 3)));
    }

    #[test]
    fn hn_order() {
        assert!(verify_hn(&hn(&[(1, 1), (1, 0), (1, -1)], 1)));
        assert!(!verify_hn(&hn(&[(1, 0), (1, 1)], 0)));
        assert!(verify_hn(&hn(&[(5, 0)], 0)));
    }

    #[test]
    fn dual_examples() {
        let f = hn(&[(3, 3), (2, 0), (3, -3)], 1);
        let cum = f.cumulative();
        assert_eq!(cum[0], (3, 3));
        assert_eq!(cum[1], (5, 3));
        assert!(dual_pattern(&f).unwrap().passes());
        let bad = hn(&[(2, 3), (2, 0), (3, -3)], 1);
        let rep = dual_pattern(&bad).unwrap();
        assert_eq!(rep.mismatches[0].index, 1);
        assert!(dual_pattern(&hn(&[(8, 0)], 0)).unwrap().passes());
        assert!(dual_pattern(&hn(&[(1, 1)], 0)).is_err());
    }

    #[test]
    fn e0_examples() {
        let f = hn(&[(3, 3), (2, 0), (3, -3)], 1);
        assert!(e0_preconditions(&f, 101, 8).passes());
        let z = hn(&[(1, 0), (1, 0)], 1);
        assert!(!e0_preconditions(&z, 101, 2).below_positive);
        let rep = e0_preconditions(&f, 5, 8);
        assert!(!rep.tensor_identity_licensed);
        assert!(rep.structural_pass());
        let weak = hn(&[(1, 1), (1, -1)], 1);
        let rep = e0_preconditions(&weak, 7, 2);
        assert!(rep.zero_index_first_nonpositive);
        assert!(!rep.zero_index_slope_zero);
    }

    #[test]
    fn json() {
        let f = HNFiltration::from_json_str(r#"{"factors":[[3,3],[2,0],[3,-3]],"zero_index":1}"#).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert!(HNFiltration::from_json_str(r#"{"factors":[[0,1]],"zero_index":0}"#).is_err());
        assert!(HNFiltration::from_json_str(r#"{"factors":[[1,1]],"zero_index":3}"#).is_err());
    }

    #[test]
    fn synthetic_and_fuzz() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let f = synthetic(&mut rng, 4);
            let dim = f.rank();
            assert!(accepts(&f, dim), "{f:?}");
            for d in [-2, -1, 1, 2] {
                for g in single_perturbations(&f, d) {
                    assert!(!accepts(&g, dim), "{g:?}");
                }
            }
        }
    }
}
