//! The normaliser tower `q_{i+1} = N_g(u_i)`, `u_{i+1} = rad_p(q_{i+1})` and
//! checks on its limit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::Subspace;
use crate::kempf::{self, KempfConfig};
use crate::liealg::LieAlgebra;
use crate::parabolic::{self, ParabolicStatus};
use crate::radicals::{radicals, RadicalConfig, RadicalReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TowerStatus {
    Stabilized,
    BudgetExceeded,
    CycleDetected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerStep {
    pub u: Subspace,
    pub q: Subspace,
    pub dim_u: usize,
    pub dim_q: usize,
    pub radicals: RadicalReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerTrace {
    pub u0: Subspace,
    /// Step `i` holds `(u_i, q_i)` for `i ≥ 1`.
    pub steps: Vec<TowerStep>,
    pub stabilized_at: Option<usize>,
    pub status: TowerStatus,
    pub max_steps: usize,
}

impl TowerTrace {
    /// `(u_∞, q_∞)`: the last recorded pair.
    pub fn limit(&self) -> Option<(&Subspace, &Subspace)> {
        self.steps.last().map(|s| (&s.u, &s.q))
    }

    pub fn dims(&self) -> Vec<(usize, usize)> {
        self.steps.iter().map(|s| (s.dim_u, s.dim_q)).collect()
    }
}

/// Checks that `u` is a subalgebra all of whose elements are p-nilpotent.
pub fn check_seed(g: &LieAlgebra, u: &Subspace, budget: u128) -> Result<()> {
    if u.ambient_dim() != g.dim() || u.modulus() != g.p() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: u.ambient_dim(),
        });
    }
    if !g.is_subalgebra(u) {
        return Err(Error::Precondition("seed is not a subalgebra".into()));
    }
    if g.is_faithful() {
        // A Lie algebra of matrices is p-nil iff it acts nilpotently, which
        // the composition series of the natural module decides.
        let sub = g.subalgebra(u)?;
        let r = sub.realization().expect("realized");
        let cs = crate::meataxe::composition_series(r.mats(), g.p(), r.n(), 0)?;
        if r.mats().iter().all(|m| cs.diagonal_blocks(m).iter().all(|&x| x == 0)) {
            return Ok(());
        }
        return Err(Error::Precondition("seed is not p-nil".into()));
    }
    let needed = u.cardinality();
    if needed > budget {
        return Err(Error::Undetermined {
            what: "seed p-nilpotency scan".into(),
            needed,
            budget,
        });
    }
    for x in u.elements() {
        if !g.is_p_nilpotent(&x)? {
            return Err(Error::Precondition("seed is not p-nil".into()));
        }
    }
    Ok(())
}

/// One step: `q = N_g(u)` and `u_next = rad_p(q)`.
pub fn tower_step(g: &LieAlgebra, u: &Subspace, cfg: &RadicalConfig) -> Result<(Subspace, RadicalReport)> {
    let q = g.normalizer(u);
    let rep = radicals(g, &q, cfg)?;
    Ok((q, rep))
}

/// Iterates the tower from `u0` until a pair repeats the previous one, an
/// earlier pair recurs, or `max_steps` is reached (default `2·dim + 2`).
pub fn run_tower(g: &LieAlgebra, u0: &Subspace, max_steps: Option<usize>, cfg: &RadicalConfig) -> Result<TowerTrace> {
    check_seed(g, u0, cfg.budget)?;
    let max_steps = max_steps.unwrap_or(2 * g.dim() + 2);
    let mut steps: Vec<TowerStep> = Vec::new();
    let mut u = u0.clone();
    let mut status = TowerStatus::BudgetExceeded;
    let mut stabilized_at = None;
    for i in 1..=max_steps {
        let (q, rep) = tower_step(g, &u, cfg)?;
        let next = rep.rad_p.clone();
        let step = TowerStep {
            dim_u: next.dim(),
            dim_q: q.dim(),
            u: next.clone(),
            q,
            radicals: rep,
        };
        let repeats_last = steps.last().is_some_and(|s| s.u == step.u && s.q == step.q)
            || (steps.is_empty() && step.u == *u0);
        let seen_before = steps
            .iter()
            .rev()
            .skip(1)
            .any(|s| s.u == step.u && s.q == step.q);
        steps.push(step);
        if repeats_last {
            status = TowerStatus::Stabilized;
            stabilized_at = Some(i);
            break;
        }
        if seen_before {
            status = TowerStatus::CycleDetected;
            break;
        }
        u = next;
    }
    Ok(TowerTrace {
        u0: u0.clone(),
        steps,
        stabilized_at,
        status,
        max_steps,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Undetermined,
}

impl CheckStatus {
    pub fn from_bool(b: bool) -> Self {
        if b {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn status(&self, name: &str) -> Option<CheckStatus> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.status)
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn any_fail(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }
}

pub const CHECK_FIXED_POINT: &str = "fixed_point";
pub const CHECK_PARABOLIC: &str = "parabolic";
pub const CHECK_RAD_P: &str = "u_equals_rad_p";
pub const CHECK_KEMPF: &str = "kempf_parabolic";

fn check(name: &str, status: CheckStatus, detail: Option<String>) -> Check {
    Check {
        name: name.into(),
        status,
        detail,
    }
}

/// Checks the limit of a stabilized tower: fixed-point condition,
/// parabolicity of `q_∞`, `u_∞ = rad_p(q_∞)`, and agreement with the
/// optimal cocharacter's parabolic when one is found.
pub fn verify_morozov(g: &LieAlgebra, trace: &TowerTrace, cfg: &RadicalConfig, kcfg: &KempfConfig) -> VerificationReport {
    let mut checks = Vec::new();
    let Some((u, q)) = trace.limit() else {
        checks.push(check(CHECK_FIXED_POINT, CheckStatus::Undetermined, Some("empty trace".into())));
        return VerificationReport { checks };
    };
    if trace.status != TowerStatus::Stabilized {
        checks.push(check(
            CHECK_FIXED_POINT,
            CheckStatus::Undetermined,
            Some(format!("tower status {:?}", trace.status)),
        ));
        return VerificationReport { checks };
    }
    let normal = g.normalizer(u) == *q;
    let rad_p = radicals(g, q, cfg);
    match &rad_p {
        Ok(r) => {
            checks.push(check(CHECK_FIXED_POINT, CheckStatus::from_bool(normal && r.rad_p == *u), None));
        }
        Err(e) => checks.push(check(CHECK_FIXED_POINT, CheckStatus::Undetermined, Some(e.to_string()))),
    }
    let verdict = parabolic::detect_parabolic(g, q, cfg.seed);
    let pstatus = match verdict.status {
        ParabolicStatus::Parabolic => CheckStatus::Pass,
        ParabolicStatus::NotParabolic => CheckStatus::Fail,
        ParabolicStatus::Undetermined => CheckStatus::Undetermined,
    };
    checks.push(check(
        CHECK_PARABOLIC,
        pstatus,
        verdict.failure_reason.map(|r| format!("{r:?}")),
    ));
    match &rad_p {
        Ok(r) => checks.push(check(CHECK_RAD_P, CheckStatus::from_bool(r.rad_p == *u), None)),
        Err(e) => checks.push(check(CHECK_RAD_P, CheckStatus::Undetermined, Some(e.to_string()))),
    }
    if u.is_zero() {
        checks.push(check(CHECK_KEMPF, CheckStatus::from_bool(q.is_full()), Some("u = 0".into())));
    } else {
        match kempf::optimize(g, u, kcfg) {
            Ok(cert) => {
                let (pg, _, _) = kempf::parabolic_from_cochar(g, &cert.lambda);
                checks.push(check(
                    CHECK_KEMPF,
                    CheckStatus::from_bool(pg == *q),
                    Some(format!("lambda = {:?}", cert.lambda.coords)),
                ));
            }
            Err(e) => checks.push(check(CHECK_KEMPF, CheckStatus::Undetermined, Some(e.to_string()))),
        }
    }
    VerificationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::Family;

    #[test]
    fn e13_seed_reaches_borel() {
        let g = LieAlgebra::build(Family::Sl, 3, 5).unwrap();
        let fr = g.frame().unwrap();
        let u0 = g.span([g.named("e13").unwrap()]);
        let cfg = RadicalConfig::default();
        let (q, rep) = tower_step(&g, &u0, &cfg).unwrap();
        assert_eq!(q, fr.borel(5));
        assert_eq!(rep.rad_p, fr.positive_nilradical(5));
        let t = run_tower(&g, &u0, None, &cfg).unwrap();
        assert_eq!(t.status, TowerStatus::Stabilized);
        assert!(t.stabilized_at.unwrap() <= 2);
        let (u, q) = t.limit().unwrap();
        assert_eq!(*u, fr.positive_nilradical(5));
        assert_eq!(*q, fr.borel(5));
        let rep = verify_morozov(&g, &t, &cfg, &KempfConfig::default());
        assert!(rep.all_pass(), "{rep:?}");
    }

    #[test]
    fn zero_seed() {
        let g = LieAlgebra::build(Family::Sl, 3, 5).unwrap();
        let t = run_tower(&g, &g.zero_space(), None, &RadicalConfig::default()).unwrap();
        let (u, q) = t.limit().unwrap();
        assert!(u.is_zero());
        assert!(q.is_full());
        assert_eq!(t.stabilized_at, Some(1));
    }

    #[test]
    fn bad_seeds_rejected() {
        let g = LieAlgebra::build(Family::Sl, 2, 5).unwrap();
        let h = g.span([g.named("h1").unwrap()]);
        assert!(run_tower(&g, &h, None, &RadicalConfig::default()).is_err());
        let ef = g.span([g.named("e12").unwrap(), g.named("e21").unwrap()]);
        assert!(run_tower(&g, &ef, None, &RadicalConfig::default()).is_err());
    }
}
