//! Subspace input files and the built-in pgl_3 counterexamples at p = 3.
//!
//! A subspace file names its ambient algebra (optional) and lists spanning
//! elements as labels, coordinate vectors or matrices:
//!
//! ```json
//! { "family": "sl", "n": 3, "p": 5, "labels": ["e13"] }
//! ```
//!
//! With `"closure": true` the generated subalgebra is taken instead of the span.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::{FieldMatrix, Subspace};
use crate::liealg::{Element, Family, LieAlgebra};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vectors: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub closure: bool,
}

impl SubspaceInput {
    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// The ambient algebra named by the file, if it names one completely.
    pub fn algebra(&self) -> Option<Result<LieAlgebra>> {
        match (self.family, self.n, self.p) {
            (Some(f), Some(n), Some(p)) => Some(LieAlgebra::build(f, n, p)),
            (None, None, None) => None,
            _ => Some(Err(Error::InvalidInput("family, n and p must be given together".into()))),
        }
    }

    pub fn elements(&self, g: &LieAlgebra) -> Result<Vec<Element>> {
        let mut out = Vec::new();
        for l in &self.labels {
            out.push(
                g.named(l)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown basis label {l:?}")))?,
            );
        }
        for v in &self.vectors {
            out.push(g.element(v)?);
        }
        for (k, m) in self.matrices.iter().enumerate() {
            let fm = FieldMatrix::from_rows(g.p(), m)
                .map_err(|e| Error::InvalidInput(format!("matrices[{k}]: {e}")))?;
            out.push(
                g.from_matrix(&fm)
                    .map_err(|e| Error::InvalidInput(format!("matrices[{k}]: {e}")))?,
            );
        }
        Ok(out)
    }

    pub fn resolve(&self, g: &LieAlgebra) -> Result<Subspace> {
        let els = self.elements(g)?;
        Ok(if self.closure {
            g.subalgebra_closure(&els)
        } else {
            g.span(els)
        })
    }
}

fn unit_matrix(i: usize, j: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; 3]; 3];
    m[i][j] = 1;
    m
}

fn combo(terms: &[(i64, usize, usize)]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; 3]; 3];
    for &(c, i, j) in terms {
        m[i][j] += c;
    }
    m
}

fn pgl3_input(matrices: Vec<Vec<Vec<i64>>>, closure: bool) -> SubspaceInput {
    SubspaceInput {
        family: Some(Family::Pgl),
        n: Some(3),
        p: Some(3),
        matrices,
        closure,
        ..Default::default()
    }
}

pub fn pgl3() -> LieAlgebra {
    LieAlgebra::build(Family::Pgl, 3, 3).expect("pgl3 at p = 3 builds")
}

/// Matrices with trace 0, zero `(3,1)` entry and `(3,2)` entry equal to
/// `t` times the `(2,1)` entry, taken modulo scalars.
///
/// The trace condition is what makes this a subalgebra: bracketing the
/// diagonal with `E21 + t·E32` needs `a + g = 2e`, i.e. trace 0 in
/// characteristic 3.
pub fn ex1_input(t: i64) -> SubspaceInput {
    pgl3_input(
        vec![
            combo(&[(1, 0, 0), (-1, 1, 1)]),
            combo(&[(1, 1, 1), (-1, 2, 2)]),
            unit_matrix(0, 1),
            unit_matrix(0, 2),
            unit_matrix(1, 2),
            combo(&[(1, 1, 0), (t, 2, 1)]),
        ],
        false,
    )
}

pub const EX2_X: [[i64; 3]; 3] = [[0, 1, 0], [0, 0, 1], [0, 0, 0]];
pub const EX2_Y: [[i64; 3]; 3] = [[0, 0, 0], [1, 0, 0], [0, 2, 0]];

/// The subalgebra generated by `X` and `Y`.
pub fn ex2_generators_input() -> SubspaceInput {
    let to_vec = |m: [[i64; 3]; 3]| m.iter().map(|r| r.to_vec()).collect();
    pgl3_input(vec![to_vec(EX2_X), to_vec(EX2_Y)], true)
}

/// The pattern `[[a,b,c],[d,e,b],[g,-d,i]]` modulo scalars.
pub fn ex2_pattern_input() -> SubspaceInput {
    pgl3_input(
        vec![
            unit_matrix(0, 0),
            unit_matrix(1, 1),
            unit_matrix(2, 2),
            combo(&[(1, 0, 1), (1, 1, 2)]),
            unit_matrix(0, 2),
            combo(&[(1, 1, 0), (-1, 2, 1)]),
            unit_matrix(2, 0),
        ],
        false,
    )
}

/// The same pattern cut down to trace 0.
pub fn ex2_pattern_trace_zero_input() -> SubspaceInput {
    pgl3_input(
        vec![
            combo(&[(1, 0, 0), (-1, 2, 2)]),
            combo(&[(1, 1, 1), (-1, 2, 2)]),
            combo(&[(1, 0, 1), (1, 1, 2)]),
            unit_matrix(0, 2),
            combo(&[(1, 1, 0), (-1, 2, 1)]),
            unit_matrix(2, 0),
        ],
        false,
    )
}

pub fn sl3_e13_input() -> SubspaceInput {
    SubspaceInput {
        family: Some(Family::Sl),
        n: Some(3),
        p: Some(5),
        labels: vec!["e13".into()],
        ..Default::default()
    }
}

/// File names and contents of the shipped fixtures, in a fixed order.
pub fn shipped_fixtures() -> Vec<(&'static str, String)> {
    vec![
        ("pgl3_p3_ex1_t1.json", ex1_input(1).to_json_string()),
        ("pgl3_p3_ex1_t2.json", ex1_input(2).to_json_string()),
        ("pgl3_p3_ex2_generators.json", ex2_generators_input().to_json_string()),
        ("pgl3_p3_ex2_normaliser_pattern.json", ex2_pattern_input().to_json_string()),
        (
            "pgl3_p3_ex2_normaliser_trace0.json",
            ex2_pattern_trace_zero_input().to_json_string(),
        ),
        ("sl3_p5_e13.json", sl3_e13_input().to_json_string()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::{contains_borel, detect_parabolic, ParabolicStatus};

    #[test]
    fn ex1_is_a_subalgebra_containing_a_borel() {
        let g = pgl3();
        for t in [1, 2] {
            let q = ex1_input(t).resolve(&g).unwrap();
            assert_eq!(q.dim(), 5);
            assert!(g.is_subalgebra(&q));
            assert!(contains_borel(&g, &q).unwrap());
            let v = detect_parabolic(&g, &q, 0);
            assert_eq!(v.status, ParabolicStatus::NotParabolic, "{v:?}");
        }
    }

    #[test]
    fn ex2_normaliser() {
        let g = pgl3();
        let u = ex2_generators_input().resolve(&g).unwrap();
        assert!(g.is_subalgebra(&u));
        let n = g.normalizer(&u);
        let pat = ex2_pattern_input().resolve(&g).unwrap();
        let pat0 = ex2_pattern_trace_zero_input().resolve(&g).unwrap();
        assert_eq!(n, pat0);
        assert!(pat.contains_subspace(&n));
        assert_eq!(pat.dim(), 6);
        // Perfect of dimension 5: no Borel of the frame fits inside.
        assert_eq!(g.derived_series(&n).last().unwrap().dim(), 5);
        assert!(!contains_borel(&g, &n).unwrap());
    }

    #[test]
    fn inputs_round_trip() {
        for (_, s) in shipped_fixtures() {
            let i = SubspaceInput::from_json_str(&s).unwrap();
            assert_eq!(i.to_json_string(), s);
        }
        assert!(SubspaceInput::from_json_str(r#"{"lables":[]}"#).is_err());
    }
}
