use serde::{Deserialize, Serialize};

use super::{Family, LieAlgebra, Realization};
use crate::error::{Error, Result};
use crate::gfp::{FieldMatrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationJson {
    pub n: usize,
    pub mats: Vec<Vec<Vec<i64>>>,
    pub mod_scalars: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub name: Family,
    pub n: usize,
}

/// Wire form of an algebra. `sc` lists every nonzero structure constant as
/// `[i, j, k, c]`, meaning `[b_i, b_j]` has `c` as its `k`-th coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub p: u32,
    pub dim: usize,
    pub labels: Vec<String>,
    pub sc: Vec<[u64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<RealizationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyJson>,
}

impl LieAlgebra {
    pub fn to_json(&self) -> AlgebraJson {
        let d = self.dim;
        let mut sc = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, &c) in self.sc(i, j).iter().enumerate() {
                    if c != 0 {
                        sc.push([i as u64, j as u64, k as u64, c as u64]);
                    }
                }
            }
        }
        AlgebraJson {
            p: self.p,
            dim: d,
            labels: self.labels.clone(),
            sc,
            realization: self.realization.as_ref().map(|r| RealizationJson {
                n: r.n,
                mats: r.mats.iter().map(FieldMatrix::to_i64_rows).collect(),
                mod_scalars: r.mod_scalars,
            }),
            family: self.frame.as_ref().map(|f| FamilyJson {
                name: f.family,
                n: f.n,
            }),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    /// Rebuilds an algebra, re-verifying the axioms. When a family is named
    /// the data must agree with a fresh build, which restores the torus frame.
    pub fn from_json(j: &AlgebraJson) -> Result<Self> {
        if j.labels.len() != j.dim {
            return Err(Error::DimensionMismatch {
                expected: j.dim,
                found: j.labels.len(),
            });
        }
        let d = j.dim;
        let mut sc = vec![0u32; d * d * d];
        for e in &j.sc {
            let [i, jj, k, c] = *e;
            let (i, jj, k) = (i as usize, jj as usize, k as usize);
            if i >= d || jj >= d || k >= d {
                return Err(Error::InvalidInput(format!("sc index out of range: {e:?}")));
            }
            sc[(i * d + jj) * d + k] = (c % j.p as u64) as u32;
        }
        let realization = match &j.realization {
            None => None,
            Some(r) => {
                let mats = r
                    .mats
                    .iter()
                    .map(|m| {
                        if m.len() != r.n {
                            return Err(Error::InvalidInput("matrix row count".into()));
                        }
                        FieldMatrix::from_rows(j.p, m)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(Realization::new(j.p, r.n, mats, r.mod_scalars)?)
            }
        };
        let alg = LieAlgebra::from_parts(j.p, j.labels.clone(), sc, realization)?;
        match &j.family {
            None => Ok(alg),
            Some(f) => {
                let built = LieAlgebra::build(f.name, f.n, j.p)?;
                if built != alg {
                    return Err(Error::InvalidInput(format!(
                        "data does not match {}_{}",
                        f.name, f.n
                    )));
                }
                Ok(built)
            }
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

/// Subspace wire form: a list of coordinate vectors.
pub fn subspace_to_json(s: &Subspace) -> Vec<Vec<i64>> {
    s.as_i64()
}

pub fn subspace_from_json(alg: &LieAlgebra, vecs: &[Vec<i64>]) -> Result<Subspace> {
    Subspace::from_i64(alg.p(), alg.dim(), vecs)
}
