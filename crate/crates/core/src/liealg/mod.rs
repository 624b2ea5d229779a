//! Restricted Lie algebras over GF(p) given by structure constants, usually
//! with a matrix realization that supplies the p-power map.
//!
//! Elements are plain coordinate vectors (`Vec<u32>` of length `dim`) and
//! subspaces are [`Subspace`]s of `GF(p)^dim`.

mod build;
mod json;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::{add, axpy, inv, inv_factorial, mul, neg, FieldMatrix, Subspace};
use crate::rootdata::{CartanType, RootDatum};

pub use json::{subspace_from_json, subspace_to_json, AlgebraJson, FamilyJson, RealizationJson};

/// Coordinates of an element in the algebra's basis.
pub type Element = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gl,
    Sl,
    Pgl,
    Sp,
    So,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Gl => "gl",
            Family::Sl => "sl",
            Family::Pgl => "pgl",
            Family::Sp => "sp",
            Family::So => "so",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Family::Gl),
            "sl" => Ok(Family::Sl),
            "pgl" => Ok(Family::Pgl),
            "sp" => Ok(Family::Sp),
            "so" => Ok(Family::So),
            _ => Err(Error::Unsupported(format!("family {s:?}"))),
        }
    }
}

/// Linear solver recovering basis coordinates from a matrix.
#[derive(Clone, Debug)]
struct Solver {
    echelon: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    transform: Vec<Vec<u32>>,
}

impl Solver {
    /// `rows` must be linearly independent.
    fn new(p: u32, rows: &[Vec<u32>]) -> Option<Self> {
        let m = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        let aug: Vec<Vec<u32>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.clone();
                v.extend((0..m).map(|j| u32::from(i == j)));
                v
            })
            .collect();
        let (r, pivots) = FieldMatrix::from_residue_rows(p, width + m, &aug).rref_with_pivots();
        if pivots.len() < m || pivots.iter().any(|&c| c >= width) {
            return None;
        }
        Some(Self {
            echelon: (0..m).map(|i| r.row(i)[..width].to_vec()).collect(),
            pivots,
            transform: (0..m).map(|i| r.row(i)[width..].to_vec()).collect(),
        })
    }

    fn solve(&self, p: u32, v: &[u32]) -> Option<Vec<u32>> {
        let mut rest = v.to_vec();
        let mut out = vec![0u32; self.transform.len()];
        for ((row, &c), t) in self.echelon.iter().zip(&self.pivots).zip(&self.transform) {
            let d = rest[c];
            if d != 0 {
                axpy(&mut rest, neg(d, p), row, p);
                axpy(&mut out, d, t, p);
            }
        }
        rest.iter().all(|&x| x == 0).then_some(out)
    }
}

/// A faithful matrix realization, or one modulo scalar matrices.
#[derive(Clone, Debug)]
pub struct Realization {
    n: usize,
    mats: Vec<FieldMatrix>,
    mod_scalars: bool,
    solver: Solver,
}

impl Realization {
    pub fn new(p: u32, n: usize, mats: Vec<FieldMatrix>, mod_scalars: bool) -> Result<Self> {
        for m in &mats {
            if m.rows() != n || m.cols() != n || m.modulus() != p {
                return Err(Error::InvalidInput("realization matrix has wrong shape".into()));
            }
        }
        let mut rows: Vec<Vec<u32>> = mats.iter().map(FieldMatrix::flatten).collect();
        if mod_scalars {
            rows.push(FieldMatrix::identity(p, n).flatten());
        }
        let solver = Solver::new(p, &rows).ok_or_else(|| {
            Error::InvalidInput("realization matrices are linearly dependent".into())
        })?;
        Ok(Self {
            n,
            mats,
            mod_scalars,
            solver,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mats(&self) -> &[FieldMatrix] {
        &self.mats
    }

    pub fn mod_scalars(&self) -> bool {
        self.mod_scalars
    }

    fn p(&self) -> u32 {
        self.mats.first().map_or(2, FieldMatrix::modulus)
    }

    pub fn to_matrix(&self, x: &[u32]) -> FieldMatrix {
        let mut m = FieldMatrix::zero(self.p(), self.n, self.n);
        for (c, b) in x.iter().zip(&self.mats) {
            m.add_scaled(*c, b);
        }
        m
    }

    /// Coordinates of a matrix (of its class, modulo scalars) in the basis.
    pub fn coords_of(&self, m: &FieldMatrix) -> Option<Vec<u32>> {
        let mut c = self.solver.solve(self.p(), &m.flatten())?;
        c.truncate(self.mats.len());
        Some(c)
    }

    /// True when the matrix vanishes in the realization (is zero, or scalar
    /// when working modulo scalars).
    pub fn is_trivial(&self, m: &FieldMatrix) -> bool {
        if self.mod_scalars {
            m.is_scalar()
        } else {
            m.is_zero()
        }
    }
}

impl PartialEq for Realization {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.mats == other.mats && self.mod_scalars == other.mod_scalars
    }
}

/// Torus and root data attached to a built classical algebra.
///
/// Every basis vector of a built algebra is a weight vector for the diagonal
/// torus; `weights[i]` is its weight in ε-coordinates (zero on the torus).
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    pub family: Family,
    pub n: usize,
    pub cartan_type: CartanType,
    pub weights: Vec<Vec<i64>>,
}

impl Frame {
    pub fn root_datum(&self) -> RootDatum {
        RootDatum::build(self.cartan_type).expect("frame types are constructive")
    }

    fn is_zero_weight(w: &[i64]) -> bool {
        w.iter().all(|&x| x == 0)
    }

    pub fn torus_indices(&self) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&i| Self::is_zero_weight(&self.weights[i]))
            .collect()
    }

    /// Index of the basis vector spanning the root space of `root`.
    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.weights.iter().position(|w| w == root)
    }

    /// Span of the torus together with the root spaces of `roots`.
    pub fn torus_plus(&self, p: u32, roots: &[Vec<i64>]) -> Subspace {
        let mut idx = self.torus_indices();
        idx.extend(roots.iter().filter_map(|r| self.root_index(r)));
        Subspace::coordinate(p, self.weights.len(), idx)
    }

    pub fn root_spaces(&self, p: u32, roots: &[Vec<i64>]) -> Subspace {
        Subspace::coordinate(
            p,
            self.weights.len(),
            roots.iter().filter_map(|r| self.root_index(r)),
        )
    }

    pub fn torus(&self, p: u32) -> Subspace {
        Subspace::coordinate(p, self.weights.len(), self.torus_indices())
    }

    /// The upper-triangular Borel subalgebra.
    pub fn borel(&self, p: u32) -> Subspace {
        self.torus_plus(p, &self.root_datum().positive_vectors())
    }

    /// The nilradical of the upper-triangular Borel.
    pub fn positive_nilradical(&self, p: u32) -> Subspace {
        self.root_spaces(p, &self.root_datum().positive_vectors())
    }
}

/// A Lie algebra over GF(p) with dense structure constants.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    p: u32,
    dim: usize,
    labels: Vec<String>,
    /// `sc[(i*dim + j)*dim + k]` is the `k`-th coordinate of `[b_i, b_j]`.
    sc: Vec<u32>,
    realization: Option<Realization>,
    frame: Option<Frame>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.dim == other.dim
            && self.labels == other.labels
            && self.sc == other.sc
            && self.realization == other.realization
    }
}

impl LieAlgebra {
    /// Builds an algebra from dense structure constants, checking
    /// antisymmetry, the Jacobi identity on basis triples and, if present,
    /// agreement with the realization.
    pub fn from_parts(
        p: u32,
        labels: Vec<String>,
        sc: Vec<u32>,
        realization: Option<Realization>,
    ) -> Result<Self> {
        crate::gfp::check_modulus(p)?;
        let dim = labels.len();
        if sc.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: sc.len(),
            });
        }
        if let Some(r) = &realization {
            if r.mats.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.mats.len(),
                });
            }
        }
        let alg = Self {
            p,
            dim,
            labels,
            sc,
            realization,
            frame: None,
        };
        alg.check_axioms()?;
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<()> {
        let (d, p) = (self.dim, self.p);
        for i in 0..d {
            for j in 0..d {
                let a = self.sc(i, j);
                let b = self.sc(j, i);
                if a.iter().zip(b).any(|(x, y)| add(*x, *y, p) != 0) {
                    return Err(Error::InvalidInput(format!("bracket not antisymmetric at ({i},{j})")));
                }
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let mut s = self.bracket(self.sc(i, j), &unit(d, k));
                    let t = self.bracket(self.sc(j, k), &unit(d, i));
                    let u = self.bracket(self.sc(k, i), &unit(d, j));
                    axpy(&mut s, 1, &t, p);
                    axpy(&mut s, 1, &u, p);
                    if s.iter().any(|&x| x != 0) {
                        return Err(Error::InvalidInput(format!("Jacobi fails on ({i},{j},{k})")));
                    }
                }
            }
        }
        if let Some(r) = &self.realization {
            for i in 0..d {
                for j in 0..d {
                    let m = r.mats[i].commutator(&r.mats[j]);
                    match r.coords_of(&m) {
                        Some(c) if c == self.sc(i, j) => {}
                        _ => {
                            return Err(Error::InvalidInput(format!(
                                "realization disagrees with structure constants at ({i},{j})"
                            )))
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn realization(&self) -> Option<&Realization> {
        self.realization.as_ref()
    }

    pub fn frame(&self) -> Option<&Frame> {
        self.frame.as_ref()
    }

    pub fn is_realized(&self) -> bool {
        self.realization.is_some()
    }

    /// Realized faithfully (not modulo scalars).
    pub fn is_faithful(&self) -> bool {
        self.realization.as_ref().is_some_and(|r| !r.mod_scalars)
    }

    fn realized(&self) -> Result<&Realization> {
        self.realization.as_ref().ok_or(Error::Unrealized)
    }

    /// Coordinates of `[b_i, b_j]`.
    pub fn sc(&self, i: usize, j: usize) -> &[u32] {
        let s = (i * self.dim + j) * self.dim;
        &self.sc[s..s + self.dim]
    }

    pub fn zero(&self) -> Element {
        vec![0; self.dim]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        unit(self.dim, i)
    }

    /// Element with the given label.
    pub fn named(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label).map(|i| unit(self.dim, i))
    }

    pub fn element(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: coords.len(),
            });
        }
        Ok(coords.iter().map(|&c| crate::gfp::reduce(c, self.p)).collect())
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Element {
        (0..self.dim).map(|_| rng.gen_range(0..self.p)).collect()
    }

    /// Uniform random element of a subspace.
    pub fn random_in<R: Rng + ?Sized>(&self, s: &Subspace, rng: &mut R) -> Element {
        let c: Vec<u32> = (0..s.dim()).map(|_| rng.gen_range(0..self.p)).collect();
        s.combine(&c)
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.p, self.dim)
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.p, self.dim)
    }

    pub fn span(&self, vectors: impl IntoIterator<Item = Element>) -> Subspace {
        Subspace::span(self.p, self.dim, vectors)
    }

    pub fn add(&self, x: &[u32], y: &[u32]) -> Element {
        x.iter().zip(y).map(|(a, b)| add(*a, *b, self.p)).collect()
    }

    pub fn scale(&self, c: u32, x: &[u32]) -> Element {
        x.iter().map(|a| mul(c, *a, self.p)).collect()
    }

    pub fn sub(&self, x: &[u32], y: &[u32]) -> Element {
        x.iter()
            .zip(y)
            .map(|(a, b)| crate::gfp::sub(*a, *b, self.p))
            .collect()
    }

    pub fn bracket(&self, x: &[u32], y: &[u32]) -> Element {
        let (d, p) = (self.dim, self.p);
        let mut out = vec![0u32; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 || i == j {
                    continue;
                }
                axpy(&mut out, mul(xi, yj, p), self.sc(i, j), p);
            }
        }
        out
    }

    /// Bracket with a length check on both arguments.
    pub fn try_bracket(&self, x: &[u32], y: &[u32]) -> Result<Element> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        Ok(self.bracket(x, y))
    }

    /// Matrix of `ad x` acting on coordinate columns.
    pub fn ad(&self, x: &[u32]) -> FieldMatrix {
        let (d, p) = (self.dim, self.p);
        let mut m = FieldMatrix::zero(p, d, d);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for j in 0..d {
                for (k, &c) in self.sc(i, j).iter().enumerate() {
                    if c != 0 {
                        m.set(k, j, add(m.get(k, j), mul(xi, c, p), p));
                    }
                }
            }
        }
        m
    }

    pub fn to_matrix(&self, x: &[u32]) -> Result<FieldMatrix> {
        Ok(self.realized()?.to_matrix(x))
    }

    /// Element represented by a matrix, if it lies in the algebra.
    pub fn from_matrix(&self, m: &FieldMatrix) -> Result<Element> {
        self.realized()?.coords_of(m).ok_or(Error::NotInAlgebra)
    }

    /// `x^{[p]}`: the matrix p-th power (its class, modulo scalars).
    pub fn p_power(&self, x: &[u32]) -> Result<Element> {
        let r = self.realized()?;
        let m = r.to_matrix(x).pow(self.p as u64);
        r.coords_of(&m).ok_or(Error::NotInAlgebra)
    }

    /// `x^{[p]^m}`.
    pub fn p_power_iter(&self, x: &[u32], m: usize) -> Result<Element> {
        let mut y = x.to_vec();
        for _ in 0..m {
            y = self.p_power(&y)?;
        }
        Ok(y)
    }

    /// Whether `x^{[p]^m} = 0` for some `m`.
    pub fn is_p_nilpotent(&self, x: &[u32]) -> Result<bool> {
        let r = self.realized()?;
        let mut m = r.to_matrix(x);
        // p^steps ≥ n suffices: a matrix whose p^k-th power is scalar for
        // some k already has scalar p^k-th power once p^k ≥ n.
        let mut reach = 1usize;
        loop {
            if r.is_trivial(&m) {
                return Ok(true);
            }
            if reach >= r.n.max(2) * 2 {
                return Ok(false);
            }
            m = m.pow(self.p as u64);
            reach = reach.saturating_mul(self.p as usize);
        }
    }

    /// The correction term `W(x, y)` of the Jacobson formula, for which
    /// `(x+y)^{[p]} = x^{[p]} + y^{[p]} − W(x,y)`.
    ///
    /// `W(x,y) = Σ_{0<r<p} (1/r) Σ ad(z_1)···ad(z_{p−1})(x)`, the inner sum over
    /// words in `{x, y}` of length `p−1` containing `y` exactly `r` times.
    pub fn jacobson_defect(&self, x: &[u32], y: &[u32]) -> Result<Element> {
        self.realized()?;
        let p = self.p;
        let pu = p as usize;
        let (adx, ady) = (self.ad(x), self.ad(y));
        // level[r] = sum of all words with r letters y applied to x
        let mut level = vec![x.to_vec()];
        for k in 1..pu {
            let mut next = vec![vec![0u32; self.dim]; k + 1];
            for (r, v) in level.iter().enumerate() {
                let a = adx.mul_vec(v);
                axpy(&mut next[r], 1, &a, p);
                let b = ady.mul_vec(v);
                axpy(&mut next[r + 1], 1, &b, p);
            }
            level = next;
        }
        let mut w = vec![0u32; self.dim];
        for (r, v) in level.iter().enumerate().skip(1) {
            axpy(&mut w, inv(r as u32, p), v, p);
        }
        Ok(w)
    }

    /// `Σ_{0≤i<p} x^i/i!` for a nilpotent realizing matrix of order `< p`.
    pub fn exp_trunc(&self, x: &[u32]) -> Result<FieldMatrix> {
        let r = self.realized()?;
        if r.mod_scalars {
            return Err(Error::Unsupported(
                "exponential needs a faithful realization".into(),
            ));
        }
        let m = r.to_matrix(x);
        match m.nilpotency_order() {
            None => Err(Error::NotPNilpotent),
            Some(k) if k >= self.p as usize => Err(Error::NilpotencyOrderTooLarge {
                order: k,
                p: self.p,
            }),
            Some(_) => Ok(truncated_exp(&m)),
        }
    }

    /// `Σ_{0≤i<p} ad(x)^i/i!`, with no nilpotency requirement.
    pub fn exp_ad_trunc(&self, x: &[u32]) -> FieldMatrix {
        truncated_exp(&self.ad(x))
    }

    /// Whether conjugation by `exp(x)` agrees with the truncated `exp(ad x)`
    /// on every basis vector.
    pub fn ad_exp_compat(&self, x: &[u32]) -> Result<bool> {
        let r = self.realized()?;
        let e = self.exp_trunc(x)?;
        let einv = e.inverse().expect("unipotent matrices are invertible");
        let ead = self.exp_ad_trunc(x);
        for j in 0..self.dim {
            let conj = e.mul(&r.mats[j]).mul(&einv);
            let col: Vec<u32> = (0..self.dim).map(|k| ead.get(k, j)).collect();
            match r.coords_of(&conj) {
                Some(c) if c == col => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Gram matrix of the Killing form on the basis.
    pub fn killing_matrix(&self) -> FieldMatrix {
        let d = self.dim;
        let ads: Vec<FieldMatrix> = (0..d).map(|i| self.ad(&unit(d, i))).collect();
        let mut g = FieldMatrix::zero(self.p, d, d);
        for i in 0..d {
            for j in i..d {
                let t = ads[i].mul(&ads[j]).trace();
                g.set(i, j, t);
                g.set(j, i, t);
            }
        }
        g
    }

    /// `κ(x, y) = tr(ad x · ad y)`.
    pub fn killing_form(&self, x: &[u32], y: &[u32]) -> u32 {
        self.ad(x).mul(&self.ad(y)).trace()
    }

    pub fn killing_nondegenerate(&self) -> bool {
        self.killing_matrix().rank() == self.dim
    }

    /// Orthogonal complement of `s` for the Killing form.
    pub fn orthogonal(&self, s: &Subspace) -> Subspace {
        self.orthogonal_with(&self.killing_matrix(), s)
    }

    pub fn orthogonal_with(&self, gram: &FieldMatrix, s: &Subspace) -> Subspace {
        if s.is_zero() {
            return self.full();
        }
        s.to_matrix().mul(gram).kernel()
    }

    /// Span of all brackets `[a, b]`, `a ∈ s`, `b ∈ t`.
    pub fn bracket_spaces(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut out = Vec::new();
        for a in s.basis() {
            for b in t.basis() {
                out.push(self.bracket(a, b));
            }
        }
        self.span(out)
    }

    pub fn is_subalgebra(&self, u: &Subspace) -> bool {
        self.brackets_into(u, u, u)
    }

    /// Whether `[s, t] ⊆ target`.
    fn brackets_into(&self, s: &Subspace, t: &Subspace, target: &Subspace) -> bool {
        s.basis()
            .iter()
            .all(|a| t.basis().iter().all(|b| target.contains(&self.bracket(a, b))))
    }

    /// Whether `v` is an ideal of the subalgebra `h`.
    pub fn is_ideal(&self, h: &Subspace, v: &Subspace) -> bool {
        h.contains_subspace(v) && self.brackets_into(h, v, v)
    }

    /// `N_g(u) = {x : [x, u] ⊆ u}`, solved as one linear system.
    pub fn normalizer(&self, u: &Subspace) -> Subspace {
        if u.is_zero() || u.is_full() {
            return self.full();
        }
        let ann = u.annihilator();
        let mut rows = Vec::new();
        for b in u.basis() {
            rows.extend(ann.mul(&self.ad(b)).row_vecs());
        }
        FieldMatrix::from_residue_rows(self.p, self.dim, &rows).kernel()
    }

    /// `{x ∈ h : [x, u] ⊆ u}`.
    pub fn normalizer_in(&self, h: &Subspace, u: &Subspace) -> Subspace {
        self.normalizer(u).intersection(h).expect("same ambient")
    }

    /// `{x : [x, u] = 0}`.
    pub fn centralizer(&self, u: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for b in u.basis() {
            rows.extend(self.ad(b).row_vecs());
        }
        if rows.is_empty() {
            return self.full();
        }
        FieldMatrix::from_residue_rows(self.p, self.dim, &rows).kernel()
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.full())
    }

    /// Least subalgebra containing the generators.
    pub fn subalgebra_closure(&self, gens: &[Element]) -> Subspace {
        let mut s = self.span(gens.iter().cloned());
        loop {
            let next = s.sum(&self.bracket_spaces(&s, &s)).expect("same ambient");
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// `u ⊇ [u,u] ⊇ [[u,u],[u,u]] ⊇ …` until it stabilizes.
    pub fn derived_series(&self, u: &Subspace) -> Vec<Subspace> {
        let mut out = vec![u.clone()];
        loop {
            let last = out.last().expect("nonempty");
            let next = self.bracket_spaces(last, last);
            if &next == last {
                return out;
            }
            out.push(next);
        }
    }

    /// `u ⊇ [u,u] ⊇ [u,[u,u]] ⊇ …` until it stabilizes.
    pub fn lower_central_series(&self, u: &Subspace) -> Vec<Subspace> {
        let mut out = vec![u.clone()];
        loop {
            let last = out.last().expect("nonempty");
            let next = self.bracket_spaces(u, last);
            if &next == last {
                return out;
            }
            out.push(next);
        }
    }

    pub fn is_solvable(&self, u: &Subspace) -> bool {
        self.derived_series(u).last().is_some_and(Subspace::is_zero)
    }

    pub fn is_nilpotent(&self, u: &Subspace) -> bool {
        self.lower_central_series(u).last().is_some_and(Subspace::is_zero)
    }

    pub fn is_abelian(&self, u: &Subspace) -> bool {
        self.bracket_spaces(u, u).is_zero()
    }

    /// Largest ideal of the subalgebra `h` contained in `v`.
    pub fn largest_ideal_inside(&self, h: &Subspace, v: &Subspace) -> Subspace {
        let mut w = v.intersection(h).expect("same ambient");
        loop {
            if w.is_zero() {
                return w;
            }
            let ann = w.annihilator();
            let mut rows = ann.row_vecs();
            for b in h.basis() {
                rows.extend(ann.mul(&self.ad(b)).row_vecs());
            }
            let next = if rows.is_empty() {
                w.clone()
            } else {
                FieldMatrix::from_residue_rows(self.p, self.dim, &rows).kernel()
            };
            if next == w {
                return w;
            }
            w = next;
        }
    }

    /// The subalgebra `h` as an algebra in its own right, in the RREF basis
    /// of `h`; coordinates of `x ∈ h` are `h.coordinates(x)`.
    pub fn subalgebra(&self, h: &Subspace) -> Result<LieAlgebra> {
        if h.ambient_dim() != self.dim || h.modulus() != self.p {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: h.ambient_dim(),
            });
        }
        if !self.is_subalgebra(h) {
            return Err(Error::Precondition("subspace is not a subalgebra".into()));
        }
        let d = h.dim();
        let mut sc = vec![0u32; d * d * d];
        for i in 0..d {
            for j in 0..d {
                let b = self.bracket(&h.basis()[i], &h.basis()[j]);
                let c = h.coordinates(&b).expect("closed under bracket");
                sc[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(&c);
            }
        }
        let labels = h
            .basis()
            .iter()
            .map(|v| self.describe(v))
            .collect();
        let realization = match &self.realization {
            Some(r) => Some(Realization::new(
                self.p,
                r.n,
                h.basis().iter().map(|v| r.to_matrix(v)).collect(),
                r.mod_scalars,
            )?),
            None => None,
        };
        Ok(LieAlgebra {
            p: self.p,
            dim: d,
            labels,
            sc,
            realization,
            frame: None,
        })
    }

    /// The quotient by an ideal `v`, with the map data needed to push and
    /// pull subspaces.
    pub fn quotient(&self, v: &Subspace) -> Result<(LieAlgebra, QuotientMap)> {
        if !self.is_ideal(&self.full(), v) {
            return Err(Error::Precondition("quotient by a non-ideal".into()));
        }
        let pivots = v.pivots();
        let keep: Vec<usize> = (0..self.dim).filter(|i| !pivots.contains(i)).collect();
        let map = QuotientMap {
            p: self.p,
            ideal: v.clone(),
            keep,
        };
        let d = map.keep.len();
        let mut sc = vec![0u32; d * d * d];
        for a in 0..d {
            for b in 0..d {
                let br = self.bracket(&map.lift(&unit(d, a)), &map.lift(&unit(d, b)));
                sc[(a * d + b) * d..(a * d + b + 1) * d].copy_from_slice(&map.project(&br));
            }
        }
        let labels = map.keep.iter().map(|&i| format!("[{}]", self.labels[i])).collect();
        let q = LieAlgebra {
            p: self.p,
            dim: d,
            labels,
            sc,
            realization: None,
            frame: None,
        };
        Ok((q, map))
    }

    /// Human-readable form of an element, e.g. `e12 + 2*h1`.
    pub fn describe(&self, x: &[u32]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                if c == 1 {
                    self.labels[i].clone()
                } else {
                    format!("{c}*{}", self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Image of a subspace of the subalgebra `h` (in `h`'s coordinates) in
    /// the ambient coordinates.
    pub fn embed_from(&self, h: &Subspace, s: &Subspace) -> Subspace {
        self.span(s.basis().iter().map(|c| h.combine(c)))
    }

    /// A subspace of `h ⊆ self` in the coordinates of `self.subalgebra(h)`.
    pub fn restrict_to(&self, h: &Subspace, s: &Subspace) -> Result<Subspace> {
        let vecs: Option<Vec<Vec<u32>>> = s.basis().iter().map(|v| h.coordinates(v)).collect();
        let vecs = vecs.ok_or_else(|| Error::Precondition("subspace not inside h".into()))?;
        Ok(Subspace::span(self.p, h.dim(), vecs))
    }
}

/// Projection `g → g/v` using the non-pivot coordinates of `v` as a basis
/// of a complement.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    p: u32,
    ideal: Subspace,
    keep: Vec<usize>,
}

impl QuotientMap {
    pub fn project(&self, x: &[u32]) -> Element {
        let mut r = x.to_vec();
        for (row, piv) in self.ideal.basis().iter().zip(self.ideal.pivots()) {
            let c = r[piv];
            axpy(&mut r, neg(c, self.p), row, self.p);
        }
        self.keep.iter().map(|&i| r[i]).collect()
    }

    pub fn lift(&self, y: &[u32]) -> Element {
        let mut x = vec![0u32; self.ideal.ambient_dim()];
        for (&i, &c) in self.keep.iter().zip(y) {
            x[i] = c;
        }
        x
    }

    /// Full preimage of a subspace of the quotient.
    pub fn pull_back(&self, s: &Subspace) -> Subspace {
        let lifted = Subspace::span(
            self.p,
            self.ideal.ambient_dim(),
            s.basis().iter().map(|v| self.lift(v)),
        );
        lifted.sum(&self.ideal).expect("same ambient")
    }

    pub fn push_forward(&self, s: &Subspace) -> Subspace {
        Subspace::span(self.p, self.keep.len(), s.basis().iter().map(|v| self.project(v)))
    }
}

pub(crate) fn unit(d: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

fn truncated_exp(m: &FieldMatrix) -> FieldMatrix {
    let p = m.modulus();
    let n = m.rows();
    let mut out = FieldMatrix::identity(p, n);
    let mut power = FieldMatrix::identity(p, n);
    for i in 1..p as usize {
        power = power.mul(m);
        if power.is_zero() {
            break;
        }
        out.add_scaled(inv_factorial(i, p), &power);
    }
    out
}

#[cfg(test)]
mod tests;
