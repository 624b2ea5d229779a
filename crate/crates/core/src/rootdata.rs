//! Root systems of classical type and prime classification data.
//!
//! Types A–D are constructed explicitly in the usual ε-coordinates. The
//! exceptional types carry only the highest-root data needed for prime
//! classification and the Coxeter number.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A Cartan type such as `A2` or `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub kind: Kind,
    pub rank: usize,
}

impl CartanType {
    pub fn new(kind: Kind, rank: usize) -> Result<Self> {
        let ok = match kind {
            Kind::A => rank >= 1,
            Kind::B | Kind::C => rank >= 2,
            Kind::D => rank >= 3,
            Kind::E => (6..=8).contains(&rank),
            Kind::F => rank == 4,
            Kind::G => rank == 2,
        };
        if ok {
            Ok(Self { kind, rank })
        } else {
            Err(Error::InvalidRank {
                label: format!("{kind:?}"),
                rank,
            })
        }
    }

    pub fn is_constructive(&self) -> bool {
        matches!(self.kind, Kind::A | Kind::B | Kind::C | Kind::D)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().replace('_', "");
        let mut chars = s.chars();
        let k = chars.next().ok_or_else(|| Error::InvalidInput("empty type label".into()))?;
        let kind = match k.to_ascii_uppercase() {
            'A' => Kind::A,
            'B' => Kind::B,
            'C' => Kind::C,
            'D' => Kind::D,
            'E' => Kind::E,
            'F' => Kind::F,
            'G' => Kind::G,
            _ => return Err(Error::InvalidInput(format!("unknown type label {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad rank in type label {s:?}")))?;
        Self::new(kind, rank)
    }
}

/// A positive root with its coordinates in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositiveRoot {
    pub vector: Vec<i64>,
    pub coeffs: Vec<i64>,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootDatum {
    pub cartan_type: CartanType,
    /// Dimension of the ε-space the roots live in (`n+1` for `A_n`).
    pub ambient: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i64>>,
    pub positive: Vec<PositiveRoot>,
    pub highest_root_coeffs: Vec<i64>,
    pub highest_coroot_coeffs: Vec<i64>,
    pub cartan_matrix: Option<Vec<Vec<i64>>>,
}

fn unit(n: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = c;
    v
}

fn vadd(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn negv(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

/// Highest-root and highest-coroot coefficients of the exceptional types,
/// Bourbaki numbering.
fn exceptional_data(t: CartanType) -> (Vec<i64>, Vec<i64>) {
    match (t.kind, t.rank) {
        (Kind::E, 6) => (vec![1, 2, 2, 3, 2, 1], vec![1, 2, 2, 3, 2, 1]),
        (Kind::E, 7) => (vec![2, 2, 3, 4, 3, 2, 1], vec![2, 2, 3, 4, 3, 2, 1]),
        (Kind::E, 8) => (vec![2, 3, 4, 6, 5, 4, 3, 2], vec![2, 3, 4, 6, 5, 4, 3, 2]),
        (Kind::F, 4) => (vec![2, 3, 4, 2], vec![2, 3, 2, 1]),
        (Kind::G, 2) => (vec![3, 2], vec![1, 2]),
        _ => unreachable!("not an exceptional type"),
    }
}

impl RootDatum {
    pub fn build(t: CartanType) -> Result<Self> {
        if !t.is_constructive() {
            let (a, b) = exceptional_data(t);
            return Ok(Self {
                cartan_type: t,
                ambient: 0,
                simple_roots: vec![],
                roots: vec![],
                positive: vec![],
                highest_root_coeffs: a,
                highest_coroot_coeffs: b,
                cartan_matrix: None,
            });
        }
        let n = t.rank;
        let (ambient, simple, roots) = match t.kind {
            Kind::A => {
                let m = n + 1;
                let simple = (0..n).map(|i| vadd(&unit(m, i, 1), &unit(m, i + 1, -1))).collect();
                let mut roots = vec![];
                for i in 0..m {
                    for j in 0..m {
                        if i != j {
                            roots.push(vadd(&unit(m, i, 1), &unit(m, j, -1)));
                        }
                    }
                }
                (m, simple, roots)
            }
            Kind::B | Kind::C | Kind::D => {
                let mut simple: Vec<Vec<i64>> =
                    (0..n - 1).map(|i| vadd(&unit(n, i, 1), &unit(n, i + 1, -1))).collect();
                simple.push(match t.kind {
                    Kind::B => unit(n, n - 1, 1),
                    Kind::C => unit(n, n - 1, 2),
                    _ => vadd(&unit(n, n - 2, 1), &unit(n, n - 1, 1)),
                });
                let mut roots = vec![];
                for i in 0..n {
                    for j in i + 1..n {
                        for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            roots.push(vadd(&unit(n, i, si), &unit(n, j, sj)));
                        }
                    }
                    match t.kind {
                        Kind::B => {
                            roots.push(unit(n, i, 1));
                            roots.push(unit(n, i, -1));
                        }
                        Kind::C => {
                            roots.push(unit(n, i, 2));
                            roots.push(unit(n, i, -2));
                        }
                        _ => {}
                    }
                }
                (n, simple, roots)
            }
            _ => unreachable!(),
        };
        let positive = positive_roots(&simple, &roots);
        let highest = positive
            .iter()
            .max_by_key(|r| r.height())
            .expect("nonempty positive system")
            .clone();
        let theta_sq = dot(&highest.vector, &highest.vector);
        let highest_coroot_coeffs = simple
            .iter()
            .zip(&highest.coeffs)
            .map(|(a, &c)| c * dot(a, a) / theta_sq)
            .collect();
        let cartan = simple
            .iter()
            .map(|ai| simple.iter().map(|aj| 2 * dot(ai, aj) / dot(aj, aj)).collect())
            .collect();
        Ok(Self {
            cartan_type: t,
            ambient,
            simple_roots: simple,
            roots,
            positive,
            highest_root_coeffs: highest.coeffs,
            highest_coroot_coeffs,
            cartan_matrix: Some(cartan),
        })
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    /// `h = Σ a_i + 1`.
    pub fn coxeter_number(&self) -> i64 {
        self.highest_root_coeffs.iter().sum::<i64>() + 1
    }

    fn require_constructive(&self) -> Result<()> {
        if self.cartan_type.is_constructive() {
            Ok(())
        } else {
            Err(Error::TableOnly(self.cartan_type.to_string()))
        }
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.roots.iter().any(|r| r == v)
    }

    /// Simple-root coordinates of any root (negated for negative roots).
    pub fn simple_coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        self.positive.iter().find_map(|r| {
            if r.vector == v {
                Some(r.coeffs.clone())
            } else if r.vector == negv(v) {
                Some(negv(&r.coeffs))
            } else {
                None
            }
        })
    }

    pub fn is_positive(&self, v: &[i64]) -> bool {
        self.positive.iter().any(|r| r.vector == v)
    }

    /// Reflection of `v` in the hyperplane orthogonal to root `alpha`.
    pub fn reflect(&self, alpha: &[i64], v: &[i64]) -> Vec<i64> {
        let k = 2 * dot(v, alpha) / dot(alpha, alpha);
        v.iter().zip(alpha).map(|(x, a)| x - k * a).collect()
    }

    /// True when `Φ'` is closed under addition inside `Φ`.
    pub fn is_closed(&self, subset: &[Vec<i64>]) -> bool {
        let set: HashSet<&Vec<i64>> = subset.iter().collect();
        for a in subset {
            for b in subset {
                let s = vadd(a, b);
                if self.is_root(&s) && !set.contains(&s) {
                    return false;
                }
            }
        }
        true
    }

    /// True when `Φ' ∪ −Φ' = Φ`.
    pub fn covers(&self, subset: &[Vec<i64>]) -> bool {
        let set: HashSet<&Vec<i64>> = subset.iter().collect();
        self.roots
            .iter()
            .all(|r| set.contains(r) || set.contains(&negv(r)))
    }

    /// The `2^rank` standard parabolic subsets `Φ⁺ ∪ (−ℤJ ∩ Φ⁺)`, one for each
    /// subset `J` of simple roots, in binary order of `J`.
    pub fn parabolic_subsets(&self) -> Result<Vec<ParabolicSubset>> {
        self.require_constructive()?;
        let n = self.rank();
        let mut out = Vec::with_capacity(1 << n);
        for mask in 0u32..(1 << n) {
            let levi: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            out.push(self.standard_parabolic(&levi));
        }
        Ok(out)
    }

    pub fn standard_parabolic(&self, levi: &[usize]) -> ParabolicSubset {
        let mut roots: Vec<Vec<i64>> = self.positive.iter().map(|r| r.vector.clone()).collect();
        for r in &self.positive {
            let in_levi = r
                .coeffs
                .iter()
                .enumerate()
                .all(|(i, &c)| c == 0 || levi.contains(&i));
            if in_levi {
                roots.push(negv(&r.vector));
            }
        }
        ParabolicSubset {
            levi: levi.to_vec(),
            roots,
        }
    }

    pub fn positive_vectors(&self) -> Vec<Vec<i64>> {
        self.positive.iter().map(|r| r.vector.clone()).collect()
    }
}

/// A standard parabolic subset, labelled by the simple roots of its Levi part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicSubset {
    pub levi: Vec<usize>,
    pub roots: Vec<Vec<i64>>,
}

impl ParabolicSubset {
    /// Roots of the unipotent radical: those in `Φ'` whose negative is not.
    pub fn unipotent_roots(&self) -> Vec<Vec<i64>> {
        let set: HashSet<&Vec<i64>> = self.roots.iter().collect();
        self.roots
            .iter()
            .filter(|r| !set.contains(&negv(r)))
            .cloned()
            .collect()
    }
}

fn positive_roots(simple: &[Vec<i64>], roots: &[Vec<i64>]) -> Vec<PositiveRoot> {
    let all: HashSet<&Vec<i64>> = roots.iter().collect();
    let n = simple.len();
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut frontier: Vec<(Vec<i64>, Vec<i64>)> = simple
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), unit(n, i, 1)))
        .collect();
    while let Some((v, c)) = frontier.pop() {
        if seen.contains_key(&v) {
            continue;
        }
        seen.insert(v.clone(), c.clone());
        for (i, s) in simple.iter().enumerate() {
            let w = vadd(&v, s);
            if all.contains(&w) && !seen.contains_key(&w) {
                let mut cw = c.clone();
                cw[i] += 1;
                frontier.push((w, cw));
            }
        }
    }
    let mut out: Vec<PositiveRoot> = seen
        .into_iter()
        .map(|(vector, coeffs)| PositiveRoot { vector, coeffs })
        .collect();
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coeffs.cmp(&a.coeffs)));
    out
}

/// Flags classifying a prime relative to a root system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeClass {
    pub cartan_type: String,
    pub p: u64,
    pub is_torsion: bool,
    pub is_bad: bool,
    pub is_good: bool,
    pub is_very_good: bool,
    pub is_separably_good: bool,
    pub coxeter_number: i64,
}

/// Classifies `p` from the highest root and coroot coefficients: torsion when
/// `p` divides some `b_i`, bad when it divides some `a_i`, very good when good
/// and, in type `A_n`, `p ∤ n+1`.
pub fn classify_prime(rd: &RootDatum, p: u64) -> Result<PrimeClass> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let divides = |c: &[i64]| c.iter().any(|&x| (x as u64).is_multiple_of(p));
    let is_torsion = divides(&rd.highest_coroot_coeffs);
    let is_bad = divides(&rd.highest_root_coeffs);
    let is_good = !is_bad;
    let t = rd.cartan_type;
    let is_very_good = is_good && (t.kind != Kind::A || !(t.rank as u64 + 1).is_multiple_of(p));
    // Only type A separates separably good from good; the arithmetic
    // criterion stands in for separability of the simply connected cover.
    let is_separably_good = is_very_good;
    Ok(PrimeClass {
        cartan_type: t.to_string(),
        p,
        is_torsion,
        is_bad,
        is_good,
        is_very_good,
        is_separably_good,
        coxeter_number: rd.coxeter_number(),
    })
}

/// A condition on `p` as printed in the characteristic table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableCondition {
    Any,
    GreaterThan(u64),
    /// `p ∤ n+1`.
    NotDividingRankPlusOne,
}

impl TableCondition {
    pub fn holds(self, p: u64, rank: usize) -> bool {
        match self {
            TableCondition::Any => true,
            TableCondition::GreaterThan(k) => p > k,
            TableCondition::NotDividingRankPlusOne => !(rank as u64 + 1).is_multiple_of(p),
        }
    }
}

/// How the table prints the Coxeter number as a function of the rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoxeterEntry {
    /// `h = n`.
    Rank,
    /// `h = 2n`.
    TwiceRank,
    /// `h = 2(n−1)`.
    TwiceRankMinusOne,
    Fixed(i64),
}

impl CoxeterEntry {
    pub fn value(self, rank: usize) -> i64 {
        let n = rank as i64;
        match self {
            CoxeterEntry::Rank => n,
            CoxeterEntry::TwiceRank => 2 * n,
            CoxeterEntry::TwiceRankMinusOne => 2 * (n - 1),
            CoxeterEntry::Fixed(h) => h,
        }
    }
}

/// One row of the characteristic table for simple groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub kind: Kind,
    /// Smallest admissible rank (fixed rank for exceptional rows).
    pub min_rank: usize,
    pub max_rank: Option<usize>,
    /// The integer printed in the torsion column.
    pub torsion_entry: u64,
    pub good: TableCondition,
    pub very_good: TableCondition,
    pub coxeter: CoxeterEntry,
}

impl TableRow {
    /// Table reading of the torsion column: the torsion primes are those not
    /// exceeding the printed integer (1 meaning none).
    pub fn torsion(&self, p: u64) -> bool {
        p <= self.torsion_entry
    }

    pub fn ranks(&self) -> std::ops::RangeInclusive<usize> {
        self.min_rank..=self.max_rank.unwrap_or(8)
    }
}

pub fn characteristic_table() -> Vec<TableRow> {
    use CoxeterEntry::*;
    use TableCondition::*;
    let row = |label: &str, kind, min_rank, max_rank, torsion_entry, good, very_good, coxeter| TableRow {
        label: label.to_string(),
        kind,
        min_rank,
        max_rank,
        torsion_entry,
        good,
        very_good,
        coxeter,
    };
    vec![
        row("A_n", Kind::A, 1, None, 1, Any, NotDividingRankPlusOne, Rank),
        row("B_n", Kind::B, 2, None, 2, GreaterThan(2), GreaterThan(2), TwiceRank),
        row("C_n", Kind::C, 2, None, 1, GreaterThan(2), GreaterThan(2), TwiceRank),
        row("D_n", Kind::D, 3, None, 2, GreaterThan(3), GreaterThan(3), TwiceRankMinusOne),
        row("E_6", Kind::E, 6, Some(6), 3, GreaterThan(3), GreaterThan(3), Fixed(12)),
        row("E_7", Kind::E, 7, Some(7), 4, GreaterThan(3), GreaterThan(3), Fixed(18)),
        row("E_8", Kind::E, 8, Some(8), 6, GreaterThan(5), GreaterThan(5), Fixed(30)),
        row("F_4", Kind::F, 4, Some(4), 3, GreaterThan(3), GreaterThan(3), Fixed(12)),
        row("G_2", Kind::G, 2, Some(2), 2, GreaterThan(3), GreaterThan(3), Fixed(6)),
    ]
}

/// One disagreement between computed prime data and the printed table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDiscrepancy {
    pub cartan_type: String,
    pub p: Option<u64>,
    pub field: String,
    pub computed: String,
    pub table: String,
}

/// Compares classification flags and Coxeter numbers against the table for
/// every row, every rank up to 8 and every prime up to `max_p`.
pub fn table_discrepancies(max_p: u64) -> Vec<TableDiscrepancy> {
    let mut out = Vec::new();
    for row in characteristic_table() {
        for rank in row.ranks() {
            let t = CartanType { kind: row.kind, rank };
            let rd = RootDatum::build(t).expect("table rows are valid types");
            let h = rd.coxeter_number();
            let th = row.coxeter.value(rank);
            if h != th {
                out.push(TableDiscrepancy {
                    cartan_type: t.to_string(),
                    p: None,
                    field: "coxeter_number".into(),
                    computed: h.to_string(),
                    table: th.to_string(),
                });
            }
            for p in (2..=max_p).filter(|&p| is_prime(p)) {
                let c = classify_prime(&rd, p).expect("p is prime");
                let checks = [
                    ("is_torsion", c.is_torsion, row.torsion(p)),
                    ("is_good", c.is_good, row.good.holds(p, rank)),
                    ("is_very_good", c.is_very_good, row.very_good.holds(p, rank)),
                ];
                for (field, computed, table) in checks {
                    if computed != table {
                        out.push(TableDiscrepancy {
                            cartan_type: t.to_string(),
                            p: Some(p),
                            field: field.into(),
                            computed: computed.to_string(),
                            table: table.to_string(),
                        });
                    }
                }
            }
        }
    }
    out
}

/// `2h − 2 ≤ 2^{2d}` with `d = rank + 1` standing in for the minimal faithful
/// dimension, together with the sharper `2h − 2 < 2^{2·rank}`.
pub fn faithful_bound_holds(rd: &RootDatum) -> bool {
    let h = rd.coxeter_number();
    let r = rd.rank() as u32;
    let lhs = 2 * h - 2;
    lhs <= 1i64 << (2 * (r + 1)) && lhs < 1i64 << (2 * r)
}

/// Sorted set of torsion primes (divisors of some `b_i`).
pub fn torsion_primes(rd: &RootDatum) -> BTreeSet<u64> {
    (2..=30u64)
        .filter(|&p| is_prime(p) && rd.highest_coroot_coeffs.iter().any(|&b| (b as u64).is_multiple_of(p)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: &str) -> RootDatum {
        RootDatum::build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        let a2 = rd("A2");
        assert_eq!(a2.roots.len(), 6);
        let pos: BTreeSet<Vec<i64>> = a2.positive_vectors().into_iter().collect();
        let expect: BTreeSet<Vec<i64>> =
            [vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]].into_iter().collect();
        assert_eq!(pos, expect);
        assert_eq!(rd("C2").roots.len(), 8);
        assert_eq!(rd("D3").roots.len(), 12);
        for n in 2..6 {
            assert_eq!(rd(&format!("B{n}")).roots.len(), 2 * n * n);
            assert_eq!(rd(&format!("A{n}")).positive.len(), n * (n + 1) / 2);
        }
    }

    #[test]
    fn invalid_ranks() {
        assert!("B1".parse::<CartanType>().is_err());
        assert!("D2".parse::<CartanType>().is_err());
        assert!("E9".parse::<CartanType>().is_err());
        assert!("Q3".parse::<CartanType>().is_err());
    }

    #[test]
    fn coxeter_numbers() {
        assert_eq!(rd("G2").coxeter_number(), 6);
        assert_eq!(rd("E8").coxeter_number(), 30);
        assert_eq!(rd("A2").coxeter_number(), 3);
        assert_eq!(rd("B3").coxeter_number(), 6);
        assert_eq!(rd("C3").coxeter_number(), 6);
        assert_eq!(rd("D4").coxeter_number(), 6);
        assert_eq!(rd("F4").coxeter_number(), 12);
    }

    #[test]
    fn highest_coefficients() {
        assert_eq!(rd("B3").highest_root_coeffs, vec![1, 2, 2]);
        assert_eq!(rd("B3").highest_coroot_coeffs, vec![1, 2, 1]);
        assert_eq!(rd("C3").highest_root_coeffs, vec![2, 2, 1]);
        assert_eq!(rd("C3").highest_coroot_coeffs, vec![1, 1, 1]);
        assert_eq!(rd("D5").highest_root_coeffs, vec![1, 2, 2, 1, 1]);
        assert_eq!(rd("A2").cartan_matrix, Some(vec![vec![2, -1], vec![-1, 2]]));
        assert_eq!(rd("C2").cartan_matrix, Some(vec![vec![2, -1], vec![-2, 2]]));
    }

    #[test]
    fn classify_examples() {
        let e8 = classify_prime(&rd("E8"), 7).unwrap();
        assert!(e8.is_good && !e8.is_torsion);
        let b2 = classify_prime(&rd("B2"), 2).unwrap();
        assert!(b2.is_bad);
        let a2 = classify_prime(&rd("A2"), 3).unwrap();
        assert!(a2.is_good && !a2.is_very_good);
        assert!(classify_prime(&rd("A2"), 4).is_err());
        assert_eq!(
            torsion_primes(&rd("E8")).into_iter().collect::<Vec<_>>(),
            vec![2, 3, 5]
        );
        assert!(torsion_primes(&rd("C4")).is_empty());
    }

    #[test]
    fn parabolic_subsets_are_closed_and_cover() {
        for s in ["A1", "A2", "A3", "B2", "C3", "D4"] {
            let r = rd(s);
            let subs = r.parabolic_subsets().unwrap();
            assert_eq!(subs.len(), 1 << r.rank());
            for sub in &subs {
                assert!(r.is_closed(&sub.roots), "{s} {:?}", sub.levi);
                assert!(r.covers(&sub.roots));
            }
            assert_eq!(subs.last().unwrap().roots.len(), r.roots.len());
        }
        let a1 = rd("A1").parabolic_subsets().unwrap();
        assert_eq!(a1[0].roots, vec![vec![1, -1]]);
        assert_eq!(a1[1].roots.len(), 2);
        assert!(rd("E6").parabolic_subsets().is_err());
    }

    #[test]
    fn closedness() {
        let a2 = rd("A2");
        assert!(a2.is_closed(&a2.positive_vectors()));
        assert!(!a2.is_closed(&a2.simple_roots));
        for r in &a2.roots {
            assert!(a2.is_closed(std::slice::from_ref(r)));
        }
    }

    #[test]
    fn very_good_above_coxeter() {
        for row in characteristic_table() {
            for rank in row.ranks() {
                let r = RootDatum::build(CartanType { kind: row.kind, rank }).unwrap();
                assert!(faithful_bound_holds(&r));
                for p in (2..=50).filter(|&p| is_prime(p)) {
                    let c = classify_prime(&r, p).unwrap();
                    if p as i64 > r.coxeter_number() {
                        assert!(c.is_very_good && !c.is_torsion);
                    }
                    if c.is_very_good {
                        assert!(c.is_good && !c.is_torsion, "{} {p}", c.cartan_type);
                    }
                }
            }
        }
    }
}
