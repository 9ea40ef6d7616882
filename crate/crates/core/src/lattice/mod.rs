//! Exact integer lattices.
//!
//! Convention: every lattice is *negative* definite (or semi-definite for the
//! extended fibre lattices). Roots are the vectors of norm −2, matching the
//! self-intersection of smooth rational curves on a K3 surface.
//!
//! Vectors are stored as coordinates in the lattice basis; for the ADE
//! constructors that basis is the set of simple roots.

mod dynkin;
mod extended;
pub mod intmat;
mod roots;
mod search;
mod sublattice;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use dynkin::{identify_root_system, RootSystemIdentification};
pub use extended::{
    extended_lattice, extended_lattice_for_fiber, verify_parity_argument, ClassLift,
    ExtendedFiberLattice, ParityCertificate, Projection, SubgroupParity,
};
pub use intmat::IntMatrix;
pub use roots::{enumerate_roots, enumerate_roots_with, reflect, RootStrategy};
pub use search::{
    delta_chain, find_disjoint_a1, fundamental_cycle_d, index_lemma, index_lemma_entry,
    orthogonal_root_sets, verify_factor_through, DeltaChainReport, DisjointA1Search,
    FactorThroughCertificate, FactorWitness, IndexLemmaEntry, IndexLemmaReport, OrthogonalSets,
};
pub use sublattice::{
    discriminant_group, two_length, Closure, DiscriminantGroup, QuotientGroup,
    RootQuotientReport, SublatticeEmbedding,
};

/// A vector in a lattice, as integer coordinates in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * k).collect())
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: i64, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        self.scale(-1)
    }

    /// Exact division by `k`, if every coordinate is divisible.
    pub fn div_exact(&self, k: i64) -> Option<LatticeVector> {
        if k == 0 || self.0.iter().any(|a| a % k != 0) {
            return None;
        }
        Some(LatticeVector(self.0.iter().map(|a| a / k).collect()))
    }

    /// The representative of `{v, -v}` whose first nonzero coordinate is positive.
    pub fn sign_normalized(&self) -> LatticeVector {
        match self.0.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => self.neg(),
            _ => self.clone(),
        }
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

/// Dynkin label of an irreducible simply-laced root lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdeLabel {
    A(usize),
    D(usize),
    E(usize),
}

impl AdeLabel {
    pub fn rank(self) -> usize {
        match self {
            AdeLabel::A(n) | AdeLabel::D(n) | AdeLabel::E(n) => n,
        }
    }

    /// Checks the index range, with the conventions `D2 = A1 + A1`, `D3 = A3`.
    pub fn validate(self) -> Result<Self> {
        let ok = match self {
            AdeLabel::A(n) => n >= 1,
            AdeLabel::D(n) => n >= 2,
            AdeLabel::E(n) => (6..=8).contains(&n),
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::range(format!("no root lattice of type {self}")))
        }
    }

    /// Irreducible components, resolving `D2 = A1 + A1` and `D3 = A3`.
    pub fn components(self) -> Vec<AdeLabel> {
        match self {
            AdeLabel::D(2) => vec![AdeLabel::A(1), AdeLabel::A(1)],
            AdeLabel::D(3) => vec![AdeLabel::A(3)],
            other => vec![other],
        }
    }

    /// Number of roots of the root system.
    pub fn root_count(self) -> usize {
        match self {
            AdeLabel::A(n) => n * (n + 1),
            AdeLabel::D(n) => 2 * n * (n - 1),
            AdeLabel::E(6) => 72,
            AdeLabel::E(7) => 126,
            AdeLabel::E(8) => 240,
            AdeLabel::E(_) => 0,
        }
    }
}

impl fmt::Display for AdeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeLabel::A(n) => write!(f, "A{n}"),
            AdeLabel::D(n) => write!(f, "D{n}"),
            AdeLabel::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for AdeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let mut chars = t.chars();
        let head = chars.next().ok_or_else(|| Error::UnknownLabel(s.into()))?;
        let rest: String = chars.filter(|&c| c != '_').collect();
        let n: usize = rest.parse().map_err(|_| Error::UnknownLabel(s.into()))?;
        let label = match head.to_ascii_uppercase() {
            'A' => AdeLabel::A(n),
            'D' => AdeLabel::D(n),
            'E' => AdeLabel::E(n),
            _ => return Err(Error::UnknownLabel(s.into())),
        };
        label.validate()
    }
}

impl Serialize for AdeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AdeLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An integral lattice given by its Gram matrix in a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootLatticeModel {
    gram: IntMatrix,
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    rank: usize,
    gram: Vec<Vec<i64>>,
}

impl Serialize for RootLatticeModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LatticeJson {
            rank: self.rank(),
            gram: self.gram.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootLatticeModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = LatticeJson::deserialize(d)?;
        let gram = IntMatrix::from_rows_with_cols(&j.gram, j.rank)
            .map_err(serde::de::Error::custom)?;
        RootLatticeModel::from_gram(gram).map_err(serde::de::Error::custom)
    }
}

impl RootLatticeModel {
    /// Wraps a symmetric Gram matrix. Definiteness is not required here; the
    /// operations that need it check it themselves.
    pub fn from_gram(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::domain("Gram matrix must be square and symmetric"));
        }
        Ok(RootLatticeModel { gram, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// The root lattice of the given ADE type in its simple-root basis.
    ///
    /// Vertex order: `A_n` is the path `d1 - ... - dn`; `D_n` is the chain
    /// `d1 - ... - d_{n-2}` with `d_{n-1}` and `d_n` both attached to
    /// `d_{n-2}`; `E_n` is the chain `e1 - ... - e_{n-1}` with `e_n`
    /// attached to `e3`.
    pub fn ade(label: AdeLabel) -> Result<Self> {
        let label = label.validate()?;
        let n = label.rank();
        let mut g = IntMatrix::zeros(n, n);
        for i in 0..n {
            g.set(i, i, -2);
        }
        let mut edge = |a: usize, b: usize| {
            g.set(a, b, 1);
            g.set(b, a, 1);
        };
        match label {
            AdeLabel::A(_) => (0..n.saturating_sub(1)).for_each(|i| edge(i, i + 1)),
            AdeLabel::D(_) => {
                // d_{n-2} is index n-3 (zero-based); D2 has no edges.
                if n >= 3 {
                    (0..n - 3).for_each(|i| edge(i, i + 1));
                    edge(n - 3, n - 2);
                    edge(n - 3, n - 1);
                }
            }
            AdeLabel::E(_) => {
                (0..n - 2).for_each(|i| edge(i, i + 1));
                edge(2, n - 1);
            }
        }
        Ok(RootLatticeModel {
            gram: g,
            label: Some(label.to_string()),
        })
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(parts: &[RootLatticeModel]) -> Self {
        let n: usize = parts.iter().map(|p| p.rank()).sum();
        let mut g = IntMatrix::zeros(n, n);
        let mut off = 0;
        for p in parts {
            for i in 0..p.rank() {
                for j in 0..p.rank() {
                    g.set(off + i, off + j, p.gram.get(i, j));
                }
            }
            off += p.rank();
        }
        let label = parts
            .iter()
            .map(|p| p.label().unwrap_or("?").to_string())
            .collect::<Vec<_>>()
            .join("+");
        RootLatticeModel {
            gram: g,
            label: Some(label),
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn inner(&self, x: &LatticeVector, y: &LatticeVector) -> i64 {
        debug_assert_eq!(x.len(), self.rank());
        debug_assert_eq!(y.len(), self.rank());
        let mut s = 0;
        for (i, &xi) in x.0.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = self.gram.row(i);
            s += xi * row.iter().zip(&y.0).map(|(g, b)| g * b).sum::<i64>();
        }
        s
    }

    pub fn norm(&self, x: &LatticeVector) -> i64 {
        self.inner(x, x)
    }

    pub fn is_root(&self, x: &LatticeVector) -> bool {
        x.len() == self.rank() && self.norm(x) == -2
    }

    pub fn determinant(&self) -> i128 {
        self.gram.determinant()
    }

    /// Negative definite iff the leading principal minors alternate in sign,
    /// starting negative.
    pub fn is_negative_definite(&self) -> bool {
        self.gram
            .leading_minors()
            .iter()
            .enumerate()
            .all(|(k, &d)| if k % 2 == 0 { d < 0 } else { d > 0 })
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.get(i, i) % 2 == 0)
    }

    /// The row functional `x ↦ ⟨x, v⟩` as an integer row vector.
    pub fn functional(&self, v: &LatticeVector) -> Vec<i64> {
        self.gram.mul_vec(&v.0)
    }

    pub fn basis_vector(&self, i: usize) -> LatticeVector {
        LatticeVector::unit(self.rank(), i)
    }

    /// Gram matrix of an arbitrary family of vectors.
    pub fn gram_of(&self, vs: &[LatticeVector]) -> IntMatrix {
        let mut g = IntMatrix::zeros(vs.len(), vs.len());
        for (i, a) in vs.iter().enumerate() {
            for (j, b) in vs.iter().enumerate().skip(i) {
                let v = self.inner(a, b);
                g.set(i, j, v);
                g.set(j, i, v);
            }
        }
        g
    }
}

/// Root lattice of the given type (`ade_gram` in the command-line tool).
pub fn ade_gram(label: AdeLabel) -> Result<RootLatticeModel> {
    RootLatticeModel::ade(label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_is_minus_two() {
        let l = ade_gram(AdeLabel::A(1)).unwrap();
        assert_eq!(l.gram().to_rows(), vec![vec![-2]]);
    }

    #[test]
    fn determinants_match_discriminant_orders() {
        for n in 1..=14 {
            let a = ade_gram(AdeLabel::A(n)).unwrap();
            assert_eq!(a.determinant().abs(), n as i128 + 1, "A{n}");
            assert!(a.is_negative_definite());
        }
        for n in 2..=14 {
            let d = ade_gram(AdeLabel::D(n)).unwrap();
            assert_eq!(d.determinant().abs(), 4, "D{n}");
            assert!(d.is_negative_definite());
        }
        for (n, det) in [(6, 3), (7, 2), (8, 1)] {
            let e = ade_gram(AdeLabel::E(n)).unwrap();
            assert_eq!(e.determinant().abs(), det, "E{n}");
            assert!(e.is_negative_definite());
        }
    }

    #[test]
    fn small_d_conventions() {
        let d2 = ade_gram(AdeLabel::D(2)).unwrap();
        assert_eq!(d2.gram().to_rows(), vec![vec![-2, 0], vec![0, -2]]);
        let d3 = ade_gram(AdeLabel::D(3)).unwrap();
        assert_eq!(d3.determinant().abs(), 4);
    }

    #[test]
    fn invalid_labels() {
        assert!(ade_gram(AdeLabel::E(5)).is_err());
        assert!(ade_gram(AdeLabel::A(0)).is_err());
        assert!(ade_gram(AdeLabel::D(1)).is_err());
        assert!("F4".parse::<AdeLabel>().is_err());
        assert_eq!("D_5".parse::<AdeLabel>().unwrap(), AdeLabel::D(5));
    }

    #[test]
    fn json_shape() {
        let l = ade_gram(AdeLabel::A(2)).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"rank":2,"gram":[[-2,1],[1,-2]]}"#);
        let back: RootLatticeModel = serde_json::from_str(&s).unwrap();
        assert_eq!(back.gram(), l.gram());
    }
}
