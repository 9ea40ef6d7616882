use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::intmat::IntMatrix;
use super::roots::enumerate_roots;
use super::{LatticeVector, RootLatticeModel};
use crate::error::{Error, Result};

/// A sublattice given by the images of its basis inside an ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublatticeEmbedding {
    ambient: RootLatticeModel,
    images: Vec<LatticeVector>,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingJson {
    rank: usize,
    gram: Vec<Vec<i64>>,
    images: Vec<Vec<i64>>,
}

impl Serialize for SublatticeEmbedding {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EmbeddingJson {
            rank: self.ambient.rank(),
            gram: self.ambient.gram().to_rows(),
            images: self.images.iter().map(|v| v.0.clone()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SublatticeEmbedding {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = EmbeddingJson::deserialize(d)?;
        let gram = IntMatrix::from_rows_with_cols(&j.gram, j.rank)
            .map_err(serde::de::Error::custom)?;
        let ambient = RootLatticeModel::from_gram(gram).map_err(serde::de::Error::custom)?;
        SublatticeEmbedding::new(ambient, j.images.into_iter().map(LatticeVector).collect())
            .map_err(serde::de::Error::custom)
    }
}

/// Primitive closure `M' = (M ⊗ Q) ∩ V` together with the index `[M' : M]`.
#[derive(Clone, Debug)]
pub struct Closure {
    pub closure: SublatticeEmbedding,
    pub index: u64,
}

impl SublatticeEmbedding {
    pub fn new(ambient: RootLatticeModel, images: Vec<LatticeVector>) -> Result<Self> {
        if let Some(v) = images.iter().find(|v| v.len() != ambient.rank()) {
            return Err(Error::Dimension(format!(
                "image of length {} in a rank {} lattice",
                v.len(),
                ambient.rank()
            )));
        }
        Ok(SublatticeEmbedding { ambient, images })
    }

    pub fn ambient(&self) -> &RootLatticeModel {
        &self.ambient
    }

    pub fn images(&self) -> &[LatticeVector] {
        &self.images
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    /// Induced Gram matrix of the images.
    pub fn sub_gram(&self) -> IntMatrix {
        self.ambient.gram_of(&self.images)
    }

    /// The sublattice as an abstract lattice in its own basis.
    pub fn as_lattice(&self) -> RootLatticeModel {
        RootLatticeModel::from_gram(self.sub_gram()).expect("induced Gram is symmetric")
    }

    fn image_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self.images.iter().map(|v| v.0.clone()).collect();
        IntMatrix::from_rows_with_cols(&rows, self.ambient.rank()).expect("checked lengths")
    }

    /// `{v in V : ⟨v, im(e)⟩ = 0}` via the integer kernel of the pairing rows.
    pub fn orthogonal_complement(&self) -> Result<SublatticeEmbedding> {
        let n = self.ambient.rank();
        let rows: Vec<Vec<i64>> = self
            .images
            .iter()
            .map(|v| self.ambient.functional(v))
            .collect();
        let pairing = IntMatrix::from_rows_with_cols(&rows, n)?;
        let kernel = if rows.is_empty() {
            IntMatrix::identity(n)
        } else {
            pairing.kernel()?
        };
        SublatticeEmbedding::new(
            self.ambient.clone(),
            kernel.to_rows().into_iter().map(LatticeVector).collect(),
        )
    }

    /// Saturation of the images and the index `[M' : M]`.
    ///
    /// The index is computed from `det M / det M'` and cross-checked against
    /// the determinant of the change-of-basis matrix.
    pub fn primitive_closure(&self) -> Result<Closure> {
        let m = self.image_matrix();
        if m.rank() != self.rank() {
            return Err(Error::domain("sublattice images are linearly dependent"));
        }
        let det_m = self.sub_gram().determinant();
        if det_m == 0 {
            return Err(Error::domain("sublattice is degenerate"));
        }
        let sat = if self.rank() == 0 {
            IntMatrix::zeros(0, self.ambient.rank())
        } else {
            m.saturation()?
        };
        let closure = SublatticeEmbedding::new(
            self.ambient.clone(),
            sat.to_rows().into_iter().map(LatticeVector).collect(),
        )?;
        let det_c = closure.sub_gram().determinant();
        if det_c == 0 || det_m % det_c != 0 {
            return Err(Error::domain("closure determinant does not divide det M"));
        }
        let ratio = det_m / det_c;
        let index = isqrt(ratio)
            .filter(|r| r * r == ratio)
            .ok_or_else(|| Error::domain("det M / det M' is not a perfect square"))?;
        let coords = closure.coordinates_of_all(&self.images)?;
        if coords.determinant().abs() != index {
            return Err(Error::domain("index routes disagree"));
        }
        Ok(Closure {
            closure,
            index: index as u64,
        })
    }

    /// Integer coordinates of `v` in the basis of this sublattice, if `v` lies in it.
    pub fn coordinates(&self, v: &LatticeVector) -> Option<Vec<i64>> {
        CoordinateSolver::new(&self.images, self.ambient.rank())
            .ok()?
            .integer_coords(v)
    }

    fn coordinates_of_all(&self, vs: &[LatticeVector]) -> Result<IntMatrix> {
        let solver = CoordinateSolver::new(&self.images, self.ambient.rank())?;
        let rows = vs
            .iter()
            .map(|v| {
                solver
                    .integer_coords(v)
                    .ok_or_else(|| Error::domain("vector is not in the sublattice"))
            })
            .collect::<Result<Vec<_>>>()?;
        IntMatrix::from_rows_with_cols(&rows, self.rank())
    }

    /// The finite group `M'/M` where `M'` is the primitive closure.
    pub fn quotient_group(&self) -> Result<QuotientGroup> {
        let c = self.primitive_closure()?;
        QuotientGroup::new(self, c)
    }

    /// Classes of `M'/M` that contain roots of the ambient lattice, and every
    /// subgroup of order 4 whose nonzero classes all contain roots.
    pub fn roots_in_quotient(&self) -> Result<RootQuotientReport> {
        let q = self.quotient_group()?;
        let roots = enumerate_roots(&self.ambient)?;
        let solver = CoordinateSolver::new(q.closure.images(), self.ambient.rank())?;
        let elements = q.elements()?;
        let index_of: BTreeMap<Vec<i64>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let mut reps: Vec<Vec<LatticeVector>> = vec![Vec::new(); elements.len()];
        for r in roots {
            if let Some(y) = solver.integer_coords(&r) {
                let cls = q.reduce(y);
                reps[index_of[&cls]].push(r);
            }
        }
        let root_classes: Vec<usize> = (1..elements.len())
            .filter(|&i| !reps[i].is_empty())
            .collect();
        let is_root_class: BTreeSet<usize> = root_classes.iter().copied().collect();
        let mut subgroups: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut consider = |gens: &[usize]| {
            let sub = q.generated(&gens.iter().map(|&g| elements[g].clone()).collect::<Vec<_>>());
            if sub.len() == 4 {
                let mut idx: Vec<usize> = sub.iter().map(|e| index_of[e]).collect();
                idx.sort_unstable();
                if idx[1..].iter().all(|i| is_root_class.contains(i)) {
                    subgroups.insert(idx);
                }
            }
        };
        for (a, &x) in root_classes.iter().enumerate() {
            consider(&[x]);
            for &y in &root_classes[a + 1..] {
                consider(&[x, y]);
            }
        }
        let classes = elements
            .into_iter()
            .zip(reps)
            .map(|(rep, roots)| QuotientClass {
                coords: rep,
                root_count: roots.len(),
                roots,
            })
            .collect();
        Ok(RootQuotientReport {
            index: q.index,
            invariant_factors: q.invariant_factors.clone(),
            classes,
            all_root_subgroups: subgroups.into_iter().collect(),
        })
    }
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    Some(r)
}

/// Solves `v = Σ c_i b_i` for a fixed independent family `b_i` by inverting
/// the square submatrix on a set of pivot columns.
pub(crate) struct CoordinateSolver {
    basis: Vec<LatticeVector>,
    pivots: Vec<usize>,
    inverse: Vec<Vec<Ratio<i128>>>,
}

impl CoordinateSolver {
    pub(crate) fn new(basis: &[LatticeVector], ambient_rank: usize) -> Result<Self> {
        let rows: Vec<Vec<i64>> = basis.iter().map(|v| v.0.clone()).collect();
        let m = IntMatrix::from_rows_with_cols(&rows, ambient_rank)?;
        let pivots = m.transpose().hermite_pivots();
        // Pivot columns of the transpose's HNF are independent rows of M^T,
        // i.e. independent coordinate positions of the basis.
        let pivots: Vec<usize> = if pivots.len() == basis.len() {
            independent_columns(&m)
        } else {
            return Err(Error::domain("basis vectors are linearly dependent"));
        };
        let k = basis.len();
        let mut a: Vec<Vec<Ratio<i128>>> = (0..k)
            .map(|j| {
                (0..k)
                    .map(|i| Ratio::from_integer(m.get(i, pivots[j]) as i128))
                    .chain((0..k).map(|i| Ratio::from_integer(i128::from(i == j))))
                    .collect()
            })
            .collect();
        // a = [B_S^T | I]; Gauss–Jordan gives (B_S^T)^-1.
        for col in 0..k {
            let p = (col..k)
                .find(|&r| a[r][col] != Ratio::from_integer(0))
                .ok_or_else(|| Error::domain("singular pivot block"))?;
            a.swap(col, p);
            let inv = Ratio::from_integer(1) / a[col][col];
            for x in a[col].iter_mut() {
                *x *= inv;
            }
            for r in 0..k {
                if r != col && a[r][col] != Ratio::from_integer(0) {
                    let f = a[r][col];
                    let pivot_row = a[col].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
        let inverse = a.into_iter().map(|row| row[k..].to_vec()).collect();
        Ok(CoordinateSolver {
            basis: basis.to_vec(),
            pivots,
            inverse,
        })
    }

    pub(crate) fn rational_coords(&self, v: &LatticeVector) -> Option<Vec<Ratio<i128>>> {
        let k = self.basis.len();
        // c^T B_S = v_S  =>  c = (B_S^T)^-1 v_S.
        let c: Vec<Ratio<i128>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| self.inverse[i][j] * Ratio::from_integer(v.0[self.pivots[j]] as i128))
                    .sum()
            })
            .collect();
        let n = v.len();
        for col in 0..n {
            let s: Ratio<i128> = (0..k)
                .map(|i| c[i] * Ratio::from_integer(self.basis[i].0[col] as i128))
                .sum();
            if s != Ratio::from_integer(v.0[col] as i128) {
                return None;
            }
        }
        Some(c)
    }

    pub(crate) fn integer_coords(&self, v: &LatticeVector) -> Option<Vec<i64>> {
        self.rational_coords(v)?
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Greedy choice of `rows` independent columns.
fn independent_columns(m: &IntMatrix) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for c in 0..m.cols() {
        let mut trial = chosen.clone();
        trial.push(c);
        let sub: Vec<Vec<i64>> = (0..m.rows())
            .map(|i| trial.iter().map(|&j| m.get(i, j)).collect())
            .collect();
        let sub = IntMatrix::from_rows_with_cols(&sub, trial.len()).expect("rectangular");
        if sub.rank() == trial.len() {
            chosen = trial;
            if chosen.len() == m.rows() {
                break;
            }
        }
    }
    chosen
}

/// `M'/M` with canonical coset representatives from the Hermite form of the
/// change-of-basis matrix.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub closure: SublatticeEmbedding,
    pub index: u64,
    pub invariant_factors: Vec<i64>,
    hermite: IntMatrix,
}

impl QuotientGroup {
    fn new(sub: &SublatticeEmbedding, c: Closure) -> Result<Self> {
        let coords = c.closure.coordinates_of_all(sub.images())?;
        let invariant_factors = coords
            .smith_diagonal()
            .into_iter()
            .filter(|&d| d > 1)
            .map(|d| d as i64)
            .collect();
        let hermite = if coords.rows() == 0 {
            coords
        } else {
            coords.hermite()?
        };
        Ok(QuotientGroup {
            closure: c.closure,
            index: c.index,
            invariant_factors,
            hermite,
        })
    }

    /// Canonical representative of `y + M` (coordinates in the closure basis).
    pub fn reduce(&self, mut y: Vec<i64>) -> Vec<i64> {
        for i in 0..self.hermite.rows() {
            let h = self.hermite.get(i, i);
            let q = y[i].div_euclid(h);
            if q != 0 {
                for (j, yj) in y.iter_mut().enumerate().skip(i) {
                    *yj -= q * self.hermite.get(i, j);
                }
            }
        }
        y
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    /// All canonical representatives, the zero class first.
    pub fn elements(&self) -> Result<Vec<Vec<i64>>> {
        const LIMIT: u64 = 1 << 16;
        if self.index > LIMIT {
            return Err(Error::BudgetExceeded(format!(
                "quotient of order {} is too large to list",
                self.index
            )));
        }
        let r = self.hermite.rows();
        let diag: Vec<i64> = (0..r).map(|i| self.hermite.get(i, i)).collect();
        let mut out = vec![vec![0i64; r]];
        for (i, &d) in diag.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for v in &out {
                for k in 0..d {
                    let mut w = v.clone();
                    w[i] = k;
                    next.push(w);
                }
            }
            out = next;
        }
        out.sort();
        Ok(out)
    }

    /// The subgroup generated by the given classes.
    pub fn generated(&self, gens: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
        let r = self.hermite.rows();
        let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
        set.insert(vec![0; r]);
        let mut frontier: Vec<Vec<i64>> = vec![vec![0; r]];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientClass {
    /// Canonical coordinates in the closure basis.
    pub coords: Vec<i64>,
    pub root_count: usize,
    #[serde(skip)]
    pub roots: Vec<LatticeVector>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootQuotientReport {
    pub index: u64,
    pub invariant_factors: Vec<i64>,
    pub classes: Vec<QuotientClass>,
    /// Each entry lists the four class indices (into `classes`) of a subgroup.
    pub all_root_subgroups: Vec<Vec<usize>>,
}

impl RootQuotientReport {
    pub fn nonzero_root_classes(&self) -> usize {
        self.classes.iter().skip(1).filter(|c| c.root_count > 0).count()
    }
}

/// `A_L = L^∨ / L` as invariant factors `d_1 | d_2 | ...` (all > 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantGroup {
    pub invariant_factors: Vec<u64>,
    pub order: u64,
}

impl DiscriminantGroup {
    /// Minimal number of generators of the 2-part.
    pub fn two_length(&self) -> usize {
        self.invariant_factors.iter().filter(|&&d| d % 2 == 0).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

pub fn discriminant_group(lattice: &RootLatticeModel) -> Result<DiscriminantGroup> {
    let det = lattice.determinant();
    if det == 0 {
        return Err(Error::domain(
            "degenerate Gram matrix has no finite discriminant group",
        ));
    }
    let invariant_factors: Vec<u64> = lattice
        .gram()
        .smith_diagonal()
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| d as u64)
        .collect();
    let order = invariant_factors.iter().product();
    debug_assert_eq!(order as i128, det.abs());
    Ok(DiscriminantGroup {
        invariant_factors,
        order,
    })
}

pub fn two_length(lattice: &RootLatticeModel) -> Result<usize> {
    Ok(discriminant_group(lattice)?.two_length())
}
