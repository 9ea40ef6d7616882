//! Extended (affine) Dynkin lattices of fibres, the projection modulo the
//! fibre class and the parity argument on lifts of root classes.

use serde::Serialize;

use super::roots::enumerate_roots;
use super::sublattice::{CoordinateSolver, SublatticeEmbedding};
use super::{ade_gram, AdeLabel, IntMatrix, LatticeVector, RootLatticeModel};
use crate::certificate::Status;
use crate::error::{Error, Result};
use crate::fiber::FiberType;

/// Degenerate lattice spanned by the components of a reducible fibre.
///
/// Vertex 0 is the extending node; vertices `1..=n` carry the simple roots
/// in the labelling of [`ade_gram`].
#[derive(Clone, Debug, Serialize)]
pub struct ExtendedFiberLattice {
    pub label: String,
    pub vertices: Vec<String>,
    pub gram: IntMatrix,
    pub multiplicities: Vec<i64>,
}

/// The affine diagram of `label`: `d0 = F - θ` with `θ` the highest root.
pub fn extended_lattice(label: AdeLabel) -> Result<ExtendedFiberLattice> {
    let parts = label.validate()?.components();
    if parts.len() != 1 {
        return Err(Error::domain(format!("{label} is reducible")));
    }
    let v = ade_gram(parts[0])?;
    let n = v.rank();
    let theta = enumerate_roots(&v)?
        .into_iter()
        .max_by_key(|r| (r.0.iter().sum::<i64>(), r.clone()))
        .expect("nonempty root system");
    let mut g = IntMatrix::zeros(n + 1, n + 1);
    g.set(0, 0, -2);
    let pair = v.functional(&theta);
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        g.set(0, i + 1, -pair[i]);
        g.set(i + 1, 0, -pair[i]);
        for j in 0..n {
            g.set(i + 1, j + 1, v.gram().get(i, j));
        }
    }
    let mut multiplicities = vec![1];
    multiplicities.extend(theta.0.iter().copied());
    let ext = ExtendedFiberLattice {
        label: format!("~{}", parts[0]),
        vertices: (0..=n).map(|i| format!("d{i}")).collect(),
        gram: g,
        multiplicities,
    };
    debug_assert!(ext.fiber_class_is_radical());
    Ok(ext)
}

/// Extended lattice of a reducible fibre type; irreducible types (`I1`,
/// `II`) have none.
pub fn extended_lattice_for_fiber(fiber: &FiberType) -> Result<ExtendedFiberLattice> {
    let label = fiber.dynkin().ok_or_else(|| {
        Error::domain(format!("fibre type {fiber} is irreducible and has no extended lattice"))
    })?;
    let mut ext = extended_lattice(label)?;
    ext.label = fiber.to_string();
    Ok(ext)
}

impl ExtendedFiberLattice {
    pub fn rank(&self) -> usize {
        self.multiplicities.len()
    }

    /// The fibre class `F = Σ m_i d_i`.
    pub fn fiber_class(&self) -> LatticeVector {
        LatticeVector(self.multiplicities.clone())
    }

    pub fn model(&self) -> RootLatticeModel {
        RootLatticeModel::from_gram(self.gram.clone())
            .expect("symmetric")
            .with_label(self.label.clone())
    }

    pub fn fiber_class_is_radical(&self) -> bool {
        self.gram.mul_vec(&self.multiplicities).iter().all(|&x| x == 0)
    }

    /// Negative semi-definite with radical exactly `Z F`: every
    /// multiplicity-one vertex leaves a negative-definite lattice behind.
    pub fn radical_is_fiber_class(&self) -> bool {
        self.fiber_class_is_radical()
            && self.gram.rank() + 1 == self.rank()
            && (0..self.rank())
                .filter(|&v| self.multiplicities[v] == 1)
                .all(|v| {
                    self.projection(v)
                        .map(|p| p.finite.is_negative_definite())
                        .unwrap_or(false)
                })
    }

    pub fn projection(&self, vertex: usize) -> Result<Projection> {
        if vertex >= self.rank() {
            return Err(Error::Range(format!("no vertex {vertex}")));
        }
        if self.multiplicities[vertex] != 1 {
            return Err(Error::domain(format!(
                "vertex {vertex} has multiplicity {}",
                self.multiplicities[vertex]
            )));
        }
        let keep: Vec<usize> = (0..self.rank()).filter(|&i| i != vertex).collect();
        let finite = RootLatticeModel::from_gram(self.gram.principal_submatrix(&keep))?;
        Ok(Projection {
            vertex,
            finite,
            fiber: self.fiber_class(),
        })
    }

    /// `ι(V) ⊂ Ṽ` for the multiplicity-one vertex `vertex`.
    pub fn section_embed(&self, vertex: usize) -> Result<SublatticeEmbedding> {
        let p = self.projection(vertex)?;
        let images = (0..p.finite.rank())
            .map(|i| p.embed(&p.finite.basis_vector(i)))
            .collect();
        SublatticeEmbedding::new(self.model(), images)
    }

    /// `B_i = ι(b_i) + k_i F`.
    pub fn lift(&self, vertex: usize, set: &[LatticeVector], k: &[i64]) -> Result<Vec<LatticeVector>> {
        let p = self.projection(vertex)?;
        if k.len() != set.len() {
            return Err(Error::Dimension("one fibre multiple per vector".into()));
        }
        Ok(set
            .iter()
            .zip(k)
            .map(|(b, &ki)| p.embed(b).add_scaled(ki, &p.fiber))
            .collect())
    }
}

/// `π: Ṽ → V = Ṽ / Z F`, realised by eliminating a multiplicity-one vertex,
/// and its section `ι`.
#[derive(Clone, Debug)]
pub struct Projection {
    pub vertex: usize,
    pub finite: RootLatticeModel,
    fiber: LatticeVector,
}

impl Projection {
    /// `π(x) = x - x_v F` with the `v` coordinate dropped.
    pub fn project(&self, x: &LatticeVector) -> LatticeVector {
        let y = x.add_scaled(-x.0[self.vertex], &self.fiber);
        let mut c = y.0;
        c.remove(self.vertex);
        LatticeVector(c)
    }

    /// `ι(y)`: insert a zero at the eliminated vertex.
    pub fn embed(&self, y: &LatticeVector) -> LatticeVector {
        let mut c = y.0.clone();
        c.insert(self.vertex, 0);
        LatticeVector(c)
    }
}

/// Lift of one root class `v ∈ M' \ M`: `w = Σ c_i B_i = ι(2v) + m F`.
#[derive(Clone, Debug, Serialize)]
pub struct ClassLift {
    pub class: usize,
    pub root: LatticeVector,
    /// Coordinates of `2v` in the basis `π(B_i)`.
    pub coefficients: Vec<i64>,
    pub w: LatticeVector,
    pub m: i64,
    /// `w/2` when `m` is even, else `(w + F)/2`; a root of `Ṽ` outside `M̃`.
    pub half: LatticeVector,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupParity {
    /// Class indices of the three nonzero elements.
    pub classes: Vec<usize>,
    pub representatives: Vec<LatticeVector>,
    /// Representatives satisfy `v1 + v2 + v3 = 0` exactly.
    pub exact_relation: bool,
    pub m: Vec<i64>,
    pub m_sum: i64,
    pub even_index: Option<usize>,
    /// `w_j / 2` for the even `m_j`.
    pub half: Option<LatticeVector>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityCertificate {
    pub lattice: String,
    pub rank: usize,
    pub index: u64,
    pub lifts: Vec<ClassLift>,
    pub subgroups: Vec<SubgroupParity>,
    pub status: Status,
}

/// Checks the parity argument for orthogonal roots `m_tilde` of `ext`,
/// projecting away vertex 0.
pub fn verify_parity_argument(
    ext: &ExtendedFiberLattice,
    m_tilde: &[LatticeVector],
) -> Result<ParityCertificate> {
    let model = ext.model();
    for (i, a) in m_tilde.iter().enumerate() {
        if !model.is_root(a) {
            return Err(Error::domain("M̃ must consist of roots"));
        }
        if m_tilde[i + 1..].iter().any(|b| model.inner(a, b) != 0) {
            return Err(Error::domain("M̃ must be pairwise orthogonal"));
        }
    }
    if m_tilde.is_empty() {
        return Ok(ParityCertificate {
            lattice: ext.label.clone(),
            rank: 0,
            index: 1,
            lifts: Vec::new(),
            subgroups: Vec::new(),
            status: Status::Verified,
        });
    }
    let proj = ext.projection(0)?;
    let small: Vec<LatticeVector> = m_tilde.iter().map(|b| proj.project(b)).collect();
    let emb = SublatticeEmbedding::new(proj.finite.clone(), small)?;
    let rq = emb.roots_in_quotient()?;
    let in_m_tilde = CoordinateSolver::new(m_tilde, ext.rank())?;
    let f = ext.fiber_class();
    let v = &proj.finite;

    let lift_of = |root: &LatticeVector| -> Result<(Vec<i64>, LatticeVector, i64)> {
        let c = emb
            .coordinates(&root.scale(2))
            .ok_or_else(|| Error::domain("2v is not in M"))?;
        let w = c
            .iter()
            .zip(m_tilde)
            .fold(LatticeVector::zero(ext.rank()), |acc, (&ci, b)| acc.add_scaled(ci, b));
        let m = w.0[0];
        Ok((c, w, m))
    };
    let half_is_new_root = |h: &LatticeVector| {
        model.is_root(h) && in_m_tilde.integer_coords(h).is_none()
    };

    let mut lifts = Vec::new();
    for (ci, class) in rq.classes.iter().enumerate().skip(1) {
        let Some(root) = class.roots.first() else { continue };
        let (c, w, m) = lift_of(root)?;
        let consistent = w.add_scaled(-m, &f) == proj.embed(&root.scale(2));
        let shifted = if m % 2 == 0 { w.clone() } else { w.add(&f) };
        let half = shifted.div_exact(2);
        let ok = consistent && half.as_ref().is_some_and(half_is_new_root);
        lifts.push(ClassLift {
            class: ci,
            root: root.clone(),
            coefficients: c,
            w,
            m,
            half: half.unwrap_or_else(|| LatticeVector::zero(ext.rank())),
            ok,
        });
    }

    let mut subgroups = Vec::new();
    for sub in &rq.all_root_subgroups {
        let cls: Vec<usize> = sub[1..].to_vec();
        let (a, b) = (&rq.classes[cls[0]].roots, &rq.classes[cls[1]].roots);
        let exact = a.iter().find_map(|x| {
            b.iter()
                .find(|y| v.inner(x, y) == 1)
                .map(|y| vec![x.clone(), y.clone(), x.add(y).neg()])
        });
        let exact_relation = exact.is_some();
        let reps = exact.unwrap_or_else(|| {
            cls.iter()
                .map(|&c| rq.classes[c].roots[0].clone())
                .collect()
        });
        let mut ms = Vec::new();
        let mut ws = Vec::new();
        for r in &reps {
            let (_, w, m) = lift_of(r)?;
            ms.push(m);
            ws.push(w);
        }
        let m_sum: i64 = ms.iter().sum();
        let even_index = ms.iter().position(|m| m % 2 == 0);
        let half = even_index.and_then(|j| ws[j].div_exact(2));
        let relation_ok = if exact_relation { m_sum == 0 } else { m_sum % 2 == 0 };
        let ok = relation_ok && half.as_ref().is_some_and(half_is_new_root);
        subgroups.push(SubgroupParity {
            classes: cls,
            representatives: reps,
            exact_relation,
            m: ms,
            m_sum,
            even_index,
            half,
            ok,
        });
    }
    let status = Status::from_bool(
        lifts.iter().all(|l| l.ok) && subgroups.iter().all(|s| s.ok && s.exact_relation),
    );
    Ok(ParityCertificate {
        lattice: ext.label.clone(),
        rank: m_tilde.len(),
        index: rq.index,
        lifts,
        subgroups,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicities_of_affine_diagrams() {
        let cases: [(AdeLabel, Vec<i64>); 5] = [
            (AdeLabel::A(3), vec![1, 1, 1, 1]),
            (AdeLabel::D(4), vec![1, 1, 2, 1, 1]),
            (AdeLabel::E(6), vec![1, 1, 2, 3, 2, 1, 2]),
            (AdeLabel::E(7), vec![1, 2, 3, 4, 3, 2, 1, 2]),
            (AdeLabel::E(8), vec![1, 2, 4, 6, 5, 4, 3, 2, 3]),
        ];
        for (l, m) in cases {
            let e = extended_lattice(l).unwrap();
            assert_eq!(e.multiplicities, m, "{l}");
            assert!(e.radical_is_fiber_class(), "{l}");
            // Sum of multiplicities is the component-weighted count m_v + ...;
            // the vertex count is rank + 1.
            assert_eq!(e.rank(), l.rank() + 1);
        }
    }

    #[test]
    fn a1_extends_to_a_double_edge() {
        let e = extended_lattice(AdeLabel::A(1)).unwrap();
        assert_eq!(e.gram.to_rows(), vec![vec![-2, 2], vec![2, -2]]);
    }

    #[test]
    fn projection_and_section() {
        let e = extended_lattice(AdeLabel::D(5)).unwrap();
        for v in (0..e.rank()).filter(|&v| e.multiplicities[v] == 1) {
            let p = e.projection(v).unwrap();
            assert!(p.finite.is_negative_definite());
            assert!(p.project(&e.fiber_class()).is_zero());
            for i in 0..p.finite.rank() {
                let y = p.finite.basis_vector(i);
                assert_eq!(p.project(&p.embed(&y)), y);
            }
            let s = e.section_embed(v).unwrap();
            assert_eq!(s.sub_gram(), *p.finite.gram());
        }
        assert!(e.projection(2).is_err());
        assert!(e.section_embed(2).is_err());
    }

    #[test]
    fn d4_example_sum_of_leaves() {
        let e = extended_lattice(AdeLabel::D(4)).unwrap();
        // Leaves are d0, d1, d3, d4; the center is d2.
        let leaves = LatticeVector(vec![1, 1, 0, 1, 1]);
        let center = LatticeVector::unit(5, 2);
        assert_eq!(leaves.add_scaled(2, &center), e.fiber_class());
        // So leaves + F is twice (F - center).
        let twice = leaves.add(&e.fiber_class());
        assert_eq!(twice.div_exact(2).unwrap(), e.fiber_class().sub(&center));
    }

    #[test]
    fn parity_on_d4_tilde_with_four_leaves() {
        let e = extended_lattice(AdeLabel::D(4)).unwrap();
        let m_tilde: Vec<LatticeVector> =
            [0, 1, 3, 4].iter().map(|&i| LatticeVector::unit(5, i)).collect();
        let cert = verify_parity_argument(&e, &m_tilde).unwrap();
        assert_eq!(cert.index, 2);
        assert_eq!(cert.lifts.len(), 1);
        assert!(cert.lifts[0].ok);
        assert!(cert.subgroups.is_empty());
        assert_eq!(cert.status, Status::Verified);
    }

    #[test]
    fn parity_vacuous_and_invalid() {
        let e = extended_lattice(AdeLabel::D(6)).unwrap();
        assert_eq!(verify_parity_argument(&e, &[]).unwrap().status, Status::Verified);
        let bad = vec![LatticeVector::unit(7, 1), LatticeVector::unit(7, 2)];
        assert!(verify_parity_argument(&e, &bad).is_err());
    }
}
