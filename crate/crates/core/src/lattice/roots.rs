use std::collections::{BTreeSet, VecDeque};

use super::{LatticeVector, RootLatticeModel};
use crate::error::{Error, Result};

/// How `enumerate_roots_with` finds the norm −2 vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootStrategy {
    /// Fincke–Pohst search inside the ellipsoid `-⟨x,x⟩ <= 2`. The outermost
    /// coordinate bound is the dual-basis estimate `|x_i| <= sqrt(2 (Q^-1)_ii)`.
    BoundedSearch,
    /// Orbit of the basis vectors under the reflections they generate.
    /// Requires every basis vector to be a root.
    ReflectionClosure,
}

/// All roots of a negative-definite lattice, sorted, by bounded search.
pub fn enumerate_roots(lattice: &RootLatticeModel) -> Result<Vec<LatticeVector>> {
    enumerate_roots_with(lattice, RootStrategy::BoundedSearch)
}

pub fn enumerate_roots_with(
    lattice: &RootLatticeModel,
    strategy: RootStrategy,
) -> Result<Vec<LatticeVector>> {
    if !lattice.is_negative_definite() {
        return Err(Error::domain("root enumeration needs a negative-definite lattice"));
    }
    let mut roots = match strategy {
        RootStrategy::BoundedSearch => bounded_search(lattice, 2),
        RootStrategy::ReflectionClosure => reflection_closure(lattice)?,
    };
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// The reflection `x ↦ x + ⟨x,r⟩ r` in the root `r`.
pub fn reflect(
    lattice: &RootLatticeModel,
    x: &LatticeVector,
    r: &LatticeVector,
) -> Result<LatticeVector> {
    if x.len() != lattice.rank() {
        return Err(Error::Dimension("vector length differs from the rank".into()));
    }
    if !lattice.is_root(r) {
        return Err(Error::domain("reflection vector is not a root"));
    }
    Ok(x.add_scaled(lattice.inner(x, r), r))
}

/// All nonzero `x` with `-⟨x,x⟩ == target`. Floating point only prunes the
/// search tree (with slack); membership is decided in exact integers.
pub(crate) fn bounded_search(lattice: &RootLatticeModel, target: i64) -> Vec<LatticeVector> {
    let n = lattice.rank();
    if n == 0 {
        return Vec::new();
    }
    // q holds the Fincke–Pohst decomposition of Q = -G:
    // x^T Q x = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2.
    let mut q = vec![vec![0f64; n]; n];
    for (i, row) in q.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = -(lattice.gram().get(i, j) as f64);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    const EPS: f64 = 1e-7;
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn recurse(
        i: usize,
        budget: f64,
        q: &[Vec<f64>],
        x: &mut Vec<i64>,
        lattice: &RootLatticeModel,
        target: i64,
        out: &mut Vec<LatticeVector>,
    ) {
        let n = x.len();
        let center: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
        let radius = (budget.max(0.0) / q[i][i]).sqrt();
        let lo = (center - radius - EPS).ceil() as i64;
        let hi = (center + radius + EPS).floor() as i64;
        for xi in lo..=hi {
            let d = xi as f64 - center;
            let rest = budget - q[i][i] * d * d;
            if rest < -EPS {
                continue;
            }
            x[i] = xi;
            if i == 0 {
                let v = LatticeVector(x.clone());
                if -lattice.norm(&v) == target {
                    out.push(v);
                }
            } else {
                recurse(i - 1, rest, q, x, lattice, target, out);
            }
        }
        x[i] = 0;
    }
    recurse(n - 1, target as f64 + EPS, &q, &mut x, lattice, target, &mut out);
    out
}

fn reflection_closure(lattice: &RootLatticeModel) -> Result<Vec<LatticeVector>> {
    let n = lattice.rank();
    let simple: Vec<LatticeVector> = (0..n).map(|i| lattice.basis_vector(i)).collect();
    if simple.iter().any(|s| !lattice.is_root(s)) {
        return Err(Error::domain(
            "reflection closure needs a basis of roots (simple-root basis)",
        ));
    }
    let mut seen: BTreeSet<LatticeVector> = BTreeSet::new();
    let mut queue: VecDeque<LatticeVector> = VecDeque::new();
    for s in &simple {
        for v in [s.clone(), s.neg()] {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    while let Some(x) = queue.pop_front() {
        for s in &simple {
            let k = lattice.inner(&x, s);
            if k == 0 {
                continue;
            }
            let y = x.add_scaled(k, s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{ade_gram, AdeLabel};

    /// Plain box search over `[-b, b]^n`, with `b` from the dual-basis bound.
    fn box_oracle(l: &RootLatticeModel, b: i64) -> Vec<LatticeVector> {
        let n = l.rank();
        let mut out = Vec::new();
        let side = (2 * b + 1) as usize;
        let total = side.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let v: Vec<i64> = (0..n)
                .map(|_| {
                    let d = (c % side) as i64 - b;
                    c /= side;
                    d
                })
                .collect();
            let v = LatticeVector(v);
            if l.norm(&v) == -2 {
                out.push(v);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn a1_has_two_roots() {
        let l = ade_gram(AdeLabel::A(1)).unwrap();
        let r = enumerate_roots(&l).unwrap();
        assert_eq!(r, vec![LatticeVector(vec![-1]), LatticeVector(vec![1])]);
    }

    #[test]
    fn small_counts_match_box_oracle() {
        // Highest-root coefficients are at most 1 (A2) and 2 (D4).
        let a2 = ade_gram(AdeLabel::A(2)).unwrap();
        let oracle = box_oracle(&a2, 2);
        assert_eq!(oracle.len(), 6);
        assert_eq!(enumerate_roots(&a2).unwrap(), oracle);

        let d4 = ade_gram(AdeLabel::D(4)).unwrap();
        let oracle = box_oracle(&d4, 2);
        assert_eq!(oracle.len(), 24);
        assert_eq!(enumerate_roots(&d4).unwrap(), oracle);
    }

    #[test]
    fn reflect_examples() {
        let a2 = ade_gram(AdeLabel::A(2)).unwrap();
        let d1 = a2.basis_vector(0);
        let d2 = a2.basis_vector(1);
        assert_eq!(reflect(&a2, &d1, &d1).unwrap(), d1.neg());
        assert_eq!(reflect(&a2, &d2, &d1).unwrap(), LatticeVector(vec![1, 1]));
        let a1a1 = ade_gram(AdeLabel::D(2)).unwrap();
        let x = a1a1.basis_vector(1);
        assert_eq!(reflect(&a1a1, &x, &a1a1.basis_vector(0)).unwrap(), x);
        assert!(reflect(&a2, &d1, &LatticeVector(vec![1, -1])).is_err());
    }

    #[test]
    fn non_definite_input_is_rejected() {
        let g = crate::lattice::IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let l = RootLatticeModel::from_gram(g).unwrap();
        assert!(enumerate_roots(&l).is_err());
    }
}
