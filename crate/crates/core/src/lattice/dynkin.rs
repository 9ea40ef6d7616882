use std::collections::BTreeSet;

use serde::Serialize;

use super::intmat::IntMatrix;
use super::roots::enumerate_roots;
use super::{ade_gram, AdeLabel, LatticeVector, RootLatticeModel};
use crate::error::{Error, Result};

/// ADE type of a root lattice, with simple roots ordered as in [`ade_gram`].
#[derive(Clone, Debug, Serialize)]
pub struct RootSystemIdentification {
    /// Irreducible components, sorted.
    pub components: Vec<AdeLabel>,
    /// Simple roots (lattice coordinates), component by component.
    pub simple_roots: Vec<LatticeVector>,
    pub root_count: usize,
    /// The simple roots form a basis of the lattice and their Gram matrix is
    /// exactly the direct sum of the component Gram matrices.
    pub isometry: bool,
}

impl RootSystemIdentification {
    pub fn label(&self) -> String {
        if self.components.is_empty() {
            return "0".into();
        }
        self.components
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Same components as `labels` after resolving `D2`, `D3`.
    pub fn matches(&self, labels: &[AdeLabel]) -> bool {
        let mut want: Vec<AdeLabel> = labels.iter().flat_map(|l| l.components()).collect();
        want.sort();
        want == self.components
    }
}

/// Determines the root system of a negative-definite lattice from its roots.
///
/// Simple roots come from a generic linear functional: the positive roots
/// that are not a sum of two positive roots. Each Dynkin component is then
/// recognised by its arm lengths and relabelled.
pub fn identify_root_system(lattice: &RootLatticeModel) -> Result<RootSystemIdentification> {
    let roots = enumerate_roots(lattice)?;
    let n = lattice.rank();
    let bound = roots
        .iter()
        .flat_map(|r| r.0.iter())
        .map(|x| x.unsigned_abs() as i128)
        .max()
        .unwrap_or(0);
    // Weights base^i with base > 2*bound make the functional injective on
    // differences of roots, so it vanishes on no root.
    let base = 2 * bound + 1;
    let height = |v: &LatticeVector| -> i128 {
        v.0.iter()
            .rev()
            .fold(0i128, |acc, &x| acc * base + x as i128)
    };
    let positive: Vec<&LatticeVector> = roots.iter().filter(|r| height(r) > 0).collect();
    let positive_set: BTreeSet<&LatticeVector> = positive.iter().copied().collect();
    let mut simple: Vec<LatticeVector> = Vec::new();
    'outer: for r in &positive {
        for s in &positive {
            if height(s) < height(r) {
                let d = r.sub(s);
                if positive_set.contains(&d) {
                    continue 'outer;
                }
            }
        }
        simple.push((*r).clone());
    }

    // Components of the Dynkin graph.
    let k = simple.len();
    let adj: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| j != i && lattice.inner(&simple[i], &simple[j]) != 0)
                .collect()
        })
        .collect();
    let mut seen = vec![false; k];
    let mut parts: Vec<(AdeLabel, Vec<usize>)> = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            for &j in &adj[comp[i]] {
                if !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            i += 1;
        }
        parts.push(order_component(&comp, &adj)?);
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));

    let components: Vec<AdeLabel> = parts.iter().map(|p| p.0).collect();
    let simple_roots: Vec<LatticeVector> = parts
        .iter()
        .flat_map(|p| p.1.iter().map(|&i| simple[i].clone()))
        .collect();
    let expected = RootLatticeModel::direct_sum(
        &components
            .iter()
            .map(|&c| ade_gram(c))
            .collect::<Result<Vec<_>>>()?,
    );
    let gram_ok = lattice.gram_of(&simple_roots) == *expected.gram();
    let basis_ok = simple_roots.len() == n && {
        let rows: Vec<Vec<i64>> = simple_roots.iter().map(|v| v.0.clone()).collect();
        IntMatrix::from_rows_with_cols(&rows, n)?.determinant().abs() == 1
    };
    Ok(RootSystemIdentification {
        components,
        simple_roots,
        root_count: roots.len(),
        isometry: gram_ok && basis_ok,
    })
}

/// Orders the vertices of one connected simply-laced Dynkin diagram in the
/// labelling used by `ade_gram`.
fn order_component(comp: &[usize], adj: &[Vec<usize>]) -> Result<(AdeLabel, Vec<usize>)> {
    let in_comp: BTreeSet<usize> = comp.iter().copied().collect();
    let deg = |v: usize| adj[v].iter().filter(|w| in_comp.contains(w)).count();
    let edges: usize = comp.iter().map(|&v| deg(v)).sum::<usize>() / 2;
    if edges + 1 != comp.len() {
        return Err(Error::domain("Dynkin graph of simple roots is not a tree"));
    }
    // Walk from `from` away from `prev` along a path.
    let walk = |prev: usize, from: usize| -> Vec<usize> {
        let mut out = vec![from];
        let (mut p, mut c) = (prev, from);
        while let Some(&nx) = adj[c].iter().find(|&&w| w != p && in_comp.contains(&w)) {
            out.push(nx);
            p = c;
            c = nx;
        }
        out
    };
    let branch: Vec<usize> = comp.iter().copied().filter(|&v| deg(v) >= 3).collect();
    match branch.as_slice() {
        [] => {
            let end = comp
                .iter()
                .copied()
                .filter(|&v| deg(v) <= 1)
                .min()
                .expect("a path has an endpoint");
            Ok((AdeLabel::A(comp.len()), walk(usize::MAX, end)))
        }
        [c] if deg(*c) == 3 => {
            let mut arms: Vec<Vec<usize>> = adj[*c]
                .iter()
                .filter(|w| in_comp.contains(w))
                .map(|&w| walk(*c, w))
                .collect();
            arms.sort_by_key(|a| (a.len(), a[0]));
            let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
            let n = comp.len();
            match lens.as_slice() {
                [1, 1, _] => {
                    // d1 .. d_{n-3}, d_{n-2} = center, then the two leaves.
                    let mut order: Vec<usize> = arms[2].iter().rev().copied().collect();
                    order.push(*c);
                    order.push(arms[0][0]);
                    order.push(arms[1][0]);
                    Ok((AdeLabel::D(n), order))
                }
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => {
                    // e1 e2 e3=center e4 .. e_{n-1}, then e_n on the center.
                    let mut order: Vec<usize> = arms[1].iter().rev().copied().collect();
                    order.push(*c);
                    order.extend(arms[2].iter().copied());
                    order.push(arms[0][0]);
                    Ok((AdeLabel::E(n), order))
                }
                _ => Err(Error::domain(format!(
                    "branched Dynkin graph with arms {lens:?} is not ADE"
                ))),
            }
        }
        _ => Err(Error::domain("Dynkin graph is not of type A, D or E")),
    }
}
