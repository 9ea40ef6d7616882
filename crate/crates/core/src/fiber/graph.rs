use serde::Serialize;

use super::FiberType;
use crate::error::{Error, Result};

/// Dual graph of the components of a fibre: adjacency holds intersection
/// numbers, multiplicities the coefficients in the fibre class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub vertices: Vec<String>,
    pub adjacency: Vec<Vec<u32>>,
    pub multiplicities: Vec<u32>,
}

impl DualGraph {
    fn with_vertices(mults: Vec<u32>) -> Self {
        let n = mults.len();
        DualGraph {
            vertices: (0..n).map(|i| format!("c{i}")).collect(),
            adjacency: vec![vec![0; n]; n],
            multiplicities: mults,
        }
    }

    fn connect(&mut self, a: usize, b: usize, k: u32) {
        self.adjacency[a][b] = k;
        self.adjacency[b][a] = k;
    }

    /// A central vertex with arms; each arm lists multiplicities outwards.
    fn star(center: u32, arms: &[&[u32]]) -> Self {
        let mut mults = vec![center];
        for arm in arms {
            mults.extend_from_slice(arm);
        }
        let mut g = DualGraph::with_vertices(mults);
        let mut next = 1;
        for arm in arms {
            let mut prev = 0;
            for _ in arm.iter() {
                g.connect(prev, next, 1);
                prev = next;
                next += 1;
            }
        }
        g
    }

    /// Dual graph of the components of a fibre of type `t`. The irreducible
    /// types `I1` and `II` contain no (−2)-curves and get the empty graph.
    pub fn of(t: FiberType) -> Result<Self> {
        let t = t.validate()?;
        Ok(match t {
            FiberType::I(1) | FiberType::II => DualGraph::with_vertices(Vec::new()),
            FiberType::I(2) | FiberType::III => {
                let mut g = DualGraph::with_vertices(vec![1, 1]);
                g.connect(0, 1, 2);
                g
            }
            FiberType::IV => {
                let mut g = DualGraph::with_vertices(vec![1, 1, 1]);
                g.connect(0, 1, 1);
                g.connect(1, 2, 1);
                g.connect(0, 2, 1);
                g
            }
            FiberType::I(n) => {
                let n = n as usize;
                let mut g = DualGraph::with_vertices(vec![1; n]);
                for i in 0..n {
                    g.connect(i, (i + 1) % n, 1);
                }
                g
            }
            FiberType::IStar(n) => {
                // leaves 0,1 on c_0; chain c_0..c_n; leaves on c_n.
                let n = n as usize;
                let mut mults = vec![1, 1];
                mults.extend(std::iter::repeat_n(2, n + 1));
                mults.extend([1, 1]);
                let mut g = DualGraph::with_vertices(mults);
                let first = 2;
                let last = 2 + n;
                g.connect(0, first, 1);
                g.connect(1, first, 1);
                for i in first..last {
                    g.connect(i, i + 1, 1);
                }
                g.connect(last + 1, last, 1);
                g.connect(last + 2, last, 1);
                g
            }
            FiberType::IVStar => DualGraph::star(3, &[&[2, 1], &[2, 1], &[2, 1]]),
            FiberType::IIIStar => DualGraph::star(4, &[&[3, 2, 1], &[3, 2, 1], &[2]]),
            FiberType::IIStar => DualGraph::star(6, &[&[5, 4, 3, 2, 1], &[4, 2], &[3]]),
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `(-2 I + adjacency) · m = 0`.
    pub fn multiplicities_in_radical(&self) -> bool {
        (0..self.len()).all(|i| {
            let s: i64 = (0..self.len())
                .map(|j| {
                    let g = if i == j { -2 } else { self.adjacency[i][j] as i64 };
                    g * self.multiplicities[j] as i64
                })
                .sum();
            s == 0
        })
    }

    fn masks(&self) -> Vec<u64> {
        assert!(self.len() <= 64, "dual graphs are limited to 64 vertices");
        (0..self.len())
            .map(|i| {
                (0..self.len())
                    .filter(|&j| j != i && self.adjacency[i][j] > 0)
                    .fold(0u64, |m, j| m | 1 << j)
            })
            .collect()
    }

    fn all(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// A maximum independent set inside `avail` (bitmask).
    pub fn max_independent_set(&self, avail: u64) -> u64 {
        mis(&self.masks(), avail & self.all())
    }

    /// Maximal `r` for `i` disjoint `A2` pairs (components meeting with
    /// intersection number exactly 1) plus `r - i` further components, all
    /// pairwise disjoint. `None` if not even the `i` pairs fit.
    pub fn max_with_a2(&self, i: usize) -> Option<usize> {
        let nbr = self.masks();
        let closed = |v: usize| nbr[v] | 1 << v;
        let edges: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|a| (a + 1..self.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| self.adjacency[a][b] == 1)
            .collect();
        fn go(
            edges: &[(usize, usize)],
            from: usize,
            left: usize,
            avail: u64,
            nbr: &[u64],
            closed: &dyn Fn(usize) -> u64,
        ) -> Option<usize> {
            if left == 0 {
                return Some(mis(nbr, avail).count_ones() as usize);
            }
            let mut best: Option<usize> = None;
            for (k, &(a, b)) in edges.iter().enumerate().skip(from) {
                if avail >> a & 1 == 1 && avail >> b & 1 == 1 {
                    let rest = avail & !closed(a) & !closed(b);
                    if let Some(v) = go(edges, k + 1, left - 1, rest, nbr, closed) {
                        best = best.max(Some(v + 1));
                    }
                }
            }
            best
        }
        go(&edges, 0, i, self.all(), &nbr, &closed)
    }
}

/// Exact maximum independent set by branching, with the standard reduction
/// that a vertex of degree <= 1 can always be taken.
fn mis(nbr: &[u64], avail: u64) -> u64 {
    if avail == 0 {
        return 0;
    }
    let mut best_v = usize::MAX;
    let mut best_deg = u32::MAX;
    let mut max_v = usize::MAX;
    let mut max_deg = 0;
    let mut bits = avail;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let d = (nbr[v] & avail).count_ones();
        if d < best_deg {
            best_deg = d;
            best_v = v;
        }
        if d > max_deg || max_v == usize::MAX {
            max_deg = d;
            max_v = v;
        }
    }
    if best_deg <= 1 {
        let v = best_v;
        return 1 << v | mis(nbr, avail & !(nbr[v] | 1 << v));
    }
    let v = max_v;
    let with = 1 << v | mis(nbr, avail & !(nbr[v] | 1 << v));
    let without = mis(nbr, avail & !(1 << v));
    if with.count_ones() >= without.count_ones() {
        with
    } else {
        without
    }
}

/// `N_v`: maximal number of disjoint (−2)-components.
pub fn max_disjoint(t: FiberType) -> Result<usize> {
    let g = DualGraph::of(t)?;
    Ok(g.max_independent_set(u64::MAX).count_ones() as usize)
}

/// `N_v^(i)`; `None` when `i` disjoint `A2`'s do not fit.
pub fn max_disjoint_with_a2(t: FiberType, i: usize) -> Result<Option<usize>> {
    Ok(DualGraph::of(t)?.max_with_a2(i))
}

/// `N_v'`: maximal number of disjoint components avoiding `vertex`.
pub fn max_disjoint_omitting(t: FiberType, vertex: usize) -> Result<usize> {
    let g = DualGraph::of(t)?;
    if vertex >= g.len() {
        return Err(Error::Range(format!(
            "{t} has {} components, no vertex {vertex}",
            g.len()
        )));
    }
    Ok(g.max_independent_set(!(1u64 << vertex)).count_ones() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{extended_lattice, AdeLabel};

    /// Brute force over all subsets.
    fn brute_mis(g: &DualGraph, avail: u64) -> usize {
        let n = g.len();
        let mut best = 0;
        for s in 0u64..1 << n {
            if s & !avail != 0 {
                continue;
            }
            let ok = (0..n).all(|a| {
                s >> a & 1 == 0 || (a + 1..n).all(|b| s >> b & 1 == 0 || g.adjacency[a][b] == 0)
            });
            if ok {
                best = best.max(s.count_ones() as usize);
            }
        }
        best
    }

    fn small_types() -> Vec<FiberType> {
        let mut v: Vec<FiberType> = (1..=14).map(FiberType::I).collect();
        v.extend([FiberType::II, FiberType::III, FiberType::IV]);
        v.extend((0..=9).map(FiberType::IStar));
        v.extend([FiberType::IVStar, FiberType::IIIStar, FiberType::IIStar]);
        v
    }

    #[test]
    fn mis_matches_subset_brute_force() {
        for t in small_types() {
            let g = DualGraph::of(t).unwrap();
            assert_eq!(max_disjoint(t).unwrap(), brute_mis(&g, u64::MAX), "{t}");
            for v in 0..g.len() {
                assert_eq!(
                    max_disjoint_omitting(t, v).unwrap(),
                    brute_mis(&g, !(1 << v)),
                    "{t} - {v}"
                );
            }
        }
    }

    #[test]
    fn component_counts_and_radical() {
        for t in small_types() {
            let g = DualGraph::of(t).unwrap();
            let rec = super::super::fiber_table(t).unwrap();
            if !matches!(t, FiberType::I(1) | FiberType::II) {
                assert_eq!(g.len() as u32, rec.m_v, "{t}");
            }
            assert!(g.multiplicities_in_radical(), "{t}");
        }
    }

    #[test]
    fn non_reduced_graphs_match_affine_lattices() {
        // Independent construction via the highest root.
        for (t, l) in [
            (FiberType::IStar(0), AdeLabel::D(4)),
            (FiberType::IStar(3), AdeLabel::D(7)),
            (FiberType::IVStar, AdeLabel::E(6)),
            (FiberType::IIIStar, AdeLabel::E(7)),
            (FiberType::IIStar, AdeLabel::E(8)),
        ] {
            let g = DualGraph::of(t).unwrap();
            let e = extended_lattice(l).unwrap();
            let mut a: Vec<u32> = g.multiplicities.clone();
            let mut b: Vec<u32> = e.multiplicities.iter().map(|&x| x as u32).collect();
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b, "{t}");
            let edges_g: usize = g.adjacency.iter().flatten().filter(|&&x| x > 0).count();
            let edges_e = (0..e.rank())
                .flat_map(|i| (0..e.rank()).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && e.gram.get(i, j) != 0)
                .count();
            assert_eq!(edges_g, edges_e, "{t}");
        }
    }

    #[test]
    fn a2_examples() {
        assert_eq!(max_disjoint_with_a2(FiberType::IVStar, 3).unwrap(), Some(3));
        assert_eq!(max_disjoint_with_a2(FiberType::III, 1).unwrap(), None);
        assert_eq!(max_disjoint_with_a2(FiberType::I(2), 1).unwrap(), None);
        assert_eq!(max_disjoint_with_a2(FiberType::IV, 1).unwrap(), Some(1));
        for t in small_types() {
            assert_eq!(
                max_disjoint_with_a2(t, 0).unwrap(),
                Some(max_disjoint(t).unwrap()),
                "{t}"
            );
        }
    }

    #[test]
    fn omitting_examples() {
        // I*_0 minus a leaf leaves the star with three leaves.
        assert_eq!(max_disjoint_omitting(FiberType::IStar(0), 0).unwrap(), 3);
        // III*: the simple component is the end of a long arm.
        let g = DualGraph::of(FiberType::IIIStar).unwrap();
        let simple: Vec<usize> = (0..g.len()).filter(|&v| g.multiplicities[v] == 1).collect();
        assert_eq!(simple.len(), 2);
        for v in simple {
            assert!(max_disjoint_omitting(FiberType::IIIStar, v).unwrap() <= 4);
        }
        assert!(max_disjoint_omitting(FiberType::IV, 3).is_err());
    }

    #[test]
    fn closed_forms_for_long_chains() {
        for n in 1..=40 {
            assert_eq!(max_disjoint(FiberType::I(n)).unwrap(), n as usize / 2);
            assert_eq!(max_disjoint(FiberType::IStar(n)).unwrap(), 4 + n as usize / 2);
        }
    }
}
