//! Point/plane incidence counting: nodes on non-reduced planes.

use serde::Serialize;

use crate::error::{Error, Result};

/// `num_points` points, blocks of `points_per_block`, every point on
/// `blocks_per_point` blocks, two blocks sharing at most `max_shared_points`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceProblem {
    pub num_points: usize,
    pub points_per_block: usize,
    pub blocks_per_point: usize,
    pub max_shared_points: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub problem: IncidenceProblem,
    /// `b` with `b · k = v · r`, when it exists.
    pub blocks: Option<usize>,
    pub arithmetic_feasible: bool,
    pub arithmetic: String,
    /// Result of the exhaustive incidence search; `None` when it was not run
    /// (arithmetic already excludes the problem, or the instance is too big).
    pub exhaustive_feasible: Option<bool>,
    /// Blocks of a realising incidence structure (point indices).
    pub example: Option<Vec<Vec<usize>>>,
}

impl CensusReport {
    pub fn feasible(&self) -> Option<bool> {
        if !self.arithmetic_feasible {
            Some(false)
        } else {
            self.exhaustive_feasible
        }
    }
}

const SEARCH_POINT_LIMIT: usize = 24;
const SEARCH_BLOCK_LIMIT: usize = 12;

pub fn census_check(p: IncidenceProblem) -> Result<CensusReport> {
    let IncidenceProblem {
        num_points: v,
        points_per_block: k,
        blocks_per_point: r,
        max_shared_points: cap,
    } = p;
    if v == 0 || k == 0 || r == 0 {
        return Err(Error::Input("all incidence parameters must be positive".into()));
    }
    if k > v {
        return Err(Error::Input("blocks larger than the point set".into()));
    }
    let total = v * r;
    let blocks = (total % k == 0).then_some(total / k);
    let arithmetic = match blocks {
        Some(b) => format!("{k}·b = {v}·{r} = {total} gives b = {b}"),
        None => format!("{k}·b = {v}·{r} = {total} has no integer solution"),
    };
    let mut report = CensusReport {
        problem: p,
        blocks,
        arithmetic_feasible: blocks.is_some(),
        arithmetic,
        exhaustive_feasible: None,
        example: None,
    };
    if let Some(b) = blocks {
        if v <= SEARCH_POINT_LIMIT && b <= SEARCH_BLOCK_LIMIT {
            let found = search_incidence(v, k, r, cap, b);
            report.exhaustive_feasible = Some(found.is_some());
            report.example = found.map(|bs| {
                bs.iter()
                    .map(|m| (0..v).filter(|&i| m >> i & 1 == 1).collect())
                    .collect()
            });
        }
    }
    Ok(report)
}

/// Backtracking: the next block always contains the lowest point that still
/// lacks blocks, which loses no solutions.
fn search_incidence(v: usize, k: usize, r: usize, cap: usize, b: usize) -> Option<Vec<u64>> {
    fn go(
        v: usize,
        k: usize,
        r: usize,
        cap: usize,
        b: usize,
        deg: &mut Vec<usize>,
        chosen: &mut Vec<u64>,
    ) -> bool {
        let Some(p) = (0..v).find(|&i| deg[i] < r) else {
            return chosen.len() == b;
        };
        if chosen.len() == b {
            return false;
        }
        let open: Vec<usize> = (p + 1..v).filter(|&i| deg[i] < r).collect();
        let mut pick: Vec<usize> = Vec::with_capacity(k - 1);
        fn combos(
            open: &[usize],
            from: usize,
            need: usize,
            pick: &mut Vec<usize>,
            f: &mut dyn FnMut(&[usize]) -> bool,
        ) -> bool {
            if need == 0 {
                return f(pick);
            }
            for i in from..open.len() {
                if open.len() - i < need {
                    break;
                }
                pick.push(open[i]);
                if combos(open, i + 1, need - 1, pick, f) {
                    return true;
                }
                pick.pop();
            }
            false
        }
        let mut try_block = |others: &[usize]| -> bool {
            let mask = others.iter().fold(1u64 << p, |m, &i| m | 1 << i);
            if chosen.contains(&mask)
                || chosen.iter().any(|&c| (c & mask).count_ones() as usize > cap)
            {
                return false;
            }
            for i in std::iter::once(p).chain(others.iter().copied()) {
                deg[i] += 1;
            }
            chosen.push(mask);
            if go(v, k, r, cap, b, deg, chosen) {
                return true;
            }
            chosen.pop();
            for i in std::iter::once(p).chain(others.iter().copied()) {
                deg[i] -= 1;
            }
            false
        };
        combos(&open, 0, k - 1, &mut pick, &mut try_block)
    }
    let mut deg = vec![0; v];
    let mut chosen = Vec::new();
    go(v, k, r, cap, b, &mut deg, &mut chosen).then_some(chosen)
}

/// `b` blocks of size `k` through a common point, pairwise meeting in exactly
/// `lambda` points: minimal size of their union.
#[derive(Clone, Debug, Serialize)]
pub struct PencilBound {
    pub blocks: usize,
    pub points_per_block: usize,
    pub lambda: usize,
    /// `1 + b(k-1) - C(b,2)(λ-1)`.
    pub formula: i64,
    /// Exhaustive minimum over all overlap patterns.
    pub minimum: Option<u64>,
}

pub fn pencil_minimum_points(b: usize, k: usize, lambda: usize) -> Result<PencilBound> {
    if b == 0 || b > 6 || k < 2 || lambda == 0 || lambda > k {
        return Err(Error::range("pencil search needs 1 <= b <= 6, k >= 2, 1 <= λ <= k"));
    }
    let formula = 1 + (b * (k - 1)) as i64 - (b * (b - 1) / 2 * (lambda - 1)) as i64;
    // n_S: number of points other than the common one lying in exactly the
    // blocks S. Blocks force Σ_{S∋i} n_S = k-1, pairs Σ_{S⊇{i,j}} n_S = λ-1.
    let multi: Vec<u32> = (1u32..1 << b).filter(|s| s.count_ones() >= 2).collect();
    let pairs: Vec<u32> = (0..b)
        .flat_map(|i| (i + 1..b).map(move |j| (1u32 << i) | (1u32 << j)))
        .collect();
    let mut best: Option<u64> = None;
    #[allow(clippy::too_many_arguments)]
    fn go(
        idx: usize,
        multi: &[u32],
        pairs: &[u32],
        pair_sum: &mut Vec<usize>,
        block_sum: &mut Vec<usize>,
        used: u64,
        b: usize,
        k: usize,
        lambda: usize,
        best: &mut Option<u64>,
    ) {
        if idx == multi.len() {
            if pair_sum.iter().any(|&s| s != lambda - 1) {
                return;
            }
            // Remaining incidences are points on a single block.
            let singles: usize = block_sum.iter().map(|&s| k - 1 - s).sum();
            let total = 1 + used + singles as u64;
            if best.is_none_or(|x| total < x) {
                *best = Some(total);
            }
            return;
        }
        let s = multi[idx];
        let mut n = 0usize;
        loop {
            let ok_pairs = pairs
                .iter()
                .enumerate()
                .all(|(pi, &pm)| pm & s != pm || pair_sum[pi] + n < lambda);
            let ok_blocks = (0..b).all(|i| s >> i & 1 == 0 || block_sum[i] + n < k);
            if !(ok_pairs && ok_blocks) {
                break;
            }
            for (pi, &pm) in pairs.iter().enumerate() {
                if pm & s == pm {
                    pair_sum[pi] += n;
                }
            }
            for (i, bs) in block_sum.iter_mut().enumerate() {
                if s >> i & 1 == 1 {
                    *bs += n;
                }
            }
            go(idx + 1, multi, pairs, pair_sum, block_sum, used + n as u64, b, k, lambda, best);
            for (pi, &pm) in pairs.iter().enumerate() {
                if pm & s == pm {
                    pair_sum[pi] -= n;
                }
            }
            for (i, bs) in block_sum.iter_mut().enumerate() {
                if s >> i & 1 == 1 {
                    *bs -= n;
                }
            }
            n += 1;
        }
    }
    let mut pair_sum = vec![0; pairs.len()];
    let mut block_sum = vec![0; b];
    go(0, &multi, &pairs, &mut pair_sum, &mut block_sum, 0, b, k, lambda, &mut best);
    Ok(PencilBound {
        blocks: b,
        points_per_block: k,
        lambda,
        formula,
        minimum: best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(v: usize, k: usize, r: usize, cap: usize) -> IncidenceProblem {
        IncidenceProblem {
            num_points: v,
            points_per_block: k,
            blocks_per_point: r,
            max_shared_points: cap,
        }
    }

    #[test]
    fn thirteen_nodes_is_arithmetically_impossible() {
        let r = census_check(problem(13, 6, 3, 2)).unwrap();
        assert!(!r.arithmetic_feasible);
        assert_eq!(r.blocks, None);
        assert_eq!(r.feasible(), Some(false));
        assert!(r.arithmetic.contains("39"));
    }

    #[test]
    fn twelve_nodes_on_four_planes() {
        let r = census_check(problem(12, 6, 2, 2)).unwrap();
        assert_eq!(r.blocks, Some(4));
        assert_eq!(r.exhaustive_feasible, Some(true));
        let ex = r.example.unwrap();
        assert_eq!(ex.len(), 4);
        for (i, a) in ex.iter().enumerate() {
            assert_eq!(a.len(), 6);
            for b in &ex[i + 1..] {
                assert!(a.iter().filter(|p| b.contains(p)).count() <= 2);
            }
        }
        for p in 0..12 {
            assert_eq!(ex.iter().filter(|blk| blk.contains(&p)).count(), 2);
        }
    }

    #[test]
    fn small_infeasible_by_search() {
        // Fano-like parameters with a too-strict cap: 7 points, lines of 3,
        // 3 lines per point, lines disjoint is impossible.
        let r = census_check(problem(7, 3, 3, 0)).unwrap();
        assert!(r.arithmetic_feasible);
        assert_eq!(r.exhaustive_feasible, Some(false));
        // With cap 1 the Fano plane exists.
        let r = census_check(problem(7, 3, 3, 1)).unwrap();
        assert_eq!(r.exhaustive_feasible, Some(true));
    }

    #[test]
    fn pencil_of_four_planes_needs_fifteen_points() {
        let p = pencil_minimum_points(4, 6, 2).unwrap();
        assert_eq!(p.formula, 15);
        assert_eq!(p.minimum, Some(15));
        let three = pencil_minimum_points(3, 6, 2).unwrap();
        assert_eq!(three.minimum, Some(13));
    }
}
