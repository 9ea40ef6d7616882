//! Exhaustive search over configurations of singular fibres with
//! `Σ (e_v + δ_v) = budget`, maximising the number of disjoint curves.

use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::Serialize;

use super::graph::{max_disjoint, max_disjoint_with_a2};
use super::{fiber_table, FiberType};
use crate::error::{Error, Result};

/// One singular fibre of a configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConfigEntry {
    pub fiber: FiberType,
    pub delta: u32,
    /// Number of `A2` configurations required on this fibre.
    pub a2: u32,
    /// `N_v` (or `N_v^(a2)`).
    pub value: u32,
}

impl Serialize for ConfigEntry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let fields = 2 + self.fiber.index().is_some() as usize + (self.a2 > 0) as usize;
        let mut st = s.serialize_struct("ConfigEntry", fields)?;
        st.serialize_field("type", self.fiber.family())?;
        if let Some(n) = self.fiber.index() {
            st.serialize_field("n", &n)?;
        } else {
            st.skip_field("n")?;
        }
        st.serialize_field("delta", &self.delta)?;
        if self.a2 > 0 {
            st.serialize_field("a2", &self.a2)?;
        } else {
            st.skip_field("a2")?;
        }
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FiberConfiguration {
    pub fibers: Vec<ConfigEntry>,
    pub cost: u32,
    #[serde(rename = "N_total")]
    pub n_total: u32,
}

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    pub budget: u32,
    /// Prescribed `Σ i_v` (number of `A2`'s on the fibres).
    pub required_a2: u32,
    /// Consider the fibre types in reverse order (determinism check).
    pub reverse_order: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            budget: 24,
            required_a2: 0,
            reverse_order: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerationResult {
    pub budget: u32,
    pub required_a2: u32,
    /// `budget != 24`.
    pub nonstandard_budget: bool,
    pub max: Option<u32>,
    pub types_at_max: Vec<String>,
    /// Every optimal configuration has `δ_v = δ_min` on every fibre.
    pub minimal_delta_at_max: bool,
    pub configurations: Vec<FiberConfiguration>,
}

/// Class of a fibre type as listed among the extremal configurations.
fn family_class(t: FiberType) -> &'static str {
    match t {
        FiberType::I(n) if n % 2 == 0 => "I_2n",
        FiberType::I(_) => "I_2n+1",
        FiberType::IStar(1) => "I*_1",
        FiberType::IStar(n) if n % 2 == 0 => "I*_2n",
        FiberType::IStar(_) => "I*_2n+1",
        other => other.family(),
    }
}

const CLASS_ORDER: [&str; 11] = [
    "I_2n", "I_2n+1", "II", "III", "IV", "I*_2n", "I*_1", "I*_2n+1", "IV*", "III*", "II*",
];

pub fn enumerate_configurations(opts: &EnumerationOptions) -> Result<EnumerationResult> {
    if opts.budget == 0 || opts.budget > 48 {
        return Err(Error::range("budget must be in 1..=48"));
    }
    let b = opts.budget as usize;
    let ra = opts.required_a2 as usize;
    let mut items: Vec<ConfigEntry> = Vec::new();
    for t in FiberType::all_within_budget(opts.budget) {
        let rec = fiber_table(t)?;
        let deltas: Vec<u32> = if rec.delta_fixed {
            vec![rec.delta_min]
        } else {
            (rec.delta_min..=opts.budget.saturating_sub(rec.e_v)).collect()
        };
        for a2 in 0..=opts.required_a2 {
            let value = if a2 == 0 {
                Some(max_disjoint(t)?)
            } else {
                max_disjoint_with_a2(t, a2 as usize)?
            };
            let Some(value) = value else { continue };
            for &delta in &deltas {
                if rec.e_v + delta <= opts.budget {
                    items.push(ConfigEntry {
                        fiber: t,
                        delta,
                        a2,
                        value: value as u32,
                    });
                }
            }
        }
    }
    if opts.reverse_order {
        items.reverse();
    }
    let cost = |e: &ConfigEntry| -> usize {
        (fiber_table(e.fiber).expect("listed type").e_v + e.delta) as usize
    };
    let costs: Vec<usize> = items.iter().map(cost).collect();

    // best[c][a]: maximal value of a multiset of exact cost c with Σ a2 = a.
    let mut best: Vec<Vec<Option<u32>>> = vec![vec![None; ra + 1]; b + 1];
    best[0][0] = Some(0);
    for c in 1..=b {
        for a in 0..=ra {
            let mut v: Option<u32> = None;
            for (it, &ic) in items.iter().zip(&costs) {
                let ia = it.a2 as usize;
                if ic <= c && ia <= a {
                    if let Some(prev) = best[c - ic][a - ia] {
                        v = v.max(Some(prev + it.value));
                    }
                }
            }
            best[c][a] = v;
        }
    }
    let max = best[b][ra];

    let mut configurations: Vec<FiberConfiguration> = Vec::new();
    if let Some(opt) = max {
        let mut current: Vec<usize> = Vec::new();
        #[allow(clippy::too_many_arguments)]
        fn dfs(
            items: &[ConfigEntry],
            costs: &[usize],
            best: &[Vec<Option<u32>>],
            start: usize,
            rem: usize,
            ra: usize,
            need: u32,
            current: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if rem == 0 {
                if ra == 0 && need == 0 {
                    out.push(current.clone());
                }
                return;
            }
            for k in start..items.len() {
                let (c, a, v) = (costs[k], items[k].a2 as usize, items[k].value);
                if c > rem || a > ra || v > need {
                    continue;
                }
                if best[rem - c][ra - a] == Some(need - v) {
                    current.push(k);
                    dfs(items, costs, best, k, rem - c, ra - a, need - v, current, out);
                    current.pop();
                }
            }
        }
        let mut raw = Vec::new();
        dfs(&items, &costs, &best, 0, b, ra, opt, &mut current, &mut raw);
        configurations = raw
            .into_iter()
            .map(|idx| {
                let mut fibers: Vec<ConfigEntry> = idx.iter().map(|&k| items[k]).collect();
                fibers.sort();
                FiberConfiguration {
                    cost: idx.iter().map(|&k| costs[k] as u32).sum(),
                    n_total: fibers.iter().map(|e| e.value).sum(),
                    fibers,
                }
            })
            .collect();
        configurations.sort();
        configurations.dedup();
    }
    let present: BTreeSet<&str> = configurations
        .iter()
        .flat_map(|c| c.fibers.iter().map(|e| family_class(e.fiber)))
        .collect();
    let types_at_max = CLASS_ORDER
        .iter()
        .filter(|c| present.contains(*c))
        .map(|c| c.to_string())
        .collect();
    let minimal_delta_at_max = configurations.iter().all(|c| {
        c.fibers
            .iter()
            .all(|e| fiber_table(e.fiber).map(|r| r.delta_min == e.delta).unwrap_or(false))
    });
    Ok(EnumerationResult {
        budget: opts.budget,
        required_a2: opts.required_a2,
        nonstandard_budget: opts.budget != 24,
        max,
        types_at_max,
        minimal_delta_at_max,
        configurations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn optimum_is_twelve() {
        let r = enumerate_configurations(&EnumerationOptions::default()).unwrap();
        assert_eq!(r.max, Some(12));
        assert_eq!(r.types_at_max, ["I_2n", "I*_2n", "I*_1", "IV*", "III*"]);
        assert!(r.minimal_delta_at_max);
        assert!(r.configurations.iter().all(|c| c.cost == 24 && c.n_total == 12));
        let twelve_i2 = r.configurations.iter().any(|c| {
            c.fibers.len() == 12 && c.fibers.iter().all(|e| e.fiber == FiberType::I(2))
        });
        assert!(twelve_i2);
    }

    #[test]
    fn order_does_not_matter() {
        let a = enumerate_configurations(&EnumerationOptions::default()).unwrap();
        let b = enumerate_configurations(&EnumerationOptions {
            reverse_order: true,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(a.configurations, b.configurations);
    }

    #[test]
    fn one_a2_gives_eleven() {
        let r = enumerate_configurations(&EnumerationOptions {
            required_a2: 1,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(r.max, Some(11));
    }

    #[test]
    fn small_budget_oracle() {
        // Budget 4 by hand: I2+I2 (2), I4 (2), IV (1), I3+I1 (1), ...
        let r = enumerate_configurations(&EnumerationOptions {
            budget: 4,
            ..Default::default()
        })
        .unwrap();
        assert!(r.nonstandard_budget);
        assert_eq!(r.max, Some(2));
        assert_eq!(r.configurations.len(), 2);
    }

    #[test]
    fn json_shape() {
        let c = FiberConfiguration {
            fibers: vec![ConfigEntry {
                fiber: FiberType::IStar(1),
                delta: 1,
                a2: 0,
                value: 4,
            }],
            cost: 8,
            n_total: 4,
        };
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"fibers":[{"type":"I*","n":1,"delta":1}],"cost":8,"N_total":4}"#
        );
    }
}
