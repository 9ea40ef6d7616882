//! Kodaira fibre data in characteristic 2 and the counting arguments built
//! on it.

mod census;
mod enumerate;
mod graph;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::AdeLabel;
pub use census::{census_check, pencil_minimum_points, CensusReport, IncidenceProblem, PencilBound};
pub use enumerate::{
    enumerate_configurations, ConfigEntry, EnumerationOptions, EnumerationResult,
    FiberConfiguration,
};
pub use graph::{max_disjoint, max_disjoint_omitting, max_disjoint_with_a2, DualGraph};

/// Kodaira type of a singular fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiberType {
    /// `I_n`, `n >= 1`.
    I(u32),
    II,
    III,
    IV,
    /// `I*_n`, `n >= 0`.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl FiberType {
    pub fn validate(self) -> Result<Self> {
        match self {
            FiberType::I(0) => Err(Error::range("I_0 is a smooth fibre")),
            other => Ok(other),
        }
    }

    /// Dynkin type of the non-identity components; `None` for `I1`, `II`.
    pub fn dynkin(self) -> Option<AdeLabel> {
        match self {
            FiberType::I(1) | FiberType::II | FiberType::I(0) => None,
            FiberType::I(n) => Some(AdeLabel::A(n as usize - 1)),
            FiberType::III => Some(AdeLabel::A(1)),
            FiberType::IV => Some(AdeLabel::A(2)),
            FiberType::IStar(n) => Some(AdeLabel::D(n as usize + 4)),
            FiberType::IVStar => Some(AdeLabel::E(6)),
            FiberType::IIIStar => Some(AdeLabel::E(7)),
            FiberType::IIStar => Some(AdeLabel::E(8)),
        }
    }

    /// Some component has multiplicity > 1.
    pub fn is_non_reduced(self) -> bool {
        matches!(
            self,
            FiberType::IStar(_) | FiberType::IVStar | FiberType::IIIStar | FiberType::IIStar
        )
    }

    /// Short family name: `I`, `II`, `III`, `IV`, `I*`, `IV*`, `III*`, `II*`.
    pub fn family(self) -> &'static str {
        match self {
            FiberType::I(_) => "I",
            FiberType::II => "II",
            FiberType::III => "III",
            FiberType::IV => "IV",
            FiberType::IStar(_) => "I*",
            FiberType::IVStar => "IV*",
            FiberType::IIIStar => "III*",
            FiberType::IIStar => "II*",
        }
    }

    pub fn index(self) -> Option<u32> {
        match self {
            FiberType::I(n) | FiberType::IStar(n) => Some(n),
            _ => None,
        }
    }

    pub fn from_parts(family: &str, n: Option<u32>) -> Result<Self> {
        let t = match (family, n) {
            ("I", Some(n)) => FiberType::I(n),
            ("I*", Some(n)) => FiberType::IStar(n),
            ("II", None) => FiberType::II,
            ("III", None) => FiberType::III,
            ("IV", None) => FiberType::IV,
            ("IV*", None) => FiberType::IVStar,
            ("III*", None) => FiberType::IIIStar,
            ("II*", None) => FiberType::IIStar,
            _ => {
                return Err(Error::UnknownLabel(match n {
                    Some(n) => format!("{family}_{n}"),
                    None => family.to_string(),
                }))
            }
        };
        t.validate()
    }

    /// Every type with `e_v <= 24` (so `I_n` up to 24 and `I*_n` up to 18).
    pub fn all_within_budget(budget: u32) -> Vec<FiberType> {
        let mut out: Vec<FiberType> = (1..=budget).map(FiberType::I).collect();
        out.extend([FiberType::II, FiberType::III, FiberType::IV]);
        out.extend((0..=budget.saturating_sub(6)).map(FiberType::IStar));
        out.extend([FiberType::IVStar, FiberType::IIIStar, FiberType::IIStar]);
        out.retain(|t| fiber_table(*t).map(|r| r.e_v <= budget).unwrap_or(false));
        out
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::I(n) => write!(f, "I_{n}"),
            FiberType::IStar(n) => write!(f, "I*_{n}"),
            other => f.write_str(other.family()),
        }
    }
}

impl FromStr for FiberType {
    type Err = Error;

    /// Accepts `I_6`, `I6`, `I*_1`, `I1*`, `I_1^*`, `IV*`, ...
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s
            .trim()
            .chars()
            .filter(|c| !matches!(c, '_' | '^' | ' ' | '{' | '}'))
            .collect::<String>()
            .to_ascii_uppercase();
        let unknown = || Error::UnknownLabel(s.to_string());
        let digits_start = t.find(|c: char| c.is_ascii_digit());
        match digits_start {
            None => FiberType::from_parts(&t, None).map_err(|_| unknown()),
            Some(pos) => {
                let head = &t[..pos];
                let rest = &t[pos..];
                let (num, tail) = rest.split_at(
                    rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len()),
                );
                let n: u32 = num.parse().map_err(|_| unknown())?;
                let family = match (head, tail) {
                    ("I", "") => "I",
                    ("I*", "") | ("I", "*") => "I*",
                    _ => return Err(unknown()),
                };
                FiberType::from_parts(family, Some(n))
            }
        }
    }
}

impl Serialize for FiberType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FiberType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One column of the characteristic-2 fibre table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberTypeRecord {
    pub kodaira: FiberType,
    pub m_v: u32,
    pub e_v: u32,
    pub delta_min: u32,
    /// `δ` is determined, not just bounded below (`I_n`, `IV`, `IV*`, `I*_1`).
    pub delta_fixed: bool,
    /// `A0` for the irreducible types.
    pub dynkin: String,
    pub n_v: u32,
}

impl FiberTypeRecord {
    pub fn admits_delta(&self, delta: u32) -> bool {
        if self.delta_fixed {
            delta == self.delta_min
        } else {
            delta >= self.delta_min
        }
    }
}

/// Table row for a Kodaira type.
pub fn fiber_table(t: FiberType) -> Result<FiberTypeRecord> {
    let t = t.validate()?;
    let (m_v, e_v, delta_min, delta_fixed, n_v) = match t {
        FiberType::I(n) => (n, n, 0, true, n / 2),
        FiberType::II => (1, 2, 2, false, 0),
        FiberType::III => (2, 3, 1, false, 1),
        FiberType::IV => (3, 4, 0, true, 1),
        FiberType::IStar(1) => (6, 7, 1, true, 4),
        FiberType::IStar(n) => (n + 5, n + 6, 2, false, 4 + n / 2),
        FiberType::IVStar => (7, 8, 0, true, 4),
        FiberType::IIIStar => (8, 9, 1, false, 5),
        FiberType::IIStar => (9, 10, 1, false, 5),
    };
    Ok(FiberTypeRecord {
        kodaira: t,
        m_v,
        e_v,
        delta_min,
        delta_fixed,
        dynkin: t
            .dynkin()
            .map(|l| l.to_string())
            .unwrap_or_else(|| "A0".into()),
        n_v,
    })
}

/// `N_v <= (e_v + δ)/2`, with the computed `N_v`.
pub fn check_nv_bound(t: FiberType, delta: u32) -> Result<bool> {
    let rec = fiber_table(t)?;
    if !rec.admits_delta(delta) {
        return Err(Error::range(format!("δ = {delta} is not allowed for {t}")));
    }
    Ok(2 * max_disjoint(t)? as u32 <= rec.e_v + delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let r = fiber_table(FiberType::IStar(1)).unwrap();
        assert_eq!((r.m_v, r.e_v, r.delta_min, r.n_v), (6, 7, 1, 4));
        let r = fiber_table(FiberType::IVStar).unwrap();
        assert_eq!((r.m_v, r.e_v, r.delta_min, r.n_v), (7, 8, 0, 4));
        let r = fiber_table(FiberType::I(6)).unwrap();
        assert_eq!((r.m_v, r.e_v, r.delta_min, r.n_v), (6, 6, 0, 3));
        let r = fiber_table(FiberType::III).unwrap();
        assert_eq!((r.m_v, r.e_v, r.delta_min), (2, 3, 1));
        let r = fiber_table(FiberType::IIStar).unwrap();
        assert_eq!((r.m_v, r.e_v, r.delta_min), (9, 10, 1));
        assert!(fiber_table(FiberType::I(0)).is_err());
    }

    #[test]
    fn parse_and_display() {
        for (s, t) in [
            ("I_6", FiberType::I(6)),
            ("I6", FiberType::I(6)),
            ("I*_1", FiberType::IStar(1)),
            ("I1*", FiberType::IStar(1)),
            ("I_0^*", FiberType::IStar(0)),
            ("iv*", FiberType::IVStar),
            ("III", FiberType::III),
        ] {
            assert_eq!(s.parse::<FiberType>().unwrap(), t, "{s}");
            assert_eq!(t.to_string().parse::<FiberType>().unwrap(), t);
        }
        assert!("V".parse::<FiberType>().is_err());
        assert!("I*".parse::<FiberType>().is_err());
        assert!("I0".parse::<FiberType>().is_err());
    }

    #[test]
    fn nv_bound_examples() {
        for n in 1..=12 {
            assert!(check_nv_bound(FiberType::I(2 * n), 0).unwrap());
        }
        assert!(check_nv_bound(FiberType::II, 2).unwrap());
        assert!(check_nv_bound(FiberType::IStar(3), 2).unwrap());
        assert!(check_nv_bound(FiberType::IV, 1).is_err());
    }

    #[test]
    fn budget_type_list() {
        let all = FiberType::all_within_budget(24);
        assert!(all.contains(&FiberType::I(24)));
        assert!(all.contains(&FiberType::IStar(18)));
        assert!(!all.contains(&FiberType::IStar(19)));
    }
}
