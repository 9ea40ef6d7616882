use serde::{Deserialize, Serialize};

/// Outcome of a certification run.
///
/// `NotChecked` is reported whenever a search budget prevented a full check;
/// it is never folded into `Verified`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Refuted,
    NotChecked,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Verified
        } else {
            Status::Refuted
        }
    }

    /// Combines two statuses: any refutation wins, then any unchecked part.
    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Refuted, _) | (_, Status::Refuted) => Status::Refuted,
            (Status::NotChecked, _) | (_, Status::NotChecked) => Status::NotChecked,
            _ => Status::Verified,
        }
    }

    pub fn all<I: IntoIterator<Item = Status>>(it: I) -> Status {
        it.into_iter().fold(Status::Verified, Status::and)
    }

    pub fn is_verified(self) -> bool {
        self == Status::Verified
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::NotChecked => "not_checked",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combine() {
        assert_eq!(Status::Verified.and(Status::NotChecked), Status::NotChecked);
        assert_eq!(Status::NotChecked.and(Status::Refuted), Status::Refuted);
        assert_eq!(Status::all([]), Status::Verified);
        assert_eq!(
            serde_json::to_string(&Status::NotChecked).unwrap(),
            "\"not_checked\""
        );
    }
}
