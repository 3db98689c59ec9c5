use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Status of a docketed labor case. Also serves as the report "remark".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseStatus {
    Docketed,
    MandatoryConference,
    SubmittedForDecision,
    Decided,
    Settled,
    Dismissed,
    Withdrawn,
    Archived,
}

use CaseStatus::*;

impl CaseStatus {
    pub const ALL: [CaseStatus; 8] = [
        Docketed,
        MandatoryConference,
        SubmittedForDecision,
        Decided,
        Settled,
        Dismissed,
        Withdrawn,
        Archived,
    ];

    /// Statuses reachable in one step.
    pub fn successors(self) -> &'static [CaseStatus] {
        match self {
            Docketed => &[MandatoryConference, Dismissed, Withdrawn],
            MandatoryConference => {
                &[MandatoryConference, SubmittedForDecision, Settled, Dismissed, Withdrawn]
            }
            SubmittedForDecision => &[Decided],
            Decided | Settled | Dismissed | Withdrawn => &[Archived],
            Archived => &[],
        }
    }

    pub fn can_transition_to(self, next: CaseStatus) -> bool {
        self.successors().contains(&next)
    }

    /// Statuses that dispose of a case.
    pub fn is_terminal(self) -> bool {
        matches!(self, Decided | Settled | Dismissed | Withdrawn)
    }

    /// Cases counted against an office's raffle load.
    pub fn is_open(self) -> bool {
        matches!(self, Docketed | MandatoryConference | SubmittedForDecision)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Docketed => "Docketed",
            MandatoryConference => "MandatoryConference",
            SubmittedForDecision => "SubmittedForDecision",
            Decided => "Decided",
            Settled => "Settled",
            Dismissed => "Dismissed",
            Withdrawn => "Withdrawn",
            Archived => "Archived",
        }
    }
}

impl fmt::Display for CaseStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown case status {0:?}")]
pub struct UnknownStatus(pub String);

impl FromStr for CaseStatus {
    type Err = UnknownStatus;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| UnknownStatus(s.to_owned()))
    }
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeSet, VecDeque};

    use super::*;

    // Written out independently of `successors`.
    const EDGES: &[(CaseStatus, CaseStatus)] = &[
        (Docketed, MandatoryConference),
        (Docketed, Dismissed),
        (Docketed, Withdrawn),
        (MandatoryConference, MandatoryConference),
        (MandatoryConference, SubmittedForDecision),
        (MandatoryConference, Settled),
        (MandatoryConference, Dismissed),
        (MandatoryConference, Withdrawn),
        (SubmittedForDecision, Decided),
        (Decided, Archived),
        (Settled, Archived),
        (Dismissed, Archived),
        (Withdrawn, Archived),
    ];

    #[test]
    fn all_pairs_match_edge_list() {
        let expected: BTreeSet<_> = EDGES.iter().copied().collect();
        let mut accepted = BTreeSet::new();
        for from in CaseStatus::ALL {
            for to in CaseStatus::ALL {
                if from.can_transition_to(to) {
                    accepted.insert((from, to));
                }
            }
        }
        assert_eq!(accepted, expected);
    }

    #[test]
    fn everything_reachable_from_docketed() {
        let mut seen = BTreeSet::from([Docketed]);
        let mut queue = VecDeque::from([Docketed]);
        while let Some(s) = queue.pop_front() {
            for &n in s.successors() {
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        assert_eq!(seen.len(), CaseStatus::ALL.len());
        assert!(Archived.successors().is_empty());
    }

    #[test]
    fn parse() {
        for s in CaseStatus::ALL {
            assert_eq!(s.as_str().parse::<CaseStatus>().unwrap(), s);
        }
        assert!("Pending".parse::<CaseStatus>().is_err());
    }
}
