//! Roles, actions and the access-control matrix.
//!
//! The matrix is deny-by-default: [`AccessMatrix::allows`] returns `true` only
//! for the pairs listed in [`AccessMatrix::STANDARD`]. Office scoping is a
//! second, independent check applied by [`authorize`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::case::{OfficeId, UserId};
use crate::crypto::PasswordDigest;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    ComplaintOfficer,
    SenaOfficer,
    LaborArbiter,
    ArbitrationAssociate,
    ExecutiveLaborArbiter,
    Public,
}

impl Role {
    pub const ALL: [Role; 6] = [
        Role::ComplaintOfficer,
        Role::SenaOfficer,
        Role::LaborArbiter,
        Role::ArbitrationAssociate,
        Role::ExecutiveLaborArbiter,
        Role::Public,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Role::ComplaintOfficer => "ComplaintOfficer",
            Role::SenaOfficer => "SenaOfficer",
            Role::LaborArbiter => "LaborArbiter",
            Role::ArbitrationAssociate => "ArbitrationAssociate",
            Role::ExecutiveLaborArbiter => "ExecutiveLaborArbiter",
            Role::Public => "Public",
        }
    }

    /// Roles that work a docket on behalf of one arbiter office.
    pub fn is_office_bound(self) -> bool {
        matches!(self, Role::LaborArbiter | Role::ArbitrationAssociate)
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown role {0:?}")]
pub struct UnknownRole(pub String);

impl FromStr for Role {
    type Err = UnknownRole;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Role::ALL
            .into_iter()
            .find(|r| r.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownRole(s.to_owned()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    FileComplaint,
    AssignSena,
    ManageSena,
    ViewOfficeCases,
    UpdateCaseStatus,
    ReRaffle,
    GenerateReport,
    TrackStatus,
    AdminUsers,
}

impl Action {
    pub const ALL: [Action; 9] = [
        Action::FileComplaint,
        Action::AssignSena,
        Action::ManageSena,
        Action::ViewOfficeCases,
        Action::UpdateCaseStatus,
        Action::ReRaffle,
        Action::GenerateReport,
        Action::TrackStatus,
        Action::AdminUsers,
    ];

    /// Actions whose target is a single arbiter office's docket.
    pub fn is_office_scoped(self) -> bool {
        matches!(
            self,
            Action::ViewOfficeCases | Action::UpdateCaseStatus | Action::GenerateReport
        )
    }
}

/// A (role, action) allow list.
#[derive(Debug, Clone, Copy)]
pub struct AccessMatrix {
    grants: &'static [(Role, &'static [Action])],
}

impl AccessMatrix {
    pub const STANDARD: AccessMatrix = AccessMatrix {
        grants: &[
            (Role::ComplaintOfficer, &[Action::FileComplaint, Action::AssignSena]),
            (Role::SenaOfficer, &[Action::ManageSena]),
            (
                Role::LaborArbiter,
                &[Action::ViewOfficeCases, Action::UpdateCaseStatus, Action::GenerateReport],
            ),
            (
                Role::ArbitrationAssociate,
                &[Action::ViewOfficeCases, Action::UpdateCaseStatus, Action::GenerateReport],
            ),
            (
                Role::ExecutiveLaborArbiter,
                &[
                    Action::ViewOfficeCases,
                    Action::UpdateCaseStatus,
                    Action::ReRaffle,
                    Action::GenerateReport,
                    Action::AdminUsers,
                ],
            ),
            (Role::Public, &[Action::TrackStatus]),
        ],
    };

    pub fn allows(&self, role: Role, action: Action) -> bool {
        self.grants
            .iter()
            .find(|(r, _)| *r == role)
            .is_some_and(|(_, actions)| actions.contains(&action))
    }
}

/// The identity a request acts as.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Principal {
    pub user: UserId,
    pub role: Role,
    pub office: Option<OfficeId>,
}

impl Principal {
    pub fn new(user: impl Into<UserId>, role: Role, office: Option<OfficeId>) -> Self {
        Self { user: user.into(), role, office }
    }

    pub fn public() -> Self {
        Self { user: UserId::from("public"), role: Role::Public, office: None }
    }
}

/// A credentialed staff member. The username doubles as the user id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UserAccount {
    pub username: UserId,
    pub role: Role,
    pub office: Option<OfficeId>,
    pub digest: PasswordDigest,
    pub active: bool,
}

impl UserAccount {
    pub fn principal(&self) -> Principal {
        Principal { user: self.username.clone(), role: self.role, office: self.office }
    }
}

/// What an office-scoped action is aimed at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Unscoped,
    Office(OfficeId),
    AllOffices,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Allow,
    Deny,
}

impl Decision {
    pub fn is_allowed(self) -> bool {
        self == Decision::Allow
    }
}

/// Matrix lookup plus the office-scope rule: arbiter-side actions must target
/// the principal's own office unless the principal is the executive arbiter.
pub fn authorize(principal: &Principal, action: Action, target: Target) -> Decision {
    if !AccessMatrix::STANDARD.allows(principal.role, action) {
        return Decision::Deny;
    }
    if !action.is_office_scoped() || principal.role == Role::ExecutiveLaborArbiter {
        return Decision::Allow;
    }
    match (target, principal.office) {
        (Target::Office(want), Some(own)) if want == own => Decision::Allow,
        _ => Decision::Deny,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arbiter(office: u32) -> Principal {
        Principal::new("la", Role::LaborArbiter, Some(OfficeId(office)))
    }

    #[test]
    fn sena_officer_cannot_update_status() {
        let p = Principal::new("s1", Role::SenaOfficer, None);
        assert_eq!(authorize(&p, Action::UpdateCaseStatus, Target::Unscoped), Decision::Deny);
    }

    #[test]
    fn arbiter_scope() {
        let p = arbiter(2);
        assert_eq!(
            authorize(&p, Action::ViewOfficeCases, Target::Office(OfficeId(3))),
            Decision::Deny
        );
        assert_eq!(
            authorize(&p, Action::ViewOfficeCases, Target::Office(OfficeId(2))),
            Decision::Allow
        );
        assert_eq!(authorize(&p, Action::GenerateReport, Target::AllOffices), Decision::Deny);
    }

    #[test]
    fn executive_spans_offices() {
        let p = Principal::new("ela", Role::ExecutiveLaborArbiter, Some(OfficeId(1)));
        assert!(authorize(&p, Action::ViewOfficeCases, Target::Office(OfficeId(7))).is_allowed());
        assert!(authorize(&p, Action::GenerateReport, Target::AllOffices).is_allowed());
        assert!(!authorize(&p, Action::FileComplaint, Target::Unscoped).is_allowed());
    }

    #[test]
    fn role_parse_round_trip() {
        for role in Role::ALL {
            assert_eq!(role.as_str().parse::<Role>().unwrap(), role);
        }
        assert!("Judge".parse::<Role>().is_err());
    }
}
