//! The dispute lifecycle: complaint intake, SEnA conciliation, docketing,
//! raffling and status maintenance.
//!
//! Everything in here is a value type or a pure function. Storage and
//! transport live in [`crate::store`] and the service crate.

mod lifecycle;
mod number;
mod raffle;
mod status;

use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, NaiveDate, Utc};
use serde::{Deserialize, Serialize};
use uuid::Uuid;

pub use lifecycle::{
    assign_to_sena, conclude_sena, docket_case, file_complaint, file_complaint_with_id,
    re_raffle, update_status, DocketOrder,
};
pub use number::{CaseNumber, CaseNumberError};
pub use raffle::{open_loads, raffle, OfficeLoads};
pub use status::{CaseStatus, UnknownStatus};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UserId(pub String);

impl From<&str> for UserId {
    fn from(s: &str) -> Self {
        UserId(s.to_owned())
    }
}

impl From<String> for UserId {
    fn from(s: String) -> Self {
        UserId(s)
    }
}

impl fmt::Display for UserId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OfficeId(pub u32);

impl fmt::Display for OfficeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Threads a dispute through all three lifecycle stages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DisputeId(pub Uuid);

impl DisputeId {
    pub fn fresh() -> Self {
        DisputeId(Uuid::new_v4())
    }
}

impl fmt::Display for DisputeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for DisputeId {
    type Err = uuid::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Uuid::parse_str(s).map(DisputeId)
    }
}

/// UTC seconds since the Unix epoch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Timestamp(pub i64);

impl Timestamp {
    pub fn now() -> Self {
        Timestamp(Utc::now().timestamp())
    }

    /// Midnight UTC of `date`.
    pub fn start_of(date: NaiveDate) -> Self {
        Timestamp(date.and_hms_opt(0, 0, 0).expect("midnight exists").and_utc().timestamp())
    }

    pub fn date(self) -> NaiveDate {
        DateTime::<Utc>::from_timestamp(self.0, 0)
            .map(|dt| dt.date_naive())
            .unwrap_or(NaiveDate::MIN)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartyIdentity {
    pub full_name: String,
    pub address: String,
    pub contact: String,
}

impl PartyIdentity {
    pub fn new(
        full_name: impl Into<String>,
        address: impl Into<String>,
        contact: impl Into<String>,
    ) -> Self {
        Self { full_name: full_name.into(), address: address.into(), contact: contact.into() }
    }
}

/// Nature of a complaint, after the labor arbiters' original jurisdiction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum JurisdictionCategory {
    UnfairLaborPractice,
    TerminationDispute,
    WagesAndPay,
    HoursOfWork,
    MoneyClaims,
    OtherProvidedByLaw,
}

impl JurisdictionCategory {
    pub const ALL: [JurisdictionCategory; 6] = [
        JurisdictionCategory::UnfairLaborPractice,
        JurisdictionCategory::TerminationDispute,
        JurisdictionCategory::WagesAndPay,
        JurisdictionCategory::HoursOfWork,
        JurisdictionCategory::MoneyClaims,
        JurisdictionCategory::OtherProvidedByLaw,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            JurisdictionCategory::UnfairLaborPractice => "UnfairLaborPractice",
            JurisdictionCategory::TerminationDispute => "TerminationDispute",
            JurisdictionCategory::WagesAndPay => "WagesAndPay",
            JurisdictionCategory::HoursOfWork => "HoursOfWork",
            JurisdictionCategory::MoneyClaims => "MoneyClaims",
            JurisdictionCategory::OtherProvidedByLaw => "OtherProvidedByLaw",
        }
    }
}

impl fmt::Display for JurisdictionCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for JurisdictionCategory {
    type Err = CaseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| CaseError::UnknownNature(s.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Office {
    pub office_id: OfficeId,
    pub arbiter_name: String,
    pub is_executive: bool,
    pub active: bool,
}

impl Office {
    /// The branch layout a fresh deployment starts with: eight arbiter
    /// offices, office 1 belonging to the executive labor arbiter.
    pub fn default_set() -> Vec<Office> {
        (1..=8)
            .map(|n| Office {
                office_id: OfficeId(n),
                arbiter_name: if n == 1 {
                    "Executive Labor Arbiter".to_owned()
                } else {
                    format!("Labor Arbiter {n}")
                },
                is_executive: n == 1,
                active: true,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComplaintStage {
    Filed,
    AssignedToSena,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Complaint {
    pub dispute_id: DisputeId,
    pub complainant: PartyIdentity,
    pub respondent: PartyIdentity,
    pub nature: JurisdictionCategory,
    pub filed_on: NaiveDate,
    pub assigned_sena_officer: Option<UserId>,
    pub stage_status: ComplaintStage,
}

impl Complaint {
    pub fn is_consistent(&self) -> bool {
        (self.stage_status == ComplaintStage::AssignedToSena)
            == self.assigned_sena_officer.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SenaOutcome {
    Settled,
    ReferredToArbitration,
}

/// A complaint under single-entry-approach conciliation. Party data is a
/// verbatim copy of the originating complaint's.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SenaCase {
    pub dispute_id: DisputeId,
    pub complainant: PartyIdentity,
    pub respondent: PartyIdentity,
    pub nature: JurisdictionCategory,
    pub filed_on: NaiveDate,
    pub administering_officer: UserId,
    pub conferences: Vec<MinuteEntry>,
    pub outcome: Option<SenaOutcome>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseType {
    Regular,
    #[serde(rename = "OFW")]
    Ofw,
}

impl CaseType {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseType::Regular => "Regular",
            CaseType::Ofw => "OFW",
        }
    }
}

impl fmt::Display for CaseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseType {
    type Err = CaseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Regular" | "regular" => Ok(CaseType::Regular),
            "OFW" | "ofw" | "Ofw" => Ok(CaseType::Ofw),
            other => Err(CaseError::UnknownCaseType(other.to_owned())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinuteEntry {
    pub recorded_on: Timestamp,
    pub author: UserId,
    pub text: String,
}

impl MinuteEntry {
    pub fn new(
        recorded_on: Timestamp,
        author: impl Into<UserId>,
        text: impl Into<String>,
    ) -> Result<Self, CaseError> {
        let text = text.into();
        if text.trim().is_empty() {
            return Err(CaseError::EmptyMinute);
        }
        Ok(Self { recorded_on, author: author.into(), text })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaffleEntry {
    pub office_id: OfficeId,
    pub at: Timestamp,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusChange {
    pub status: CaseStatus,
    pub at: Timestamp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaborCase {
    pub case_number: CaseNumber,
    pub dispute_id: DisputeId,
    pub complainant: PartyIdentity,
    pub respondent: PartyIdentity,
    pub nature: JurisdictionCategory,
    pub filed_on: NaiveDate,
    pub office_id: OfficeId,
    pub case_type: CaseType,
    pub status: CaseStatus,
    /// Every status the case has held, oldest first; starts with `Docketed`.
    pub status_history: Vec<StatusChange>,
    pub minutes: Vec<MinuteEntry>,
    pub raffle_history: Vec<RaffleEntry>,
}

impl LaborCase {
    pub fn docketed_at(&self) -> Timestamp {
        self.status_history.first().map_or(Timestamp(0), |c| c.at)
    }

    /// When the current status was entered.
    pub fn status_since(&self) -> Timestamp {
        self.status_history.last().map_or(Timestamp(0), |c| c.at)
    }

    pub fn last_updated(&self) -> Timestamp {
        let raffled = self.raffle_history.last().map_or(Timestamp(0), |r| r.at);
        let minuted = self.minutes.last().map_or(Timestamp(0), |m| m.recorded_on);
        self.status_since().max(raffled).max(minuted)
    }

    /// The moment the case entered a terminal status, if it has.
    pub fn disposed_at(&self) -> Option<Timestamp> {
        self.status_history.iter().find(|c| c.status.is_terminal()).map(|c| c.at)
    }

    pub fn is_consistent(&self) -> bool {
        let raffle_ok = self.raffle_history.last().is_some_and(|r| r.office_id == self.office_id);
        let status_ok = self.status_history.last().is_some_and(|c| c.status == self.status)
            && self.status_history.first().is_some_and(|c| c.status == CaseStatus::Docketed)
            && self.status_history.windows(2).all(|w| w[0].status.can_transition_to(w[1].status));
        raffle_ok && status_ok && self.case_number.is_ofw() == (self.case_type == CaseType::Ofw)
    }
}

/// An audit record before the store has assigned its sequence number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditDraft {
    pub actor: UserId,
    pub action: String,
    pub dispute_id: DisputeId,
    pub before: Option<String>,
    pub after: Option<String>,
    pub at: Timestamp,
}

impl AuditDraft {
    pub fn new(
        actor: impl Into<UserId>,
        action: impl Into<String>,
        dispute_id: DisputeId,
        before: Option<String>,
        after: Option<String>,
        at: Timestamp,
    ) -> Self {
        Self { actor: actor.into(), action: action.into(), dispute_id, before, after, at }
    }

    pub fn sequenced(self, seq: u64) -> AuditEvent {
        AuditEvent {
            seq,
            actor: self.actor,
            action: self.action,
            dispute_id: self.dispute_id,
            before: self.before,
            after: self.after,
            at: self.at,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEvent {
    pub seq: u64,
    pub actor: UserId,
    pub action: String,
    pub dispute_id: DisputeId,
    pub before: Option<String>,
    pub after: Option<String>,
    pub at: Timestamp,
}

/// Audit action tags.
pub mod actions {
    pub const FILE: &str = "complaint.file";
    pub const ASSIGN: &str = "complaint.assign";
    pub const CONCLUDE: &str = "sena.conclude";
    pub const DOCKET: &str = "case.docket";
    pub const STATUS: &str = "case.status";
    pub const RERAFFLE: &str = "case.reraffle";
}

/// Audit `before`/`after` text for an office assignment.
pub fn office_marker(office: OfficeId) -> String {
    format!("office:{}", office.0)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CaseError {
    #[error("party name must not be empty")]
    EmptyName,
    #[error("unknown complaint nature {0:?}")]
    UnknownNature(String),
    #[error("unknown case type {0:?}")]
    UnknownCaseType(String),
    #[error("complaint is already assigned to a SEnA officer")]
    AlreadyAssigned,
    #[error("user {user} has role {role}, expected {expected}")]
    WrongRole { user: UserId, role: crate::access::Role, expected: crate::access::Role },
    #[error("SEnA case is already concluded")]
    AlreadyConcluded,
    #[error("SEnA case was not referred to arbitration")]
    NotReferred,
    #[error("no active office to raffle to")]
    NoActiveOffice,
    #[error("case is already at office {0}")]
    SameOffice(OfficeId),
    #[error("office {0} is inactive")]
    InactiveOffice(OfficeId),
    #[error("office {0} does not exist")]
    UnknownOffice(OfficeId),
    #[error("case is archived")]
    CaseArchived,
    #[error("illegal status transition {from} -> {to}")]
    IllegalTransition { from: CaseStatus, to: CaseStatus },
    #[error("minute text must not be empty")]
    EmptyMinute,
    #[error(transparent)]
    CaseNumber(#[from] CaseNumberError),
}
