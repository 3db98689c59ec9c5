//! The application layer behind the HTTP routes. Every operation resolves
//! the caller's authority first, then touches the store.

use std::sync::Mutex;
use std::time::Duration;

use chrono::{Datelike, NaiveDate};
use docket_core::access::{authorize, AccessMatrix, Action, Decision, Principal, Role, Target, UserAccount};
use docket_core::case::{
    self, actions, office_marker, AuditDraft, AuditEvent, CaseNumber, CaseStatus, CaseType,
    Complaint, DisputeId, DocketOrder, JurisdictionCategory, LaborCase, MinuteEntry, Office,
    OfficeId, PartyIdentity, SenaCase, SenaOutcome, Timestamp, UserId,
};
use docket_core::crypto::{dummy_verify, hash_password, mask_name, verify_password};
use docket_core::report::{generate_report, ReportDocument, ReportRequest};
use docket_core::store::{Batch, Store, StoreError};
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::ApiError;
use crate::session::Sessions;

#[derive(Debug, Clone, Deserialize)]
pub struct NewComplaint {
    pub complainant: PartyIdentity,
    pub respondent: PartyIdentity,
    pub nature: String,
    pub filed_on: NaiveDate,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoginGrant {
    pub token: String,
    pub role: Role,
    pub office: Option<OfficeId>,
    pub idle_timeout_secs: u64,
}

/// What the public tracker may show.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackView {
    pub case_number: CaseNumber,
    pub complainant: String,
    pub respondent: String,
    pub status: CaseStatus,
    pub last_update: NaiveDate,
}

pub struct Docket {
    store: Store,
    offices: Vec<Office>,
    sessions: Sessions,
    writer: Mutex<()>,
}

impl Docket {
    pub fn new(store: Store, offices: Vec<Office>, session_ttl: Duration) -> Self {
        Self { store, offices, sessions: Sessions::new(session_ttl), writer: Mutex::new(()) }
    }

    /// Opens the store under the configured data directory with the default
    /// eight-office layout.
    pub fn open(config: &Config) -> Result<Self, StoreError> {
        let store = Store::open_dir(&config.data_dir, config.xor_key.clone())?;
        Ok(Self::new(store, Office::default_set(), config.session_ttl))
    }

    pub fn store(&self) -> &Store {
        &self.store
    }

    pub fn offices(&self) -> &[Office] {
        &self.offices
    }

    pub fn sessions(&self) -> &Sessions {
        &self.sessions
    }

    fn exclusive(&self) -> std::sync::MutexGuard<'_, ()> {
        self.writer.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn require(&self, principal: &Principal, action: Action, target: Target) -> Result<(), ApiError> {
        match authorize(principal, action, target) {
            Decision::Allow => Ok(()),
            Decision::Deny => Err(ApiError::Forbidden),
        }
    }

    pub fn add_user(
        &self,
        username: &str,
        password: &str,
        role: Role,
        office: Option<OfficeId>,
    ) -> Result<UserAccount, ApiError> {
        let username = username.trim();
        if username.is_empty() || username.eq_ignore_ascii_case("public") {
            return Err(ApiError::BadRequest("invalid username".into()));
        }
        let office = match role {
            Role::Public => return Err(ApiError::BadRequest("Public is not an account role".into())),
            Role::LaborArbiter | Role::ArbitrationAssociate => {
                Some(office.ok_or_else(|| ApiError::BadRequest(format!("{role} needs an office")))?)
            }
            Role::ExecutiveLaborArbiter => Some(
                office.or_else(|| self.offices.iter().find(|o| o.is_executive).map(|o| o.office_id)).ok_or_else(
                    || ApiError::BadRequest("no executive office configured".into()),
                )?,
            ),
            Role::ComplaintOfficer | Role::SenaOfficer => None,
        };
        if let Some(o) = office {
            if !self.offices.iter().any(|x| x.office_id == o) {
                return Err(case::CaseError::UnknownOffice(o).into());
            }
        }
        let account = UserAccount {
            username: UserId::from(username),
            role,
            office,
            digest: hash_password(password)?,
            active: true,
        };
        let _guard = self.exclusive();
        match self.store.put(&account, 0) {
            Err(StoreError::VersionConflict { .. }) => {
                Err(ApiError::Conflict(format!("user {username} already exists")))
            }
            other => other.map(|_| account).map_err(Into::into),
        }
    }

    pub fn set_user_active(&self, username: &str, active: bool) -> Result<(), ApiError> {
        let _guard = self.exclusive();
        let current = self.store.get::<UserAccount>(username)?;
        let mut account = current.record;
        account.active = active;
        self.store.put(&account, current.version)?;
        Ok(())
    }

    pub fn login(&self, username: &str, password: &str) -> Result<LoginGrant, ApiError> {
        let Some(account) = self.store.try_get::<UserAccount>(username)? else {
            dummy_verify(password);
            return Err(ApiError::BadCredentials);
        };
        let account = account.record;
        if !verify_password(password, &account.digest)? {
            return Err(ApiError::BadCredentials);
        }
        if !account.active {
            return Err(ApiError::AccountDisabled);
        }
        let principal = account.principal();
        Ok(LoginGrant {
            token: self.sessions.create(principal),
            role: account.role,
            office: account.office,
            idle_timeout_secs: self.sessions.ttl().as_secs(),
        })
    }

    pub fn principal(&self, token: &str) -> Result<Principal, ApiError> {
        self.sessions.resolve(token)
    }

    pub fn authorize(&self, token: &str, action: Action, target: Target) -> Result<Decision, ApiError> {
        let principal = self.principal(token)?;
        Ok(authorize(&principal, action, target))
    }

    pub fn file_complaint(
        &self,
        principal: &Principal,
        new: NewComplaint,
        at: Timestamp,
    ) -> Result<Complaint, ApiError> {
        self.file_complaint_with_id(principal, DisputeId::fresh(), new, at)
    }

    /// [`Docket::file_complaint`] with a chosen dispute id, for reproducible
    /// fixtures.
    pub fn file_complaint_with_id(
        &self,
        principal: &Principal,
        dispute_id: DisputeId,
        new: NewComplaint,
        at: Timestamp,
    ) -> Result<Complaint, ApiError> {
        self.require(principal, Action::FileComplaint, Target::Unscoped)?;
        let nature: JurisdictionCategory = new.nature.parse()?;
        let complaint =
            case::file_complaint_with_id(dispute_id, new.complainant, new.respondent, nature, new.filed_on)?;
        let mut batch = Batch::new();
        batch.put(&complaint, 0).audit(AuditDraft::new(
            principal.user.clone(),
            actions::FILE,
            complaint.dispute_id,
            None,
            Some("Filed".into()),
            at,
        ));
        let _guard = self.exclusive();
        self.store.commit(batch)?;
        Ok(complaint)
    }

    pub fn list_complaints(&self, principal: &Principal) -> Result<Vec<Complaint>, ApiError> {
        self.require(principal, Action::FileComplaint, Target::Unscoped)?;
        let mut all: Vec<Complaint> = self.store.list::<Complaint>()?.into_iter().map(|v| v.record).collect();
        all.sort_by(|a, b| a.filed_on.cmp(&b.filed_on).then(a.dispute_id.cmp(&b.dispute_id)));
        Ok(all)
    }

    fn dispute(id: &str) -> Result<DisputeId, ApiError> {
        id.parse().map_err(|_| ApiError::NotFound(format!("dispute {id}")))
    }

    pub fn assign(
        &self,
        principal: &Principal,
        dispute: &str,
        officer: &str,
        at: Timestamp,
    ) -> Result<SenaCase, ApiError> {
        self.require(principal, Action::AssignSena, Target::Unscoped)?;
        let dispute = Self::dispute(dispute)?;
        let officer = self
            .store
            .try_get::<UserAccount>(officer)?
            .filter(|a| a.record.active)
            .ok_or_else(|| ApiError::NotFound(format!("officer {officer}")))?
            .record;
        let _guard = self.exclusive();
        let current = self.store.get::<Complaint>(&dispute.to_string())?;
        let (assigned, sena) = case::assign_to_sena(&current.record, &officer.principal())?;
        let mut batch = Batch::new();
        batch.put(&assigned, current.version).put(&sena, 0).audit(AuditDraft::new(
            principal.user.clone(),
            actions::ASSIGN,
            dispute,
            Some("Filed".into()),
            Some("AssignedToSena".into()),
            at,
        ));
        self.store.commit(batch)?;
        Ok(sena)
    }

    /// SEnA cases administered by `officer` (`me` for the caller).
    pub fn list_sena(&self, principal: &Principal, officer: &str) -> Result<Vec<SenaCase>, ApiError> {
        self.require(principal, Action::ManageSena, Target::Unscoped)?;
        if officer != "me" && officer != principal.user.0 {
            return Err(ApiError::Forbidden);
        }
        Ok(self
            .store
            .list::<SenaCase>()?
            .into_iter()
            .map(|v| v.record)
            .filter(|s| s.administering_officer == principal.user)
            .collect())
    }

    pub fn conclude(
        &self,
        principal: &Principal,
        dispute: &str,
        outcome: SenaOutcome,
        minute: &str,
        at: Timestamp,
    ) -> Result<SenaCase, ApiError> {
        self.require(principal, Action::ManageSena, Target::Unscoped)?;
        let dispute = Self::dispute(dispute)?;
        let minute = MinuteEntry::new(at, principal.user.clone(), minute)?;
        let _guard = self.exclusive();
        let current = self.store.get::<SenaCase>(&dispute.to_string())?;
        if current.record.administering_officer != principal.user {
            return Err(ApiError::Forbidden);
        }
        let concluded = case::conclude_sena(&current.record, outcome, minute)?;
        let mut batch = Batch::new();
        batch.put(&concluded, current.version).audit(AuditDraft::new(
            principal.user.clone(),
            actions::CONCLUDE,
            dispute,
            None,
            Some(format!("{outcome:?}")),
            at,
        ));
        self.store.commit(batch)?;
        Ok(concluded)
    }

    /// Raffles a referred SEnA to an office and assigns its docket number.
    pub fn docket(
        &self,
        principal: &Principal,
        dispute: &str,
        case_type: CaseType,
        seed: Option<u64>,
        at: Timestamp,
    ) -> Result<LaborCase, ApiError> {
        self.require(principal, Action::ReRaffle, Target::Unscoped)?;
        let dispute = Self::dispute(dispute)?;
        let _guard = self.exclusive();
        let sena = self.store.get::<SenaCase>(&dispute.to_string())?.record;
        if self.store.query_by_dispute(dispute)?.is_some() {
            return Err(ApiError::Conflict(format!("dispute {dispute} is already docketed")));
        }
        let order = DocketOrder {
            case_type,
            sequence: self.store.next_case_sequence(at.date().year())?,
            docketed_at: at,
            seed: seed.unwrap_or_else(rand::random),
        };
        let labor_case = case::docket_case(&sena, &order, &self.offices, &self.store.open_loads()?)?;
        let mut batch = Batch::new();
        batch.put(&labor_case, 0).audit(AuditDraft::new(
            principal.user.clone(),
            actions::DOCKET,
            dispute,
            None,
            Some(office_marker(labor_case.office_id)),
            at,
        ));
        self.store.commit(batch)?;
        Ok(labor_case)
    }

    /// Cases at `office`; without one, the caller's own office, or every
    /// office for the executive arbiter.
    pub fn list_cases(&self, principal: &Principal, office: Option<OfficeId>) -> Result<Vec<LaborCase>, ApiError> {
        let target = match (office, principal.role) {
            (Some(o), _) => Target::Office(o),
            (None, Role::ExecutiveLaborArbiter) => Target::AllOffices,
            (None, _) => principal.office.map_or(Target::Unscoped, Target::Office),
        };
        self.require(principal, Action::ViewOfficeCases, target)?;
        let cases = match target {
            Target::Office(o) => self.store.query_by_office(o)?,
            _ => self.store.list::<LaborCase>()?,
        };
        let mut cases: Vec<LaborCase> = cases.into_iter().map(|v| v.record).collect();
        cases.sort_by_key(|c| c.case_number);
        Ok(cases)
    }

    fn load_case(&self, number: &str) -> Result<docket_core::store::Versioned<LaborCase>, ApiError> {
        let number: CaseNumber = number.parse().map_err(|_| ApiError::CaseNotFound)?;
        match self.store.query_by_case_number(&number) {
            Err(StoreError::NotFound { .. }) => Err(ApiError::CaseNotFound),
            other => other.map_err(Into::into),
        }
    }

    pub fn update_status(
        &self,
        principal: &Principal,
        number: &str,
        status: CaseStatus,
        minute: &str,
        at: Timestamp,
    ) -> Result<LaborCase, ApiError> {
        if !AccessMatrix::STANDARD.allows(principal.role, Action::UpdateCaseStatus) {
            return Err(ApiError::Forbidden);
        }
        let minute = MinuteEntry::new(at, principal.user.clone(), minute)?;
        let _guard = self.exclusive();
        let current = self.load_case(number)?;
        self.require(principal, Action::UpdateCaseStatus, Target::Office(current.record.office_id))?;
        let (next, audit) = case::update_status(&current.record, status, minute, &principal.user)?;
        let mut batch = Batch::new();
        batch.put(&next, current.version).audit(audit);
        self.store.commit(batch)?;
        Ok(next)
    }

    pub fn re_raffle(
        &self,
        principal: &Principal,
        number: &str,
        office: OfficeId,
        reason: &str,
        at: Timestamp,
    ) -> Result<LaborCase, ApiError> {
        self.require(principal, Action::ReRaffle, Target::Unscoped)?;
        if reason.trim().is_empty() {
            return Err(ApiError::BadRequest("a re-raffle needs a reason".into()));
        }
        let _guard = self.exclusive();
        let current = self.load_case(number)?;
        let (moved, audit) =
            case::re_raffle(&current.record, office, &self.offices, reason, &principal.user, at)?;
        let mut batch = Batch::new();
        batch.put(&moved, current.version).audit(audit);
        self.store.commit(batch)?;
        Ok(moved)
    }

    pub fn report(
        &self,
        principal: &Principal,
        request: &ReportRequest,
        at: Timestamp,
    ) -> Result<ReportDocument, ApiError> {
        let docket: Vec<LaborCase> = self.store.list::<LaborCase>()?.into_iter().map(|v| v.record).collect();
        Ok(generate_report(request, principal, &docket, at)?)
    }

    /// Public status lookup: status and masked names only.
    pub fn track(&self, number: &str) -> Result<TrackView, ApiError> {
        let case = self.load_case(number)?.record;
        let masked = |n: &str| mask_name(n).map_err(|_| ApiError::CaseNotFound);
        Ok(TrackView {
            case_number: case.case_number,
            complainant: masked(&case.complainant.full_name)?,
            respondent: masked(&case.respondent.full_name)?,
            status: case.status,
            last_update: case.last_updated().date(),
        })
    }

    pub fn audit_log(&self, principal: &Principal) -> Result<Vec<AuditEvent>, ApiError> {
        self.require(principal, Action::AdminUsers, Target::Unscoped)?;
        Ok(self.store.audit_log())
    }
}
