use chrono::NaiveDate;

use super::raffle::{raffle, OfficeLoads};
use super::{
    actions, office_marker, AuditDraft, CaseError, CaseNumber, CaseStatus, CaseType, Complaint,
    ComplaintStage, DisputeId, JurisdictionCategory, LaborCase, MinuteEntry, Office, OfficeId,
    PartyIdentity, RaffleEntry, SenaCase, SenaOutcome, StatusChange, Timestamp, UserId,
};
use crate::access::{Principal, Role};

pub fn file_complaint(
    complainant: PartyIdentity,
    respondent: PartyIdentity,
    nature: JurisdictionCategory,
    filed_on: NaiveDate,
) -> Result<Complaint, CaseError> {
    file_complaint_with_id(DisputeId::fresh(), complainant, respondent, nature, filed_on)
}

/// Like [`file_complaint`] with a caller-chosen id, for reproducible fixtures.
pub fn file_complaint_with_id(
    dispute_id: DisputeId,
    complainant: PartyIdentity,
    respondent: PartyIdentity,
    nature: JurisdictionCategory,
    filed_on: NaiveDate,
) -> Result<Complaint, CaseError> {
    if complainant.full_name.trim().is_empty() || respondent.full_name.trim().is_empty() {
        return Err(CaseError::EmptyName);
    }
    Ok(Complaint {
        dispute_id,
        complainant,
        respondent,
        nature,
        filed_on,
        assigned_sena_officer: None,
        stage_status: ComplaintStage::Filed,
    })
}

/// Hands a filed complaint to a SEnA officer, opening the conciliation record.
pub fn assign_to_sena(
    complaint: &Complaint,
    officer: &Principal,
) -> Result<(Complaint, SenaCase), CaseError> {
    if complaint.stage_status != ComplaintStage::Filed {
        return Err(CaseError::AlreadyAssigned);
    }
    if officer.role != Role::SenaOfficer {
        return Err(CaseError::WrongRole {
            user: officer.user.clone(),
            role: officer.role,
            expected: Role::SenaOfficer,
        });
    }
    let assigned = Complaint {
        assigned_sena_officer: Some(officer.user.clone()),
        stage_status: ComplaintStage::AssignedToSena,
        ..complaint.clone()
    };
    let sena = SenaCase {
        dispute_id: complaint.dispute_id,
        complainant: complaint.complainant.clone(),
        respondent: complaint.respondent.clone(),
        nature: complaint.nature,
        filed_on: complaint.filed_on,
        administering_officer: officer.user.clone(),
        conferences: Vec::new(),
        outcome: None,
    };
    Ok((assigned, sena))
}

pub fn conclude_sena(
    sena: &SenaCase,
    outcome: SenaOutcome,
    minute: MinuteEntry,
) -> Result<SenaCase, CaseError> {
    if sena.outcome.is_some() {
        return Err(CaseError::AlreadyConcluded);
    }
    let mut concluded = sena.clone();
    concluded.conferences.push(minute);
    concluded.outcome = Some(outcome);
    Ok(concluded)
}

/// Parameters of a docketing decision that the record store supplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DocketOrder {
    pub case_type: CaseType,
    /// Next free per-year sequence number.
    pub sequence: u32,
    pub docketed_at: Timestamp,
    pub seed: u64,
}

/// Turns a referred SEnA into a numbered labor case at a raffled office.
pub fn docket_case(
    sena: &SenaCase,
    order: &DocketOrder,
    offices: &[Office],
    loads: &OfficeLoads,
) -> Result<LaborCase, CaseError> {
    if sena.outcome != Some(SenaOutcome::ReferredToArbitration) {
        return Err(CaseError::NotReferred);
    }
    let office_id = raffle(offices, loads, order.seed)?;
    let date = order.docketed_at.date();
    let case_number = CaseNumber::new(
        chrono::Datelike::month(&date),
        order.sequence,
        chrono::Datelike::year(&date),
        order.case_type == CaseType::Ofw,
    )?;
    Ok(LaborCase {
        case_number,
        dispute_id: sena.dispute_id,
        complainant: sena.complainant.clone(),
        respondent: sena.respondent.clone(),
        nature: sena.nature,
        filed_on: sena.filed_on,
        office_id,
        case_type: order.case_type,
        status: CaseStatus::Docketed,
        status_history: vec![StatusChange { status: CaseStatus::Docketed, at: order.docketed_at }],
        minutes: Vec::new(),
        raffle_history: vec![RaffleEntry {
            office_id,
            at: order.docketed_at,
            reason: format!("raffle seed {}", order.seed),
        }],
    })
}

/// Moves a case to another arbiter office. Nothing but the office and the
/// raffle history changes.
pub fn re_raffle(
    case: &LaborCase,
    new_office: OfficeId,
    offices: &[Office],
    reason: &str,
    actor: &UserId,
    at: Timestamp,
) -> Result<(LaborCase, AuditDraft), CaseError> {
    if case.status == CaseStatus::Archived {
        return Err(CaseError::CaseArchived);
    }
    if new_office == case.office_id {
        return Err(CaseError::SameOffice(new_office));
    }
    let office = offices
        .iter()
        .find(|o| o.office_id == new_office)
        .ok_or(CaseError::UnknownOffice(new_office))?;
    if !office.active {
        return Err(CaseError::InactiveOffice(new_office));
    }
    let mut moved = case.clone();
    moved.office_id = new_office;
    moved.raffle_history.push(RaffleEntry { office_id: new_office, at, reason: reason.to_owned() });
    let audit = AuditDraft::new(
        actor.clone(),
        actions::RERAFFLE,
        case.dispute_id,
        Some(office_marker(case.office_id)),
        Some(office_marker(new_office)),
        at,
    );
    Ok((moved, audit))
}

/// Records a hearing minute and moves the case along one legal edge.
pub fn update_status(
    case: &LaborCase,
    new_status: CaseStatus,
    minute: MinuteEntry,
    actor: &UserId,
) -> Result<(LaborCase, AuditDraft), CaseError> {
    if !case.status.can_transition_to(new_status) {
        return Err(CaseError::IllegalTransition { from: case.status, to: new_status });
    }
    if minute.text.trim().is_empty() {
        return Err(CaseError::EmptyMinute);
    }
    let at = minute.recorded_on;
    let mut next = case.clone();
    next.status = new_status;
    next.status_history.push(StatusChange { status: new_status, at });
    next.minutes.push(minute);
    let audit = AuditDraft::new(
        actor.clone(),
        actions::STATUS,
        case.dispute_id,
        Some(case.status.to_string()),
        Some(new_status.to_string()),
        at,
    );
    Ok((next, audit))
}
