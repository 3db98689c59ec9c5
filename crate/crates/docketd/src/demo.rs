//! A fixed demo docket: the same users, disputes, case numbers and history
//! on every run, so the UI and tests have something known to look at.

use chrono::{Duration, NaiveDate};
use docket_core::access::{Principal, Role};
use docket_core::case::{
    CaseNumber, CaseStatus, CaseType, DisputeId, OfficeId, PartyIdentity, SenaOutcome, Timestamp,
};
use docket_core::report::{OfficeScope, Period, ReportRequest};

use crate::error::ApiError;
use crate::service::{Docket, NewComplaint};

/// Password shared by every demo account.
pub const DEMO_PASSWORD: &str = "demo-pass-2024";

/// `(username, role, office)` for each demo account.
pub const DEMO_USERS: &[(&str, Role, Option<u32>)] = &[
    ("complaints1", Role::ComplaintOfficer, None),
    ("sena1", Role::SenaOfficer, None),
    ("sena2", Role::SenaOfficer, None),
    ("ela", Role::ExecutiveLaborArbiter, Some(1)),
    ("arbiter2", Role::LaborArbiter, Some(2)),
    ("arbiter3", Role::LaborArbiter, Some(3)),
    ("associate2", Role::ArbitrationAssociate, Some(2)),
];

/// `(complainant, respondent, nature)` for each demo dispute.
const DISPUTES: &[(&str, &str, &str)] = &[
    ("Marites Dalisay Villanueva", "Bagong Araw Garments Inc", "WagesAndPay"),
    ("Rodelio Pascual Tan", "Lakan Shipping Agency", "TerminationDispute"),
    ("Josefina Abad Mercado", "Sampaguita Foods Corp", "MoneyClaims"),
    ("Ernesto Lim Aquino", "Timog Builders", "HoursOfWork"),
    ("Cristina Yap Salvador", "Perlas Manpower Services", "MoneyClaims"),
    ("Danilo Ocampo Reyes", "Kalayaan Bus Lines", "UnfairLaborPractice"),
    ("Leonora Santiago Cruz", "Habagat Resorts", "TerminationDispute"),
    ("Arnel Bautista Flores", "Dagat Marine Crewing", "WagesAndPay"),
    ("Imelda Ramos Gonzaga", "Lungsod Security Agency", "OtherProvidedByLaw"),
    ("Teodoro Castillo Uy", "Silangan Electronics", "MoneyClaims"),
    ("Rosalinda Perez Navarro", "Bituin Overseas Placement", "TerminationDispute"),
    ("Virgilio Mendoza Torres", "Maharlika Logistics", "WagesAndPay"),
];

/// Every plaintext party name the demo writes.
pub fn demo_names() -> Vec<&'static str> {
    DISPUTES.iter().flat_map(|(c, r, _)| [*c, *r]).collect()
}

pub fn demo_dispute_id(index: usize) -> DisputeId {
    format!("00000000-0000-4000-8000-{:012x}", index + 1).parse().expect("well-formed uuid")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoSummary {
    pub users: usize,
    pub complaints: usize,
    pub sena: usize,
    pub cases: Vec<CaseNumber>,
}

fn base_date() -> NaiveDate {
    NaiveDate::from_ymd_opt(2024, 3, 4).expect("valid date")
}

fn at(day: i64, hour: i64) -> Timestamp {
    let date = base_date() + Duration::days(day);
    Timestamp(Timestamp::start_of(date).0 + hour * 3600)
}

/// Loads the demo docket into an empty store. Fails with a conflict if the
/// demo accounts already exist.
pub fn seed_demo(docket: &Docket) -> Result<DemoSummary, ApiError> {
    for (name, role, office) in DEMO_USERS {
        docket.add_user(name, DEMO_PASSWORD, *role, office.map(OfficeId))?;
    }
    let clerk = Principal::new("complaints1", Role::ComplaintOfficer, None);
    let ela = Principal::new("ela", Role::ExecutiveLaborArbiter, Some(OfficeId(1)));

    let mut sena = 0;
    let mut cases = Vec::new();
    for (i, (complainant, respondent, nature)) in DISPUTES.iter().enumerate() {
        let day = i as i64 * 3;
        let id = demo_dispute_id(i);
        let new = NewComplaint {
            complainant: PartyIdentity::new(*complainant, format!("{} Mabini St, Calamba, Laguna", 10 + i), format!("0917-555-{:04}", 100 + i)),
            respondent: PartyIdentity::new(*respondent, format!("Lot {} Industrial Park, Batangas", i + 1), format!("043-555-{:04}", 200 + i)),
            nature: (*nature).to_owned(),
            filed_on: base_date() + Duration::days(day),
        };
        docket.file_complaint_with_id(&clerk, id, new, at(day, 9))?;

        // the last two stay in the complaints folder
        if i >= DISPUTES.len() - 2 {
            continue;
        }
        let officer = if i % 2 == 0 { "sena1" } else { "sena2" };
        docket.assign(&clerk, &id.to_string(), officer, at(day, 10))?;
        sena += 1;
        let conciliator = Principal::new(officer, Role::SenaOfficer, None);
        if i == 3 {
            docket.conclude(&conciliator, &id.to_string(), SenaOutcome::Settled, "Parties settled at first conference.", at(day + 7, 14))?;
            continue;
        }
        if i == 8 {
            // still in conciliation
            continue;
        }
        docket.conclude(
            &conciliator,
            &id.to_string(),
            SenaOutcome::ReferredToArbitration,
            "No settlement reached; referred for docketing.",
            at(day + 14, 15),
        )?;
        let case_type = if i % 3 == 1 { CaseType::Ofw } else { CaseType::Regular };
        let case = docket.docket(&ela, &id.to_string(), case_type, Some(i as u64), at(day + 15, 9))?;
        cases.push(case.case_number);
    }

    let steps: &[(usize, &[CaseStatus])] = &[
        (0, &[CaseStatus::MandatoryConference, CaseStatus::SubmittedForDecision, CaseStatus::Decided]),
        (1, &[CaseStatus::MandatoryConference, CaseStatus::Settled]),
        (2, &[CaseStatus::MandatoryConference]),
        (3, &[CaseStatus::Dismissed, CaseStatus::Archived]),
        (4, &[CaseStatus::MandatoryConference, CaseStatus::MandatoryConference, CaseStatus::SubmittedForDecision]),
        (5, &[CaseStatus::Withdrawn]),
    ];
    for (k, path) in steps {
        let Some(number) = cases.get(*k) else { continue };
        for (j, status) in path.iter().enumerate() {
            let when = at(60 + (*k as i64) * 5 + j as i64 * 20, 11);
            let minute = format!("Hearing {} held; status set to {status}.", j + 1);
            docket.update_status(&ela, &number.to_string(), *status, &minute, when)?;
        }
    }
    if let Some(number) = cases.get(2) {
        let case = docket.list_cases(&ela, None)?.into_iter().find(|c| c.case_number == *number);
        if let Some(case) = case {
            let target = OfficeId(if case.office_id.0 == 8 { 7 } else { case.office_id.0 + 1 });
            docket.re_raffle(&ela, &number.to_string(), target, "Inhibition of the assigned arbiter", at(75, 16))?;
        }
    }

    Ok(DemoSummary { users: DEMO_USERS.len(), complaints: DISPUTES.len(), sena, cases })
}

/// A report request the demo docket is guaranteed to answer with rows.
pub fn demo_report_request() -> ReportRequest {
    ReportRequest {
        case_type: CaseType::Regular,
        remark: CaseStatus::Decided,
        period: Period::new(base_date(), base_date() + Duration::days(365)).expect("ordered period"),
        scope: OfficeScope::All,
    }
}
