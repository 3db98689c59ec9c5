use std::time::Duration;

use chrono::NaiveDate;
use docket_core::access::{Principal, Role};
use docket_core::case::{CaseStatus, CaseType, Office, OfficeId, PartyIdentity, SenaOutcome, Timestamp};
use docket_core::crypto::XorKey;
use docket_core::store::Store;
use docketd::service::{Docket, NewComplaint};
use docketd::ApiError;
use proptest::prelude::*;

fn docket() -> (tempfile::TempDir, Docket) {
    let dir = tempfile::tempdir().unwrap();
    let store = Store::open_dir(dir.path(), XorKey::from_hex("3c").unwrap()).unwrap();
    (dir, Docket::new(store, Office::default_set(), Duration::from_secs(60)))
}

fn clerk() -> Principal {
    Principal::new("clerk", Role::ComplaintOfficer, None)
}

fn ela() -> Principal {
    Principal::new("ela", Role::ExecutiveLaborArbiter, Some(OfficeId(1)))
}

fn complaint(name: &str) -> NewComplaint {
    NewComplaint {
        complainant: PartyIdentity::new(name, "Sta. Rosa", "0917"),
        respondent: PartyIdentity::new("Laguna Textile Mills", "Binan", "049"),
        nature: "WagesAndPay".into(),
        filed_on: NaiveDate::from_ymd_opt(2024, 7, 1).unwrap(),
    }
}

const AT: Timestamp = Timestamp(1_720_000_000);

/// Files, assigns, refers and dockets one dispute; returns the case number
/// and office.
fn docketed(d: &Docket, name: &str, seed: u64) -> (String, OfficeId) {
    let id = d.file_complaint(&clerk(), complaint(name), AT).unwrap().dispute_id.to_string();
    d.assign(&clerk(), &id, "sena1", AT).unwrap();
    let sena = Principal::new("sena1", Role::SenaOfficer, None);
    d.conclude(&sena, &id, SenaOutcome::ReferredToArbitration, "referred", AT).unwrap();
    let case = d.docket(&ela(), &id, CaseType::Regular, Some(seed), AT).unwrap();
    (case.case_number.to_string(), case.office_id)
}

fn with_sena(d: &Docket) {
    d.add_user("sena1", "sena-password", Role::SenaOfficer, None).unwrap();
}

#[test]
fn login_errors_do_not_distinguish_unknown_users() {
    let (_dir, d) = docket();
    d.add_user("clerk", "clerk-password", Role::ComplaintOfficer, None).unwrap();
    let unknown = d.login("ghost", "clerk-password").unwrap_err();
    let wrong = d.login("clerk", "not-the-password").unwrap_err();
    assert_eq!(unknown.to_string(), wrong.to_string());
    assert_eq!(unknown.status(), wrong.status());
    let grant = d.login("clerk", "clerk-password").unwrap();
    assert_eq!(grant.role, Role::ComplaintOfficer);
    assert_eq!(d.principal(&grant.token).unwrap().role, Role::ComplaintOfficer);
}

#[test]
fn disabled_accounts_cannot_log_in() {
    let (_dir, d) = docket();
    d.add_user("la2", "arbiter-password", Role::LaborArbiter, Some(OfficeId(2))).unwrap();
    d.set_user_active("la2", false).unwrap();
    assert!(matches!(d.login("la2", "arbiter-password"), Err(ApiError::AccountDisabled)));
    // a wrong password still reads as bad credentials
    assert!(matches!(d.login("la2", "wrong-password"), Err(ApiError::BadCredentials)));
}

#[test]
fn account_rules() {
    let (_dir, d) = docket();
    assert!(d.add_user("la", "password1", Role::LaborArbiter, None).is_err());
    assert!(d.add_user("la", "password1", Role::LaborArbiter, Some(OfficeId(9))).is_err());
    assert!(d.add_user("pub", "password1", Role::Public, None).is_err());
    assert!(d.add_user("short", "short", Role::SenaOfficer, None).is_err());
    let ela = d.add_user("ela", "password1", Role::ExecutiveLaborArbiter, None).unwrap();
    assert_eq!(ela.office, Some(OfficeId(1)));
    assert!(matches!(d.add_user("ela", "password2", Role::SenaOfficer, None), Err(ApiError::Conflict(_))));
}

#[test]
fn only_sena_officers_take_assignments() {
    let (_dir, d) = docket();
    d.add_user("la2", "arbiter-password", Role::LaborArbiter, Some(OfficeId(2))).unwrap();
    let id = d.file_complaint(&clerk(), complaint("Nena Aquino"), AT).unwrap().dispute_id.to_string();
    let err = d.assign(&clerk(), &id, "la2", AT).unwrap_err();
    assert_eq!(err.status().as_u16(), 422);
    assert!(d.assign(&clerk(), &id, "nobody", AT).is_err());
}

#[test]
fn only_the_administering_officer_concludes() {
    let (_dir, d) = docket();
    with_sena(&d);
    d.add_user("sena2", "sena-password", Role::SenaOfficer, None).unwrap();
    let id = d.file_complaint(&clerk(), complaint("Pedro Penduko"), AT).unwrap().dispute_id.to_string();
    d.assign(&clerk(), &id, "sena1", AT).unwrap();
    let other = Principal::new("sena2", Role::SenaOfficer, None);
    assert!(matches!(d.conclude(&other, &id, SenaOutcome::Settled, "x", AT), Err(ApiError::Forbidden)));
    assert!(d.list_sena(&other, "me").unwrap().is_empty());
    let mine = Principal::new("sena1", Role::SenaOfficer, None);
    assert_eq!(d.list_sena(&mine, "me").unwrap().len(), 1);
    assert!(d.conclude(&mine, &id, SenaOutcome::Settled, "   ", AT).is_err());
}

#[test]
fn a_dispute_is_docketed_once() {
    let (_dir, d) = docket();
    with_sena(&d);
    let (number, _) = docketed(&d, "Jose Rizal", 0);
    let case = d.list_cases(&ela(), None).unwrap();
    let id = case[0].dispute_id.to_string();
    assert!(matches!(d.docket(&ela(), &id, CaseType::Regular, None, AT), Err(ApiError::Conflict(_))));
    assert_eq!(number, "RAB-IV-07-00001-24");
}

#[test]
fn raffle_spreads_load() {
    let (_dir, d) = docket();
    with_sena(&d);
    let offices: Vec<OfficeId> = (0..8).map(|i| docketed(&d, &format!("Worker {i}"), 0).1).collect();
    let mut sorted = offices.clone();
    sorted.sort();
    assert_eq!(sorted, (1..=8).map(OfficeId).collect::<Vec<_>>());
}

#[test]
fn tracker_is_uniform_for_missing_cases() {
    let (_dir, d) = docket();
    with_sena(&d);
    let (number, _) = docketed(&d, "Gabriela Silang", 1);
    let view = d.track(&number).unwrap();
    assert_eq!(view.complainant, "G******* S*****");
    assert_eq!(view.status, CaseStatus::Docketed);
    let missing = d.track("RAB-IV-07-09999-24").unwrap_err();
    let garbage = d.track("<script>").unwrap_err();
    assert_eq!(missing.to_string(), garbage.to_string());
    assert_eq!(missing.status().as_u16(), 404);
}

#[test]
fn audit_trail_follows_the_dispute() {
    let (_dir, d) = docket();
    with_sena(&d);
    let (number, office) = docketed(&d, "Andres Bonifacio", 2);
    let target = OfficeId(office.0 % 8 + 1);
    d.re_raffle(&ela(), &number, target, "inhibition", AT).unwrap();
    d.update_status(&ela(), &number, CaseStatus::MandatoryConference, "first hearing", AT).unwrap();
    let log = d.audit_log(&ela()).unwrap();
    let actions: Vec<&str> = log.iter().map(|e| e.action.as_str()).collect();
    assert_eq!(
        actions,
        ["complaint.file", "complaint.assign", "sena.conclude", "case.docket", "case.reraffle", "case.status"]
    );
    assert!(log.windows(2).all(|w| w[1].seq == w[0].seq + 1));
    assert!(d.audit_log(&Principal::new("la", Role::LaborArbiter, Some(OfficeId(2)))).is_err());
    assert!(d.re_raffle(&ela(), &number, target, "again", AT).is_err());
    assert!(d.re_raffle(&ela(), &number, OfficeId(office.0), "  ", AT).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn arbiters_stay_inside_their_office(seeds in proptest::collection::vec(any::<u64>(), 1..12), me in 1u32..=8) {
        let (_dir, d) = docket();
        with_sena(&d);
        let cases: Vec<(String, OfficeId)> =
            seeds.iter().enumerate().map(|(i, s)| docketed(&d, &format!("Party {i}"), *s)).collect();
        for role in [Role::LaborArbiter, Role::ArbitrationAssociate] {
            let p = Principal::new("u", role, Some(OfficeId(me)));
            let visible = d.list_cases(&p, None).unwrap();
            prop_assert!(visible.iter().all(|c| c.office_id == OfficeId(me)));
            prop_assert_eq!(visible.len(), cases.iter().filter(|(_, o)| *o == OfficeId(me)).count());
            for (number, _) in cases.iter().filter(|(_, o)| *o != OfficeId(me)) {
                let attempt = d.update_status(&p, number, CaseStatus::Withdrawn, "withdrawn", AT);
                prop_assert!(matches!(attempt, Err(ApiError::Forbidden)));
                prop_assert_eq!(d.track(number).unwrap().status, CaseStatus::Docketed);
            }
        }
        if let Some((number, _)) = cases.iter().find(|(_, o)| *o == OfficeId(me)) {
            let la = Principal::new("u", Role::LaborArbiter, Some(OfficeId(me)));
            prop_assert!(d.update_status(&la, number, CaseStatus::Withdrawn, "withdrawn", AT).is_ok());
        }
    }
}
