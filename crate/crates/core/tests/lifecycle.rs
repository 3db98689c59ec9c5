use chrono::NaiveDate;
use docket_core::access::{Principal, Role};
use docket_core::case::{
    assign_to_sena, conclude_sena, docket_case, file_complaint, re_raffle, update_status, CaseError,
    CaseNumber, CaseStatus, CaseType, DocketOrder, JurisdictionCategory, MinuteEntry, Office, OfficeId,
    OfficeLoads, PartyIdentity, SenaOutcome, Timestamp, UserId,
};
use proptest::prelude::*;

fn sena_officer() -> Principal {
    Principal::new("sena1", Role::SenaOfficer, None)
}

fn minute(at: i64, text: &str) -> MinuteEntry {
    MinuteEntry::new(Timestamp(at), "la2", text).unwrap()
}

fn party() -> impl Strategy<Value = PartyIdentity> {
    ("[A-Za-zÑñ漢 .'-]{0,30}", "\\PC{0,40}", "[0-9+ -]{0,16}").prop_map(|(tail, address, contact)| {
        PartyIdentity::new(format!("N{tail}"), address, contact)
    })
}

fn nature() -> impl Strategy<Value = JurisdictionCategory> {
    proptest::sample::select(JurisdictionCategory::ALL.to_vec())
}

proptest! {
    #[test]
    fn party_data_survives_every_stage(
        complainant in party(),
        respondent in party(),
        nature in nature(),
        seed in any::<u64>(),
        month in 1u32..=12,
    ) {
        let filed_on = NaiveDate::from_ymd_opt(2023, month, 1).unwrap();
        let complaint = file_complaint(complainant.clone(), respondent.clone(), nature, filed_on).unwrap();
        let (assigned, sena) = assign_to_sena(&complaint, &sena_officer()).unwrap();
        let sena = conclude_sena(&sena, SenaOutcome::ReferredToArbitration, minute(0, "referred")).unwrap();
        let order = DocketOrder {
            case_type: CaseType::Regular,
            sequence: 7,
            docketed_at: Timestamp::start_of(filed_on),
            seed,
        };
        let case = docket_case(&sena, &order, &Office::default_set(), &OfficeLoads::new()).unwrap();
        for (c, r) in [
            (&assigned.complainant, &assigned.respondent),
            (&sena.complainant, &sena.respondent),
            (&case.complainant, &case.respondent),
        ] {
            prop_assert_eq!(c, &complainant);
            prop_assert_eq!(r, &respondent);
        }
        prop_assert_eq!(case.nature, nature);
        prop_assert_eq!(case.filed_on, filed_on);
        prop_assert_eq!(case.dispute_id, complaint.dispute_id);
        prop_assert!(case.is_consistent());
    }

    #[test]
    fn random_status_walks_keep_history_in_step(choices in proptest::collection::vec(0usize..8, 0..30)) {
        let mut case = docketed(CaseType::Ofw);
        let mut expected = vec![CaseStatus::Docketed];
        for (i, pick) in choices.into_iter().enumerate() {
            let to = CaseStatus::ALL[pick];
            let legal = case.status.successors().contains(&to);
            match update_status(&case, to, minute(i as i64 + 1, "hearing"), &UserId::from("la2")) {
                Ok((next, audit)) => {
                    prop_assert!(legal);
                    prop_assert_eq!(audit.after.as_deref(), Some(to.as_str()));
                    expected.push(to);
                    case = next;
                }
                Err(CaseError::IllegalTransition { from, to: rejected }) => {
                    prop_assert!(!legal);
                    prop_assert_eq!((from, rejected), (case.status, to));
                }
                Err(other) => prop_assert!(false, "unexpected {other}"),
            }
            let statuses: Vec<CaseStatus> = case.status_history.iter().map(|s| s.status).collect();
            prop_assert_eq!(&statuses, &expected);
            prop_assert_eq!(case.minutes.len(), expected.len() - 1);
        }
    }

    #[test]
    fn case_numbers_order_by_year_then_sequence(
        a in (1u32..=12, 1u32..=99_999, 2000i32..2099, any::<bool>()),
        b in (1u32..=12, 1u32..=99_999, 2000i32..2099, any::<bool>()),
    ) {
        let x = CaseNumber::new(a.0, a.1, a.2, a.3).unwrap();
        let y = CaseNumber::new(b.0, b.1, b.2, b.3).unwrap();
        if (a.2, a.1) != (b.2, b.1) {
            prop_assert_eq!(x.cmp(&y), (a.2, a.1).cmp(&(b.2, b.1)));
        }
        prop_assert_eq!(x.to_string().parse::<CaseNumber>().unwrap(), x);
    }
}

fn docketed(case_type: CaseType) -> docket_core::case::LaborCase {
    let complaint = file_complaint(
        PartyIdentity::new("Liza Soberano", "Tanauan", "0917"),
        PartyIdentity::new("Batangas Port Services", "Batangas", "043"),
        JurisdictionCategory::TerminationDispute,
        NaiveDate::from_ymd_opt(2024, 2, 5).unwrap(),
    )
    .unwrap();
    let (_, sena) = assign_to_sena(&complaint, &sena_officer()).unwrap();
    let sena = conclude_sena(&sena, SenaOutcome::ReferredToArbitration, minute(0, "referred")).unwrap();
    let order = DocketOrder { case_type, sequence: 12, docketed_at: Timestamp(1_710_000_000), seed: 1 };
    docket_case(&sena, &order, &Office::default_set(), &OfficeLoads::new()).unwrap()
}

#[test]
fn docketing_numbers_from_the_docketing_date() {
    let case = docketed(CaseType::Ofw);
    // 1_710_000_000 is 2024-03-09
    assert_eq!(case.case_number.to_string(), "RAB-IV-03-00012-24-OFW");
    assert_eq!(case.raffle_history.len(), 1);
    assert_eq!(case.raffle_history[0].reason, "raffle seed 1");
}

#[test]
fn settled_sena_cannot_be_docketed() {
    let complaint = file_complaint(
        PartyIdentity::new("A B", "x", "y"),
        PartyIdentity::new("C D", "x", "y"),
        JurisdictionCategory::MoneyClaims,
        NaiveDate::from_ymd_opt(2024, 1, 1).unwrap(),
    )
    .unwrap();
    let (_, sena) = assign_to_sena(&complaint, &sena_officer()).unwrap();
    let sena = conclude_sena(&sena, SenaOutcome::Settled, minute(0, "settled")).unwrap();
    let order = DocketOrder { case_type: CaseType::Regular, sequence: 1, docketed_at: Timestamp(0), seed: 0 };
    assert_eq!(
        docket_case(&sena, &order, &Office::default_set(), &OfficeLoads::new()),
        Err(CaseError::NotReferred)
    );
}

#[test]
fn re_raffle_changes_only_office_and_history() {
    let case = docketed(CaseType::Regular);
    let target = OfficeId(if case.office_id == OfficeId(4) { 5 } else { 4 });
    let (moved, audit) =
        re_raffle(&case, target, &Office::default_set(), "inhibition", &UserId::from("ela"), Timestamp(9)).unwrap();
    let mut expected = case.clone();
    expected.office_id = target;
    expected.raffle_history = moved.raffle_history.clone();
    assert_eq!(moved, expected);
    assert_eq!(moved.raffle_history.len(), 2);
    assert_eq!(audit.after.as_deref(), Some(format!("office:{}", target.0).as_str()));
}
