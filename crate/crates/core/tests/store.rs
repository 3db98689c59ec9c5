use std::collections::BTreeMap;

use chrono::NaiveDate;
use docket_core::access::{Principal, Role};
use docket_core::case::{
    assign_to_sena, conclude_sena, docket_case, file_complaint, open_loads, CaseStatus, CaseType, DocketOrder,
    JurisdictionCategory, LaborCase, MinuteEntry, Office, OfficeId, OfficeLoads, PartyIdentity, SenaOutcome,
    Timestamp,
};
use docket_core::crypto::XorKey;
use docket_core::store::{Batch, Store, StoreError};
use proptest::prelude::*;

fn key() -> XorKey {
    XorKey::from_hex("9f02d4").unwrap()
}

fn make_case(i: u32, office: u32, status: CaseStatus, year: i32) -> LaborCase {
    let complaint = file_complaint(
        PartyIdentity::new(format!("Complainant {i}"), "Sto. Tomas", "0917"),
        PartyIdentity::new(format!("Employer {i}"), "Lipa", "043"),
        JurisdictionCategory::MoneyClaims,
        NaiveDate::from_ymd_opt(year, 1, 1).unwrap(),
    )
    .unwrap();
    let (_, sena) = assign_to_sena(&complaint, &Principal::new("s", Role::SenaOfficer, None)).unwrap();
    let sena = conclude_sena(
        &sena,
        SenaOutcome::ReferredToArbitration,
        MinuteEntry::new(Timestamp(0), "s", "referred").unwrap(),
    )
    .unwrap();
    let order = DocketOrder {
        case_type: CaseType::Regular,
        sequence: i,
        docketed_at: Timestamp::start_of(NaiveDate::from_ymd_opt(year, 6, 1).unwrap()),
        seed: 0,
    };
    let mut case = docket_case(&sena, &order, &Office::default_set(), &OfficeLoads::new()).unwrap();
    case.office_id = OfficeId(office);
    case.raffle_history[0].office_id = OfficeId(office);
    case.status = status;
    case
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn office_queries_match_a_full_scan(
        placements in proptest::collection::vec((1u32..=8, 0usize..8, 2023i32..=2025), 0..40),
    ) {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open_dir(dir.path(), key()).unwrap();
        let mut all = Vec::new();
        for (i, (office, status, year)) in placements.iter().enumerate() {
            let case = make_case(i as u32 + 1, *office, CaseStatus::ALL[*status], *year);
            store.put(&case, 0).unwrap();
            all.push(case);
        }
        for office in 1..=8 {
            let mut want: Vec<&LaborCase> = all.iter().filter(|c| c.office_id == OfficeId(office)).collect();
            want.sort_by_key(|c| c.case_number);
            let got = store.query_by_office(OfficeId(office)).unwrap();
            let got: Vec<&LaborCase> = got.iter().map(|v| &v.record).collect();
            prop_assert_eq!(got, want);
        }
        prop_assert_eq!(store.open_loads().unwrap(), open_loads(&all));
        for year in 2023..=2025 {
            let max = all.iter().filter(|c| c.case_number.year() == (year % 100) as u32).map(|c| c.case_number.sequence()).max();
            prop_assert_eq!(store.next_case_sequence(year).unwrap(), max.unwrap_or(0) + 1);
        }
        for case in &all {
            let found = store.query_by_dispute(case.dispute_id).unwrap().unwrap();
            prop_assert_eq!(&found.record, case);
        }

        // a fresh handle sees the same thing
        drop(store);
        let reopened = Store::open_dir(dir.path(), key()).unwrap();
        let listed: BTreeMap<String, LaborCase> = reopened
            .list::<LaborCase>()
            .unwrap()
            .into_iter()
            .map(|v| (v.record.case_number.to_string(), v.record))
            .collect();
        prop_assert_eq!(listed.len(), all.len());
        for case in &all {
            prop_assert_eq!(&listed[&case.case_number.to_string()], case);
        }
    }
}

#[test]
fn stale_writer_loses() {
    let dir = tempfile::tempdir().unwrap();
    let store = Store::open_dir(dir.path(), key()).unwrap();
    let case = make_case(1, 2, CaseStatus::Docketed, 2024);
    assert_eq!(store.put(&case, 0).unwrap(), 1);
    let mut moved = case.clone();
    moved.status = CaseStatus::MandatoryConference;
    assert_eq!(store.put(&moved, 1).unwrap(), 2);
    let err = store.put(&case, 1).unwrap_err();
    assert!(matches!(err, StoreError::VersionConflict { expected: 1, actual: 2, .. }));
    assert_eq!(store.get::<LaborCase>(&case.case_number.to_string()).unwrap().record, moved);
}

#[test]
fn failed_batch_leaves_nothing_behind() {
    let dir = tempfile::tempdir().unwrap();
    let store = Store::open_dir(dir.path(), key()).unwrap();
    let a = make_case(1, 2, CaseStatus::Docketed, 2024);
    let b = make_case(2, 3, CaseStatus::Docketed, 2024);
    store.put(&b, 0).unwrap();
    let before = std::fs::read(store.path()).unwrap();
    let mut batch = Batch::new();
    batch.put(&a, 0).put(&b, 0);
    assert!(store.commit(batch).is_err());
    assert!(store.try_get::<LaborCase>(&a.case_number.to_string()).unwrap().is_none());
    assert_eq!(std::fs::read(store.path()).unwrap(), before);
}

#[test]
fn sealed_names_need_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let case = make_case(1, 2, CaseStatus::Docketed, 2024);
    {
        let store = Store::open_dir(dir.path(), key()).unwrap();
        store.put(&case, 0).unwrap();
    }
    let raw = std::fs::read_to_string(dir.path().join(docket_core::store::DATA_FILE)).unwrap();
    assert!(!raw.contains("Complainant 1"));
    assert!(!raw.contains("Employer 1"));
    // non-name fields stay readable for queries
    assert!(raw.contains("Sto. Tomas"));
}
