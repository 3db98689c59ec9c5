use std::collections::BTreeMap;

use super::{CaseError, LaborCase, Office, OfficeId};

/// Open-case count per office. Offices missing from the map carry no load.
pub type OfficeLoads = BTreeMap<OfficeId, usize>;

/// Picks the office a newly docketed case goes to.
///
/// Candidates are the active offices sharing the minimal open-case load,
/// sorted by id; the winner is `candidates[seed % candidates.len()]`.
pub fn raffle(offices: &[Office], loads: &OfficeLoads, seed: u64) -> Result<OfficeId, CaseError> {
    let load_of = |id: &OfficeId| loads.get(id).copied().unwrap_or(0);
    let active = offices.iter().filter(|o| o.active).map(|o| o.office_id);
    let min = active.clone().map(|id| load_of(&id)).min().ok_or(CaseError::NoActiveOffice)?;
    let mut candidates: Vec<OfficeId> = active.filter(|id| load_of(id) == min).collect();
    candidates.sort_unstable();
    candidates.dedup();
    let pick = (seed % candidates.len() as u64) as usize;
    Ok(candidates[pick])
}

/// Counts open cases per office.
pub fn open_loads<'a>(cases: impl IntoIterator<Item = &'a LaborCase>) -> OfficeLoads {
    let mut loads = OfficeLoads::new();
    for case in cases.into_iter().filter(|c| c.status.is_open()) {
        *loads.entry(case.office_id).or_default() += 1;
    }
    loads
}
