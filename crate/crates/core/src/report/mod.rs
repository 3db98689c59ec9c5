//! Printable docket reports and docket statistics.
//!
//! A report selects the cases of one type whose current status (the
//! "remark") matches, restricted to an office scope and to cases whose
//! status changed inside the requested period. Party names appear masked.

pub mod pdf;

use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::access::{authorize, Action, Principal, Target};
use crate::case::{CaseNumber, CaseStatus, CaseType, JurisdictionCategory, LaborCase, OfficeId, Timestamp};
use crate::crypto::mask_name;

pub const BRANCH: &str = "NLRC Regional Arbitration Branch No. IV";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("invalid period: {from} is after {to}")]
    InvalidPeriod { from: NaiveDate, to: NaiveDate },
    #[error("not authorized to generate this report")]
    Unauthorized,
}

/// Inclusive date range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Period {
    from: NaiveDate,
    to: NaiveDate,
}

impl Period {
    pub fn new(from: NaiveDate, to: NaiveDate) -> Result<Self, ReportError> {
        if from > to {
            return Err(ReportError::InvalidPeriod { from, to });
        }
        Ok(Self { from, to })
    }

    pub fn from(&self) -> NaiveDate {
        self.from
    }

    pub fn to(&self) -> NaiveDate {
        self.to
    }

    pub fn contains(&self, date: NaiveDate) -> bool {
        (self.from..=self.to).contains(&date)
    }

    pub fn contains_ts(&self, ts: Timestamp) -> bool {
        self.contains(ts.date())
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} to {}", self.from, self.to)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OfficeScope {
    Office(OfficeId),
    All,
}

impl OfficeScope {
    pub fn includes(self, office: OfficeId) -> bool {
        match self {
            OfficeScope::Office(o) => o == office,
            OfficeScope::All => true,
        }
    }

    fn target(self) -> Target {
        match self {
            OfficeScope::Office(o) => Target::Office(o),
            OfficeScope::All => Target::AllOffices,
        }
    }
}

impl fmt::Display for OfficeScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OfficeScope::Office(o) => write!(f, "{o}"),
            OfficeScope::All => f.write_str("ALL"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("office scope must be an office number or ALL, got {0:?}")]
pub struct BadScope(String);

impl FromStr for OfficeScope {
    type Err = BadScope;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(OfficeScope::All);
        }
        s.parse().map(|n| OfficeScope::Office(OfficeId(n))).map_err(|_| BadScope(s.to_owned()))
    }
}

impl Serialize for OfficeScope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            OfficeScope::Office(o) => s.serialize_u32(o.0),
            OfficeScope::All => s.serialize_str("ALL"),
        }
    }
}

impl<'de> Deserialize<'de> for OfficeScope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(OfficeScope::Office(OfficeId(n))),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportRequest {
    pub case_type: CaseType,
    pub remark: CaseStatus,
    pub period: Period,
    pub scope: OfficeScope,
}

impl ReportRequest {
    pub fn matches(&self, case: &LaborCase) -> bool {
        case.case_type == self.case_type
            && case.status == self.remark
            && self.scope.includes(case.office_id)
            && self.period.contains_ts(case.status_since())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub case_number: CaseNumber,
    pub complainant: String,
    pub respondent: String,
    pub nature: JurisdictionCategory,
    pub filed_on: NaiveDate,
    pub status_date: NaiveDate,
}

impl ReportRow {
    fn from_case(case: &LaborCase) -> Self {
        let masked = |name: &str| mask_name(name).unwrap_or_else(|_| "*".to_owned());
        Self {
            case_number: case.case_number,
            complainant: masked(&case.complainant.full_name),
            respondent: masked(&case.respondent.full_name),
            nature: case.nature,
            filed_on: case.filed_on,
            status_date: case.status_since().date(),
        }
    }

    fn line(&self) -> String {
        format!(
            "{:<23} {:<24} {:<24} {:<20} {} {}",
            self.case_number.to_string(),
            self.complainant,
            self.respondent,
            self.nature.as_str(),
            self.filed_on,
            self.status_date
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportHeader {
    pub branch: String,
    pub office: String,
    pub period: Period,
    pub case_type: CaseType,
    pub remark: CaseStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportDocument {
    pub header: ReportHeader,
    pub rows: Vec<ReportRow>,
    pub total_count: usize,
    /// The printable PDF.
    pub rendered: Vec<u8>,
}

impl ReportDocument {
    /// The text lines printed in the document body, independent of PDF
    /// container metadata.
    pub fn text_lines(&self) -> Vec<String> {
        let h = &self.header;
        let mut lines = vec![
            h.branch.clone(),
            format!("Docket report: {} cases, remark {}", h.case_type, h.remark),
            format!("Office: {}", h.office),
            format!("Period: {}", h.period),
            String::new(),
            format!(
                "{:<23} {:<24} {:<24} {:<20} {:<10} {}",
                "Case Number", "Complainant", "Respondent", "Nature", "Filed", "Status Date"
            ),
        ];
        lines.extend(self.rows.iter().map(ReportRow::line));
        lines.push(String::new());
        lines.push(format!("Total: {}", self.total_count));
        lines
    }
}

/// Builds the report for `request` over `docket`.
pub fn generate_report(
    request: &ReportRequest,
    requester: &Principal,
    docket: &[LaborCase],
    generated_at: Timestamp,
) -> Result<ReportDocument, ReportError> {
    if !authorize(requester, Action::GenerateReport, request.scope.target()).is_allowed() {
        return Err(ReportError::Unauthorized);
    }
    let mut rows: Vec<ReportRow> =
        docket.iter().filter(|c| request.matches(c)).map(ReportRow::from_case).collect();
    rows.sort_by_key(|r| r.case_number);
    let header = ReportHeader {
        branch: BRANCH.to_owned(),
        office: match request.scope {
            OfficeScope::Office(o) => format!("Office {o}"),
            OfficeScope::All => "All offices".to_owned(),
        },
        period: request.period,
        case_type: request.case_type,
        remark: request.remark,
    };
    let mut doc = ReportDocument { header, total_count: rows.len(), rows, rendered: Vec::new() };
    let title = format!("{} {} report", doc.header.case_type, doc.header.remark);
    doc.rendered = pdf::render(&title, &doc.text_lines(), generated_at);
    Ok(doc)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocketStats {
    pub received: usize,
    pub disposed: usize,
}

/// Cases docketed, and cases entering a terminal status, within `period`.
pub fn docket_statistics(docket: &[LaborCase], period: &Period) -> DocketStats {
    DocketStats {
        received: docket.iter().filter(|c| period.contains_ts(c.docketed_at())).count(),
        disposed: docket
            .iter()
            .filter(|c| c.disposed_at().is_some_and(|t| period.contains_ts(t)))
            .count(),
    }
}
