use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

const PREFIX: &str = "RAB-IV";
const OFW_SUFFIX: &str = "-OFW";
pub const MAX_SEQUENCE: u32 = 99_999;

/// Docket number of a labor case: `RAB-IV-<MM>-<NNNNN>-<YY>`, with `-OFW`
/// appended for overseas-worker cases.
///
/// Ordering is by year, then per-year sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CaseNumber {
    year: u8,
    sequence: u32,
    month: u8,
    ofw: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CaseNumberError {
    #[error("malformed case number {0:?}")]
    Malformed(String),
    #[error("month {0} out of range")]
    Month(u32),
    #[error("sequence {0} out of range 1..=99999")]
    Sequence(u32),
}

impl CaseNumber {
    /// `year` may be a full year; only its last two digits are kept.
    pub fn new(month: u32, sequence: u32, year: i32, ofw: bool) -> Result<Self, CaseNumberError> {
        if !(1..=12).contains(&month) {
            return Err(CaseNumberError::Month(month));
        }
        if !(1..=MAX_SEQUENCE).contains(&sequence) {
            return Err(CaseNumberError::Sequence(sequence));
        }
        Ok(Self { year: year.rem_euclid(100) as u8, sequence, month: month as u8, ofw })
    }

    pub fn month(&self) -> u32 {
        self.month.into()
    }

    pub fn sequence(&self) -> u32 {
        self.sequence
    }

    /// Two-digit year.
    pub fn year(&self) -> u32 {
        self.year.into()
    }

    pub fn is_ofw(&self) -> bool {
        self.ofw
    }
}

impl fmt::Display for CaseNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{PREFIX}-{:02}-{:05}-{:02}", self.month, self.sequence, self.year)?;
        if self.ofw {
            f.write_str(OFW_SUFFIX)?;
        }
        Ok(())
    }
}

fn digits(s: &str, width: usize) -> Option<u32> {
    (s.len() == width && s.bytes().all(|b| b.is_ascii_digit())).then(|| s.parse().ok())?
}

impl FromStr for CaseNumber {
    type Err = CaseNumberError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || CaseNumberError::Malformed(s.to_owned());
        let (body, ofw) = match s.strip_suffix(OFW_SUFFIX) {
            Some(body) => (body, true),
            None => (s, false),
        };
        let rest = body
            .strip_prefix(PREFIX)
            .and_then(|r| r.strip_prefix('-'))
            .ok_or_else(malformed)?;
        let mut parts = rest.split('-');
        let (Some(mm), Some(seq), Some(yy), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(malformed());
        };
        let month = digits(mm, 2).ok_or_else(malformed)?;
        let sequence = digits(seq, 5).ok_or_else(malformed)?;
        let year = digits(yy, 2).ok_or_else(malformed)?;
        CaseNumber::new(month, sequence, year as i32, ofw)
    }
}

impl Serialize for CaseNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CaseNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
