//! Five-point Likert aggregation for the acceptability survey.
//!
//! All arithmetic runs on integer hundredths so band edges and half-up
//! rounding behave exactly as printed in the score tables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("mean {0} is outside 1.00..=5.00")]
    OutOfRange(String),
    #[error("no scores given")]
    Empty,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// A mean on the 1.00–5.00 scale, held as hundredths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Score(u16);

impl Score {
    pub const MIN: Score = Score(100);
    pub const MAX: Score = Score(500);

    pub fn from_hundredths(h: u32) -> Result<Self, EvalError> {
        if !(100..=500).contains(&h) {
            return Err(EvalError::OutOfRange(format!("{}.{:02}", h / 100, h % 100)));
        }
        Ok(Score(h as u16))
    }

    /// Rounds half-up to two decimals, then range-checks.
    pub fn from_f64(mean: f64) -> Result<Self, EvalError> {
        if !mean.is_finite() {
            return Err(EvalError::OutOfRange(mean.to_string()));
        }
        let h = (mean * 100.0).round();
        if !(100.0..=500.0).contains(&h) {
            return Err(EvalError::OutOfRange(mean.to_string()));
        }
        Ok(Score(h as u16))
    }

    pub fn hundredths(self) -> u32 {
        self.0.into()
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 100.0
    }

    /// Mean of `scores`, rounded half-up to two decimals.
    pub fn mean(scores: &[Score]) -> Result<Score, EvalError> {
        if scores.is_empty() {
            return Err(EvalError::Empty);
        }
        let n = scores.len() as u64;
        let sum: u64 = scores.iter().map(|s| u64::from(s.0)).sum();
        // floor((2·sum + n) / 2n) == round-half-up(sum / n)
        let h = (2 * sum + n) / (2 * n);
        Ok(Score(h as u16))
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:02}", self.0 / 100, self.0 % 100)
    }
}

/// Exact decimal parse; digits past the second decimal round half-up.
impl FromStr for Score {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EvalError::OutOfRange(s.to_owned());
        let (int, frac) = s.trim().split_once('.').unwrap_or((s.trim(), ""));
        if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u32 = int.parse().map_err(|_| bad())?;
        let digit = |i: usize| frac.as_bytes().get(i).map_or(0, |b| u32::from(b - b'0'));
        let round_up = u32::from(digit(2) >= 5);
        let h = int
            .checked_mul(100)
            .and_then(|v| v.checked_add(digit(0) * 10 + digit(1) + round_up))
            .ok_or_else(bad)?;
        Score::from_hundredths(h).map_err(|_| bad())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rating {
    Poor,
    Fair,
    Good,
    VeryGood,
    Excellent,
}

impl Rating {
    pub fn label(self) -> &'static str {
        match self {
            Rating::Excellent => "Excellent",
            Rating::VeryGood => "Very Good",
            Rating::Good => "Good",
            Rating::Fair => "Fair",
            Rating::Poor => "Poor",
        }
    }

    /// Position on the scale, 1 (Poor) to 5 (Excellent).
    pub fn scale(self) -> u8 {
        self as u8 + 1
    }
}

impl fmt::Display for Rating {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Inclusive (low, high) hundredths per descriptive rating.
pub const BANDS: [(u16, u16, Rating); 5] = [
    (450, 500, Rating::Excellent),
    (350, 449, Rating::VeryGood),
    (250, 349, Rating::Good),
    (150, 249, Rating::Fair),
    (100, 149, Rating::Poor),
];

pub fn rating_of(score: Score) -> Rating {
    BANDS
        .iter()
        .find(|(lo, hi, _)| (*lo..=*hi).contains(&score.0))
        .map(|(_, _, r)| *r)
        .expect("bands cover 1.00..=5.00")
}

pub fn descriptive_rating(mean: f64) -> Result<Rating, EvalError> {
    Score::from_f64(mean).map(rating_of)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Criterion {
    Quality,
    Usability,
    Satisfaction,
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "quality" => Ok(Criterion::Quality),
            "usability" => Ok(Criterion::Usability),
            "satisfaction" => Ok(Criterion::Satisfaction),
            other => Err(format!("unknown criterion {other:?}")),
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub group: Criterion,
    pub mean: Score,
    pub rating: Rating,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvaluationSummary {
    pub rows: Vec<SummaryRow>,
    pub overall: (Score, Rating),
}

impl EvaluationSummary {
    pub fn table(&self) -> String {
        let mut out = format!("{:<14}{:>6}  {}\n", "Criteria", "Mean", "Descriptive Rating");
        for row in &self.rows {
            out += &format!("{:<14}{:>6}  {}\n", row.group.to_string(), row.mean.to_string(), row.rating);
        }
        let (mean, rating) = self.overall;
        out += &format!("{:<14}{:>6}  {}\n", "Overall Mean", mean.to_string(), rating);
        out
    }
}

/// Labels each group mean and averages them into the overall rating.
pub fn summarize(group_means: &BTreeMap<Criterion, f64>) -> Result<EvaluationSummary, EvalError> {
    let scored: BTreeMap<Criterion, Score> = group_means
        .iter()
        .map(|(g, m)| Score::from_f64(*m).map(|s| (*g, s)))
        .collect::<Result<_, _>>()?;
    summarize_scores(&scored)
}

pub fn summarize_scores(group_means: &BTreeMap<Criterion, Score>) -> Result<EvaluationSummary, EvalError> {
    let rows: Vec<SummaryRow> = group_means
        .iter()
        .map(|(group, mean)| SummaryRow { group: *group, mean: *mean, rating: rating_of(*mean) })
        .collect();
    let means: Vec<Score> = rows.iter().map(|r| r.mean).collect();
    let overall = Score::mean(&means)?;
    Ok(EvaluationSummary { rows, overall: (overall, rating_of(overall)) })
}

/// Reads `group,score` rows (comma or whitespace separated, `#` comments)
/// and averages the scores of each group.
pub fn group_means_from_rows(text: &str) -> Result<BTreeMap<Criterion, Score>, EvalError> {
    let mut groups: BTreeMap<Criterion, Vec<Score>> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |reason: String| EvalError::Parse { line: i + 1, reason };
        let mut fields = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|f| !f.is_empty());
        let (Some(group), Some(score), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err("expected `group,score`".to_owned()));
        };
        if group.eq_ignore_ascii_case("group") {
            continue;
        }
        let group: Criterion = group.parse().map_err(parse_err)?;
        let score: Score = score.parse().map_err(|e: EvalError| parse_err(e.to_string()))?;
        groups.entry(group).or_default().push(score);
    }
    if groups.is_empty() {
        return Err(EvalError::Empty);
    }
    groups.into_iter().map(|(g, s)| Score::mean(&s).map(|m| (g, m))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn means(q: f64, u: f64, s: f64) -> BTreeMap<Criterion, f64> {
        BTreeMap::from([(Criterion::Quality, q), (Criterion::Usability, u), (Criterion::Satisfaction, s)])
    }

    #[test]
    fn expert_and_end_user_tables() {
        let experts = summarize(&means(4.20, 4.42, 4.19)).unwrap();
        assert_eq!(experts.overall.0.to_string(), "4.27");
        assert_eq!(experts.overall.1, Rating::VeryGood);
        assert!(experts.rows.iter().all(|r| r.rating == Rating::VeryGood));

        let users = summarize(&means(4.42, 4.50, 4.38)).unwrap();
        assert_eq!(users.overall.0.to_string(), "4.43");
        assert_eq!(users.overall.1, Rating::VeryGood);
        let usability = users.rows.iter().find(|r| r.group == Criterion::Usability).unwrap();
        assert_eq!(usability.rating, Rating::Excellent);

        let perfect = summarize(&means(5.0, 5.0, 5.0)).unwrap();
        assert_eq!(perfect.overall, (Score::MAX, Rating::Excellent));
    }

    #[test]
    fn band_edges() {
        assert_eq!(descriptive_rating(4.27).unwrap(), Rating::VeryGood);
        assert_eq!(descriptive_rating(4.50).unwrap(), Rating::Excellent);
        assert_eq!(descriptive_rating(4.49).unwrap(), Rating::VeryGood);
        assert_eq!(descriptive_rating(1.00).unwrap(), Rating::Poor);
        assert!(descriptive_rating(0.99).is_err());
        assert!(descriptive_rating(5.01).is_err());
        assert!(descriptive_rating(f64::NAN).is_err());
    }

    #[test]
    fn bands_tile_the_scale() {
        let mut covered = 0;
        for h in 100..=500 {
            let hits = BANDS.iter().filter(|(lo, hi, _)| (*lo..=*hi).contains(&h)).count();
            assert_eq!(hits, 1, "{h}");
            covered += 1;
        }
        assert_eq!(covered, 401);
    }

    #[test]
    fn monotone() {
        let mut last = Rating::Poor;
        for h in 100..=500 {
            let r = rating_of(Score::from_hundredths(h).unwrap());
            assert!(r >= last);
            last = r;
        }
    }

    #[test]
    fn half_up_mean() {
        let s = |t: &str| t.parse::<Score>().unwrap();
        assert_eq!(Score::mean(&[s("4.42"), s("4.50"), s("4.38")]).unwrap(), s("4.43"));
        // 4.005 → 4.01
        assert_eq!(Score::mean(&[s("4.00"), s("4.01")]).unwrap(), s("4.01"));
        assert_eq!(s("4.275"), s("4.28"));
        assert_eq!(s("4.274"), s("4.27"));
        assert_eq!(s("5"), Score::MAX);
        assert!("5.001".parse::<Score>().is_ok());
        assert!("5.005".parse::<Score>().is_err());
        assert!("-1".parse::<Score>().is_err());
        assert!("four".parse::<Score>().is_err());
    }

    #[test]
    fn rows_file() {
        let text = "group,score\n# expert panel\nQuality,4\nQuality 5\nUsability,4.42\nSatisfaction,4.19\n";
        let g = group_means_from_rows(text).unwrap();
        assert_eq!(g[&Criterion::Quality].to_string(), "4.50");
        let summary = summarize_scores(&g).unwrap();
        assert!(summary.table().contains("Overall Mean"));
        assert!(matches!(group_means_from_rows("Quality"), Err(EvalError::Parse { line: 1, .. })));
        assert!(matches!(group_means_from_rows("Speed,4"), Err(EvalError::Parse { .. })));
        assert_eq!(group_means_from_rows("# nothing\n"), Err(EvalError::Empty));
    }
}
