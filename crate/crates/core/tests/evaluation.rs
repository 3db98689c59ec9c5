use std::collections::BTreeMap;

use docket_core::eval::{
    descriptive_rating, group_means_from_rows, rating_of, summarize, summarize_scores, Criterion, Rating, Score,
};
use proptest::prelude::*;

fn groups(q: f64, u: f64, s: f64) -> BTreeMap<Criterion, f64> {
    BTreeMap::from([(Criterion::Quality, q), (Criterion::Usability, u), (Criterion::Satisfaction, s)])
}

#[test]
fn expert_table() {
    let summary = summarize(&groups(4.20, 4.42, 4.19)).unwrap();
    assert_eq!(summary.overall.0.to_string(), "4.27");
    assert_eq!(summary.overall.1, Rating::VeryGood);
    let labels: Vec<&str> = summary.rows.iter().map(|r| r.rating.label()).collect();
    assert_eq!(labels, ["Very Good"; 3]);
}

#[test]
fn end_user_table() {
    let summary = summarize(&groups(4.42, 4.50, 4.38)).unwrap();
    assert_eq!(summary.overall.0.to_string(), "4.43");
    assert_eq!(summary.overall.1, Rating::VeryGood);
    let usability = summary.rows.iter().find(|r| r.group == Criterion::Usability).unwrap();
    assert_eq!(usability.rating, Rating::Excellent);
}

#[test]
fn constant_five() {
    let summary = summarize(&groups(5.0, 5.0, 5.0)).unwrap();
    assert_eq!(summary.overall, (Score::from_hundredths(500).unwrap(), Rating::Excellent));
}

#[test]
fn half_up_at_the_second_decimal() {
    // 4.005 sits exactly between 4.00 and 4.01
    let scores: Vec<Score> = [400, 401].map(|h| Score::from_hundredths(h).unwrap()).to_vec();
    assert_eq!(Score::mean(&scores).unwrap().to_string(), "4.01");
    let third: Vec<Score> = [442, 450, 438].map(|h| Score::from_hundredths(h).unwrap()).to_vec();
    assert_eq!(Score::mean(&third).unwrap().to_string(), "4.43");
}

#[test]
fn rows_file_parses_and_averages() {
    let text = "group,score\n# expert panel\nQuality,4\nQuality,5\nUsability 4.42\nSatisfaction,4.19\n";
    let means = group_means_from_rows(text).unwrap();
    assert_eq!(means[&Criterion::Quality].to_string(), "4.50");
    let summary = summarize_scores(&means).unwrap();
    assert!(summary.table().contains("Overall Mean"));
    assert!(group_means_from_rows("Quality,6").is_err());
    assert!(group_means_from_rows("Speed,4").is_err());
    assert!(group_means_from_rows("# nothing").is_err());
}

proptest! {
    #[test]
    fn bands_are_monotone(a in 100u32..=500, b in 100u32..=500) {
        let (lo, hi) = (a.min(b), a.max(b));
        let r_lo = rating_of(Score::from_hundredths(lo).unwrap());
        let r_hi = rating_of(Score::from_hundredths(hi).unwrap());
        prop_assert!(r_lo.scale() <= r_hi.scale());
    }

    #[test]
    fn every_hundredth_has_exactly_one_band(h in 100u32..=500) {
        let want = match h {
            450..=500 => "Excellent",
            350..=449 => "Very Good",
            250..=349 => "Good",
            150..=249 => "Fair",
            _ => "Poor",
        };
        prop_assert_eq!(descriptive_rating(h as f64 / 100.0).unwrap().label(), want);
    }

    #[test]
    fn outside_the_scale_is_rejected(x in prop_oneof![-10.0f64..0.994, 5.006f64..50.0]) {
        prop_assert!(descriptive_rating(x).is_err());
    }
}
