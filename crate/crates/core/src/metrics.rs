//! Balanced binary accuracy: Perturbed-ACC (label 0), Original-ACC
//! (label 1) and their mean.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::answer::{Answer, Label};
use crate::classifier::IllusionCategory;
use crate::{Error, Result};

/// Counts and accuracies for one slice of the data. An accuracy is `None`
/// when its class has no members; the overall figure is then `None` too.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub perturbed_acc: Option<f64>,
    pub original_acc: Option<f64>,
    pub overall_acc: Option<f64>,
    pub n_original: usize,
    pub n_perturbed: usize,
    pub correct_original: usize,
    pub correct_perturbed: usize,
    pub n_parse_fail: usize,
}

impl ClassMetrics {
    fn add(&mut self, prediction: Answer, label: Label) {
        let correct = prediction == Answer::from(label);
        match label {
            Label::Yes => {
                self.n_original += 1;
                self.correct_original += usize::from(correct);
            }
            Label::No => {
                self.n_perturbed += 1;
                self.correct_perturbed += usize::from(correct);
            }
        }
        if prediction == Answer::Invalid {
            self.n_parse_fail += 1;
        }
    }

    fn finish(&mut self) {
        let ratio = |c: usize, n: usize| (n > 0).then(|| c as f64 / n as f64);
        self.perturbed_acc = ratio(self.correct_perturbed, self.n_perturbed);
        self.original_acc = ratio(self.correct_original, self.n_original);
        self.overall_acc = match (self.perturbed_acc, self.original_acc) {
            (Some(p), Some(o)) => Some((p + o) / 2.0),
            _ => None,
        };
    }

    pub fn total(&self) -> usize {
        self.n_original + self.n_perturbed
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MetricsReport {
    /// Identity of the labeled dataset the report was computed on.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset_hash: Option<String>,
    #[serde(flatten)]
    pub overall: ClassMetrics,
    pub per_category: BTreeMap<IllusionCategory, ClassMetrics>,
}

impl MetricsReport {
    pub fn with_dataset_hash(mut self, hash: impl Into<String>) -> Self {
        self.dataset_hash = Some(hash.into());
        self
    }

    /// Fixed-width plain-text table, one row per category plus a total row.
    pub fn summary_table(&self) -> String {
        let mut s = String::new();
        let pct = |v: Option<f64>| match v {
            Some(v) => alloc::format!("{:>8.2}%", v * 100.0),
            None => alloc::format!("{:>9}", "n/a"),
        };
        let _ = writeln!(
            s,
            "{:<14} {:>6} {:>6} {:>9} {:>9} {:>9} {:>6}",
            "category", "n(1)", "n(0)", "orig", "pert", "overall", "fail"
        );
        let mut row = |name: &str, m: &ClassMetrics| {
            let _ = writeln!(
                s,
                "{:<14} {:>6} {:>6} {} {} {} {:>6}",
                name,
                m.n_original,
                m.n_perturbed,
                pct(m.original_acc),
                pct(m.perturbed_acc),
                pct(m.overall_acc),
                m.n_parse_fail
            );
        };
        for (cat, m) in &self.per_category {
            row(cat.name(), m);
        }
        row("TOTAL", &self.overall);
        s
    }
}

/// Scores `(prediction, label, category)` triples. Parse failures count as
/// wrong in whichever class their label belongs to.
pub fn compute_metrics(pairs: &[(Answer, Label, IllusionCategory)]) -> MetricsReport {
    let mut report = MetricsReport::default();
    for &(pred, label, cat) in pairs {
        report.overall.add(pred, label);
        report.per_category.entry(cat).or_default().add(pred, label);
    }
    report.overall.finish();
    report.per_category.values_mut().for_each(ClassMetrics::finish);
    report
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ClassDelta {
    pub perturbed_acc: Option<f64>,
    pub original_acc: Option<f64>,
    pub overall_acc: Option<f64>,
    pub n_parse_fail: i64,
}

impl ClassDelta {
    fn between(base: &ClassMetrics, cand: &ClassMetrics) -> Self {
        let d = |a: Option<f64>, b: Option<f64>| Some(b? - a?);
        Self {
            perturbed_acc: d(base.perturbed_acc, cand.perturbed_acc),
            original_acc: d(base.original_acc, cand.original_acc),
            overall_acc: d(base.overall_acc, cand.overall_acc),
            n_parse_fail: cand.n_parse_fail as i64 - base.n_parse_fail as i64,
        }
    }
}

/// `candidate - baseline`, field by field.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MetricsDelta {
    #[serde(flatten)]
    pub overall: ClassDelta,
    pub per_category: BTreeMap<IllusionCategory, ClassDelta>,
}

/// Differences between two runs over the same dataset.
pub fn compare_runs(baseline: &MetricsReport, candidate: &MetricsReport) -> Result<MetricsDelta> {
    if baseline.dataset_hash != candidate.dataset_hash {
        return Err(Error::DatasetMismatch {
            left: baseline.dataset_hash.clone(),
            right: candidate.dataset_hash.clone(),
        });
    }
    let empty = ClassMetrics::default();
    let mut per_category = BTreeMap::new();
    for cat in baseline.per_category.keys().chain(candidate.per_category.keys()) {
        let a = baseline.per_category.get(cat).unwrap_or(&empty);
        let b = candidate.per_category.get(cat).unwrap_or(&empty);
        per_category.insert(*cat, ClassDelta::between(a, b));
    }
    Ok(MetricsDelta { overall: ClassDelta::between(&baseline.overall, &candidate.overall), per_category })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use IllusionCategory::*;

    fn triples(gt: &[u8], pred: &[i8]) -> Vec<(Answer, Label, IllusionCategory)> {
        gt.iter().zip(pred).map(|(g, p)| (Answer::from_i8(*p).unwrap(), Label::from_u8(*g).unwrap(), Size)).collect()
    }

    #[test]
    fn hand_computed() {
        let r = compute_metrics(&triples(&[1, 1, 0, 0], &[1, 0, 0, 0]));
        assert_eq!(r.overall.original_acc, Some(0.5));
        assert_eq!(r.overall.perturbed_acc, Some(1.0));
        assert_eq!(r.overall.overall_acc, Some(0.75));
        assert_eq!(r.per_category[&Size], r.overall);
    }

    #[test]
    fn perfect_and_constant() {
        let gt = [1, 0, 1, 1, 0, 1, 1];
        let perfect: Vec<i8> = gt.iter().map(|g| *g as i8).collect();
        let r = compute_metrics(&triples(&gt, &perfect));
        assert_eq!(r.overall.overall_acc, Some(1.0));
        let r = compute_metrics(&triples(&gt, &[1; 7]));
        assert_eq!(r.overall.overall_acc, Some(0.5));
    }

    #[test]
    fn parse_failures_are_wrong() {
        let r = compute_metrics(&triples(&[1, 0], &[-1, -1]));
        assert_eq!(r.overall.overall_acc, Some(0.0));
        assert_eq!(r.overall.n_parse_fail, 2);
    }

    #[test]
    fn empty_class_is_undefined() {
        let r = compute_metrics(&triples(&[1, 1], &[1, 0]));
        assert_eq!(r.overall.perturbed_acc, None);
        assert_eq!(r.overall.original_acc, Some(0.5));
        assert_eq!(r.overall.overall_acc, None);
        let r = compute_metrics(&[]);
        assert_eq!(r.overall.total(), 0);
        assert!(r.per_category.is_empty());
    }

    #[test]
    fn deltas() {
        let a = compute_metrics(&triples(&[1, 0], &[1, 0])).with_dataset_hash("h");
        let d = compare_runs(&a, &a).unwrap();
        assert_eq!(d.overall.overall_acc, Some(0.0));
        assert_eq!(d.per_category[&Size].perturbed_acc, Some(0.0));

        let mut base = MetricsReport::default().with_dataset_hash("h");
        base.overall.overall_acc = Some(0.7310);
        let mut cand = base.clone();
        cand.overall.overall_acc = Some(0.9048);
        let d = compare_runs(&base, &cand).unwrap();
        assert!((d.overall.overall_acc.unwrap() - 0.1738).abs() < 1e-12);

        let other = a.clone().with_dataset_hash("other");
        assert!(matches!(compare_runs(&a, &other), Err(Error::DatasetMismatch { .. })));
    }

    #[test]
    fn table_has_total_row() {
        let r = compute_metrics(&triples(&[1, 0], &[1, 1]));
        let t = r.summary_table();
        assert!(t.contains("TOTAL"));
        assert!(t.contains("size"));
        assert!(t.contains("50.00%"));
    }
}
