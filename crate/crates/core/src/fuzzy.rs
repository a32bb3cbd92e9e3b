//! Trapezoidal fuzzy intervals, vocabularies of linguistic labels and
//! classification of continuous values.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::report::{Severity, ValidationReport};

/// Tolerance used when checking that degrees sum to one.
const RUSPINI_TOLERANCE: f64 = 1e-12;

/// A trapezoid `(a, b, c, d)` giving the membership function of one linguistic label.
///
/// Membership rises linearly on `[a, b]`, is 1 on `[b, c]` and falls linearly
/// on `[c, d]`. `a == b` or `c == d` produce shoulder sets whose plateau extends
/// to the boundary; `b == c` gives a triangle.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FuzzyInterval {
    pub label: String,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl FuzzyInterval {
    pub fn new(label: impl Into<String>, a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let interval = FuzzyInterval { label: label.into(), a, b, c, d };
        match interval.defect() {
            Some(reason) => Err(Error::InvalidInterval { label: interval.label, reason }),
            None => Ok(interval),
        }
    }

    /// First broken invariant, if any.
    fn defect(&self) -> Option<&'static str> {
        if self.label.is_empty() {
            Some("label is empty")
        } else if ![self.a, self.b, self.c, self.d].iter().all(|v| v.is_finite()) {
            Some("bounds must be finite")
        } else if self.a > self.b {
            Some("a <= b violated")
        } else if self.b > self.c {
            Some("b <= c violated")
        } else if self.c > self.d {
            Some("c <= d violated")
        } else {
            None
        }
    }

    pub fn is_valid(&self) -> bool {
        self.defect().is_none()
    }

    /// Membership degree of `x`; see [`membership`].
    pub fn degree(&self, x: f64) -> f64 {
        membership(self, x)
    }
}

/// Evaluates the trapezoidal membership function at `x`.
///
/// Degenerate ramps (`a == b`, `c == d`) are empty regions, so no division by
/// zero can happen and the plateau rule decides the boundary: a shoulder set
/// `(9, 12, 15, 15)` gives 1 at 15. Non-finite `x` has degree 0.
pub fn membership(interval: &FuzzyInterval, x: f64) -> f64 {
    let FuzzyInterval { a, b, c, d, .. } = *interval;
    if !(x >= a && x <= d) {
        0.0
    } else if x >= b && x <= c {
        1.0
    } else if x < b {
        // a <= x < b, so b > a
        (x - a) / (b - a)
    } else {
        // c < x <= d, so d > c
        (d - x) / (d - c)
    }
}

/// A named, ordered set of fuzzy intervals over one continuous dimension.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Vocabulary {
    pub name: String,
    pub intervals: Vec<FuzzyInterval>,
}

impl Vocabulary {
    /// Builds a vocabulary, rejecting it if [`validate_vocabulary`] reports any error.
    pub fn new(name: impl Into<String>, intervals: Vec<FuzzyInterval>) -> Result<Self> {
        let vocab = Vocabulary { name: name.into(), intervals };
        let report = validate_vocabulary(&vocab);
        if let Some(finding) = report.errors().next() {
            return Err(Error::InvalidVocabulary { name: vocab.name, reason: finding.message.clone() });
        }
        Ok(vocab)
    }

    pub fn get(&self, label: &str) -> Option<&FuzzyInterval> {
        self.intervals.iter().find(|i| i.label == label)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.intervals.iter().map(|i| i.label.as_str())
    }
}

/// Labels with a strictly positive degree for one value, in vocabulary order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Classification {
    pub memberships: Vec<(String, f64)>,
}

impl Classification {
    pub fn is_empty(&self) -> bool {
        self.memberships.is_empty()
    }

    pub fn len(&self) -> usize {
        self.memberships.len()
    }

    pub fn degree(&self, label: &str) -> Option<f64> {
        self.memberships.iter().find(|(l, _)| l == label).map(|&(_, d)| d)
    }

    pub fn total(&self) -> f64 {
        self.memberships.iter().map(|&(_, d)| d).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.memberships.iter().map(|(l, d)| (l.as_str(), *d))
    }
}

/// Assigns linguistic labels to `x`. Values outside every set yield an empty classification.
pub fn classify(vocab: &Vocabulary, x: f64) -> Classification {
    let memberships = vocab
        .intervals
        .iter()
        .filter_map(|interval| {
            let degree = membership(interval, x);
            (degree > 0.0).then(|| (interval.label.clone(), degree))
        })
        .collect();
    Classification { memberships }
}

/// Checks interval invariants and label uniqueness (errors), and reports
/// coverage gaps and whether the vocabulary is a Ruspini partition (info).
pub fn validate_vocabulary(vocab: &Vocabulary) -> ValidationReport {
    let mut report = ValidationReport::new();
    let subject = format!("vocabulary '{}'", vocab.name);

    if vocab.intervals.is_empty() {
        report.push(Severity::Error, subject, "vocabulary has no intervals");
        return report;
    }

    for (idx, interval) in vocab.intervals.iter().enumerate() {
        if let Some(reason) = interval.defect() {
            let FuzzyInterval { label, a, b, c, d } = interval;
            report.push(
                Severity::Error,
                subject.clone(),
                format!("interval #{idx} '{label}' ({a}, {b}, {c}, {d}): {reason}"),
            );
        }
    }

    let mut seen = BTreeSet::new();
    for interval in &vocab.intervals {
        if !interval.label.is_empty() && !seen.insert(interval.label.as_str()) {
            report.push(Severity::Error, subject.clone(), format!("duplicate label '{}'", interval.label));
        }
    }

    if !report.has_errors() {
        coverage_findings(vocab, &subject, &mut report);
    }
    report
}

fn coverage_findings(vocab: &Vocabulary, subject: &str, report: &mut ValidationReport) {
    let mut breakpoints: Vec<f64> =
        vocab.intervals.iter().flat_map(|i| [i.a, i.b, i.c, i.d]).collect();
    breakpoints.sort_by(f64::total_cmp);
    breakpoints.dedup();
    let lo = breakpoints[0];
    let hi = breakpoints[breakpoints.len() - 1];

    let total = |x: f64| -> f64 { vocab.intervals.iter().map(|i| membership(i, x)).sum() };

    // The degree sum is affine on every open segment between breakpoints, so
    // two interior samples per segment plus the breakpoints decide it exactly.
    let mut samples = Vec::with_capacity(breakpoints.len() * 3);
    for (k, &p) in breakpoints.iter().enumerate() {
        samples.push((p, None));
        if let Some(&q) = breakpoints.get(k + 1) {
            let third = (q - p) / 3.0;
            samples.push((p + third, Some((p, q))));
            samples.push((p + 2.0 * third, Some((p, q))));
        }
    }

    // (start, end, start_closed, end_closed)
    let mut gaps: Vec<(f64, f64, bool, bool)> = Vec::new();
    let mut first_non_unit: Option<(f64, f64)> = None;
    let mut previous_zero = false;
    for &(x, segment) in &samples {
        let sum = total(x);
        if first_non_unit.is_none() && (sum - 1.0).abs() > RUSPINI_TOLERANCE {
            first_non_unit = Some((x, sum));
        }
        let zero = sum == 0.0 && x > lo && x < hi;
        if zero {
            let (start, end, closed) = match segment {
                Some((p, q)) => (p, q, false),
                None => (x, x, true),
            };
            match gaps.last_mut() {
                Some(last) if previous_zero => {
                    last.1 = end;
                    last.3 = closed;
                }
                _ => gaps.push((start, end, closed, closed)),
            }
        }
        previous_zero = zero;
    }

    for (start, end, start_closed, end_closed) in gaps {
        let message = if start == end {
            format!("coverage gap: no label covers x = {start}")
        } else {
            let open = if start_closed { '[' } else { '(' };
            let close = if end_closed { ']' } else { ')' };
            format!("coverage gap: no label covers {open}{start}, {end}{close}")
        };
        report.push(Severity::Info, subject, message);
    }

    match first_non_unit {
        None => report.push(Severity::Info, subject, format!("Ruspini partition over [{lo}, {hi}]")),
        Some((x, sum)) => report.push(
            Severity::Info,
            subject,
            format!("not a Ruspini partition: degrees sum to {sum} at x = {x}"),
        ),
    }
}
