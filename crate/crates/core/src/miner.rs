//! Windowed extraction of numerical associations, fuzzification, and
//! aggregation into rules with fuzzy support and confidence.
//!
//! An association pairs an event `e1` of the first trigger stream with an
//! event `e2` of the second such that `t1 <= t2 <= t1 + trigger_window`, and a
//! consequence event `e3` with `t2 <= t3 <= t2 + consequence_window`. The
//! elapsed time is measured from the second trigger: `dt = t3 - t2`.
//!
//! Each association is classified through four vocabularies and contributes
//! the product of its four degrees to every label tuple it falls into. Rule
//! support divides a tuple's weight by the weight of all tuples; confidence
//! divides it by the weight of all tuples with the same (ordered) trigger
//! labels.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::fuzzy::{classify, Vocabulary};
use crate::stream::StreamBundle;

/// Maximum time spans, inclusive, between the two triggers and between the
/// second trigger and the consequence.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WindowConfig {
    pub trigger: f64,
    pub consequence: f64,
}

impl WindowConfig {
    pub fn new(trigger: f64, consequence: f64) -> Result<Self> {
        let windows = WindowConfig { trigger, consequence };
        windows.check()?;
        Ok(windows)
    }

    pub fn check(&self) -> Result<()> {
        for (which, value) in [("trigger", self.trigger), ("consequence", self.consequence)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidWindow { which, value });
            }
        }
        Ok(())
    }
}

/// One raw `(v1, v2, dt, v3)` tuple with the timestamps it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NumericalAssociation {
    pub v1: f64,
    pub v2: f64,
    pub delta_t: f64,
    pub v3: f64,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

/// The linguistic tuple `(trigger1, trigger2, delta_t, consequence)` identifying a rule.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RuleKey {
    pub trigger1: String,
    pub trigger2: String,
    pub delta_t: String,
    pub consequence: String,
}

impl RuleKey {
    pub fn new(
        trigger1: impl Into<String>,
        trigger2: impl Into<String>,
        delta_t: impl Into<String>,
        consequence: impl Into<String>,
    ) -> Self {
        RuleKey {
            trigger1: trigger1.into(),
            trigger2: trigger2.into(),
            delta_t: delta_t.into(),
            consequence: consequence.into(),
        }
    }

    pub fn trigger(&self) -> (&str, &str) {
        (&self.trigger1, &self.trigger2)
    }

    pub fn labels(&self) -> [&str; 4] {
        [&self.trigger1, &self.trigger2, &self.delta_t, &self.consequence]
    }
}

/// One weighted label tuple produced by fuzzifying a numerical association.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyInstance {
    pub key: RuleKey,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FuzzyRule {
    #[cfg_attr(feature = "serde", serde(flatten))]
    pub key: RuleKey,
    pub weight: f64,
    pub support: f64,
    pub confidence: f64,
}

/// Aggregated rules with the denominators their metrics were computed from.
///
/// Rules are ordered by descending weight, then by label tuple.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RuleSet {
    rules: Vec<FuzzyRule>,
    total_weight: f64,
    trigger_weights: BTreeMap<(String, String), f64>,
}

impl RuleSet {
    pub fn rules(&self) -> &[FuzzyRule] {
        &self.rules
    }

    pub fn iter(&self) -> core::slice::Iter<'_, FuzzyRule> {
        self.rules.iter()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Combined weight of every fuzzified association, `W*`.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Combined weight of associations with the given trigger labels, `W{A,B}`.
    pub fn trigger_weight(&self, trigger1: &str, trigger2: &str) -> Option<f64> {
        // (String, String) keys cannot be queried with a (&str, &str) tuple.
        self.trigger_weights
            .iter()
            .find(|((l1, l2), _)| l1 == trigger1 && l2 == trigger2)
            .map(|(_, &w)| w)
    }

    pub fn trigger_weights(&self) -> &BTreeMap<(String, String), f64> {
        &self.trigger_weights
    }

    pub fn get(&self, key: &RuleKey) -> Option<&FuzzyRule> {
        self.rules.iter().find(|r| &r.key == key)
    }
}

impl<'a> IntoIterator for &'a RuleSet {
    type Item = &'a FuzzyRule;
    type IntoIter = core::slice::Iter<'a, FuzzyRule>;

    fn into_iter(self) -> Self::IntoIter {
        self.rules.iter()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MiningConfig {
    pub windows: WindowConfig,
    pub vocab_trigger1: Vocabulary,
    pub vocab_trigger2: Vocabulary,
    pub vocab_delta_t: Vocabulary,
    pub vocab_consequence: Vocabulary,
    pub min_support: f64,
    pub min_confidence: f64,
}

impl MiningConfig {
    /// Config with both thresholds at 0.
    pub fn new(
        windows: WindowConfig,
        vocab_trigger1: Vocabulary,
        vocab_trigger2: Vocabulary,
        vocab_delta_t: Vocabulary,
        vocab_consequence: Vocabulary,
    ) -> Self {
        MiningConfig {
            windows,
            vocab_trigger1,
            vocab_trigger2,
            vocab_delta_t,
            vocab_consequence,
            min_support: 0.0,
            min_confidence: 0.0,
        }
    }

    pub fn with_thresholds(mut self, min_support: f64, min_confidence: f64) -> Result<Self> {
        check_threshold("min_support", min_support)?;
        check_threshold("min_confidence", min_confidence)?;
        self.min_support = min_support;
        self.min_confidence = min_confidence;
        Ok(self)
    }
}

pub(crate) fn check_threshold(which: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::InvalidThreshold { which, value })
    }
}

/// Enumerates every event triple satisfying both windows, ordered by `(t1, t2, t3)`.
///
/// Streams must be sorted by timestamp. Both windows are closed intervals.
pub fn extract_numerical(bundle: &StreamBundle, windows: &WindowConfig) -> Vec<NumericalAssociation> {
    let second = &bundle.trigger2.events;
    let third = &bundle.consequence.events;
    let mut out = Vec::new();

    for e1 in &bundle.trigger1.events {
        let t1 = e1.timestamp;
        let start2 = second.partition_point(|e| e.timestamp < t1);
        for e2 in second[start2..].iter().take_while(|e| e.timestamp <= t1 + windows.trigger) {
            let t2 = e2.timestamp;
            let start3 = third.partition_point(|e| e.timestamp < t2);
            for e3 in third[start3..].iter().take_while(|e| e.timestamp <= t2 + windows.consequence) {
                out.push(NumericalAssociation {
                    v1: e1.value,
                    v2: e2.value,
                    delta_t: e3.timestamp - t2,
                    v3: e3.value,
                    t1,
                    t2,
                    t3: e3.timestamp,
                });
            }
        }
    }
    // Equal trigger-1 timestamps restart the inner scans; restore (t1, t2, t3) order.
    out.sort_by(|x, y| x.t1.total_cmp(&y.t1).then(x.t2.total_cmp(&y.t2)).then(x.t3.total_cmp(&y.t3)));
    out
}

/// Classifies the four components of `assoc` and returns every label
/// combination with weight `mu_A * mu_B * mu_dT * mu_C`.
///
/// Empty when any component falls outside its whole vocabulary.
pub fn fuzzify(assoc: &NumericalAssociation, cfg: &MiningConfig) -> Vec<FuzzyInstance> {
    let first = classify(&cfg.vocab_trigger1, assoc.v1);
    let second = classify(&cfg.vocab_trigger2, assoc.v2);
    let elapsed = classify(&cfg.vocab_delta_t, assoc.delta_t);
    let outcome = classify(&cfg.vocab_consequence, assoc.v3);

    let mut out = Vec::with_capacity(first.len() * second.len() * elapsed.len() * outcome.len());
    for (l1, mu1) in first.iter() {
        for (l2, mu2) in second.iter() {
            for (ldt, mudt) in elapsed.iter() {
                for (l3, mu3) in outcome.iter() {
                    out.push(FuzzyInstance {
                        key: RuleKey::new(l1, l2, ldt, l3),
                        weight: mu1 * mu2 * mudt * mu3,
                    });
                }
            }
        }
    }
    out
}

/// Sums instance weights per label tuple and computes support and confidence.
///
/// Instances whose weight is not a positive finite number are ignored.
pub fn aggregate<'a, I>(instances: I) -> RuleSet
where
    I: IntoIterator<Item = &'a FuzzyInstance>,
{
    let mut weights: BTreeMap<RuleKey, f64> = BTreeMap::new();
    let mut trigger_weights: BTreeMap<(String, String), f64> = BTreeMap::new();
    let mut total_weight = 0.0;

    for instance in instances {
        if !(instance.weight.is_finite() && instance.weight > 0.0) {
            continue;
        }
        total_weight += instance.weight;
        let key = &instance.key;
        *trigger_weights.entry((key.trigger1.clone(), key.trigger2.clone())).or_insert(0.0) += instance.weight;
        *weights.entry(key.clone()).or_insert(0.0) += instance.weight;
    }

    let mut rules: Vec<FuzzyRule> = weights
        .into_iter()
        .map(|(key, weight)| {
            let trigger_weight = trigger_weights[&(key.trigger1.clone(), key.trigger2.clone())];
            FuzzyRule { support: weight / total_weight, confidence: weight / trigger_weight, key, weight }
        })
        .collect();
    rules.sort_by(rule_order);

    RuleSet { rules, total_weight, trigger_weights }
}

fn rule_order(x: &FuzzyRule, y: &FuzzyRule) -> Ordering {
    y.weight.total_cmp(&x.weight).then_with(|| x.key.cmp(&y.key))
}

/// Fuzzy support of `rule`: its weight over the combined weight of the rule set.
pub fn support(ruleset: &RuleSet, rule: &FuzzyRule) -> Result<f64> {
    if ruleset.total_weight > 0.0 {
        Ok(rule.weight / ruleset.total_weight)
    } else {
        Err(Error::UndefinedSupport)
    }
}

/// Fuzzy confidence of `rule`: its weight over the weight of its trigger labels.
pub fn confidence(ruleset: &RuleSet, rule: &FuzzyRule) -> Result<f64> {
    match ruleset.trigger_weight(&rule.key.trigger1, &rule.key.trigger2) {
        Some(w) if w > 0.0 => Ok(rule.weight / w),
        _ => Err(Error::UnknownTrigger {
            trigger1: rule.key.trigger1.clone(),
            trigger2: rule.key.trigger2.clone(),
        }),
    }
}

/// Keeps rules meeting both thresholds. Metrics and denominators are left as they were.
pub fn apply_thresholds(ruleset: &RuleSet, min_support: f64, min_confidence: f64) -> RuleSet {
    RuleSet {
        rules: ruleset
            .rules
            .iter()
            .filter(|r| r.support >= min_support && r.confidence >= min_confidence)
            .cloned()
            .collect(),
        total_weight: ruleset.total_weight,
        trigger_weights: ruleset.trigger_weights.clone(),
    }
}

/// Runs extraction, fuzzification, aggregation and threshold pruning.
pub fn mine(bundle: &StreamBundle, cfg: &MiningConfig) -> RuleSet {
    let instances: Vec<FuzzyInstance> =
        extract_numerical(bundle, &cfg.windows).iter().flat_map(|a| fuzzify(a, cfg)).collect();
    let rules = aggregate(&instances);
    apply_thresholds(&rules, cfg.min_support, cfg.min_confidence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::FuzzyInterval;
    use crate::stream::{Event, EventStream};
    use alloc::vec;

    fn vocab(name: &str, sets: &[(&str, f64, f64, f64, f64)]) -> Vocabulary {
        Vocabulary::new(
            name,
            sets.iter().map(|&(l, a, b, c, d)| FuzzyInterval::new(l, a, b, c, d).unwrap()).collect(),
        )
        .unwrap()
    }

    fn example_config() -> MiningConfig {
        let volume = vocab(
            "volume",
            &[("Small", 0.0, 0.0, 3.0, 6.0), ("Medium", 3.0, 6.0, 9.0, 12.0), ("Large", 9.0, 12.0, 15.0, 15.0)],
        );
        let elapsed = vocab(
            "delta_t",
            &[
                ("Immediately After", 0.0, 0.0, 1.0, 3.0),
                ("Short Time After", 1.0, 3.0, 5.0, 7.0),
                ("Long Time After", 5.0, 7.0, 10.0, 10.0),
            ],
        );
        MiningConfig::new(WindowConfig::new(10.0, 10.0).unwrap(), volume.clone(), volume.clone(), elapsed, volume)
    }

    fn stream(name: &str, events: &[(f64, f64)]) -> EventStream {
        EventStream::new(name, events.iter().map(|&(t, v)| Event::new(t, v)).collect())
    }

    fn example_bundle() -> StreamBundle {
        StreamBundle::new(
            stream("Stream 1", &[(0.0, 2.0), (1000.0, 7.0)]),
            stream("Stream 2", &[(3.0, 8.0), (1003.0, 2.0)]),
            stream("Stream 3", &[(7.0, 10.5), (13.0, 15.0), (1013.0, 7.0)]),
        )
    }

    fn assoc(v1: f64, v2: f64, delta_t: f64, v3: f64) -> NumericalAssociation {
        NumericalAssociation { v1, v2, delta_t, v3, t1: 0.0, t2: 0.0, t3: delta_t }
    }

    fn instance(l: [&str; 4], weight: f64) -> FuzzyInstance {
        FuzzyInstance { key: RuleKey::new(l[0], l[1], l[2], l[3]), weight }
    }

    #[test]
    fn windows_must_be_positive() {
        assert!(WindowConfig::new(0.0, 1.0).is_err());
        assert!(WindowConfig::new(1.0, f64::INFINITY).is_err());
        assert!(WindowConfig::new(1.0, -2.0).is_err());
        assert!(WindowConfig::new(0.5, 2.0).is_ok());
    }

    #[test]
    fn thresholds_must_be_fractions() {
        let cfg = example_config();
        assert!(cfg.clone().with_thresholds(1.5, 0.0).is_err());
        assert!(cfg.clone().with_thresholds(0.0, -0.1).is_err());
        assert!(cfg.with_thresholds(1.0, 0.0).is_ok());
    }

    #[test]
    fn extracts_the_three_example_associations() {
        let found = extract_numerical(&example_bundle(), &WindowConfig::new(10.0, 10.0).unwrap());
        let tuples: Vec<_> = found.iter().map(|a| (a.v1, a.v2, a.delta_t, a.v3)).collect();
        assert_eq!(tuples, vec![(2.0, 8.0, 4.0, 10.5), (2.0, 8.0, 10.0, 15.0), (7.0, 2.0, 10.0, 7.0)]);
        assert_eq!((found[0].t1, found[0].t2, found[0].t3), (0.0, 3.0, 7.0));
    }

    #[test]
    fn windows_are_closed_and_start_at_the_trigger() {
        let bundle = StreamBundle::new(
            stream("a", &[(5.0, 1.0)]),
            stream("b", &[(4.0, 1.0), (5.0, 2.0), (7.0, 3.0), (7.5, 4.0)]),
            stream("c", &[(5.0, 1.0), (7.0, 2.0), (9.0, 3.0), (9.01, 4.0)]),
        );
        let found = extract_numerical(&bundle, &WindowConfig::new(2.0, 2.0).unwrap());
        let times: Vec<_> = found.iter().map(|a| (a.t2, a.t3)).collect();
        assert_eq!(times, vec![(5.0, 5.0), (5.0, 7.0), (7.0, 7.0), (7.0, 9.0)]);
        assert_eq!(found[0].delta_t, 0.0);
    }

    #[test]
    fn empty_second_trigger_yields_nothing() {
        let mut bundle = example_bundle();
        bundle.trigger2.events.clear();
        assert!(extract_numerical(&bundle, &WindowConfig::new(10.0, 10.0).unwrap()).is_empty());
    }

    #[test]
    fn fuzzify_splits_on_overlap() {
        let cfg = example_config();
        assert_eq!(
            fuzzify(&assoc(2.0, 8.0, 4.0, 10.5), &cfg),
            vec![
                instance(["Small", "Medium", "Short Time After", "Medium"], 0.5),
                instance(["Small", "Medium", "Short Time After", "Large"], 0.5),
            ]
        );
        assert_eq!(
            fuzzify(&assoc(7.0, 2.0, 10.0, 7.0), &cfg),
            vec![instance(["Medium", "Small", "Long Time After", "Medium"], 1.0)]
        );
        assert!(fuzzify(&assoc(-5.0, 2.0, 10.0, 7.0), &cfg).is_empty());
    }

    #[test]
    fn aggregate_sums_identical_tuples() {
        let rs = aggregate(&[instance(["A", "B", "T", "C"], 0.5), instance(["A", "B", "T", "C"], 0.5)]);
        assert_eq!(rs.len(), 1);
        assert_eq!(rs.rules()[0].weight, 1.0);
        assert_eq!(rs.rules()[0].support, 1.0);
        assert_eq!(support(&rs, &rs.rules()[0]), Ok(1.0));
    }

    #[test]
    fn aggregate_skips_non_positive_weights() {
        let rs = aggregate(&[instance(["A", "B", "T", "C"], 0.0), instance(["A", "B", "T", "D"], f64::NAN)]);
        assert!(rs.is_empty());
        assert_eq!(rs.total_weight(), 0.0);
    }

    #[test]
    fn example_rule_set() {
        let rs = mine(&example_bundle(), &example_config());
        let got: Vec<_> = rs
            .iter()
            .map(|r| (r.key.labels(), r.weight, r.support, r.confidence))
            .collect();
        let expected = [
            (["Medium", "Small", "Long Time After", "Medium"], 1.0, 1.0 / 3.0, 1.0),
            (["Small", "Medium", "Long Time After", "Large"], 1.0, 1.0 / 3.0, 0.5),
            (["Small", "Medium", "Short Time After", "Large"], 0.5, 1.0 / 6.0, 0.25),
            (["Small", "Medium", "Short Time After", "Medium"], 0.5, 1.0 / 6.0, 0.25),
        ];
        assert_eq!(got.len(), expected.len());
        for ((labels, w, s, c), (el, ew, es, ec)) in got.iter().zip(expected.iter()) {
            assert_eq!(labels, el);
            assert!((w - ew).abs() < 1e-9 && (s - es).abs() < 1e-9 && (c - ec).abs() < 1e-9);
        }
        assert!((rs.total_weight() - 3.0).abs() < 1e-9);
        assert_eq!(rs.trigger_weight("Small", "Medium"), Some(2.0));
        assert_eq!(rs.trigger_weight("Medium", "Small"), Some(1.0));
        for rule in &rs {
            assert!((support(&rs, rule).unwrap() - rule.support).abs() < 1e-15);
            assert!((confidence(&rs, rule).unwrap() - rule.confidence).abs() < 1e-15);
        }
    }

    #[test]
    fn thresholds_do_not_renormalize() {
        let rs = mine(&example_bundle(), &example_config());
        let pruned = apply_thresholds(&rs, 0.3, 0.0);
        assert_eq!(pruned.len(), 2);
        assert!(pruned.iter().all(|r| r.weight == 1.0 && (r.support - 1.0 / 3.0).abs() < 1e-12));
        assert_eq!(pruned.total_weight(), rs.total_weight());
        assert_eq!(apply_thresholds(&rs, 0.0, 0.0), rs);
        assert!(apply_thresholds(&rs, 1.0, 1.0).is_empty());
    }

    #[test]
    fn metric_errors() {
        let empty = RuleSet::default();
        let rule = FuzzyRule { key: RuleKey::new("a", "b", "c", "d"), weight: 1.0, support: 0.0, confidence: 0.0 };
        assert_eq!(support(&empty, &rule), Err(Error::UndefinedSupport));
        assert!(matches!(confidence(&empty, &rule), Err(Error::UnknownTrigger { .. })));
    }

    #[test]
    fn empty_bundle_mines_nothing() {
        let empty = StreamBundle::new(stream("a", &[]), stream("b", &[]), stream("c", &[]));
        let rs = mine(&empty, &example_config());
        assert!(rs.is_empty());
        assert_eq!(rs.total_weight(), 0.0);
    }
}
