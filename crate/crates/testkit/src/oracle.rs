//! Brute-force recomputation of rule sets straight from the definitions.
//!
//! Nothing here calls into the mining pipeline: event triples come from a
//! plain triple loop over unsorted indices, membership from a min/max form of
//! the trapezoid, and metrics from direct division of accumulated sums.

use std::collections::BTreeMap;

use itassoc_core::{FuzzyInterval, StreamBundle, Vocabulary, WindowConfig};

pub type Labels = [String; 4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleRule {
    pub weight: f64,
    pub support: f64,
    pub confidence: f64,
}

#[derive(Debug, Clone, Default)]
pub struct OracleRules {
    pub rules: BTreeMap<Labels, OracleRule>,
    pub total_weight: f64,
    pub associations: usize,
}

/// `(v1, v2, dt, v3)` for every triple satisfying both closed windows.
pub fn triples(bundle: &StreamBundle, windows: &WindowConfig) -> Vec<(f64, f64, f64, f64)> {
    let mut out = Vec::new();
    for e1 in &bundle.trigger1.events {
        for e2 in &bundle.trigger2.events {
            if !(e1.timestamp <= e2.timestamp && e2.timestamp <= e1.timestamp + windows.trigger) {
                continue;
            }
            for e3 in &bundle.consequence.events {
                if e2.timestamp <= e3.timestamp && e3.timestamp <= e2.timestamp + windows.consequence {
                    out.push((e1.value, e2.value, e3.timestamp - e2.timestamp, e3.value));
                }
            }
        }
    }
    out
}

/// Trapezoid as `max(0, min(rise, 1, fall))`, with vertical ramps when `a == b` or `c == d`.
pub fn trapezoid(set: &FuzzyInterval, x: f64) -> f64 {
    let rise = if set.b > set.a {
        (x - set.a) / (set.b - set.a)
    } else if x >= set.a {
        1.0
    } else {
        0.0
    };
    let fall = if set.d > set.c {
        (set.d - x) / (set.d - set.c)
    } else if x <= set.d {
        1.0
    } else {
        0.0
    };
    rise.min(1.0).min(fall).max(0.0)
}

pub fn mine(
    bundle: &StreamBundle,
    windows: &WindowConfig,
    vocabs: [&Vocabulary; 4],
) -> OracleRules {
    let found = triples(bundle, windows);
    let mut weights: BTreeMap<Labels, f64> = BTreeMap::new();
    for &(v1, v2, dt, v3) in &found {
        for s1 in &vocabs[0].intervals {
            for s2 in &vocabs[1].intervals {
                for sdt in &vocabs[2].intervals {
                    for s3 in &vocabs[3].intervals {
                        let w = trapezoid(s1, v1) * trapezoid(s2, v2) * trapezoid(sdt, dt) * trapezoid(s3, v3);
                        if w > 0.0 {
                            let key = [s1.label.clone(), s2.label.clone(), sdt.label.clone(), s3.label.clone()];
                            *weights.entry(key).or_insert(0.0) += w;
                        }
                    }
                }
            }
        }
    }

    let total_weight: f64 = weights.values().sum();
    let rules = weights
        .iter()
        .map(|(key, &weight)| {
            let same_trigger: f64 = weights
                .iter()
                .filter(|(k, _)| k[0] == key[0] && k[1] == key[1])
                .map(|(_, w)| w)
                .sum();
            (key.clone(), OracleRule { weight, support: weight / total_weight, confidence: weight / same_trigger })
        })
        .collect();
    OracleRules { rules, total_weight, associations: found.len() }
}

/// Crisp support and confidence by integer counting, for vocabularies of
/// disjoint rectangles. Returns `(count, support, confidence)` per label tuple.
pub fn crisp_counts(
    bundle: &StreamBundle,
    windows: &WindowConfig,
    vocabs: [&Vocabulary; 4],
) -> BTreeMap<Labels, (u64, f64, f64)> {
    let bucket = |vocab: &Vocabulary, x: f64| -> Option<String> {
        vocab.intervals.iter().find(|s| s.a <= x && x <= s.d).map(|s| s.label.clone())
    };
    let mut counts: BTreeMap<Labels, u64> = BTreeMap::new();
    for (v1, v2, dt, v3) in triples(bundle, windows) {
        if let (Some(l1), Some(l2), Some(ldt), Some(l3)) =
            (bucket(vocabs[0], v1), bucket(vocabs[1], v2), bucket(vocabs[2], dt), bucket(vocabs[3], v3))
        {
            *counts.entry([l1, l2, ldt, l3]).or_insert(0) += 1;
        }
    }
    let n: u64 = counts.values().sum();
    counts
        .iter()
        .map(|(key, &count)| {
            let premise: u64 = counts.iter().filter(|(k, _)| k[0] == key[0] && k[1] == key[1]).map(|(_, c)| c).sum();
            (key.clone(), (count, count as f64 / n as f64, count as f64 / premise as f64))
        })
        .collect()
}
