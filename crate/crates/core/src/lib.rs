//! Mining of imprecise temporal associations `{A, B} => {dT, C}` from three
//! timestamped event streams.
//!
//! Continuous stream values and elapsed times are mapped onto linguistic
//! labels with trapezoidal fuzzy sets ([`fuzzy`]). Every windowed
//! `(trigger1, trigger2, consequence)` event triple becomes a numerical
//! association, which is fuzzified into weighted label tuples and aggregated
//! into a [`RuleSet`] carrying fuzzy support and confidence ([`miner`]). The
//! rule set can be shown as a prefix-merged decision tree ([`tree`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line driver live in the `itassoc` crate.
//!
//! ```
//! use itassoc_core::{Event, EventStream, FuzzyInterval, MiningConfig, StreamBundle,
//!                    Vocabulary, WindowConfig, mine};
//!
//! let volume = Vocabulary::new("volume", vec![
//!     FuzzyInterval::new("Small", 0.0, 0.0, 3.0, 6.0).unwrap(),
//!     FuzzyInterval::new("Medium", 3.0, 6.0, 9.0, 12.0).unwrap(),
//!     FuzzyInterval::new("Large", 9.0, 12.0, 15.0, 15.0).unwrap(),
//! ]).unwrap();
//! let elapsed = Vocabulary::new("delta_t", vec![
//!     FuzzyInterval::new("Immediately After", 0.0, 0.0, 1.0, 3.0).unwrap(),
//!     FuzzyInterval::new("Short Time After", 1.0, 3.0, 5.0, 7.0).unwrap(),
//!     FuzzyInterval::new("Long Time After", 5.0, 7.0, 10.0, 10.0).unwrap(),
//! ]).unwrap();
//!
//! let stream = |name: &str, events: &[(f64, f64)]| {
//!     EventStream::new(name, events.iter().map(|&(t, v)| Event::new(t, v)).collect())
//! };
//! let bundle = StreamBundle::new(
//!     stream("s1", &[(0.0, 2.0), (1000.0, 7.0)]),
//!     stream("s2", &[(3.0, 8.0), (1003.0, 2.0)]),
//!     stream("s3", &[(7.0, 10.5), (13.0, 15.0), (1013.0, 7.0)]),
//! );
//!
//! let cfg = MiningConfig::new(
//!     WindowConfig::new(10.0, 10.0).unwrap(),
//!     volume.clone(), volume.clone(), elapsed, volume,
//! );
//! let rules = mine(&bundle, &cfg);
//! assert_eq!(rules.len(), 4);
//! assert!((rules.total_weight() - 3.0).abs() < 1e-9);
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod fuzzy;
pub mod miner;
pub mod report;
pub mod stream;
pub mod tree;

pub use error::{Error, Result};
pub use fuzzy::{classify, membership, validate_vocabulary, Classification, FuzzyInterval, Vocabulary};
pub use miner::{
    aggregate, apply_thresholds, confidence, extract_numerical, fuzzify, mine, support, FuzzyInstance,
    FuzzyRule, MiningConfig, NumericalAssociation, RuleKey, RuleSet, WindowConfig,
};
pub use report::{Finding, Severity, ValidationReport};
pub use stream::{validate_bundle, validate_stream, Event, EventStream, StreamBundle};
pub use tree::{build_tree, render_ascii, render_dot, LeafMetrics, Level, TreeNode};
