//! The three-stream worked example with its expected associations and rules.

use itassoc_core::{Event, EventStream, FuzzyInterval, MiningConfig, StreamBundle, Vocabulary, WindowConfig};

pub const TRIGGER1_EVENTS: [(f64, f64); 2] = [(0.0, 2.0), (1000.0, 7.0)];
pub const TRIGGER2_EVENTS: [(f64, f64); 2] = [(3.0, 8.0), (1003.0, 2.0)];
pub const CONSEQUENCE_EVENTS: [(f64, f64); 3] = [(7.0, 10.5), (13.0, 15.0), (1013.0, 7.0)];

/// The sample streams as a wide CSV, `-` marking absent events.
pub const WIDE_CSV: &str = "\
timestamp,Stream 1,Stream 2,Stream 3
0,2,-,-
3,-,8,-
7,-,-,10.5
13,-,-,15
1000,7,-,-
1003,-,2,-
1013,-,-,7
";

/// `(v1, v2, dt, v3)` of the expected numerical associations for windows (10, 10).
pub const ASSOCIATIONS: [(f64, f64, f64, f64); 3] =
    [(2.0, 8.0, 4.0, 10.5), (2.0, 8.0, 10.0, 15.0), (7.0, 2.0, 10.0, 7.0)];

/// Expected rules: labels, weight, support, confidence.
pub const RULES: [([&str; 4], f64, f64, f64); 4] = [
    (["Small", "Medium", "Short Time After", "Medium"], 0.5, 1.0 / 6.0, 0.25),
    (["Small", "Medium", "Short Time After", "Large"], 0.5, 1.0 / 6.0, 0.25),
    (["Small", "Medium", "Long Time After", "Large"], 1.0, 1.0 / 3.0, 0.5),
    (["Medium", "Small", "Long Time After", "Medium"], 1.0, 1.0 / 3.0, 1.0),
];

pub fn stream(name: &str, events: &[(f64, f64)]) -> EventStream {
    EventStream::new(name, events.iter().map(|&(t, v)| Event::new(t, v)).collect())
}

pub fn bundle() -> StreamBundle {
    StreamBundle::new(
        stream("Stream 1", &TRIGGER1_EVENTS),
        stream("Stream 2", &TRIGGER2_EVENTS),
        stream("Stream 3", &CONSEQUENCE_EVENTS),
    )
}

pub fn volume() -> Vocabulary {
    Vocabulary::new(
        "volume",
        vec![
            FuzzyInterval::new("Small", 0.0, 0.0, 3.0, 6.0).unwrap(),
            FuzzyInterval::new("Medium", 3.0, 6.0, 9.0, 12.0).unwrap(),
            FuzzyInterval::new("Large", 9.0, 12.0, 15.0, 15.0).unwrap(),
        ],
    )
    .unwrap()
}

pub fn elapsed() -> Vocabulary {
    Vocabulary::new(
        "delta_t",
        vec![
            FuzzyInterval::new("Immediately After", 0.0, 0.0, 1.0, 3.0).unwrap(),
            FuzzyInterval::new("Short Time After", 1.0, 3.0, 5.0, 7.0).unwrap(),
            FuzzyInterval::new("Long Time After", 5.0, 7.0, 10.0, 10.0).unwrap(),
        ],
    )
    .unwrap()
}

pub fn config() -> MiningConfig {
    MiningConfig::new(WindowConfig::new(10.0, 10.0).unwrap(), volume(), volume(), elapsed(), volume())
}
