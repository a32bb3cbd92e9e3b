//! Timestamped event streams and the three-role bundle mined for associations.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::report::{Severity, ValidationReport};

/// One observation on a stream. Timestamps are in generic, non-negative time units.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Event {
    pub timestamp: f64,
    pub value: f64,
}

impl Event {
    pub fn new(timestamp: f64, value: f64) -> Self {
        Event { timestamp, value }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EventStream {
    pub name: String,
    /// Sorted non-decreasing by timestamp.
    pub events: Vec<Event>,
}

impl EventStream {
    /// Creates a stream, stably sorting `events` by timestamp so that events
    /// sharing a timestamp keep their input order.
    pub fn new(name: impl Into<String>, mut events: Vec<Event>) -> Self {
        events.sort_by(|x, y| x.timestamp.total_cmp(&y.timestamp));
        EventStream { name: name.into(), events }
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn is_sorted(&self) -> bool {
        self.events.windows(2).all(|w| w[0].timestamp <= w[1].timestamp)
    }

    /// Returns a copy with every timestamp moved by `offset`.
    pub fn shifted(&self, offset: f64) -> Self {
        EventStream {
            name: self.name.clone(),
            events: self.events.iter().map(|e| Event::new(e.timestamp + offset, e.value)).collect(),
        }
    }
}

/// The two trigger streams and the consequence stream of one mining run.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StreamBundle {
    pub trigger1: EventStream,
    pub trigger2: EventStream,
    pub consequence: EventStream,
}

impl StreamBundle {
    pub fn new(trigger1: EventStream, trigger2: EventStream, consequence: EventStream) -> Self {
        StreamBundle { trigger1, trigger2, consequence }
    }

    /// Streams paired with their role names.
    pub fn roles(&self) -> [(&'static str, &EventStream); 3] {
        [("trigger1", &self.trigger1), ("trigger2", &self.trigger2), ("consequence", &self.consequence)]
    }

    pub fn shifted(&self, offset: f64) -> Self {
        StreamBundle {
            trigger1: self.trigger1.shifted(offset),
            trigger2: self.trigger2.shifted(offset),
            consequence: self.consequence.shifted(offset),
        }
    }
}

/// Checks one stream on its own: name, ordering, finiteness, empty stream and duplicate events.
pub fn validate_stream(stream: &EventStream, role: Option<&str>) -> ValidationReport {
    let mut report = ValidationReport::new();
    let subject = match role {
        Some(role) => format!("stream '{}' ({role})", stream.name),
        None => format!("stream '{}'", stream.name),
    };

    if stream.name.is_empty() {
        report.push(Severity::Error, subject.clone(), "stream name is empty");
    }
    if stream.is_empty() {
        let message = if role.is_some() {
            "stream is empty: no associations can be produced"
        } else {
            "stream is empty"
        };
        report.push(Severity::Warning, subject.clone(), message);
    }
    for (idx, event) in stream.events.iter().enumerate() {
        if !event.timestamp.is_finite() || event.timestamp < 0.0 {
            report.push(
                Severity::Error,
                subject.clone(),
                format!("event #{idx}: timestamp must be finite and non-negative, got {}", event.timestamp),
            );
        }
        if !event.value.is_finite() {
            report.push(Severity::Error, subject.clone(), format!("event #{idx}: value {} is not finite", event.value));
        }
    }
    if !stream.is_sorted() {
        report.push(Severity::Error, subject.clone(), "events are not sorted by timestamp");
    }

    let mut seen = BTreeSet::new();
    let mut reported = BTreeSet::new();
    for event in &stream.events {
        let key = (event.timestamp.to_bits(), event.value.to_bits());
        if !seen.insert(key) && reported.insert(key) {
            report.push(
                Severity::Info,
                subject.clone(),
                format!("duplicate event (timestamp {}, value {})", event.timestamp, event.value),
            );
        }
    }
    report
}

/// Validates all three streams and that their names are distinct.
pub fn validate_bundle(bundle: &StreamBundle) -> ValidationReport {
    let mut report = ValidationReport::new();
    for (role, stream) in bundle.roles() {
        report.extend(validate_stream(stream, Some(role)));
    }
    let roles = bundle.roles();
    for i in 0..roles.len() {
        for j in i + 1..roles.len() {
            if roles[i].1.name == roles[j].1.name {
                report.push(
                    Severity::Error,
                    "bundle",
                    format!("{} and {} share the stream name '{}'", roles[i].0, roles[j].0, roles[i].1.name),
                );
            }
        }
    }
    report
}
