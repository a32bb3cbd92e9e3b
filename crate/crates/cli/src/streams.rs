//! CSV ingestion of event streams.
//!
//! Two layouts are accepted, told apart by the header:
//!
//! * long: `timestamp,stream,value`, one event per row;
//! * wide: `timestamp,<name1>,<name2>,...`, one column per stream, where an
//!   empty cell or `-` means no event on that stream at that timestamp.
//!
//! Streams come out sorted by timestamp with equal timestamps kept in input
//! order. Long is the canonical layout written by [`write_long_csv`].

use std::fmt::Write;

use itassoc_core::{Event, EventStream, StreamBundle};
use thiserror::Error;

/// Which named stream plays each role of the association.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoleMap {
    pub trigger1: String,
    pub trigger2: String,
    pub consequence: String,
}

impl RoleMap {
    pub fn new(trigger1: impl Into<String>, trigger2: impl Into<String>, consequence: impl Into<String>) -> Self {
        RoleMap { trigger1: trigger1.into(), trigger2: trigger2.into(), consequence: consequence.into() }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &str)> {
        [("trigger1", self.trigger1.as_str()), ("trigger2", &self.trigger2), ("consequence", &self.consequence)]
            .into_iter()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum StreamError {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("line {line}: timestamp {timestamp} is negative")]
    NegativeTimestamp { line: u64, timestamp: f64 },
    #[error("{role} stream '{name}' does not appear in the input")]
    MissingStream { role: &'static str, name: String },
    #[error("roles {first} and {second} both name stream '{name}'")]
    SharedStream { first: &'static str, second: &'static str, name: String },
}

impl StreamError {
    /// Errors caused by the role map rather than the CSV text.
    pub fn is_configuration(&self) -> bool {
        matches!(self, StreamError::MissingStream { .. } | StreamError::SharedStream { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    Long,
    Wide,
}

/// Parses every stream in `text`, in order of first appearance (header order
/// for the wide layout). The wide layout lists streams even if they have no events.
pub fn parse_streams(text: &str) -> Result<(Layout, Vec<EventStream>), StreamError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let header = match records.next() {
        Some(record) => record.map_err(|e| csv_error(&e))?,
        None => return Err(StreamError::Parse { line: 1, message: "missing header".into() }),
    };
    let columns: Vec<&str> = header.iter().collect();
    let layout = match columns.as_slice() {
        [t, s, v] if is_named(t, "timestamp") && is_named(s, "stream") && is_named(v, "value") => Layout::Long,
        [t, rest @ ..] if is_named(t, "timestamp") && !rest.is_empty() => Layout::Wide,
        _ => {
            return Err(StreamError::Parse {
                line: 1,
                message: "header must be `timestamp,stream,value` or `timestamp,<stream>,...`".into(),
            })
        }
    };

    let mut streams: Vec<(String, Vec<Event>)> = Vec::new();
    if layout == Layout::Wide {
        for (idx, name) in columns[1..].iter().enumerate() {
            if name.is_empty() {
                return Err(StreamError::Parse { line: 1, message: format!("column {} has an empty stream name", idx + 2) });
            }
            if streams.iter().any(|(n, _)| n == name) {
                return Err(StreamError::Parse { line: 1, message: format!("stream '{name}' appears twice in the header") });
            }
            streams.push((name.to_string(), Vec::new()));
        }
    }

    for record in records {
        let record = record.map_err(|e| csv_error(&e))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != columns.len() {
            return Err(StreamError::Parse {
                line,
                message: format!("expected {} columns, found {}", columns.len(), record.len()),
            });
        }
        let timestamp = parse_number(&record[0], "timestamp", line)?;
        if timestamp < 0.0 {
            return Err(StreamError::NegativeTimestamp { line, timestamp });
        }
        match layout {
            Layout::Long => {
                let name = &record[1];
                if name.is_empty() {
                    return Err(StreamError::Parse { line, message: "empty stream name".into() });
                }
                let value = parse_number(&record[2], "value", line)?;
                let event = Event::new(timestamp, value);
                match streams.iter_mut().find(|(n, _)| n == name) {
                    Some((_, events)) => events.push(event),
                    None => streams.push((name.to_string(), vec![event])),
                }
            }
            Layout::Wide => {
                for (cell, (_, events)) in record.iter().skip(1).zip(streams.iter_mut()) {
                    if cell.is_empty() || cell == "-" {
                        continue;
                    }
                    events.push(Event::new(timestamp, parse_number(cell, "value", line)?));
                }
            }
        }
    }

    Ok((layout, streams.into_iter().map(|(name, events)| EventStream::new(name, events)).collect()))
}

/// Parses `text` and assigns streams to roles.
///
/// In the wide layout every role must name a header column. The long layout
/// cannot declare a stream without events, so a role naming an absent stream
/// gets an empty stream there.
pub fn parse_streams_csv(text: &str, roles: &RoleMap) -> Result<StreamBundle, StreamError> {
    let pairs: Vec<_> = roles.iter().collect();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if pairs[i].1 == pairs[j].1 {
                return Err(StreamError::SharedStream { first: pairs[i].0, second: pairs[j].0, name: pairs[i].1.into() });
            }
        }
    }

    let (layout, streams) = parse_streams(text)?;
    let take = |role: &'static str, name: &str| -> Result<EventStream, StreamError> {
        match streams.iter().find(|s| s.name == name) {
            Some(stream) => Ok(stream.clone()),
            None if layout == Layout::Long => Ok(EventStream::new(name, Vec::new())),
            None => Err(StreamError::MissingStream { role, name: name.into() }),
        }
    };
    Ok(StreamBundle::new(
        take("trigger1", &roles.trigger1)?,
        take("trigger2", &roles.trigger2)?,
        take("consequence", &roles.consequence)?,
    ))
}

/// Writes streams in the long layout, one stream after the other.
pub fn write_long_csv<'a>(streams: impl IntoIterator<Item = &'a EventStream>) -> String {
    let mut out = String::from("timestamp,stream,value\n");
    for stream in streams {
        for event in &stream.events {
            let _ = writeln!(out, "{},{},{}", event.timestamp, stream.name, event.value);
        }
    }
    out
}

fn is_named(cell: &str, name: &str) -> bool {
    cell.eq_ignore_ascii_case(name)
}

fn parse_number(cell: &str, what: &str, line: u64) -> Result<f64, StreamError> {
    match cell.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(StreamError::Parse { line, message: format!("{what} '{cell}' is not a finite number") }),
    }
}

fn csv_error(err: &csv::Error) -> StreamError {
    let line = err.position().map_or(0, |p| p.line());
    StreamError::Parse { line, message: err.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itassoc_testkit::fixture;

    fn roles() -> RoleMap {
        RoleMap::new("Stream 1", "Stream 2", "Stream 3")
    }

    #[test]
    fn wide_example_table() {
        let bundle = parse_streams_csv(fixture::WIDE_CSV, &roles()).unwrap();
        assert_eq!(bundle, fixture::bundle());
        assert_eq!(
            (bundle.trigger1.len(), bundle.trigger2.len(), bundle.consequence.len()),
            (2, 2, 3)
        );
    }

    #[test]
    fn empty_body_gives_empty_streams() {
        let bundle = parse_streams_csv("timestamp,Stream 1,Stream 2,Stream 3\n", &roles()).unwrap();
        assert!(bundle.roles().iter().all(|(_, s)| s.is_empty()));
        let bundle = parse_streams_csv("timestamp,stream,value\n", &roles()).unwrap();
        assert!(bundle.roles().iter().all(|(_, s)| s.is_empty()));
        assert_eq!(bundle.trigger2.name, "Stream 2");
    }

    #[test]
    fn long_layout_sorts_rows() {
        let shuffled = "timestamp,stream,value\n\
            1013,Stream 3,7\n3,Stream 2,8\n13,Stream 3,15\n0,Stream 1,2\n\
            1003,Stream 2,2\n7,Stream 3,10.5\n1000,Stream 1,7\n";
        assert_eq!(parse_streams_csv(shuffled, &roles()).unwrap(), fixture::bundle());
    }

    #[test]
    fn crlf_and_whitespace() {
        let text = "timestamp, stream, value\r\n0, a, 1\r\n\r\n2 ,b, 3\r\n";
        let (layout, streams) = parse_streams(text).unwrap();
        assert_eq!(layout, Layout::Long);
        assert_eq!(streams.len(), 2);
        assert_eq!(streams[1].events, vec![Event::new(2.0, 3.0)]);
    }

    #[test]
    fn malformed_rows_report_line_numbers() {
        let err = parse_streams("timestamp,stream,value\n0,a,1\n1,a\n").unwrap_err();
        assert_eq!(err, StreamError::Parse { line: 3, message: "expected 3 columns, found 2".into() });
        let err = parse_streams("timestamp,a,b\n0,1,-\nx,2,-\n").unwrap_err();
        assert!(matches!(err, StreamError::Parse { line: 3, .. }), "{err}");
        let err = parse_streams("timestamp,a,b\n0,one,-\n").unwrap_err();
        assert!(err.to_string().contains("value 'one'"), "{err}");
        let err = parse_streams("timestamp,a\n0,NaN\n").unwrap_err();
        assert!(matches!(err, StreamError::Parse { line: 2, .. }));
        assert!(parse_streams("").is_err());
        assert!(parse_streams("time,a,b\n").is_err());
        assert!(parse_streams("timestamp,a,a\n").is_err());
    }

    #[test]
    fn negative_timestamps_rejected() {
        let err = parse_streams("timestamp,stream,value\n-1,a,1\n").unwrap_err();
        assert_eq!(err, StreamError::NegativeTimestamp { line: 2, timestamp: -1.0 });
    }

    #[test]
    fn role_errors_are_configuration_errors() {
        let err = parse_streams_csv(fixture::WIDE_CSV, &RoleMap::new("Stream 1", "Stream 9", "Stream 3")).unwrap_err();
        assert_eq!(err, StreamError::MissingStream { role: "trigger2", name: "Stream 9".into() });
        assert!(err.is_configuration());
        let err = parse_streams_csv(fixture::WIDE_CSV, &RoleMap::new("Stream 1", "Stream 1", "Stream 3")).unwrap_err();
        assert!(err.is_configuration());
    }

    #[test]
    fn equal_timestamps_keep_input_order() {
        let (_, streams) = parse_streams("timestamp,stream,value\n5,a,1\n5,a,2\n1,a,3\n5,a,0\n").unwrap();
        let values: Vec<_> = streams[0].events.iter().map(|e| e.value).collect();
        assert_eq!(values, vec![3.0, 1.0, 2.0, 0.0]);
    }
}
