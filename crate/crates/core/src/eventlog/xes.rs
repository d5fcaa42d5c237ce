//! XES subset reader and writer.
//!
//! Recognized structure is `<log>`, `<trace>` and `<event>` with typed
//! attribute elements (`string`, `date`, `int`, `float`, `boolean`, `id`).
//! Event keys with meaning: `concept:name` (operation), `time:timestamp`,
//! `id` (must equal the trace's `concept:name`), `x`, `y`, `source`,
//! `target` and `label`. Other event attributes are preserved as strings.
//! Extensions, globals, classifiers and nested attributes are skipped.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use chrono::{DateTime, NaiveDateTime, SecondsFormat, TimeZone, Utc};
use quick_xml::escape::escape;
use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use super::{ElementTrace, EventLog, LogError, LogEvent, Millis, ParseWarning, Point};

const ATTRIBUTE_TAGS: [&[u8]; 6] = [b"string", b"date", b"int", b"float", b"boolean", b"id"];

#[derive(Debug, PartialEq)]
enum Frame {
    Log,
    Trace,
    Event,
    Ignored,
}

struct TraceBuilder {
    attributes: BTreeMap<String, String>,
    events: Vec<BTreeMap<String, String>>,
    ordinal: usize,
}

pub(super) fn read(raw: &[u8], warnings: &mut Vec<ParseWarning>) -> Result<EventLog, LogError> {
    let mut reader = Reader::from_reader(raw);
    reader.config_mut().trim_text(true);

    let mut stack: Vec<Frame> = Vec::new();
    let mut log_attributes: BTreeMap<String, String> = BTreeMap::new();
    let mut trace: Option<TraceBuilder> = None;
    let mut event: Option<BTreeMap<String, String>> = None;
    let mut traces: Vec<ElementTrace> = Vec::new();
    let mut saw_log = false;

    loop {
        let offset = reader.buffer_position() as usize;
        let ev = reader
            .read_event()
            .map_err(|e| LogError::parse_at(raw, reader.error_position() as usize, e.to_string()))?;
        let (start, is_empty) = match &ev {
            Event::Start(s) => (Some(s.clone()), false),
            Event::Empty(s) => (Some(s.clone()), true),
            Event::End(_) => (None, false),
            Event::Eof => break,
            _ => continue,
        };

        if let Some(start) = start {
            let name = start.local_name().as_ref().to_vec();
            let parent = stack.last();
            let frame = match (parent, name.as_slice()) {
                (None, b"log") => {
                    if saw_log {
                        return Err(LogError::parse_at(raw, offset, "multiple <log> roots"));
                    }
                    saw_log = true;
                    Frame::Log
                }
                (None, other) => {
                    return Err(LogError::parse_at(
                        raw,
                        offset,
                        format!("expected <log> root, found <{}>", String::from_utf8_lossy(other)),
                    ))
                }
                (Some(Frame::Log), b"trace") => {
                    trace = Some(TraceBuilder {
                        attributes: BTreeMap::new(),
                        events: Vec::new(),
                        ordinal: traces.len(),
                    });
                    Frame::Trace
                }
                (Some(Frame::Trace), b"event") => {
                    event = Some(BTreeMap::new());
                    Frame::Event
                }
                (Some(parent @ (Frame::Log | Frame::Trace | Frame::Event)), tag) if ATTRIBUTE_TAGS.contains(&tag) => {
                    let (key, value) = key_value(raw, offset, &start)?;
                    let target = match parent {
                        Frame::Log => &mut log_attributes,
                        Frame::Trace => &mut trace.as_mut().expect("open trace").attributes,
                        _ => event.as_mut().expect("open event"),
                    };
                    target.insert(key, value);
                    Frame::Ignored
                }
                _ => Frame::Ignored,
            };
            if is_empty {
                close(frame, &mut trace, &mut event, &mut traces, warnings)?;
            } else {
                stack.push(frame);
            }
        } else {
            let frame = stack
                .pop()
                .ok_or_else(|| LogError::parse_at(raw, offset, "unexpected closing tag"))?;
            close(frame, &mut trace, &mut event, &mut traces, warnings)?;
        }
    }

    if !stack.is_empty() {
        return Err(LogError::parse_at(raw, raw.len(), "unexpected end of document"));
    }
    if !saw_log {
        return Err(LogError::parse_at(raw, raw.len(), "missing <log> element"));
    }

    let log_id = log_attributes.remove("concept:name").unwrap_or_default();
    let mut log = EventLog::new(log_id, traces);
    log.source_meta = log_attributes;
    Ok(log)
}

fn close(
    frame: Frame,
    trace: &mut Option<TraceBuilder>,
    event: &mut Option<BTreeMap<String, String>>,
    traces: &mut Vec<ElementTrace>,
    warnings: &mut Vec<ParseWarning>,
) -> Result<(), LogError> {
    match frame {
        Frame::Event => {
            let attrs = event.take().expect("open event");
            trace.as_mut().expect("open trace").events.push(attrs);
        }
        Frame::Trace => {
            let builder = trace.take().expect("open trace");
            traces.push(finish_trace(builder, warnings)?);
        }
        Frame::Log | Frame::Ignored => {}
    }
    Ok(())
}

fn key_value(raw: &[u8], offset: usize, start: &BytesStart<'_>) -> Result<(String, String), LogError> {
    let mut key = None;
    let mut value = None;
    for attr in start.attributes() {
        let attr = attr.map_err(|e| LogError::parse_at(raw, offset, e.to_string()))?;
        let text = attr
            .unescape_value()
            .map_err(|e| LogError::parse_at(raw, offset, e.to_string()))?
            .into_owned();
        match attr.key.as_ref() {
            b"key" => key = Some(text),
            b"value" => value = Some(text),
            _ => {}
        }
    }
    match (key, value) {
        (Some(k), Some(v)) => Ok((k, v)),
        _ => Err(LogError::parse_at(raw, offset, "attribute element needs key and value")),
    }
}

fn finish_trace(builder: TraceBuilder, warnings: &mut Vec<ParseWarning>) -> Result<ElementTrace, LogError> {
    let name = builder
        .attributes
        .get("concept:name")
        .cloned()
        .ok_or_else(|| LogError::Schema {
            trace: format!("#{}", builder.ordinal + 1),
            message: "trace has no concept:name".into(),
        })?;
    let schema = |message: String| LogError::Schema {
        trace: name.clone(),
        message,
    };

    let mut events = Vec::with_capacity(builder.events.len());
    for (i, mut attrs) in builder.events.into_iter().enumerate() {
        let n = i + 1;
        let op = attrs
            .remove("concept:name")
            .filter(|s| !s.is_empty())
            .ok_or_else(|| schema(format!("event {n} missing concept:name")))?;
        let stamp = attrs
            .remove("time:timestamp")
            .ok_or_else(|| schema(format!("event {n} missing time:timestamp")))?;
        let (timestamp, truncated) = parse_timestamp(&stamp).map_err(|e| schema(format!("event {n}: {e}")))?;
        if truncated {
            warnings.push(ParseWarning {
                code: "timestamp-precision".into(),
                element_id: Some(name.clone()),
                message: format!("event {n}: sub-millisecond digits of `{stamp}` dropped"),
            });
        }
        let id = attrs
            .remove("id")
            .ok_or_else(|| schema(format!("event {n} has no id attribute")))?;
        if id != name {
            return Err(schema(format!("event {n} id `{id}` does not match trace name")));
        }
        let coord = |v: Option<String>| -> Result<Option<f64>, LogError> {
            v.map(|v| {
                v.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|f| f.is_finite())
                    .ok_or_else(|| schema(format!("event {n}: bad coordinate `{v}`")))
            })
            .transpose()
        };
        let position = match (coord(attrs.remove("x"))?, coord(attrs.remove("y"))?) {
            (Some(x), Some(y)) => Some(Point { x, y }),
            (None, None) => None,
            _ => return Err(schema(format!("event {n}: position needs both x and y"))),
        };
        let mut event = LogEvent::new(op, id, timestamp);
        event.position = position;
        event.edge_source = attrs.remove("source");
        event.edge_target = attrs.remove("target");
        event.label_text = attrs.remove("label");
        event.attributes = attrs;
        events.push(event);
    }
    Ok(ElementTrace {
        element_id: name,
        events,
    })
}

/// Parses an XES date into epoch milliseconds. The flag reports whether
/// sub-millisecond precision was dropped.
pub(crate) fn parse_timestamp(value: &str) -> Result<(Millis, bool), String> {
    let value = value.trim();
    let utc: DateTime<Utc> = match DateTime::parse_from_rfc3339(value) {
        Ok(dt) => dt.with_timezone(&Utc),
        Err(_) => {
            let naive = NaiveDateTime::parse_from_str(value, "%Y-%m-%dT%H:%M:%S%.f")
                .map_err(|e| format!("bad timestamp `{value}`: {e}"))?;
            Utc.from_utc_datetime(&naive)
        }
    };
    let millis = utc.timestamp_millis();
    if millis < 0 {
        return Err(format!("timestamp `{value}` precedes the epoch"));
    }
    Ok((millis, !utc.timestamp_subsec_nanos().is_multiple_of(1_000_000)))
}

/// Formats epoch milliseconds as an RFC 3339 UTC date with millisecond
/// precision. Values outside chrono's range fall back to the raw number.
pub fn format_timestamp(millis: Millis) -> String {
    DateTime::<Utc>::from_timestamp_millis(millis)
        .map(|dt| dt.to_rfc3339_opts(SecondsFormat::Millis, true))
        .unwrap_or_else(|| millis.to_string())
}

pub(super) fn write(log: &EventLog) -> Vec<u8> {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<log xes.version=\"1.0\">\n");
    attribute(&mut out, 1, "string", "concept:name", &log.log_id);
    for (k, v) in &log.source_meta {
        attribute(&mut out, 1, "string", k, v);
    }
    for trace in &log.traces {
        out.push_str("  <trace>\n");
        attribute(&mut out, 2, "string", "concept:name", &trace.element_id);
        for event in &trace.events {
            out.push_str("    <event>\n");
            attribute(&mut out, 3, "string", "concept:name", &event.name);
            attribute(&mut out, 3, "string", "id", &event.element_id);
            attribute(
                &mut out,
                3,
                "date",
                "time:timestamp",
                &format_timestamp(event.timestamp),
            );
            if let Some(p) = event.position {
                attribute(&mut out, 3, "float", "x", &p.x.to_string());
                attribute(&mut out, 3, "float", "y", &p.y.to_string());
            }
            if let Some(s) = &event.edge_source {
                attribute(&mut out, 3, "string", "source", s);
            }
            if let Some(t) = &event.edge_target {
                attribute(&mut out, 3, "string", "target", t);
            }
            if let Some(l) = &event.label_text {
                attribute(&mut out, 3, "string", "label", l);
            }
            for (k, v) in &event.attributes {
                attribute(&mut out, 3, "string", k, v);
            }
            out.push_str("    </event>\n");
        }
        out.push_str("  </trace>\n");
    }
    out.push_str("</log>\n");
    out.into_bytes()
}

fn attribute(out: &mut String, depth: usize, tag: &str, key: &str, value: &str) {
    let _ = writeln!(
        out,
        "{}<{tag} key=\"{}\" value=\"{}\"/>",
        "  ".repeat(depth),
        escape(key),
        escape(value)
    );
}
