//! Flat CSV layout: one row per event.
//!
//! Required header columns: `element_id,name,timestamp_ms,x,y,source,target`.
//! An optional `label` column carries label text; any further column is kept
//! as a free-form event attribute. Empty cells mean "absent".

use std::collections::{BTreeMap, BTreeSet};

use super::{EventLog, LogError, LogEvent, ParseWarning, Point};

const REQUIRED: [&str; 7] = ["element_id", "name", "timestamp_ms", "x", "y", "source", "target"];

pub(super) fn read(raw: &[u8], _warnings: &mut Vec<ParseWarning>) -> Result<EventLog, LogError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::None)
        .from_reader(raw);

    let csv_error = |e: csv::Error| {
        let (line, message) = match e.position() {
            Some(pos) => (pos.line() as usize, e.to_string()),
            None => (1, e.to_string()),
        };
        LogError::Parse {
            line,
            column: 1,
            message,
        }
    };

    let headers = reader.headers().map_err(csv_error)?.clone();
    if headers.is_empty() && raw.iter().all(u8::is_ascii_whitespace) {
        return Ok(EventLog::default());
    }
    let column = |name: &str| headers.iter().position(|h| h == name);
    let mut index = [0usize; 7];
    for (slot, name) in index.iter_mut().zip(REQUIRED) {
        *slot = column(name).ok_or_else(|| LogError::Parse {
            line: 1,
            column: 1,
            message: format!("missing CSV column `{name}`"),
        })?;
    }
    let label_column = column("label");
    let extra_columns: Vec<(usize, String)> = headers
        .iter()
        .enumerate()
        .filter(|(_, h)| !REQUIRED.contains(h) && *h != "label")
        .map(|(i, h)| (i, h.to_string()))
        .collect();

    let mut events = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        let cell = |i: usize| record.get(i).filter(|v| !v.is_empty());
        let element_id = cell(index[0]).ok_or_else(|| LogError::Parse {
            line,
            column: index[0] + 1,
            message: "empty element_id".into(),
        })?;
        let schema = |message: String| LogError::Schema {
            trace: element_id.to_string(),
            message: format!("line {line}: {message}"),
        };
        let name = cell(index[1]).ok_or_else(|| schema("event missing name".into()))?;
        let timestamp = cell(index[2])
            .ok_or_else(|| schema("event missing timestamp".into()))?
            .parse::<i64>()
            .map_err(|e| schema(format!("bad timestamp_ms: {e}")))?;
        let coord = |i: usize| -> Result<Option<f64>, LogError> {
            cell(i)
                .map(|v| {
                    v.parse::<f64>()
                        .ok()
                        .filter(|f| f.is_finite())
                        .ok_or_else(|| schema(format!("bad coordinate `{v}`")))
                })
                .transpose()
        };
        let position = match (coord(index[3])?, coord(index[4])?) {
            (Some(x), Some(y)) => Some(Point { x, y }),
            (None, None) => None,
            _ => return Err(schema("position needs both x and y".into())),
        };
        let mut event = LogEvent::new(name, element_id, timestamp);
        event.position = position;
        event.edge_source = cell(index[5]).map(str::to_string);
        event.edge_target = cell(index[6]).map(str::to_string);
        event.label_text = label_column.and_then(cell).map(str::to_string);
        for (i, key) in &extra_columns {
            if let Some(v) = cell(*i) {
                event.attributes.insert(key.clone(), v.to_string());
            }
        }
        events.push(event);
    }

    Ok(EventLog::grouped("", events))
}

pub(super) fn write(log: &EventLog) -> Result<Vec<u8>, LogError> {
    let events = log.traces.iter().flat_map(|t| &t.events);
    let with_label = events.clone().any(|e| e.label_text.is_some());
    let extra: BTreeSet<&str> = events
        .clone()
        .flat_map(|e| e.attributes.keys().map(String::as_str))
        .collect();

    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = REQUIRED.to_vec();
    if with_label {
        header.push("label");
    }
    header.extend(extra.iter().copied());
    let err = |e: csv::Error| LogError::Write(e.to_string());
    writer.write_record(&header).map_err(err)?;

    for event in events {
        let (x, y) = match event.position {
            Some(p) => (p.x.to_string(), p.y.to_string()),
            None => (String::new(), String::new()),
        };
        let mut row = vec![
            event.element_id.clone(),
            event.name.clone(),
            event.timestamp.to_string(),
            x,
            y,
            event.edge_source.clone().unwrap_or_default(),
            event.edge_target.clone().unwrap_or_default(),
        ];
        if with_label {
            row.push(event.label_text.clone().unwrap_or_default());
        }
        let attributes: &BTreeMap<String, String> = &event.attributes;
        row.extend(extra.iter().map(|k| attributes.get(*k).cloned().unwrap_or_default()));
        writer.write_record(&row).map_err(err)?;
    }
    writer.into_inner().map_err(|e| LogError::Write(e.to_string()))
}
