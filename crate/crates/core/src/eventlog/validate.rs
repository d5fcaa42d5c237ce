use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use super::EventLog;
use crate::taxonomy::{OperationCategory, OperationKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum Severity {
    Warn,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct ValidationFinding {
    pub severity: Severity,
    pub code: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element_id: Option<String>,
    pub message: String,
}

impl ValidationFinding {
    fn warn(code: &str, element_id: &str, message: String) -> Self {
        ValidationFinding {
            severity: Severity::Warn,
            code: code.to_string(),
            element_id: Some(element_id.to_string()),
            message,
        }
    }
}

/// Content checks on a parsed log. Findings are data; nothing here fails.
///
/// - `first-op-not-create`: a trace does not start with a creation.
/// - `op-after-delete`: a trace continues after its element was deleted.
/// - `edge-endpoints-missing`: an edge creation lacks source or target,
///   which leaves the edge dangling in the replayed model.
/// - `unknown-operation`: an event name outside the vocabulary.
pub fn validate_log(log: &EventLog) -> Vec<ValidationFinding> {
    let mut findings = Vec::new();
    for trace in &log.traces {
        let id = trace.element_id.as_str();
        let ops: Vec<OperationKind> = trace.events.iter().map(|e| e.operation()).collect();

        for op in ops.iter().filter(|op| !op.is_known()) {
            findings.push(ValidationFinding::warn(
                "unknown-operation",
                id,
                format!("operation `{op}` is not part of the vocabulary"),
            ));
        }

        if let Some(first) = ops.first() {
            if first.category() != Some(OperationCategory::Create) {
                findings.push(ValidationFinding::warn(
                    "first-op-not-create",
                    id,
                    format!("first operation is {first}, expected a creation"),
                ));
            }
        }

        if let Some(at) = ops
            .iter()
            .position(|op| op.category() == Some(OperationCategory::Delete))
        {
            let after = ops.len() - at - 1;
            if after > 0 {
                findings.push(ValidationFinding::warn(
                    "op-after-delete",
                    id,
                    format!("{after} operation(s) recorded after {}", ops[at]),
                ));
            }
        }

        for event in &trace.events {
            if event.operation() == OperationKind::CreateEdge
                && (event.edge_source.is_none() || event.edge_target.is_none())
            {
                findings.push(ValidationFinding::warn(
                    "edge-endpoints-missing",
                    id,
                    "CREATE_EDGE without source/target; graph-based sorts treat the edge as dangling".into(),
                ));
            }
        }
    }
    findings
}
