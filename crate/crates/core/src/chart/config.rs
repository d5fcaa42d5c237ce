use std::collections::{BTreeMap, BTreeSet};

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::taxonomy::{DotStyle, ElementKind, OperationKind};

/// One hour.
pub const DEFAULT_WINDOW_MS: i64 = 3_600_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum TimeOption {
    /// Dots at their real execution time.
    #[default]
    Actual,
    /// Each line shifted so its first dot sits at the window start.
    RelativeTime,
    /// Each line stretched so its first and last dots span the window.
    RelativeRatio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum TimeInterval {
    L1,
    L10,
    L100,
    L500,
    Seconds,
    Minutes,
    HalfHours,
    #[default]
    Hours,
    Days,
    Weeks,
    Months,
    Years,
}

impl TimeInterval {
    pub const ALL: [TimeInterval; 12] = [
        TimeInterval::L1,
        TimeInterval::L10,
        TimeInterval::L100,
        TimeInterval::L500,
        TimeInterval::Seconds,
        TimeInterval::Minutes,
        TimeInterval::HalfHours,
        TimeInterval::Hours,
        TimeInterval::Days,
        TimeInterval::Weeks,
        TimeInterval::Months,
        TimeInterval::Years,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum ColorBy {
    None,
    #[default]
    Operation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeBy {
    None,
    #[default]
    ModelElement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum SortBy {
    /// Trace order of the log.
    None,
    /// Lexicographic by element id.
    ModelElement,
    NumberOfOperations,
    /// Time between first and last operation of the line.
    Duration,
    #[default]
    DistanceFromStart,
    CreateOrderFromStart,
    FirstOperation,
    LastOperation,
}

impl SortBy {
    pub const ALL: [SortBy; 8] = [
        SortBy::None,
        SortBy::ModelElement,
        SortBy::NumberOfOperations,
        SortBy::Duration,
        SortBy::DistanceFromStart,
        SortBy::CreateOrderFromStart,
        SortBy::FirstOperation,
        SortBy::LastOperation,
    ];

    pub fn needs_graph(self) -> bool {
        matches!(self, SortBy::DistanceFromStart | SortBy::CreateOrderFromStart)
    }
}

/// Text form of the option enums: the same kebab-case names the JSON
/// config uses.
macro_rules! kebab_names {
    ($($ty:ty),*) => {$(
        impl std::fmt::Display for $ty {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                match serde_json::to_value(self) {
                    Ok(serde_json::Value::String(name)) => f.write_str(&name),
                    _ => Err(std::fmt::Error),
                }
            }
        }

        impl std::str::FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|e| e.to_string())
            }
        }
    )*};
}

kebab_names!(TimeOption, TimeInterval, ColorBy, ShapeBy, SortBy);

/// Dot suppression. Suppressed dots are hidden; timelines always stay.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize, JsonSchema)]
#[serde(default, deny_unknown_fields)]
pub struct FilterSpec {
    /// Hide every dot on elements of these kinds.
    pub hide_element_kinds: BTreeSet<ElementKind>,
    /// Hide every dot of these operations.
    pub hide_operation_kinds: BTreeSet<OperationKind>,
    /// Hide every dot of any timeline containing one of these operations.
    pub hide_elements_with_operation: BTreeSet<OperationKind>,
}

impl FilterSpec {
    pub fn is_empty(&self) -> bool {
        self.hide_element_kinds.is_empty()
            && self.hide_operation_kinds.is_empty()
            && self.hide_elements_with_operation.is_empty()
    }
}

/// The full set of chart options. JSON field names are snake_case, enum
/// values kebab-case; every field is optional and defaults as below.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(default, deny_unknown_fields)]
pub struct ChartConfig {
    pub time_option: TimeOption,
    pub time_interval: TimeInterval,
    pub color_by: ColorBy,
    pub shape_by: ShapeBy,
    pub sort_by: SortBy,
    pub descending: bool,
    /// Width of the chart window in milliseconds.
    pub window_ms: i64,
    pub filters: FilterSpec,
    /// Per-operation replacement of the default coding.
    pub style_overrides: BTreeMap<OperationKind, DotStyle>,
}

impl Default for ChartConfig {
    fn default() -> Self {
        ChartConfig {
            time_option: TimeOption::default(),
            time_interval: TimeInterval::default(),
            color_by: ColorBy::default(),
            shape_by: ShapeBy::default(),
            sort_by: SortBy::default(),
            descending: false,
            window_ms: DEFAULT_WINDOW_MS,
            filters: FilterSpec::default(),
            style_overrides: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("invalid `{field}`: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ChartConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.window_ms <= 0 {
            return Err(ConfigError {
                field: "window_ms".into(),
                message: format!("must be positive, got {}", self.window_ms),
            });
        }
        Ok(())
    }

    /// Parses and validates a JSON config. Errors name the offending field.
    pub fn from_json(text: &str) -> Result<ChartConfig, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: ChartConfig = serde_path_to_error::deserialize(de).map_err(|e| ConfigError {
            field: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}
