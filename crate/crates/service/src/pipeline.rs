//! The one path from a log and its options to chart output. The CLI and
//! every HTTP endpoint go through here, so equal inputs give equal bytes.

use ppmchart::chart::{build_chart, ChartConfig, ChartModel, ConfigError};
use ppmchart::eventlog::EventLog;
use ppmchart::render::{hit_test, render_svg, DotHit, PixelRect, RenderOptions};
use ppmchart::replay::replay;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum ResponseKind {
    #[default]
    Svg,
    ModelJson,
}

/// Body of `POST /api/logs/{id}/chart`. Every field may be omitted.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize, JsonSchema)]
#[serde(default, deny_unknown_fields)]
pub struct ChartRequest {
    pub config: ChartConfig,
    pub render: RenderOptions,
    pub response_kind: ResponseKind,
}

/// Body of `POST /api/logs/{id}/hit-test`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct HitTestRequest {
    #[serde(default)]
    pub config: ChartConfig,
    #[serde(default)]
    pub render: RenderOptions,
    pub rect: PixelRect,
}

/// Builds the chart model. A log that cannot be replayed charts without a
/// model graph; the graph-based sorts then fall back with a notice.
pub fn chart(log: &EventLog, config: &ChartConfig) -> Result<ChartModel, ConfigError> {
    config.validate()?;
    let graph = replay(log).ok().map(|r| r.graph);
    Ok(build_chart(log, graph.as_ref(), config))
}

pub fn svg(log: &EventLog, config: &ChartConfig, options: &RenderOptions) -> Result<String, ConfigError> {
    options.validate()?;
    render_svg(&chart(log, config)?, options)
}

pub fn hits(log: &EventLog, request: &HitTestRequest) -> Result<Vec<DotHit>, ConfigError> {
    request.render.validate()?;
    Ok(hit_test(&chart(log, &request.config)?, &request.render, request.rect))
}
