//! The fixed operation vocabulary of a modeling session and its default
//! visual coding.
//!
//! Every recorded canvas action is one of 26 operation names. Each name
//! determines the kind of model element it acts on and an operation
//! category; the category picks the color family and the element kind picks
//! the shade and the glyph shape. Start and end events share one coding, as
//! do XOR and AND gateways.

use std::fmt;
use std::str::FromStr;

use schemars::JsonSchema;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown operation name `{0}`")]
pub struct ClassifyError(pub String);

macro_rules! operations {
    ($($variant:ident => $name:literal, $element:ident, $category:ident;)*) => {
        /// One recorded modeling operation.
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum OperationKind {
            $($variant,)*
            /// A name outside the fixed vocabulary, kept verbatim.
            Unknown(String),
        }

        impl OperationKind {
            /// All known operations, in vocabulary order.
            pub const ALL: [OperationKind; 26] = [$(OperationKind::$variant,)*];

            pub fn name(&self) -> &str {
                match self {
                    $(OperationKind::$variant => $name,)*
                    OperationKind::Unknown(name) => name,
                }
            }

            /// Parses a name, mapping anything unrecognized to `Unknown`.
            pub fn from_name(name: &str) -> OperationKind {
                match name {
                    $($name => OperationKind::$variant,)*
                    other => OperationKind::Unknown(other.to_string()),
                }
            }

            fn table_entry(&self) -> Option<(ElementKind, OperationCategory)> {
                match self {
                    $(OperationKind::$variant => Some((ElementKind::$element, OperationCategory::$category)),)*
                    OperationKind::Unknown(_) => None,
                }
            }
        }
    };
}

operations! {
    CreateStartEvent => "CREATE_START_EVENT", StartEvent, Create;
    CreateEndEvent => "CREATE_END_EVENT", EndEvent, Create;
    CreateActivity => "CREATE_ACTIVITY", Activity, Create;
    CreateXor => "CREATE_XOR", XorGateway, Create;
    CreateAnd => "CREATE_AND", AndGateway, Create;
    CreateEdge => "CREATE_EDGE", Edge, Create;
    MoveStartEvent => "MOVE_START_EVENT", StartEvent, Move;
    MoveEndEvent => "MOVE_END_EVENT", EndEvent, Move;
    MoveActivity => "MOVE_ACTIVITY", Activity, Move;
    MoveXor => "MOVE_XOR", XorGateway, Move;
    MoveAnd => "MOVE_AND", AndGateway, Move;
    MoveEdgeLabel => "MOVE_EDGE_LABEL", Edge, Move;
    ReconnectEdge => "RECONNECT_EDGE", Edge, Reconnect;
    DeleteStartEvent => "DELETE_START_EVENT", StartEvent, Delete;
    DeleteEndEvent => "DELETE_END_EVENT", EndEvent, Delete;
    DeleteActivity => "DELETE_ACTIVITY", Activity, Delete;
    DeleteXor => "DELETE_XOR", XorGateway, Delete;
    DeleteAnd => "DELETE_AND", AndGateway, Delete;
    DeleteEdge => "DELETE_EDGE", Edge, Delete;
    NameActivity => "NAME_ACTIVITY", Activity, Rename;
    RenameActivity => "RENAME_ACTIVITY", Activity, Rename;
    NameEdge => "NAME_EDGE", Edge, Rename;
    RenameEdge => "RENAME_EDGE", Edge, Rename;
    CreateEdgeBendpoint => "CREATE_EDGE_BENDPOINT", Edge, BendPoint;
    MoveEdgeBendpoint => "MOVE_EDGE_BENDPOINT", Edge, BendPoint;
    DeleteEdgeBendpoint => "DELETE_EDGE_BENDPOINT", Edge, BendPoint;
}

impl OperationKind {
    pub fn is_known(&self) -> bool {
        !matches!(self, OperationKind::Unknown(_))
    }

    pub fn element_kind(&self) -> Option<ElementKind> {
        self.table_entry().map(|(element, _)| element)
    }

    pub fn category(&self) -> Option<OperationCategory> {
        self.table_entry().map(|(_, category)| category)
    }
}

impl fmt::Display for OperationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperationKind {
    type Err = ClassifyError;

    /// Strict parse: unknown names are an error.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match OperationKind::from_name(s) {
            OperationKind::Unknown(name) => Err(ClassifyError(name)),
            kind => Ok(kind),
        }
    }
}

impl Serialize for OperationKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for OperationKind {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let name = String::deserialize(deserializer)?;
        name.parse().map_err(serde::de::Error::custom)
    }
}

impl JsonSchema for OperationKind {
    fn schema_name() -> String {
        "OperationKind".to_string()
    }

    fn json_schema(_: &mut schemars::gen::SchemaGenerator) -> schemars::schema::Schema {
        schemars::schema::SchemaObject {
            instance_type: Some(schemars::schema::InstanceType::String.into()),
            enum_values: Some(OperationKind::ALL.iter().map(|k| k.name().into()).collect()),
            ..Default::default()
        }
        .into()
    }
}

/// The type of model element an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum ElementKind {
    StartEvent,
    EndEvent,
    Activity,
    XorGateway,
    AndGateway,
    Edge,
}

impl ElementKind {
    pub const ALL: [ElementKind; 6] = [
        ElementKind::StartEvent,
        ElementKind::EndEvent,
        ElementKind::Activity,
        ElementKind::XorGateway,
        ElementKind::AndGateway,
        ElementKind::Edge,
    ];

    pub fn is_edge(self) -> bool {
        self == ElementKind::Edge
    }

    pub fn is_gateway(self) -> bool {
        matches!(self, ElementKind::XorGateway | ElementKind::AndGateway)
    }

    pub fn is_event(self) -> bool {
        matches!(self, ElementKind::StartEvent | ElementKind::EndEvent)
    }

    /// Kebab-case name, as used in JSON and CLI flags.
    pub fn as_str(self) -> &'static str {
        match self {
            ElementKind::StartEvent => "start-event",
            ElementKind::EndEvent => "end-event",
            ElementKind::Activity => "activity",
            ElementKind::XorGateway => "xor-gateway",
            ElementKind::AndGateway => "and-gateway",
            ElementKind::Edge => "edge",
        }
    }

    /// Default glyph for this element kind.
    pub fn default_shape(self) -> Shape {
        match self {
            ElementKind::StartEvent | ElementKind::EndEvent => Shape::Circle,
            ElementKind::Activity => Shape::Square,
            ElementKind::XorGateway | ElementKind::AndGateway => Shape::Diamond,
            ElementKind::Edge => Shape::Triangle,
        }
    }

    fn shade(self) -> Shade {
        match self {
            ElementKind::StartEvent | ElementKind::EndEvent => Shade::VeryLight,
            ElementKind::Activity => Shade::Bright,
            ElementKind::XorGateway | ElementKind::AndGateway => Shade::Dark,
            ElementKind::Edge => Shade::Light,
        }
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ElementKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ElementKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown element kind `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum OperationCategory {
    Create,
    Move,
    Delete,
    Rename,
    Reconnect,
    BendPoint,
}

impl OperationCategory {
    pub const ALL: [OperationCategory; 6] = [
        OperationCategory::Create,
        OperationCategory::Move,
        OperationCategory::Delete,
        OperationCategory::Rename,
        OperationCategory::Reconnect,
        OperationCategory::BendPoint,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OperationCategory::Create => "create",
            OperationCategory::Move => "move",
            OperationCategory::Delete => "delete",
            OperationCategory::Rename => "rename",
            OperationCategory::Reconnect => "reconnect",
            OperationCategory::BendPoint => "bend-point",
        }
    }

    /// Known operations belonging to this category.
    pub fn operations(self) -> impl Iterator<Item = OperationKind> {
        OperationKind::ALL
            .into_iter()
            .filter(move |k| k.category() == Some(self))
    }
}

impl FromStr for OperationCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OperationCategory::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown operation category `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Square,
    Circle,
    Diamond,
    Triangle,
}

impl Shape {
    pub fn as_str(self) -> &'static str {
        match self {
            Shape::Square => "square",
            Shape::Circle => "circle",
            Shape::Diamond => "diamond",
            Shape::Triangle => "triangle",
        }
    }
}

/// An sRGB color, serialized as `#rrggbb`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    pub fn hex(self) -> String {
        format!("#{:02x}{:02x}{:02x}", self.0, self.1, self.2)
    }

    /// HSL lightness in percent.
    pub fn lightness(self) -> f64 {
        let max = self.0.max(self.1).max(self.2) as f64;
        let min = self.0.min(self.1).min(self.2) as f64;
        (max + min) / 510.0 * 100.0
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.hex())
    }
}

impl FromStr for Rgb {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let hex = s.strip_prefix('#').unwrap_or(s);
        if hex.len() != 6 || !hex.is_ascii() {
            return Err(format!("expected #rrggbb color, got `{s}`"));
        }
        let channel = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).map_err(|_| format!("bad color `{s}`"));
        Ok(Rgb(channel(0)?, channel(2)?, channel(4)?))
    }
}

impl Serialize for Rgb {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.hex())
    }
}

impl<'de> Deserialize<'de> for Rgb {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl JsonSchema for Rgb {
    fn schema_name() -> String {
        "Rgb".to_string()
    }

    fn json_schema(_: &mut schemars::gen::SchemaGenerator) -> schemars::schema::Schema {
        schemars::schema::SchemaObject {
            instance_type: Some(schemars::schema::InstanceType::String.into()),
            string: Some(Box::new(schemars::schema::StringValidation {
                pattern: Some("^#[0-9a-fA-F]{6}$".to_string()),
                ..Default::default()
            })),
            ..Default::default()
        }
        .into()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
pub struct DotStyle {
    pub color: Rgb,
    pub shape: Shape,
}

/// Default palette. Shade families sit at HSL lightness 18/44/70/96 %, so
/// neighbouring shades differ by at least 25 points.
pub mod palette {
    use super::Rgb;

    pub const GREEN_DARK: Rgb = Rgb(11, 80, 11);
    pub const GREEN_BRIGHT: Rgb = Rgb(28, 196, 28);
    pub const GREEN_LIGHT: Rgb = Rgb(121, 236, 121);
    pub const GREEN_VERY_LIGHT: Rgb = Rgb(237, 252, 237);

    pub const BLUE_DARK: Rgb = Rgb(11, 40, 80);
    pub const BLUE_BRIGHT: Rgb = Rgb(28, 98, 196);
    pub const BLUE_LIGHT: Rgb = Rgb(121, 169, 236);
    pub const BLUE_VERY_LIGHT: Rgb = Rgb(237, 244, 252);

    pub const RED_DARK: Rgb = Rgb(80, 11, 11);
    pub const RED_BRIGHT: Rgb = Rgb(196, 28, 28);
    pub const RED_LIGHT: Rgb = Rgb(236, 121, 121);
    pub const RED_VERY_LIGHT: Rgb = Rgb(252, 237, 237);

    pub const ORANGE: Rgb = Rgb(255, 140, 0);
    pub const LIGHT_PURPLE: Rgb = Rgb(200, 162, 220);
    pub const GREY: Rgb = Rgb(160, 160, 160);
    pub const DARK_GREY: Rgb = Rgb(96, 96, 96);

    /// Uniform dot color when color coding is switched off.
    pub const MID_GREY: Rgb = Rgb(128, 128, 128);
}

#[derive(Debug, Clone, Copy)]
enum Shade {
    Dark,
    Bright,
    Light,
    VeryLight,
}

fn family_color(category: OperationCategory, shade: Shade) -> Option<Rgb> {
    use palette::*;
    let [dark, bright, light, very_light] = match category {
        OperationCategory::Create => [GREEN_DARK, GREEN_BRIGHT, GREEN_LIGHT, GREEN_VERY_LIGHT],
        OperationCategory::Move => [BLUE_DARK, BLUE_BRIGHT, BLUE_LIGHT, BLUE_VERY_LIGHT],
        OperationCategory::Delete => [RED_DARK, RED_BRIGHT, RED_LIGHT, RED_VERY_LIGHT],
        _ => return None,
    };
    Some(match shade {
        Shade::Dark => dark,
        Shade::Bright => bright,
        Shade::Light => light,
        Shade::VeryLight => very_light,
    })
}

/// Looks up the element kind and category of an operation name.
pub fn classify(name: &str) -> Result<(OperationKind, ElementKind, OperationCategory), ClassifyError> {
    let kind: OperationKind = name.parse()?;
    let (element, category) = kind.table_entry().expect("known operations always have a table entry");
    Ok((kind, element, category))
}

/// The default dot coding of an operation.
pub fn default_style(kind: &OperationKind) -> Result<DotStyle, ClassifyError> {
    let (element, category) = kind
        .table_entry()
        .ok_or_else(|| ClassifyError(kind.name().to_string()))?;
    let shape = element.default_shape();
    let color = match kind {
        OperationKind::MoveEdgeLabel => palette::GREY,
        _ => match category {
            OperationCategory::Rename => palette::ORANGE,
            OperationCategory::Reconnect => palette::LIGHT_PURPLE,
            OperationCategory::BendPoint => palette::DARK_GREY,
            _ => family_color(category, element.shade()).expect("color family"),
        },
    };
    Ok(DotStyle { color, shape })
}

/// One row of the exported legend table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
pub struct LegendRow {
    pub name: OperationKind,
    pub element: ElementKind,
    pub category: OperationCategory,
    pub shape: Shape,
    pub color: Rgb,
}

/// The full default coding, one row per known operation.
pub fn legend_table() -> Vec<LegendRow> {
    OperationKind::ALL
        .iter()
        .map(|kind| {
            let (element, category) = kind.table_entry().expect("known");
            let style = default_style(kind).expect("known");
            LegendRow {
                name: kind.clone(),
                element,
                category,
                shape: style.shape,
                color: style.color,
            }
        })
        .collect()
}
