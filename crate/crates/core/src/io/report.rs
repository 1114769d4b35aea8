//! Schema-versioned JSON reports. Scalars appear only inside rendered
//! strings, so fractions and parameter expressions stay exact.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::rewrite::Polygraph2;

pub const SCHEMA: &str = "linrew-report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct SystemSummary {
    pub field: String,
    pub param: Option<String>,
    pub objects: Vec<String>,
    pub generators: Vec<String>,
    pub order: Option<String>,
    pub rules: Vec<String>,
    pub homogeneous_degree: Option<u32>,
    pub termination: Option<String>,
    pub convergent: bool,
}

impl SystemSummary {
    pub fn of(p: &Polygraph2) -> SystemSummary {
        SystemSummary {
            field: p.field.to_string(),
            param: p.param.as_ref().map(|c| c.name.clone()),
            objects: p.quiver.objects.clone(),
            generators: p.quiver.generators.iter().map(|g| g.name.clone()).collect(),
            order: p.order.as_ref().map(|o| o.describe(&p.quiver)),
            rules: (0..p.rules().len()).map(|i| p.show_rule(i)).collect(),
            homogeneous_degree: p.homogeneous_degree(),
            termination: p.termination.as_ref().map(|c| c.kind_name().to_string()),
            convergent: p.convergent,
        }
    }
}

/// A report: schema header, command, system summary and named sections.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: u32,
    pub command: String,
    pub system: SystemSummary,
    #[serde(flatten)]
    pub sections: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, p: &Polygraph2) -> Report {
        Report {
            schema: SCHEMA,
            version: SCHEMA_VERSION,
            command: command.to_string(),
            system: SystemSummary::of(p),
            sections: Map::new(),
        }
    }

    /// Add a section; serialization failures become an error string in place.
    pub fn with(mut self, key: &str, v: impl Serialize) -> Report {
        let v = serde_json::to_value(v).unwrap_or_else(|e| Value::String(format!("unserializable: {e}")));
        self.sections.insert(key.to_string(), v);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }
}
