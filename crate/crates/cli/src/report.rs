//! The machine-readable record every command emits.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use chtube::tolerance;

pub const SCHEMA_VERSION: &str = "1.0.0";

pub const LENGTH: &str = "hyperbolic length (curvature -1 normalization)";
pub const AREA: &str = "hyperbolic area (curvature -1 normalization)";
pub const VOLUME: &str = "hyperbolic 4-volume (curvature -1 normalization)";
pub const ANGLE: &str = "radians";
pub const DIMENSIONLESS: &str = "dimensionless";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub tool_version: String,
    pub command: String,
    pub status: Status,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub provenance: Vec<String>,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub units: BTreeMap<String, String>,
    pub wall_clock_seconds: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Failed,
}

pub fn tolerances() -> BTreeMap<String, f64> {
    [
        ("algebraic", tolerance::ALGEBRAIC),
        ("null", tolerance::NULL),
        ("unit", tolerance::UNIT),
        ("classify", tolerance::CLASSIFY),
        ("geometric", tolerance::GEOMETRIC),
        ("certificate", tolerance::CERTIFICATE),
        ("pivot", tolerance::PIVOT),
        ("reunitarize", tolerance::REUNITARIZE),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            schema_version: SCHEMA_VERSION.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            status: Status::Ok,
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            provenance: Vec::new(),
            seed,
            tolerances: tolerances(),
            units: BTreeMap::new(),
            wall_clock_seconds: 0.0,
        }
    }

    pub fn input(&mut self, key: &str, v: impl Serialize) -> &mut Self {
        self.inputs.insert(key.to_string(), serde_json::to_value(v).expect("serializable input"));
        self
    }

    /// Record an output together with its unit.
    pub fn output(&mut self, key: &str, v: impl Serialize, unit: &str) -> &mut Self {
        self.outputs.insert(key.to_string(), serde_json::to_value(v).expect("serializable output"));
        self.units.insert(key.to_string(), unit.to_string());
        self
    }

    pub fn formula(&mut self, f: &str) -> &mut Self {
        self.provenance.push(f.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Ok
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                flatten(&format!("{prefix}.{k}"), v, out);
            }
        }
        Value::Array(a) => {
            for (i, v) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// Flatten the whole report to `(path, value)` rows.
pub fn rows(r: &Report) -> Vec<(String, String)> {
    let v = serde_json::to_value(r).expect("report serializes");
    let mut out = Vec::new();
    if let Value::Object(m) = v {
        for (k, v) in &m {
            flatten(k, v, &mut out);
        }
    }
    out
}

pub fn write(r: &Report, format: Format, mut w: impl Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, r)?;
            writeln!(w)
        }
        Format::Text => {
            writeln!(w, "{} ({:?})", r.command, r.status)?;
            for (k, v) in &r.inputs {
                writeln!(w, "  input  {k} = {v}")?;
            }
            for (k, v) in &r.outputs {
                let unit = r.units.get(k).map(String::as_str).unwrap_or("");
                writeln!(w, "  output {k} = {v}  [{unit}]")?;
            }
            for f in &r.provenance {
                writeln!(w, "  formula {f}")?;
            }
            writeln!(w, "  seed {}  version {}  wall clock {:.3}s", r.seed, r.tool_version, r.wall_clock_seconds)
        }
        Format::Csv => {
            let mut c = csv::Writer::from_writer(w);
            c.write_record(["field", "value"])?;
            for (k, v) in rows(r) {
                c.write_record([k, v])?;
            }
            c.flush()
        }
    }
}
