//! JSON configuration ingestion and deterministic CSV/JSON emission.
//!
//! Field naming convention across all documents: dB-valued fields carry a
//! `_db` suffix (dBm: `_dbm`, dBi: `_dbi`), powers carry `_w`, fractions
//! and linear ratios are bare. Unknown fields are rejected with the JSON
//! path of the offender.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cascade::{CascadeSpec, StageSpec};
use crate::datacenter::DataCenterProfile;
use crate::device::{antenna_stage, pa_stage_with_noise, passive_stage};
use crate::error::{Error, Result};
use crate::radio::{CefMode, Direction, RadioProfile};
use crate::scenario::{ProfileOverrides, ScenarioConfig, SweepRow};
use crate::units::db_to_linear;

fn parse_doc<T: DeserializeOwned>(doc: &str) -> Result<T> {
    let mut deserializer = serde_json::Deserializer::from_str(doc);
    serde_path_to_error::deserialize(&mut deserializer).map_err(|e| Error::Config {
        path: e.path().to_string(),
        reason: e.inner().to_string(),
    })
}

fn config_error(path: impl Into<String>, reason: impl ToString) -> Error {
    Error::Config {
        path: path.into(),
        reason: reason.to_string(),
    }
}

// ---- cascade documents ----------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CascadeDoc {
    stages: Vec<Value>,
    #[serde(default)]
    source_power_w: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PassiveStageDoc {
    #[serde(default)]
    name: Option<String>,
    loss_db: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PaStageDoc {
    #[serde(default)]
    name: Option<String>,
    efficiency: f64,
    gain_db: f64,
    #[serde(default)]
    noise_figure_db: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AntennaStageDoc {
    #[serde(default)]
    name: Option<String>,
    efficiency: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStageDoc {
    #[serde(default)]
    name: Option<String>,
    gain_db: f64,
    waste_factor: f64,
    noise_factor: f64,
}

fn stage_from_value(index: usize, value: Value) -> Result<StageSpec> {
    let path = format!("stages[{index}]");
    let Value::Object(mut fields) = value else {
        return Err(config_error(&path, "each stage must be a JSON object"));
    };
    let kind = match fields.remove("kind") {
        Some(Value::String(kind)) => kind,
        Some(_) => return Err(config_error(format!("{path}.kind"), "must be a string")),
        None => {
            return Err(config_error(
                &path,
                "missing `kind`: expected \"passive\", \"pa\", \"antenna\", or \"stage\"",
            ))
        }
    };
    let body = Value::Object(fields);
    let named = |name: Option<String>| name.unwrap_or_else(|| format!("{kind} {}", index + 1));
    let parse = |err: serde_json::Error| config_error(&path, err);
    match kind.as_str() {
        "passive" => {
            let doc: PassiveStageDoc = serde_json::from_value(body).map_err(parse)?;
            passive_stage(named(doc.name), doc.loss_db)
        }
        "pa" => {
            let doc: PaStageDoc = serde_json::from_value(body).map_err(parse)?;
            let noise_factor = db_to_linear(doc.noise_figure_db.unwrap_or(0.0));
            pa_stage_with_noise(
                named(doc.name),
                doc.efficiency,
                db_to_linear(doc.gain_db),
                noise_factor,
            )
        }
        "antenna" => {
            let doc: AntennaStageDoc = serde_json::from_value(body).map_err(parse)?;
            antenna_stage(named(doc.name), doc.efficiency)
        }
        "stage" => {
            let doc: RawStageDoc = serde_json::from_value(body).map_err(parse)?;
            StageSpec::new(
                named(doc.name),
                db_to_linear(doc.gain_db),
                doc.waste_factor,
                doc.noise_factor,
            )
        }
        other => Err(config_error(
            format!("{path}.kind"),
            format!("unknown stage kind `{other}`"),
        )),
    }
}

/// Parse a cascade document:
/// `{"stages": [{"kind": "passive", "loss_db": 3}, ...], "source_power_w": 1.0}`.
pub fn parse_cascade(doc: &str) -> Result<CascadeSpec> {
    let doc: CascadeDoc = parse_doc(doc)?;
    let stages = doc
        .stages
        .into_iter()
        .enumerate()
        .map(|(i, v)| stage_from_value(i, v))
        .collect::<Result<Vec<_>>>()?;
    CascadeSpec::with_source_power(stages, doc.source_power_w.unwrap_or(1.0))
}

// ---- data-center documents -------------------------------------------------

/// A single facility profile, or a pair to compare.
#[derive(Debug, Clone, PartialEq)]
pub enum DatacenterInput {
    Single(DataCenterProfile),
    Pair {
        a: DataCenterProfile,
        b: DataCenterProfile,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DatacenterDoc {
    Pair {
        a: DataCenterProfile,
        b: DataCenterProfile,
    },
    Single(DataCenterProfile),
}

/// Parse either `{"p_info": ..., "p_non_info": ..., "p_aux": ...}` or
/// `{"a": {...}, "b": {...}}`.
pub fn parse_datacenter(doc: &str) -> Result<DatacenterInput> {
    // Try the pair shape first so its field errors surface precisely.
    let value: Value = parse_doc(doc)?;
    let is_pair = value.get("a").is_some() || value.get("b").is_some();
    let parsed: DatacenterDoc = parse_doc(doc).map_err(|e| {
        if is_pair {
            e
        } else {
            config_error(".", "expected p_info/p_non_info/p_aux or an {a, b} pair")
        }
    })?;
    let input = match parsed {
        DatacenterDoc::Pair { a, b } => {
            a.validate()?;
            b.validate()?;
            DatacenterInput::Pair { a, b }
        }
        DatacenterDoc::Single(profile) => {
            profile.validate()?;
            DatacenterInput::Single(profile)
        }
    };
    Ok(input)
}

// ---- link documents ----------------------------------------------------------

fn default_true() -> bool {
    true
}
fn default_band_name() -> String {
    "28ghz".into()
}
fn default_distance() -> f64 {
    100.0
}
fn default_direction_down() -> Direction {
    Direction::Downlink
}
fn default_total() -> CefMode {
    CefMode::Total
}

/// A single-link evaluation request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkRunConfig {
    #[serde(default = "default_band_name")]
    pub band: String,
    #[serde(default)]
    pub overrides: ProfileOverrides,
    #[serde(default = "default_distance")]
    pub distance_m: f64,
    #[serde(default = "default_true")]
    pub los: bool,
    #[serde(default = "default_direction_down")]
    pub direction: Direction,
    #[serde(default = "default_total")]
    pub cef_mode: CefMode,
}

impl Default for LinkRunConfig {
    fn default() -> Self {
        Self {
            band: default_band_name(),
            overrides: ProfileOverrides::default(),
            distance_m: default_distance(),
            los: true,
            direction: Direction::Downlink,
            cef_mode: CefMode::Total,
        }
    }
}

impl LinkRunConfig {
    pub fn resolved_profile(&self) -> Result<RadioProfile> {
        let mut profile = RadioProfile::preset(&self.band)?;
        self.overrides.apply(&mut profile);
        profile.validate()?;
        Ok(profile)
    }
}

pub fn parse_link(doc: &str) -> Result<LinkRunConfig> {
    parse_doc(doc)
}

// ---- scenario documents ------------------------------------------------------

pub fn parse_scenario(doc: &str) -> Result<ScenarioConfig> {
    let config: ScenarioConfig = parse_doc(doc)?;
    config.validate()?;
    Ok(config)
}

// ---- emission ------------------------------------------------------------------

/// Fixed 9-significant-digit scientific notation, locale independent.
pub fn format_sci(x: f64) -> String {
    format!("{x:.8e}")
}

/// RFC 4180 quoting: only fields containing commas, quotes, or line breaks
/// are wrapped, with embedded quotes doubled.
fn csv_field(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub const CSV_HEADER: &str = "param,value,band_ghz,direction,rate_bps,w_total,p_consumed_w,cef_bpj";

/// Render sweep rows as a deterministic CSV byte stream: fixed header,
/// 9-significant-digit scientific numbers, LF line endings, rows in sweep
/// order.
pub fn emit_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let fields = [
            csv_field(row.param),
            format_sci(row.value),
            format_sci(row.band_ghz),
            row.direction.label().to_string(),
            format_sci(row.rate_bps),
            format_sci(row.w_total),
            format_sci(row.p_consumed_w),
            format_sci(row.cef_bpj),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Pretty JSON with a trailing newline; field order is fixed by the type,
/// so equal inputs yield identical bytes.
pub fn emit_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvalidInput(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Everything needed to reproduce a run byte for byte.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub tool_version: String,
    pub seed: u64,
    /// Full resolved configuration echo.
    pub config: Value,
    /// Lowercase hex SHA-256 of the emitted output bytes.
    pub output_sha256: String,
}

pub fn parse_manifest(doc: &str) -> Result<RunManifest> {
    parse_doc(doc)
}
