//! Reading model, density and form files.

use crate::CliError;
use dhlc_core::json;
use dhlc_core::polytope::VRep;
use dhlc_core::pushforward::{PushforwardError, ToricModel};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use std::path::Path;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    json::from_str(text).map_err(|source| CliError::Schema { path: path.to_path_buf(), source })
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    parse(path, &read_text(path)?)
}

/// Top-level keys of a JSON object, or a syntax error with its position.
pub fn keys(path: &Path, text: &str) -> Result<Vec<String>, CliError> {
    let value: serde_json::Value = parse(path, text)?;
    Ok(value.as_object().map(|o| o.keys().cloned().collect()).unwrap_or_default())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    polytope: VRep,
    #[serde(default)]
    projection: Option<Vec<Vec<i64>>>,
}

/// `"1,1"` is one row; rows are separated by `;`.
pub fn parse_projection(s: &str) -> Result<Vec<Vec<i64>>, CliError> {
    s.split(';')
        .map(|row| {
            row.split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|e| CliError::Invalid(format!("projection entry {c:?}: {e}"))))
                .collect()
        })
        .collect()
}

/// A model file holds `{"polytope", "projection"}` or a bare polytope; a
/// projection given on the command line takes precedence.
pub fn load_model_text(path: &Path, text: &str, projection: Option<&str>) -> Result<ToricModel, CliError> {
    let (polytope, from_file) = if keys(path, text)?.iter().any(|k| k == "polytope") {
        let m: ModelFile = parse(path, text)?;
        (m.polytope, m.projection)
    } else {
        (parse::<VRep>(path, text)?, None)
    };
    let rows = match projection {
        Some(s) => parse_projection(s)?,
        None => from_file.ok_or_else(|| {
            CliError::Invalid(format!("{}: no projection in the file; pass --projection", path.display()))
        })?,
    };
    ToricModel::new(polytope, rows).map_err(pushforward_error)
}

pub fn load_model(path: &Path, projection: Option<&str>) -> Result<ToricModel, CliError> {
    load_model_text(path, &read_text(path)?, projection)
}

pub fn pushforward_error(e: PushforwardError) -> CliError {
    match e {
        PushforwardError::NonGeneric { .. } => CliError::NonGeneric(e.to_string()),
        other => CliError::invalid(other),
    }
}

pub fn parse_rational_arg(what: &str, s: &str) -> Result<dhlc_core::exact::Rational, CliError> {
    dhlc_core::exact::parse_rational(s).map_err(|e| CliError::Invalid(format!("{what}: {e}")))
}
