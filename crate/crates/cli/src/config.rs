//! Plain-text experiment configuration: `key = value` lines, `#` comments,
//! schema-versioned, unknown keys rejected against the selected
//! experiment's parameter list. Runs echo their fully resolved
//! configuration next to the results, and parsing that echo reproduces the
//! run.

use std::collections::BTreeMap;

use crate::error::HarnessError;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub id: String,
    pub seed: u64,
    /// Experiment-specific keys, still unvalidated strings.
    pub params: BTreeMap<String, String>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<ExperimentConfig, HarnessError> {
        let mut map: BTreeMap<String, String> = BTreeMap::new();
        for (line_no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(HarnessError::Validation(format!(
                    "line {}: expected `key = value`, got {raw:?}",
                    line_no + 1
                )));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if map.insert(key.clone(), value).is_some() {
                return Err(HarnessError::Validation(format!(
                    "duplicate key {key:?}"
                )));
            }
        }
        let schema: u64 = map
            .remove("schema")
            .ok_or_else(|| HarnessError::Validation("missing `schema`".into()))?
            .parse()
            .map_err(|_| HarnessError::Validation("bad `schema`".into()))?;
        if schema != SCHEMA_VERSION {
            return Err(HarnessError::Validation(format!(
                "schema {schema} unsupported (this build speaks {SCHEMA_VERSION})"
            )));
        }
        let experiment = map
            .remove("experiment")
            .ok_or_else(|| HarnessError::Validation("missing `experiment`".into()))?;
        let seed: u64 = map
            .remove("seed")
            .ok_or_else(|| HarnessError::Validation("missing `seed`".into()))?
            .parse()
            .map_err(|_| HarnessError::Validation("bad `seed`".into()))?;
        let id = map
            .remove("id")
            .unwrap_or_else(|| experiment.replace('.', "-"));
        if id.is_empty()
            || !id
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
        {
            return Err(HarnessError::Validation(format!(
                "id {id:?} must be nonempty [A-Za-z0-9_-]"
            )));
        }
        Ok(ExperimentConfig {
            experiment,
            id,
            seed,
            params: map,
        })
    }

    /// The canonical echo: parsing it reproduces the configuration.
    pub fn render_resolved(&self, resolved: &BTreeMap<String, String>) -> String {
        let mut out = String::new();
        out.push_str(&format!("schema = {SCHEMA_VERSION}\n"));
        out.push_str(&format!("experiment = {}\n", self.experiment));
        out.push_str(&format!("id = {}\n", self.id));
        out.push_str(&format!("seed = {}\n", self.seed));
        for (k, v) in resolved {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out
    }
}
