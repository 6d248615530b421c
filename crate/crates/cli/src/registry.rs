//! The experiment registry: each operation exposed through the harness
//! implements [`Experiment`] and is selected at runtime by its dotted
//! `module.operation` name from the configuration file.

use std::collections::BTreeMap;

use crate::config::ExperimentConfig;
use crate::error::HarnessError;
use crate::table::MetricTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    U64,
    F64,
    /// Comma-separated u64 list.
    ListU64,
    /// Comma-separated f64 list.
    ListF64,
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    /// `None` marks a required parameter; otherwise the default value.
    pub default: Option<&'static str>,
    pub help: &'static str,
}

/// Validated parameters with typed accessors.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub seed: u64,
    values: BTreeMap<String, String>,
}

impl Resolved {
    pub fn u64(&self, name: &str) -> u64 {
        self.values[name].parse().expect("validated u64")
    }

    pub fn f64(&self, name: &str) -> f64 {
        self.values[name].parse().expect("validated f64")
    }

    pub fn list_u64(&self, name: &str) -> Vec<u64> {
        self.values[name]
            .split(',')
            .map(|v| v.trim().parse().expect("validated u64 list"))
            .collect()
    }

    pub fn list_f64(&self, name: &str) -> Vec<f64> {
        self.values[name]
            .split(',')
            .map(|v| v.trim().parse().expect("validated f64 list"))
            .collect()
    }

    pub fn values(&self) -> &BTreeMap<String, String> {
        &self.values
    }
}

pub trait Experiment: Sync {
    /// Dotted registry name, `module.operation`.
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn params(&self) -> &'static [ParamSpec];
    fn run(&self, params: &Resolved, out: &mut MetricTable) -> Result<(), HarnessError>;
}

/// Validate a parsed configuration against an experiment's parameter list:
/// unknown keys are rejected, defaults filled, values type-checked.
pub fn resolve_params(
    exp: &dyn Experiment,
    config: &ExperimentConfig,
) -> Result<Resolved, HarnessError> {
    let specs = exp.params();
    for key in config.params.keys() {
        if !specs.iter().any(|s| s.name == key) {
            return Err(HarnessError::Validation(format!(
                "unknown key {key:?} for experiment {}",
                exp.name()
            )));
        }
    }
    let mut values = BTreeMap::new();
    for spec in specs {
        let raw = match config.params.get(spec.name) {
            Some(v) => v.clone(),
            None => match spec.default {
                Some(d) => d.to_string(),
                None => {
                    return Err(HarnessError::Validation(format!(
                        "missing required key {:?} for experiment {}",
                        spec.name,
                        exp.name()
                    )))
                }
            },
        };
        let ok = match spec.kind {
            ParamKind::U64 => raw.parse::<u64>().is_ok(),
            ParamKind::F64 => raw.parse::<f64>().is_ok(),
            ParamKind::ListU64 => {
                !raw.is_empty() && raw.split(',').all(|v| v.trim().parse::<u64>().is_ok())
            }
            ParamKind::ListF64 => {
                !raw.is_empty() && raw.split(',').all(|v| v.trim().parse::<f64>().is_ok())
            }
        };
        if !ok {
            return Err(HarnessError::Validation(format!(
                "key {:?}: {raw:?} is not a valid {:?}",
                spec.name, spec.kind
            )));
        }
        values.insert(spec.name.to_string(), raw);
    }
    Ok(Resolved {
        seed: config.seed,
        values,
    })
}

/// All registered experiments.
pub fn registry() -> &'static [&'static dyn Experiment] {
    crate::experiments::ALL
}

pub fn find(name: &str) -> Result<&'static dyn Experiment, HarnessError> {
    registry()
        .iter()
        .copied()
        .find(|e| e.name() == name)
        .ok_or_else(|| {
            let known: Vec<&str> = registry().iter().map(|e| e.name()).collect();
            HarnessError::Validation(format!(
                "unknown experiment {name:?}; registered: {}",
                known.join(", ")
            ))
        })
}
