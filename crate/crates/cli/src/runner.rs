//! Execute one configured experiment and persist its results: the
//! resolved configuration echo and the metric CSV are byte-identical
//! across reruns of the same (config, seed, build); wall time and build id
//! live in a separate metadata file. Output files are write-once per run
//! id.

use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::config::ExperimentConfig;
use crate::error::HarnessError;
use crate::registry::{find, resolve_params};
use crate::table::MetricTable;

/// Environment variable selecting the output root (default `./runs`).
pub const OUT_ROOT_ENV: &str = "FA2F_OUT_ROOT";

pub fn build_id() -> String {
    format!(
        "fa2f-{}{}",
        env!("CARGO_PKG_VERSION"),
        option_env!("FA2F_BUILD_ID")
            .map(|b| format!("+{b}"))
            .unwrap_or_default()
    )
}

#[derive(Debug)]
pub struct RunSummary {
    pub id: String,
    pub experiment: String,
    pub dir: PathBuf,
    pub rows: usize,
    pub wall_ms: u128,
}

/// Run in memory: the resolved echo plus the metric table.
pub fn run_in_memory(
    config: &ExperimentConfig,
) -> Result<(String, MetricTable), HarnessError> {
    let exp = find(&config.experiment)?;
    let resolved = resolve_params(exp, config)?;
    let echo = config.render_resolved(resolved.values());
    let mut table = MetricTable::new(&[]);
    exp.run(&resolved, &mut table)?;
    Ok((echo, table))
}

/// Run and persist under `<out_root>/<id>/`.
pub fn run_experiment(
    config: &ExperimentConfig,
    out_root: &Path,
) -> Result<RunSummary, HarnessError> {
    // validate fully before touching the filesystem
    let exp = find(&config.experiment)?;
    let resolved = resolve_params(exp, config)?;
    let dir = out_root.join(&config.id);
    for name in ["config.resolved", "results.csv", "meta.txt"] {
        if dir.join(name).exists() {
            return Err(HarnessError::Validation(format!(
                "output {} already exists (runs are write-once per id)",
                dir.join(name).display()
            )));
        }
    }
    let started = Instant::now();
    let mut table = MetricTable::new(&[]);
    exp.run(&resolved, &mut table)?;
    let wall_ms = started.elapsed().as_millis();

    std::fs::create_dir_all(&dir)?;
    std::fs::write(
        dir.join("config.resolved"),
        config.render_resolved(resolved.values()),
    )?;
    std::fs::write(dir.join("results.csv"), table.to_csv())?;
    std::fs::write(
        dir.join("meta.txt"),
        format!(
            "experiment = {}\nid = {}\nbuild = {}\nwall_ms = {}\nrows = {}\n",
            config.experiment,
            config.id,
            build_id(),
            wall_ms,
            table.rows().len(),
        ),
    )?;
    Ok(RunSummary {
        id: config.id.clone(),
        experiment: config.experiment.clone(),
        dir,
        rows: table.rows().len(),
        wall_ms,
    })
}
