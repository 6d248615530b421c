//! fa2f: run configured experiments, plot their CSV results, and run the
//! acceptance suites.
//!
//! Exit codes: 0 success, 1 internal/criterion failure, 2 validation
//! error, 3 numeric guard.

use std::path::PathBuf;
use std::process::ExitCode;

use fa2f_cli::config::ExperimentConfig;
use fa2f_cli::criteria;
use fa2f_cli::error::HarnessError;
use fa2f_cli::registry;
use fa2f_cli::runner::{run_experiment, OUT_ROOT_ENV};
use fa2f_cli::svg::{render_plot, PlotSpec};
use fa2f_cli::table::MetricTable;

const USAGE: &str = "\
fa2f <command>

commands:
  run <config>                run one experiment configuration
  plot --input <csv> [--input <csv> ...] --x <col> --y <col>
       --output <svg> [--logx] [--logy] [--refline <v>] [--title <s>]
  suite <fast|full> [--filter <id>]
  list                        registered experiments

The output root for `run` is $FA2F_OUT_ROOT (default ./runs).
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match dispatch(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("fa2f: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(args: &[String]) -> Result<ExitCode, HarnessError> {
    let Some(command) = args.first() else {
        eprint!("{USAGE}");
        return Ok(ExitCode::from(2));
    };
    match command.as_str() {
        "run" => cmd_run(&args[1..]),
        "plot" => cmd_plot(&args[1..]),
        "suite" => cmd_suite(&args[1..]),
        "list" => {
            for exp in registry::registry() {
                println!("{:<24} {}", exp.name(), exp.summary());
            }
            Ok(ExitCode::SUCCESS)
        }
        other => Err(HarnessError::Validation(format!(
            "unknown command {other:?}\n{USAGE}"
        ))),
    }
}

fn cmd_run(args: &[String]) -> Result<ExitCode, HarnessError> {
    let [path] = args else {
        return Err(HarnessError::Validation("usage: fa2f run <config>".into()));
    };
    let text = std::fs::read_to_string(path)?;
    let config = ExperimentConfig::parse(&text)?;
    let out_root = std::env::var(OUT_ROOT_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|_| PathBuf::from("runs"));
    let summary = run_experiment(&config, &out_root)?;
    println!(
        "{}: {} rows in {} ms -> {}",
        summary.experiment,
        summary.rows,
        summary.wall_ms,
        summary.dir.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_plot(args: &[String]) -> Result<ExitCode, HarnessError> {
    let mut inputs: Vec<PathBuf> = Vec::new();
    let mut x_col = None;
    let mut y_col = None;
    let mut output = None;
    let mut log_x = false;
    let mut log_y = false;
    let mut refline = None;
    let mut title = None;
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut value = |name: &str| {
            it.next()
                .cloned()
                .ok_or_else(|| HarnessError::Validation(format!("{name} needs a value")))
        };
        match arg.as_str() {
            "--input" => inputs.push(PathBuf::from(value("--input")?)),
            "--x" => x_col = Some(value("--x")?),
            "--y" => y_col = Some(value("--y")?),
            "--output" => output = Some(PathBuf::from(value("--output")?)),
            "--logx" => log_x = true,
            "--logy" => log_y = true,
            "--refline" => {
                refline = Some(value("--refline")?.parse::<f64>().map_err(|_| {
                    HarnessError::Validation("--refline needs a number".into())
                })?)
            }
            "--title" => title = Some(value("--title")?),
            other => {
                return Err(HarnessError::Validation(format!(
                    "unknown plot flag {other:?}"
                )))
            }
        }
    }
    if inputs.is_empty() {
        return Err(HarnessError::Validation("plot needs --input".into()));
    }
    let spec = PlotSpec {
        x_col: x_col.ok_or_else(|| HarnessError::Validation("plot needs --x".into()))?,
        y_col: y_col.ok_or_else(|| HarnessError::Validation("plot needs --y".into()))?,
        log_x,
        log_y,
        title: title.unwrap_or_default(),
        refline,
    };
    let mut series = Vec::new();
    for path in &inputs {
        let table = MetricTable::parse_csv(&std::fs::read_to_string(path)?)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "series".into());
        series.push((name, table));
    }
    let svg = render_plot(&series, &spec)?;
    let out = output.ok_or_else(|| HarnessError::Validation("plot needs --output".into()))?;
    std::fs::write(&out, svg)?;
    println!("wrote {}", out.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_suite(args: &[String]) -> Result<ExitCode, HarnessError> {
    let mode = args
        .first()
        .ok_or_else(|| HarnessError::Validation("usage: fa2f suite <fast|full>".into()))?;
    let fast_only = match mode.as_str() {
        "fast" => true,
        "full" => false,
        other => {
            return Err(HarnessError::Validation(format!(
                "suite mode {other:?} (want fast or full)"
            )))
        }
    };
    let mut filter = None;
    let mut it = args[1..].iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--filter" => {
                filter = Some(
                    it.next()
                        .ok_or_else(|| {
                            HarnessError::Validation("--filter needs a criterion id".into())
                        })?
                        .clone(),
                )
            }
            other => {
                return Err(HarnessError::Validation(format!(
                    "unknown suite flag {other:?}"
                )))
            }
        }
    }
    if let Some(f) = &filter {
        if criteria::find_criterion(f).is_none() {
            return Err(HarnessError::Validation(format!("unknown criterion {f:?}")));
        }
    }
    let outcomes = criteria::run_suite(fast_only, filter.as_deref());
    let mut failed = 0;
    for outcome in &outcomes {
        println!("{}", outcome.line());
        if !outcome.passed {
            failed += 1;
        }
    }
    println!(
        "suite {}: {} of {} criteria passed",
        mode,
        outcomes.len() - failed,
        outcomes.len()
    );
    if failed > 0 {
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
