//! File formats and the `normgrid` command line on top of `normgrid-core`.
//!
//! Exit codes: 0 success, 2 ran fine but a certified constant is below the
//! requested threshold, 1 usage, IO or numerical error.

use std::ffi::OsString;
use std::io::Write;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::Parser;
use normgrid_core::Tolerances;
use serde_json::{json, Value};

pub mod cli;
mod cmd;
pub mod format;
pub mod space;

use cli::{Cli, GlobalArgs, OutputFormat};
use format::{csv_from_points_value, num, to_json_string, tolerances_json};

/// One emitted file.
pub struct Artifact {
    /// File name written under `--out`, e.g. `certificate.json`.
    pub name: String,
    pub value: Value,
    /// Reports get the resolved run configuration embedded.
    pub report: bool,
}

pub struct Outcome {
    pub artifacts: Vec<Artifact>,
    pub below_threshold: bool,
}

impl Outcome {
    pub fn new() -> Self {
        Outcome {
            artifacts: Vec::new(),
            below_threshold: false,
        }
    }

    pub fn report(mut self, name: &str, value: Value) -> Self {
        self.artifacts.push(Artifact {
            name: name.into(),
            value,
            report: true,
        });
        self
    }

    pub fn data(mut self, name: &str, value: Value) -> Self {
        self.artifacts.push(Artifact {
            name: name.into(),
            value,
            report: false,
        });
        self
    }

    pub fn below(mut self, flag: bool) -> Self {
        self.below_threshold |= flag;
        self
    }
}

impl Default for Outcome {
    fn default() -> Self {
        Self::new()
    }
}

/// Tolerances with `--tol` as the exactness threshold.
pub fn resolved_tolerances(g: &GlobalArgs) -> Tolerances {
    Tolerances {
        exact: g.tol,
        ..Tolerances::default()
    }
}

/// Everything that determines the output. The thread count and output path
/// are left out on purpose: they never change the results.
fn config_json(g: &GlobalArgs, command: &str) -> Value {
    json!({
        "command": command,
        "seed": g.seed,
        "tol": num(g.tol),
        "oversample": g.oversample,
        "format": g.format.name(),
        "tolerances": tolerances_json(&resolved_tolerances(g)),
    })
}

fn render(a: &Artifact, format: OutputFormat) -> (String, String) {
    if format == OutputFormat::Csv && !a.report {
        if let Some(csv) = csv_from_points_value(&a.value) {
            return (a.name.replace(".json", ".csv"), csv);
        }
    }
    (a.name.clone(), to_json_string(&a.value))
}

fn emit(g: &GlobalArgs, command: &str, mut outcome: Outcome) -> Result<()> {
    for a in outcome.artifacts.iter_mut().filter(|a| a.report) {
        if let Value::Object(m) = &mut a.value {
            m.insert("config".into(), config_json(g, command));
        }
    }
    match &g.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for a in &outcome.artifacts {
                let (name, text) = render(a, g.format);
                let path = dir.join(name);
                std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        None => {
            let text = match outcome.artifacts.as_slice() {
                [one] => render(one, g.format).1,
                many => {
                    let csv = (g.format == OutputFormat::Csv)
                        .then(|| many.iter().find(|a| !a.report).and_then(|a| csv_from_points_value(&a.value)))
                        .flatten();
                    match csv {
                        Some(c) => c,
                        None => {
                            let m = many.iter().map(|a| (a.name.clone(), a.value.clone())).collect();
                            to_json_string(&Value::Object(m))
                        }
                    }
                }
            };
            std::io::stdout().write_all(text.as_bytes()).context("writing stdout")?;
        }
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(parsed.global.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return 1;
        }
    };
    let result = pool.install(|| cmd::dispatch(&parsed));
    match result.and_then(|(name, outcome)| {
        let below = outcome.below_threshold;
        emit(&parsed.global, &name, outcome).map(|_| below)
    }) {
        Ok(false) => 0,
        Ok(true) => 2,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}
