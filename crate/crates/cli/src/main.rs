mod commands;
mod config;

use std::fs;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use serde::Serialize;
use serde_json::Value;

use commands::Output;
use config::{Cli, Command, RunConfig};

#[derive(Serialize)]
struct Report<'a> {
    config: &'a RunConfig,
    passed: bool,
    result: &'a Value,
}

fn write_artifacts(cfg: &RunConfig, out: &Output) -> Result<()> {
    let Some((json, txt)) = cfg.artifact_paths() else {
        return Ok(());
    };
    if let Some(dir) = json.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let report = Report { config: cfg, passed: out.passed, result: &out.result };
    let mut body = serde_json::to_string_pretty(&report)?;
    body.push('\n');
    // For `table` the main artifact is the table itself; the report goes
    // alongside it.
    let report_path = match &out.table {
        Some(t) => {
            fs::write(&json, t).with_context(|| format!("writing {}", json.display()))?;
            json.with_extension("report.json")
        }
        None => json,
    };
    fs::write(&report_path, body).with_context(|| format!("writing {}", report_path.display()))?;
    fs::write(&txt, &out.text).with_context(|| format!("writing {}", txt.display()))?;
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = RunConfig::from_cli(cli)?;
    if let Some(k) = cli.flags.threads {
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    let out = match cli.command {
        Command::Table => commands::table(&cfg),
        Command::Weil => commands::weil(&cfg),
        Command::Fusion => commands::fusion(&cfg),
        Command::Identities => commands::identities(&cfg),
        Command::Classify => commands::classify(&cfg),
        Command::Verify => commands::verify(&cfg),
    }?;
    print!("{}", out.text);
    write_artifacts(&cfg, &out)?;
    Ok(out.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
