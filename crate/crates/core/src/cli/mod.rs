//! Command-line front end.

mod args;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use asymlog::Error;

pub use args::Cli;

pub const SCHEMA: &str = "asymlog/1";

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;
pub const EXIT_USAGE: u8 = 64;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Unresolved(_) => EXIT_DOMAIN,
        Error::Budget(_) | Error::Precision { .. } | Error::Convergence(_) => EXIT_BUDGET,
        Error::Verification(_) | Error::FitResidual { .. } => EXIT_VERIFY,
    }
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let (name, params) = run::describe(&cli.command);
    let report = match run::run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            if cli.json {
                println!(
                    "{}",
                    json!({ "schema": SCHEMA, "command": name, "params": params, "error": e.to_string() })
                );
            }
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if cli.json {
        match &report.lines {
            Some(lines) => {
                let _ = writeln!(out, "{}", json!({ "schema": SCHEMA, "command": name, "params": params }));
                for l in lines {
                    let mut m = serde_json::Map::new();
                    m.insert("schema".into(), SCHEMA.into());
                    if let Some(o) = l.as_object() {
                        m.extend(o.clone());
                    }
                    let _ = writeln!(out, "{}", serde_json::Value::Object(m));
                }
                let _ = writeln!(out, "{}", json!({ "schema": SCHEMA, "summary": report.result }));
            }
            None => {
                let v = json!({ "schema": SCHEMA, "command": name, "params": params, "result": report.result });
                let _ = writeln!(out, "{v}");
            }
        }
    } else {
        let _ = writeln!(out, "# {name} {params}");
        for l in &report.plain {
            let _ = writeln!(out, "{l}");
        }
    }
    if report.failed > 0 {
        eprintln!("{} identity instance(s) failed", report.failed);
        return ExitCode::from(EXIT_VERIFY);
    }
    ExitCode::from(EXIT_OK)
}
