//! `k3cert`: command-line front end to the certification library.
//!
//! Every command prints one JSON object (or a plain-text rendering of it).
//! Exit codes: 0 verified / informational, 1 refuted, 2 usage or input
//! error, 3 search budget exceeded.

mod args;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Map, Value};

use args::{Cli, Format};

/// Version of the JSON layout.
const SCHEMA: u64 = 1;
const WORKERS_ENV: &str = "K3CERT_WORKERS";

/// A failure before or during a command, mapped to an exit code.
#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    Lib(k3cert::Error),
    Io(String),
}

impl From<k3cert::Error> for Failure {
    fn from(e: k3cert::Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        use k3cert::Error::*;
        match self {
            Failure::Usage(_) => "usage",
            Failure::Io(_) => "io",
            Failure::Lib(e) => match e {
                Range(_) => "range",
                Domain(_) => "domain",
                UnknownLabel(_) => "unknown_label",
                DivisionByZero => "division_by_zero",
                Dimension(_) => "dimension",
                BudgetExceeded(_) => "budget_exceeded",
                Input(_) => "input",
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(k3cert::Error::BudgetExceeded(_)) => 3,
            _ => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let wants_text = std::env::args().any(|a| a == "text");
            if wants_text {
                let _ = e.print();
            } else {
                let f = Failure::Usage(e.render().to_string().trim().to_string());
                println!("{}", error_object(&f, None));
            }
            return ExitCode::from(2);
        }
    };
    let code = match execute(&cli) {
        Ok(code) => code,
        Err(f) => {
            match cli.format {
                Format::Json => println!("{}", error_object(&f, Some(cli.seed))),
                Format::Text => eprintln!("error ({}): {}", f.kind(), f.message()),
            }
            f.exit_code()
        }
    };
    ExitCode::from(code)
}

fn error_object(f: &Failure, seed: Option<u64>) -> String {
    let mut v = json!({
        "schema": SCHEMA,
        "error": {"kind": f.kind(), "message": f.message()},
    });
    if let Some(s) = seed {
        v["seed"] = json!(s);
    }
    serde_json::to_string_pretty(&v).expect("plain JSON")
}

fn configure_workers() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("{WORKERS_ENV} must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot start {n} workers: {e}")))
}

fn execute(cli: &Cli) -> Result<u8, Failure> {
    configure_workers()?;
    let (command, result) = run::dispatch(cli)?;
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA));
    out.insert("command".into(), json!(command));
    out.insert("seed".into(), json!(cli.seed));
    match result {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("result".into(), other);
        }
    }
    let code = match out.get("status").and_then(Value::as_str) {
        Some("refuted") => 1,
        Some("not_checked") => 3,
        _ => 0,
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&Value::Object(out)).expect("plain JSON") + "\n",
        Format::Text => render_text(&out),
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Io(e.to_string()))?;
        }
    }
    Ok(code)
}

/// One `key: value` line per field; the checks of `verify-all` one per line.
fn render_text(out: &Map<String, Value>) -> String {
    let mut s = String::new();
    for (k, v) in out {
        if k == "criteria" {
            for c in v.as_array().into_iter().flatten() {
                let status = c["status"].as_str().unwrap_or("?");
                s += &format!(
                    "criterion {:>2} [{}] {}: {}\n",
                    c["id"],
                    c["name"].as_str().unwrap_or(""),
                    if status == "verified" { "PASS" } else { "FAIL" },
                    c["detail"].as_str().unwrap_or("")
                );
            }
            continue;
        }
        let shown = match v {
            Value::String(t) => t.clone(),
            other => other.to_string(),
        };
        s += &format!("{k}: {shown}\n");
    }
    s
}
