mod args;
mod commands;

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use spectra_core::error::ErrorClass;
use spectra_core::rootsystem::DeltaMode;
use spectra_core::Error;

use args::{Cli, Command};
use commands::{Outcome, Status};

const EXIT_INVARIANT: u8 = 2;
const EXIT_CAPACITY: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage: {s}"),
            CliError::Io(s) => write!(f, "i/o: {s}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Core(e) => match e.class() {
                ErrorClass::Invariant => EXIT_INVARIANT,
                ErrorClass::Capacity => EXIT_CAPACITY,
                ErrorClass::Input => EXIT_USAGE,
            },
        }
    }
}

/// Turn `--config file.json [more flags]` into an ordinary argument vector.
/// Flags given on the command line win over the same keys in the file.
fn expand_config(raw: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(pos) = raw.iter().position(|a| a == "--config") else {
        return Ok(raw);
    };
    let path = raw.get(pos + 1).ok_or_else(|| CliError::Usage("--config needs a path".into()))?;
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.to_string_lossy())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
    let obj = doc.as_object().ok_or_else(|| CliError::Usage("config must be a JSON object".into()))?;
    let extra: Vec<OsString> = raw[..pos].iter().skip(1).chain(&raw[pos + 2..]).cloned().collect();
    let given: Vec<String> = extra
        .iter()
        .filter_map(|a| a.to_str())
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect();

    let mut out = vec![raw[0].clone()];
    let sub = obj
        .get("subcommand")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::Usage("config lacks a \"subcommand\" string".into()))?;
    // A subcommand repeated on the command line is dropped.
    let extra: Vec<OsString> = extra.into_iter().filter(|a| a != sub).collect();
    out.push(sub.into());
    for (key, val) in obj {
        if key == "subcommand" || given.iter().any(|g| g == key) {
            continue;
        }
        match val {
            Value::Null | Value::Bool(false) => {}
            Value::Bool(true) => out.push(format!("--{key}").into()),
            Value::String(s) => out.extend([format!("--{key}").into(), s.into()]),
            Value::Number(n) => out.extend([format!("--{key}").into(), n.to_string().into()]),
            _ => return Err(CliError::Usage(format!("config key {key:?} must be a scalar"))),
        }
    }
    out.extend(extra);
    Ok(out)
}

fn run_command(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Roots(a) => commands::roots(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Collisions(a) => commands::collisions_cmd(a),
        Command::SphereSym(a) => commands::sphere_sym(a),
        Command::Types(a) => commands::types(a),
        Command::Assemble(a) => commands::assemble_cmd(a),
        Command::Verdict(a) => commands::verdict(a),
        Command::Certify(a) => commands::certify(a),
        Command::Operator(a) => commands::operator(a),
        Command::Selfcheck(a) => commands::selfcheck(a),
    }
}

fn envelope(cmd: &Command, outcome: &Outcome) -> Result<Value, CliError> {
    let config = serde_json::to_value(cmd).map_err(|e| CliError::Io(e.to_string()))?;
    let subcommand = config.get("subcommand").cloned().unwrap_or(Value::Null);
    let mut conventions = json!({
        "root_normalization": "long roots have squared length 2; for BC, the middle-length roots",
        "resultant": "Sylvester determinant; res(c, q) = c^deg q for a nonzero constant c",
        "rational_format": "p/q in lowest terms, denominator always written",
        "su2_basis": "u1 = [[0,i],[i,0]], u2 = [[0,1],[-1,0]], u3 = [[i,0],[0,-i]]; [u_a,u_b] = -2 eps_abc u_c",
    });
    if let Some(mode) = outcome.delta_mode {
        conventions["delta_mode"] = json!(match mode {
            DeltaMode::Weighted => "weighted: half the sum of positive roots counted with multiplicity",
            DeltaMode::Unweighted => "unweighted: half the sum of positive roots",
        });
    }
    Ok(json!({
        "tool": "laplace-spectra",
        "version": env!("CARGO_PKG_VERSION"),
        "subcommand": subcommand,
        "config": config,
        "conventions": conventions,
        "result": outcome.result,
    }))
}

fn emit(cmd: &Command, outcome: &Outcome) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(&envelope(cmd, outcome)?).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    match cmd.out() {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn main() -> ExitCode {
    let argv = match expand_config(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let outcome = match run_command(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    if let Err(e) = emit(&cli.command, &outcome) {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    match outcome.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Undecided => {
            eprintln!("verdict: undecided");
            ExitCode::from(EXIT_CAPACITY)
        }
        Status::InvariantFailure => {
            eprintln!("error: invariant check failed; see the report");
            ExitCode::from(EXIT_INVARIANT)
        }
    }
}
